#include "qtop/space.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

namespace qtop::topo {

namespace {

void check_point_count(int n) {
  if (n < 0 || n > 62) throw error("SpaceTooLarge", "point count must be in [0, 62]");
}

std::vector<Mask> canonical_basics(const std::vector<Mask>& up, Mask full) {
  std::vector<Mask> b;
  b.push_back(0);
  for (Mask u : up) b.push_back(u);
  b.push_back(full);
  std::sort(b.begin(), b.end(), [](Mask a, Mask c) {
    return std::pair(popcount(a), a) < std::pair(popcount(c), c);
  });
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

}  // namespace

bool FiniteSpace::is_open(Mask s) const {
  for (int x = 0; x < n; ++x)
    if (has(s, x) && !subset(up[x], s)) return false;
  return true;
}

Mask FiniteSpace::down(int x) const {
  Mask d = 0;
  for (int y = 0; y < n; ++y)
    if (has(up[y], x)) d |= bit(y);
  return d;
}

Mask FiniteSpace::closure(Mask s) const {
  Mask c = 0;
  for (int x = 0; x < n; ++x)
    if (has(s, x)) c |= down(x);
  return c;
}

Mask FiniteSpace::interior(Mask s) const {
  Mask i = 0;
  for (int x = 0; x < n; ++x)
    if (subset(up[x], s)) i |= bit(x);
  return i;
}

std::string FiniteSpace::name_of(int x) const {
  if (x >= 0 && x < (int)point_names.size()) return point_names[x];
  return std::to_string(x);
}

FiniteSpace space_from_opens(int n, const std::vector<Mask>& opens,
                             std::vector<std::string> names) {
  check_point_count(n);
  Mask full = full_mask(n);
  std::unordered_set<Mask> fam(opens.begin(), opens.end());
  if (!fam.count(0)) throw error("MissingEmptySet", "family lacks the empty set");
  if (!fam.count(full)) throw error("MissingFullSet", "family lacks the full set");
  for (Mask a : fam)
    if (!subset(a, full))
      throw error("PointOutOfRange", "open set mentions a point >= n");
  for (Mask a : fam)
    for (Mask b : fam) {
      if (!fam.count(a | b))
        throw error("UnionEscapesFamily",
                    "union of two opens is missing from the family");
      if (!fam.count(a & b))
        throw error("IntersectionEscapesFamily",
                    "intersection of two opens is missing from the family");
    }

  FiniteSpace sp;
  sp.n = n;
  sp.point_names = std::move(names);
  sp.up.assign(n, full);
  for (int x = 0; x < n; ++x)
    for (Mask u : fam)
      if (has(u, x)) sp.up[x] &= u;
  sp.basics.assign(opens.begin(), opens.end());
  std::sort(sp.basics.begin(), sp.basics.end(), [](Mask a, Mask c) {
    return std::pair(popcount(a), a) < std::pair(popcount(c), c);
  });
  sp.basics.erase(std::unique(sp.basics.begin(), sp.basics.end()), sp.basics.end());
  return sp;
}

FiniteSpace space_from_up_sets(std::vector<Mask> up_sets,
                               std::vector<std::string> names) {
  int n = (int)up_sets.size();
  check_point_count(n);
  for (int x = 0; x < n; ++x) {
    if (!has(up_sets[x], x)) throw error("NotReflexive", "up[x] must contain x");
    for (int y = 0; y < n; ++y)
      if (has(up_sets[x], y) && !subset(up_sets[y], up_sets[x]))
        throw error("NotTransitive", "up-set closure fails transitivity");
  }
  FiniteSpace sp;
  sp.n = n;
  sp.up = std::move(up_sets);
  sp.point_names = std::move(names);
  sp.basics = canonical_basics(sp.up, sp.full());
  return sp;
}

FiniteSpace space_from_le(int n, const std::vector<std::vector<bool>>& le,
                          std::vector<std::string> names) {
  std::vector<Mask> ups(n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (le[x][y]) ups[x] |= bit(y);
  return space_from_up_sets(std::move(ups), std::move(names));
}

FiniteSpace sierpinski() {
  return space_from_up_sets({bit(0) | bit(1), bit(1)}, {"bot", "top"});
}

FiniteSpace discrete_space(int n) {
  std::vector<Mask> ups(n);
  for (int x = 0; x < n; ++x) ups[x] = bit(x);
  return space_from_up_sets(std::move(ups));
}

FiniteSpace chain_space(int n) {
  std::vector<Mask> ups(n);
  for (int x = 0; x < n; ++x) ups[x] = full_mask(n) & ~full_mask(x);
  return space_from_up_sets(std::move(ups));
}

FiniteSpace powerset_space(int k) {
  int n = 1 << k;
  std::vector<Mask> ups(n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (subset(Mask(x), Mask(y))) ups[x] |= bit(y);
  std::vector<std::string> names(n);
  for (int x = 0; x < n; ++x) {
    std::string s = "{";
    bool first = true;
    for (int i = 0; i < k; ++i)
      if (has(Mask(x), i)) {
        if (!first) s += ",";
        s += std::to_string(i);
        first = false;
      }
    names[x] = s + "}";
  }
  return space_from_up_sets(std::move(ups), std::move(names));
}

FiniteSpace product(const FiniteSpace& a, const FiniteSpace& b) {
  int n = a.n * b.n;
  check_point_count(n);
  auto id = [&](int x, int y) { return x * b.n + y; };
  std::vector<Mask> ups(n, 0);
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < b.n; ++y) {
      Mask u = 0;
      for (int x2 = 0; x2 < a.n; ++x2)
        for (int y2 = 0; y2 < b.n; ++y2)
          if (a.le(x, x2) && b.le(y, y2)) u |= bit(id(x2, y2));
      ups[id(x, y)] = u;
    }
  FiniteSpace sp;
  sp.n = n;
  sp.up = std::move(ups);
  if ((int)a.point_names.size() == a.n && (int)b.point_names.size() == b.n) {
    sp.point_names.resize(n);
    for (int x = 0; x < a.n; ++x)
      for (int y = 0; y < b.n; ++y)
        sp.point_names[id(x, y)] = "(" + a.point_names[x] + "," + b.point_names[y] + ")";
  }
  // Rectangle basics over both factors' basic opens.
  auto rect = [&](Mask ma, Mask mb) {
    Mask r = 0;
    for (int x = 0; x < a.n; ++x)
      if (has(ma, x))
        for (int y = 0; y < b.n; ++y)
          if (has(mb, y)) r |= bit(id(x, y));
    return r;
  };
  std::set<Mask> bs;
  for (Mask ma : a.basics)
    for (Mask mb : b.basics) bs.insert(rect(ma, mb));
  bs.insert(0);
  bs.insert(sp.full());
  sp.basics.assign(bs.begin(), bs.end());
  std::sort(sp.basics.begin(), sp.basics.end(), [](Mask u, Mask v) {
    return std::pair(popcount(u), u) < std::pair(popcount(v), v);
  });
  return sp;
}

FiniteSpace disjoint_union(const FiniteSpace& a, const FiniteSpace& b) {
  int n = a.n + b.n;
  check_point_count(n);
  std::vector<Mask> ups(n, 0);
  for (int x = 0; x < a.n; ++x) ups[x] = a.up[x];
  for (int y = 0; y < b.n; ++y) ups[a.n + y] = b.up[y] << a.n;
  FiniteSpace sp;
  sp.n = n;
  sp.up = std::move(ups);
  std::set<Mask> bs{0, sp.full()};
  for (Mask ma : a.basics) bs.insert(ma);
  for (Mask mb : b.basics) bs.insert(mb << a.n);
  for (Mask ma : a.basics)
    for (Mask mb : b.basics) bs.insert(ma | (mb << a.n));
  sp.basics.assign(bs.begin(), bs.end());
  std::sort(sp.basics.begin(), sp.basics.end(), [](Mask u, Mask v) {
    return std::pair(popcount(u), u) < std::pair(popcount(v), v);
  });
  return sp;
}

std::pair<FiniteSpace, std::vector<int>> subspace(const FiniteSpace& sp, Mask s) {
  std::vector<int> pts = mask_to_indices(s);
  int m = (int)pts.size();
  std::vector<int> new_of(sp.n, -1);
  for (int i = 0; i < m; ++i) new_of[pts[i]] = i;
  auto restrict_mask = [&](Mask u) {
    Mask r = 0;
    for (int i = 0; i < m; ++i)
      if (has(u, pts[i])) r |= bit(i);
    return r;
  };
  std::vector<Mask> ups(m);
  for (int i = 0; i < m; ++i) ups[i] = restrict_mask(sp.up[pts[i]]);
  FiniteSpace out;
  out.n = m;
  out.up = std::move(ups);
  if ((int)sp.point_names.size() == sp.n) {
    out.point_names.resize(m);
    for (int i = 0; i < m; ++i) out.point_names[i] = sp.point_names[pts[i]];
  }
  std::set<Mask> bs{0, out.full()};
  for (Mask b : sp.basics) bs.insert(restrict_mask(b));
  out.basics.assign(bs.begin(), bs.end());
  std::sort(out.basics.begin(), out.basics.end(), [](Mask u, Mask v) {
    return std::pair(popcount(u), u) < std::pair(popcount(v), v);
  });
  return {out, pts};
}

std::vector<Mask> specialization_order(const FiniteSpace& sp) { return sp.up; }

bool is_T0(const FiniteSpace& sp) {
  for (int x = 0; x < sp.n; ++x)
    for (int y = x + 1; y < sp.n; ++y)
      if (sp.up[x] == sp.up[y]) return false;
  return true;
}

bool is_T1(const FiniteSpace& sp) {
  for (int x = 0; x < sp.n; ++x)
    if (sp.up[x] != bit(x)) return false;
  return true;
}

bool is_TD(const FiniteSpace& sp) {
  for (int x = 0; x < sp.n; ++x)
    if ((sp.up[x] & sp.down(x)) != bit(x)) return false;
  return true;
}

std::vector<Mask> all_opens(const FiniteSpace& sp) {
  if (sp.n > 20) throw error("SpaceTooLarge", "open-set enumeration capped at 20 points");
  std::vector<Mask> out;
  Mask full = sp.full();
  for (Mask m = 0;; ++m) {
    if (sp.is_open(m)) out.push_back(m);
    if (m == full) break;
  }
  return out;
}

SoberReport is_sober(const FiniteSpace& sp) {
  if (!is_T0(sp)) throw error("NotT0", "sobriety check requires a T0 space");
  SoberReport rep;
  auto opens = all_opens(sp);
  Mask full = sp.full();
  for (Mask u : opens) {
    Mask c = full & ~u;
    if (c == 0) continue;
    // Maximal points of the closed set c.
    std::vector<int> maxima;
    for (int x = 0; x < sp.n; ++x) {
      if (!has(c, x)) continue;
      bool is_max = true;
      for (int y = 0; y < sp.n; ++y)
        if (y != x && has(c, y) && sp.le(x, y)) { is_max = false; break; }
      if (is_max) maxima.push_back(x);
    }
    if (maxima.size() >= 2) {
      // c splits into two proper closed subsets, hence is not irreducible.
      Mask a = sp.closure(c & ~bit(maxima[0]));
      Mask b = sp.down(maxima[0]);
      if ((a | b) != c || a == c || b == c) {
        rep.sober = false;
        rep.witness = c;
        rep.detail = "internal decomposition check failed";
        return rep;
      }
      continue;
    }
    // Unique maximal point: irreducible iff c equals its closure.
    int m = maxima[0];
    if (sp.down(m) != c) {
      rep.sober = false;
      rep.witness = c;
      rep.detail = "irreducible closed set is not a point closure";
      return rep;
    }
  }
  rep.sober = true;
  return rep;
}

Mask cb_derivative(const FiniteSpace& sp, Mask s) {
  Mask out = 0;
  for (int x = 0; x < sp.n; ++x)
    if (has(s, x) && (sp.up[x] & s) != bit(x)) out |= bit(x);
  return out;
}

CbReport cb_rank(const FiniteSpace& sp) {
  CbReport rep;
  Mask cur = sp.full();
  rep.derived.push_back(cur);
  while (true) {
    Mask next = cb_derivative(sp, cur);
    if (next == cur) break;
    rep.derived.push_back(next);
    cur = next;
    ++rep.rank;
  }
  rep.scattered = (cur == 0);
  return rep;
}

bool is_scattered(const FiniteSpace& sp) { return cb_rank(sp).scattered; }

Mask max_elements(const FiniteSpace& sp) {
  if (!is_T0(sp)) throw error("NotT0", "maximal elements need a T0 space");
  Mask out = 0;
  for (int x = 0; x < sp.n; ++x)
    if (sp.up[x] == bit(x)) out |= bit(x);
  return out;
}

namespace {

// Canonical form of an order matrix under relabeling.
std::vector<Mask> canonicalize(const std::vector<Mask>& ups) {
  int n = (int)ups.size();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Mask> best;
  do {
    std::vector<Mask> relab(n, 0);
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y)
        if (has(ups[x], y)) relab[perm[x]] |= bit(perm[y]);
    }
    if (best.empty() || relab < best) best = relab;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

std::vector<std::vector<Mask>> enumerate_posets_up_to_iso(int n) {
  if (n > 5) throw error("SpaceTooLarge", "poset enumeration capped at 5 elements");
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y) pairs.emplace_back(x, y);
  std::set<std::vector<Mask>> seen;
  std::vector<std::vector<Mask>> out;
  int p = (int)pairs.size();
  for (std::uint64_t code = 0; code < (std::uint64_t(1) << p); ++code) {
    std::vector<Mask> ups(n);
    for (int x = 0; x < n; ++x) ups[x] = bit(x);
    bool anti = true;
    for (int i = 0; i < p && anti; ++i)
      if ((code >> i) & 1) {
        auto [x, y] = pairs[i];
        if (has(ups[y], x)) anti = false;
        ups[x] |= bit(y);
      }
    if (!anti) continue;
    bool transitive = true;
    for (int x = 0; x < n && transitive; ++x)
      for (int y = 0; y < n && transitive; ++y)
        if (x != y && has(ups[x], y) && !subset(ups[y], ups[x])) transitive = false;
    if (!transitive) continue;
    // Recheck antisymmetry after assembling.
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      for (int y = 0; y < n && ok; ++y)
        if (x != y && has(ups[x], y) && has(ups[y], x)) ok = false;
    if (!ok) continue;
    auto canon = canonicalize(ups);
    if (seen.insert(canon).second) out.push_back(canon);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FiniteSpace> enumerate_t0_spaces(int n) {
  std::vector<FiniteSpace> out;
  for (auto& ups : enumerate_posets_up_to_iso(n))
    out.push_back(space_from_up_sets(ups));
  return out;
}

FiniteSpace random_t0_space(std::mt19937_64& rng, int n) {
  // Random strict order: random linear order plus random forward edges,
  // then transitive closure. Always a poset, hence a T0 space.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Mask> ups(n);
  for (int x = 0; x < n; ++x) ups[x] = bit(x);
  std::uniform_int_distribution<int> coin(0, 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng) == 0) ups[order[i]] |= bit(order[j]);
  // Transitive closure.
  for (bool changed = true; changed;) {
    changed = false;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (has(ups[x], y) && !subset(ups[y], ups[x])) {
          ups[x] |= ups[y];
          changed = true;
        }
  }
  return space_from_up_sets(std::move(ups));
}

bool is_continuous(const FiniteSpace& dom, const FiniteSpace& cod,
                   const std::vector<int>& f) {
  // Continuity between finite spaces is monotonicity in the specialization
  // orders.
  for (int x = 0; x < dom.n; ++x)
    for (int y = 0; y < dom.n; ++y)
      if (dom.le(x, y) && !cod.le(f[x], f[y])) return false;
  return true;
}

std::vector<int> random_continuous_map(std::mt19937_64& rng,
                                       const FiniteSpace& dom,
                                       const FiniteSpace& cod) {
  std::uniform_int_distribution<int> pick(0, cod.n - 1);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<int> f(dom.n);
    for (int x = 0; x < dom.n; ++x) f[x] = pick(rng);
    if (is_continuous(dom, cod, f)) return f;
  }
  // Constant maps are always continuous.
  return std::vector<int>(dom.n, 0);
}

bool homeomorphic(const FiniteSpace& a, const FiniteSpace& b) {
  if (a.n != b.n) return false;
  if (a.n > 8) throw error("SpaceTooLarge", "homeomorphism search capped at 8 points");
  return canonicalize(a.up) == canonicalize(b.up);
}

}  // namespace qtop::topo
