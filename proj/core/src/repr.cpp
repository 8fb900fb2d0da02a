#include "qtop/repr.hpp"

#include <algorithm>
#include <set>

namespace qtop::repr {

SeqEnum SeqEnum::make(int alphabet, int max_len) {
  SeqEnum e;
  e.alphabet = alphabet;
  e.max_len = max_len;
  std::vector<Seq> level{{}};
  e.seqs.push_back({});
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Seq> next;
    for (const Seq& s : level)
      for (int a = 0; a < alphabet; ++a) {
        Seq t = s;
        t.push_back(a);
        next.push_back(t);
        e.seqs.push_back(t);
      }
    level = std::move(next);
  }
  return e;
}

int SeqEnum::index_of(const Seq& s) const {
  auto it = std::find(seqs.begin(), seqs.end(), s);
  return it == seqs.end() ? -1 : (int)(it - seqs.begin());
}

bool is_prefix(const Seq& a, const Seq& b) {
  if (a.size() > b.size()) return false;
  return std::equal(a.begin(), a.end(), b.begin());
}
bool is_strict_prefix(const Seq& a, const Seq& b) {
  return a.size() < b.size() && is_prefix(a, b);
}

Mask delta_prefix(const Seq& sigma) {
  Mask out = 0;
  for (int v : sigma) {
    if (v < 0) throw error("BadSequence", "negative entry");
    if (v > 0) {
      if (v - 1 >= 62) throw error("SpaceTooLarge", "mention exceeds the mask width");
      out |= bit(v - 1);
    }
  }
  return out;
}

Mask PrefixFun::value(const Seq& sigma) const {
  Seq key = sigma;
  if ((int)key.size() > depth) key.resize(depth);
  auto it = table.find(key);
  if (it == table.end()) throw error("IndexOutOfRange", "prefix outside the table");
  return it->second;
}

void PrefixFun::validate() const {
  for (const auto& [s, v] : table)
    for (const auto& [t, w] : table)
      if (is_prefix(s, t) && !subset(v, w))
        throw error("NotMonotone", "longer prefix guarantees less");
}

PrefixFun PrefixFun::constant(int alphabet, int depth, Mask v) {
  return from_rule(alphabet, depth, [v](const Seq&) { return v; });
}

PrefixFun PrefixFun::from_rule(int alphabet, int depth,
                               const std::function<Mask(const Seq&)>& rule) {
  PrefixFun f;
  f.alphabet = alphabet;
  f.depth = depth;
  auto e = SeqEnum::make(alphabet, depth);
  for (const Seq& s : e.seqs) f.table[s] = rule(s);
  f.validate();
  return f;
}

PrefixFun PrefixFun::delta(int alphabet, int depth) {
  return from_rule(alphabet, depth, [](const Seq& s) { return delta_prefix(s); });
}

std::vector<int> pairing_first_table(int length) {
  // Diagonal enumeration of pairs: 0,1,0,2,1,0,3,2,1,0,...
  std::vector<int> out;
  for (int diag = 0; (int)out.size() < length; ++diag)
    for (int second = 0; second <= diag && (int)out.size() < length; ++second)
      out.push_back(diag - second);
  return out;
}

Seq translate_prefix(const PrefixFun& f, const std::vector<int>& r_table,
                     const Seq& p, int out_len) {
  if ((int)r_table.size() < out_len)
    throw error("RTableTooShort", "need " + std::to_string(out_len) + " entries");
  Seq g(out_len, 0);
  for (int i = 0; i < out_len; ++i) {
    Seq prefix(p.begin(), p.begin() + std::min<size_t>(i, p.size()));
    // A truncated input is read as padded with 0s past its length.
    while ((int)prefix.size() < i && (int)prefix.size() < f.depth) prefix.push_back(0);
    Mask guaranteed = f.value(prefix);
    int target = r_table[i];
    if (target < 62 && has(guaranteed, target)) g[i] = target + 1;
  }
  return g;
}

FactorizationReport check_factorization(const PrefixFun& f, int alphabet, int depth) {
  FactorizationReport rep;
  // Values live inside a bounded universe; run the translation long enough
  // that every value index has recurred past the point the table stabilizes.
  Mask universe = 0;
  for (const auto& [s, v] : f.table) universe |= v;
  int maxval = universe == 0 ? 0 : (63 - std::countl_zero(universe)) + 1;
  int slack = (maxval + depth + 2) * (maxval + depth + 2);
  int out_len = depth + slack;
  auto r = pairing_first_table(out_len);

  auto e = SeqEnum::make(alphabet, depth);
  for (const Seq& s : e.seqs) {
    if ((int)s.size() != depth) continue;
    Seq g = translate_prefix(f, r, s, out_len);
    Mask enumerated = delta_prefix(g);
    if (enumerated != f.value(s)) {
      rep.ok = false;
      rep.failing_prefix = s;
      return rep;
    }
    ++rep.prefixes_checked;
  }
  return rep;
}

ConditionReport f_conditions_check(const std::vector<int>& F, const ReprTables& tables) {
  int k = tables.count();
  if ((int)tables.images.size() != k)
    throw error("TableInconsistent", "image table size mismatch");
  for (int i : F)
    if (i < 0 || i >= k) throw error("TableInconsistent", "index out of range");
  std::vector<bool> in(k, false);
  for (int i : F) in[i] = true;

  // Extension witnesses for the deepest table level live beyond the window,
  // so the second condition only quantifies over shorter sequences. Both
  // formulations share the guard.
  size_t max_len = 0;
  for (const auto& s : tables.seqs) max_len = std::max(max_len, s.size());

  ConditionReport rep;
  rep.nonempty = !F.empty();
  rep.prefix_extension = true;
  for (int m : F) {
    if (tables.seqs[m].size() == max_len) continue;
    bool ext = false;
    for (int n : F)
      if (tables.strict_prefix(m, n)) { ext = true; break; }
    if (!ext) {
      rep.prefix_extension = false;
      rep.witness = {m, -1};
      break;
    }
  }
  rep.inclusion_upward = true;
  for (int m : F)
    for (int n = 0; n < k && rep.inclusion_upward; ++n)
      if (tables.img_subset(m, n) && !in[n]) {
        rep.inclusion_upward = false;
        rep.witness = {m, n};
      }
  rep.meet_interpolation = true;
  for (int m : F)
    for (int n : F) {
      bool found = false;
      for (int kk : F)
        if (tables.img_subset(kk, m) && tables.img_subset(kk, n)) {
          found = true;
          break;
        }
      if (!found) {
        rep.meet_interpolation = false;
        rep.witness = {m, n};
      }
    }

  // The same four conditions phrased as intersections of per-index pieces:
  // each piece is "m absent" or a join/meet of "n present" atoms. Evaluated
  // at F as a point of the powerset.
  auto absent = [&](int m) { return !in[m]; };
  auto present = [&](int n) { return in[n]; };
  rep.formula1 = !F.empty();
  rep.formula2 = true;
  for (int m = 0; m < k; ++m) {
    if (tables.seqs[m].size() == max_len) continue;
    bool piece = absent(m);
    if (!piece)
      for (int n = 0; n < k; ++n)
        if (tables.strict_prefix(m, n) && present(n)) { piece = true; break; }
    rep.formula2 = rep.formula2 && piece;
  }
  rep.formula3 = true;
  for (int m = 0; m < k; ++m) {
    bool piece = absent(m);
    if (!piece) {
      piece = true;
      for (int n = 0; n < k; ++n)
        if (tables.img_subset(m, n) && !present(n)) { piece = false; break; }
    }
    rep.formula3 = rep.formula3 && piece;
  }
  rep.formula4 = true;
  for (int m = 0; m < k; ++m)
    for (int n = 0; n < k; ++n) {
      bool piece = absent(m) || absent(n);
      if (!piece)
        for (int kk = 0; kk < k; ++kk)
          if (tables.img_subset(kk, m) && tables.img_subset(kk, n) && present(kk)) {
            piece = true;
            break;
          }
      rep.formula4 = rep.formula4 && piece;
    }

  rep.formulations_agree = (rep.nonempty == rep.formula1) &&
                           (rep.prefix_extension == rep.formula2) &&
                           (rep.inclusion_upward == rep.formula3) &&
                           (rep.meet_interpolation == rep.formula4);
  return rep;
}

PrunedTreeSample pruned_tree_points(const std::vector<int>& F, const ReprTables& tables,
                                    int depth) {
  PrunedTreeSample out;
  std::set<int> in(F.begin(), F.end());
  // Root must be present.
  int root = -1;
  for (int i = 0; i < tables.count(); ++i)
    if (tables.seqs[i].empty()) root = i;
  if (root < 0 || !in.count(root)) {
    out.stuck = true;
    return out;
  }
  std::vector<Seq> frontier{{}};
  for (int len = 0; len < depth; ++len) {
    std::vector<Seq> next;
    for (const Seq& s : frontier) {
      bool extended = false;
      for (int i = 0; i < tables.count(); ++i) {
        if (!in.count(i)) continue;
        const Seq& t = tables.seqs[i];
        if ((int)t.size() == len + 1 && is_prefix(s, t)) {
          next.push_back(t);
          extended = true;
        }
      }
      if (!extended) {
        out.stuck = true;
        out.stuck_prefix = s;
        return out;
      }
    }
    frontier = std::move(next);
  }
  out.points = std::move(frontier);
  return out;
}

}  // namespace qtop::repr
