#include "qtop/catalog.hpp"

#include <algorithm>

namespace qtop::topo {

std::string tag_name(CatalogTag t) {
  switch (t) {
    case CatalogTag::Sierpinski: return "sierpinski";
    case CatalogTag::PowersetTrunc: return "powerset_trunc";
    case CatalogTag::OmegaPlusOneScott: return "omega_plus_one_scott";
    case CatalogTag::OmegaPlusOneAlexandroff: return "omega_plus_one_alexandroff";
    case CatalogTag::OmegaScott: return "omega_scott";
    case CatalogTag::TwoBottomLadder: return "two_bottom_ladder";
  }
  return "?";
}

std::optional<CatalogTag> tag_from_name(const std::string& s) {
  for (CatalogTag t : {CatalogTag::Sierpinski, CatalogTag::PowersetTrunc,
                       CatalogTag::OmegaPlusOneScott,
                       CatalogTag::OmegaPlusOneAlexandroff, CatalogTag::OmegaScott,
                       CatalogTag::TwoBottomLadder})
    if (tag_name(t) == s) return t;
  return std::nullopt;
}

bool catalog_le(CatalogTag tag, std::int64_t x, std::int64_t y) {
  switch (tag) {
    case CatalogTag::Sierpinski:
    case CatalogTag::OmegaPlusOneScott:
    case CatalogTag::OmegaPlusOneAlexandroff:
    case CatalogTag::OmegaScott:
      return x <= y;
    case CatalogTag::PowersetTrunc:
      return subset(Mask(x), Mask(y));
    case CatalogTag::TwoBottomLadder:
      if (x == y) return true;
      if (x == BOT1 || x == BOT2) return y >= 0;
      if (y == BOT1 || y == BOT2) return false;
      return x >= y;  // among naturals the chain descends: n+1 below n
  }
  return false;
}

int CatalogSpace::index_of(std::int64_t code) const {
  for (int i = 0; i < (int)codes.size(); ++i)
    if (codes[i] == code) return i;
  return -1;
}

CatalogSpace make_catalog(CatalogTag tag, int depth) {
  if (depth < 1) throw error("BadDepth", "catalog depth must be positive");
  CatalogSpace c;
  c.tag = tag;
  c.depth = depth;

  switch (tag) {
    case CatalogTag::Sierpinski: {
      c.codes = {0, 1};
      c.window = sierpinski();
      c.truncation_artifact = {false, false};
      return c;
    }
    case CatalogTag::PowersetTrunc: {
      if (depth > 5) throw error("BadDepth", "powerset window capped at depth 5");
      int n = 1 << depth;
      for (int i = 0; i < n; ++i) c.codes.push_back(i);
      c.window = powerset_space(depth);
      // Every finite set has strict supersets using elements beyond the
      // window.
      c.truncation_artifact.assign(n, true);
      return c;
    }
    case CatalogTag::OmegaPlusOneScott:
    case CatalogTag::OmegaPlusOneAlexandroff: {
      // Window points: naturals 0..depth-1 plus omega. The window order is
      // the trace order, so windowed up-sets are exactly the traces of true
      // opens. The two tags differ only in which basic opens are real: the
      // Scott basis stops at the finite stages, the Alexandroff basis also
      // has {w}.
      int n = depth + 1;
      for (int i = 0; i < depth; ++i) c.codes.push_back(i);
      c.codes.push_back(OMEGA);
      std::vector<Mask> ups(n);
      std::vector<std::string> names;
      for (int i = 0; i < depth; ++i) names.push_back(std::to_string(i));
      names.push_back("w");
      for (int x = 0; x < n; ++x) {
        Mask u = 0;
        for (int y = 0; y < n; ++y)
          if (catalog_le(tag, c.codes[x], c.codes[y])) u |= bit(y);
        ups[x] = u;
      }
      c.window = space_from_up_sets(std::move(ups), std::move(names));
      std::vector<Mask> bs{0};
      for (int k = 0; k < depth; ++k) {
        Mask u = bit(depth);
        for (int y = k; y < depth; ++y) u |= bit(y);
        bs.push_back(u);
      }
      if (tag == CatalogTag::OmegaPlusOneAlexandroff) bs.push_back(bit(depth));
      c.window.basics = bs;
      c.truncation_artifact.assign(n, true);
      c.truncation_artifact[n - 1] = false;  // omega is the true top
      return c;
    }
    case CatalogTag::OmegaScott: {
      for (int i = 0; i < depth; ++i) c.codes.push_back(i);
      c.window = chain_space(depth);
      c.truncation_artifact.assign(depth, true);
      return c;
    }
    case CatalogTag::TwoBottomLadder: {
      c.codes = {BOT1, BOT2};
      for (int i = 0; i < depth; ++i) c.codes.push_back(i);
      int n = depth + 2;
      std::vector<Mask> ups(n);
      std::vector<std::string> names{"bot1", "bot2"};
      for (int i = 0; i < depth; ++i) names.push_back(std::to_string(i));
      for (int x = 0; x < n; ++x) {
        Mask u = 0;
        for (int y = 0; y < n; ++y)
          if (catalog_le(tag, c.codes[x], c.codes[y])) u |= bit(y);
        ups[x] = u;
      }
      c.window = space_from_up_sets(std::move(ups), std::move(names));
      c.truncation_artifact.assign(n, false);
      // The bottoms sit below every natural, including the unseen ones.
      c.truncation_artifact[0] = c.truncation_artifact[1] = true;
      return c;
    }
  }
  throw error("BadCatalogTag", "unknown catalog tag");
}

bool catalog_member(const CatalogSpace& c, int point, int basic) {
  if (point < 0 || point >= c.window.n) throw error("PointOutOfRange", "point index");
  if (basic < 0 || basic >= (int)c.window.basics.size())
    throw error("IndexOutOfRange", "basic index");
  return has(c.window.basics[basic], point);
}

CatalogTableReport spot_check_tables(const CatalogSpace& c) {
  CatalogTableReport rep;
  const auto& bs = c.window.basics;
  for (size_t i = 0; i < bs.size(); ++i)
    for (size_t j = 0; j < bs.size(); ++j) {
      bool tab = subset(bs[i], bs[j]);
      bool oracle = true;
      for (int p = 0; p < c.window.n; ++p)
        if (catalog_member(c, p, (int)i) && !catalog_member(c, p, (int)j)) {
          oracle = false;
          break;
        }
      if (tab != oracle) {
        rep.consistent = false;
        rep.detail = "subset table disagrees with membership oracle at (" +
                     std::to_string(i) + "," + std::to_string(j) + ")";
        return rep;
      }
      // Intersection witness: when some basic equals the meet, it must agree
      // with the pointwise oracle. A missing witness is allowed (the basis
      // need not be meet-closed) and only noted.
      Mask meet = bs[i] & bs[j];
      auto it = std::find(bs.begin(), bs.end(), meet);
      if (it != bs.end()) {
        for (int p = 0; p < c.window.n; ++p) {
          bool in_meet = catalog_member(c, p, (int)i) && catalog_member(c, p, (int)j);
          if (in_meet != catalog_member(c, p, (int)(it - bs.begin()))) {
            rep.consistent = false;
            rep.detail = "intersection witness disagrees with oracle at pair (" +
                         std::to_string(i) + "," + std::to_string(j) + ")";
            return rep;
          }
        }
      }
    }
  return rep;
}

BoundedSoberReport sober_bounded(const CatalogSpace& c) {
  BoundedSoberReport rep;
  // Search closed sets of the window for one that is irreducible inside the
  // window, has no generic point there, and is known to extend beyond the
  // window (so no deeper point can rescue it either).
  if (c.tag == CatalogTag::OmegaScott) {
    // The whole space is a closed chain; every candidate x has cl({x})
    // bounded by x while the chain continues past the window.
    for (int x = 0; x < c.window.n; ++x) {
      if (c.window.down(x) == c.window.full() && !c.truncation_artifact[x]) {
        rep.refuted = false;
        rep.detail = "generic point found at depth " + std::to_string(c.depth);
        return rep;
      }
    }
    rep.refuted = true;
    rep.detail = "non-sober witness: the whole-space closed chain has no generic point up to depth " +
                 std::to_string(c.depth);
    return rep;
  }
  rep.refuted = false;
  rep.detail = "no witness up to depth " + std::to_string(c.depth) +
               " (not a sobriety verdict)";
  return rep;
}

}  // namespace qtop::topo
