#include "qtop/qmetric.hpp"

#include <algorithm>
#include <set>

namespace qtop::qm {

AxiomReport qm_axioms_check(const QMetric& d) {
  AxiomReport rep;
  int n = d.n();
  for (int x = 0; x < n; ++x) {
    if (!d(x, x).is_zero())
      rep.violations.push_back({"self-distance", x, x, -1, "d(x,x) != 0"});
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x != y && d(x, y).is_zero() && d(y, x).is_zero())
        rep.violations.push_back({"separation", x, y, -1,
                                  "distinct points at mutual distance zero"});
    }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (d(x, z) > d(x, y) + d(y, z))
          rep.violations.push_back({"triangle", x, y, z, "d(x,z) > d(x,y)+d(y,z)"});
  return rep;
}

QMetric sym_metrize(const QMetric& d) {
  QMetric out;
  out.labels = d.labels;
  int n = d.n();
  out.dist.assign(n, std::vector<Rat>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) out.dist[x][y] = max(d(x, y), d(y, x));
  return out;
}

Mask ball(const QMetric& d, int x, const Rat& eps) {
  Mask m = 0;
  for (int y = 0; y < d.n(); ++y)
    if (d(x, y) < eps) m |= bit(y);
  return m;
}

Mask closed_ball(const QMetric& d, int x, const Rat& eps) {
  Mask m = 0;
  for (int y = 0; y < d.n(); ++y)
    if (d(x, y) <= eps) m |= bit(y);
  return m;
}

Mask reverse_closed_ball(const QMetric& d, int x, const Rat& r) {
  Mask m = 0;
  for (int y = 0; y < d.n(); ++y)
    if (d(y, x) <= r) m |= bit(y);
  return m;
}

Rat pomega_qm(Mask X, Mask Y) {
  Mask diff = X & ~Y;
  if (diff == 0) return Rat::zero();
  return Rat::pow2_neg((unsigned)lowest_bit(diff));
}

Rat omega_d1(std::int64_t x, std::int64_t y) {
  if (x <= y) return Rat::zero();
  // y is finite here since nothing exceeds OMEGA.
  return Rat(1, (long long)y + 1);
}

Rat omega_d2(std::int64_t x, std::int64_t y) {
  return x <= y ? Rat::zero() : Rat::one();
}

QMetric order_qm(const FiniteSpace& sp) {
  QMetric d;
  d.labels.resize(sp.n);
  for (int x = 0; x < sp.n; ++x) d.labels[x] = sp.name_of(x);
  d.dist.assign(sp.n, std::vector<Rat>(sp.n));
  for (int x = 0; x < sp.n; ++x)
    for (int y = 0; y < sp.n; ++y)
      d.dist[x][y] = sp.le(x, y) ? Rat::zero() : Rat::one();
  return d;
}

QMetric random_compatible_qm(std::mt19937_64& rng, const FiniteSpace& sp) {
  // Row scale c_x in [1,2], monotone along the specialization order, applied
  // to every non-order pair. Monotone row scales keep d(x,.) <= d(y,.) when
  // x <= y, which is all the triangle inequality needs once every positive
  // value is >= 1 and <= 2.
  int n = sp.n;
  // Height of x = longest chain below it.
  std::vector<int> height(n, 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (x != y && sp.le(x, y) && height[y] < height[x] + 1) {
          height[y] = height[x] + 1;
          changed = true;
        }
  }
  std::uniform_int_distribution<int> jitter(0, 3);
  std::vector<Rat> scale(n);
  for (int x = 0; x < n; ++x) {
    // 1 + height/(2n) + jitter/(8n^2): order-monotone, within [1,2].
    Rat base = Rat(1) + Rat(height[x], 2 * n) + Rat(jitter(rng), 8 * n * n);
    scale[x] = base;
  }
  QMetric d;
  d.labels.resize(n);
  for (int x = 0; x < n; ++x) d.labels[x] = sp.name_of(x);
  d.dist.assign(n, std::vector<Rat>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      d.dist[x][y] = sp.le(x, y) ? Rat::zero() : scale[x];
  return d;
}

QMetric catalog_qm(const topo::CatalogSpace& c) {
  using topo::CatalogTag;
  QMetric d;
  int n = (int)c.codes.size();
  d.labels.resize(n);
  for (int x = 0; x < n; ++x) d.labels[x] = c.window.name_of(x);
  d.dist.assign(n, std::vector<Rat>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      switch (c.tag) {
        case CatalogTag::OmegaPlusOneScott:
          d.dist[x][y] = omega_d1(c.codes[x], c.codes[y]);
          break;
        case CatalogTag::OmegaPlusOneAlexandroff:
          d.dist[x][y] = omega_d2(c.codes[x], c.codes[y]);
          break;
        case CatalogTag::PowersetTrunc:
          d.dist[x][y] = pomega_qm(Mask(c.codes[x]), Mask(c.codes[y]));
          break;
        case CatalogTag::Sierpinski:
        case CatalogTag::OmegaScott:
        case CatalogTag::TwoBottomLadder:
          d.dist[x][y] = topo::catalog_le(c.tag, c.codes[x], c.codes[y])
                             ? Rat::zero()
                             : Rat::one();
          break;
      }
    }
  return d;
}

QMetric catalog_qm_d2(const topo::CatalogSpace& c) {
  QMetric d;
  int n = (int)c.codes.size();
  d.labels.resize(n);
  for (int x = 0; x < n; ++x) d.labels[x] = c.window.name_of(x);
  d.dist.assign(n, std::vector<Rat>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) d.dist[x][y] = omega_d2(c.codes[x], c.codes[y]);
  return d;
}

CauchyVerdict cauchy_check(const std::vector<int>& seq, const QMetric& d,
                           const std::vector<Rat>& eps_schedule) {
  CauchyVerdict v;
  int N = (int)seq.size();
  v.horizon = N;
  if (N < 2) return v;  // nothing falsifiable in a sub-2 prefix
  for (const Rat& eps : eps_schedule) {
    int best = -1;
    for (int n0 = 0; n0 + 2 <= N; ++n0) {
      bool ok = true;
      for (int a = n0; a < N && ok; ++a)
        for (int b = a; b < N && ok; ++b)
          if (d(seq[a], seq[b]) >= eps) ok = false;
      if (ok) { best = n0; break; }
    }
    if (best < 0) {
      // No modulus with at least two tail indices: report the deepest
      // offending pair.
      v.status = CauchyVerdict::Status::ViolatedAt;
      v.eps = eps;
      for (int a = N - 2; a >= 0 && v.n < 0; --a)
        for (int b = a; b < N; ++b)
          if (d(seq[a], seq[b]) >= eps) { v.n = a; v.m = b; break; }
      return v;
    }
    v.n0_for_eps.push_back(best);
  }
  v.status = CauchyVerdict::Status::ConfirmedToHorizon;
  return v;
}

LimitVerdict limit_check(const std::vector<int>& seq, int candidate,
                         const QMetric& dhat, const std::vector<Rat>& eps_schedule) {
  LimitVerdict v;
  int N = (int)seq.size();
  v.horizon = N;
  for (const Rat& eps : eps_schedule) {
    bool served = false;
    for (int n0 = 0; n0 + 2 <= N && !served; ++n0) {
      bool ok = true;
      for (int a = n0; a < N && ok; ++a)
        if (dhat(candidate, seq[a]) >= eps) ok = false;
      served = ok;
    }
    if (!served) {
      v.confirmed = false;
      v.failing_eps = eps;
      return v;
    }
  }
  v.confirmed = true;
  return v;
}

namespace {

DistToSet dist_to_set(const QMetric& d, int x, Mask s) {
  DistToSet out;
  for (int z = 0; z < d.n(); ++z)
    if (has(s, z)) {
      if (!out.has_value() || d(x, z) < *out) out = d(x, z);
    }
  return out;
}

}  // namespace

Pi2Subspace pi2_subspace_qm(const FiniteSpace& sp, const QMetric& d,
                            const std::vector<Pi2Pair>& pairs) {
  for (size_t i = 0; i < pairs.size(); ++i) {
    if (!sp.is_open(pairs[i].U))
      throw error("NotOpen", "pair " + std::to_string(i) + ": U is not open");
    if (!sp.is_closed(pairs[i].A))
      throw error("NotClosed", "pair " + std::to_string(i) + ": A is not closed");
    if (pairs[i].U & pairs[i].A)
      throw error("PairNotDisjoint", "pair " + std::to_string(i));
  }
  Mask Y = sp.full();
  for (const auto& pr : pairs) Y &= (pr.U | pr.A);
  std::vector<int> pts = mask_to_indices(Y);
  int m = (int)pts.size();

  Pi2Subspace out;
  out.points = pts;
  out.dprime.labels.resize(m);
  for (int i = 0; i < m; ++i) out.dprime.labels[i] = sp.name_of(pts[i]);
  out.dprime.dist.assign(m, std::vector<Rat>(m));

  for (int xi = 0; xi < m; ++xi)
    for (int yi = 0; yi < m; ++yi) {
      int x = pts[xi], y = pts[yi];
      Rat total = d(x, y);
      for (size_t i = 0; i < pairs.size(); ++i) {
        Mask F = sp.full() & ~pairs[i].U;
        Rat cap = Rat::pow2_neg((unsigned)i + 1);
        Rat di;
        if (has(pairs[i].A, x)) {
          di = Rat::zero();
        } else if (has(pairs[i].U, x) && has(pairs[i].A, y)) {
          di = cap;
        } else {  // both in U_i
          DistToSet dy = dist_to_set(d, y, F);
          DistToSet dx = dist_to_set(d, x, F);
          if ((dy.has_value() && dy->is_zero()) || (dx.has_value() && dx->is_zero()))
            throw error("PointOnBoundary",
                        "zero distance to the complement of U_" + std::to_string(i));
          Rat ry = reciprocal_or_zero(dy);
          Rat rx = reciprocal_or_zero(dx);
          di = min(cap, ry.monus(rx));
        }
        total = total + di;
      }
      out.dprime.dist[xi][yi] = total;
    }
  return out;
}

bool tree_order(const std::vector<int>& a, const std::vector<int>& b) {
  if (a == b) return true;
  size_t k = 0;
  while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
  // common prefix has length k
  if (k < a.size() && a[k] == 0) return true;   // meet ^ 0 prefixes a
  if (k < b.size() && b[k] == 1) return true;   // meet ^ 1 prefixes b
  return false;
}

Sigma2Tree sigma2_tree_qm(const FiniteSpace& sp, const QMetric& d,
                          const std::vector<OpenPair>& pairs) {
  for (size_t i = 0; i < pairs.size(); ++i) {
    if (!sp.is_open(pairs[i].U) || !sp.is_open(pairs[i].V))
      throw error("NotOpen", "pair " + std::to_string(i));
    if (!subset(pairs[i].V, pairs[i].U))
      throw error("VnotInU", "pair " + std::to_string(i) + ": V must sit inside U");
  }
  int k = (int)pairs.size();
  Sigma2Tree out;

  // Blocks B_sigma: B_<> = X, B_{s0} = B_s \ U_|s|, B_{s1} = B_s & V_|s|,
  // A_s = B_s & (U_|s| \ V_|s|). Only strings shorter than #pairs matter.
  std::vector<std::vector<int>> frontier{{}};
  std::vector<Mask> fmask{sp.full()};
  for (int len = 0; len < k; ++len) {
    std::vector<std::vector<int>> next;
    std::vector<Mask> nextmask;
    for (size_t j = 0; j < frontier.size(); ++j) {
      if ((int)frontier[j].size() != len) continue;
      out.sigmas.push_back(frontier[j]);
      out.blocks.push_back(fmask[j] & (pairs[len].U & ~pairs[len].V));
      auto s0 = frontier[j]; s0.push_back(0);
      auto s1 = frontier[j]; s1.push_back(1);
      next.push_back(s0);
      nextmask.push_back(fmask[j] & ~pairs[len].U);
      next.push_back(s1);
      nextmask.push_back(fmask[j] & pairs[len].V);
    }
    frontier = std::move(next);
    fmask = std::move(nextmask);
  }

  Mask Y = 0;
  for (Mask b : out.blocks) Y |= b;
  out.points = mask_to_indices(Y);
  int m = (int)out.points.size();
  out.sigma_of.assign(m, -1);
  for (int i = 0; i < m; ++i)
    for (size_t j = 0; j < out.blocks.size(); ++j)
      if (has(out.blocks[j], out.points[i])) {
        out.sigma_of[i] = (int)j;
        break;
      }

  out.rho.labels.resize(m);
  for (int i = 0; i < m; ++i) out.rho.labels[i] = sp.name_of(out.points[i]);
  out.rho.dist.assign(m, std::vector<Rat>(m));
  for (int xi = 0; xi < m; ++xi)
    for (int yi = 0; yi < m; ++yi) {
      const auto& sx = out.sigmas[out.sigma_of[xi]];
      const auto& sy = out.sigmas[out.sigma_of[yi]];
      Rat base = d(out.points[xi], out.points[yi]);
      if (sx != sy && tree_order(sy, sx))
        out.rho.dist[xi][yi] = base + Rat::one();
      else
        out.rho.dist[xi][yi] = base;
    }
  return out;
}

Rat product_qm(const std::vector<QMetric>& ds, const std::vector<int>& xs,
               const std::vector<int>& ys) {
  if (ds.size() != xs.size() || ds.size() != ys.size())
    throw error("ArityMismatch", "component count disagrees");
  Rat total;
  for (size_t i = 0; i < ds.size(); ++i) {
    Rat di = ds[i](xs[i], ys[i]);
    Rat term = Rat::pow2_neg((unsigned)i) * di.div(Rat::one() + di);
    total = total + term;
  }
  return total;
}

PMetricReport pmetric_axioms_check(const PMetric& p) {
  PMetricReport rep;
  int n = p.n();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (p(x, y) != p(y, x))
        rep.violations.push_back({"symmetry", x, y, -1, "p(x,y) != p(y,x)"});
      if (p(x, x) > p(x, y))
        rep.violations.push_back({"self-distance", x, y, -1, "p(x,x) > p(x,y)"});
    }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x != y && p(x, x) == p(x, y) && p(x, y) == p(y, y))
        rep.violations.push_back(
            {"separation", x, y, -1, "p(x,x)=p(x,y)=p(y,y) for distinct points"});
    }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (p(x, z) + p(y, y) > p(x, y) + p(y, z))
          rep.violations.push_back(
              {"triangle", x, y, z, "p(x,z) > p(x,y)+p(y,z)-p(y,y)"});
  return rep;
}

QMetric partial_to_quasi(const PMetric& p) {
  auto rep = pmetric_axioms_check(p);
  if (!rep.ok())
    throw error("PMetricAxiomViolation", rep.violations.front().kind + " at (" +
                                             std::to_string(rep.violations.front().x) +
                                             "," +
                                             std::to_string(rep.violations.front().y) +
                                             ")");
  QMetric d;
  d.labels = p.labels;
  int n = p.n();
  d.dist.assign(n, std::vector<Rat>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) d.dist[x][y] = p(x, y).sub_checked(p(x, x));
  auto check = qm_axioms_check(d);
  if (!check.ok())
    throw error("PMetricAxiomViolation", "induced d_p fails the quasi-metric axioms");
  return d;
}

TwoBottomReport two_bottom_obstruction(const PMetric& p, int depth) {
  // Layout: 0 = bot1, 1 = bot2, 2+i = natural i.
  TwoBottomReport rep;
  if (p.n() != depth + 2) throw error("ArityMismatch", "ladder table size");
  rep.axioms_ok = pmetric_axioms_check(p).ok();

  auto lad = topo::make_catalog(topo::CatalogTag::TwoBottomLadder, depth);
  // tau_p specialization: x <= y iff p(x,y) = p(x,x) (y lies in every ball
  // around x).
  rep.order_compatible = true;
  for (int x = 0; x < p.n() && rep.order_compatible; ++x)
    for (int y = 0; y < p.n(); ++y) {
      bool below = (p(x, y) == p(x, x));
      bool order = topo::catalog_le(topo::CatalogTag::TwoBottomLadder,
                                    lad.codes[x], lad.codes[y]);
      if (below != order) {
        rep.order_compatible = false;
        rep.detail = "specialization mismatch at (" + std::to_string(x) + "," +
                     std::to_string(y) + ")";
        break;
      }
    }

  for (int i = 0; i < depth; ++i) rep.self_chain.push_back(p(2 + i, 2 + i));
  rep.strictly_increasing = true;
  for (int i = 0; i + 1 < depth; ++i)
    if (!(rep.self_chain[i] < rep.self_chain[i + 1])) rep.strictly_increasing = false;
  rep.bounded = true;
  for (int i = 0; i < depth; ++i)
    if (!(rep.self_chain[i] < p(0, 0) && rep.self_chain[i] < p(1, 1)))
      rep.bounded = false;
  rep.cross_inequalities_ok = true;
  for (int i = 0; i < depth; ++i) {
    // p(b1,b2) <= p(b1,b1) + p(b2,b2) - p(n,n), the triangle through n.
    if (p(0, 1) + p(2 + i, 2 + i) > p(0, 0) + p(1, 1)) {
      rep.cross_inequalities_ok = false;
      break;
    }
  }
  rep.contradiction_pattern = rep.axioms_ok && rep.order_compatible &&
                              rep.strictly_increasing && rep.bounded &&
                              rep.cross_inequalities_ok;
  if (rep.contradiction_pattern && rep.detail.empty())
    rep.detail =
        "self-distances are forced strictly upward along the ladder while "
        "staying bounded; no limit value is admissible, so no compatible "
        "partial metric extends to the full ladder completely";
  return rep;
}

PMetric random_ladder_pmetric(std::mt19937_64& rng, int depth) {
  // Weights strictly decreasing up the order (the ladder ascends
  // ... 2, 1, 0 with bot1/bot2 underneath everything), cross distance in the
  // admissible window.
  int n = depth + 2;
  PMetric p;
  p.labels.resize(n);
  p.labels[0] = "bot1";
  p.labels[1] = "bot2";
  for (int i = 0; i < depth; ++i) p.labels[2 + i] = std::to_string(i);
  std::uniform_int_distribution<int> step(1, 4);

  // w in units of 1/64: w(0) smallest, then upward along n, bottoms on top.
  std::vector<Rat> w(n);
  Rat acc = Rat(step(rng), 64);
  std::vector<Rat> nat(depth);
  for (int i = 0; i < depth; ++i) {  // natural i has weight nat[i], increasing in i
    nat[i] = acc;
    acc = acc + Rat(step(rng), 64);
  }
  Rat wb1 = acc + Rat(step(rng), 64);
  Rat wb2 = acc + Rat(step(rng), 64);
  w[0] = wb1;
  w[1] = wb2;
  for (int i = 0; i < depth; ++i) w[2 + i] = nat[i];

  p.p.assign(n, std::vector<Rat>(n));
  auto lad = topo::make_catalog(topo::CatalogTag::TwoBottomLadder, depth);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      bool xy = topo::catalog_le(topo::CatalogTag::TwoBottomLadder, lad.codes[x],
                                 lad.codes[y]);
      bool yx = topo::catalog_le(topo::CatalogTag::TwoBottomLadder, lad.codes[y],
                                 lad.codes[x]);
      if (x == y) p.p[x][y] = w[x];
      else if (xy) p.p[x][y] = w[x];       // x below y: p(x,y) = p(x,x)
      else if (yx) p.p[x][y] = w[y];
      else {
        // The incomparable bottoms: anything in
        // (max(w1,w2), w1 + w2 - max natural weight].
        Rat lo = max(wb1, wb2);
        Rat hi = (wb1 + wb2).sub_checked(nat[depth - 1]);
        p.p[x][y] = min(hi, lo + Rat(1, 128));
      }
    }
  return p;
}

Mask oscillation_set(const FiniteSpace& dom, Mask dom_of_f,
                     const std::vector<int>& f, const QMetric& cod_d,
                     const Rat& eps) {
  auto image_small = [&](Mask V) {
    std::vector<int> img;
    for (int x = 0; x < dom.n; ++x)
      if (has(V, x) && has(dom_of_f, x)) img.push_back(f[x]);
    if (img.empty()) return true;  // vacuously small
    for (int y : img) {
      bool all = true;
      for (int z : img)
        if (!(cod_d(y, z) < eps)) { all = false; break; }
      if (all) return true;
    }
    return false;
  };
  Mask out = 0;
  for (int x = 0; x < dom.n; ++x) {
    bool in = true;
    for (Mask U : dom.basics) {
      if (!has(U, x)) continue;
      // Some open V with x in V, V inside U, and a small image. The minimal
      // open around x is the strongest candidate; sweep anyway so the
      // quantifier structure stays visible.
      bool found = false;
      if (image_small(dom.up[x] & U)) found = true;
      if (!found) { in = false; break; }
    }
    if (in) out |= bit(x);
  }
  return out;
}

Mask q_set(const FiniteSpace& dom, Mask dom_of_f, const std::vector<int>& f,
           const QMetric& cod_d, const std::vector<Rat>& eps_list) {
  Mask out = dom.full();
  for (const Rat& e : eps_list) out &= oscillation_set(dom, dom_of_f, f, cod_d, e);
  return out;
}

std::vector<Mask> ball_topology(const QMetric& d) {
  int n = d.n();
  std::set<Rat> radii;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (!d(x, y).is_zero()) radii.insert(d(x, y));
  radii.insert(Rat(1));
  std::set<Mask> fam{0};
  for (int x = 0; x < n; ++x)
    for (const Rat& r : radii) fam.insert(ball(d, x, r));
  // Close under unions (finite intersections of balls are unions of balls
  // here once unions are closed; close under both to be safe).
  for (bool grown = true; grown;) {
    grown = false;
    std::vector<Mask> cur(fam.begin(), fam.end());
    for (Mask a : cur)
      for (Mask b : cur) {
        if (fam.insert(a | b).second) grown = true;
        if (fam.insert(a & b).second) grown = true;
      }
  }
  return {fam.begin(), fam.end()};
}

bool ball_topology_equals_subspace(const FiniteSpace& sp,
                                   const std::vector<int>& points,
                                   const QMetric& d) {
  int m = (int)points.size();
  std::vector<int> idx_of(sp.n, -1);
  for (int i = 0; i < m; ++i) idx_of[points[i]] = i;
  std::set<Mask> sub;
  for (Mask u : topo::all_opens(sp)) {
    Mask t = 0;
    for (int i = 0; i < m; ++i)
      if (has(u, points[i])) t |= bit(i);
    sub.insert(t);
  }
  auto ballfam = ball_topology(d);
  std::set<Mask> bt(ballfam.begin(), ballfam.end());
  bt.insert(full_mask(m));
  sub.insert(full_mask(m));
  bt.insert(0);
  sub.insert(0);
  return bt == sub;
}

}  // namespace qtop::qm
