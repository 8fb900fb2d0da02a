#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qtop/catalog.hpp"
#include "qtop/rational.hpp"
#include "qtop/space.hpp"

namespace qtop::qm {

using topo::FiniteSpace;
using topo::Mask;

// Distance table over points {0..n-1}, exact rationals throughout.
struct QMetric {
  std::vector<std::string> labels;
  std::vector<std::vector<Rat>> dist;

  int n() const { return (int)dist.size(); }
  const Rat& operator()(int x, int y) const { return dist[x][y]; }
};

struct AxiomViolation {
  std::string kind;  // "negative" | "separation" | "triangle" | "self-distance"
  int x = -1, y = -1, z = -1;
  std::string detail;
};

struct AxiomReport {
  std::vector<AxiomViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Brute-force sweep of separation over all pairs and the triangle
// inequality over all triples.
AxiomReport qm_axioms_check(const QMetric& d);

// The induced metric max{d(x,y), d(y,x)}.
QMetric sym_metrize(const QMetric& d);

// Open/closed balls as point sets.
Mask ball(const QMetric& d, int x, const Rat& eps);         // d(x,y) <  eps
Mask closed_ball(const QMetric& d, int x, const Rat& eps);  // d(x,y) <= eps
Mask reverse_closed_ball(const QMetric& d, int x, const Rat& r);  // d(y,x) <= r

// Concrete distances ---------------------------------------------------------

// 2^-min(X \ Y), or 0 when X is a subset of Y. Sets are packed masks of
// naturals.
Rat pomega_qm(Mask X, Mask Y);

// The two standard quasi-metrics on omega+1 (codes: naturals and OMEGA).
// d1 uses the positive-index convention 1/(y+1) so the value is defined at
// y = 0; d2 is the 0/1 order distance.
Rat omega_d1(std::int64_t x, std::int64_t y);
Rat omega_d2(std::int64_t x, std::int64_t y);

// 0/1 distance of the specialization order: 0 iff x <= y. Compatible with
// every finite space; its balls are exactly the minimal opens.
QMetric order_qm(const FiniteSpace& sp);

// Order-compatible quasi-metric with randomized row scales (values stay in
// [1,2] off the order so the triangle inequality is kept).
QMetric random_compatible_qm(std::mt19937_64& rng, const FiniteSpace& sp);

// Table over a catalog window using the tag's native distance.
QMetric catalog_qm(const topo::CatalogSpace& c);
// The second omega+1 distance for the same window.
QMetric catalog_qm_d2(const topo::CatalogSpace& c);

// Cauchy / limits -------------------------------------------------------------

struct CauchyVerdict {
  enum class Status { ConfirmedToHorizon, ViolatedAt };
  Status status = Status::ConfirmedToHorizon;
  int horizon = 0;
  // For Violated: a witness pair n <= m and the epsilon it breaks. A
  // violation means no n0 <= horizon-2 serves this epsilon, so the prefix
  // carries no nontrivial modulus for it.
  int n = -1, m = -1;
  Rat eps;
  std::vector<int> n0_for_eps;  // per schedule entry when confirmed
};

CauchyVerdict cauchy_check(const std::vector<int>& seq, const QMetric& d,
                           const std::vector<Rat>& eps_schedule);

struct LimitVerdict {
  bool confirmed = false;
  int horizon = 0;
  // When not confirmed: the first epsilon with no stabilization index.
  std::optional<Rat> failing_eps;
};

// Checks dhat(candidate, x_n) eventually under each epsilon within the
// prefix.
LimitVerdict limit_check(const std::vector<int>& seq, int candidate,
                         const QMetric& dhat, const std::vector<Rat>& eps_schedule);

// Derived quasi-metrics -------------------------------------------------------

struct Pi2Pair {
  Mask U;  // open
  Mask A;  // closed, disjoint from U
};

struct Pi2Subspace {
  std::vector<int> points;  // carrier points of Y in increasing order
  QMetric dprime;
};

// Re-metrization of Y = the set of points lying in every U_i or A_i. The
// summand for pair i is min{2^-i-1, max{0, 1/d(y,F_i) - 1/d(x,F_i)}} inside
// U_i, 2^-i-1 across the U_i/A_i boundary and 0 from A_i, with F_i the
// complement of U_i.
// Errors: PairNotDisjoint, NotOpen, NotClosed, PointOnBoundary.
Pi2Subspace pi2_subspace_qm(const FiniteSpace& sp, const QMetric& d,
                            const std::vector<Pi2Pair>& pairs);

// Binary tree coordinates for the block partition: sigma in 2^{<=k}.
struct TreeNode {
  std::vector<int> sigma;
};

// sigma <= sigma' in the collapsed-tree total order (left of).
bool tree_order(const std::vector<int>& a, const std::vector<int>& b);

struct Sigma2Tree {
  std::vector<std::vector<int>> sigmas;   // all binary strings, length < #pairs
  std::vector<Mask> blocks;               // A_sigma per sigma (same indexing)
  std::vector<int> points;                // Y as carrier points
  std::vector<int> sigma_of;              // block index per Y point
  QMetric rho;
};

struct OpenPair {
  Mask U;
  Mask V;  // V subset of U, both open
};

// Partition of union(U_i \ V_i) into blocks indexed by binary strings, with
// the +1 penalty distance between blocks that sit left of the source block.
// Error: VnotInU.
Sigma2Tree sigma2_tree_qm(const FiniteSpace& sp, const QMetric& d,
                          const std::vector<OpenPair>& pairs);

// Countable-product distance at finite arity:
// sum_i 2^-i * d_i(x_i,y_i) / (1 + d_i(x_i,y_i)). Error: ArityMismatch.
Rat product_qm(const std::vector<QMetric>& ds, const std::vector<int>& xs,
               const std::vector<int>& ys);

// Partial metrics -------------------------------------------------------------

struct PMetric {
  std::vector<std::string> labels;
  std::vector<std::vector<Rat>> p;
  int n() const { return (int)p.size(); }
  const Rat& operator()(int x, int y) const { return p[x][y]; }
};

struct PMetricReport {
  std::vector<AxiomViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Symmetry, self-distance bound p(x,x) <= p(x,y), the sharpened triangle
// p(x,z) <= p(x,y) + p(y,z) - p(y,y), and the separation axiom.
PMetricReport pmetric_axioms_check(const PMetric& p);

// d_p(x,y) = p(x,y) - p(x,x); checked to be a quasi-metric.
// Error: PMetricAxiomViolation.
QMetric partial_to_quasi(const PMetric& p);

struct TwoBottomReport {
  bool axioms_ok = false;
  bool order_compatible = false;       // tau_p specialization equals the ladder order
  std::vector<Rat> self_chain;         // p(0,0), p(1,1), ... along the ladder
  bool strictly_increasing = false;
  bool bounded = false;                // by p(bot_i, bot_i)
  bool cross_inequalities_ok = false;  // p(b1,b2) <= p(b1,b1)+p(b2,b2)-p(n,n)
  bool contradiction_pattern = false;  // all of the above together
  std::string detail;
};

// Ladder points are ordered bot1, bot2, 0, 1, ..., depth-1 (the catalog
// window layout).
TwoBottomReport two_bottom_obstruction(const PMetric& p, int depth);

// Random ladder-compatible partial metric (passes the axioms and induces the
// ladder order); used to search the obstruction pattern.
PMetric random_ladder_pmetric(std::mt19937_64& rng, int depth);

// Oscillation sets -----------------------------------------------------------

// Q(f, eps): points x such that inside every open neighborhood of x some
// smaller open V around x has f(V) of d'-radius < eps from one of its own
// values (an empty image satisfies the condition vacuously).
Mask oscillation_set(const FiniteSpace& dom, Mask dom_of_f,
                     const std::vector<int>& f, const QMetric& cod_d,
                     const Rat& eps);

// Intersection over the epsilon list.
Mask q_set(const FiniteSpace& dom, Mask dom_of_f, const std::vector<int>& f,
           const QMetric& cod_d, const std::vector<Rat>& eps_list);

// Topology comparison ---------------------------------------------------------

// All opens generated by the d-balls on the listed points (as index masks
// into `points`).
std::vector<Mask> ball_topology(const QMetric& d);

// True iff the family of d-balls generates exactly the subspace topology on
// the given carrier points.
bool ball_topology_equals_subspace(const FiniteSpace& sp,
                                   const std::vector<int>& points,
                                   const QMetric& d);

}  // namespace qtop::qm
