#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qtop/bits.hpp"
#include "qtop/rational.hpp"

namespace qtop::topo {

using qtop::bit;
using qtop::full_mask;
using qtop::has;
using qtop::indices_to_mask;
using qtop::lowest_bit;
using qtop::Mask;
using qtop::mask_to_indices;
using qtop::popcount;
using qtop::subset;

// A finite topological space over points {0..n-1}.
//
// Any finite topology is determined by its specialization preorder: the
// minimal open around x is up[x] = {y | x <= y}, and the open sets are
// exactly the up-closed sets of that preorder. We keep the preorder as the
// canonical representation (so products of 5-point spaces do not force the
// materialization of 2^25 opens) and record a list of indexed basic opens
// on the side. Spaces loaded from an explicit open-set family have that
// family validated against the closure axioms and kept as the basics list.
struct FiniteSpace {
  int n = 0;
  std::vector<Mask> up;                 // up[x] = minimal open containing x
  std::vector<Mask> basics;             // indexed basic opens; always has {} and X
  std::vector<std::string> point_names; // optional labels, size n when present

  Mask full() const { return full_mask(n); }

  // x <= y in the specialization order (x in the closure of {y}).
  bool le(int x, int y) const { return has(up[x], y); }

  bool is_open(Mask s) const;
  bool is_closed(Mask s) const { return is_open(full() & ~s); }

  Mask closure(Mask s) const;   // smallest closed superset
  Mask interior(Mask s) const;  // largest open subset
  Mask down(int x) const;       // closure of {x}

  std::string name_of(int x) const;
};

// Construction paths -------------------------------------------------------

// Validates the family against the topology axioms and derives the order.
// Throws error with codes MissingEmptySet / MissingFullSet /
// UnionEscapesFamily / IntersectionEscapesFamily naming the witnesses.
FiniteSpace space_from_opens(int n, const std::vector<Mask>& opens,
                             std::vector<std::string> names = {});

// Space with all up-sets of the given reflexive-transitive order as opens.
// up_sets[x] must contain x and be transitive.
FiniteSpace space_from_up_sets(std::vector<Mask> up_sets,
                               std::vector<std::string> names = {});

// le(x,y) matrix variant (row x: the set of y with x <= y).
FiniteSpace space_from_le(int n, const std::vector<std::vector<bool>>& le,
                          std::vector<std::string> names = {});

FiniteSpace sierpinski();                  // points: 0 = bottom, 1 = top
FiniteSpace discrete_space(int n);
FiniteSpace chain_space(int n);            // 0 < 1 < ... < n-1, up-set opens
FiniteSpace powerset_space(int k);         // P(k) as a 2^k-point space, subset order

// Point (x,y) of the product is x * b.n + y. Basic opens are the rectangles
// A x B over both factors' basics.
FiniteSpace product(const FiniteSpace& a, const FiniteSpace& b);
FiniteSpace disjoint_union(const FiniteSpace& a, const FiniteSpace& b);

// Subspace on the points of s (reindexed in increasing point order).
// Returns the space and the map from new index to old point.
std::pair<FiniteSpace, std::vector<int>> subspace(const FiniteSpace& sp, Mask s);

// Queries -------------------------------------------------------------------

// matrix[x] = {y | x <= y}; reflexive and transitive, antisymmetric iff T0.
std::vector<Mask> specialization_order(const FiniteSpace& sp);

bool is_T0(const FiniteSpace& sp);
bool is_T1(const FiniteSpace& sp);
// Every singleton is open-intersect-closed. Coincides with T0 on finite
// spaces; checked by the direct sweep.
bool is_TD(const FiniteSpace& sp);

struct SoberReport {
  bool sober = false;
  // On failure: an irreducible closed set with no (unique) generic point,
  // or a closed set witnessing the degeneracy.
  std::optional<Mask> witness;
  std::string detail;
};

// Brute-force sobriety: enumerates closed sets, tests irreducibility by
// exhibiting a two-proper-closed-subsets decomposition or certifying none
// exists, then matches irreducibles with point closures. Requires T0.
SoberReport is_sober(const FiniteSpace& sp);

// Removes the isolated points of the subspace s.
Mask cb_derivative(const FiniteSpace& sp, Mask s);

struct CbReport {
  int rank = 0;             // least a with X^(a) = X^(a+1)
  bool scattered = false;   // X^(rank) empty
  std::vector<Mask> derived; // X^(0), X^(1), ..., X^(rank)
};
CbReport cb_rank(const FiniteSpace& sp);
bool is_scattered(const FiniteSpace& sp);

Mask max_elements(const FiniteSpace& sp);  // maximal in specialization order

// All open sets, enumerated as up-sets. Guarded: throws SpaceTooLarge for
// n > 20.
std::vector<Mask> all_opens(const FiniteSpace& sp);

// Enumeration & random generation (exact poset <-> T0-space duality) -------

// All partial orders on n elements up to isomorphism, as up-set vectors.
// Counts for n = 1..5: 1, 2, 5, 16, 63.
std::vector<std::vector<Mask>> enumerate_posets_up_to_iso(int n);

// All finite T0 spaces on n points up to homeomorphism.
std::vector<FiniteSpace> enumerate_t0_spaces(int n);

FiniteSpace random_t0_space(std::mt19937_64& rng, int n);

// Monotone (= continuous) random map between two spaces, as point vector.
std::vector<int> random_continuous_map(std::mt19937_64& rng,
                                       const FiniteSpace& dom,
                                       const FiniteSpace& cod);

bool is_continuous(const FiniteSpace& dom, const FiniteSpace& cod,
                   const std::vector<int>& f);

// True if the two spaces are homeomorphic (point-count limited search).
bool homeomorphic(const FiniteSpace& a, const FiniteSpace& b);

}  // namespace qtop::topo
