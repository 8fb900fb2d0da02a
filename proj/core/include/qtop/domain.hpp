#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qtop/borel.hpp"
#include "qtop/space.hpp"

namespace qtop::dom {

using topo::FiniteSpace;
using topo::Mask;

struct FinPoset {
  int n = 0;
  std::vector<Mask> up;  // up[x] = {y | x <= y}
  std::vector<std::string> names;

  bool le(int x, int y) const { return has(up[x], y); }
  Mask down(int x) const;
};

FinPoset poset_from_le(int n, const std::vector<std::vector<bool>>& le,
                       std::vector<std::string> names = {});
FinPoset poset_from_up_sets(std::vector<Mask> ups, std::vector<std::string> names = {});

// Brute force over all directed subsets that have a supremum.
bool way_below(const FinPoset& p, int x, int y);

// All up-sets as opens (on a finite poset every up-set is Scott-open).
FiniteSpace scott_space(const FinPoset& p);

// The basic Lawson set: the way-above set of b0 minus the up-sets of the
// blockers.
Mask lawson_basic(const FinPoset& p, int b0, const std::vector<int>& blockers);

struct IdealCompletion {
  std::vector<Mask> ideals;       // each a directed lower set
  std::vector<bool> compact;      // principal ideals
  FinPoset order;                 // ideals under inclusion
  bool isomorphic_to_input = false;
};

// Enumerates every ideal; capped at 12 elements.
IdealCompletion ideal_completion(const FinPoset& p);

// A truncated open presentation: each open is the union of the up-closures
// of its finite generator sets, all generators inside {0..depth-1}.
struct Pi02Presentation {
  struct Pair {
    std::vector<Mask> U_gens;
    std::vector<Mask> V_gens;
  };
  std::vector<Pair> pairs;
  int depth = 0;
};

bool in_up_family(Mask F, const std::vector<Mask>& gens);  // some generator inside F
bool member_X(const Pi02Presentation& pres, Mask x);       // x in U_i implies x in V_i

// F belongs to the generator-consistent family: extendable to a member of X
// within the window. Exhaustive to depth; the answer is labeled by it.
bool in_F_family(const Pi02Presentation& pres, Mask F);

struct FxOmegaElem {
  Mask F = 0;
  int n = 0;
  auto operator<=>(const FxOmegaElem&) const = default;
};

// The two-clause order: equality, or F1 inside F2 with n1 < n2 and every
// stage up to n1 pushing U-membership of F1 to V-membership of F2.
// Error DepthExceeded when a generator set leaves the window.
bool fxomega_le(const Pi02Presentation& pres, const FxOmegaElem& a,
                const FxOmegaElem& b);

// All of F x omega up to the window: F ranges over the generator-consistent
// family, n <= max_n.
std::vector<FxOmegaElem> fxomega_universe(const Pi02Presentation& pres, int max_n);

struct PhiResult {
  std::vector<FxOmegaElem> elems;
  bool lower_set = true;
  bool directed_witnesses_found = true;
  std::string detail;
};

// phi(x) = all pairs with F inside x, n <= depth. Error PointNotInX with the
// violated pair index. Directedness is certified by constructing the merge
// witness for sampled pairs.
PhiResult phi_map(const Pi02Presentation& pres, Mask x, int max_n);

struct IdealModelReport {
  bool ok = true;
  std::vector<std::string> per_element;  // "compact" / "maximal" / both
};

// Every element compact or specialization-maximal (always true on finite
// posets; reported per element).
IdealModelReport omega_ideal_model_check(const FinPoset& p);

// Basis relation tables for the filter conditions, over an indexed family of
// opens closed under union and intersection and containing the empty set.
struct BasisTables {
  std::vector<Mask> basics;
  std::vector<std::vector<bool>> way_below;  // B_n << B_m table

  static BasisTables from_space(const FiniteSpace& sp);
  int index_of(Mask b) const;
};

struct FilterCheckReport {
  bool nonempty_basics = true;      // every indexed member of F is non-empty
  bool upward_closed = true;        // B_m <= B_n pushes membership up
  bool meet_witness = true;         // some B_k equals the intersection
  bool interpolation = true;        // some B_n << B_m inside F
  bool union_prime = true;          // B_k = B_m | B_n forces a side into F
  bool f_nonempty = true;           // the filter itself is non-empty
  std::optional<int> witness_m, witness_n;
  bool all_pass() const {
    return nonempty_basics && upward_closed && meet_witness && interpolation &&
           union_prime && f_nonempty;
  }
};

// The five membership conditions for a neighborhood-filter index set.
// Error TableInconsistent when the tables contradict the basics.
FilterCheckReport lc_sober_filter_check(const std::vector<int>& F,
                                        const BasisTables& tables);

// The filter of a point: indices of the basics containing it.
std::vector<int> point_filter(const BasisTables& tables, int x);

}  // namespace qtop::dom
