#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qtop/bits.hpp"
#include "qtop/rational.hpp"

namespace qtop::repr {

using Seq = std::vector<int>;

// Canonical enumeration of finite sequences over {0..alphabet-1} up to the
// given length: by length, then lexicographically. Index 0 is the empty
// sequence.
struct SeqEnum {
  int alphabet = 2;
  int max_len = 0;
  std::vector<Seq> seqs;

  static SeqEnum make(int alphabet, int max_len);
  int index_of(const Seq& s) const;  // -1 when out of range
};

bool is_prefix(const Seq& a, const Seq& b);         // a prefix of b
bool is_strict_prefix(const Seq& a, const Seq& b);

// The set enumerated by a finite sequence: entry v > 0 mentions v-1, entry 0
// pads.
Mask delta_prefix(const Seq& sigma);

// A monotone map from finite sequences to finite sets: the values guaranteed
// by the prefix. Error NotMonotone at construction.
struct PrefixFun {
  int alphabet = 2;
  int depth = 0;
  std::map<Seq, Mask> table;

  Mask value(const Seq& sigma) const;  // longer prefixes fall back to depth
  static PrefixFun constant(int alphabet, int depth, Mask v);
  static PrefixFun from_rule(int alphabet, int depth,
                             const std::function<Mask(const Seq&)>& rule);
  static PrefixFun delta(int alphabet, int depth);
  void validate() const;
};

// Index-to-first-component table of the standard pairing surjection; every
// value recurs infinitely often.
std::vector<int> pairing_first_table(int length);

// The translated sequence-function: position i emits r(i)+1 when the prefix
// of length i already guarantees r(i), else 0. Error RTableTooShort.
Seq translate_prefix(const PrefixFun& f, const std::vector<int>& r_table,
                     const Seq& p, int out_len);

struct FactorizationReport {
  bool ok = true;
  int prefixes_checked = 0;
  std::optional<Seq> failing_prefix;
};

// Sweeps every sequence over the alphabet to the given depth and checks the
// enumerated set of the translation equals the function's value there. The
// translation is run past the depth (0-padded input) far enough for every
// pending mention to be emitted.
FactorizationReport check_factorization(const PrefixFun& f, int alphabet, int depth);

// Relation tables over an indexed family of sequences with images.
struct ReprTables {
  std::vector<Seq> seqs;
  std::vector<Mask> images;  // f(B_m) as point masks of some space

  bool strict_prefix(int m, int n) const { return is_strict_prefix(seqs[m], seqs[n]); }
  bool img_subset(int m, int n) const { return subset(images[m], images[n]); }
  int count() const { return (int)seqs.size(); }
};

struct ConditionReport {
  // Relational conditions.
  bool nonempty = false;
  bool prefix_extension = false;
  bool inclusion_upward = false;
  bool meet_interpolation = false;
  // Formula evaluations of the same four conditions, computed through the
  // open/closed-piece combinators.
  bool formula1 = false, formula2 = false, formula3 = false, formula4 = false;
  bool formulations_agree = false;
  std::optional<std::pair<int, int>> witness;
  bool all_conditions() const {
    return nonempty && prefix_extension && inclusion_upward && meet_interpolation;
  }
};

// Error TableInconsistent.
ConditionReport f_conditions_check(const std::vector<int>& F, const ReprTables& tables);

struct PrunedTreeSample {
  std::vector<Seq> points;  // depth-length sequences with all prefixes in F
  bool stuck = false;
  Seq stuck_prefix;
};

// Walks the tree spanned by F. Error NotPruned is reported through `stuck`
// with the offending prefix.
PrunedTreeSample pruned_tree_points(const std::vector<int>& F, const ReprTables& tables,
                                    int depth);

}  // namespace qtop::repr
