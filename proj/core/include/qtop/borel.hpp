#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qtop/space.hpp"

namespace qtop::borel {

using topo::FiniteSpace;
using topo::Mask;

// Symbolic set expression over a list of indexed basic opens.
struct SetExpr {
  enum class Kind { Basic, Union, Intersect, Diff, Complement, DiffHier };
  Kind kind = Kind::Basic;
  int basic = 0;                // Kind::Basic
  int alpha = 0;                // Kind::DiffHier: the length of the chain
  std::vector<SetExpr> kids;    // non-empty for Union/Intersect/DiffHier

  static SetExpr Basic_(int i);
  static SetExpr Union_(std::vector<SetExpr> es);
  static SetExpr Intersect_(std::vector<SetExpr> es);
  static SetExpr Diff_(SetExpr a, SetExpr b);
  static SetExpr Complement_(SetExpr e);
  static SetExpr DiffHier_(int alpha, std::vector<SetExpr> chain);
};

struct Level {
  enum class Cls { Sigma, Pi, Delta };
  Cls cls = Cls::Sigma;
  int index = 1;
  std::string str() const;
};

// Syntactic upper bound on the class of the expression. Unions and
// intersections are treated as finite boolean combinations; a difference is
// ranked one level above its operands; a difference chain of opens lands in
// the ambiguous class one level up.
Level level_of(const SetExpr& e);

// Least n such that the expression provably sits in Sigma_n / Pi_n under
// level_of's rules.
int sigma_rank(const SetExpr& e);
int pi_rank(const SetExpr& e);

// Pointwise evaluation against an explicit basics list. Errors:
// IndexOutOfRange, NonIncreasingDiffHier.
bool eval(const SetExpr& e, const std::vector<Mask>& basics, int point);
Mask eval_mask(const SetExpr& e, const std::vector<Mask>& basics, int n_points);

// Convenience overloads using the space's own basics.
bool eval(const SetExpr& e, const FiniteSpace& sp, int point);
Mask eval_mask(const SetExpr& e, const FiniteSpace& sp);

// For a Sigma_a expression with a > 2: an equivalent union whose members
// are Pi_b subtrees with b < a. Error: LevelTooLow.
SetExpr rewrite_sigma_as_pi_union(const SetExpr& e);

// Expression (over the product's rectangle basics) evaluating exactly to
// the diagonal {(x,x)}. Requires T0; the returned level is Pi 2.
struct DiagonalResult {
  FiniteSpace prod;
  SetExpr expr;
};
DiagonalResult diagonal_expr(const FiniteSpace& sp);

// Expression over its own basics list evaluating to {x | f(x) = g(x)}.
// Error: NonContinuousMap naming the offending basic open.
struct EqualizerResult {
  SetExpr expr;
  std::vector<Mask> basics;  // preimages of the codomain basics under f and g
};
EqualizerResult equalizer_expr(const std::vector<int>& f, const std::vector<int>& g,
                               const FiniteSpace& dom, const FiniteSpace& cod);

// Difference-chain evaluation: union of A_b minus everything before it, over
// the b of parity opposite to alpha. Error: NonIncreasing.
Mask diff_hier_eval(int alpha, const std::vector<Mask>& sets);

// Exhaustive search for the shortest increasing open chain whose difference
// evaluation equals the target. Returns nothing when no chain of length at
// most maxlen works.
struct HkWitness {
  int alpha = 0;
  std::vector<Mask> opens;
};
std::optional<HkWitness> hk_decompose(const FiniteSpace& sp, Mask target, int maxlen);

// Expression (over its own basics) for the set of specialization-maximal
// points, built from the pointwise order formula; sits in Delta 2.
struct MaxExprResult {
  SetExpr expr;
  std::vector<Mask> basics;
};
MaxExprResult max_expr(const FiniteSpace& sp);

// S-expression text form: (basic 3), (union e...), (intersect e...),
// (diff a b), (complement e), (diffhier k e...).
SetExpr parse_sexpr(const std::string& text);
std::string print_sexpr(const SetExpr& e);

}  // namespace qtop::borel
