#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qtop/borel.hpp"
#include "qtop/space.hpp"

using namespace qtop;
using namespace qtop::borel;
using namespace qtop::topo;

namespace {

FiniteSpace p2_space() { return powerset_space(2); }

SetExpr random_expr(std::mt19937_64& rng, int basics, int depth) {
  std::uniform_int_distribution<int> kind(0, 4), pick(0, basics - 1), arity(1, 3);
  if (depth == 0 || kind(rng) == 0) return SetExpr::Basic_(pick(rng));
  switch (kind(rng) % 4) {
    case 0: {
      std::vector<SetExpr> kids;
      for (int i = 0; i < arity(rng); ++i) kids.push_back(random_expr(rng, basics, depth - 1));
      return SetExpr::Union_(std::move(kids));
    }
    case 1: {
      std::vector<SetExpr> kids;
      for (int i = 0; i < arity(rng); ++i) kids.push_back(random_expr(rng, basics, depth - 1));
      return SetExpr::Intersect_(std::move(kids));
    }
    case 2:
      return SetExpr::Diff_(random_expr(rng, basics, depth - 1),
                            random_expr(rng, basics, depth - 1));
    default:
      return SetExpr::Complement_(random_expr(rng, basics, depth - 1));
  }
}

}  // namespace

TEST_CASE("evaluation basics") {
  auto s = sierpinski();  // basics: {}, {top}, X
  int top_idx = -1, full_idx = -1;
  for (int i = 0; i < (int)s.basics.size(); ++i) {
    if (s.basics[i] == bit(1)) top_idx = i;
    if (s.basics[i] == s.full()) full_idx = i;
  }
  REQUIRE(top_idx >= 0);
  REQUIRE(full_idx >= 0);

  CHECK(eval(SetExpr::Complement_(SetExpr::Basic_(top_idx)), s, 0));
  CHECK_FALSE(
      eval(SetExpr::Diff_(SetExpr::Basic_(full_idx), SetExpr::Basic_(top_idx)), s, 1));

  // Union against the mask union oracle on the 4-point powerset space.
  auto p2 = p2_space();
  for (size_t i = 0; i < p2.basics.size(); ++i)
    for (size_t j = 0; j < p2.basics.size(); ++j) {
      auto u = SetExpr::Union_({SetExpr::Basic_((int)i), SetExpr::Basic_((int)j)});
      CHECK(eval_mask(u, p2) == (p2.basics[i] | p2.basics[j]));
    }

  CHECK_THROWS_WITH_AS(eval(SetExpr::Basic_(99), s, 0),
                       doctest::Contains("IndexOutOfRange"), qtop::error);
}

TEST_CASE("complement is pointwise negation") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 100; ++it) {
    auto sp = random_t0_space(rng, 4);
    auto e = random_expr(rng, (int)sp.basics.size(), 3);
    auto c = SetExpr::Complement_(e);
    CHECK(eval_mask(c, sp) == (sp.full() & ~eval_mask(e, sp)));
  }
}

TEST_CASE("syntactic levels") {
  auto b = SetExpr::Basic_(0);
  CHECK(level_of(b).str() == "Sigma_1");
  auto d = SetExpr::Diff_(SetExpr::Basic_(0), SetExpr::Basic_(1));
  CHECK(level_of(d).str() == "Sigma_2");
  // The canonical second-level-complement form lands on the dual side.
  auto pi2 = SetExpr::Complement_(SetExpr::Union_({d, d}));
  CHECK(level_of(pi2).str() == "Pi_2");
  auto dh = SetExpr::DiffHier_(2, {SetExpr::Basic_(0), SetExpr::Basic_(1)});
  CHECK(level_of(dh).str() == "Delta_2");

  // Closure under finite joins and meets never raises the class.
  std::mt19937_64 rng(5);
  for (int it = 0; it < 200; ++it) {
    auto e1 = random_expr(rng, 4, 3);
    auto e2 = random_expr(rng, 4, 3);
    int s = std::max(sigma_rank(e1), sigma_rank(e2));
    CHECK(sigma_rank(SetExpr::Union_({e1, e2})) <= s);
    CHECK(sigma_rank(SetExpr::Intersect_({e1, e2})) <= s);
    int p = std::max(pi_rank(e1), pi_rank(e2));
    CHECK(pi_rank(SetExpr::Union_({e1, e2})) <= p);
    CHECK(pi_rank(SetExpr::Intersect_({e1, e2})) <= p);
  }
}

TEST_CASE("third-level rewrite to a union of dual pieces") {
  auto p2 = p2_space();
  int k = (int)p2.basics.size();
  // A hand-built third-level expression: difference of differences.
  auto inner1 = SetExpr::Diff_(SetExpr::Basic_(2), SetExpr::Basic_(1));
  auto inner2 = SetExpr::Diff_(SetExpr::Basic_(3), SetExpr::Basic_(4 % k));
  auto e = SetExpr::Diff_(SetExpr::Union_({inner1, inner2}), inner1);
  REQUIRE(sigma_rank(e) >= 3);
  auto rewritten = rewrite_sigma_as_pi_union(e);
  CHECK(eval_mask(rewritten, p2) == eval_mask(e, p2));
  // Every member is strictly below the original level on the dual side.
  const auto& members =
      rewritten.kind == SetExpr::Kind::Union ? rewritten.kids : std::vector<SetExpr>{rewritten};
  for (const auto& m : members) CHECK(pi_rank(m) < sigma_rank(e));

  CHECK_THROWS_WITH_AS(rewrite_sigma_as_pi_union(SetExpr::Basic_(0)),
                       doctest::Contains("LevelTooLow"), qtop::error);

  // Randomized third-level expressions stay pointwise equal after rewriting.
  std::mt19937_64 rng(7);
  int done = 0;
  while (done < 100) {
    auto sp = random_t0_space(rng, 4);
    auto cand = SetExpr::Diff_(random_expr(rng, (int)sp.basics.size(), 2),
                               random_expr(rng, (int)sp.basics.size(), 2));
    if (sigma_rank(cand) <= 2) continue;
    auto rw = rewrite_sigma_as_pi_union(cand);
    CHECK(eval_mask(rw, sp) == eval_mask(cand, sp));
    ++done;
  }
}

TEST_CASE("difference chains") {
  auto p2 = p2_space();
  Mask A0 = p2.up[3], A1 = p2.up[1], A2 = p2.up[1] | p2.up[2];
  REQUIRE(subset(A0, A1));
  REQUIRE(subset(A1, A2));

  CHECK(diff_hier_eval(1, {A0}) == A0);
  CHECK(diff_hier_eval(2, {A0, A1}) == (A1 & ~A0));
  CHECK(diff_hier_eval(3, {A0, A1, A2}) == (A0 | (A2 & ~A1)));

  CHECK_THROWS_WITH_AS(diff_hier_eval(2, {A1, A0}), doctest::Contains("NonIncreasing"),
                       qtop::error);

  // The chain evaluator agrees with the syntactic node over an explicit
  // basics list.
  std::vector<Mask> basics{A0, A1, A2};
  auto node = SetExpr::DiffHier_(
      3, {SetExpr::Basic_(0), SetExpr::Basic_(1), SetExpr::Basic_(2)});
  CHECK(eval_mask(node, basics, p2.n) == (A0 | (A2 & ~A1)));
}

TEST_CASE("shortest difference-chain witnesses") {
  auto s = sierpinski();
  auto w = hk_decompose(s, bit(0), 4);  // the closed point
  REQUIRE(w.has_value());
  CHECK(w->alpha == 2);
  REQUIRE(w->opens.size() == 2);
  CHECK(w->opens[0] == bit(1));
  CHECK(w->opens[1] == s.full());

  // Open targets take a single step.
  auto p2 = p2_space();
  for (Mask u : all_opens(p2)) {
    auto wu = hk_decompose(p2, u, 4);
    REQUIRE(wu.has_value());
    if (u != 0) CHECK(wu->alpha == 1);
  }

  // Every subset of the 4-point powerset space decomposes within four steps.
  for (Mask target = 0;; ++target) {
    auto wt = hk_decompose(p2, target, 4);
    REQUIRE(wt.has_value());
    CHECK(wt->alpha <= 4);
    CHECK(diff_hier_eval(wt->alpha, wt->opens) == target);
    if (target == p2.full()) break;
  }

  // A chain of opens evaluated forward decomposes at most as deep.
  std::mt19937_64 rng(11);
  for (int it = 0; it < 40; ++it) {
    auto sp = random_t0_space(rng, 4);
    auto opens = all_opens(sp);
    std::uniform_int_distribution<size_t> pick(0, opens.size() - 1);
    std::vector<Mask> chain;
    Mask cur = 0;
    std::uniform_int_distribution<int> len(1, 4);
    int alpha = len(rng);
    for (int i = 0; i < alpha; ++i) {
      cur |= opens[pick(rng)];
      chain.push_back(cur);
    }
    if (!sp.is_open(cur)) continue;
    bool ok = true;
    for (auto& m : chain) ok = ok && sp.is_open(m);
    if (!ok) continue;
    Mask target = diff_hier_eval(alpha, chain);
    auto wt = hk_decompose(sp, target, 4);
    REQUIRE(wt.has_value());
    CHECK(wt->alpha <= alpha);
  }
}

TEST_CASE("diagonal expression") {
  std::mt19937_64 rng(13);
  auto s = sierpinski();
  auto diag = diagonal_expr(s);
  Mask got = eval_mask(diag.expr, diag.prod);
  CHECK(got == (bit(0 * 2 + 0) | bit(1 * 2 + 1)));

  auto one = discrete_space(1);
  auto d1 = diagonal_expr(one);
  CHECK(eval_mask(d1.expr, d1.prod) == d1.prod.full());

  auto p2 = p2_space();
  auto d2 = diagonal_expr(p2);
  Mask want = 0;
  for (int x = 0; x < 4; ++x) want |= bit(x * 4 + x);
  CHECK(eval_mask(d2.expr, d2.prod) == want);
  CHECK(pi_rank(d2.expr) <= 2);

  CHECK_THROWS_WITH_AS(diagonal_expr(space_from_opens(2, {0, full_mask(2)})),
                       doctest::Contains("NotT0"), qtop::error);

  for (int it = 0; it < 100; ++it) {
    std::uniform_int_distribution<int> np(1, 5);
    auto sp = random_t0_space(rng, np(rng));
    auto d = diagonal_expr(sp);
    Mask mask = 0;
    for (int x = 0; x < sp.n; ++x) mask |= bit(x * sp.n + x);
    CHECK(eval_mask(d.expr, d.prod) == mask);
  }
}

TEST_CASE("equalizer expression") {
  auto s = sierpinski();
  std::vector<int> ident{0, 1}, const_top{1, 1};
  auto eq = equalizer_expr(ident, const_top, s, s);
  CHECK(eval_mask(eq.expr, eq.basics, s.n) == bit(1));
  CHECK(pi_rank(eq.expr) <= 2);

  auto same = equalizer_expr(ident, ident, s, s);
  CHECK(eval_mask(same.expr, same.basics, s.n) == s.full());

  // A non-monotone map is rejected with the offending open named.
  std::vector<int> swap{1, 0};
  CHECK_THROWS_WITH_AS(equalizer_expr(swap, ident, s, s),
                       doctest::Contains("NonContinuousMap"), qtop::error);

  // Retract pair: a chain retracts onto its ends; the equalizer of the
  // round trip against the identity is the section's image.
  auto c3 = chain_space(3);
  auto two = chain_space(2);
  std::vector<int> section{0, 2};   // two -> c3
  std::vector<int> retract{0, 0, 1};  // c3 -> two
  REQUIRE(is_continuous(two, c3, section));
  REQUIRE(is_continuous(c3, two, retract));
  // round trip on c3
  std::vector<int> sr(3);
  for (int y = 0; y < 3; ++y) sr[y] = section[retract[y]];
  std::vector<int> id3{0, 1, 2};
  auto eq2 = equalizer_expr(sr, id3, c3, c3);
  CHECK(eval_mask(eq2.expr, eq2.basics, c3.n) == (bit(0) | bit(2)));
}

TEST_CASE("maximal-point expression") {
  auto s = sierpinski();
  auto m = max_expr(s);
  CHECK(eval_mask(m.expr, m.basics, s.n) == bit(1));
  CHECK(pi_rank(m.expr) <= 2);

  auto p2 = p2_space();
  auto m2 = max_expr(p2);
  CHECK(eval_mask(m2.expr, m2.basics, p2.n) == max_elements(p2));

  std::mt19937_64 rng(17);
  for (int it = 0; it < 50; ++it) {
    auto sp = random_t0_space(rng, 5);
    auto mx = max_expr(sp);
    CHECK(eval_mask(mx.expr, mx.basics, sp.n) == max_elements(sp));
  }
}

TEST_CASE("expression text form round trip") {
  std::string text = "(diff (basic 3) (union (basic 1) (basic 2)))";
  auto e = parse_sexpr(text);
  CHECK(print_sexpr(e) == text);
  auto dh = parse_sexpr("(diffhier 2 (basic 0) (basic 1))");
  CHECK(dh.kind == SetExpr::Kind::DiffHier);
  CHECK(dh.alpha == 2);
  CHECK_THROWS_AS(parse_sexpr("(bogus 1)"), qtop::error);
  CHECK_THROWS_AS(parse_sexpr("(basic 1"), qtop::error);

  std::mt19937_64 rng(19);
  for (int it = 0; it < 50; ++it) {
    auto e2 = random_expr(rng, 5, 3);
    CHECK(print_sexpr(parse_sexpr(print_sexpr(e2))) == print_sexpr(e2));
  }
}

TEST_CASE("subspace trace law") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 60; ++it) {
    auto sp = random_t0_space(rng, 5);
    Mask s = rng() & sp.full();
    if (s == 0) continue;
    auto [sub, pts] = subspace(sp, s);
    auto e = random_expr(rng, (int)sp.basics.size(), 3);
    // Evaluate on the subspace against traced basics.
    std::vector<Mask> traced;
    for (Mask b : sp.basics) {
      Mask t = 0;
      for (size_t i = 0; i < pts.size(); ++i)
        if (has(b, pts[i])) t |= bit((int)i);
      traced.push_back(t);
    }
    Mask on_sub = eval_mask(e, traced, sub.n);
    Mask on_parent = eval_mask(e, sp);
    Mask expected = 0;
    for (size_t i = 0; i < pts.size(); ++i)
      if (has(on_parent, pts[i])) expected |= bit((int)i);
    CHECK(on_sub == expected);
  }
}
