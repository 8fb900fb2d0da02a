#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qtop/borel.hpp"
#include "qtop/game.hpp"
#include "qtop/qmetric.hpp"

using namespace qtop;
using namespace qtop::game;
using namespace qtop::topo;
using qtop::qm::catalog_qm;
using qtop::qm::catalog_qm_d2;
using qtop::qm::order_qm;

TEST_CASE("every run on the two-point space certifies a point") {
  auto arena = Arena::finite(sierpinski());
  Challenger foes[3] = {chain_walker(), random_legal(), point_sticker()};
  Responder both[2] = {qm_strategy(order_qm(arena.space)), min_nbhd_strategy()};
  for (auto& foe : foes)
    for (auto& ii : both)
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto run = play(arena, foe, ii, 3, seed);
        CHECK(run.verdict.status == VerdictStatus::WonByRefinement);
        CHECK(nesting_ok(run.transcript));
      }
}

TEST_CASE("the chain with a top is pinned at the top") {
  auto cat = make_catalog(CatalogTag::OmegaPlusOneScott, 10);
  auto arena = Arena::catalog(cat);
  auto run = play(arena, chain_walker(), qm_strategy(catalog_qm(cat)), 20, 1);
  REQUIRE(run.verdict.status == VerdictStatus::WonByRefinement);
  CHECK(run.verdict.point == 10);  // the top of the window
  CHECK(run.verdict.round <= 20);
  CHECK(nesting_ok(run.transcript));
  CHECK(closed_ball_containment_ok(arena, catalog_qm(cat), run.transcript));
}

TEST_CASE("the discrete-at-the-top window stays undecided") {
  auto cat = make_catalog(CatalogTag::OmegaPlusOneAlexandroff, 10);
  auto arena = Arena::catalog(cat);
  auto run = play(arena, chain_walker(), qm_strategy(catalog_qm(cat)), 20, 1);
  CHECK(run.verdict.status == VerdictStatus::Undecided);
}

TEST_CASE("the ascending chain without a top stays undecided at every horizon") {
  auto cat = make_catalog(CatalogTag::OmegaScott, 10);
  auto arena = Arena::catalog(cat);
  for (int horizon : {10, 50, 100}) {
    auto run = play(arena, chain_walker(), qm_strategy(catalog_qm(cat)), horizon, 1);
    CHECK(run.verdict.status == VerdictStatus::Undecided);
    auto run2 = play(arena, chain_walker(), min_nbhd_strategy(), horizon, 1);
    CHECK(run2.verdict.status == VerdictStatus::Undecided);
  }
}

TEST_CASE("ball responses stabilize at the minimal open when the point repeats") {
  auto sp = discrete_space(4);
  auto arena = Arena::finite(sp);
  auto run = play(arena, point_sticker(), qm_strategy(order_qm(sp)), 6, 9);
  REQUIRE(run.verdict.status == VerdictStatus::WonByRefinement);
  // The response is the singleton from the first repeat on.
  const auto& rounds = run.transcript.rounds;
  REQUIRE(rounds.size() >= 2);
  CHECK(rounds.back().V == bit(rounds.back().x));
}

TEST_CASE("no admissible radius surfaces as a malformed run") {
  // A distance incompatible with the arena: balls around the top always
  // swallow the bottom, so no radius fits a challenge inside {top}.
  auto s = sierpinski();
  qm::QMetric reversed;
  reversed.labels = {"bot", "top"};
  reversed.dist = {{Rat(0), Rat(1)}, {Rat(0), Rat(0)}};
  Challenger top_sticker;
  top_sticker.name = "top";
  top_sticker.move = [](const Arena&, const Transcript& t,
                        std::mt19937_64&) -> std::optional<ChallengerMove> {
    return ChallengerMove{1, t.rounds.empty() ? Mask(bit(0) | bit(1)) : Mask(bit(1))};
  };
  auto run = play(Arena::finite(s), top_sticker, qm_strategy(reversed), 4, 1);
  CHECK(run.verdict.status == VerdictStatus::MalformedRun);
  CHECK(run.verdict.reason == "NoAdmissibleRadius");
}

TEST_CASE("both shipped winners beat one hundred randomized challengers") {
  std::mt19937_64 rng(41);
  auto sp = random_t0_space(rng, 5);
  auto arena = Arena::finite(sp);
  Responder winners[2] = {qm_strategy(order_qm(sp)), min_nbhd_strategy()};
  for (auto& ii : winners)
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      auto run = play(arena, random_legal(), ii, 2 * sp.n, seed);
      CHECK(run.verdict.status == VerdictStatus::WonByRefinement);
    }
}

TEST_CASE("refinement wins on every small space against three challengers") {
  std::mt19937_64 rng(31);
  for (int n = 1; n <= 5; ++n)
    for (auto& sp : enumerate_t0_spaces(n)) {
      auto arena = Arena::finite(sp);
      auto ii = qm_strategy(order_qm(sp));
      Challenger foes[3] = {chain_walker(), random_legal(), point_sticker()};
      for (auto& foe : foes) {
        auto run = play(arena, foe, ii, 2 * sp.n, rng());
        CAPTURE(n);
        CAPTURE(foe.name);
        CHECK(run.verdict.status == VerdictStatus::WonByRefinement);
      }
    }
}

TEST_CASE("certificates via responses match certificates via challenges") {
  // The two families interleave, so a point served by the responses is
  // served by the challenges and back.
  std::mt19937_64 rng(37);
  for (int it = 0; it < 50; ++it) {
    auto sp = random_t0_space(rng, 5);
    auto arena = Arena::finite(sp);
    auto run = play(arena, random_legal(), min_nbhd_strategy(), 8, rng());
    if (run.verdict.status != VerdictStatus::WonByRefinement) continue;
    int x = run.verdict.point;
    const auto& rounds = run.transcript.rounds;
    for (Mask b : sp.basics) {
      if (b == 0 || !has(b, x)) continue;
      bool viaU = false, viaV_early = false, viaV = false;
      for (size_t i = 0; i < rounds.size(); ++i) {
        if (has(rounds[i].V, x) && subset(rounds[i].V, b)) {
          viaV = true;
          if (i + 1 < rounds.size()) viaV_early = true;
        }
        if (has(rounds[i].U, x) && subset(rounds[i].U, b)) viaU = true;
      }
      // A challenge witness yields a response witness in the same round; a
      // response witness yields a challenge witness one round later, so the
      // final round is exempt.
      if (viaU) CHECK(viaV);
      if (viaV_early) CHECK(viaU);
    }
  }
}

TEST_CASE("scattered strategy wins with the stage bookkeeping recorded") {
  auto c3 = chain_space(3);
  auto arena = Arena::finite(c3);
  auto ii = scattered_strategy(c3);
  auto run = play(arena, chain_walker(), ii, 6, 3);
  REQUIRE(run.verdict.status == VerdictStatus::WonByRefinement);
  // Stage indices weakly decrease along the run once the point changes.
  int changes = 0;
  for (size_t i = 1; i < run.transcript.rounds.size(); ++i)
    if (run.transcript.rounds[i].x != run.transcript.rounds[i - 1].x) ++changes;
  CHECK(changes <= 3);

  auto one = discrete_space(1);
  auto r1 = play(Arena::finite(one), point_sticker(), scattered_strategy(one), 2, 1);
  CHECK(r1.verdict.status == VerdictStatus::WonByRefinement);

  auto d4 = discrete_space(4);
  auto r4 = play(Arena::finite(d4), random_legal(), scattered_strategy(d4), 8, 5);
  REQUIRE(r4.verdict.status == VerdictStatus::WonByRefinement);
  for (auto& r : r4.transcript.rounds) CHECK(r.V == bit(r.x));

  // A perfect (non-T0) space has no isolated points to peel off.
  auto indiscrete = space_from_opens(2, {0, full_mask(2)});
  CHECK_THROWS_WITH_AS(scattered_strategy(indiscrete),
                       doctest::Contains("NotScattered"), qtop::error);
}

TEST_CASE("topology extension by one ambiguous set") {
  auto s = sierpinski();
  // Opening the closed point makes the space discrete.
  auto ext = extend_topology(s, bit(0));
  CHECK(homeomorphic(ext, discrete_space(2)));
}

TEST_CASE("extension strategy wins on the refined space") {
  auto s = sierpinski();
  // B = {bot}: ambiguous, complement {top} decomposes as one open step.
  Mask B = bit(0);
  std::vector<Mask> decomp{bit(1)};
  REQUIRE(borel::diff_hier_eval(1, decomp) == bit(1));
  auto ext = extend_topology(s, B);
  auto composed = delta2_extension_strategy(min_nbhd_strategy(), s, B, decomp);
  auto arena = Arena::finite(ext, "extended");
  Challenger foes[3] = {chain_walker(), random_legal(), point_sticker()};
  for (auto& foe : foes) {
    auto run = play(arena, foe, composed, 6, 11);
    CAPTURE(foe.name);
    CHECK(run.verdict.status == VerdictStatus::WonByRefinement);
  }

  // B = X: the strategy reduces to the subspace game.
  auto all = delta2_extension_strategy(min_nbhd_strategy(), s, s.full(), {});
  auto runall = play(Arena::finite(extend_topology(s, s.full())), chain_walker(), all, 4, 1);
  CHECK(runall.verdict.status == VerdictStatus::WonByRefinement);

  // Mismatched chains are rejected.
  CHECK_THROWS_WITH_AS(delta2_extension_strategy(min_nbhd_strategy(), s, B, {s.full()}),
                       doctest::Contains("DecompositionMismatch"), qtop::error);

  // Randomized runs on the 4-point powerset space with B = {{0}}.
  auto p2 = powerset_space(2);
  Mask B2 = bit(1);
  auto orac = borel::hk_decompose(p2, p2.full() & ~B2, 4);
  REQUIRE(orac.has_value());
  auto ext2 = extend_topology(p2, B2);
  auto comp2 = delta2_extension_strategy(min_nbhd_strategy(), p2, B2, orac->opens);
  std::mt19937_64 rng(13);
  for (int it = 0; it < 100; ++it) {
    auto run = play(Arena::finite(ext2), random_legal(), comp2, 10, rng());
    CHECK(run.verdict.status == VerdictStatus::WonByRefinement);
  }
}

TEST_CASE("extracted run trees") {
  auto s = sierpinski();
  auto arena = Arena::finite(s);
  auto tree = extract_representation(arena, min_nbhd_strategy(), 2);
  CHECK(prefix_tree_monotone(tree));
  CHECK(prefix_tree_image_equality(arena, min_nbhd_strategy(), tree, 4));
  // Node opens live in {X, {top}}.
  for (auto& node : tree.nodes)
    CHECK((node.open == s.full() || node.open == bit(1)));
  // Surjectivity: the full space appears and both points are reachable.
  Mask reach = 0;
  for (auto& node : tree.nodes) reach |= node.open;
  CHECK(reach == s.full());

  auto one = discrete_space(1);
  auto t1 = extract_representation(Arena::finite(one), min_nbhd_strategy(), 2);
  for (auto& node : t1.nodes) CHECK(node.open == one.full());

  auto c3 = chain_space(3);
  auto t3 = extract_representation(Arena::finite(c3), scattered_strategy(c3), 3);
  CHECK(prefix_tree_monotone(t3));
  // Every basic open shows up as a node image.
  for (Mask b : c3.basics) {
    if (b == 0) continue;
    bool found = false;
    for (auto& node : t3.nodes)
      if (node.open == b) found = true;
    CHECK(found);
  }

  // The ball-playing responder extracts too, once basis-restricted.
  std::mt19937_64 rng(51);
  for (int it = 0; it < 10; ++it) {
    auto sp = random_t0_space(rng, 4);
    auto arena2 = Arena::finite(sp);
    auto ii = qm_strategy(order_qm(sp));
    auto tq = extract_representation(arena2, ii, 3);
    CHECK(prefix_tree_monotone(tq));
    CHECK(prefix_tree_image_equality(arena2, ii, tq, 8));
  }
}

TEST_CASE("malformed challengers and responders are reported") {
  auto s = sierpinski();
  Challenger bad;
  bad.name = "bad";
  bad.move = [](const Arena&, const Transcript&, std::mt19937_64&) {
    return std::optional<ChallengerMove>({1, bit(0)});  // x outside U
  };
  auto run = play(Arena::finite(s), bad, min_nbhd_strategy(), 3, 1);
  CHECK(run.verdict.status == VerdictStatus::MalformedRun);

  Responder lazy;
  lazy.name = "illegal";
  lazy.move = [](const Arena& a, const Transcript&, int, Mask) {
    return std::optional<ResponderMove>({a.space.full(), std::nullopt, std::nullopt});
  };
  auto run2 = play(Arena::finite(s), chain_walker(), lazy, 3, 1);
  // The full space is only legal while U is full; the walk shrinks U.
  CHECK((run2.verdict.status == VerdictStatus::MalformedRun ||
         run2.verdict.status == VerdictStatus::WonByRefinement));
}
