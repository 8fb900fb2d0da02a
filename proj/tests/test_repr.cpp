#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qtop/game.hpp"
#include "qtop/repr.hpp"
#include "qtop/space.hpp"

using namespace qtop;
using namespace qtop::repr;
using topo::Mask;
using topo::bit;

namespace {

ReprTables tables_from_tree(const game::PrefixTree& tree) {
  ReprTables t;
  for (auto& node : tree.nodes) {
    t.seqs.push_back(node.sigma);
    t.images.push_back(node.open);
  }
  return t;
}

}  // namespace

TEST_CASE("prefix enumeration sets") {
  CHECK(delta_prefix({}) == 0);
  CHECK(delta_prefix({0, 3, 1}) == (bit(2) | bit(0)));
  CHECK(delta_prefix({1, 1, 1}) == bit(0));

  // Monotone in the prefix order.
  std::mt19937_64 rng(3);
  for (int it = 0; it < 100; ++it) {
    Seq s;
    std::uniform_int_distribution<int> len(0, 6), entry(0, 4);
    int L = len(rng);
    for (int i = 0; i < L; ++i) s.push_back(entry(rng));
    for (int cut = 0; cut <= L; ++cut) {
      Seq prefix(s.begin(), s.begin() + cut);
      CHECK(topo::subset(delta_prefix(prefix), delta_prefix(s)));
    }
  }
}

TEST_CASE("prefix functions validate monotonicity") {
  auto d = PrefixFun::delta(3, 4);
  CHECK(d.value({}) == 0);
  CHECK(d.value({2}) == bit(1));

  PrefixFun broken;
  broken.alphabet = 2;
  broken.depth = 1;
  broken.table[{}] = bit(0);
  broken.table[{0}] = 0;
  broken.table[{1}] = bit(0);
  CHECK_THROWS_WITH_AS(broken.validate(), doctest::Contains("NotMonotone"),
                       qtop::error);
}

TEST_CASE("pairing table recurs every value") {
  auto r = pairing_first_table(30);
  REQUIRE((int)r.size() == 30);
  CHECK(r[0] == 0);
  CHECK(r[1] == 1);
  CHECK(r[2] == 0);
  CHECK(r[3] == 2);
  for (int v = 0; v <= 3; ++v) {
    int count = 0;
    for (int x : r) count += (x == v);
    CHECK(count >= 3);
  }
}

TEST_CASE("translation factors through the enumeration map") {
  // The identity-style fixture: the function is the enumeration map itself.
  auto rep = check_factorization(PrefixFun::delta(4, 5), 4, 5);
  CHECK(rep.ok);
  CHECK(rep.prefixes_checked == 1024);

  // Constant empty: the translation emits nothing.
  auto f0 = PrefixFun::constant(4, 4, 0);
  auto r = pairing_first_table(32);
  Seq g = translate_prefix(f0, r, {1, 2, 3, 0}, 32);
  for (int v : g) CHECK(v == 0);
  CHECK(check_factorization(f0, 4, 4).ok);

  // Head parity, monotonically extended.
  auto fp = PrefixFun::from_rule(4, 4, [](const Seq& s) {
    return s.empty() ? Mask(0) : bit(s[0] % 2);
  });
  CHECK(check_factorization(fp, 4, 4).ok);

  CHECK_THROWS_WITH_AS(translate_prefix(f0, {0, 1}, {1, 2, 3}, 10),
                       doctest::Contains("RTableTooShort"), qtop::error);
}

TEST_CASE("filter conditions against formula evaluations") {
  std::mt19937_64 rng(7);
  auto sp = topo::random_t0_space(rng, 3);
  auto arena = game::Arena::finite(sp);
  auto tree = game::extract_representation(arena, game::min_nbhd_strategy(), 3);
  auto tables = tables_from_tree(tree);

  // Point filters pass everything.
  for (int x = 0; x < sp.n; ++x) {
    std::vector<int> F;
    for (int i = 0; i < tables.count(); ++i)
      if (topo::has(tables.images[i], x)) F.push_back(i);
    auto rep = f_conditions_check(F, tables);
    CHECK(rep.all_conditions());
    CHECK(rep.formulations_agree);
    CHECK(rep.formula1);
    CHECK(rep.formula2);
    CHECK(rep.formula3);
    CHECK(rep.formula4);
  }

  // The empty set fails the first condition in both views.
  auto rep0 = f_conditions_check({}, tables);
  CHECK_FALSE(rep0.nonempty);
  CHECK_FALSE(rep0.formula1);
  CHECK(rep0.formulations_agree);

  // Removing an inclusion successor breaks the third condition in both
  // views at the same witness.
  std::vector<int> F;
  for (int i = 0; i < tables.count(); ++i)
    if (topo::has(tables.images[i], 0)) F.push_back(i);
  // Drop the root (every image includes into it).
  std::vector<int> broken;
  for (int i : F)
    if (!tables.seqs[i].empty()) broken.push_back(i);
  if (!broken.empty()) {
    auto repb = f_conditions_check(broken, tables);
    CHECK_FALSE(repb.inclusion_upward);
    CHECK_FALSE(repb.formula3);
    CHECK(repb.formulations_agree);
  }

  // Random index sets: the two formulations always agree.
  for (int it = 0; it < 100; ++it) {
    std::vector<int> R;
    for (int i = 0; i < tables.count(); ++i)
      if (rng() & 1) R.push_back(i);
    auto rep = f_conditions_check(R, tables);
    CHECK(rep.formulations_agree);
  }
}

TEST_CASE("pruned tree walks") {
  // A two-branch table by hand: sequences over {0,1} to depth 2.
  ReprTables t;
  auto e = SeqEnum::make(2, 2);
  t.seqs = e.seqs;
  t.images.assign(t.seqs.size(), 1);  // irrelevant here

  // Everything present: all depth-2 sequences.
  std::vector<int> all;
  for (int i = 0; i < t.count(); ++i) all.push_back(i);
  auto s = pruned_tree_points(all, t, 2);
  CHECK_FALSE(s.stuck);
  CHECK(s.points.size() == 4);

  // Only the zero branch.
  std::vector<int> zeros;
  for (int i = 0; i < t.count(); ++i) {
    bool allz = true;
    for (int v : t.seqs[i]) allz = allz && (v == 0);
    if (allz) zeros.push_back(i);
  }
  auto sz = pruned_tree_points(zeros, t, 2);
  CHECK_FALSE(sz.stuck);
  REQUIRE(sz.points.size() == 1);
  CHECK(sz.points[0] == Seq{0, 0});

  // A set that dead-ends is reported with the stuck prefix.
  std::vector<int> stuck{e.index_of({}), e.index_of({1})};
  auto ss = pruned_tree_points(stuck, t, 2);
  CHECK(ss.stuck);
  CHECK(ss.stuck_prefix == Seq{1});

  // Filters from a run tree stay extendable.
  std::mt19937_64 rng(11);
  auto sp = topo::random_t0_space(rng, 4);
  auto tree = game::extract_representation(game::Arena::finite(sp),
                                           game::min_nbhd_strategy(), 3);
  auto tb = tables_from_tree(tree);
  for (int x = 0; x < sp.n; ++x) {
    std::vector<int> F;
    for (int i = 0; i < tb.count(); ++i)
      if (topo::has(tb.images[i], x)) F.push_back(i);
    auto sample = pruned_tree_points(F, tb, 3);
    CHECK_FALSE(sample.stuck);
    CHECK_FALSE(sample.points.empty());
  }

  // Deeper window: a point filter still spans a non-empty sample at depth 6.
  auto deep = game::extract_representation(game::Arena::finite(topo::sierpinski()),
                                           game::min_nbhd_strategy(), 6);
  auto tdeep = tables_from_tree(deep);
  std::vector<int> Ftop;
  for (int i = 0; i < tdeep.count(); ++i)
    if (topo::has(tdeep.images[i], 1)) Ftop.push_back(i);
  auto sample6 = pruned_tree_points(Ftop, tdeep, 6);
  CHECK_FALSE(sample6.stuck);
  CHECK_FALSE(sample6.points.empty());
}
