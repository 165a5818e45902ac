#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "splitpack/core.hpp"
#include "splitpack/generators.hpp"

using namespace splitpack;
using testing::make;
using testing::pack;
using testing::R;

namespace {

bool has_kind(const std::vector<Violation>& v, ViolationKind kind) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.kind == kind; });
}

}  // namespace

TEST_CASE("instance invariants") {
  CHECK_THROWS_AS(Instance(1, {Rational(1, 2)}), InvalidInput);
  CHECK_THROWS_AS(make(2, {"1/2", "0"}), InvalidInput);
  CHECK_THROWS_AS(make(2, {"-1/3"}), InvalidInput);
  Instance inst = make(3, {"1/2", "5/2", "1/3"});
  CHECK(inst.size() == 3);
  CHECK(inst.total_size() == R("10/3"));
  Instance sub = inst.subset({2, 0});
  CHECK(sub.k() == 3);
  CHECK(sub.item_size(0) == R("1/3"));
  CHECK(sub.item_size(1) == R("1/2"));
}

TEST_CASE("classify boundaries") {
  CHECK(classify(R("1/2")) == ItemClass::Small);
  CHECK(classify(R("1/100")) == ItemClass::Small);
  CHECK(classify(R("51/100")) == ItemClass::Medium);
  CHECK(classify(R("1")) == ItemClass::Medium);
  CHECK(classify(R("101/100")) == ItemClass::Large);
}

TEST_CASE("bin add merges and take drops") {
  Bin b;
  b.add(0, R("1/4"));
  b.add(0, R("1/4"));
  b.add(1, R("0"));
  REQUIRE(b.parts.size() == 1);
  CHECK(b.amount_of(0) == R("1/2"));
  b.take(0, R("1/2"));
  CHECK(b.parts.empty());
  CHECK(b.amount_of(3) == Rational(0));
}

TEST_CASE("labels round trip") {
  for (auto l : {BinLabel::None, BinLabel::S2a, BinLabel::S2b, BinLabel::S3, BinLabel::S4,
                 BinLabel::S5, BinLabel::S6, BinLabel::Repacked}) {
    CHECK(parse_bin_label(to_string(l)) == l);
  }
  CHECK_THROWS_AS(parse_bin_label("S9"), InvalidInput);
}

TEST_CASE("validate_packing examples") {
  Instance one = make(2, {"3/4"});
  CHECK(validate_packing(one, pack({{{0, "3/4"}}})).empty());

  auto v = validate_packing(one, pack({{{0, "1/2"}}}));
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::CoverageMismatch);
  CHECK(v[0].message == "item 0 covered 1/2 of 3/4");

  Instance thirds = make(2, {"1/3", "1/3", "1/3"});
  v = validate_packing(thirds, pack({{{0, "1/3"}, {1, "1/3"}, {2, "1/3"}}}));
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::OverCardinality);
  CHECK(v[0].message == "bin 0 has 3 > k=2 parts");
}

TEST_CASE("validate_packing reports every kind") {
  Instance inst = make(2, {"1/2", "1/2"});
  CHECK(has_kind(validate_packing(inst, pack({{{0, "1/2"}, {5, "1/2"}}, {{1, "1/2"}}})),
                 ViolationKind::UnknownItem));
  CHECK(has_kind(validate_packing(inst, pack({{{0, "1/2"}, {1, "0"}}, {{1, "1/2"}}})),
                 ViolationKind::NonPositivePart));
  CHECK(has_kind(validate_packing(inst, pack({{{0, "1/4"}, {0, "1/4"}}, {{1, "1/2"}}})),
                 ViolationKind::DuplicateEntry));
  CHECK(has_kind(validate_packing(make(2, {"3/4", "1/2"}), pack({{{0, "3/4"}, {1, "1/2"}}})),
                 ViolationKind::OverCapacity));
  Packing with_empty = pack({{{0, "1/2"}, {1, "1/2"}}});
  with_empty.open_bin();
  CHECK(has_kind(validate_packing(inst, with_empty), ViolationKind::EmptyBin));
  CHECK(has_kind(validate_packing(inst, pack({{{0, "1/2"}}})), ViolationKind::CoverageMismatch));
}

TEST_CASE("item_weight examples") {
  CHECK(item_weight(R("3/10"), 2) == R("1/2"));
  CHECK(item_weight(R("5/2"), 2) == R("3/2"));
  CHECK(item_weight(R("2"), 3) == R("2/3"));
  CHECK_THROWS_AS(item_weight(Rational(0), 2), InvalidInput);
}

TEST_CASE("item_weight monotone in size, 1/k in k") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> num(1, 60), den(1, 12);
  for (int t = 0; t < 500; ++t) {
    Rational a(num(rng), den(rng)), b(num(rng), den(rng));
    if (b < a) std::swap(a, b);
    for (int k = 2; k <= 5; ++k) {
      CHECK(item_weight(a, k) <= item_weight(b, k));
      CHECK(item_weight(a, k) * Rational(k) == item_weight(a, 2) * Rational(2));
    }
  }
}

TEST_CASE("lower_bounds examples") {
  BoundsReport r = lower_bounds(make(2, {"3", "1/4", "1/4", "1/4", "1/4"}));
  CHECK(r.size_bound == 4);
  CHECK(r.weight_bound == 4);
  CHECK(r.count_bound == 3);
  CHECK(r.best == 4);

  r = lower_bounds(make(2, {"1/2"}));
  CHECK(r.size_bound == 1);
  CHECK(r.weight_bound == 1);
  CHECK(r.count_bound == 1);
  CHECK(r.best == 1);

  r = lower_bounds(make(3, {"2", "1/6", "1/6", "1/6", "1/6", "1/6", "1/6"}));
  CHECK(r.size_bound == 3);
  CHECK(r.weight_bound == 3);
  CHECK(r.count_bound == 3);
  CHECK(r.best == 3);
}

TEST_CASE("lower bounds never exceed the oracle optimum") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const int k = 2 + static_cast<int>(seed % 2);
    Instance inst = gen_random(1 + seed % 4, k, HeavyDist{6}, seed);
    CHECK(lower_bounds(inst).best <= oracle::opt_bins(inst.sizes(), k));
  }
}

TEST_CASE("graph_of examples") {
  Instance inst = make(2, {"1/2", "1/2", "1/2"});
  PackingGraph g = graph_of(inst, pack({{{0, "1/2"}, {1, "1/2"}}, {{2, "1/2"}}}));
  REQUIRE(g.edge_count() == 2);
  CHECK(g.edges()[0].u + g.edges()[0].v == 1);
  CHECK(!g.edges()[0].is_loop());
  CHECK(g.edges()[1].is_loop());
  CHECK(g.edges()[1].u == 2);

  // chain 0 - 1 - 2 in two bins
  Instance chain = make(2, {"3/5", "3/5", "3/5"});
  Packing p = pack({{{0, "3/5"}, {1, "2/5"}}, {{1, "1/5"}, {2, "3/5"}}});
  g = graph_of(chain, p);
  REQUIRE(g.edge_count() == 2);
  CHECK(g.degree(1) == 2);
  CHECK(g.degree(0) == 1);
  CHECK(g.neighbors(1) == std::vector<ItemId>{0, 2});
  CHECK(g.is_forest());
  CHECK(packing_of_graph(g).same_bins_as(p));

  CHECK_THROWS_AS(graph_of(make(3, {"1/2"}), pack({{{0, "1/2"}}})), InvalidInput);
}

TEST_CASE("find_cycle on parallel edges and triangles") {
  Instance two = make(2, {"1", "1"});
  PackingGraph g = graph_of(two, pack({{{0, "1/2"}, {1, "1/2"}}, {{0, "1/2"}, {1, "1/2"}}}));
  auto c = g.find_cycle();
  REQUIRE(c);
  CHECK(c->items.size() == 2);

  Instance tri = make(2, {"2/3", "2/3", "2/3"});
  g = graph_of(tri, pack({{{0, "1/3"}, {1, "1/3"}}, {{1, "1/3"}, {2, "1/3"}}, {{2, "1/3"}, {0, "1/3"}}}));
  c = g.find_cycle();
  REQUIRE(c);
  CHECK(c->bins.size() == 3);
  std::vector<std::size_t> bins = c->bins;
  std::sort(bins.begin(), bins.end());
  CHECK(bins == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("graph edges match bins, degree matches bins_of") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    PackedInstance pi = gen_random_packing(6, 2 + seed % 6, 5, seed);
    REQUIRE(oracle::check_packing(pi.instance, pi.packing).empty());
    PackingGraph g = graph_of(pi.instance, pi.packing);
    CHECK(g.edge_count() == pi.packing.bin_count());
    for (ItemId i = 0; i < pi.instance.size(); ++i) {
      CHECK(g.degree(i) == pi.packing.bins_of(i).size());
    }
    CHECK(packing_of_graph(g).same_bins_as(pi.packing));
    CHECK(g.is_forest() == oracle::normal_form(pi.instance, pi.packing).acyclic);
  }
}
