#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "splitpack/algo75.hpp"
#include "splitpack/exact.hpp"
#include "splitpack/generators.hpp"
#include "splitpack/nextfit.hpp"

using namespace splitpack;
using testing::make;
using testing::R;

namespace {

// Up to n items; sizes stay small enough that every optimum fits the
// default bin budget.
Instance tiny(std::uint64_t seed, std::size_t n, int k) {
  if (seed % 4 == 0 && k <= 3) return gen_random(std::min<std::size_t>(n, 3), k, HeavyDist{5}, seed);
  return gen_random(n, k, UniformDist{8}, seed);
}

}  // namespace

TEST_CASE("feasible examples") {
  Instance inst = make(2, {"3/5", "3/5", "3/5"});
  auto p = feasible(inst, {{{0, 1}, {1, 2}}});
  REQUIRE(p);
  CHECK(oracle::check_packing(inst, *p).empty());
  CHECK(p->bin_count() == 2);

  CHECK_FALSE(feasible(make(2, {"5/2"}), {{{0}, {0}}}));
  auto empty = feasible(Instance(2, {}), {});
  REQUIRE(empty);
  CHECK(empty->empty());
  CHECK_THROWS_AS(feasible(make(2, {"1/2"}), {{{3}}}), InvalidInput);
}

TEST_CASE("feasible drops unused bins") {
  Instance inst = make(2, {"1/2"});
  auto p = feasible(inst, {{{0}, {0}}});
  REQUIRE(p);
  CHECK(oracle::check_packing(inst, *p).empty());
}

TEST_CASE("feasible agrees with the Hall test") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const int k = 2 + static_cast<int>(seed % 2);
    Instance inst = gen_random(1 + seed % 4, k, HeavyDist{5}, seed);
    // a random structure of up to 5 bins
    std::mt19937_64 rng(seed);
    IncidenceStructure s;
    std::vector<unsigned> masks;
    const unsigned n = static_cast<unsigned>(inst.size());
    for (std::uint64_t b = 0; b < 1 + rng() % 5; ++b) {
      std::vector<ItemId> items;
      unsigned mask = 0;
      for (unsigned i = 0; i < n && items.size() < static_cast<std::size_t>(k); ++i) {
        if (rng() % 2) {
          items.push_back(i);
          mask |= 1u << i;
        }
      }
      if (items.empty()) continue;
      s.bins.push_back(items);
      masks.push_back(mask);
    }
    auto p = feasible(inst, s);
    CHECK(p.has_value() == oracle::hall_feasible(inst.sizes(), masks));
    if (p) CHECK(oracle::check_packing(inst, *p).empty());
  }
}

TEST_CASE("exact_opt examples") {
  CHECK(exact_opt(make(2, {"5/2"})).opt_bins == 3);
  ExactResult r = exact_opt(make(2, {"3/5", "3/5", "3/5"}));
  CHECK(r.opt_bins == 2);
  CHECK(r.witness.bin_count() == 2);
  Instance fam = make(2, {"3", "1/4", "1/4", "1/4", "1/4"});
  r = exact_opt(fam);
  CHECK(r.opt_bins == 4);
  CHECK(oracle::check_packing(fam, r.witness).empty());
  CHECK(exact_opt(Instance(2, {})).opt_bins == 0);
}

TEST_CASE("budget errors") {
  SearchOptions tiny;
  tiny.budget.max_items = 3;
  CHECK_THROWS_AS(exact_opt(make(2, {"1/2", "1/2", "1/2", "1/2"}), tiny), BudgetExceeded);
  tiny = {};
  tiny.budget.max_bins = 2;
  CHECK_THROWS_AS(exact_opt(make(2, {"5/2"}), tiny), BudgetExceeded);
  tiny = {};
  tiny.budget.max_nodes = 3;
  CHECK_THROWS_AS(exact_opt(gen_random(8, 2, MixedDist{}, 11), tiny), BudgetExceeded);
}

TEST_CASE("parse_budget") {
  SearchBudget b = parse_budget("items=5,nodes=100");
  CHECK(b.max_items == 5);
  CHECK(b.max_nodes == 100);
  CHECK(b.max_bins == SearchBudget{}.max_bins);
  b = parse_budget("bins=3", b);
  CHECK(b.max_items == 5);
  CHECK(b.max_bins == 3);
  CHECK_THROWS_AS(parse_budget("items"), InvalidInput);
  CHECK_THROWS_AS(parse_budget("items=x"), InvalidInput);
  CHECK_THROWS_AS(parse_budget("depth=3"), InvalidInput);
}

TEST_CASE("feasible_in examples") {
  Instance yes = gen_from_3partition({7, 7, 6, 7, 7, 6}, 20, 4);
  auto w = feasible_in(yes, 2);
  REQUIRE(w);
  CHECK(oracle::check_packing(yes, *w).empty());
  CHECK_FALSE(feasible_in(yes, 1));

  Instance halves = make(2, {"1/2", "1/2"});
  w = feasible_in(halves, 1);
  REQUIRE(w);
  CHECK(w->bin_count() == 1);
  CHECK_THROWS_AS(feasible_in(halves, 0), InvalidInput);
}

TEST_CASE("optimum matches the Hall oracle") {
  for (std::uint64_t seed = 0; seed < 800; ++seed) {
    const int k = 2 + static_cast<int>(seed % 2);
    Instance inst = tiny(seed, 1 + seed % 5, k);
    ExactResult r = exact_opt(inst);
    CHECK(r.opt_bins == oracle::opt_bins(inst.sizes(), k));
    CHECK(oracle::check_packing(inst, r.witness).empty());
    CHECK(static_cast<std::int64_t>(r.witness.bin_count()) == r.opt_bins);
  }
}

TEST_CASE("feasible_in holds exactly from the optimum up") {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const int k = 2 + static_cast<int>(seed % 2);
    Instance inst = tiny(seed, 1 + seed % 5, k);
    const std::int64_t opt = exact_opt(inst).opt_bins;
    for (std::int64_t b = 1; b <= opt + 2; ++b) {
      auto w = feasible_in(inst, b);
      CHECK(w.has_value() == (b >= opt));
      if (w) {
        CHECK(oracle::check_packing(inst, *w).empty());
        CHECK(static_cast<std::int64_t>(w->bin_count()) == b);
      }
    }
  }
}

TEST_CASE("forest search agrees with unrestricted search") {
  SearchOptions general;
  general.structure = StructureClass::General;
  for (std::uint64_t seed = 0; seed < 800; ++seed) {
    const int k = 2 + static_cast<int>(seed % 3);
    Instance inst = tiny(seed, 1 + seed % 5, k);
    CHECK(exact_opt(inst).opt_bins == exact_opt(inst, general).opt_bins);
  }
}

TEST_CASE("symmetry pruning never changes the optimum") {
  for (auto structure : {StructureClass::Forest, StructureClass::General}) {
    SearchOptions on, off;
    on.structure = off.structure = structure;
    off.symmetry_pruning = false;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
      const int k = 2 + static_cast<int>(seed % 2);
      Instance inst = tiny(seed, 1 + seed % 4, k);
      CHECK(exact_opt(inst, on).opt_bins == exact_opt(inst, off).opt_bins);
    }
  }
}

TEST_CASE("optimum is below every heuristic and above every bound") {
  SearchOptions wide;
  wide.budget.max_bins = 24;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const int k = 2 + static_cast<int>(seed % 2);
    Instance inst = gen_random(1 + seed % 6, k, MixedDist{2, 2, 1, 10}, seed);
    const std::int64_t opt = exact_opt(inst, wide).opt_bins;
    CHECK(lower_bounds(inst).best <= opt);
    CHECK(opt <= static_cast<std::int64_t>(next_fit(inst).bins.bin_count()));
    if (k == 2) CHECK(opt <= static_cast<std::int64_t>(pack_75(inst).packing.bin_count()));
  }
}
