#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "splitpack/core.hpp"

namespace splitpack {

/// Which items share each bin; no amounts.
struct IncidenceStructure {
  std::vector<std::vector<ItemId>> bins;
};

struct SearchBudget {
  std::size_t max_items = 8;
  std::int64_t max_bins = 10;
  std::uint64_t max_nodes = 50'000'000;
};

/// Parses "items=8,bins=10,nodes=1000000" (any subset, any order) on top of
/// `base`.
SearchBudget parse_budget(std::string_view text, SearchBudget base = {});

enum class StructureClass {
  /// Only structures whose item-bin incidence graph is a forest; for k = 2
  /// this is the forest-plus-loops packing graph.
  Forest,
  /// Every multiset of bins, each bin a set of at most k items.
  General,
};

struct SearchOptions {
  SearchBudget budget;
  StructureClass structure = StructureClass::Forest;
  /// Forest: memoize components by their sorted size signature.
  /// General: enumerate bins as a multiset rather than a sequence.
  bool symmetry_pruning = true;
};

/// The oracle refused to answer within its budget. Never a wrong answer.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExactResult {
  std::int64_t opt_bins = 0;
  Packing witness;
  std::uint64_t nodes = 0;
};

/// Realizes `structure` by exact max-flow; nullopt when the structure cannot
/// hold every item. Zero parts and empty bins are dropped from the result.
std::optional<Packing> feasible(const Instance& inst, const IncidenceStructure& structure);

/// Minimum number of bins, with a witness packing.
ExactResult exact_opt(const Instance& inst, const SearchOptions& options = {});

/// A packing with exactly `bins` bins, if one exists.
std::optional<Packing> feasible_in(const Instance& inst, std::int64_t bins,
                                   const SearchOptions& options = {});

}  // namespace splitpack
