#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "splitpack/rational.hpp"

namespace splitpack {

using ItemId = std::size_t;

/// Thrown when an instance or packing is structurally unusable for the
/// requested operation (bad k, unknown ids, wrong algorithm preconditions).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A splittable bin packing instance: unit bins, at most k parts per bin.
/// Item i has id i; sizes are positive and may exceed one.
class Instance {
 public:
  Instance(int k, std::vector<Rational> sizes);

  int k() const { return k_; }
  std::size_t size() const { return sizes_.size(); }
  bool empty() const { return sizes_.empty(); }
  const Rational& item_size(ItemId id) const { return sizes_.at(id); }
  const std::vector<Rational>& sizes() const { return sizes_; }
  Rational total_size() const;

  /// Instance restricted to `ids`; item j of the result is ids[j].
  Instance subset(const std::vector<ItemId>& ids) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  int k_;
  std::vector<Rational> sizes_;
};

enum class ItemClass { Small, Medium, Large };

/// Small: size <= 1/2. Medium: 1/2 < size <= 1. Large: size > 1.
ItemClass classify(const Rational& size);
std::string_view to_string(ItemClass c);

/// Which step of the 7/5 algorithm produced a bin. Packings made by other
/// algorithms carry `None`.
enum class BinLabel { None, S2a, S2b, S3, S4, S5, S6, Repacked };

std::string_view to_string(BinLabel label);
BinLabel parse_bin_label(std::string_view text);

struct Part {
  ItemId item;
  Rational amount;

  friend bool operator==(const Part&, const Part&) = default;
};

struct Bin {
  std::vector<Part> parts;
  BinLabel label = BinLabel::None;

  Rational load() const;
  bool contains(ItemId item) const;
  /// Amount of `item` in this bin (zero when absent).
  Rational amount_of(ItemId item) const;

  /// Adds `amount` of `item`, merging with an existing entry of the same
  /// item. Non-positive amounts are ignored.
  void add(ItemId item, const Rational& amount);
  /// Removes `amount` of `item`; the entry is dropped when it reaches zero.
  void take(ItemId item, const Rational& amount);

  friend bool operator==(const Bin&, const Bin&) = default;
};

/// A list of bins, each a list of (item, part) entries.
class Packing {
 public:
  Packing() = default;
  explicit Packing(std::vector<Bin> bins) : bins_(std::move(bins)) {}

  std::size_t bin_count() const { return bins_.size(); }
  bool empty() const { return bins_.empty(); }
  const std::vector<Bin>& bins() const { return bins_; }
  std::vector<Bin>& bins() { return bins_; }
  const Bin& bin(std::size_t i) const { return bins_.at(i); }

  Bin& open_bin(BinLabel label = BinLabel::None);
  void append(Bin bin) { bins_.push_back(std::move(bin)); }
  void append(const Packing& other);

  /// Drops empty bins.
  void prune_empty();
  /// Number of bins carrying `label`.
  std::size_t count(BinLabel label) const;
  /// Indices of bins holding a part of `item`.
  std::vector<std::size_t> bins_of(ItemId item) const;

  /// Order-insensitive comparison: bins compared as sorted multisets of
  /// sorted part lists (labels ignored).
  bool same_bins_as(const Packing& other) const;

  friend bool operator==(const Packing&, const Packing&) = default;

 private:
  std::vector<Bin> bins_;
};

enum class ViolationKind {
  UnknownItem,
  NonPositivePart,
  DuplicateEntry,
  OverCapacity,
  OverCardinality,
  EmptyBin,
  CoverageMismatch,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

std::string_view to_string(ViolationKind kind);

/// Returns every violated feasibility condition; empty means `p` is a valid
/// packing of `inst`.
std::vector<Violation> validate_packing(const Instance& inst, const Packing& p);
inline bool is_valid_packing(const Instance& inst, const Packing& p) {
  return validate_packing(inst, p).empty();
}

/// ceil(size) / k: any packing splits the item into at least ceil(size) parts.
Rational item_weight(const Rational& size, int k);

struct BoundsReport {
  std::int64_t size_bound = 0;    // ceil(sum of sizes)
  std::int64_t weight_bound = 0;  // ceil(sum of ceil(size)/k)
  std::int64_t count_bound = 0;   // ceil(n/k)
  std::int64_t best = 0;
};

BoundsReport lower_bounds(const Instance& inst);

/// Multigraph view of a k = 2 packing: one edge per bin, a loop for a
/// single-item bin.
class PackingGraph {
 public:
  struct Edge {
    ItemId u;
    ItemId v;  // equal to u for a loop
    std::size_t bin;
    Rational u_part;
    Rational v_part;  // zero for a loop
    bool is_loop() const { return u == v; }
  };

  PackingGraph(std::size_t node_count, std::vector<Edge> edges);

  std::size_t node_count() const { return node_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Number of edges incident to `item`, each loop counted once. Equals the
  /// number of bins holding a part of the item.
  std::size_t degree(ItemId item) const;
  /// Distinct items sharing a bin with `item`.
  std::vector<ItemId> neighbors(ItemId item) const;
  /// True when the non-loop edges form a forest (parallel edges count as a
  /// cycle).
  bool is_forest() const;
  /// A cycle: bins[j] joins items[j] and items[(j + 1) % size].
  struct Cycle {
    std::vector<ItemId> items;
    std::vector<std::size_t> bins;
  };
  /// The cycle closed by the lowest-indexed bin when edges are added in bin
  /// order; nullopt for a forest.
  std::optional<Cycle> find_cycle() const;

 private:
  std::size_t node_count_;
  std::vector<Edge> edges_;
};

/// Requires k = 2 and a packing whose bins hold one or two items.
PackingGraph graph_of(const Instance& inst, const Packing& p);

/// Inverse of graph_of, up to bin order and labels.
Packing packing_of_graph(const PackingGraph& g);

}  // namespace splitpack
