#pragma once

#include <cstddef>
#include <vector>

#include "splitpack/rational.hpp"

namespace splitpack {

/// Max-flow over exact rational capacities with shortest augmenting paths
/// (Edmonds-Karp), so the number of augmentations is bounded by the graph
/// shape rather than by capacity magnitudes.
class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t nodes);

  /// Adds a directed arc and returns its handle for flow_on().
  std::size_t add_arc(std::size_t from, std::size_t to, const Rational& capacity);
  Rational max_flow(std::size_t source, std::size_t sink);
  Rational flow_on(std::size_t arc) const;

  std::size_t node_count() const { return adj_.size(); }

 private:
  struct Arc {
    std::size_t to;
    Rational residual;
    Rational capacity;
  };

  std::vector<Arc> arcs_;  // arc 2i is forward, 2i+1 its reverse
  std::vector<std::vector<std::size_t>> adj_;
};

}  // namespace splitpack
