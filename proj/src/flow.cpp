#include "splitpack/flow.hpp"

#include <limits>
#include <queue>

namespace splitpack {

FlowNetwork::FlowNetwork(std::size_t nodes) : adj_(nodes) {}

std::size_t FlowNetwork::add_arc(std::size_t from, std::size_t to, const Rational& capacity) {
  std::size_t id = arcs_.size();
  arcs_.push_back({to, capacity, capacity});
  arcs_.push_back({from, Rational(0), Rational(0)});
  adj_[from].push_back(id);
  adj_[to].push_back(id + 1);
  return id;
}

Rational FlowNetwork::max_flow(std::size_t source, std::size_t sink) {
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  Rational total;
  if (source == sink) return total;
  while (true) {
    std::vector<std::size_t> via(adj_.size(), kNone);
    std::queue<std::size_t> queue;
    queue.push(source);
    std::vector<bool> seen(adj_.size(), false);
    seen[source] = true;
    while (!queue.empty() && !seen[sink]) {
      std::size_t x = queue.front();
      queue.pop();
      for (std::size_t a : adj_[x]) {
        const Arc& arc = arcs_[a];
        if (seen[arc.to] || !arc.residual.is_positive()) continue;
        seen[arc.to] = true;
        via[arc.to] = a;
        queue.push(arc.to);
      }
    }
    if (!seen[sink]) return total;

    Rational push = arcs_[via[sink]].residual;
    for (std::size_t x = sink; x != source; x = arcs_[via[x] ^ 1].to) {
      push = min(push, arcs_[via[x]].residual);
    }
    for (std::size_t x = sink; x != source; x = arcs_[via[x] ^ 1].to) {
      arcs_[via[x]].residual -= push;
      arcs_[via[x] ^ 1].residual += push;
    }
    total += push;
  }
}

Rational FlowNetwork::flow_on(std::size_t arc) const {
  return arcs_[arc].capacity - arcs_[arc].residual;
}

}  // namespace splitpack
