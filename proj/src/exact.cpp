#include "splitpack/exact.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>

#include "splitpack/flow.hpp"

namespace splitpack {

SearchBudget parse_budget(std::string_view text, SearchBudget base) {
  SearchBudget b = base;
  while (!text.empty()) {
    auto comma = text.find(',');
    std::string_view field = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (field.empty()) continue;
    auto eq = field.find('=');
    if (eq == std::string_view::npos) throw InvalidInput("budget field without '=': " + std::string(field));
    std::string_view key = field.substr(0, eq);
    std::string_view value = field.substr(eq + 1);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
      throw InvalidInput("bad budget value: " + std::string(field));
    }
    if (key == "items") {
      b.max_items = v;
    } else if (key == "bins") {
      b.max_bins = static_cast<std::int64_t>(v);
    } else if (key == "nodes") {
      b.max_nodes = v;
    } else {
      throw InvalidInput("unknown budget key: " + std::string(key));
    }
  }
  return b;
}

std::optional<Packing> feasible(const Instance& inst, const IncidenceStructure& structure) {
  const std::size_t n = inst.size();
  const std::size_t nb = structure.bins.size();
  // source, items, bins, sink
  const std::size_t source = 0, sink = 1 + n + nb;
  FlowNetwork net(n + nb + 2);
  for (ItemId i = 0; i < n; ++i) net.add_arc(source, 1 + i, inst.item_size(i));
  struct Incidence {
    ItemId item;
    std::size_t bin;
    std::size_t arc;
  };
  std::vector<Incidence> incidences;
  for (std::size_t b = 0; b < nb; ++b) {
    const auto& items = structure.bins[b];
    if (items.size() > static_cast<std::size_t>(inst.k())) return std::nullopt;
    for (ItemId i : items) {
      if (i >= n) throw InvalidInput("structure references unknown item " + std::to_string(i));
      incidences.push_back({i, b, net.add_arc(1 + i, 1 + n + b, Rational(1))});
    }
    net.add_arc(1 + n + b, sink, Rational(1));
  }
  if (net.max_flow(source, sink) != inst.total_size()) return std::nullopt;

  std::vector<Bin> bins(nb);
  for (const auto& inc : incidences) bins[inc.bin].add(inc.item, net.flow_on(inc.arc));
  Packing p(std::move(bins));
  p.prune_empty();
  return p;
}

namespace {

constexpr std::int64_t kInfinity = std::numeric_limits<std::int64_t>::max() / 4;

using Mask = std::uint32_t;

std::vector<std::size_t> bits_of(Mask m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; m != 0; ++i, m >>= 1) {
    if (m & 1u) out.push_back(i);
  }
  return out;
}

/// Best connected acyclic structure for one group of items, in local indices.
struct Component {
  std::int64_t bins = kInfinity;
  std::vector<Mask> hyperedges;
  std::vector<std::int64_t> loops;  // single-item bins per local item
};

/// Minimum single-item bins ("loops") that make a spanning hypertree
/// feasible, found by peeling from the leaves: every item draws as little as
/// it can from the bin towards the root, and a bin whose children ask for
/// more than it holds hands the largest requests a private bin.
class LoopPlanner {
 public:
  LoopPlanner(const std::vector<Rational>& sizes, const std::vector<Mask>& edges)
      : sizes_(sizes), edges_(edges) {}

  std::int64_t plan(std::vector<std::int64_t>& loops) {
    const std::size_t m = sizes_.size();
    loops.assign(m, 0);
    // Orient from vertex 0.
    std::vector<std::size_t> order{0};
    std::vector<int> parent_edge(m, -1);
    std::vector<bool> seen(m, false), edge_seen(edges_.size(), false);
    std::vector<std::vector<std::size_t>> child_edges(m);
    std::vector<std::vector<std::size_t>> edge_children(edges_.size());
    seen[0] = true;
    for (std::size_t at = 0; at < order.size(); ++at) {
      std::size_t v = order[at];
      for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (edge_seen[e] || !(edges_[e] >> v & 1u)) continue;
        edge_seen[e] = true;
        child_edges[v].push_back(e);
        for (std::size_t u : bits_of(edges_[e])) {
          if (u == v || seen[u]) continue;
          seen[u] = true;
          parent_edge[u] = static_cast<int>(e);
          edge_children[e].push_back(u);
          order.push_back(u);
        }
      }
    }

    std::vector<Rational> request(m);
    std::int64_t total = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const std::size_t v = *it;
      Rational supply;
      for (std::size_t e : child_edges[v]) supply += offer(edge_children[e], request, loops, total);
      Rational need = sizes_[v] - supply;
      if (parent_edge[v] < 0) {
        std::int64_t l = need.is_positive() ? need.ceil() : 0;
        loops[v] += l;
        total += l;
        continue;
      }
      std::int64_t l = need > Rational(1) ? (need - Rational(1)).ceil() : 0;
      loops[v] += l;
      total += l;
      request[v] = need.is_positive() ? need - Rational(l) : Rational(0);
    }
    return total;
  }

 private:
  static Rational offer(const std::vector<std::size_t>& children,
                        std::vector<Rational>& request, std::vector<std::int64_t>& loops,
                        std::int64_t& total) {
    Rational sum;
    for (std::size_t c : children) sum += request[c];
    if (sum > Rational(1)) {
      std::vector<std::size_t> by_request = children;
      std::stable_sort(by_request.begin(), by_request.end(),
                       [&](std::size_t a, std::size_t b) { return request[b] < request[a]; });
      for (std::size_t c : by_request) {
        if (sum <= Rational(1)) break;
        sum -= request[c];
        request[c] = Rational(0);
        ++loops[c];
        ++total;
      }
    }
    return Rational(1) - sum;
  }

  const std::vector<Rational>& sizes_;
  const std::vector<Mask>& edges_;
};

class ForestSearch {
 public:
  ForestSearch(const Instance& inst, const SearchOptions& options, std::int64_t cap)
      : inst_(inst), options_(options), cap_(cap), n_(inst.size()), k_(inst.k()) {}

  /// Minimum bins (or kInfinity above the cap) and the structure realizing it.
  std::int64_t solve(IncidenceStructure& out) {
    const Mask full = n_ == 0 ? 0 : static_cast<Mask>((std::uint64_t{1} << n_) - 1);
    components_.clear();
    best_.assign(std::size_t{1} << n_, -1);
    choice_.assign(std::size_t{1} << n_, 0);
    std::int64_t value = best(full);
    if (value >= kInfinity) return kInfinity;
    for (Mask mask = full; mask != 0;) {
      Mask part = choice_[mask];
      const auto& [ids, cached] = components_.at(part);
      const Component& comp = cached.comp;
      for (Mask e : comp.hyperedges) {
        std::vector<ItemId> bin;
        for (std::size_t local : bits_of(e)) bin.push_back(ids[local]);
        out.bins.push_back(std::move(bin));
      }
      for (std::size_t local = 0; local < ids.size(); ++local) {
        for (std::int64_t l = 0; l < comp.loops[local]; ++l) out.bins.push_back({ids[local]});
      }
      mask &= ~part;
    }
    return value;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  std::int64_t rest_bound(std::size_t items) const {
    return static_cast<std::int64_t>((items + static_cast<std::size_t>(k_) - 1) /
                                     static_cast<std::size_t>(k_));
  }

  std::int64_t component_bound(std::size_t items) const {
    if (items <= 1) return 1;
    return static_cast<std::int64_t>((items - 2) / static_cast<std::size_t>(k_ - 1) + 1);
  }

  // Lower bound on the bins needed by any packing of `mask`.
  std::int64_t mask_bound(Mask mask) const {
    if (mask == 0) return 0;
    Rational total;
    std::int64_t parts = 0;
    for (std::size_t i : bits_of(mask)) {
      total += inst_.item_size(i);
      parts += inst_.item_size(i).ceil();
    }
    return std::max({total.ceil(), (parts + k_ - 1) / k_,
                     rest_bound(static_cast<std::size_t>(std::popcount(mask)))});
  }

  std::int64_t best(Mask mask) {
    if (mask == 0) return 0;
    if (best_[mask] >= 0) return best_[mask];
    const std::size_t low = static_cast<std::size_t>(std::countr_zero(mask));
    const std::vector<std::size_t> others = bits_of(mask & ~(Mask{1} << low));
    std::int64_t result = kInfinity;
    Mask result_part = 0;

    // Components containing `low`, grown from combinations of the other items.
    std::vector<std::size_t> pick;
    auto visit = [&](auto&& self, std::size_t from) -> void {
      Mask part = Mask{1} << low;
      for (std::size_t i : pick) part |= Mask{1} << i;
      const std::size_t size = pick.size() + 1;
      const Mask rest_mask = mask & ~part;
      const std::int64_t limit = std::min(cap_, result - 1) - mask_bound(rest_mask);
      if (std::max(component_bound(size), mask_bound(part)) <= limit) {
        std::int64_t c = component(part, limit);
        if (c <= limit) {
          std::int64_t rest = best(rest_mask);
          if (rest < kInfinity && c + rest < result) {
            result = c + rest;
            result_part = part;
          }
        }
      }
      for (std::size_t j = from; j < others.size(); ++j) {
        pick.push_back(others[j]);
        // Only the component's own bound grows with it; the rest shrinks.
        if (component_bound(pick.size() + 1) <= cap_) self(self, j + 1);
        pick.pop_back();
      }
    };
    visit(visit, 0);

    if (result > cap_) result = kInfinity;
    best_[mask] = result;
    choice_[mask] = result_part;
    return result;
  }

  /// Cached component solution; `searched` is the cap it was solved under.
  /// A finite result is the true optimum, an infinite one only says that
  /// more than `searched` bins are needed.
  struct Cached {
    Component comp;
    std::int64_t searched = -1;
    bool settles(std::int64_t limit) const { return comp.bins < kInfinity || searched >= limit; }
  };

  std::int64_t component(Mask part, std::int64_t limit) {
    auto it = components_.find(part);
    if (it != components_.end() && it->second.second.settles(limit)) {
      return it->second.second.comp.bins;
    }
    std::vector<ItemId> ids;
    for (std::size_t i : bits_of(part)) ids.push_back(i);
    std::stable_sort(ids.begin(), ids.end(),
                     [&](ItemId a, ItemId b) { return inst_.item_size(a) < inst_.item_size(b); });
    std::vector<Rational> sizes;
    for (ItemId id : ids) sizes.push_back(inst_.item_size(id));

    Cached cached;
    if (options_.symmetry_pruning) {
      Cached& shared = by_signature_[sizes];
      if (!shared.settles(limit)) shared = {solve_component(sizes, limit), limit};
      cached = shared;
    } else {
      cached = {solve_component(sizes, limit), limit};
    }
    std::int64_t bins = cached.comp.bins;
    components_.insert_or_assign(part, std::make_pair(std::move(ids), std::move(cached)));
    return bins;
  }

  Component solve_component(const std::vector<Rational>& sizes, std::int64_t limit) {
    const std::size_t m = sizes.size();
    Component best;
    if (m == 1) {
      best.bins = sizes[0].ceil();
      best.loops = {best.bins};
      if (best.bins > limit) best.bins = kInfinity;
      return best;
    }
    Rational total;
    for (const auto& s : sizes) total += s;
    const std::int64_t floor_bound = std::max(total.ceil(), component_bound(m));
    if (floor_bound > limit) return best;

    std::vector<Mask> candidates;
    const std::size_t max_edge = std::min<std::size_t>(static_cast<std::size_t>(k_), m);
    for (Mask e = 1; e < (Mask{1} << m); ++e) {
      auto pc = static_cast<std::size_t>(std::popcount(e));
      if (pc >= 2 && pc <= max_edge) candidates.push_back(e);
    }

    std::vector<int> label(m);
    std::iota(label.begin(), label.end(), 0);
    std::vector<Mask> chosen;
    std::vector<std::int64_t> loops;
    std::int64_t best_bins = limit + 1;

    auto dfs = [&](auto&& self, std::size_t from, std::size_t merges_left) -> void {
      if (++nodes_ > options_.budget.max_nodes) {
        throw BudgetExceeded("exact search exceeded " + std::to_string(options_.budget.max_nodes) +
                             " nodes");
      }
      if (best_bins <= floor_bound) return;
      if (merges_left == 0) {
        LoopPlanner planner(sizes, chosen);
        std::int64_t bins = static_cast<std::int64_t>(chosen.size()) + planner.plan(loops);
        if (bins < best_bins) {
          best_bins = bins;
          best.hyperedges = chosen;
          best.loops = loops;
        }
        return;
      }
      const auto min_more = static_cast<std::int64_t>((merges_left + static_cast<std::size_t>(k_) - 2) /
                                                      static_cast<std::size_t>(k_ - 1));
      if (static_cast<std::int64_t>(chosen.size()) + min_more >= best_bins) return;
      // Edges are taken in increasing order so each hypertree is produced once.
      for (std::size_t c = from; c < candidates.size(); ++c) {
        const Mask e = candidates[c];
        const auto merges = static_cast<std::size_t>(std::popcount(e)) - 1;
        if (merges > merges_left) continue;
        Mask groups = 0;
        bool distinct = true;
        for (std::size_t v : bits_of(e)) {
          Mask g = Mask{1} << label[v];
          if (groups & g) {
            distinct = false;
            break;
          }
          groups |= g;
        }
        if (!distinct) continue;
        std::vector<int> saved = label;
        const int target = label[static_cast<std::size_t>(std::countr_zero(e))];
        for (auto& l : label) {
          if (groups >> l & 1u) l = target;
        }
        chosen.push_back(e);
        self(self, c + 1, merges_left - merges);
        chosen.pop_back();
        label = std::move(saved);
      }
    };
    dfs(dfs, 0, m - 1);
    if (best_bins <= limit) best.bins = best_bins;
    return best;
  }

  const Instance& inst_;
  const SearchOptions& options_;
  std::int64_t cap_;
  std::size_t n_;
  int k_;
  std::uint64_t nodes_ = 0;
  std::vector<std::int64_t> best_;
  std::vector<Mask> choice_;
  std::unordered_map<Mask, std::pair<std::vector<ItemId>, Cached>> components_;
  std::map<std::vector<Rational>, Cached> by_signature_;
};

/// Enumerates arbitrary bin multisets of a fixed size and tests each by flow.
class GeneralSearch {
 public:
  GeneralSearch(const Instance& inst, const SearchOptions& options)
      : inst_(inst), options_(options), n_(inst.size()), k_(inst.k()) {
    for (Mask e = 1; e < (Mask{1} << n_); ++e) {
      if (std::popcount(e) <= k_) candidates_.push_back(e);
    }
    for (ItemId i = 0; i < n_; ++i) min_degree_.push_back(inst.item_size(i).ceil());
  }

  std::optional<Packing> try_bins(std::int64_t bins) {
    chosen_.clear();
    degree_.assign(n_, 0);
    found_.reset();
    dfs(0, bins);
    return found_;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  bool dfs(std::size_t from, std::int64_t remaining) {
    if (++nodes_ > options_.budget.max_nodes) {
      throw BudgetExceeded("exact search exceeded " + std::to_string(options_.budget.max_nodes) +
                           " nodes");
    }
    std::int64_t deficit = 0;
    for (ItemId i = 0; i < n_; ++i) deficit += std::max<std::int64_t>(0, min_degree_[i] - degree_[i]);
    if (deficit > remaining * k_) return false;
    if (remaining == 0) {
      IncidenceStructure s;
      for (Mask e : chosen_) {
        std::vector<ItemId> bin;
        for (std::size_t i : bits_of(e)) bin.push_back(i);
        s.bins.push_back(std::move(bin));
      }
      auto p = feasible(inst_, s);
      if (p && static_cast<std::int64_t>(p->bin_count()) == static_cast<std::int64_t>(chosen_.size())) {
        found_ = std::move(p);
        return true;
      }
      return false;
    }
    const std::size_t start = options_.symmetry_pruning ? from : 0;
    for (std::size_t c = start; c < candidates_.size(); ++c) {
      const Mask e = candidates_[c];
      chosen_.push_back(e);
      for (std::size_t i : bits_of(e)) ++degree_[i];
      bool done = dfs(c, remaining - 1);
      for (std::size_t i : bits_of(e)) --degree_[i];
      chosen_.pop_back();
      if (done) return true;
    }
    return false;
  }

  const Instance& inst_;
  const SearchOptions& options_;
  std::size_t n_;
  int k_;
  std::vector<Mask> candidates_;
  std::vector<std::int64_t> min_degree_;
  std::vector<std::int64_t> degree_;
  std::vector<Mask> chosen_;
  std::optional<Packing> found_;
  std::uint64_t nodes_ = 0;
};

void check_size_budget(const Instance& inst, const SearchOptions& options) {
  if (inst.size() > options.budget.max_items || inst.size() > 20) {
    throw BudgetExceeded("instance has " + std::to_string(inst.size()) + " items; budget allows " +
                         std::to_string(options.budget.max_items));
  }
}

/// Minimum bin count up to `cap`, or nullopt when more than `cap` are needed.
std::optional<ExactResult> search_up_to(const Instance& inst, const SearchOptions& options,
                                        std::int64_t cap) {
  check_size_budget(inst, options);
  ExactResult result;
  if (inst.empty()) return result;
  const std::int64_t lb = lower_bounds(inst).best;
  if (lb > cap) return std::nullopt;

  if (options.structure == StructureClass::Forest) {
    ForestSearch search(inst, options, cap);
    IncidenceStructure structure;
    std::int64_t opt = search.solve(structure);
    result.nodes = search.nodes();
    if (opt >= kInfinity) return std::nullopt;
    auto witness = feasible(inst, structure);
    if (!witness || static_cast<std::int64_t>(witness->bin_count()) != opt) {
      throw std::logic_error("forest search produced a structure the flow cannot realize");
    }
    result.opt_bins = opt;
    result.witness = std::move(*witness);
    return result;
  }

  GeneralSearch search(inst, options);
  for (std::int64_t b = lb; b <= cap; ++b) {
    if (auto p = search.try_bins(b)) {
      result.opt_bins = b;
      result.witness = std::move(*p);
      result.nodes = search.nodes();
      return result;
    }
  }
  return std::nullopt;
}

/// Splits the largest part into a new bin until the packing has `bins` bins.
void pad_to(Packing& p, std::int64_t bins) {
  while (static_cast<std::int64_t>(p.bin_count()) < bins) {
    std::size_t best_bin = 0, best_part = 0;
    for (std::size_t b = 0; b < p.bin_count(); ++b) {
      for (std::size_t j = 0; j < p.bin(b).parts.size(); ++j) {
        if (p.bin(best_bin).parts[best_part].amount < p.bin(b).parts[j].amount) {
          best_bin = b;
          best_part = j;
        }
      }
    }
    Part& part = p.bins()[best_bin].parts[best_part];
    Rational half = part.amount / Rational(2);
    part.amount -= half;
    p.open_bin().add(part.item, half);
  }
}

}  // namespace

ExactResult exact_opt(const Instance& inst, const SearchOptions& options) {
  auto r = search_up_to(inst, options, options.budget.max_bins);
  if (!r) {
    throw BudgetExceeded("optimum exceeds the bin budget of " +
                         std::to_string(options.budget.max_bins));
  }
  return std::move(*r);
}

std::optional<Packing> feasible_in(const Instance& inst, std::int64_t bins,
                                   const SearchOptions& options) {
  if (bins < 1) throw InvalidInput("bin count must be at least 1");
  if (inst.empty()) return std::nullopt;
  const std::int64_t cap = std::min(bins, options.budget.max_bins);
  auto r = search_up_to(inst, options, cap);
  if (!r) {
    if (bins > options.budget.max_bins) {
      throw BudgetExceeded("deciding " + std::to_string(bins) + " bins exceeds the bin budget of " +
                           std::to_string(options.budget.max_bins));
    }
    return std::nullopt;
  }
  pad_to(r->witness, bins);
  return std::move(r->witness);
}

}  // namespace splitpack
