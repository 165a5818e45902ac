#include "splitpack/core.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

namespace splitpack {

Instance::Instance(int k, std::vector<Rational> sizes) : k_(k), sizes_(std::move(sizes)) {
  if (k_ < 2) throw InvalidInput("k must be at least 2, got " + std::to_string(k_));
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (!sizes_[i].is_positive()) {
      throw InvalidInput("item " + std::to_string(i) + " has non-positive size " + sizes_[i].str());
    }
  }
}

Rational Instance::total_size() const {
  Rational total;
  for (const auto& s : sizes_) total += s;
  return total;
}

Instance Instance::subset(const std::vector<ItemId>& ids) const {
  std::vector<Rational> sizes;
  sizes.reserve(ids.size());
  for (ItemId id : ids) sizes.push_back(item_size(id));
  return Instance(k_, std::move(sizes));
}

ItemClass classify(const Rational& size) {
  if (size <= Rational(1, 2)) return ItemClass::Small;
  if (size <= Rational(1)) return ItemClass::Medium;
  return ItemClass::Large;
}

std::string_view to_string(ItemClass c) {
  switch (c) {
    case ItemClass::Small: return "small";
    case ItemClass::Medium: return "medium";
    case ItemClass::Large: return "large";
  }
  return "?";
}

std::string_view to_string(BinLabel label) {
  switch (label) {
    case BinLabel::None: return "none";
    case BinLabel::S2a: return "S2a";
    case BinLabel::S2b: return "S2b";
    case BinLabel::S3: return "S3";
    case BinLabel::S4: return "S4";
    case BinLabel::S5: return "S5";
    case BinLabel::S6: return "S6";
    case BinLabel::Repacked: return "Repacked";
  }
  return "?";
}

BinLabel parse_bin_label(std::string_view text) {
  for (BinLabel l : {BinLabel::None, BinLabel::S2a, BinLabel::S2b, BinLabel::S3, BinLabel::S4,
                     BinLabel::S5, BinLabel::S6, BinLabel::Repacked}) {
    if (to_string(l) == text) return l;
  }
  throw InvalidInput("unknown bin label '" + std::string(text) + "'");
}

Rational Bin::load() const {
  Rational total;
  for (const auto& p : parts) total += p.amount;
  return total;
}

bool Bin::contains(ItemId item) const {
  return std::any_of(parts.begin(), parts.end(), [&](const Part& p) { return p.item == item; });
}

Rational Bin::amount_of(ItemId item) const {
  Rational total;
  for (const auto& p : parts) {
    if (p.item == item) total += p.amount;
  }
  return total;
}

void Bin::add(ItemId item, const Rational& amount) {
  if (!amount.is_positive()) return;
  for (auto& p : parts) {
    if (p.item == item) {
      p.amount += amount;
      return;
    }
  }
  parts.push_back({item, amount});
}

void Bin::take(ItemId item, const Rational& amount) {
  for (auto it = parts.begin(); it != parts.end(); ++it) {
    if (it->item != item) continue;
    it->amount -= amount;
    if (it->amount.is_negative()) {
      throw std::logic_error("took more of item " + std::to_string(item) + " than the bin holds");
    }
    if (it->amount.is_zero()) parts.erase(it);
    return;
  }
  if (amount.is_positive()) {
    throw std::logic_error("item " + std::to_string(item) + " is not in the bin");
  }
}

Bin& Packing::open_bin(BinLabel label) {
  bins_.push_back(Bin{{}, label});
  return bins_.back();
}

void Packing::append(const Packing& other) {
  bins_.insert(bins_.end(), other.bins_.begin(), other.bins_.end());
}

void Packing::prune_empty() {
  std::erase_if(bins_, [](const Bin& b) { return b.parts.empty(); });
}

std::size_t Packing::count(BinLabel label) const {
  return static_cast<std::size_t>(
      std::count_if(bins_.begin(), bins_.end(), [&](const Bin& b) { return b.label == label; }));
}

std::vector<std::size_t> Packing::bins_of(ItemId item) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bins_.size(); ++i) {
    if (bins_[i].contains(item)) out.push_back(i);
  }
  return out;
}

namespace {

using BinKey = std::vector<std::pair<ItemId, Rational>>;

std::vector<BinKey> canonical_bins(const Packing& p) {
  std::vector<BinKey> keys;
  for (const auto& b : p.bins()) {
    BinKey key;
    for (const auto& part : b.parts) key.emplace_back(part.item, part.amount);
    std::sort(key.begin(), key.end());
    keys.push_back(std::move(key));
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

}  // namespace

bool Packing::same_bins_as(const Packing& other) const {
  return canonical_bins(*this) == canonical_bins(other);
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::UnknownItem: return "unknown-item";
    case ViolationKind::NonPositivePart: return "non-positive-part";
    case ViolationKind::DuplicateEntry: return "duplicate-entry";
    case ViolationKind::OverCapacity: return "over-capacity";
    case ViolationKind::OverCardinality: return "over-cardinality";
    case ViolationKind::EmptyBin: return "empty-bin";
    case ViolationKind::CoverageMismatch: return "coverage";
  }
  return "?";
}

std::vector<Violation> validate_packing(const Instance& inst, const Packing& p) {
  std::vector<Violation> out;
  std::vector<Rational> covered(inst.size());
  for (std::size_t b = 0; b < p.bin_count(); ++b) {
    const Bin& bin = p.bin(b);
    const std::string where = "bin " + std::to_string(b);
    if (bin.parts.empty()) out.push_back({ViolationKind::EmptyBin, where + " is empty"});
    if (bin.parts.size() > static_cast<std::size_t>(inst.k())) {
      out.push_back({ViolationKind::OverCardinality, where + " has " +
                                                         std::to_string(bin.parts.size()) +
                                                         " > k=" + std::to_string(inst.k()) +
                                                         " parts"});
    }
    Rational load;
    std::vector<ItemId> seen;
    for (const auto& part : bin.parts) {
      load += part.amount;
      if (part.item >= inst.size()) {
        out.push_back({ViolationKind::UnknownItem,
                       where + " references unknown item " + std::to_string(part.item)});
        continue;
      }
      if (!part.amount.is_positive()) {
        out.push_back({ViolationKind::NonPositivePart, where + " holds part " + part.amount.str() +
                                                           " of item " +
                                                           std::to_string(part.item)});
      }
      if (std::find(seen.begin(), seen.end(), part.item) != seen.end()) {
        out.push_back({ViolationKind::DuplicateEntry,
                       where + " lists item " + std::to_string(part.item) + " twice"});
      }
      seen.push_back(part.item);
      covered[part.item] += part.amount;
    }
    if (load > Rational(1)) {
      out.push_back({ViolationKind::OverCapacity, where + " load " + load.str() + " exceeds 1"});
    }
  }
  for (ItemId i = 0; i < inst.size(); ++i) {
    if (covered[i] != inst.item_size(i)) {
      out.push_back({ViolationKind::CoverageMismatch, "item " + std::to_string(i) + " covered " +
                                                          covered[i].str() + " of " +
                                                          inst.item_size(i).str()});
    }
  }
  return out;
}

Rational item_weight(const Rational& size, int k) {
  if (!size.is_positive()) throw InvalidInput("item weight needs a positive size");
  return Rational(size.ceil(), k);
}

BoundsReport lower_bounds(const Instance& inst) {
  BoundsReport r;
  Rational weight;
  for (const auto& s : inst.sizes()) weight += item_weight(s, inst.k());
  r.size_bound = inst.total_size().ceil();
  r.weight_bound = weight.ceil();
  r.count_bound = Rational(static_cast<std::int64_t>(inst.size()), inst.k()).ceil();
  r.best = std::max({r.size_bound, r.weight_bound, r.count_bound});
  return r;
}

PackingGraph::PackingGraph(std::size_t node_count, std::vector<Edge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {}

std::size_t PackingGraph::degree(ItemId item) const {
  return static_cast<std::size_t>(std::count_if(edges_.begin(), edges_.end(), [&](const Edge& e) {
    return e.u == item || e.v == item;
  }));
}

std::vector<ItemId> PackingGraph::neighbors(ItemId item) const {
  std::vector<ItemId> out;
  for (const auto& e : edges_) {
    if (e.is_loop()) continue;
    if (e.u == item) out.push_back(e.v);
    if (e.v == item) out.push_back(e.u);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool PackingGraph::is_forest() const { return !find_cycle().has_value(); }

std::optional<PackingGraph::Cycle> PackingGraph::find_cycle() const {
  std::vector<std::size_t> order(edges_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return edges_[a].bin < edges_[b].bin; });

  std::vector<std::size_t> parent(node_count_);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  // Adjacency of the forest built so far: (neighbor, edge index).
  std::vector<std::vector<std::pair<ItemId, std::size_t>>> adj(node_count_);

  for (std::size_t idx : order) {
    const Edge& e = edges_[idx];
    if (e.is_loop()) continue;
    std::size_t ru = find(e.u), rv = find(e.v);
    if (ru != rv) {
      parent[ru] = rv;
      adj[e.u].emplace_back(e.v, idx);
      adj[e.v].emplace_back(e.u, idx);
      continue;
    }
    // Path v -> u in the forest closes the cycle with edge e.
    std::vector<std::pair<ItemId, std::size_t>> via(node_count_, {node_count_, 0});
    std::queue<ItemId> queue;
    queue.push(e.v);
    via[e.v] = {e.v, 0};
    while (!queue.empty()) {
      ItemId x = queue.front();
      queue.pop();
      if (x == e.u) break;
      for (auto [y, eidx] : adj[x]) {
        if (via[y].first != node_count_) continue;
        via[y] = {x, eidx};
        queue.push(y);
      }
    }
    Cycle c;
    // Walk back from u to v: u = items[0], bin e joins items[last] (=v) and u.
    ItemId x = e.u;
    while (x != e.v) {
      c.items.push_back(x);
      c.bins.push_back(edges_[via[x].second].bin);
      x = via[x].first;
    }
    c.items.push_back(e.v);
    c.bins.push_back(e.bin);
    return c;
  }
  return std::nullopt;
}

PackingGraph graph_of(const Instance& inst, const Packing& p) {
  if (inst.k() != 2) throw InvalidInput("packing graphs are defined for k = 2 only");
  std::vector<PackingGraph::Edge> edges;
  edges.reserve(p.bin_count());
  for (std::size_t b = 0; b < p.bin_count(); ++b) {
    const auto& parts = p.bin(b).parts;
    if (parts.empty() || parts.size() > 2) {
      throw InvalidInput("bin " + std::to_string(b) + " does not hold one or two items");
    }
    for (const auto& part : parts) {
      if (part.item >= inst.size()) {
        throw InvalidInput("bin " + std::to_string(b) + " references unknown item " +
                           std::to_string(part.item));
      }
    }
    if (parts.size() == 1) {
      edges.push_back({parts[0].item, parts[0].item, b, parts[0].amount, Rational(0)});
    } else {
      edges.push_back({parts[0].item, parts[1].item, b, parts[0].amount, parts[1].amount});
    }
  }
  return PackingGraph(inst.size(), std::move(edges));
}

Packing packing_of_graph(const PackingGraph& g) {
  std::size_t bin_total = 0;
  for (const auto& e : g.edges()) bin_total = std::max(bin_total, e.bin + 1);
  std::vector<Bin> bins(bin_total);
  for (const auto& e : g.edges()) {
    bins[e.bin].add(e.u, e.u_part);
    if (!e.is_loop()) bins[e.bin].add(e.v, e.v_part);
  }
  Packing p(std::move(bins));
  p.prune_empty();
  return p;
}

}  // namespace splitpack
