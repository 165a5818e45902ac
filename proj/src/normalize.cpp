#include "splitpack/normalize.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace splitpack {

namespace {

const Rational kOne(1);
const Rational kHalf(1, 2);

void require_k2_valid(const Instance& inst, const Packing& p) {
  if (inst.k() != 2) throw InvalidInput("normalization is defined for k = 2 only");
  auto v = validate_packing(inst, p);
  if (!v.empty()) throw InvalidInput("packing is not valid: " + v.front().message);
}

void require_acyclic(const Instance& inst, const Packing& p) {
  if (!graph_of(inst, p).is_forest()) throw InvalidInput("packing graph has a cycle");
}

bool is_small(const Instance& inst, ItemId id) { return inst.item_size(id) <= kHalf; }

/// The item other than `x` in a bin, if any.
std::optional<ItemId> partner(const Bin& bin, ItemId x) {
  for (const Part& part : bin.parts) {
    if (part.item != x) return part.item;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- cycles

/// Repacks the cycle without bin `drop`: the remaining bins form a path and
/// every item keeps its total amount over the cycle bins. Items draw as much
/// as possible from the earlier bin of the path.
bool try_drop(Packing& p, const PackingGraph::Cycle& c, std::size_t drop) {
  const std::size_t len = c.items.size();
  std::vector<Rational> demand(len);
  for (std::size_t j = 0; j < len; ++j) {
    const ItemId x = c.items[j];
    demand[j] = p.bin(c.bins[j]).amount_of(x) + p.bin(c.bins[(j + len - 1) % len]).amount_of(x);
  }
  // Path items y_t = items[drop + 1 + t], path bins c_t = bins[drop + 1 + t].
  auto item_at = [&](std::size_t t) { return (drop + 1 + t) % len; };
  std::vector<Bin> path(len - 1);
  Rational room = kOne;
  for (std::size_t t = 0; t < len; ++t) {
    const std::size_t j = item_at(t);
    const ItemId y = c.items[j];
    Rational d = demand[j];
    if (t > 0) {
      Rational here = t + 1 == len ? d : min(d, room);
      if (room < here) return false;
      path[t - 1].add(y, here);
      d -= here;
    }
    if (t + 1 < len) {
      if (kOne < d) return false;
      path[t].add(y, d);
      room = kOne - d;
    } else if (d.is_positive()) {
      return false;
    }
  }

  std::vector<Bin> out;
  for (std::size_t b = 0; b < p.bin_count(); ++b) {
    auto pos = std::find(c.bins.begin(), c.bins.end(), b);
    if (pos == c.bins.end()) {
      out.push_back(p.bin(b));
      continue;
    }
    const auto j = static_cast<std::size_t>(pos - c.bins.begin());
    if (j == drop) continue;
    const std::size_t t = (j + len - drop - 1) % len;
    Bin bin = std::move(path[t]);
    bin.label = p.bin(b).label;
    if (!bin.parts.empty()) out.push_back(std::move(bin));
  }
  p = Packing(std::move(out));
  return true;
}

/// Moves mass around the cycle so that, in each cycle bin, items[j] loses
/// delta to items[j + 1]; delta is the smallest losing part, so that bin
/// becomes a loop.
void rotate(Packing& p, const PackingGraph::Cycle& c) {
  const std::size_t len = c.items.size();
  Rational delta = p.bin(c.bins[0]).amount_of(c.items[0]);
  for (std::size_t j = 1; j < len; ++j) delta = min(delta, p.bin(c.bins[j]).amount_of(c.items[j]));
  for (std::size_t j = 0; j < len; ++j) {
    Bin& bin = p.bins()[c.bins[j]];
    bin.take(c.items[j], delta);
    bin.add(c.items[(j + 1) % len], delta);
  }
}

// ---------------------------------------------------------------- leaves

/// One detaching step for small item `s`. Returns false when `s` is a leaf.
bool detach_small(const Instance& inst, Packing& p, ItemId s) {
  std::vector<std::size_t> bins = p.bins_of(s);
  if (bins.size() <= 1) return false;

  // Two small items sharing a bin: both move entirely into that bin.
  for (std::size_t b : bins) {
    auto t = partner(p.bin(b), s);
    if (!t || !is_small(inst, *t)) continue;
    for (ItemId x : {s, *t}) {
      for (std::size_t other : p.bins_of(x)) {
        if (other == b) continue;
        Rational a = p.bin(other).amount_of(x);
        p.bins()[other].take(x, a);
        p.bins()[b].add(x, a);
      }
    }
    p.prune_empty();
    return true;
  }

  // Bin 1 is a loop when there is one, so bin 2 always has a partner.
  std::vector<std::size_t> loops, shared;
  for (std::size_t b : bins) (partner(p.bin(b), s) ? shared : loops).push_back(b);
  if (shared.empty()) {
    // Only loops: fold the second into the first.
    Rational a = p.bin(loops[1]).amount_of(s);
    p.bins()[loops[1]].take(s, a);
    p.bins()[loops[0]].add(s, a);
    p.prune_empty();
    return true;
  }
  const std::size_t b1 = loops.empty() ? shared[0] : loops[0];
  const std::size_t b2 = loops.empty() ? shared[1] : shared[0];
  const Rational s1 = p.bin(b1).amount_of(s);
  const ItemId y2 = *partner(p.bin(b2), s);
  const Rational w2 = p.bin(b2).amount_of(y2);

  if (s1 <= w2) {
    // Cut an s1 slice off w2 into bin 1 and move s1 into bin 2.
    p.bins()[b2].take(y2, s1);
    p.bins()[b1].add(y2, s1);
    p.bins()[b1].take(s, s1);
    p.bins()[b2].add(s, s1);
  } else if (!loops.empty()) {
    // w2 < s1 and bin 1 holds only s: the rest of s joins bin 1.
    Rational s2 = p.bin(b2).amount_of(s);
    p.bins()[b2].take(s, s2);
    p.bins()[b1].add(s, s2);
  } else {
    p.bins()[b1].take(s, s1);
    p.bins()[b2].add(s, s1);
  }
  return true;
}

// ---------------------------------------------------------------- degrees

struct Rooted {
  std::vector<ItemId> order;                      // breadth first, roots by id
  std::vector<std::optional<std::size_t>> up;     // bin towards the root
};

Rooted root_forest(const Packing& p, std::size_t n) {
  std::vector<std::vector<std::pair<ItemId, std::size_t>>> adj(n);
  for (std::size_t b = 0; b < p.bin_count(); ++b) {
    const auto& parts = p.bin(b).parts;
    if (parts.size() != 2) continue;
    adj[parts[0].item].emplace_back(parts[1].item, b);
    adj[parts[1].item].emplace_back(parts[0].item, b);
  }
  Rooted r;
  r.up.assign(n, std::nullopt);
  std::vector<bool> seen(n, false);
  for (ItemId root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::size_t head = r.order.size();
    r.order.push_back(root);
    while (head < r.order.size()) {
      ItemId x = r.order[head++];
      for (auto [y, b] : adj[x]) {
        if (seen[y]) continue;
        seen[y] = true;
        r.up[y] = b;
        r.order.push_back(y);
      }
    }
  }
  return r;
}

/// Merges the two smallest down-level parts of `x` into one bin.
void merge_two_parts(const Instance& inst, Packing& p, ItemId x, std::optional<std::size_t> up) {
  std::vector<std::size_t> down;
  for (std::size_t b : p.bins_of(x)) {
    if (b != up) down.push_back(b);
  }
  std::stable_sort(down.begin(), down.end(), [&](std::size_t a, std::size_t b) {
    return p.bin(a).amount_of(x) < p.bin(b).amount_of(x);
  });
  std::size_t a = down[0], b = down[1];
  const Rational m1 = p.bin(a).amount_of(x);
  const Rational m2 = p.bin(b).amount_of(x);
  auto y1 = partner(p.bin(a), x);
  auto y2 = partner(p.bin(b), x);

  if (!y1 || !y2) {
    // A loop of x takes the other part.
    std::size_t keep = !y1 ? a : b, give = !y1 ? b : a;
    Rational m = p.bin(give).amount_of(x);
    p.bins()[give].take(x, m);
    p.bins()[keep].add(x, m);
    p.prune_empty();
    return;
  }
  if (is_small(inst, *y1) && is_small(inst, *y2)) {
    // Both neighbours are small: they share one bin, x takes the other.
    p.bins()[b].take(x, m2);
    p.bins()[a].add(x, m2);
    Rational w1 = p.bin(a).amount_of(*y1);
    p.bins()[a].take(*y1, w1);
    p.bins()[b].add(*y1, w1);
    return;
  }
  // The receiving bin is one whose neighbour is not small; that neighbour is
  // cut and the slice moves to the vacated bin.
  std::size_t recv = a, vac = b;
  ItemId y = *y1;
  if (is_small(inst, *y1)) {
    recv = b;
    vac = a;
    y = *y2;
  }
  const Rational moving = p.bin(vac).amount_of(x);
  const Rational w = p.bin(recv).amount_of(y);
  const Rational slice = max(Rational(0), m1 + m2 + w - kOne);
  p.bins()[vac].take(x, moving);
  p.bins()[recv].add(x, moving);
  p.bins()[recv].take(y, slice);
  p.bins()[vac].add(y, slice);
}

}  // namespace

std::int64_t item_type(const Rational& size) { return (size * Rational(2)).ceil(); }

Packing remove_cycles(const Instance& inst, const Packing& p) {
  require_k2_valid(inst, p);
  Packing out = p;
  while (auto cycle = graph_of(inst, out).find_cycle()) {
    std::vector<std::size_t> order(cycle->bins.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return out.bin(cycle->bins[a]).load() < out.bin(cycle->bins[b]).load();
    });
    bool dropped = false;
    for (std::size_t j : order) {
      if (try_drop(out, *cycle, j)) {
        dropped = true;
        break;
      }
    }
    if (!dropped) rotate(out, *cycle);
  }
  return out;
}

Packing smalls_to_leaves(const Instance& inst, const Packing& p) {
  require_k2_valid(inst, p);
  require_acyclic(inst, p);
  Packing out = p;
  for (ItemId s = 0; s < inst.size(); ++s) {
    if (!is_small(inst, s)) continue;
    while (detach_small(inst, out, s)) {
    }
  }
  return out;
}

Packing bound_degrees(const Instance& inst, const Packing& p) {
  require_k2_valid(inst, p);
  require_acyclic(inst, p);
  Packing out = p;
  const std::size_t n = inst.size();
  std::size_t budget = 4 * (n + p.bin_count() + 1) * (n + p.bin_count() + 1);
  while (true) {
    Rooted r = root_forest(out, n);
    std::optional<ItemId> over;
    for (ItemId x : r.order) {
      std::int64_t type = item_type(inst.item_size(x));
      if (type >= 2 && static_cast<std::int64_t>(out.bins_of(x).size()) > type) {
        over = x;
        break;
      }
    }
    if (!over) return out;
    if (budget-- == 0) throw std::logic_error("bound_degrees did not converge");
    merge_two_parts(inst, out, *over, r.up[*over]);
  }
}

Packing normalize(const Instance& inst, const Packing& p) {
  return bound_degrees(inst, smalls_to_leaves(inst, remove_cycles(inst, p)));
}

NormalFormCheck check_normal_form(const Instance& inst, const Packing& p) {
  NormalFormCheck c;
  PackingGraph g = graph_of(inst, p);
  if (auto cycle = g.find_cycle()) {
    c.acyclic = false;
    c.problems.push_back("cycle through " + std::to_string(cycle->items.size()) + " items");
  }
  for (ItemId x = 0; x < inst.size(); ++x) {
    const std::size_t d = g.degree(x);
    const std::int64_t type = item_type(inst.item_size(x));
    if (type == 1 && d > 1) {
      c.smalls_are_leaves = false;
      c.problems.push_back("small item " + std::to_string(x) + " is in " + std::to_string(d) + " bins");
    } else if (type >= 2 && static_cast<std::int64_t>(d) > type) {
      c.degrees_bounded = false;
      c.problems.push_back("item " + std::to_string(x) + " of type " + std::to_string(type) +
                           " is in " + std::to_string(d) + " bins");
    }
  }
  return c;
}

}  // namespace splitpack
