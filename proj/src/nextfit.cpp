#include "splitpack/nextfit.hpp"

#include <algorithm>
#include <numeric>

namespace splitpack {

NextFitPacker::NextFitPacker(Packing& out, int k, BinLabel label)
    : out_(out), k_(k), label_(label) {}

void NextFitPacker::resume_in(std::size_t bin_index) { current_ = bin_index; }

bool NextFitPacker::has_room() const {
  const Bin& bin = out_.bin(*current_);
  return bin.load() < Rational(1) && bin.parts.size() < static_cast<std::size_t>(k_);
}

void NextFitPacker::close(CloseReason why) {
  closed_.emplace_back(*current_, why);
  current_.reset();
}

void NextFitPacker::place(ItemId item, const Rational& size) {
  Rational remaining = size;
  bool first_part = true;
  while (remaining.is_positive()) {
    if (current_ && !has_room()) {
      // A bin left by the spilling item itself is full; a bin that refuses a
      // fresh item at k parts ends its block.
      const Bin& bin = out_.bin(*current_);
      bool at_limit = bin.parts.size() >= static_cast<std::size_t>(k_);
      close(first_part && at_limit ? CloseReason::CardinalityReached : CloseReason::Filled);
    }
    if (!current_) {
      out_.open_bin(label_);
      current_ = out_.bin_count() - 1;
    }
    Bin& bin = out_.bins()[*current_];
    Rational piece = min(remaining, Rational(1) - bin.load());
    bin.add(item, piece);
    remaining -= piece;
    first_part = false;
  }
}

std::string_view to_string(CloseReason r) {
  switch (r) {
    case CloseReason::Filled: return "filled";
    case CloseReason::CardinalityReached: return "cardinality";
    case CloseReason::EndOfInput: return "end";
  }
  return "?";
}

NfTrace next_fit(const Instance& inst, NextFitOrder order) {
  std::vector<ItemId> ids(inst.size());
  std::iota(ids.begin(), ids.end(), 0);
  if (order == NextFitOrder::Decreasing) {
    std::stable_sort(ids.begin(), ids.end(),
                     [&](ItemId a, ItemId b) { return inst.item_size(b) < inst.item_size(a); });
  }

  NfTrace trace;
  NextFitPacker packer(trace.bins, inst.k(), BinLabel::None);
  for (ItemId id : ids) packer.place(id, inst.item_size(id));

  const std::size_t n_bins = trace.bins.bin_count();
  trace.close_reasons.assign(n_bins, CloseReason::EndOfInput);
  for (auto [bin, why] : packer.closed()) trace.close_reasons[bin] = why;

  std::size_t start = 0;
  for (std::size_t b = 0; b < n_bins; ++b) {
    if (trace.close_reasons[b] != CloseReason::Filled) {
      trace.blocks.push_back({start, b + 1 - start});
      start = b + 1;
    }
  }
  return trace;
}

bool check_block_inequality(const Instance& inst, const NfTrace& trace) {
  if (auto violations = validate_packing(inst, trace.bins); !violations.empty()) {
    throw InvalidInput("trace does not match instance: " + violations.front().message);
  }
  std::size_t covered = 0;
  for (const auto& block : trace.blocks) {
    if (block.start_bin != covered || block.length == 0) {
      throw InvalidInput("trace blocks do not tile the bins");
    }
    covered += block.length;
  }
  if (covered != trace.bins.bin_count()) throw InvalidInput("trace blocks do not tile the bins");

  Rational weight;
  for (const auto& s : inst.sizes()) weight += item_weight(s, inst.k());
  const auto nf = static_cast<std::int64_t>(trace.bins.bin_count());
  const auto m = static_cast<std::int64_t>(trace.blocks.size());
  if (m == 0) return true;
  return weight >= Rational(nf + (m - 1) * (inst.k() - 1), inst.k());
}

nlohmann::json to_json(const NfTrace& trace) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : trace.blocks) {
    blocks.push_back({{"start_bin", b.start_bin}, {"length", b.length}});
  }
  nlohmann::json reasons = nlohmann::json::array();
  for (auto r : trace.close_reasons) reasons.push_back(std::string(to_string(r)));
  return {{"bins", trace.bins.bin_count()}, {"blocks", blocks}, {"close_reasons", reasons}};
}

}  // namespace splitpack
