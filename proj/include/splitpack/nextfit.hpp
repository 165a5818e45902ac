#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "splitpack/core.hpp"

namespace splitpack {

/// Online NEXT FIT for splittable items with at most k parts per bin.
///
/// Writes into a caller-owned packing so multi-phase algorithms can run
/// several NEXT FIT passes, or resume in a bin that is already open.
class NextFitPacker {
 public:
  enum class CloseReason { Filled, CardinalityReached, EndOfInput };

  NextFitPacker(Packing& out, int k, BinLabel label);

  /// Continue in an existing bin of `out` instead of opening a fresh one.
  void resume_in(std::size_t bin_index);
  /// Places the whole item, spilling into as many new bins as needed.
  void place(ItemId item, const Rational& size);

  std::optional<std::size_t> current_bin() const { return current_; }
  /// Close reason of every bin this packer closed, keyed by bin index.
  const std::vector<std::pair<std::size_t, CloseReason>>& closed() const { return closed_; }

 private:
  bool has_room() const;
  void close(CloseReason why);

  Packing& out_;
  int k_;
  BinLabel label_;
  std::optional<std::size_t> current_;
  std::vector<std::pair<std::size_t, CloseReason>> closed_;
};

using CloseReason = NextFitPacker::CloseReason;
std::string_view to_string(CloseReason r);

/// A maximal run of bins in which every bin but the last is exactly full and
/// the last one was closed by the cardinality limit (or ends the input).
struct NfBlock {
  std::size_t start_bin;
  std::size_t length;
};

struct NfTrace {
  Packing bins;
  std::vector<NfBlock> blocks;
  std::vector<CloseReason> close_reasons;  // one per bin
};

enum class NextFitOrder { AsGiven, Decreasing };

/// Runs NEXT FIT over the instance items (in instance order by default).
NfTrace next_fit(const Instance& inst, NextFitOrder order = NextFitOrder::AsGiven);

/// sum of item weights >= (nf + (m - 1)(k - 1)) / k, with m the number of
/// blocks. Throws InvalidInput if the trace is not a packing of `inst` or its
/// blocks do not tile the bins.
bool check_block_inequality(const Instance& inst, const NfTrace& trace);

nlohmann::json to_json(const NfTrace& trace);

}  // namespace splitpack
