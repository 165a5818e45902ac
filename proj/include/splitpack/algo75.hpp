#pragma once

#include <deque>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "splitpack/core.hpp"
#include "splitpack/exact.hpp"

namespace splitpack {

// The 7/5-approximation for k = 2. Items are small (<= 1/2), medium
// (1/2, 1] or large (> 1). Mediums are paired with smalls first, larges are
// threaded through the leftover smalls by NEXT FIT, and two repair passes
// handle the tiny configurations where the plain greedy can miss the ratio.

enum class Fallback { None, TwoBinRepack, SevenBinSearch };
std::string_view to_string(Fallback f);

/// A medium packed across two bins with the two largest smalls.
struct CriticalPack {
  ItemId medium;
  ItemId small_a;  // larger small, shares the exactly-full first bin
  ItemId small_b;
  /// Size of the smallest unpacked small when the medium was dispatched;
  /// medium + this exceeds 1.
  Rational smallest_available;
};

struct A75Report {
  Packing packing;
  bool reclassified_small = false;
  Fallback fallback_triggered = Fallback::None;
  bool fallback_applied = false;
  std::vector<CriticalPack> critical;

  std::size_t count(BinLabel label) const { return packing.count(label); }
};

nlohmann::json to_json(const A75Report& report);

/// Working state shared by the steps; public so each step can be exercised
/// on its own.
struct Pack75State {
  explicit Pack75State(const Instance& inst);  // sorts the three classes

  const Instance* inst;
  std::deque<ItemId> smalls;       // increasing size, unpacked
  std::vector<ItemId> mediums;     // decreasing size, not yet considered
  std::vector<ItemId> larges;      // decreasing size, unpacked
  std::vector<ItemId> nf_mediums;  // mediums (and a reclassified small) left for step 3
  A75Report report;
};

/// First part fills the bin holding `s_a` exactly; the second goes with
/// `s_b`. Requires medium <= 1, s_b <= s_a <= 1/2, medium + s_a > 1.
std::pair<Rational, Rational> split_2b(const Rational& medium, const Rational& s_a,
                                       const Rational& s_b);

/// Step 2: pair every medium with smalls while smalls last.
void pair_mediums(Pack75State& state);

/// When a single small is left that fits none of the unconsidered mediums,
/// it joins the step-3 NEXT FIT stream as the smallest medium. Returns
/// whether it fired.
bool reclassify_lone_small(Pack75State& state);

/// Step 3: NEXT FIT over the step-3 mediums, then the larges.
void pack_step3(Pack75State& state);

/// Steps 4 and 6: one bin per remaining small, larges threaded through
/// them by NEXT FIT; once the smalls run out the running large and all later
/// ones continue in fresh bins.
void large_into_smalls(Pack75State& state);

/// Step 5: bins still holding a single small are repacked in pairs.
void pair_leftover_smalls(Pack75State& state);

/// Default search for the seven-bin repair: enough room for the ten
/// pattern bins' items.
SearchOptions seven_bin_search();

/// Replaces one S2a bin plus a two-bin trailing group holding the only
/// large item by the packing medium, large, small in two bins, when that
/// packing fits.
A75Report repair_two_bin(A75Report report, const Instance& inst);

/// Four S2b bins, one S2a bin and a five-bin trailing group: search for a
/// seven-bin packing of the same items and use it if one exists.
A75Report repair_seven_bin(A75Report report, const Instance& inst,
                           const SearchOptions& search = seven_bin_search());

struct Pack75Options {
  bool repairs = true;
  SearchOptions search = seven_bin_search();
};

A75Report pack_75(const Instance& inst, const Pack75Options& options = {});

}  // namespace splitpack
