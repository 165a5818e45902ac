#pragma once

#include <string>
#include <vector>

#include "splitpack/core.hpp"

namespace splitpack {

// Structural rewrites of k = 2 packings. Each one keeps the packing valid
// and never adds a bin. All of them throw InvalidInput when k != 2 or the
// input packing is invalid.

/// Removes every cycle of the packing graph. A cycle is first offered the
/// chance to drop one of its bins; failing that, mass is rotated around it
/// until one edge turns into a loop.
Packing remove_cycles(const Instance& inst, const Packing& p);

/// Makes every item of size <= 1/2 sit in a single bin. Needs an acyclic
/// packing and keeps it acyclic.
Packing smalls_to_leaves(const Instance& inst, const Packing& p);

/// An item of size in ((i-1)/2, i/2], i >= 2, ends up in at most i bins.
/// Needs an acyclic packing; keeps it acyclic and keeps small items leaves.
Packing bound_degrees(const Instance& inst, const Packing& p);

/// remove_cycles, then smalls_to_leaves, then bound_degrees.
Packing normalize(const Instance& inst, const Packing& p);

/// i such that size lies in ((i-1)/2, i/2].
std::int64_t item_type(const Rational& size);

struct NormalFormCheck {
  bool acyclic = true;
  bool smalls_are_leaves = true;
  bool degrees_bounded = true;
  std::vector<std::string> problems;

  bool ok() const { return acyclic && smalls_are_leaves && degrees_bounded; }
};

NormalFormCheck check_normal_form(const Instance& inst, const Packing& p);

}  // namespace splitpack
