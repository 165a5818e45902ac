#pragma once

#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "splitpack/core.hpp"

namespace splitpack {

struct CertifiedInstance {
  Instance instance;
  Packing certified_opt;
};

/// One item of size Mk - 1, then M(k-1)k items of size 1/(Mk(k-1)). NEXT FIT
/// needs M(2k-1) - 1 bins, the certified packing Mk.
CertifiedInstance gen_nf_worst(int k, std::int64_t m);

/// 4N smalls of 2/N, 2N mediums of 1 - 1/N and 3N mediums of 1 - 2/N
/// (k = 2), grouped by class. The certified packing uses 5N bins.
CertifiedInstance gen_a75_worst(std::int64_t n);

/// Throws InvalidInput naming the offending index unless `numbers` is a
/// 3-Partition instance: 3m positive numbers, each strictly inside
/// (B/4, B/2), summing to mB.
void check_3partition(const std::vector<std::int64_t>& numbers, std::int64_t b);

/// The hardness reduction: m(k-3) padding items of (3k-1)/(3k(k-3)) followed
/// by 3m items s_j/(3kB) (s_j/B when k = 3). Total size is exactly m.
Instance gen_from_3partition(const std::vector<std::int64_t>& numbers, std::int64_t b, int k);

/// Exhaustive 3-Partition decision, m <= 4.
bool three_partition_brute(const std::vector<std::int64_t>& numbers, std::int64_t b);

/// Sizes p/q in (0, 1] with 1 <= q <= max_den.
struct UniformDist {
  std::int64_t max_den = 10;
};
/// Class drawn with the given weights, then a size p/q (2 <= q <= max_den)
/// inside it; large sizes go up to 3.
struct MixedDist {
  double small = 1;
  double medium = 1;
  double large = 1;
  std::int64_t max_den = 10;
};
/// Sizes p/q in (0, k].
struct HeavyDist {
  std::int64_t max_den = 10;
};
using SizeDistribution = std::variant<UniformDist, MixedDist, HeavyDist>;

Instance gen_random(std::size_t n, int k, const SizeDistribution& dist, std::uint64_t seed);

/// A random k = 2 packing and the instance it packs: `bins` bins, each
/// holding one or two parts p/(2q) with q <= max_den, over at most
/// `max_items` items. Item sizes are the sums of their parts, so the
/// packing is valid by construction; its graph may have cycles.
struct PackedInstance {
  Instance instance;
  Packing packing;
};
PackedInstance gen_random_packing(std::size_t max_items, std::size_t bins, std::int64_t max_den,
                                  std::uint64_t seed);

/// "uniform", "mixed" or "heavy", optionally followed by ":D" for the
/// denominator bound; "mixed:D:s,m,l" also sets the class weights.
SizeDistribution parse_distribution(std::string_view text);

}  // namespace splitpack
