#include "splitpack/generators.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <random>
#include <string>

namespace splitpack {

CertifiedInstance gen_nf_worst(int k, std::int64_t m) {
  if (k < 2) throw InvalidInput("k must be at least 2");
  if (m < 1) throw InvalidInput("M must be at least 1");
  const std::int64_t mk = m * k;
  const std::int64_t tiny_count = m * (k - 1) * k;
  const Rational big(mk - 1);
  const Rational tiny(1, mk * (k - 1));

  std::vector<Rational> sizes{big};
  sizes.insert(sizes.end(), static_cast<std::size_t>(tiny_count), tiny);
  Instance inst(k, std::move(sizes));

  Packing opt;
  const Rational slice(mk - 1, mk);
  ItemId next = 1;
  for (std::int64_t b = 0; b < mk; ++b) {
    Bin& bin = opt.open_bin();
    bin.add(0, slice);
    for (int j = 0; j < k - 1; ++j) bin.add(next++, tiny);
  }
  return {std::move(inst), std::move(opt)};
}

CertifiedInstance gen_a75_worst(std::int64_t n) {
  if (n < 3) throw InvalidInput("N must be at least 3");
  const Rational small(2, n);
  const Rational big_medium = Rational(1) - Rational(1, n);
  const Rational medium = Rational(1) - Rational(2, n);
  std::vector<Rational> sizes;
  sizes.insert(sizes.end(), static_cast<std::size_t>(4 * n), small);
  sizes.insert(sizes.end(), static_cast<std::size_t>(2 * n), big_medium);
  sizes.insert(sizes.end(), static_cast<std::size_t>(3 * n), medium);
  Instance inst(2, std::move(sizes));

  const auto un = static_cast<ItemId>(n);
  const ItemId smalls = 0, big_mediums = 4 * un, mediums = 6 * un;
  Packing opt;
  // 3N smalls whole, each with a 1 - 2/N medium.
  for (ItemId j = 0; j < 3 * un; ++j) {
    Bin& bin = opt.open_bin();
    bin.add(smalls + j, small);
    bin.add(mediums + j, medium);
  }
  // N smalls halved, each half with a 1 - 1/N medium.
  const Rational half(1, n);
  for (ItemId j = 0; j < 2 * un; ++j) {
    Bin& bin = opt.open_bin();
    bin.add(smalls + 3 * un + j / 2, half);
    bin.add(big_mediums + j, big_medium);
  }
  return {std::move(inst), std::move(opt)};
}

void check_3partition(const std::vector<std::int64_t>& numbers, std::int64_t b) {
  if (b <= 0) throw InvalidInput("B must be positive");
  if (numbers.empty() || numbers.size() % 3 != 0) {
    throw InvalidInput("need 3m numbers, got " + std::to_string(numbers.size()));
  }
  std::int64_t sum = 0;
  for (std::size_t j = 0; j < numbers.size(); ++j) {
    const std::int64_t s = numbers[j];
    if (!(4 * s > b && 2 * s < b)) {
      throw InvalidInput("number at index " + std::to_string(j) + " (" + std::to_string(s) +
                         ") is not strictly between B/4 and B/2");
    }
    sum += s;
  }
  const auto m = static_cast<std::int64_t>(numbers.size() / 3);
  if (sum != m * b) {
    throw InvalidInput("numbers sum to " + std::to_string(sum) + ", expected m*B = " +
                       std::to_string(m * b));
  }
}

Instance gen_from_3partition(const std::vector<std::int64_t>& numbers, std::int64_t b, int k) {
  if (k < 3) throw InvalidInput("the reduction needs k >= 3");
  check_3partition(numbers, b);
  const auto m = static_cast<std::int64_t>(numbers.size() / 3);
  std::vector<Rational> sizes;
  if (k > 3) {
    const Rational pad(3 * k - 1, 3 * static_cast<std::int64_t>(k) * (k - 3));
    sizes.insert(sizes.end(), static_cast<std::size_t>(m * (k - 3)), pad);
  }
  const std::int64_t scale = k == 3 ? b : 3 * k * b;
  for (std::int64_t s : numbers) sizes.emplace_back(s, scale);
  return Instance(k, std::move(sizes));
}

bool three_partition_brute(const std::vector<std::int64_t>& numbers, std::int64_t b) {
  check_3partition(numbers, b);
  if (numbers.size() > 12) throw InvalidInput("brute-force 3-Partition is limited to m <= 4");
  std::vector<bool> used(numbers.size(), false);
  // Always complete the triple of the lowest unused number.
  auto search = [&](auto&& self) -> bool {
    auto first = std::find(used.begin(), used.end(), false);
    if (first == used.end()) return true;
    const auto i = static_cast<std::size_t>(first - used.begin());
    used[i] = true;
    for (std::size_t j = i + 1; j < numbers.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      for (std::size_t l = j + 1; l < numbers.size(); ++l) {
        if (used[l] || numbers[i] + numbers[j] + numbers[l] != b) continue;
        used[l] = true;
        if (self(self)) return true;
        used[l] = false;
      }
      used[j] = false;
    }
    used[i] = false;
    return false;
  };
  return search(search);
}

Instance gen_random(std::size_t n, int k, const SizeDistribution& dist, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  std::vector<Rational> sizes;
  sizes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (auto* u = std::get_if<UniformDist>(&dist)) {
      std::int64_t q = uniform(1, std::max<std::int64_t>(1, u->max_den));
      sizes.emplace_back(uniform(1, q), q);
    } else if (auto* h = std::get_if<HeavyDist>(&dist)) {
      std::int64_t q = uniform(1, std::max<std::int64_t>(1, h->max_den));
      sizes.emplace_back(uniform(1, q * k), q);
    } else {
      const auto& mx = std::get<MixedDist>(dist);
      std::discrete_distribution<int> pick({mx.small, mx.medium, mx.large});
      std::int64_t q = uniform(2, std::max<std::int64_t>(2, mx.max_den));
      switch (pick(rng)) {
        case 0: sizes.emplace_back(uniform(1, q / 2), q); break;
        case 1: sizes.emplace_back(uniform(q / 2 + 1, q), q); break;
        default: sizes.emplace_back(uniform(q + 1, 3 * q), q); break;
      }
    }
  }
  return Instance(k, std::move(sizes));
}

PackedInstance gen_random_packing(std::size_t max_items, std::size_t bins, std::int64_t max_den,
                                  std::uint64_t seed) {
  if (max_items == 0 || bins == 0) throw InvalidInput("need at least one item and one bin");
  if (max_den < 1) throw InvalidInput("max_den must be positive");
  std::mt19937_64 rng(seed);
  auto uniform = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  const auto last = static_cast<std::int64_t>(max_items) - 1;
  Packing raw;
  for (std::size_t b = 0; b < bins; ++b) {
    Bin& bin = raw.open_bin();
    const auto x = static_cast<ItemId>(uniform(0, last));
    const auto y = static_cast<ItemId>(uniform(0, last));
    const std::int64_t q = uniform(1, max_den);
    bin.add(x, Rational(uniform(1, q), 2 * q));
    if (y != x) bin.add(y, Rational(uniform(1, q), 2 * q));
  }
  // Renumber the items that occur, in first-seen order.
  std::vector<std::int64_t> id(max_items, -1);
  std::vector<Rational> sizes;
  Packing packing;
  for (const Bin& bin : raw.bins()) {
    Bin& out = packing.open_bin();
    for (const Part& part : bin.parts) {
      if (id[part.item] < 0) {
        id[part.item] = static_cast<std::int64_t>(sizes.size());
        sizes.emplace_back(0);
      }
      const auto local = static_cast<ItemId>(id[part.item]);
      sizes[local] += part.amount;
      out.add(local, part.amount);
    }
  }
  return {Instance(2, std::move(sizes)), std::move(packing)};
}

namespace {

std::int64_t parse_int(std::string_view text, std::int64_t min = 1) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || v < min) {
    throw InvalidInput("expected an integer >= " + std::to_string(min) + ", got '" +
                       std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    auto at = text.find(sep);
    out.push_back(text.substr(0, at));
    if (at == std::string_view::npos) return out;
    text = text.substr(at + 1);
  }
}

}  // namespace

SizeDistribution parse_distribution(std::string_view text) {
  auto fields = split(text, ':');
  const std::string_view name = fields[0];
  if (fields.size() > 3 || (fields.size() == 3 && name != "mixed")) {
    throw InvalidInput("bad distribution '" + std::string(text) + "'");
  }
  std::int64_t den = fields.size() >= 2 ? parse_int(fields[1]) : 10;
  if (name == "uniform") return UniformDist{den};
  if (name == "heavy") return HeavyDist{den};
  if (name == "mixed") {
    MixedDist mx;
    mx.max_den = std::max<std::int64_t>(2, den);
    if (fields.size() == 3) {
      auto w = split(fields[2], ',');
      if (w.size() != 3) throw InvalidInput("mixed weights need three values s,m,l");
      mx.small = static_cast<double>(parse_int(w[0], 0));
      mx.medium = static_cast<double>(parse_int(w[1], 0));
      mx.large = static_cast<double>(parse_int(w[2], 0));
      if (mx.small + mx.medium + mx.large <= 0) {
        throw InvalidInput("mixed weights must not all be zero");
      }
    }
    return mx;
  }
  throw InvalidInput("unknown distribution '" + std::string(name) + "'");
}

}  // namespace splitpack
