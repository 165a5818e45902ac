#include "experiment.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <sstream>

#include "splitpack/algo75.hpp"
#include "splitpack/generators.hpp"
#include "splitpack/nextfit.hpp"
#include "splitpack/normalize.hpp"

namespace splitpack::cli {

namespace {

std::string describe(const Instance& inst) {
  std::string out;
  for (const Rational& s : inst.sizes()) {
    if (!out.empty()) out += ' ';
    out += s.str();
  }
  return out;
}

const char* flag(bool b) { return b ? "yes" : "no"; }

std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// Ratio suites: algorithm bins against the exact optimum.
ExperimentResult ratio_suite(const ExperimentConfig& c, bool a75) {
  const int k = a75 ? 2 : c.k;
  const SizeDistribution dist = parse_distribution(c.dist);
  // NEXT FIT: bins <= (2 - 1/k) OPT. The 7/5 algorithm: bins <= ceil(7/5 OPT).
  const Rational bound = a75 ? Rational(7, 5) : Rational(2) - Rational(1, k);
  std::ostringstream csv;
  csv << "trial,n,instance,algo_bins,exact_bins,ratio,ratio_decimal,bound,within_bound,status\n";
  ExperimentResult r;
  Rational worst;
  std::mt19937_64 rng(c.seed);
  for (std::size_t t = 0; t < c.trials; ++t) {
    const auto n = static_cast<std::size_t>(draw(rng, 1, static_cast<std::int64_t>(c.max_n)));
    const Instance inst = gen_random(n, k, dist, rng());
    const auto bins = static_cast<std::int64_t>(
        a75 ? pack_75(inst).packing.bin_count() : next_fit(inst).bins.bin_count());
    csv << t << ',' << n << ',' << describe(inst) << ',' << bins << ',';
    std::int64_t opt = 0;
    try {
      opt = exact_opt(inst, c.search).opt_bins;
    } catch (const BudgetExceeded&) {
      ++r.skipped;
      csv << ",,," << bound.str() << ",,skipped\n";
      continue;
    }
    const Rational ratio(bins, opt);
    const bool within = a75 ? Rational(bins) <= (bound * Rational(opt)).ceil() : ratio <= bound;
    worst = max(worst, ratio);
    within ? ++r.ok : ++r.violations;
    csv << opt << ',' << ratio.str() << ',' << ratio.decimal(6) << ',' << bound.str() << ','
        << flag(within) << ',' << (within ? "ok" : "violation") << '\n';
  }
  csv << "summary,,,,," << worst.str() << ',' << worst.decimal(6) << ',' << bound.str() << ','
      << flag(r.violations == 0) << ",ok=" << r.ok << " skipped=" << r.skipped
      << " violations=" << r.violations << '\n';
  r.csv = csv.str();
  return r;
}

// A 3-Partition instance with m triples, built from triples that hit B when
// `yes`, drawn freely otherwise.
std::vector<std::int64_t> draw_3partition(std::mt19937_64& rng, std::int64_t m, std::int64_t b,
                                          bool yes) {
  const std::int64_t lo = b / 4 + 1, hi = (b - 1) / 2;
  auto in_range = [&](std::int64_t s) { return 4 * s > b && 2 * s < b; };
  while (true) {
    std::vector<std::int64_t> v;
    std::int64_t sum = 0;
    bool fine = true;
    for (std::int64_t t = 0; t < m && fine; ++t) {
      if (yes) {
        std::int64_t a = draw(rng, lo, hi), c = draw(rng, lo, hi);
        std::int64_t d = b - a - c;
        fine = in_range(d);
        v.insert(v.end(), {a, c, d});
      } else {
        for (int j = 0; j < 3; ++j) v.push_back(draw(rng, lo, hi));
      }
    }
    if (!fine) continue;
    if (!yes) {
      for (std::size_t j = 0; j + 1 < v.size(); ++j) sum += v[j];
      v.back() = m * b - sum;
      if (!in_range(v.back())) continue;
    }
    std::shuffle(v.begin(), v.end(), rng);
    return v;
  }
}

ExperimentResult reduction_suite(const ExperimentConfig& c) {
  std::ostringstream csv;
  csv << "trial,B,numbers,k,brute,feasible,agree,status\n";
  ExperimentResult r;
  std::size_t yes = 0;
  std::mt19937_64 rng(c.seed);
  for (std::size_t t = 0; t < c.trials; ++t) {
    const std::int64_t b = draw(rng, 12, 48);
    // Odd trials redraw until the instance is a NO instance, so the corpus
    // holds both answers.
    auto numbers = draw_3partition(rng, c.m, b, t % 2 == 0);
    for (int tries = 0; t % 2 == 1 && tries < 200 && three_partition_brute(numbers, b); ++tries) {
      numbers = draw_3partition(rng, c.m, b, false);
    }
    std::string listed;
    for (std::int64_t s : numbers) listed += (listed.empty() ? "" : " ") + std::to_string(s);
    csv << t << ',' << b << ',' << listed << ',' << c.k << ',';
    const bool brute = three_partition_brute(numbers, b);
    bool feasible = false;
    try {
      feasible = feasible_in(gen_from_3partition(numbers, b, c.k), c.m, c.search).has_value();
    } catch (const BudgetExceeded&) {
      ++r.skipped;
      csv << flag(brute) << ",,,skipped\n";
      continue;
    }
    yes += brute;
    const bool agree = brute == feasible;
    agree ? ++r.ok : ++r.violations;
    csv << flag(brute) << ',' << flag(feasible) << ',' << flag(agree) << ','
        << (agree ? "ok" : "violation") << '\n';
  }
  csv << "summary,,,,yes=" << yes << " no=" << (r.ok + r.violations - yes) << ",,"
      << "agree=" << r.ok << '/' << (r.ok + r.violations) << ",skipped=" << r.skipped
      << " violations=" << r.violations << '\n';
  r.csv = csv.str();
  return r;
}

ExperimentResult normalize_suite(const ExperimentConfig& c) {
  std::ostringstream csv;
  csv << "trial,n,source,bins_before,bins_after,valid,acyclic,leaves,degrees,idempotent,status\n";
  ExperimentResult r;
  const SizeDistribution dist = parse_distribution(c.dist);
  std::mt19937_64 rng(c.seed);
  for (std::size_t t = 0; t < c.trials; ++t) {
    const auto n = static_cast<std::size_t>(draw(rng, 1, static_cast<std::int64_t>(c.max_n)));
    const std::uint64_t s = rng();
    const bool witness = t % 2 == 0;
    std::optional<PackedInstance> pi;
    if (witness) {
      Instance inst = gen_random(n, 2, dist, s);
      try {
        Packing w = exact_opt(inst, c.search).witness;
        pi = PackedInstance{std::move(inst), std::move(w)};
      } catch (const BudgetExceeded&) {
        ++r.skipped;
        csv << t << ',' << n << ",witness,,,,,,,,skipped\n";
        continue;
      }
    } else {
      pi = gen_random_packing(n, n + static_cast<std::size_t>(draw(rng, 0, 4)), 6, s);
    }
    const Instance& inst = pi->instance;
    const Packing out = normalize(inst, pi->packing);
    const NormalFormCheck check = check_normal_form(inst, out);
    const bool valid = is_valid_packing(inst, out) && out.bin_count() <= pi->packing.bin_count();
    const bool idem = normalize(inst, out).same_bins_as(out);
    const bool good = valid && check.ok() && idem;
    good ? ++r.ok : ++r.violations;
    csv << t << ',' << inst.size() << ',' << (witness ? "witness" : "perturbed") << ','
        << pi->packing.bin_count() << ',' << out.bin_count() << ',' << flag(valid) << ','
        << flag(check.acyclic) << ',' << flag(check.smalls_are_leaves) << ','
        << flag(check.degrees_bounded) << ',' << flag(idem) << ',' << (good ? "ok" : "violation")
        << '\n';
  }
  csv << "summary,,,,,,,,,,ok=" << r.ok << " skipped=" << r.skipped << " violations=" << r.violations
      << '\n';
  r.csv = csv.str();
  return r;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& c) {
  if (c.max_n == 0) throw InvalidInput("max-n must be positive");
  if (c.suite == "nf-ratio") return ratio_suite(c, false);
  if (c.suite == "a75-ratio") return ratio_suite(c, true);
  if (c.suite == "reduction-check") {
    if (c.k < 3) throw InvalidInput("reduction-check needs k >= 3");
    if (c.m < 1 || c.m > 4) throw InvalidInput("reduction-check needs 1 <= m <= 4");
    return reduction_suite(c);
  }
  if (c.suite == "normalize-check") return normalize_suite(c);
  throw InvalidInput("unknown suite '" + c.suite + "'");
}

}  // namespace splitpack::cli
