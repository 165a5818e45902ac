#include "splitpack/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "experiment.hpp"
#include "splitpack/algo75.hpp"
#include "splitpack/exact.hpp"
#include "splitpack/generators.hpp"
#include "splitpack/io.hpp"
#include "splitpack/nextfit.hpp"
#include "splitpack/normalize.hpp"

namespace splitpack::cli {

namespace {

/// A command failed verification; carries the diagnostics already printed.
struct VerificationFailure {};

// Defaults, then SPLITPACK_BUDGET, then the --budget flag.
SearchOptions base_search(const std::string& budget_flag) {
  SearchOptions o;
  if (const char* env = std::getenv("SPLITPACK_BUDGET")) o.budget = parse_budget(env, o.budget);
  if (!budget_flag.empty()) o.budget = parse_budget(budget_flag, o.budget);
  return o;
}

void emit_json(const std::string& path, const nlohmann::json& j, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << j.dump(2) << '\n';
  } else {
    write_json(path, j);
  }
}

void require_valid(const Instance& inst, const Packing& p, std::ostream& err) {
  auto violations = validate_packing(inst, p);
  if (violations.empty()) return;
  for (const auto& v : violations) err << to_string(v.kind) << ": " << v.message << '\n';
  throw VerificationFailure{};
}

std::vector<std::int64_t> parse_numbers(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream in(text);
  std::string field;
  while (std::getline(in, field, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(field, &used));
      if (used != field.size()) throw std::invalid_argument(field);
    } catch (const std::exception&) {
      throw InvalidInput("bad number '" + field + "' in --numbers");
    }
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Splittable item packing with cardinality constraints"};
  app.name("splitpack");
  app.require_subcommand(1);

  // solve
  std::string input, output, report_path, trace_path, algo = "nf", budget;
  bool presort = false;
  std::int64_t max_bins = 0;
  std::uint64_t budget_nodes = 0;
  auto* solve = app.add_subcommand("solve", "Pack an instance");
  solve->add_option("--algo", algo, "nf, a75 or exact")
      ->check(CLI::IsMember({"nf", "a75", "exact"}));
  solve->add_option("--input", input, "Instance JSON")->required();
  solve->add_option("--output", output, "Write the packing here");
  solve->add_option("--report", report_path, "Write an algorithm report here");
  solve->add_option("--trace", trace_path, "nf only: write the NEXT FIT trace here");
  solve->add_flag("--presort", presort, "nf only: feed items in decreasing size");
  solve->add_option("--max-bins", max_bins, "exact only: bin budget");
  solve->add_option("--budget-nodes", budget_nodes, "exact only: node budget");
  solve->add_option("--budget", budget, "exact only: items=..,bins=..,nodes=..");

  // verify
  std::string instance_path, packing_path;
  auto* verify = app.add_subcommand("verify", "Check a packing against an instance");
  verify->add_option("--instance", instance_path)->required();
  verify->add_option("--packing", packing_path)->required();

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Lower bounds on the optimum");
  bounds->add_option("--input", input, "Instance JSON")->required();

  // gen
  auto* gen = app.add_subcommand("gen", "Generate instances");
  gen->require_subcommand(1);
  int k = 2;
  std::int64_t m = 1, n_param = 10, b = 0;
  std::string numbers_text, dist = "mixed", certified;
  std::size_t n_items = 6;
  std::uint64_t seed = 1;
  auto* g_nf = gen->add_subcommand("nf-worst", "NEXT FIT worst case");
  g_nf->add_option("--k", k)->required();
  g_nf->add_option("--m", m)->required();
  auto* g_a75 = gen->add_subcommand("a75-worst", "Bad example for the 7/5 algorithm");
  g_a75->add_option("--n", n_param)->required();
  auto* g_3p = gen->add_subcommand("reduce3p", "3-Partition reduction");
  g_3p->add_option("--b", b)->required();
  g_3p->add_option("--numbers", numbers_text, "Comma separated")->required();
  g_3p->add_option("--k", k)->required();
  auto* g_rand = gen->add_subcommand("random", "Seeded random instance");
  g_rand->add_option("--n", n_items)->required();
  g_rand->add_option("--k", k)->required();
  g_rand->add_option("--dist", dist, "uniform[:D], mixed[:D[:s,m,l]] or heavy[:D]");
  g_rand->add_option("--seed", seed)->required();
  for (auto* sub : {g_nf, g_a75, g_3p, g_rand}) {
    sub->add_option("--output", output, "Instance JSON (default stdout)");
  }
  for (auto* sub : {g_nf, g_a75}) {
    sub->add_option("--certified", certified, "Write the certified optimal packing here");
  }

  // normalize
  bool check = false;
  auto* norm = app.add_subcommand("normalize", "Normalize a k = 2 packing");
  norm->add_option("--input", packing_path, "Packing JSON")->required();
  norm->add_option("--instance", instance_path, "Instance JSON")->required();
  norm->add_option("--output", output, "Normalized packing JSON");
  norm->add_flag("--check", check, "Verify the normal form of the result");

  // experiment
  ExperimentConfig ex;
  std::string csv_path;
  auto* exp = app.add_subcommand("experiment", "Run a CSV experiment");
  exp->add_option("suite", ex.suite, "nf-ratio, a75-ratio, reduction-check, normalize-check")
      ->required()
      ->check(CLI::IsMember({"nf-ratio", "a75-ratio", "reduction-check", "normalize-check"}));
  exp->add_option("--trials", ex.trials);
  exp->add_option("--seed", ex.seed);
  exp->add_option("--k", ex.k);
  exp->add_option("--max-n", ex.max_n);
  exp->add_option("--m", ex.m, "reduction-check: triples");
  exp->add_option("--dist", ex.dist);
  exp->add_option("--budget", budget, "items=..,bins=..,nodes=..");
  exp->add_option("--output", csv_path, "CSV file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (solve->parsed()) {
      Instance inst = read_instance(input);
      if (!trace_path.empty() && algo != "nf") throw InvalidInput("--trace needs --algo nf");
      if (presort && algo != "nf") throw InvalidInput("--presort needs --algo nf");
      Packing packing;
      std::optional<nlohmann::json> report;
      std::optional<nlohmann::json> trace;
      if (algo == "nf") {
        NfTrace t = next_fit(inst, presort ? NextFitOrder::Decreasing : NextFitOrder::AsGiven);
        packing = t.bins;
        trace = to_json(t);
        report = nlohmann::json{{"bins", packing.bin_count()},
                                {"blocks", t.blocks.size()},
                                {"block_inequality", check_block_inequality(inst, t)}};
      } else if (algo == "a75") {
        if (inst.k() != 2) throw InvalidInput("--algo a75 needs k = 2");
        A75Report r = pack_75(inst);
        packing = r.packing;
        report = to_json(r);
      } else {
        SearchOptions o = base_search(budget);
        if (max_bins > 0) o.budget.max_bins = max_bins;
        if (budget_nodes > 0) o.budget.max_nodes = budget_nodes;
        ExactResult r = exact_opt(inst, o);
        packing = r.witness;
        report = nlohmann::json{{"opt_bins", r.opt_bins}, {"nodes", r.nodes}};
      }
      require_valid(inst, packing, err);
      if (!output.empty()) write_json(output, to_json(packing));
      if (!report_path.empty()) write_json(report_path, *report);
      if (!trace_path.empty()) write_json(trace_path, *trace);
      out << "bins=" << packing.bin_count() << " lower_bound=" << lower_bounds(inst).best << '\n';
      return kOk;
    }

    if (verify->parsed()) {
      Instance inst = read_instance(instance_path);
      Packing p = read_packing(packing_path);
      auto violations = validate_packing(inst, p);
      for (const auto& v : violations) out << to_string(v.kind) << ": " << v.message << '\n';
      if (!violations.empty()) return kVerification;
      out << "valid bins=" << p.bin_count() << '\n';
      return kOk;
    }

    if (bounds->parsed()) {
      Instance inst = read_instance(input);
      BoundsReport r = lower_bounds(inst);
      out << "size_bound=" << r.size_bound << " weight_bound=" << r.weight_bound
          << " count_bound=" << r.count_bound << " best=" << r.best << '\n';
      return kOk;
    }

    if (gen->parsed()) {
      std::optional<CertifiedInstance> c;
      if (g_nf->parsed()) c = gen_nf_worst(k, m);
      if (g_a75->parsed()) c = gen_a75_worst(n_param);
      if (c) {
        emit_json(output, to_json(c->instance), out);
        if (!certified.empty()) {
          require_valid(c->instance, c->certified_opt, err);
          write_json(certified, to_json(c->certified_opt));
        }
        return kOk;
      }
      if (g_3p->parsed()) {
        emit_json(output, to_json(gen_from_3partition(parse_numbers(numbers_text), b, k)), out);
        return kOk;
      }
      emit_json(output, to_json(gen_random(n_items, k, parse_distribution(dist), seed)), out);
      return kOk;
    }

    if (norm->parsed()) {
      Instance inst = read_instance(instance_path);
      Packing p = read_packing(packing_path);
      require_valid(inst, p, err);
      Packing result = normalize(inst, p);
      require_valid(inst, result, err);
      if (!output.empty()) write_json(output, to_json(result));
      out << "bins_before=" << p.bin_count() << " bins_after=" << result.bin_count() << '\n';
      if (check) {
        NormalFormCheck c = check_normal_form(inst, result);
        out << "acyclic=" << c.acyclic << " smalls_are_leaves=" << c.smalls_are_leaves
            << " degrees_bounded=" << c.degrees_bounded << '\n';
        for (const auto& problem : c.problems) err << problem << '\n';
        if (!c.ok()) return kVerification;
      }
      return kOk;
    }

    if (exp->parsed()) {
      ex.search = base_search(budget);
      ExperimentResult r = run_experiment(ex);
      if (csv_path.empty() || csv_path == "-") {
        out << r.csv;
      } else {
        std::ofstream f(csv_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + csv_path);
        f << r.csv;
      }
      err << "ok=" << r.ok << " skipped=" << r.skipped << " violations=" << r.violations << '\n';
      return r.violations == 0 ? kOk : kVerification;
    }
  } catch (const VerificationFailure&) {
    return kVerification;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const InvalidInput& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace splitpack::cli
