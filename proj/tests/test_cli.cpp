#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "splitpack/cli.hpp"
#include "splitpack/generators.hpp"
#include "splitpack/io.hpp"

using namespace splitpack;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("splitpack_cli_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

void write_text(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("solve nf and exact on the worst-case family") {
  TempDir dir;
  CertifiedInstance c = gen_nf_worst(2, 2);
  write_json(dir / "inst.json", to_json(c.instance));

  Run r = invoke({"solve", "--algo", "nf", "--input", dir / "inst.json", "--output", dir / "nf.json",
               "--trace", dir / "trace.json", "--report", dir / "report.json"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == "bins=5 lower_bound=4\n");
  CHECK(oracle::check_packing(c.instance, read_packing(dir / "nf.json")).empty());
  nlohmann::json trace = read_json(dir / "trace.json");
  CHECK(trace["bins"] == 5);
  CHECK(trace["close_reasons"].size() == 5);
  CHECK(read_json(dir / "report.json")["block_inequality"] == true);

  r = invoke({"solve", "--algo", "exact", "--input", dir / "inst.json", "--output", dir / "opt.json"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == "bins=4 lower_bound=4\n");
  CHECK(read_packing(dir / "opt.json").bin_count() == 4);

  r = invoke({"solve", "--algo", "a75", "--input", dir / "inst.json", "--report", dir / "a75.json"});
  CHECK(r.code == cli::kOk);
  CHECK(read_json(dir / "a75.json").contains("counts"));
}

TEST_CASE("solve usage errors write nothing") {
  TempDir dir;
  write_json(dir / "k3.json", to_json(gen_nf_worst(3, 1).instance));
  Run r = invoke({"solve", "--algo", "a75", "--input", dir / "k3.json", "--output", dir / "out.json"});
  CHECK(r.code == cli::kUsage);
  CHECK_FALSE(fs::exists(dir / "out.json"));

  write_json(dir / "k2.json", to_json(gen_nf_worst(2, 1).instance));
  CHECK(invoke({"solve", "--algo", "exact", "--input", dir / "k2.json", "--trace", dir / "t.json"}).code ==
        cli::kUsage);
  CHECK(invoke({"solve", "--algo", "a75", "--input", dir / "k2.json", "--presort"}).code == cli::kUsage);
  CHECK(invoke({"solve", "--algo", "ff", "--input", dir / "k2.json"}).code == cli::kUsage);
  CHECK(invoke({"solve"}).code == cli::kUsage);
  CHECK(invoke({}).code == cli::kUsage);
  CHECK(invoke({"frobnicate"}).code == cli::kUsage);
  CHECK(invoke({"--help"}).code == cli::kOk);
}

TEST_CASE("parse errors") {
  TempDir dir;
  write_text(dir / "bad.json", "{\"k\": 2, \"items\": [\"1/0\"]}");
  CHECK(invoke({"solve", "--input", dir / "bad.json"}).code == cli::kParse);
  CHECK(invoke({"bounds", "--input", dir / "missing.json"}).code == cli::kParse);
  write_text(dir / "junk.json", "not json");
  CHECK(invoke({"bounds", "--input", dir / "junk.json"}).code == cli::kParse);
}

TEST_CASE("budget errors") {
  TempDir dir;
  write_json(dir / "inst.json", to_json(gen_random(8, 2, MixedDist{}, 3)));
  Run r = invoke({"solve", "--algo", "exact", "--input", dir / "inst.json", "--budget-nodes", "2"});
  CHECK(r.code == cli::kBudget);
  CHECK(r.err.find("budget exceeded") != std::string::npos);
  CHECK(invoke({"solve", "--algo", "exact", "--input", dir / "inst.json", "--max-bins", "1"}).code ==
        cli::kBudget);
  CHECK(invoke({"solve", "--algo", "exact", "--input", dir / "inst.json", "--budget", "items=3"}).code ==
        cli::kBudget);
  CHECK(invoke({"solve", "--algo", "exact", "--input", dir / "inst.json", "--budget", "items"}).code ==
        cli::kUsage);

  ::setenv("SPLITPACK_BUDGET", "items=2", 1);
  CHECK(invoke({"solve", "--algo", "exact", "--input", dir / "inst.json"}).code == cli::kBudget);
  // the flag wins over the environment
  write_json(dir / "small.json", to_json(gen_nf_worst(2, 1).instance));
  CHECK(invoke({"solve", "--algo", "exact", "--input", dir / "small.json", "--budget", "items=8"}).code ==
        cli::kOk);
  ::unsetenv("SPLITPACK_BUDGET");
}

TEST_CASE("verify") {
  TempDir dir;
  CertifiedInstance c = gen_nf_worst(2, 2);
  write_json(dir / "inst.json", to_json(c.instance));
  write_json(dir / "opt.json", to_json(c.certified_opt));
  Run r = invoke({"verify", "--instance", dir / "inst.json", "--packing", dir / "opt.json"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == "valid bins=4\n");

  Packing tampered = c.certified_opt;
  tampered.bins()[0].parts[0].amount = Rational(1, 2);
  write_json(dir / "bad.json", to_json(tampered));
  r = invoke({"verify", "--instance", dir / "inst.json", "--packing", dir / "bad.json"});
  CHECK(r.code == cli::kVerification);
  CHECK(r.out.find("coverage: item 0 covered") != std::string::npos);

  Packing stray = c.certified_opt;
  stray.bins()[0].parts.push_back({42, Rational(0)});
  write_json(dir / "stray.json", to_json(stray));
  r = invoke({"verify", "--instance", dir / "inst.json", "--packing", dir / "stray.json"});
  CHECK(r.code == cli::kVerification);
  CHECK(r.out.find("unknown-item") != std::string::npos);
}

TEST_CASE("bounds") {
  TempDir dir;
  write_json(dir / "inst.json", to_json(gen_nf_worst(3, 1).instance));
  Run r = invoke({"bounds", "--input", dir / "inst.json"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == "size_bound=3 weight_bound=3 count_bound=3 best=3\n");
}

TEST_CASE("gen") {
  TempDir dir;
  Run r = invoke({"gen", "nf-worst", "--k", "2", "--m", "2"});
  CHECK(r.code == cli::kOk);
  CHECK(instance_from_json(nlohmann::json::parse(r.out)) == gen_nf_worst(2, 2).instance);

  r = invoke({"gen", "a75-worst", "--n", "10", "--output", dir / "a.json", "--certified", dir / "c.json"});
  CHECK(r.code == cli::kOk);
  Instance a = read_instance(dir / "a.json");
  CHECK(a.size() == 90);
  CHECK(oracle::check_packing(a, read_packing(dir / "c.json")).empty());

  r = invoke({"gen", "reduce3p", "--b", "20", "--numbers", "7,7,6,7,7,6", "--k", "3"});
  CHECK(r.code == cli::kOk);
  CHECK(instance_from_json(nlohmann::json::parse(r.out)) ==
        gen_from_3partition({7, 7, 6, 7, 7, 6}, 20, 3));
  CHECK(invoke({"gen", "reduce3p", "--b", "20", "--numbers", "7,x,6", "--k", "3"}).code == cli::kUsage);
  CHECK(invoke({"gen", "reduce3p", "--b", "20", "--numbers", "6,6,8,9,6,5", "--k", "3"}).code ==
        cli::kUsage);
  CHECK(invoke({"gen", "a75-worst", "--n", "2"}).code == cli::kUsage);

  Run x = invoke({"gen", "random", "--n", "6", "--k", "2", "--dist", "mixed", "--seed", "4"});
  Run y = invoke({"gen", "random", "--n", "6", "--k", "2", "--dist", "mixed", "--seed", "4"});
  CHECK(x.code == cli::kOk);
  CHECK(x.out == y.out);
  CHECK(instance_from_json(nlohmann::json::parse(x.out)) == gen_random(6, 2, MixedDist{}, 4));
  CHECK(invoke({"gen", "random", "--n", "6", "--k", "2", "--dist", "gauss", "--seed", "4"}).code ==
        cli::kUsage);
  CHECK(invoke({"gen"}).code == cli::kUsage);
}

TEST_CASE("normalize") {
  TempDir dir;
  Instance inst(2, {Rational(2, 3), Rational(2, 3), Rational(2, 3)});
  Packing tri;
  tri.open_bin().parts = {{0, Rational(1, 3)}, {1, Rational(1, 3)}};
  tri.open_bin().parts = {{1, Rational(1, 3)}, {2, Rational(1, 3)}};
  tri.open_bin().parts = {{2, Rational(1, 3)}, {0, Rational(1, 3)}};
  write_json(dir / "inst.json", to_json(inst));
  write_json(dir / "tri.json", to_json(tri));
  Run r = invoke({"normalize", "--input", dir / "tri.json", "--instance", dir / "inst.json", "--output",
               dir / "out.json", "--check"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == "bins_before=3 bins_after=2\nacyclic=1 smalls_are_leaves=1 degrees_bounded=1\n");
  CHECK(oracle::normal_form(inst, read_packing(dir / "out.json")).ok());

  tri.bins()[0].parts[0].amount = Rational(1, 6);
  write_json(dir / "bad.json", to_json(tri));
  CHECK(invoke({"normalize", "--input", dir / "bad.json", "--instance", dir / "inst.json"}).code ==
        cli::kVerification);
  write_json(dir / "k3.json", to_json(Instance(3, {Rational(2, 3), Rational(2, 3), Rational(2, 3)})));
  CHECK(invoke({"normalize", "--input", dir / "tri.json", "--instance", dir / "k3.json"}).code != cli::kOk);
}

TEST_CASE("experiments are deterministic") {
  TempDir dir;
  for (std::string suite : {"nf-ratio", "a75-ratio", "reduction-check", "normalize-check"}) {
    std::vector<std::string> args = {"experiment", suite, "--trials", "12", "--seed", "3"};
    if (suite == "reduction-check") args.insert(args.end(), {"--k", "4"});
    Run a = invoke(args);
    Run b = invoke(args);
    CHECK(a.code == cli::kOk);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\nsummary,") != std::string::npos);
    // header, 12 trials, summary
    CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 14);
    CHECK(a.err.find("violations=0") != std::string::npos);
  }
  Run f = invoke({"experiment", "nf-ratio", "--trials", "5", "--output", dir / "nf.csv"});
  CHECK(f.code == cli::kOk);
  CHECK(f.out.empty());
  CHECK(read_text(dir / "nf.csv") == invoke({"experiment", "nf-ratio", "--trials", "5"}).out);

  CHECK(invoke({"experiment", "ff-ratio"}).code == cli::kUsage);
  CHECK(invoke({"experiment", "reduction-check", "--k", "2"}).code == cli::kUsage);
  CHECK(invoke({"experiment", "nf-ratio", "--max-n", "0"}).code == cli::kUsage);
}

TEST_CASE("experiment budget rows are skipped") {
  Run r = invoke({"experiment", "nf-ratio", "--trials", "10", "--max-n", "8", "--budget", "items=2"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find(",skipped\n") != std::string::npos);
  CHECK(r.err.find("skipped=0") == std::string::npos);
}
