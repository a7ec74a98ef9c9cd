// Copyright 2026 The domcheck authors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end tests of the command-line surface: exit codes, report shapes
// against the shipped schemas, CSV output, and manifest-based reruns.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "domcheck/json_io.hpp"
#include "support/schema_check.hpp"

namespace fs = std::filesystem;
using domcheck::json;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path unique_dir() {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() /
                       ("domcheck_cli_" + std::to_string(::getpid()) + "_" +
                        std::to_string(counter++));
  fs::create_directories(dir);
  return dir;
}

CliResult run_cli(const std::string& args) {
  const fs::path dir = unique_dir();
  const fs::path out = dir / "stdout.txt";
  const fs::path err = dir / "stderr.txt";
  const std::string cmd = std::string(DOMCHECK_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int rc = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = domcheck::read_file(out.string());
  r.err = domcheck::read_file(err.string());
  return r;
}

void write_json(const fs::path& path, const json& j) {
  domcheck::write_file(path.string(), j.dump(2) + "\n");
}

fs::path write_instance_matrices(const fs::path& dir) {
  const auto pair =
      domcheck::build_example(domcheck::ExampleParams::paper_instance());
  write_json(dir / "S.json", domcheck::operator_to_json(pair.S));
  write_json(dir / "T.json", domcheck::operator_to_json(pair.T));
  return dir;
}

void check_schema(const std::string& name, const json& doc) {
  const auto violations = schema_check::validate(DOMCHECK_SCHEMA_DIR, name, doc);
  for (const auto& v : violations) UNSCOPED_INFO(v);
  CHECK(violations.empty());
}

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("norms --help").exit_code == 0);
  CHECK(run_cli("--no-such-flag").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);  // a subcommand is required
}

TEST_CASE("norms on the instance matrices") {
  const fs::path dir = write_instance_matrices(unique_dir());
  const auto r = run_cli("norms --s " + (dir / "S.json").string() + " --t " +
                         (dir / "T.json").string() + " --horizon 3");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  check_schema("norms_report.schema.json", doc);
  CHECK(doc.at("norm_s") == "1");
  CHECK(doc.at("norm_t") == "1/4");
  CHECK(doc.at("dominates") == true);
  CHECK(doc.at("separation").at("d") == json::array({"1", "5/6", "25/36"}));
  CHECK(doc.at("n0") == 2);
}

TEST_CASE("norms with S = T") {
  const fs::path dir = write_instance_matrices(unique_dir());
  const auto r = run_cli("norms --s " + (dir / "S.json").string() + " --t " +
                         (dir / "S.json").string() + " --horizon 4");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.at("separation").at("d") == json::array({"0", "0", "0", "0"}));
  CHECK(doc.at("n0") == 1);
}

TEST_CASE("norms input failures exit 2") {
  const fs::path dir = unique_dir();
  domcheck::write_file((dir / "ragged.json").string(),
                       R"({"dim": 2, "entries": [[1, 2], [3]]})");
  domcheck::write_file((dir / "tiny.json").string(),
                       R"({"dim": 1, "entries": [[1]]})");
  write_instance_matrices(dir);

  auto r = run_cli("norms --s " + (dir / "ragged.json").string() + " --t " +
                   (dir / "T.json").string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("ragged") != std::string::npos);

  r = run_cli("norms --s " + (dir / "S.json").string() + " --t " +
              (dir / "tiny.json").string());
  CHECK(r.exit_code == 2);  // dimension mismatch

  r = run_cli("norms --s " + (dir / "absent.json").string() + " --t " +
              (dir / "T.json").string());
  CHECK(r.exit_code == 2);
}

TEST_CASE("norms csv format") {
  const fs::path dir = write_instance_matrices(unique_dir());
  const auto r = run_cli("--format csv norms --s " + (dir / "S.json").string() +
                         " --t " + (dir / "T.json").string() + " --horizon 2");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out == "n,d\n1,1\n2,5/6\n");
}

TEST_CASE("example subcommand") {
  SECTION("the instance cross-validates") {
    const auto r = run_cli("example --paper-instance --horizon 8");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    check_schema("example_report.schema.json", doc);
    CHECK(doc.at("cross_validate") == true);
    CHECK(doc.at("n0") == 2);
    CHECK(doc.at("corollary_applicable") == false);
    CHECK(doc.at("closed_form").at("norm_s2_minus_t2") == "5/6");
    CHECK(doc.at("engine") == doc.at("closed_form"));
  }
  SECTION("explicit parameters") {
    const auto r = run_cli(
        "example --A 1/2 --B 1/3 --C 1/2 --D 1/3 --lambda 1/4 --horizon 3");
    REQUIRE(r.exit_code == 0);
    CHECK(json::parse(r.out).at("n0") == 2);
  }
  SECTION("violated dominance is named on exit 2") {
    const auto r = run_cli(
        "example --A 1/2 --B 1/3 --C 1/2 --D 1/3 --lambda 1/2");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("dominance") != std::string::npos);
  }
  SECTION("missing parameters exit 2") {
    CHECK(run_cli("example --A 1/2").exit_code == 2);
  }
  SECTION("malformed rational exits 2") {
    CHECK(run_cli("example --A 0.5 --B 1/3 --C 1/2 --D 1/3 --lambda 1/4")
              .exit_code == 2);
  }
}

TEST_CASE("example sweep emits a CSV grid") {
  const auto r = run_cli("--format csv example --sweep --sweep-step 1/2 --horizon 6");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.rfind("A,B,C,D,lambda,n0\n", 0) == 0);
  // the instance family at step 1/2 contains at least the zero tuple and
  // several boundary tuples
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') > 5);

  const auto rj = run_cli("example --sweep --sweep-step 1/2 --horizon 6");
  REQUIRE(rj.exit_code == 0);
  check_schema("example_sweep_report.schema.json", json::parse(rj.out));
}

TEST_CASE("verify subcommand") {
  SECTION("clean campaign exits 0") {
    const auto r = run_cli("--seed 2024 verify --trials 40 --dim-min 2 "
                           "--dim-max 5 --horizon 12");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    check_schema("verify_report.schema.json", doc);
    CHECK(doc.at("counts").at("violations") == 0);
    CHECK(doc.at("counts").at("trials") == 40);
    CHECK(!doc.contains("trials"));
  }
  SECTION("per-trial rows appear with --emit-trials") {
    const auto r = run_cli("--seed 7 verify --trials 10 --horizon 8 --emit-trials");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    check_schema("verify_report.schema.json", doc);
    REQUIRE(doc.contains("trials"));
    CHECK(doc.at("trials").size() == 10);
  }
  SECTION("bad config exits 2") {
    CHECK(run_cli("verify --trials 0").exit_code == 2);
    CHECK(run_cli("verify --trials 5 --density 1").exit_code == 2);
    CHECK(run_cli("verify --trials 5 --density nonsense").exit_code == 2);
    CHECK(run_cli("verify --trials 5 --horizon 65").exit_code == 2);
  }
  SECTION("config can come from a JSON file") {
    const fs::path dir = unique_dir();
    write_json(dir / "campaign.json",
               json{{"master_seed", 4242},
                    {"trials", 12},
                    {"dim_min", 2},
                    {"dim_max", 4},
                    {"horizon", 9},
                    {"density", "1/3"},
                    {"magnitude_grid", 8},
                    {"stochastic_column_fraction", "1/4"}});
    const auto r = run_cli("verify --config " + (dir / "campaign.json").string());
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc.at("counts").at("trials") == 12);
    CHECK(doc.at("manifest").at("master_seed") == 4242);
    CHECK(doc.at("manifest").at("config").at("horizon") == 9);
  }
}

TEST_CASE("verify reruns byte-identically from its manifest") {
  const fs::path dir_a = unique_dir();
  const fs::path dir_b = unique_dir();
  const auto r1 = run_cli("--seed 123 --out " + dir_a.string() +
                          " verify --trials 25 --dim-max 5 --horizon 10 "
                          "--emit-trials --threads 1");
  REQUIRE(r1.exit_code == 0);
  const auto r2 = run_cli("--out " + dir_b.string() + " verify --from-manifest " +
                          (dir_a / "verify_report.json").string() +
                          " --emit-trials --threads 3");
  REQUIRE(r2.exit_code == 0);

  json a = domcheck::parse_json_file((dir_a / "verify_report.json").string());
  json b = domcheck::parse_json_file((dir_b / "verify_report.json").string());
  domcheck::scrub_volatile_fields(a);
  domcheck::scrub_volatile_fields(b);
  CHECK(a.dump() == b.dump());

  // the CSV side carries the full trial table and must match exactly
  CHECK(domcheck::read_file((dir_a / "verify.csv").string()) ==
        domcheck::read_file((dir_b / "verify.csv").string()));
}

TEST_CASE("search-lp subcommand") {
  SECTION("p = 1 is rejected") {
    const auto r = run_cli("search-lp --p 1 --trials 2");
    CHECK(r.exit_code == 2);
  }
  SECTION("small clean run") {
    const auto r = run_cli("--seed 5 search-lp --p 2 --trials 5 --dim-max 3 "
                           "--horizon 4 --max-iter 200");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    check_schema("search_lp_report.schema.json", doc);
    CHECK(doc.at("pairs_checked") == 5);
    CHECK(doc.at("candidates").is_array());
  }
  SECTION("rerun from manifest is identical") {
    const fs::path dir_a = unique_dir();
    const fs::path dir_b = unique_dir();
    const auto r1 = run_cli("--seed 99 --out " + dir_a.string() +
                            " search-lp --p 1.5 --p 2 --trials 6 --dim-max 3 "
                            "--horizon 4 --max-iter 150 --threads 1");
    REQUIRE(r1.exit_code == 0);
    const auto r2 = run_cli("--out " + dir_b.string() +
                            " search-lp --from-manifest " +
                            (dir_a / "search_lp_report.json").string() +
                            " --threads 2");
    REQUIRE(r2.exit_code == 0);
    json a = domcheck::parse_json_file((dir_a / "search_lp_report.json").string());
    json b = domcheck::parse_json_file((dir_b / "search_lp_report.json").string());
    domcheck::scrub_volatile_fields(a);
    domcheck::scrub_volatile_fields(b);
    CHECK(a.dump() == b.dump());
  }
}

TEST_CASE("DOMCHECK_OUT provides the default output directory") {
  const fs::path dir = write_instance_matrices(unique_dir());
  const fs::path out_dir = unique_dir() / "reports";
  ::setenv("DOMCHECK_OUT", out_dir.c_str(), 1);
  const auto r = run_cli("norms --s " + (dir / "S.json").string() + " --t " +
                         (dir / "T.json").string() + " --horizon 2");
  ::unsetenv("DOMCHECK_OUT");
  REQUIRE(r.exit_code == 0);
  CHECK(fs::exists(out_dir / "norms_report.json"));
  CHECK(fs::exists(out_dir / "norms.csv"));
}
