#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "bethe/experiments.hpp"

using namespace bethe;
using nlohmann::json;

namespace {

std::string read_all(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("defaults fill in when the config is empty") {
    const RunConfig cfg = config_from_json(json::object());
    CHECK(cfg.kind == ExperimentKind::identity_suite);
    CHECK(cfg.tol == 1e-7);
    CHECK(cfg.truncation == 4);
    CHECK(cfg.potential.size() == 1);
    CHECK(cfg.potential.at({0, 1}) == 2.0);
    CHECK(cfg.weight_desc == "sin_power 4");
  }

  TEST_CASE("unknown keys are rejected with their location") {
    try {
      config_from_json(json::parse(R"({"potential": {"seedd": 1}})"));
      FAIL("expected a throw");
    } catch (const std::exception& e) {
      CHECK(std::string(e.what()).find("/potential/seedd") !=
            std::string::npos);
    }
    CHECK_THROWS(config_from_json(json::parse(R"({"tol": -1})")));
    CHECK_THROWS(config_from_json(json::parse(R"({"experiment": "nope"})")));
    CHECK_THROWS(
        config_from_json(json::parse(R"({"weight": {"sin_power": 3}})")));
    CHECK_THROWS(config_from_json(json::parse(R"({"n_list": [9]})")));
    CHECK_THROWS(config_from_json(json::parse(
        R"({"potential": {"values": [{"depth": 2, "index": 5, "v": 1}]}})")));
  }

  TEST_CASE("potential forms parse") {
    const RunConfig seeded = config_from_json(
        json::parse(R"({"potential": {"seeded": {"seed": 7}}})"));
    REQUIRE(seeded.seed.has_value());
    CHECK(*seeded.seed == 7);
    CHECK(seeded.potential.support_depth() == 3);

    const RunConfig radial = config_from_json(
        json::parse(R"({"potential": {"radial": [1.0, 0.5]}})"));
    CHECK(radial.potential.is_radial());
    CHECK(radial.potential.at({1, 2}) == 0.5);

    const RunConfig vals = config_from_json(json::parse(
        R"({"potential": {"values": [{"depth": 1, "index": 2, "v": -1.5}]}})"));
    CHECK(vals.potential.at({1, 2}) == -1.5);
  }

  TEST_CASE("identity suite passes on the default model") {
    RunConfig cfg = config_from_json(json::object());
    const RunResult res = run_experiment(cfg);
    CHECK(res.ok);
    REQUIRE(res.rows.size() == 11);
    for (const ReportRow& r : res.rows) {
      CHECK(r.experiment_id == "identity-suite");
      CHECK(r.residual < 1e-7);
    }
    CHECK(res.summary["ok"].get<bool>());
    CHECK(res.summary["calibration"]["kappa_m"].get<double>() ==
          doctest::Approx(0.70710678118654752).epsilon(1e-12));
  }

  TEST_CASE("eigenvalue run recovers the rank-one point") {
    RunConfig cfg = config_from_json(json::parse(R"({"experiment":
        "eigenvalues"})"));
    const RunResult res = run_experiment(cfg);
    CHECK(res.ok);
    REQUIRE(res.rows.size() == 2);
    CHECK(res.rows[0].lhs == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(res.rows[0].residual < 1e-8);
    CHECK(res.rows[1].lhs == 1.0);
    CHECK(res.rows[1].rhs == 1.0);
  }

  TEST_CASE("difference-form run reports its failure honestly") {
    RunConfig cfg = config_from_json(json::parse(R"({"experiment":
        "conjecture-form"})"));
    const RunResult res = run_experiment(cfg);
    CHECK(!res.ok);  // the x^2 - 4 half is out of tolerance by design
    bool saw_green_a1 = false, saw_red_x2m4 = false;
    for (const ReportRow& r : res.rows) {
      if (r.identity_kind == "norm-identity")
        saw_green_a1 = r.residual < 1e-10;
      if (r.identity_kind == "x2m4-identity")
        saw_red_x2m4 = r.residual > 1.0;
    }
    CHECK(saw_green_a1);
    CHECK(saw_red_x2m4);
  }

  TEST_CASE("reports round trip through the filesystem") {
    RunConfig cfg = config_from_json(json::object());
    const RunResult res = run_experiment(cfg);

    const auto dir = std::filesystem::temp_directory_path() / "bethe_rep_test";
    std::filesystem::create_directories(dir);
    write_report_csv(dir / "report.csv", res.rows);
    write_summary_json(dir / "summary.json", res.summary);

    const std::string csv = read_all(dir / "report.csv");
    CHECK(csv.rfind("experiment_id,identity_kind,lhs,rhs,residual_or_slack,"
                    "nodes,runtime_ms\n",
                    0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') ==
          static_cast<long>(res.rows.size()) + 1);

    const json summary = json::parse(read_all(dir / "summary.json"));
    CHECK(summary["experiment"] == "identity-suite");
    CHECK(summary["rows"].size() == res.rows.size());
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("identical configs give identical numbers") {
    const json doc = json::parse(
        R"({"potential": {"seeded": {"seed": 13, "depth": 2}}})");
    const RunResult a = run_experiment(config_from_json(doc));
    const RunResult b = run_experiment(config_from_json(doc));
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      CHECK(a.rows[i].lhs == b.rows[i].lhs);
      CHECK(a.rows[i].rhs == b.rows[i].rhs);
      CHECK(a.rows[i].residual == b.rows[i].residual);
      CHECK(a.rows[i].nodes == b.rows[i].nodes);
    }
  }

  TEST_CASE("experiment names round trip") {
    for (const auto kind :
         {ExperimentKind::identity_suite, ExperimentKind::eigenvalues,
          ExperimentKind::ledger_inequality, ExperimentKind::main_lemma,
          ExperimentKind::radial_compare, ExperimentKind::conjecture_form_run,
          ExperimentKind::hypothesis_scan}) {
      const json doc = {{"experiment", kind_name(kind)}};
      CHECK(config_from_json(doc).kind == kind);
    }
  }
}
