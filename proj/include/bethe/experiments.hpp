// Experiment orchestration: configuration ingestion, seeded ensembles,
// dispatch into the computational modules, and CSV/JSON report files.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bethe/conformal.hpp"
#include "bethe/potential.hpp"

namespace bethe {

enum class ExperimentKind {
  identity_suite,
  eigenvalues,
  ledger_inequality,
  main_lemma,
  radial_compare,
  conjecture_form_run,
  hypothesis_scan,
};

std::string kind_name(ExperimentKind k);

struct RunConfig {
  ExperimentKind kind = ExperimentKind::identity_suite;
  Potential potential;
  std::string potential_desc;  // provenance echo for the summary
  std::optional<std::uint64_t> seed;
  CosSeries weight;  // resolved weight, default 16 sin^4
  std::string weight_desc;
  std::vector<double> conjecture_poly{-4.0, 0.0, 1.0};
  double tol = 1e-7;
  int theta_max_nodes = 1 << 16;
  int zeta_samples = 5;
  int truncation = 4;  // N for ledger and boundary-product runs
  std::vector<int> n_list{1, 2, 3, 4, 5, 6};
  int scan_two_p = 4;
  int scan_delta_start = 2;
  std::filesystem::path out_dir = ".";
  nlohmann::json echo;  // original document, for the summary
};

// Validates the document against the fixed schema. Unknown keys are rejected
// with their JSON path; tolerances must be positive.
RunConfig config_from_json(const nlohmann::json& doc);
RunConfig config_from_file(const std::filesystem::path& path);

struct ReportRow {
  std::string experiment_id;
  std::string identity_kind;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;  // residual for identities, slack for inequalities
  int nodes = 0;
  double runtime_ms = 0.0;
  bool tolerance_checked = true;  // trend rows are reported, not gated
  bool is_slack = false;          // slack rows pass when >= -tol
};

struct RunResult {
  std::vector<ReportRow> rows;
  nlohmann::json summary;
  bool ok = true;  // every gated row met the tolerance
};

RunResult run_experiment(const RunConfig& cfg);

// report.csv with the fixed column header; numbers printed at full precision
void write_report_csv(const std::filesystem::path& path,
                      const std::vector<ReportRow>& rows);
void write_summary_json(const std::filesystem::path& path,
                        const nlohmann::json& summary);

}  // namespace bethe
