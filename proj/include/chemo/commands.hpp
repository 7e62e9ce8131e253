#pragma once

// The four subcommands behind the `chemo` tool. Each has a data-level entry
// point (returns the report) and a cmd_* wrapper that writes files and maps
// the outcome to an exit code.
//
// Exit codes: 0 ok, 1 error, 2 blow-up or dt underflow, 3 completed with
// bound violations, 4 oracle failure.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "chemo/config.hpp"
#include "chemo/monitors.hpp"
#include "chemo/oracle.hpp"

namespace chemo {

using Json = nlohmann::ordered_json;

inline constexpr int kJsonSchema = 1;

enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  kExitBlowup = 2,
  kExitViolation = 3,
  kExitOracleFailure = 4,
};

inline constexpr const char* kCsvHeader = "t,mass_u,sup_u,min_u,sup_v,gradv_l2sq,phi_p,dt";

struct CommandOptions {
  std::optional<std::filesystem::path> out_dir;  // overrides [output] dir
  std::optional<std::uint64_t> seed;             // overrides [oracle] seed
  bool dump_fields = false;                      // or'ed with [output] dump_fields
  bool poison_d3 = false;
};

CertificateReport certify(const RunConfig& config);
Json certificate_json(const CertificateReport& report);

/// Violations folded per bound over all records.
struct ViolationSummary {
  std::string bound_name;
  double bound_value = 0.0;
  double worst_observed = 0.0;
  double first_t = 0.0;
  int count = 0;
};

struct RunReport {
  RunResult result;
  CertificateReport certificate;
  std::vector<MonitorRecord> records;
  std::vector<ViolationSummary> violations;
  std::optional<PhiTrend> trend;  // absent with fewer than two records
  bool t_end_reached = false;

  bool bounded() const;  // completed, no violations, phi bounded
  int exit_code() const;
};

RunReport execute_run(const RunConfig& config);

/// Header line plus one line per record, every value printed with %.17g.
std::string records_csv(const std::vector<MonitorRecord>& records);
Json run_summary_json(const RunReport& report);

struct SweepRun {
  double mu = 0.0;
  std::string status;  // run status, or "error"
  bool bounded = false;
  int violations = 0;
  double sup_u_max = 0.0;
  bool phi_bounded = false;
  std::string detail;
};

struct SweepReport {
  std::optional<double> mu_empirical_lo;  // largest unbounded mu below mu_empirical_hi
  std::optional<double> mu_empirical_hi;  // smallest mu observed bounded
  double mu_min_certificate = 0.0;
  std::optional<bool> consistent;  // mu_empirical_hi <= mu_min_certificate, when defined
  std::vector<SweepRun> runs;      // endpoints first, then probes in order
};

/// Runs mu_lo and mu_hi (concurrently), then `bisection_steps` probes at the
/// bracket midpoint, moving the upper end down on a bounded run.
SweepReport execute_sweep(const RunConfig& config);
Json sweep_json(const SweepReport& report);

struct VerifyReport {
  std::vector<OracleVerdict> verdicts;
  GnEstimate gn;
  bool all_passed() const;
};

VerifyReport execute_verify(const RunConfig& config, bool poison_d3 = false);
Json verify_json(const VerifyReport& report);

int cmd_certify(const RunConfig& config, const CommandOptions& options, std::ostream& out);
int cmd_run(const RunConfig& config, const CommandOptions& options, std::ostream& out);
int cmd_sweep(const RunConfig& config, const CommandOptions& options, std::ostream& out);
int cmd_verify(const RunConfig& config, const CommandOptions& options, std::ostream& out);

}  // namespace chemo
