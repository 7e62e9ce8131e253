#include "chemo/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>

#include "chemo/error.hpp"
#include "chemo/profiles.hpp"

namespace chemo {

namespace {

// JSON has no infinities; they serialize as null either way, make it explicit.
Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

template <class T>
Json optional_json(const std::optional<T>& x) {
  return x ? Json(*x) : Json(nullptr);
}

std::filesystem::path output_dir(const RunConfig& config, const CommandOptions& options) {
  return options.out_dir.value_or(std::filesystem::path(config.output.dir));
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void emit(const Json& j, const std::filesystem::path& path, std::ostream& out) {
  const std::string text = dump(j);
  write_text(path, text);
  out << text;
}

Json params_json(const ModelParams& p) {
  return Json{{"n", p.n},   {"m", p.m},       {"alpha", p.alpha}, {"k", p.k},
              {"mu", p.mu}, {"chi0", p.chi0}, {"a", p.a},         {"b", p.b}};
}

void append_csv_number(std::string& line, double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  line += buf;
}

}  // namespace

CertificateReport certify(const RunConfig& config) {
  const InitialFields fields = build_initial_data(config.grid.make(), config.init.u0, config.init.v0);
  return check_theorem_condition(config.model, config.exponents(), summarize(fields), config.certificate.k1_literal);
}

Json certificate_json(const CertificateReport& r) {
  Json j{{"schema", kJsonSchema},
         {"satisfied", r.satisfied},
         {"lemma_condition", r.lemma_condition},
         {"mu", r.params.mu},
         {"mu_min", number_or_null(r.mu_min)},
         {"p_bar", r.p_bar},
         {"p_used", r.p_used},
         {"k1", number_or_null(r.k1)},
         {"k2", number_or_null(r.k2)},
         {"k1_literal", r.k1_literal},
         {"m_mass", number_or_null(r.m_mass)},
         {"M_grad", number_or_null(r.M_grad)},
         {"exponents", {{"q1", r.exponents.q1}, {"q2", r.exponents.q2}, {"p", r.exponents.p}}},
         {"initial",
          {{"v0_sup", r.initial.v0_sup},
           {"u0_mass", r.initial.u0_mass},
           {"gradv0_l2sq", r.initial.gradv0_l2sq},
           {"domain_volume", r.initial.domain_volume}}},
         {"params", params_json(r.params)}};
  if (r.constants) {
    const EnergyConstants& c = *r.constants;
    j["constants"] = {{"eps1", c.eps1}, {"eps2", c.eps2}, {"eps3", c.eps3}, {"delta1", c.delta1}, {"C1", c.C1},
                      {"C2", c.C2},     {"C3", c.C3},     {"c0", c.c0},     {"D1", c.D1}};
  } else {
    j["constants"] = nullptr;
  }
  return j;
}

bool RunReport::bounded() const {
  return result.status == RunStatus::completed && violations.empty() && trend && trend->bounded;
}

int RunReport::exit_code() const {
  switch (result.status) {
    case RunStatus::completed:
      return violations.empty() ? kExitOk : kExitViolation;
    case RunStatus::blowup_detected:
    case RunStatus::dt_underflow:
      return kExitBlowup;
    case RunStatus::corrupted:
      return kExitError;
  }
  return kExitError;
}

RunReport execute_run(const RunConfig& config) {
  const Grid grid = config.grid.make();
  InitialFields fields = build_initial_data(grid, config.init.u0, config.init.v0);
  CertificateReport cert =
      check_theorem_condition(config.model, config.exponents(), summarize(fields), config.certificate.k1_literal);
  const MonitorConfig monitor = config.monitor_config(cert.p_used);
  monitor.validate();

  std::vector<MonitorRecord> records;
  auto hook = [&](const SimState& state, double dt) {
    // A corrupted terminal state cannot be measured; the run status reports it.
    if (!state.u.all_finite() || !state.v.all_finite()) return;
    try {
      records.push_back(record(state, dt, cert, monitor));
    } catch (const CorruptionError&) {
    }
  };
  RunResult result = run(SimState{0.0, std::move(fields.u0), std::move(fields.v0)}, config.model,
                         config.solver_config(), hook);

  RunReport report{std::move(result), std::move(cert), std::move(records), {}, std::nullopt, false};
  report.t_end_reached = report.result.final_state.t >= config.time.t_end;
  for (const MonitorRecord& rec : report.records) {
    for (const Violation& v : rec.violations) {
      auto it = std::find_if(report.violations.begin(), report.violations.end(),
                             [&](const ViolationSummary& s) { return s.bound_name == v.bound_name; });
      if (it == report.violations.end()) {
        report.violations.push_back({v.bound_name, v.bound_value, v.observed, rec.t, 1});
        continue;
      }
      ++it->count;
      // positivity tracks the minimum, every other bound the maximum.
      it->worst_observed = v.bound_name == "positivity" ? std::min(it->worst_observed, v.observed)
                                                          : std::max(it->worst_observed, v.observed);
    }
  }
  if (report.records.size() >= 2) report.trend = phi_trend(report.records);
  return report;
}

std::string records_csv(const std::vector<MonitorRecord>& records) {
  std::string text = kCsvHeader;
  text += '\n';
  for (const MonitorRecord& r : records) {
    const double values[] = {r.t, r.mass_u, r.sup_u, r.min_u, r.sup_v, r.gradv_l2sq, r.phi_p, r.dt};
    for (std::size_t i = 0; i < std::size(values); ++i) {
      if (i > 0) text += ',';
      append_csv_number(text, values[i]);
    }
    text += '\n';
  }
  return text;
}

Json run_summary_json(const RunReport& r) {
  Json violations = Json::array();
  for (const ViolationSummary& v : r.violations) {
    violations.push_back({{"bound", v.bound_name},
                          {"bound_value", v.bound_value},
                          {"worst_observed", v.worst_observed},
                          {"first_t", v.first_t},
                          {"count", v.count}});
  }
  Json phi = nullptr;
  if (r.trend) phi = {{"sup", number_or_null(r.trend->sup_phi)}, {"t_of_sup", r.trend->t_of_sup}};
  return Json{{"schema", kJsonSchema},
              {"status", to_string(r.result.status)},
              {"exit_code", r.exit_code()},
              {"t_end_reached", r.t_end_reached},
              {"t_final", r.result.final_state.t},
              {"steps", r.result.steps},
              {"sup_u_max", number_or_null(r.result.sup_u_max)},
              {"phi_bounded", r.trend ? Json(r.trend->bounded) : Json(nullptr)},
              {"phi", phi},
              {"records", r.records.size()},
              {"detail", r.result.detail},
              {"violations", violations},
              {"certificate", certificate_json(r.certificate)}};
}

namespace {

SweepRun sweep_probe(const RunConfig& base, double mu) {
  RunConfig config = base;
  config.model.mu = mu;
  SweepRun run;
  run.mu = mu;
  try {
    const RunReport report = execute_run(config);
    run.status = to_string(report.result.status);
    run.bounded = report.bounded();
    for (const auto& v : report.violations) run.violations += v.count;
    run.sup_u_max = report.result.sup_u_max;
    run.phi_bounded = report.trend && report.trend->bounded;
    run.detail = report.result.detail;
  } catch (const std::exception& e) {
    run.status = "error";
    run.detail = e.what();
  }
  return run;
}

}  // namespace

SweepReport execute_sweep(const RunConfig& config) {
  const SweepSpec& spec = config.sweep;
  SweepReport report;
  {
    RunConfig at_hi = config;
    at_hi.model.mu = spec.mu_hi;
    report.mu_min_certificate = certify(at_hi).mu_min;
  }

  auto lo_future = std::async(std::launch::async, sweep_probe, std::cref(config), spec.mu_lo);
  SweepRun hi_run = sweep_probe(config, spec.mu_hi);
  report.runs.push_back(lo_future.get());
  report.runs.push_back(std::move(hi_run));

  double lo = spec.mu_lo;
  double hi = spec.mu_hi;
  for (int i = 0; i < spec.bisection_steps; ++i) {
    const double mid = 0.5 * (lo + hi);
    report.runs.push_back(sweep_probe(config, mid));
    (report.runs.back().bounded ? hi : lo) = mid;
  }

  if (std::all_of(report.runs.begin(), report.runs.end(), [](const SweepRun& r) { return r.status == "error"; }))
    throw std::runtime_error("every sweep run failed: " + report.runs.front().detail);

  for (const SweepRun& r : report.runs)
    if (r.bounded && (!report.mu_empirical_hi || r.mu < *report.mu_empirical_hi)) report.mu_empirical_hi = r.mu;
  for (const SweepRun& r : report.runs) {
    if (r.bounded || (report.mu_empirical_hi && r.mu >= *report.mu_empirical_hi)) continue;
    if (!report.mu_empirical_lo || r.mu > *report.mu_empirical_lo) report.mu_empirical_lo = r.mu;
  }
  if (report.mu_empirical_hi) report.consistent = *report.mu_empirical_hi <= report.mu_min_certificate;
  return report;
}

Json sweep_json(const SweepReport& r) {
  Json runs = Json::array();
  for (const SweepRun& run : r.runs) {
    runs.push_back({{"mu", run.mu},
                    {"status", run.status},
                    {"bounded", run.bounded},
                    {"violations", run.violations},
                    {"sup_u_max", number_or_null(run.sup_u_max)},
                    {"phi_bounded", run.phi_bounded},
                    {"detail", run.detail}});
  }
  return Json{{"schema", kJsonSchema},
              {"mu_empirical_lo", optional_json(r.mu_empirical_lo)},
              {"mu_empirical_hi", optional_json(r.mu_empirical_hi)},
              {"mu_min_certificate", number_or_null(r.mu_min_certificate)},
              {"consistent", optional_json(r.consistent)},
              {"runs", runs}};
}

bool VerifyReport::all_passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const OracleVerdict& v) { return v.passed; });
}

VerifyReport execute_verify(const RunConfig& config, bool poison_d3) {
  const OracleSpec& spec = config.oracle;
  OracleConfig base;
  base.trials = spec.trials;
  base.seed = spec.seed;
  base.num_modes = spec.num_modes;
  base.poison_d3 = poison_d3;
  base.grid = spec.dim == 1 ? Grid(spec.nx, 1.0) : Grid(spec.nx, spec.nx, 1.0, 1.0);

  VerifyReport report;
  report.verdicts.push_back(verify_laplacian_vs_hessian(base));
  report.verdicts.push_back(verify_hessian_gradient(base));

  // The integral inequality on the nominal grid and one refinement either side.
  OracleVerdict integral{"gradient_power_hessian", 0, std::numeric_limits<double>::infinity(), 0.0, true};
  for (const int nx : {std::max(4, spec.nx / 2), spec.nx, 2 * spec.nx}) {
    OracleConfig cfg = base;
    cfg.trials = std::max(1, spec.trials / 5);
    cfg.grid = spec.dim == 1 ? Grid(nx, 1.0) : Grid(nx, nx, 1.0, 1.0);
    const OracleVerdict v = verify_gradient_power_hessian(cfg, 2.0);
    integral.trials_run += v.trials_run;
    integral.worst_margin = std::min(integral.worst_margin, v.worst_margin);
    integral.slack = std::max(integral.slack, v.slack);
    integral.passed = integral.passed && v.passed;
  }
  report.verdicts.push_back(integral);

  report.verdicts.push_back(verify_young_combination(base));

  OracleVerdict relations = verify_pbar_relations_random(base, std::max(1, spec.trials / 10));
  const AuxiliaryExponents exps = config.exponents();
  const OracleVerdict own =
      verify_pbar_relations(base, config.model.n, config.model.m, config.model.alpha, exps.q1, exps.q2);
  relations.inequality_name = "pbar_relations";
  relations.trials_run += own.trials_run;
  relations.worst_margin = std::min(relations.worst_margin, own.worst_margin);
  relations.passed = relations.passed && own.passed;
  report.verdicts.push_back(relations);

  report.gn = estimate_gn_constant(base);
  return report;
}

Json verify_json(const VerifyReport& r) {
  Json verdicts = Json::array();
  for (const OracleVerdict& v : r.verdicts) {
    verdicts.push_back({{"name", v.inequality_name},
                        {"trials_run", v.trials_run},
                        {"worst_margin", number_or_null(v.worst_margin)},
                        {"slack", v.slack},
                        {"passed", v.passed}});
  }
  return Json{{"schema", kJsonSchema},
              {"all_passed", r.all_passed()},
              {"verdicts", verdicts},
              {"gn_constant_estimate",
               {{"value", number_or_null(r.gn.constant)}, {"trials_run", r.gn.trials_run}, {"finite", r.gn.finite}}}};
}

int cmd_certify(const RunConfig& config, const CommandOptions& options, std::ostream& out) {
  emit(certificate_json(certify(config)), output_dir(config, options) / "certificate.json", out);
  return kExitOk;
}

int cmd_run(const RunConfig& config, const CommandOptions& options, std::ostream& out) {
  const RunReport report = execute_run(config);
  const std::filesystem::path dir = output_dir(config, options);
  write_text(dir / config.output.csv, records_csv(report.records));
  if (options.dump_fields || config.output.dump_fields) {
    for (const auto& [name, field] : {std::pair{"u_final.csv", &report.result.final_state.u},
                                      std::pair{"v_final.csv", &report.result.final_state.v}}) {
      std::ofstream f(dir / name, std::ios::binary);
      if (!f) throw std::runtime_error("cannot write field dump '" + (dir / name).string() + "'");
      write_field_csv(f, *field);
    }
  }
  emit(run_summary_json(report), dir / config.output.json, out);
  return report.exit_code();
}

int cmd_sweep(const RunConfig& config, const CommandOptions& options, std::ostream& out) {
  emit(sweep_json(execute_sweep(config)), output_dir(config, options) / "sweep.json", out);
  return kExitOk;
}

int cmd_verify(const RunConfig& config, const CommandOptions& options, std::ostream& out) {
  RunConfig c = config;
  if (options.seed) c.oracle.seed = *options.seed;
  const VerifyReport report = execute_verify(c, options.poison_d3);
  emit(verify_json(report), output_dir(config, options) / "verify.json", out);
  return report.all_passed() ? kExitOk : kExitOracleFailure;
}

}  // namespace chemo
