#pragma once

// INI-style experiment configuration.
//
//   [model]        m, alpha, k, mu, chi0, a, b
//   [grid]         dim, nx, ny, Lx, Ly          (dim is the model dimension n)
//   [time]         t_end, safety, dt_min, u_max
//   [init]         u0, v0                       (profile strings, see profiles.hpp)
//   [monitor]      p, tol_mass, tol_grad, tol_maxprin, cadence
//   [output]       dir, csv, json, dump_fields
//   [certificate]  q1, q2, p, k1_literal
//   [sweep]        mu_lo, mu_hi, bisection_steps
//   [oracle]       trials, seed, dim, nx, num_modes
//
// Every section and key is optional; unknown sections or keys, duplicate keys
// and malformed values are errors carrying the offending line number.
// Comments start with '#' or ';' at the beginning of a line.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chemo/certificates.hpp"
#include "chemo/grid.hpp"
#include "chemo/monitors.hpp"
#include "chemo/solver.hpp"

namespace chemo {

struct GridSpec {
  int dim = 1;
  int nx = 128;
  int ny = 128;
  double Lx = 1.0;
  double Ly = 1.0;

  Grid make() const;
};

// Both default bumps carry int u0 ~ 0.1 on the unit interval / square.
inline constexpr const char* kDefaultBump1D = "gaussian-bump(0.5, 0.05, 0.638, 0.02)";
inline constexpr const char* kDefaultBump2D = "gaussian-bump(0.5, 0.5, 0.1, 1.273, 0.02)";

struct InitSpec {
  std::string u0 = kDefaultBump1D;  // kDefaultBump2D when dim = 2
  std::string v0 = "constant(1)";
};

struct MonitorSpec {
  std::optional<double> p;  // unset: the certificate's p
  double tol_mass = 5e-2;
  double tol_grad = 5e-2;
  double tol_maxprin = 1e-8;
  double cadence = 0.1;
};

struct OutputSpec {
  std::string dir = "out";
  std::string csv = "run.csv";
  std::string json = "summary.json";
  bool dump_fields = false;
};

struct CertificateSpec {
  std::optional<double> q1;  // unset: n + 3
  std::optional<double> q2;  // unset: (n + 3) / 2
  std::optional<double> p;   // unset: ceil(p_bar)
  bool k1_literal = true;
};

struct SweepSpec {
  double mu_lo = 0.01;
  double mu_hi = 100.0;
  int bisection_steps = 8;
};

struct OracleSpec {
  int trials = 1000;
  std::uint64_t seed = 20240601;
  int dim = 2;  // oracle grid is dim-dimensional with nx cells per axis
  int nx = 64;
  int num_modes = 4;
};

struct RunConfig {
  ModelParams model;  // model.n mirrors grid.dim
  GridSpec grid;
  SolverConfig time;  // output cadence is taken from monitor.cadence
  InitSpec init;
  MonitorSpec monitor;
  OutputSpec output;
  CertificateSpec certificate;
  SweepSpec sweep;
  OracleSpec oracle;

  AuxiliaryExponents exponents() const;
  MonitorConfig monitor_config(double p_default) const;
  SolverConfig solver_config() const;
};

/// A `section.key=value` override, applied after the file is read.
struct Override {
  std::string section;
  std::string key;
  std::string value;
};

/// Parses "section.key=value". Throws ConfigError when malformed.
Override parse_override(std::string_view text);

/// Parses and validates. Overrides replace (or add) keys before validation.
RunConfig parse_config(std::string_view text, const std::vector<Override>& overrides = {});

RunConfig load_config(const std::filesystem::path& path, const std::vector<Override>& overrides = {});

}  // namespace chemo
