#pragma once

// Diagnostics for the a priori bounds: mass, gradient energy, the maximum
// principle for v, positivity of u, and the energy
//   Phi_p = int (u+1)^p + chi0^(2p) int |grad v|^(2p).

#include <span>
#include <string>
#include <vector>

#include "chemo/certificates.hpp"
#include "chemo/solver.hpp"

namespace chemo {

struct Violation {
  std::string bound_name;
  double bound_value = 0.0;
  double observed = 0.0;
};

struct MonitorRecord {
  double t = 0.0;
  double mass_u = 0.0;
  double sup_u = 0.0;
  double min_u = 0.0;
  double sup_v = 0.0;
  double gradv_l2sq = 0.0;
  double phi_p = 0.0;
  double dt = 0.0;
  std::vector<Violation> violations;
};

struct MonitorConfig {
  double p = 2.0;
  double tol_mass = 5e-2;
  double tol_grad = 5e-2;
  double tol_maxprin = 1e-8;
  double cadence = 0.0;  // time between records; 0 records only the endpoints

  void validate() const;
};

/// Phi_p with the cell-centered central gradient of v. Throws CorruptionError on overflow.
double phi(const SimState& state, double p, double chi0);

/// Measures the state and appends one violation per exceeded bound:
/// "mass" (m_mass), "gradv" (M_grad), "max_principle" (sup v0), "positivity" (min u).
MonitorRecord record(const SimState& state, double dt, const CertificateReport& cert, const MonitorConfig& cfg);

struct PhiTrend {
  bool bounded = false;
  double sup_phi = 0.0;
  double t_of_sup = 0.0;
};

/// Relative growth allowed in the trailing window before it counts as terminal growth.
inline constexpr double kPhiTrendTolerance = 5e-2;

/// bounded iff sup_phi is finite and the maximum over the last 25% of records
/// does not exceed the maximum over the preceding records by more than
/// kPhiTrendTolerance (relative). Needs at least two records.
PhiTrend phi_trend(std::span<const MonitorRecord> records);

}  // namespace chemo
