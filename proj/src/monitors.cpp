#include "chemo/monitors.hpp"

#include <algorithm>
#include <cmath>

#include "chemo/error.hpp"

namespace chemo {

void MonitorConfig::validate() const {
  if (!(p >= 1.0)) throw DomainError("monitor exponent p must be >= 1");
  if (!(tol_mass > 0.0 && tol_grad > 0.0 && tol_maxprin > 0.0)) throw DomainError("monitor tolerances must be positive");
  if (cadence < 0.0) throw DomainError("monitor cadence must be nonnegative");
}

double phi(const SimState& state, double p, double chi0) {
  if (!(p >= 1.0)) throw DomainError("phi requires p >= 1");
  ScalarField density(state.u.grid());
  for (std::size_t c = 0; c < density.size(); ++c) density[c] = std::pow(state.u[c] + 1.0, p);
  double value = integrate(density);

  if (chi0 != 0.0) {
    const auto grad = gradient_cells(state.v);
    ScalarField energy(state.v.grid());
    for (std::size_t c = 0; c < energy.size(); ++c) {
      double g2 = 0.0;
      for (const auto& component : grad) g2 += component[c] * component[c];
      energy[c] = std::pow(g2, p);
    }
    value += std::pow(chi0, 2.0 * p) * integrate(energy);
  }
  if (!std::isfinite(value)) throw CorruptionError("phi overflowed");
  return value;
}

MonitorRecord record(const SimState& state, double dt, const CertificateReport& cert, const MonitorConfig& cfg) {
  MonitorRecord r;
  r.t = state.t;
  r.dt = dt;
  r.mass_u = integrate(state.u);
  r.sup_u = max_value(state.u);
  r.min_u = min_value(state.u);
  r.sup_v = max_value(state.v);
  r.gradv_l2sq = dirichlet_energy(state.v);
  r.phi_p = phi(state, cfg.p, cert.params.chi0);

  auto check = [&r](const char* name, double bound, double observed, bool violated) {
    if (violated) r.violations.push_back({name, bound, observed});
  };
  check("mass", cert.m_mass, r.mass_u, r.mass_u > cert.m_mass * (1.0 + cfg.tol_mass));
  check("gradv", cert.M_grad, r.gradv_l2sq, r.gradv_l2sq > cert.M_grad * (1.0 + cfg.tol_grad));
  check("max_principle", cert.initial.v0_sup, r.sup_v, r.sup_v > cert.initial.v0_sup * (1.0 + cfg.tol_maxprin));
  check("positivity", 0.0, r.min_u, r.min_u < -cfg.tol_maxprin);
  return r;
}

PhiTrend phi_trend(std::span<const MonitorRecord> records) {
  if (records.size() < 2) throw DomainError("phi_trend needs at least two records");
  PhiTrend trend;
  trend.sup_phi = records.front().phi_p;
  trend.t_of_sup = records.front().t;
  bool finite = true;
  for (const auto& rec : records) {
    finite = finite && std::isfinite(rec.phi_p);
    if (rec.phi_p > trend.sup_phi) {
      trend.sup_phi = rec.phi_p;
      trend.t_of_sup = rec.t;
    }
  }
  const std::size_t tail = std::max<std::size_t>(1, (records.size() + 3) / 4);
  const std::size_t head = records.size() - tail;
  auto max_phi = [](auto first, auto last) {
    return std::max_element(first, last, [](const auto& a, const auto& b) { return a.phi_p < b.phi_p; })->phi_p;
  };
  const double head_max = max_phi(records.begin(), records.begin() + static_cast<std::ptrdiff_t>(head));
  const double tail_max = max_phi(records.begin() + static_cast<std::ptrdiff_t>(head), records.end());
  trend.bounded = finite && std::isfinite(trend.sup_phi) && tail_max <= head_max * (1.0 + kPhiTrendTolerance);
  return trend;
}

}  // namespace chemo
