#include "chemo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chemo/certificates.hpp"
#include "chemo/error.hpp"

namespace chemo {

namespace {

double normalized(double slack_side, double scale) { return scale > 0.0 ? slack_side / scale : 0.0; }

template <class CellCheck>
OracleVerdict pointwise(const OracleConfig& cfg, const char* name, CellCheck&& check) {
  cfg.validate();
  const Grid& g = cfg.grid;
  OracleVerdict verdict{name, 0, std::numeric_limits<double>::infinity(), kPointwiseSlack, false};
  const int j_lo = g.dim() == 2 ? 1 : 0;
  const int j_hi = g.dim() == 2 ? g.ny() - 1 : 1;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const ScalarField f = random_smooth_field(g, derive_seed(cfg.seed, static_cast<std::uint64_t>(trial)), cfg.num_modes);
    const Hessian H = hessian(f);
    const auto grad = gradient_cells(f);
    for (int j = j_lo; j < j_hi; ++j) {
      for (int i = 1; i < g.nx() - 1; ++i) {
        const auto [lhs, rhs] = check(H, grad, g.index(i, j));
        const double margin = normalized(rhs - lhs, std::max(std::abs(lhs), std::abs(rhs)));
        verdict.worst_margin = std::min(verdict.worst_margin, margin);
      }
    }
    ++verdict.trials_run;
  }
  verdict.passed = verdict.worst_margin >= -verdict.slack;
  return verdict;
}

double frobenius_sq(const Hessian& H, std::size_t c) {
  double s = 0.0;
  for (int r = 0; r < H.dim(); ++r)
    for (int k = 0; k < H.dim(); ++k) s += H(r, k)[c] * H(r, k)[c];
  return s;
}

}  // namespace

void OracleConfig::validate() const {
  if (trials < 1) throw DomainError("oracle trials must be >= 1");
  if (num_modes < 1) throw DomainError("oracle num_modes must be >= 1");
  if (slack_abs < 0.0 || slack_per_h < 0.0) throw DomainError("oracle slack must be nonnegative");
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

OracleVerdict verify_laplacian_vs_hessian(const OracleConfig& cfg) {
  const double n = cfg.grid.dim();
  return pointwise(cfg, "laplacian_vs_hessian", [n](const Hessian& H, const auto&, std::size_t c) {
    double trace = 0.0;
    for (int r = 0; r < H.dim(); ++r) trace += H(r, r)[c];
    return std::pair{trace * trace, n * frobenius_sq(H, c)};
  });
}

OracleVerdict verify_hessian_gradient(const OracleConfig& cfg) {
  return pointwise(cfg, "hessian_gradient", [](const Hessian& H, const std::vector<ScalarField>& grad, std::size_t c) {
    double lhs = 0.0;
    double grad_sq = 0.0;
    for (int r = 0; r < H.dim(); ++r) {
      double row = 0.0;
      for (int k = 0; k < H.dim(); ++k) row += H(r, k)[c] * grad[k][c];
      lhs += row * row;
      grad_sq += grad[r][c] * grad[r][c];
    }
    return std::pair{lhs, frobenius_sq(H, c) * grad_sq};
  });
}

IntegralSides gradient_power_hessian_sides(const ScalarField& f, double q) {
  if (!(q >= 1.0)) throw DomainError("q must be >= 1");
  const Grid& g = f.grid();
  const Hessian H = hessian(f);
  const auto grad = gradient_cells(f);
  double lhs = 0.0;
  double weighted = 0.0;
  for (std::size_t c = 0; c < f.size(); ++c) {
    double g2 = 0.0;
    for (const auto& component : grad) g2 += component[c] * component[c];
    lhs += std::pow(g2, q + 1.0);
    weighted += std::pow(g2, q - 1.0) * frobenius_sq(H, c);
  }
  const double sup = lp_norm(f, kInfNorm);
  const double constant = 2.0 * (4.0 * q * q + g.dim());
  return {lhs * g.cell_volume(), constant * sup * sup * weighted * g.cell_volume()};
}

OracleVerdict verify_gradient_power_hessian(const OracleConfig& cfg, double q, bool normalize_sup) {
  cfg.validate();
  const double h = cfg.grid.min_spacing();
  OracleVerdict verdict{"gradient_power_hessian", 0, std::numeric_limits<double>::infinity(),
                        cfg.slack_abs + cfg.slack_per_h * h, false};
  for (int trial = 0; trial < cfg.trials; ++trial) {
    ScalarField f = random_smooth_field(cfg.grid, derive_seed(cfg.seed, static_cast<std::uint64_t>(trial)), cfg.num_modes);
    if (normalize_sup) {
      const double sup = lp_norm(f, kInfNorm);
      if (sup > 0.0)
        for (double& x : f.values()) x /= sup;
    }
    const IntegralSides s = gradient_power_hessian_sides(f, q);
    verdict.worst_margin = std::min(verdict.worst_margin, normalized(s.rhs - s.lhs, s.rhs));
    ++verdict.trials_run;
  }
  verdict.passed = verdict.worst_margin >= -verdict.slack;
  return verdict;
}

OracleVerdict verify_young_combination(const OracleConfig& cfg) {
  cfg.validate();
  OracleVerdict verdict{"young_combination", 0, std::numeric_limits<double>::infinity(), 1e-9, false};
  auto check = [&](double A, double B, double d1, double d2) {
    auto [k, d3] = d3_constant(d1, d2);
    if (cfg.poison_d3) d3 = -(1.0 + d3);
    const double lhs = std::pow(A, d1) + std::pow(B, d2);
    const double rhs = std::pow(2.0, -k) * std::pow(A + B, k) - d3;
    verdict.worst_margin = std::min(verdict.worst_margin, (lhs - rhs) / (1.0 + std::abs(lhs)));
    ++verdict.trials_run;
  };

  check(0.0, 0.0, 1.0, 1.0);
  check(0.0, 0.0, 0.5, 3.0);
  check(1.0, 0.0, 2.0, 2.0);
  check(7.0, 3.0, 2.5, 2.5);

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> ab(0.0, 100.0);
  std::uniform_real_distribution<double> log_d(std::log(0.1), std::log(10.0));
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const double A = ab(rng);
    const double B = ab(rng);
    const double d1 = std::exp(log_d(rng));
    const double d2 = std::exp(log_d(rng));
    check(A, B, d1, d2);
  }
  verdict.passed = verdict.worst_margin >= -verdict.slack;
  return verdict;
}

OracleVerdict verify_pbar_relations(const OracleConfig& cfg, int n, double m, double alpha, double q1, double q2) {
  const double p_bar = compute_p_bar(n, m, alpha, q1, q2);
  OracleVerdict verdict{"pbar_relations", 0, std::numeric_limits<double>::infinity(), 0.0, true};
  auto check = [&](double p) {
    const ExponentRelations rel = exponent_relations(n, m, alpha, q1, q2, p);
    verdict.worst_margin = std::min(verdict.worst_margin, *std::min_element(rel.margin.begin(), rel.margin.end()));
    verdict.passed = verdict.passed && rel.all();
    ++verdict.trials_run;
  };
  check(p_bar);
  std::mt19937_64 rng(derive_seed(cfg.seed, 0x9BA5));
  std::uniform_real_distribution<double> offset(std::log(1e-6), std::log(100.0));
  for (int i = 0; i < 20; ++i) check(p_bar + std::exp(offset(rng)));
  return verdict;
}

ExponentSample random_admissible_exponents(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(1, 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ExponentSample s{};
  s.n = dim(rng);
  s.m = -2.0 + 5.0 * unit(rng);
  const double alpha_sup = (s.m + 1.0) / 2.0;
  // 1 - unit in (0, 1] keeps alpha strictly below the bound.
  s.alpha = alpha_sup - 3.0 * (1.0 - unit(rng));
  s.q1 = s.n + 2.0 + 8.0 * (1.0 - unit(rng)) + 1e-6;
  s.q2 = (s.n + 2.0) / 2.0 + 5.0 * (1.0 - unit(rng)) + 1e-6;
  return s;
}

OracleVerdict verify_pbar_relations_random(const OracleConfig& cfg, int sets) {
  std::mt19937_64 rng(cfg.seed);
  OracleVerdict total{"pbar_relations_random", 0, std::numeric_limits<double>::infinity(), 0.0, true};
  for (int i = 0; i < sets; ++i) {
    const ExponentSample s = random_admissible_exponents(rng);
    OracleConfig sub = cfg;
    sub.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
    const OracleVerdict v = verify_pbar_relations(sub, s.n, s.m, s.alpha, s.q1, s.q2);
    total.trials_run += v.trials_run;
    total.worst_margin = std::min(total.worst_margin, v.worst_margin);
    total.passed = total.passed && v.passed;
  }
  return total;
}

GnEstimate estimate_gn_constant(const OracleConfig& cfg) {
  cfg.validate();
  const double theta = cfg.grid.dim() / 4.0;
  GnEstimate est;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const ScalarField f = random_smooth_field(cfg.grid, derive_seed(cfg.seed, static_cast<std::uint64_t>(trial)), cfg.num_modes);
    const double l2 = lp_norm(f, 2.0);
    if (l2 == 0.0) continue;
    const double grad_l2 = std::sqrt(dirichlet_energy(f));
    const double ratio = lp_norm(f, 4.0) / (std::pow(grad_l2, theta) * std::pow(l2, 1.0 - theta) + l2);
    est.constant = std::max(est.constant, ratio);
    ++est.trials_run;
  }
  est.finite = std::isfinite(est.constant);
  return est;
}

}  // namespace chemo
