#include "chemo/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "chemo/error.hpp"

namespace chemo {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

bool finite_all(std::initializer_list<double> xs) {
  return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

void require_exponent_domain(int n, double m, double alpha, double q1, double q2) {
  require(n >= 1, "n must be >= 1");
  require(finite_all({m, alpha, q1, q2}), "exponent inputs must be finite");
  require(alpha < (m + 1.0) / 2.0, "alpha < (m+1)/2 violated");
  require(q1 > n + 2.0, "q1 > n+2 violated");
  require(q2 > (n + 2.0) / 2.0, "q2 > (n+2)/2 violated");
}

double positive_part(double x) { return std::max(x, 0.0); }

}  // namespace

void validate_admissible(const ModelParams& p) {
  require(p.n >= 1, "n must be >= 1");
  require(finite_all({p.m, p.alpha, p.k, p.mu, p.chi0, p.a, p.b}), "model parameters must be finite");
  require(p.mu > 0.0, "mu must be positive");
  require(p.chi0 >= 0.0, "chi0 must be nonnegative");
  require(p.a >= 0.0, "a must be nonnegative");
  require(p.b > 0.0, "b must be positive");
  require(p.alpha < (p.m + 1.0) / 2.0, "alpha < (m+1)/2 violated");
}

void validate_simulable(const ModelParams& p) {
  require(p.n == 1 || p.n == 2, "simulation supports n = 1 or 2 only");
  require(finite_all({p.m, p.alpha, p.k, p.mu, p.chi0, p.a, p.b}), "model parameters must be finite");
  require(p.mu >= 0.0, "mu must be nonnegative");
  require(p.chi0 >= 0.0, "chi0 must be nonnegative");
  require(p.a >= 0.0, "a must be nonnegative");
}

AuxiliaryExponents default_exponents(const ModelParams& params) {
  AuxiliaryExponents e;
  e.q1 = params.n + 3.0;
  e.q2 = (params.n + 3.0) / 2.0;
  e.p = std::ceil(compute_p_bar(params.n, params.m, params.alpha, e.q1, e.q2));
  return e;
}

std::array<double, 6> p_bar_candidates(int n, double m, double alpha, double q1, double q2) {
  require_exponent_domain(n, m, alpha, q1, q2);
  const double nd = n;
  const double q2_ratio = q2 / (q2 - 1.0);
  const double sixth_denominator = 1.0 - (nd / (nd + 2.0)) * q2_ratio;
  if (!(sixth_denominator > 0.0) || !std::isfinite(q2_ratio)) {
    throw std::range_error("degenerate q2 in p_bar candidate 1 - m/(1 - n q2/((n+2)(q2-1)))");
  }
  return {
      nd * (1.0 - m) / 2.0,
      q1 * (2.0 * alpha + 1.0) / 2.0,
      1.0 + m - 2.0 * alpha,
      q1 / 2.0,
      1.0 - m * ((nd + 1.0) * q1 - (nd + 2.0)) / (q1 - (nd + 2.0)),
      1.0 - m / sixth_denominator,
  };
}

bool ExponentRelations::all() const {
  return std::all_of(holds.begin(), holds.end(), [](bool b) { return b; });
}

ExponentRelations exponent_relations(int n, double m, double alpha, double q1, double q2, double p) {
  const auto c = p_bar_candidates(n, m, alpha, q1, q2);
  const double half_n = n / 2.0;
  ExponentRelations r;

  const double gn_denominator = 1.0 - half_n + half_n * (m + p - 1.0);
  if (gn_denominator > 0.0 && p > 0.0) {
    const double f = half_n * (m + p - 1.0) * (1.0 - 1.0 / p) / gn_denominator;
    r.margin[0] = std::min(f, 1.0 - f);
  } else {
    r.margin[0] = std::min(gn_denominator, p) - 1.0;
  }

  const double g = (p + 2.0 * alpha - m - 1.0) / p;
  r.margin[1] = std::min(g, 1.0 - g);

  r.margin[2] = p - c[3];
  r.margin[3] = p - c[4];
  r.margin[4] = p - c[5];
  r.margin[5] = p - c[0];
  r.margin[6] = p - c[1];

  for (int i = 0; i < ExponentRelations::count; ++i) r.holds[i] = r.margin[i] > 0.0;
  return r;
}

double compute_p_bar(int n, double m, double alpha, double q1, double q2) {
  const auto c = p_bar_candidates(n, m, alpha, q1, q2);
  const double p_bar = 1.0 + *std::max_element(c.begin(), c.end());
  if (!exponent_relations(n, m, alpha, q1, q2, p_bar).all()) {
    throw std::logic_error("p_bar does not satisfy the exponent relations");
  }
  return p_bar;
}

double chi_prototype(double v, double chi0, double a) {
  require(v >= 0.0, "chi is defined for v >= 0 only");
  require(chi0 >= 0.0 && a >= 0.0, "chi0 and a must be nonnegative");
  const double s = 1.0 + a * v;
  return chi0 / (s * s);
}

double chi_growth_bound(double v, double chi0, double a, double b) {
  require(v >= 0.0, "chi is defined for v >= 0 only");
  require(chi0 >= 0.0 && a >= 0.0, "chi0 and a must be nonnegative");
  return chi0 / std::pow(1.0 + a * v, b);
}

double k1_coeff(double p, int n, double chi0_v0_sup, bool literal) {
  require(p > 1.0, "k1 requires p > 1");
  require(n >= 1, "n must be >= 1");
  require(chi0_v0_sup >= 0.0, "chi0 * |v0|_inf must be nonnegative");
  const double ratio = (p - 1.0) / (p + 1.0);
  double k1 = p * p * std::pow(ratio, (p + 1.0) / p) * std::pow(4.0 * p * p + n, 1.0 / p);
  if (literal) k1 *= std::pow(chi0_v0_sup, 2.0 / p);
  return k1;
}

double k2_coeff(double p, int n) {
  require(p > 1.0, "k2 requires p > 1");
  require(n >= 1, "n must be >= 1");
  const double ratio = (p - 1.0) / (p + 1.0);
  return p / (p + 1.0) * std::pow(2.0, p) * std::pow(p + n - 1.0, (p + 1.0) / 2.0) *
         std::pow(ratio, (p - 1.0) / 2.0) * std::pow(4.0 * p * p + n, (p - 1.0) / 2.0);
}

double mu_threshold(double p, int n, double chi0_v0_sup, bool k1_literal) {
  const double k1 = k1_coeff(p, n, chi0_v0_sup, k1_literal);
  const double k2 = k2_coeff(p, n);
  if (chi0_v0_sup == 0.0) return 0.0;
  return k1 * std::pow(chi0_v0_sup, 2.0 / p) + k2 * std::pow(chi0_v0_sup, 2.0 * p);
}

double mass_bound(double k, double mu, double domain_volume, double u0_mass) {
  require(mu > 0.0, "mu must be positive");
  require(domain_volume > 0.0, "domain volume must be positive");
  require(u0_mass >= 0.0, "initial mass must be nonnegative");
  return std::max(positive_part(k) * domain_volume / mu, u0_mass);
}

double gradv_bound(double k, double mu, double domain_volume, double v0_sup, double gradv0_l2sq,
                   double u0_mass) {
  const double m_mass = mass_bound(k, mu, domain_volume, u0_mass);
  const double v2 = v0_sup * v0_sup;
  const double first = v2 * (domain_volume + 2.0 * m_mass + (positive_part(k) + 1.0) / mu * m_mass);
  const double second = gradv0_l2sq + v2 / mu * u0_mass;
  return std::max(first, second);
}

CombinationConstant d3_constant(double d1, double d2) {
  require(std::isfinite(d1) && std::isfinite(d2), "d1, d2 must be finite");
  require(d1 > 0.0 && d2 > 0.0, "d1, d2 must be positive");
  const double k = std::min(d1, d2);
  auto term = [k](double d) {
    // Limit value as d -> k is 0; the exponent k/(d-k) overflows near the tie.
    if (std::abs(d - k) < 1e-12) return 0.0;
    return (d - k) / d * std::pow(d / k, k / (d - k));
  };
  return {k, term(d1) + term(d2)};
}

double d1_constant(double p, double delta1) {
  require(p > 1.0, "D1 requires p > 1");
  require(delta1 > 0.0, "delta1 must be positive");
  return 2.0 / (p + 1.0) * std::pow(delta1 * (p + 1.0) / (p - 1.0), (1.0 - p) / 2.0);
}

EnergyConstants energy_constants(double p, const ModelParams& params, double v0_sup) {
  require(p > 1.0, "energy constants require p > 1");
  require(v0_sup > 0.0 && params.chi0 > 0.0, "constants undefined for zero signal");
  require(params.mu > 0.0, "mu must be positive");
  const double n = params.n;
  const double chi0 = params.chi0;
  const double v2 = v0_sup * v0_sup;
  const double four_p2_n = 4.0 * p * p + n;
  const double k_plus = positive_part(params.k);

  EnergyConstants c{};
  c.eps1 = 1.0 / (2.0 * chi0);
  c.C1 = 1.0 / (4.0 * c.eps1);
  c.eps2 = std::pow(chi0, 2.0 * p - 1.0) / (4.0 * (p - 1.0) * c.C1 * four_p2_n * v2);
  c.delta1 = 1.0 / (4.0 * (p + n - 1.0) * four_p2_n * v2 * v2);
  c.eps3 = p * p / 2.0 * std::pow((p - 1.0) / (p + 1.0), (p + 1.0) / p) * std::pow(four_p2_n, 1.0 / p) *
           std::pow(chi0 * v0_sup, 2.0 / p);
  c.C2 = p / (p + 1.0) * std::pow(c.eps2 * (p + 1.0), -1.0 / p);
  c.C3 = 1.0 / (p + 1.0) * std::pow(c.eps3 * (p + 1.0) / ((2.0 * params.mu + k_plus) * p * p), -p);

  const double gap = p + 2.0 * params.alpha - params.m - 1.0;      // > 0 for p >= p_bar
  const double deficit = 2.0 * params.alpha - params.m - 1.0;      // < 0 by admissibility
  c.c0 = c.C1 * c.C2 * ((params.m + 1.0 - 2.0 * params.alpha) / p) * std::pow(p / gap, gap / deficit);
  c.D1 = d1_constant(p, c.delta1);
  return c;
}

CertificateReport check_theorem_condition(const ModelParams& params, const AuxiliaryExponents& exps,
                                          const InitialDataSummary& initial, bool k1_literal) {
  validate_admissible(params);
  require(initial.v0_sup >= 0.0, "v0_sup must be nonnegative");

  CertificateReport r;
  r.params = params;
  r.exponents = exps;
  r.initial = initial;
  r.k1_literal = k1_literal;

  r.p_bar = compute_p_bar(params.n, params.m, params.alpha, exps.q1, exps.q2);
  r.p_used = std::max(exps.p, r.p_bar);
  const double x = params.chi0 * initial.v0_sup;
  r.k1 = k1_coeff(r.p_used, params.n, x, k1_literal);
  r.k2 = k2_coeff(r.p_used, params.n);
  r.mu_min = mu_threshold(r.p_used, params.n, x, k1_literal);
  r.satisfied = params.mu > r.mu_min;
  r.lemma_condition = params.mu >= r.mu_min;

  r.m_mass = mass_bound(params.k, params.mu, initial.domain_volume, initial.u0_mass);
  r.M_grad = gradv_bound(params.k, params.mu, initial.domain_volume, initial.v0_sup, initial.gradv0_l2sq,
                         initial.u0_mass);
  if (x > 0.0) r.constants = energy_constants(r.p_used, params, initial.v0_sup);
  return r;
}

}  // namespace chemo
