#pragma once

// Explicit constants and the sufficient largeness condition on the logistic
// damping mu for global boundedness of
//
//   u_t = div((u+1)^(m-1) grad u - (u+1)^alpha chi(v) grad v) + k u - mu u^2
//   v_t = lap v - u v
//
// under zero-flux boundary conditions. Everything here is a pure function.

#include <array>
#include <optional>

namespace chemo {

/// PDE coefficients. `n` is the spatial dimension used by every formula.
struct ModelParams {
  int n = 1;
  double m = 1.0;
  double alpha = 0.0;
  double k = 0.0;
  double mu = 1.0;
  double chi0 = 1.0;
  double a = 0.0;
  double b = 2.0;
};

/// Admissibility: mu > 0, chi0 >= 0, a >= 0, b > 0, alpha < (m+1)/2, n >= 1.
/// chi0 = 0 is accepted as the taxis-free limit (zero threshold).
/// Throws DomainError naming the first violated constraint.
void validate_admissible(const ModelParams& params);

/// Weaker check used by the simulator, which also runs degenerate cases
/// (chi0 = 0, k = mu = 0): finite values, n in {1,2}, mu >= 0, chi0 >= 0, a >= 0.
void validate_simulable(const ModelParams& params);

/// Free exponents of the a priori estimates. q1 > n+2, q2 > (n+2)/2, p >= p_bar.
struct AuxiliaryExponents {
  double q1 = 0.0;
  double q2 = 0.0;
  double p = 0.0;
};

/// q1 = n+3, q2 = (n+3)/2, p = ceil(p_bar) for the given model.
AuxiliaryExponents default_exponents(const ModelParams& params);

/// The six candidates whose maximum (+1) defines p_bar, in printed order.
std::array<double, 6> p_bar_candidates(int n, double m, double alpha, double q1, double q2);

/// p_bar = 1 + max(p_bar_candidates). Verifies all seven exponent relations
/// at the returned value before returning.
double compute_p_bar(int n, double m, double alpha, double q1, double q2);

/// Truth values and margins of the seven relations that must hold for every
/// p >= p_bar. Margins are positive exactly when the relation holds.
struct ExponentRelations {
  static constexpr int count = 7;
  std::array<bool, count> holds{};
  std::array<double, count> margin{};
  static constexpr std::array<const char*, count> names = {
      "gn_fraction_in_(0,1)",       "holder_fraction_in_(0,1)", "p>q1/2",
      "p>1-m((n+1)q1-(n+2))/(q1-(n+2))", "p>1-m/(1-n q2/((n+2)(q2-1)))",
      "p>n(1-m)/2",                 "p>q1(2alpha+1)/2"};

  bool all() const;
};

ExponentRelations exponent_relations(int n, double m, double alpha, double q1, double q2, double p);

/// chi0 / (1 + a v)^2.
double chi_prototype(double v, double chi0, double a);

/// chi0 / (1 + a v)^b, the admissible growth envelope for chi.
double chi_growth_bound(double v, double chi0, double a, double b);

/// Coefficient k1(p, n) exactly as printed, including its inner
/// (chi0 |v0|_inf)^(2/p) factor. With `literal = false` that inner factor is dropped.
double k1_coeff(double p, int n, double chi0_v0_sup, bool literal = true);

/// Coefficient k2(p, n).
double k2_coeff(double p, int n);

/// k1 * x^(2/p) + k2 * x^(2p) with x = chi0 * v0_sup. Zero when x = 0.
double mu_threshold(double p, int n, double chi0_v0_sup, bool k1_literal = true);

/// max(k+ |Omega| / mu, int u0).
double mass_bound(double k, double mu, double domain_volume, double u0_mass);

/// max(|v0|^2 (|Omega| + 2 m_mass + (k+ + 1) m_mass / mu),
///     int |grad v0|^2 + |v0|^2 int u0 / mu).
double gradv_bound(double k, double mu, double domain_volume, double v0_sup, double gradv0_l2sq,
                   double u0_mass);

struct CombinationConstant {
  double k;
  double d3;
};

/// k = min(d1, d2) and the additive constant d3 of
///   A^d1 + B^d2 >= 2^-k (A+B)^k - d3   for all A, B >= 0.
/// Terms with |d_i - k| < 1e-12 contribute exactly 0.
CombinationConstant d3_constant(double d1, double d2);

/// The explicit Young-parameter choices and resulting constants of the
/// energy estimate for Phi(t) = int (u+1)^p + chi0^(2p) int |grad v|^(2p).
struct EnergyConstants {
  double eps1;
  double eps2;
  double eps3;
  double delta1;
  double C1;
  double C2;
  double C3;
  double c0;
  double D1;
};

/// D1(delta1) = 2/(p+1) * (delta1 (p+1)/(p-1))^((1-p)/2).
double d1_constant(double p, double delta1);

/// Throws DomainError when v0_sup == 0 or chi0 == 0 (constants undefined for zero signal).
EnergyConstants energy_constants(double p, const ModelParams& params, double v0_sup);

/// Data about the initial state that enters the bounds.
struct InitialDataSummary {
  double v0_sup = 0.0;
  double u0_mass = 0.0;
  double gradv0_l2sq = 0.0;
  double domain_volume = 1.0;
};

struct CertificateReport {
  double p_bar = 0.0;
  double p_used = 0.0;
  double k1 = 0.0;
  double k2 = 0.0;
  double mu_min = 0.0;
  double m_mass = 0.0;
  double M_grad = 0.0;
  bool satisfied = false;         // mu > mu_min (strict, theorem form)
  bool lemma_condition = false;   // mu >= mu_min (non-strict, energy-lemma form)
  bool k1_literal = true;
  std::optional<EnergyConstants> constants;  // absent when chi0 * v0_sup == 0

  ModelParams params;
  AuxiliaryExponents exponents;
  InitialDataSummary initial;
};

/// Evaluates p_bar, k1, k2, mu_min at p = max(exps.p, p_bar), the mass and
/// gradient bounds, and the verdict. An unsatisfied condition is not an error.
CertificateReport check_theorem_condition(const ModelParams& params, const AuxiliaryExponents& exps,
                                          const InitialDataSummary& initial, bool k1_literal = true);

}  // namespace chemo
