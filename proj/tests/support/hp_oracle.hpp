#pragma once

// 50-digit reference evaluations of the certificate formulas, written
// independently of src/ so that agreement is evidence rather than tautology.

#include <algorithm>
#include <array>
#include <cmath>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace hp {

using Real = boost::multiprecision::cpp_bin_float_50;

inline Real k1(Real p, int n, Real x, bool literal = true) {
  using boost::multiprecision::pow;
  Real value = p * p * pow((p - 1) / (p + 1), (p + 1) / p) * pow(4 * p * p + n, 1 / p);
  if (literal) value *= pow(x, 2 / p);
  return value;
}

inline Real k2(Real p, int n) {
  using boost::multiprecision::pow;
  return p / (p + 1) * pow(Real(2), p) * pow(p + n - 1, (p + 1) / 2) * pow((p - 1) / (p + 1), (p - 1) / 2) *
         pow(4 * p * p + n, (p - 1) / 2);
}

inline Real mu_threshold(Real p, int n, Real x, bool literal = true) {
  using boost::multiprecision::pow;
  if (x == 0) return 0;
  return k1(p, n, x, literal) * pow(x, 2 / p) + k2(p, n) * pow(x, 2 * p);
}

inline std::array<Real, 6> p_bar_entries(int n, Real m, Real alpha, Real q1, Real q2) {
  const Real nn = n;
  return {nn * (1 - m) / 2,
          q1 * (2 * alpha + 1) / 2,
          1 + m - 2 * alpha,
          q1 / 2,
          1 - m * ((nn + 1) * q1 - (nn + 2)) / (q1 - (nn + 2)),
          1 - m / (1 - nn / (nn + 2) * q2 / (q2 - 1))};
}

inline Real p_bar(int n, Real m, Real alpha, Real q1, Real q2) {
  const auto e = p_bar_entries(n, m, alpha, q1, q2);
  return 1 + *std::max_element(e.begin(), e.end());
}

inline Real mass_bound(Real k, Real mu, Real volume, Real u0_mass) {
  const Real k_plus = k > 0 ? k : Real(0);
  return std::max(Real(k_plus * volume / mu), u0_mass);
}

inline Real gradv_bound(Real k, Real mu, Real volume, Real v0_sup, Real gradv0, Real u0_mass) {
  const Real k_plus = k > 0 ? k : Real(0);
  const Real mass = mass_bound(k, mu, volume, u0_mass);
  const Real a = v0_sup * v0_sup * (volume + 2 * mass + (k_plus + 1) * mass / mu);
  const Real b = gradv0 + v0_sup * v0_sup * u0_mass / mu;
  return std::max(a, b);
}

inline Real d3(Real d1, Real d2) {
  using boost::multiprecision::pow;
  const Real k = std::min(d1, d2);
  Real sum = 0;
  for (const Real& d : {d1, d2}) {
    if (d != k) sum += (d - k) / d * pow(d / k, k / (d - k));
  }
  return sum;
}

inline double rel_err(double got, const Real& want) {
  using boost::multiprecision::abs;
  if (want == 0) return std::abs(got);
  return static_cast<double>(abs((Real(got) - want) / want));
}

}  // namespace hp
