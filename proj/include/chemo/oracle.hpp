#pragma once

// Randomized numerical checks of the functional and algebraic inequalities
// the boundedness argument relies on:
//   (lap f)^2 <= n |D^2 f|^2                          (pointwise)
//   |D^2 f grad f|^2 <= |D^2 f|^2 |grad f|^2          (pointwise)
//   int |grad f|^(2q+2) <= 2(4q^2+n) |f|_inf^2 int |grad f|^(2q-2) |D^2 f|^2
//   A^d1 + B^d2 >= 2^-k (A+B)^k - d3
//   the seven exponent relations above p_bar.
//
// Every verdict is a deterministic function of the config (seed included).

#include <cstdint>
#include <random>
#include <string>

#include "chemo/grid.hpp"

namespace chemo {

struct OracleConfig {
  int trials = 1000;
  std::uint64_t seed = 20240601;
  Grid grid = Grid(64, 64, 1.0, 1.0);
  int num_modes = 4;
  /// Integral checks pass when margin >= -(slack_abs + slack_per_h * h).
  double slack_abs = 1e-9;
  double slack_per_h = 1.0;
  /// Test hook: replaces d3 by -(1 + d3) so the combination check must fail.
  bool poison_d3 = false;

  void validate() const;
};

struct OracleVerdict {
  std::string inequality_name;
  int trials_run = 0;
  /// Minimum over trials of the normalized margin (rhs - lhs) / scale.
  double worst_margin = 0.0;
  double slack = 0.0;
  bool passed = false;
};

/// Independent per-trial seed (splitmix64 of master + index).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Pointwise margins are normalized by max(|lhs|, |rhs|); slack is 1e-12.
inline constexpr double kPointwiseSlack = 1e-12;

OracleVerdict verify_laplacian_vs_hessian(const OracleConfig& cfg);
OracleVerdict verify_hessian_gradient(const OracleConfig& cfg);

struct IntegralSides {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Discrete sides of the gradient-power/Hessian inequality for one field.
IntegralSides gradient_power_hessian_sides(const ScalarField& f, double q);

/// Runs `cfg.trials` random cosine fields; margin (rhs - lhs)/rhs. With
/// `normalize_sup` each field is scaled to unit sup norm first (both sides are
/// homogeneous of the same degree, so the verdict is unchanged).
OracleVerdict verify_gradient_power_hessian(const OracleConfig& cfg, double q, bool normalize_sup = true);

/// Samples A, B in [0, 100], d1, d2 log-uniform in [0.1, 10], plus the
/// deterministic edge cases A = B = 0, d1 = d2, (A, B, d1, d2) = (1, 0, 2, 2).
/// Margin (lhs - rhs) / (1 + |lhs|) with slack 1e-9.
OracleVerdict verify_young_combination(const OracleConfig& cfg);

/// Seven relations at p = p_bar and at 20 seeded p > p_bar. Margin is the
/// smallest relation margin; passes iff every relation holds strictly.
OracleVerdict verify_pbar_relations(const OracleConfig& cfg, int n, double m, double alpha, double q1, double q2);

struct ExponentSample {
  int n;
  double m;
  double alpha;
  double q1;
  double q2;
};

/// n in {1, 2, 3}, m in [-2, 3], alpha in [(m+1)/2 - 3, (m+1)/2),
/// q1 in (n+2, n+10], q2 in ((n+2)/2, (n+2)/2 + 5].
ExponentSample random_admissible_exponents(std::mt19937_64& rng);

/// verify_pbar_relations over `sets` random admissible parameter sets.
OracleVerdict verify_pbar_relations_random(const OracleConfig& cfg, int sets);

struct GnEstimate {
  double constant = 0.0;
  int trials_run = 0;
  bool finite = false;
};

/// Largest observed ratio |f|_4 / (|grad f|_2^theta |f|_2^(1-theta) + |f|_2),
/// theta = n/4, over the random field ensemble. Reported, never asserted.
GnEstimate estimate_gn_constant(const OracleConfig& cfg);

}  // namespace chemo
