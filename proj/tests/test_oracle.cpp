#include <cmath>
#include <numbers>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include <doctest.h>

#include "chemo/certificates.hpp"
#include "chemo/error.hpp"
#include "chemo/oracle.hpp"
#include "support/hp_oracle.hpp"

using namespace chemo;

namespace {

double trace_sq_minus_frobenius(const ScalarField& f, int i, int j) {
  const Hessian H = hessian(f);
  const std::size_t c = f.grid().index(i, j);
  double trace = 0.0, frob = 0.0;
  for (int r = 0; r < H.dim(); ++r) {
    trace += H(r, r)[c];
    for (int k = 0; k < H.dim(); ++k) frob += H(r, k)[c] * H(r, k)[c];
  }
  return H.dim() * frob - trace * trace;
}

}  // namespace

TEST_CASE("laplacian vs hessian: equality cases") {
  const Grid g(16, 16, 1.0, 1.0);
  const ScalarField radial = ScalarField::from_function(g, [](double x, double y) { return x * x + y * y; });
  const Hessian H = hessian(radial);
  const std::size_t c = g.index(7, 9);
  CHECK(H(0, 0)[c] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(H(1, 1)[c] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(std::abs(H(0, 1)[c]) < 1e-9);
  CHECK(std::abs(trace_sq_minus_frobenius(radial, 7, 9)) < 1e-8);

  CHECK(trace_sq_minus_frobenius(ScalarField(g, 4.0), 5, 5) == 0.0);

  const Grid line(16, 1.0);
  const ScalarField parabola = ScalarField::from_function(line, [](double x, double) { return x * x; });
  CHECK(std::abs(trace_sq_minus_frobenius(parabola, 8, 0)) < 1e-8);

  // Strict for anisotropic data.
  const ScalarField saddle = ScalarField::from_function(g, [](double x, double y) { return x * x + 3 * y * y; });
  CHECK(trace_sq_minus_frobenius(saddle, 6, 6) > 1.0);
}

TEST_CASE("pointwise checks pass on 1000 random fields") {
  OracleConfig cfg;
  REQUIRE(cfg.grid.nx() == 64);
  REQUIRE(cfg.grid.dim() == 2);
  const OracleVerdict lap = verify_laplacian_vs_hessian(cfg);
  CHECK(lap.inequality_name == "laplacian_vs_hessian");
  CHECK(lap.trials_run == 1000);
  CHECK(lap.passed);
  CHECK(lap.worst_margin >= -kPointwiseSlack);
  const OracleVerdict hg = verify_hessian_gradient(cfg);
  CHECK(hg.trials_run == 1000);
  CHECK(hg.passed);
}

TEST_CASE("gradient power vs hessian: analytic sides for cos(pi x)") {
  // q = 1: lhs = pi^4 int sin^4 = 3 pi^4 / 8; rhs = 2 (4 + 1) int pi^4 cos^2 = 5 pi^4.
  const double pi4 = std::pow(std::numbers::pi, 4);
  double prev_err = 0.0;
  for (int nx : {64, 128, 256}) {
    const Grid g(nx, 1.0);
    const ScalarField f = ScalarField::from_function(g, [](double x, double) { return std::cos(std::numbers::pi * x); });
    const IntegralSides s = gradient_power_hessian_sides(f, 1.0);
    const double err = std::abs(s.lhs - 3.0 * pi4 / 8.0) / (3.0 * pi4 / 8.0);
    CHECK(err < 5e-3);
    CHECK(s.rhs == doctest::Approx(5.0 * pi4).epsilon(5e-3));
    if (prev_err > 0.0) CHECK(prev_err / err > 3.0);
    prev_err = err;
  }
  CHECK_THROWS_AS(gradient_power_hessian_sides(ScalarField(Grid(8, 1.0), 1.0), 0.5), DomainError);
}

TEST_CASE("gradient power vs hessian on 200 fields per resolution") {
  double prev_slack = std::numeric_limits<double>::infinity();
  for (int nx : {32, 64, 128}) {
    OracleConfig cfg;
    cfg.trials = 200;
    cfg.grid = Grid(nx, nx, 1.0, 1.0);
    for (double q : {1.0, 2.0, 3.0}) {
      const OracleVerdict v = verify_gradient_power_hessian(cfg, q);
      CAPTURE(nx);
      CAPTURE(q);
      CHECK(v.trials_run == 200);
      CHECK(v.passed);
      CHECK(v.slack < prev_slack);
    }
    prev_slack = cfg.slack_abs + cfg.slack_per_h * cfg.grid.hx();
  }
}

TEST_CASE("sup normalization does not change the verdict") {
  OracleConfig cfg;
  cfg.trials = 20;
  cfg.grid = Grid(32, 32, 1.0, 1.0);
  const OracleVerdict a = verify_gradient_power_hessian(cfg, 2.0, true);
  const OracleVerdict b = verify_gradient_power_hessian(cfg, 2.0, false);
  CHECK(a.passed == b.passed);
  CHECK(a.worst_margin == doctest::Approx(b.worst_margin).epsilon(1e-9));
}

TEST_CASE("young combination") {
  for (const auto& [d1, d2] : std::vector<std::pair<double, double>>{{1, 1}, {0.5, 3}, {2, 2}, {2.5, 2.5}, {0.3, 7}}) {
    const CombinationConstant cc = d3_constant(d1, d2);
    CHECK(cc.k == std::min(d1, d2));
    CHECK(hp::rel_err(cc.d3, hp::d3(d1, d2)) < 1e-12);
  }
  CHECK(d3_constant(2, 2).d3 == 0.0);

  OracleConfig cfg;
  cfg.trials = 10000;
  const OracleVerdict v = verify_young_combination(cfg);
  CHECK(v.inequality_name == "young_combination");
  CHECK(v.trials_run >= 10000);
  CHECK(v.passed);
  CHECK(v.slack == 1e-9);

  cfg.poison_d3 = true;
  CHECK_FALSE(verify_young_combination(cfg).passed);
}

TEST_CASE("pbar relations") {
  OracleConfig cfg;
  const OracleVerdict v = verify_pbar_relations(cfg, 1, 1.0, 0.0, 4.0, 2.0);
  CHECK(v.inequality_name == "pbar_relations");
  CHECK(v.passed);
  CHECK(v.worst_margin > 0.0);
  CHECK(compute_p_bar(1, 1.0, 0.0, 4.0, 2.0) == 3.0);

  const OracleVerdict random = verify_pbar_relations_random(cfg, 100);
  CHECK(random.trials_run >= 100);
  CHECK(random.passed);
}

TEST_CASE("random admissible exponents stay admissible") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const ExponentSample s = random_admissible_exponents(rng);
    CHECK((s.n >= 1 && s.n <= 3));
    CHECK(s.alpha < (s.m + 1) / 2);
    CHECK(s.q1 > s.n + 2);
    CHECK(s.q2 > (s.n + 2) / 2.0);
    CHECK(std::isfinite(compute_p_bar(s.n, s.m, s.alpha, s.q1, s.q2)));
  }
}

TEST_CASE("determinism, trial counts and config validation") {
  OracleConfig cfg;
  cfg.trials = 25;
  const OracleVerdict a = verify_laplacian_vs_hessian(cfg);
  const OracleVerdict b = verify_laplacian_vs_hessian(cfg);
  CHECK(a.worst_margin == b.worst_margin);
  CHECK(verify_young_combination(cfg).worst_margin == verify_young_combination(cfg).worst_margin);
  cfg.seed = 99;
  const OracleVerdict c = verify_laplacian_vs_hessian(cfg);
  CHECK(c.passed);

  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));

  OracleConfig one;
  one.trials = 1;
  CHECK(verify_hessian_gradient(one).trials_run == 1);
  CHECK(verify_gradient_power_hessian(one, 1.0).trials_run == 1);

  OracleConfig none;
  none.trials = 0;
  CHECK_THROWS_AS(verify_laplacian_vs_hessian(none), DomainError);
  none = OracleConfig{};
  none.num_modes = 0;
  CHECK_THROWS_AS(none.validate(), DomainError);
}

TEST_CASE("gagliardo-nirenberg estimate is finite") {
  OracleConfig cfg;
  cfg.trials = 50;
  const GnEstimate gn = estimate_gn_constant(cfg);
  CHECK(gn.finite);
  CHECK(gn.trials_run == 50);
  CHECK(gn.constant > 0.0);
  CHECK(gn.constant < 10.0);
}
