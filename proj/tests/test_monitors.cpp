#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "chemo/error.hpp"
#include "chemo/monitors.hpp"

using namespace chemo;

namespace {

CertificateReport sample_certificate(const Grid& g, double u0_mass, double v0_sup) {
  ModelParams p;
  p.n = g.dim();
  p.k = 1.0;
  p.mu = 2.0;
  p.chi0 = 1.0;
  p.a = 1.0;
  InitialDataSummary init;
  init.u0_mass = u0_mass;
  init.v0_sup = v0_sup;
  init.gradv0_l2sq = 0.0;
  init.domain_volume = g.volume();
  return check_theorem_condition(p, default_exponents(p), init);
}

MonitorRecord phi_at(double t, double value) {
  MonitorRecord r;
  r.t = t;
  r.phi_p = value;
  return r;
}

}  // namespace

TEST_CASE("phi examples") {
  const Grid g(32, 1.0);
  CHECK(phi({0.0, ScalarField(g, 0.0), ScalarField(g, 2.0)}, 3.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));

  const ScalarField wavy = ScalarField::from_function(g, [](double x, double) { return std::sin(7 * x); });
  CHECK(phi({0.0, ScalarField(g, 0.0), wavy}, 2.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));

  const Grid wide(16, 2.0);
  CHECK(phi({0.0, ScalarField(wide, 1.0), ScalarField(wide, 0.0)}, 3.0, 5.0) == doctest::Approx(16.0).epsilon(1e-15));

  // p = 1 with v = cos(pi x): chi0^2 int pi^2 sin^2 = chi0^2 pi^2 / 2, to O(h^2).
  const Grid fine(512, 1.0);
  const ScalarField v = ScalarField::from_function(fine, [](double x, double) { return std::cos(std::numbers::pi * x); });
  const double expected = 1.0 + 4.0 * std::numbers::pi * std::numbers::pi / 2.0;
  CHECK(phi({0.0, ScalarField(fine, 0.0), v}, 1.0, 2.0) == doctest::Approx(expected).epsilon(1e-4));

  CHECK_THROWS_AS(phi({0.0, ScalarField(g, 0.0), ScalarField(g, 0.0)}, 0.5, 1.0), DomainError);
  CHECK_THROWS_AS(phi({0.0, ScalarField(g, 1e300), ScalarField(g, 0.0)}, 4.0, 1.0), CorruptionError);
}

TEST_CASE("phi grows with p and chi0") {
  const Grid g(24, 24, 1.0, 1.0);
  const ScalarField u = ScalarField::from_function(g, [](double x, double y) { return x * y; });
  const ScalarField v = ScalarField::from_function(g, [](double x, double y) { return 1.0 + x - y * y; });
  const SimState s{0.0, u, v};
  double prev = 0.0;
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    const double value = phi(s, p, 1.5);
    CHECK(value > prev);
    prev = value;
  }
  CHECK(phi(s, 2.0, 0.5) < phi(s, 2.0, 1.0));
}

TEST_CASE("record measures the state") {
  const Grid g(64, 1.0);
  const ScalarField u = ScalarField::from_function(g, [](double x, double) { return 0.1 + 0.05 * std::cos(std::numbers::pi * x); });
  const ScalarField v(g, 1.0);
  const CertificateReport cert = sample_certificate(g, integrate(u), 1.0);
  MonitorConfig cfg;
  cfg.p = cert.p_used;
  const MonitorRecord r = record({0.25, u, v}, 1e-3, cert, cfg);
  CHECK(r.t == 0.25);
  CHECK(r.dt == 1e-3);
  CHECK(r.mass_u == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(r.sup_u == max_value(u));
  CHECK(r.min_u == min_value(u));
  CHECK(r.sup_v == 1.0);
  CHECK(r.gradv_l2sq == 0.0);
  CHECK(r.phi_p == doctest::Approx(phi({0.25, u, v}, cfg.p, 1.0)));
  CHECK(r.violations.empty());
}

TEST_CASE("record flags each exceeded bound") {
  const Grid g(16, 1.0);
  const CertificateReport cert = sample_certificate(g, 0.1, 1.0);
  MonitorConfig cfg;

  const MonitorRecord heavy = record({0.0, ScalarField(g, 2.0 * cert.m_mass), ScalarField(g, 1.0)}, 0.0, cert, cfg);
  REQUIRE(heavy.violations.size() == 1);
  CHECK(heavy.violations[0].bound_name == "mass");
  CHECK(heavy.violations[0].bound_value == cert.m_mass);
  CHECK(heavy.violations[0].observed == doctest::Approx(2.0 * cert.m_mass));

  // Within tolerance is not a violation.
  CHECK(record({0.0, ScalarField(g, cert.m_mass * 1.01), ScalarField(g, 1.0)}, 0.0, cert, cfg).violations.empty());

  const MonitorRecord hot = record({0.0, ScalarField(g, 0.1), ScalarField(g, 1.0 + 1e-6)}, 0.0, cert, cfg);
  REQUIRE(hot.violations.size() == 1);
  CHECK(hot.violations[0].bound_name == "max_principle");

  ScalarField dip(g, 0.1);
  dip[3] = -1e-6;
  const MonitorRecord neg = record({0.0, dip, ScalarField(g, 1.0)}, 0.0, cert, cfg);
  REQUIRE(neg.violations.size() == 1);
  CHECK(neg.violations[0].bound_name == "positivity");

  const ScalarField steep = ScalarField::from_function(g, [](double x, double) { return 3.0 * x; });
  const double energy = dirichlet_energy(steep);
  REQUIRE(energy > cert.M_grad * 1.05);
  bool saw_grad = false;
  for (const auto& v : record({0.0, ScalarField(g, 0.1), steep}, 0.0, cert, cfg).violations)
    saw_grad = saw_grad || v.bound_name == "gradv";
  CHECK(saw_grad);
}

TEST_CASE("phi trend") {
  std::vector<MonitorRecord> decreasing;
  for (int i = 0; i < 20; ++i) decreasing.push_back(phi_at(0.1 * i, 10.0 / (1.0 + i)));
  const PhiTrend down = phi_trend(decreasing);
  CHECK(down.bounded);
  CHECK(down.sup_phi == 10.0);
  CHECK(down.t_of_sup == 0.0);

  std::vector<MonitorRecord> growing;
  for (int i = 0; i < 20; ++i) growing.push_back(phi_at(0.1 * i, i < 15 ? 1.0 : std::pow(2.0, i - 14)));
  const PhiTrend up = phi_trend(growing);
  CHECK_FALSE(up.bounded);
  CHECK(up.sup_phi == 32.0);
  CHECK(up.t_of_sup == doctest::Approx(1.9));

  std::vector<MonitorRecord> plateau;
  for (int i = 0; i < 20; ++i) plateau.push_back(phi_at(0.1 * i, 3.0 - 1.0 / (1.0 + i)));
  CHECK(phi_trend(plateau).bounded);

  std::vector<MonitorRecord> nonfinite = plateau;
  nonfinite[5].phi_p = std::numeric_limits<double>::infinity();
  CHECK_FALSE(phi_trend(nonfinite).bounded);

  CHECK(phi_trend(std::vector<MonitorRecord>{phi_at(0, 1), phi_at(1, 1)}).bounded);
  CHECK_THROWS_AS(phi_trend(std::vector<MonitorRecord>{phi_at(0, 1)}), DomainError);
  CHECK_THROWS_AS(phi_trend(std::vector<MonitorRecord>{}), DomainError);
}

TEST_CASE("monitor config validation") {
  MonitorConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.p = 0.9;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = MonitorConfig{};
  cfg.tol_mass = 0.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = MonitorConfig{};
  cfg.cadence = -1.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}
