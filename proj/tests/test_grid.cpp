#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <doctest.h>

#include "chemo/error.hpp"
#include "chemo/grid.hpp"

using namespace chemo;
using std::numbers::pi;

namespace {

double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (double x : f.values()) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_CASE("grid construction") {
  const Grid g(8, 2.0);
  CHECK(g.dim() == 1);
  CHECK(g.hx() == 0.25);
  CHECK(g.volume() == 2.0);
  CHECK(g.size() == 8);
  CHECK(g.x(0) == 0.125);
  CHECK_THROWS_AS(Grid(3, 1.0), DomainError);
  CHECK_THROWS_AS(Grid(8, 0.0), DomainError);
  CHECK_THROWS_AS(Grid(8, 3, 1.0, 1.0), DomainError);
  const Grid g2(4, 5, 1.0, 2.0);
  CHECK(g2.dim() == 2);
  CHECK(g2.size() == 20);
  CHECK(g2.index(1, 2) == 9);
  CHECK(g2.face_count(0) == 25);
  CHECK(g2.face_count(1) == 24);
}

TEST_CASE("integrate") {
  CHECK(integrate(ScalarField(Grid(16, 2.0), 3.0)) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(integrate(ScalarField(Grid(8, 8, 1.0, 2.0), 3.0)) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(integrate(ScalarField(Grid(16, 1.0))) == 0.0);
  const Grid g(128, 1.0);
  CHECK(integrate(ScalarField::from_function(g, [](double x, double) { return x; })) == 0.5);
  ScalarField bad(g, 1.0);
  bad[3] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(integrate(bad), CorruptionError);
  bad[3] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(integrate(bad), CorruptionError);
}

TEST_CASE("lp norms") {
  const Grid g(16, 1.0);
  CHECK(lp_norm(ScalarField(g, 2.0), 2.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(lp_norm(ScalarField(g), 3.0) == 0.0);
  CHECK(lp_norm(ScalarField(g), kInfNorm) == 0.0);
  ScalarField half(g);
  for (int i = 0; i < 8; ++i) half(i) = 1.0;
  CHECK(lp_norm(half, 1.0) == 0.5);
  ScalarField signed_field(g, -3.0);
  signed_field[5] = 2.0;
  CHECK(lp_norm(signed_field, kInfNorm) == 3.0);
  CHECK(max_value(signed_field) == 2.0);
  CHECK(min_value(signed_field) == -3.0);
  CHECK_THROWS_AS(lp_norm(half, 0.5), DomainError);
}

TEST_CASE("neumann extension mirrors the boundary cells") {
  const Grid g(4, 1.0);
  const ScalarField f(g, {1.0, 2.0, 3.0, 4.0});
  const GhostedField e = extend_neumann(f);
  CHECK(e(-1) == 1.0);
  CHECK(e(4) == 4.0);
  CHECK(e(2) == 3.0);

  const GhostedField c = extend_neumann(ScalarField(Grid(5, 6, 1.0, 1.0), 7.0));
  CHECK(c(-1, -1) == 7.0);
  CHECK(c(5, 6) == 7.0);
  CHECK(c(-1, 3) == 7.0);

  const Grid g2(6, 5, 1.0, 1.0);
  const ScalarField h = ScalarField::from_function(g2, [](double x, double y) { return x + 10 * y; });
  const GhostedField eh = extend_neumann(h);
  CHECK(eh(-1, 2) == h(0, 2));
  CHECK(eh(6, 2) == h(5, 2));
  CHECK(eh(3, -1) == h(3, 0));
  CHECK(eh(3, 5) == h(3, 4));
}

TEST_CASE("face gradient of a linear field") {
  const Grid g(10, 1.0);
  const FaceField grad = gradient_faces(ScalarField::from_function(g, [](double x, double) { return x; }));
  REQUIRE(grad.axis.size() == 1);
  CHECK(grad.axis[0].front() == 0.0);
  CHECK(grad.axis[0].back() == 0.0);
  for (int i = 1; i < 10; ++i) CHECK(grad.axis[0][i] == doctest::Approx(1.0).epsilon(1e-12));

  const FaceField zero = gradient_faces(ScalarField(Grid(6, 7, 1.0, 1.0), 2.5));
  for (const auto& axis : zero.axis)
    for (double x : axis) CHECK(x == 0.0);
}

TEST_CASE("cell gradient") {
  const Grid g(65, 1.0);
  const auto lin = gradient_cells(ScalarField::from_function(g, [](double x, double) { return x; }));
  for (int i = 1; i < 64; ++i) CHECK(lin[0][i] == doctest::Approx(1.0).epsilon(1e-12));

  const auto quad = gradient_cells(ScalarField::from_function(g, [](double x, double) { return x * x; }));
  CHECK(g.x(32) == 0.5);
  CHECK(std::abs(quad[0][32] - 1.0) < 2 * g.hx() * g.hx());

  const auto zero = gradient_cells(ScalarField(Grid(5, 5, 1.0, 1.0), -4.0));
  for (const auto& comp : zero) CHECK(max_abs(comp) == 0.0);
}

TEST_CASE("laplacian") {
  const Grid g(32, 1.0);
  const ScalarField lap = laplacian(ScalarField::from_function(g, [](double x, double) { return x * x; }));
  for (int i = 1; i < 31; ++i) CHECK(lap[i] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(max_abs(laplacian(ScalarField(g, 3.0))) == 0.0);

  const Grid g2(16, 16, 1.0, 1.0);
  const ScalarField lap2 =
      laplacian(ScalarField::from_function(g2, [](double x, double y) { return x * x + y * y; }));
  for (int j = 1; j < 15; ++j)
    for (int i = 1; i < 15; ++i) CHECK(lap2(i, j) == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("hessian") {
  const Grid g(12, 10, 1.0, 1.0);
  const Hessian bilinear = hessian(ScalarField::from_function(g, [](double x, double y) { return x * y; }));
  for (int j = 1; j < 9; ++j) {
    for (int i = 1; i < 11; ++i) {
      CHECK(bilinear(0, 1)(i, j) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(bilinear(1, 0)(i, j) == bilinear(0, 1)(i, j));
      CHECK(std::abs(bilinear(0, 0)(i, j)) < 1e-12);
    }
  }

  const Hessian constant = hessian(ScalarField(g, 9.0));
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) CHECK(max_abs(constant(r, c)) == 0.0);

  const Hessian square = hessian(ScalarField::from_function(g, [](double x, double) { return x * x; }));
  for (int j = 1; j < 9; ++j) {
    for (int i = 1; i < 11; ++i) {
      CHECK(square(0, 0)(i, j) == doctest::Approx(2.0).epsilon(1e-9));
      CHECK(std::abs(square(0, 1)(i, j)) < 1e-12);
      CHECK(std::abs(square(1, 1)(i, j)) < 1e-12);
    }
  }

  const Hessian one_d = hessian(ScalarField(Grid(8, 1.0), {1, 4, 9, 16, 25, 36, 49, 64}));
  CHECK(one_d.dim() == 1);
}

TEST_CASE("random smooth fields") {
  const Grid g(32, 24, 1.0, 2.0);
  CHECK_THROWS_AS(random_smooth_field(g, 1, 0), DomainError);
  const ScalarField a = random_smooth_field(g, 42, 4);
  const ScalarField b = random_smooth_field(g, 42, 4);
  const ScalarField c = random_smooth_field(g, 43, 4);
  CHECK(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
  CHECK_FALSE(std::equal(a.values().begin(), a.values().end(), c.values().begin()));

  const CosineMode zero_mode{1, 0, 0.0};
  CHECK(max_abs(cosine_series_field(g, std::span(&zero_mode, 1))) == 0.0);
}

TEST_CASE("cosine series face gradients match the analytic derivative to O(h^2)") {
  const auto modes = random_cosine_modes(1, 5, 4);
  auto derivative = [&](double x) {
    double d = 0.0;
    for (const auto& m : modes) d -= m.coeff * m.kx * pi * std::sin(m.kx * pi * x);
    return d;
  };
  double prev_err = 0.0;
  for (const int n : {32, 64, 128}) {
    const Grid g(n, 1.0);
    const FaceField grad = gradient_faces(cosine_series_field(g, modes));
    CHECK(grad.axis[0].front() == 0.0);
    CHECK(grad.axis[0].back() == 0.0);
    CHECK(std::abs(derivative(0.0)) < 1e-12);
    CHECK(std::abs(derivative(1.0)) < 1e-12);
    double err = 0.0;
    for (int i = 1; i < n; ++i) err = std::max(err, std::abs(grad.axis[0][i] - derivative(i * g.hx())));
    CHECK(err < 20.0 * g.hx() * g.hx());
    if (prev_err > 0.0) CHECK(prev_err / err > 3.5);
    prev_err = err;
  }
}

TEST_CASE("property: discrete divergence theorem and operator identities") {
  for (int seed = 0; seed < 50; ++seed) {
    for (const Grid& g : {Grid(40, 1.3), Grid(24, 20, 1.0, 0.7)}) {
      const ScalarField f = random_smooth_field(g, static_cast<std::uint64_t>(seed), 5);
      const double scale = lp_norm(f, kInfNorm);
      CHECK(std::abs(integrate(laplacian(f))) <= 1e-12 * scale);

      const ScalarField lap = laplacian(f);
      const Hessian H = hessian(f);
      const double lap_scale = max_abs(lap);
      for (std::size_t c = 0; c < f.size(); ++c) {
        double trace = 0.0;
        for (int r = 0; r < H.dim(); ++r) trace += H(r, r)[c];
        CHECK(std::abs(trace - lap[c]) <= 1e-12 * lap_scale);
      }
    }
  }
}

TEST_CASE("laplacian of cos(pi x) converges at second order") {
  double prev = 0.0;
  for (const int n : {32, 64, 128, 256}) {
    const Grid g(n, 1.0);
    const ScalarField lap = laplacian(ScalarField::from_function(g, [](double x, double) { return std::cos(pi * x); }));
    double err = 0.0;
    for (int i = 0; i < n; ++i) err = std::max(err, std::abs(lap[i] + pi * pi * std::cos(pi * g.x(i))));
    if (prev > 0.0) CHECK(prev / err >= 3.5);
    prev = err;
  }
}

TEST_CASE("dirichlet energy") {
  const Grid g(50, 1.0);
  CHECK(dirichlet_energy(ScalarField(g, 4.0)) == 0.0);
  // f = x: interior faces carry slope 1, boundary faces 0; (n-1) faces times h.
  const double e = dirichlet_energy(ScalarField::from_function(g, [](double x, double) { return x; }));
  CHECK(e == doctest::Approx(49.0 / 50.0).epsilon(1e-12));
}

TEST_CASE("field dump round trip") {
  for (const Grid& g : {Grid(6, 1.5), Grid(5, 4, 1.0, 2.0)}) {
    const ScalarField f = random_smooth_field(g, 17, 3);
    std::stringstream buffer;
    write_field_csv(buffer, f);
    std::string header;
    std::getline(std::stringstream(buffer.str()), header);
    CHECK(header == (g.dim() == 1 ? "1,6,1.5" : "2,5,4,1,2"));
    const ScalarField back = read_field_csv(buffer);
    CHECK(back.grid() == g);
    CHECK(std::equal(f.values().begin(), f.values().end(), back.values().begin()));
  }
  std::stringstream junk("3,4,1\n1,2,3,4\n");
  CHECK_THROWS(read_field_csv(junk));
}
