#include "chemo/profiles.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "chemo/error.hpp"

namespace chemo {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

double parse_arg(std::string_view text, std::string_view profile) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value))
    throw DomainError("profile '" + std::string(profile) + "': bad argument '" + std::string(text) + "'");
  return value;
}

}  // namespace

ProfileSpec parse_profile(std::string_view text, int dim) {
  if (dim != 1 && dim != 2) throw DomainError("profile dimension must be 1 or 2");
  const std::string_view whole = trim(text);
  const auto open = whole.find('(');
  if (open == std::string_view::npos || whole.back() != ')')
    throw DomainError("profile '" + std::string(whole) + "': expected name(args)");

  const std::string_view name = trim(whole.substr(0, open));
  std::string_view inner = whole.substr(open + 1, whole.size() - open - 2);
  ProfileSpec spec;
  while (!trim(inner).empty()) {
    const auto comma = inner.find(',');
    spec.args.push_back(parse_arg(inner.substr(0, comma), whole));
    if (comma == std::string_view::npos) break;
    inner.remove_prefix(comma + 1);
    if (trim(inner).empty()) throw DomainError("profile '" + std::string(whole) + "': trailing comma");
  }

  auto require_arity = [&](std::size_t n) {
    if (spec.args.size() != n)
      throw DomainError("profile '" + std::string(whole) + "' takes " + std::to_string(n) + " arguments");
  };
  if (name == "constant") {
    spec.kind = ProfileKind::constant;
    require_arity(1);
    if (spec.args[0] < 0.0) throw DomainError("constant profile must be nonnegative");
  } else if (name == "gaussian-bump") {
    spec.kind = ProfileKind::gaussian_bump;
    require_arity(dim == 1 ? 4 : 5);
    const double width = spec.args[dim];
    const double amplitude = spec.args[dim + 1];
    const double floor = spec.args[dim + 2];
    if (!(width > 0.0)) throw DomainError("gaussian-bump width must be positive");
    if (amplitude < 0.0 || floor < 0.0) throw DomainError("gaussian-bump amplitude and floor must be nonnegative");
  } else if (name == "cosine") {
    spec.kind = ProfileKind::cosine;
    require_arity(3);
    const double mode = spec.args[1];
    if (mode < 0.0 || mode != std::floor(mode)) throw DomainError("cosine mode must be a nonnegative integer");
    if (spec.args[2] < std::abs(spec.args[0])) throw DomainError("cosine profile requires floor >= |amplitude|");
  } else {
    throw DomainError("unknown profile '" + std::string(name) + "'");
  }
  return spec;
}

ScalarField build_profile(const Grid& grid, const ProfileSpec& spec) {
  const auto& a = spec.args;
  switch (spec.kind) {
    case ProfileKind::constant:
      return ScalarField(grid, a[0]);
    case ProfileKind::gaussian_bump: {
      const bool two_d = grid.dim() == 2;
      const double cx = a[0];
      const double cy = two_d ? a[1] : 0.0;
      const double w = a[grid.dim()];
      const double amplitude = a[grid.dim() + 1];
      const double floor = a[grid.dim() + 2];
      return ScalarField::from_function(grid, [=](double x, double y) {
        const double r2 = (x - cx) * (x - cx) + (two_d ? (y - cy) * (y - cy) : 0.0);
        return floor + amplitude * std::exp(-r2 / (2.0 * w * w));
      });
    }
    case ProfileKind::cosine: {
      const double kx = a[1] * std::numbers::pi / grid.extent(0);
      const double ky = grid.dim() == 2 ? a[1] * std::numbers::pi / grid.extent(1) : 0.0;
      const bool two_d = grid.dim() == 2;
      const double amplitude = a[0];
      const double floor = a[2];
      ScalarField f = ScalarField::from_function(grid, [=](double x, double y) {
        return floor + amplitude * std::cos(kx * x) * (two_d ? std::cos(ky * y) : 1.0);
      });
      // floor >= |amplitude| makes this exact up to roundoff; remove the roundoff.
      for (double& value : f.values()) value = std::max(value, 0.0);
      return f;
    }
  }
  throw DomainError("unhandled profile kind");
}

InitialFields build_initial_data(const Grid& grid, std::string_view u0_profile, std::string_view v0_profile) {
  return {build_profile(grid, parse_profile(u0_profile, grid.dim())),
          build_profile(grid, parse_profile(v0_profile, grid.dim()))};
}

InitialDataSummary summarize(const InitialFields& fields) {
  InitialDataSummary s;
  s.v0_sup = max_value(fields.v0);
  s.u0_mass = integrate(fields.u0);
  s.gradv0_l2sq = dirichlet_energy(fields.v0);
  s.domain_volume = fields.u0.grid().volume();
  return s;
}

}  // namespace chemo
