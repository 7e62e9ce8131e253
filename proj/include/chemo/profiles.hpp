#pragma once

// Named initial-data profiles, all nonnegative by construction:
//
//   constant(c)                                     c >= 0
//   gaussian-bump(center, width, amplitude, floor)  1D
//   gaussian-bump(cx, cy, width, amplitude, floor)  2D
//       floor + amplitude * exp(-|x - c|^2 / (2 width^2)),  width > 0, amplitude, floor >= 0
//   cosine(amplitude, mode, floor)
//       floor + amplitude * cos(mode pi x / Lx) [* cos(mode pi y / Ly) in 2D],
//       floor >= |amplitude|, mode a nonnegative integer

#include <string>
#include <string_view>
#include <vector>

#include "chemo/certificates.hpp"
#include "chemo/grid.hpp"

namespace chemo {

enum class ProfileKind { constant, gaussian_bump, cosine };

struct ProfileSpec {
  ProfileKind kind = ProfileKind::constant;
  std::vector<double> args;
};

/// Parses and validates a profile string for a `dim`-dimensional grid.
/// Throws DomainError on an unknown name, wrong arity or a combination that
/// could go negative.
ProfileSpec parse_profile(std::string_view text, int dim);

ScalarField build_profile(const Grid& grid, const ProfileSpec& spec);

struct InitialFields {
  ScalarField u0;
  ScalarField v0;
};

InitialFields build_initial_data(const Grid& grid, std::string_view u0_profile, std::string_view v0_profile);

/// sup v0, int u0, the discrete Dirichlet energy of v0 and |Omega|.
InitialDataSummary summarize(const InitialFields& fields);

}  // namespace chemo
