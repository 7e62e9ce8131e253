#pragma once

// Explicit finite-volume solver for
//
//   u_t = div((u+1)^(m-1) grad u - (u+1)^alpha chi(v) grad v) + k u - mu u^2
//   v_t = lap v - u v
//
// with zero-flux boundaries, chi(v) = chi0 / (1 + a v)^2.
//
// Fluxes live on cell faces. Diffusivity uses the arithmetic face mean of
// (u+1)^(m-1); the chemotactic drift w = chi(v_face) (v_R - v_L)/h transports
// the factor (u+1)^alpha taken from the upwind cell. Boundary faces carry no
// flux, so the u-update conserves mass exactly up to roundoff when k = mu = 0.

#include <functional>
#include <limits>
#include <string>

#include "chemo/certificates.hpp"
#include "chemo/grid.hpp"

namespace chemo {

struct SimState {
  double t = 0.0;
  ScalarField u;
  ScalarField v;
};

struct SolverConfig {
  double t_end = 1.0;
  double safety = 0.4;
  double dt_min = 1e-12;
  double u_max = 1e6;
  double output_interval = 0.0;  // hook cadence in time units; 0 disables
  int output_every_steps = 0;    // hook cadence in steps; 0 disables

  void validate() const;
};

enum class StepStatus { advanced, blowup_detected, dt_underflow, corrupted };

const char* to_string(StepStatus s);

struct StepOutcome {
  StepStatus status = StepStatus::advanced;
  double dt_used = 0.0;
  std::string detail;
};

struct StepResult {
  SimState state;
  StepOutcome outcome;
};

/// Positivity slack for u and v below zero.
inline constexpr double kNegativeTolerance = 1e-12;
/// Relative slack for v above its initial supremum.
inline constexpr double kMaxPrincipleTolerance = 1e-10;

FaceField diffusive_flux_u(const ScalarField& u, double m);

/// Signed face values of (u_upwind + 1)^alpha * chi(v_face) * (v_R - v_L)/h.
FaceField chemotactic_flux(const ScalarField& u, const ScalarField& v, const ModelParams& params);

ScalarField reaction_u(const ScalarField& u, double k, double mu);

ScalarField rhs_v(const ScalarField& u, const ScalarField& v);

/// safety * min(h^2 / (2 dim D_max), h / (2 dim W_max), 1 / (|k| + 2 mu sup u + sup u + sup v + 1)),
/// D_max = max(1, max_cells (u+1)^(m-1)), W_max = max_faces |w| (u_up + 1)^max(alpha, 0).
double stable_dt(const SimState& state, const ModelParams& params, const SolverConfig& config);

/// Next time the stepper must land on exactly: the next output time or t_end.
double next_stop_time(double t, const SolverConfig& config);

/// One forward-Euler step toward next_stop_time. `v_ceiling` is sup v0; the
/// step reports `corrupted` when v exceeds it beyond kMaxPrincipleTolerance.
StepResult step(const SimState& state, const ModelParams& params, const SolverConfig& config,
                double v_ceiling = std::numeric_limits<double>::infinity());

enum class RunStatus { completed, blowup_detected, dt_underflow, corrupted };

const char* to_string(RunStatus s);

struct RunResult {
  RunStatus status = RunStatus::completed;
  SimState final_state;
  long steps = 0;
  double sup_u_max = 0.0;
  std::string detail;
};

/// Called with the current state and the last dt (0 for the initial state).
using MonitorHook = std::function<void(const SimState&, double dt)>;

/// Steps until t_end, blow-up (sup u > u_max, including at t = 0), dt
/// underflow, or corruption. The hook fires on the initial state, at the
/// configured cadence, and on the terminal state.
RunResult run(SimState initial, const ModelParams& params, const SolverConfig& config,
              const MonitorHook& hook = {});

}  // namespace chemo
