#include "chemo/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "chemo/error.hpp"

namespace chemo {

namespace {

double power(double base, double e) {
  if (e == 0.0) return 1.0;
  if (e == 1.0) return base;
  if (e == 2.0) return base * base;
  return std::pow(base, e);
}

struct FluxWorkspace {
  std::vector<double> diffusivity;  // (u+1)^(m-1) per cell
  std::vector<double> transport;    // (u+1)^alpha per cell
  std::array<std::vector<double>, 2> diffusive;
  std::array<std::vector<double>, 2> chemotactic;
  double diffusivity_max = 1.0;
  double drift_max = 0.0;
  double u_sup = 0.0;
  double v_sup = 0.0;
};

void require_finite_state(const ScalarField& u, const ScalarField& v) {
  if (!u.all_finite() || !v.all_finite()) throw CorruptionError("state contains non-finite values");
}

// Fills face fluxes and the per-step maxima that enter the time-step bound.
void compute_fluxes(const ScalarField& u, const ScalarField& v, const ModelParams& params, FluxWorkspace& ws) {
  const Grid& g = u.grid();
  const std::size_t n = g.size();
  const double m_exp = params.m - 1.0;
  const double alpha = params.alpha;
  const double drift_exp = std::max(alpha, 0.0);

  ws.diffusivity.resize(n);
  ws.transport.resize(n);
  ws.diffusivity_max = 1.0;
  ws.u_sup = -std::numeric_limits<double>::infinity();
  ws.v_sup = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < n; ++c) {
    const double up1 = u[c] + 1.0;
    ws.diffusivity[c] = power(up1, m_exp);
    ws.transport[c] = power(up1, alpha);
    ws.diffusivity_max = std::max(ws.diffusivity_max, ws.diffusivity[c]);
    ws.u_sup = std::max(ws.u_sup, u[c]);
    ws.v_sup = std::max(ws.v_sup, v[c]);
  }

  ws.drift_max = 0.0;
  const bool taxis = params.chi0 != 0.0;
  for (int axis = 0; axis < g.dim(); ++axis) {
    auto& diff = ws.diffusive[axis];
    auto& chemo = ws.chemotactic[axis];
    diff.assign(g.face_count(axis), 0.0);
    chemo.assign(g.face_count(axis), 0.0);
    const double ih = 1.0 / g.spacing(axis);
    const int i_begin = axis == 0 ? 1 : 0;
    const int j_begin = axis == 0 ? 0 : 1;
    for (int j = j_begin; j < g.ny(); ++j) {
      for (int i = i_begin; i < g.nx(); ++i) {
        const std::size_t right = g.index(i, j);
        const std::size_t left = axis == 0 ? g.index(i - 1, j) : g.index(i, j - 1);
        const std::size_t f = g.face_index(axis, i, j);
        diff[f] = 0.5 * (ws.diffusivity[left] + ws.diffusivity[right]) * (u[right] - u[left]) * ih;
        if (!taxis) continue;
        const double v_face = std::max(0.5 * (v[left] + v[right]), 0.0);
        const double s = 1.0 + params.a * v_face;
        const double w = params.chi0 / (s * s) * (v[right] - v[left]) * ih;
        const std::size_t upwind = w > 0.0 ? left : right;
        chemo[f] = ws.transport[upwind] * w;
        const double speed = std::abs(w) * (drift_exp == alpha ? ws.transport[upwind] : power(u[upwind] + 1.0, drift_exp));
        ws.drift_max = std::max(ws.drift_max, speed);
      }
    }
  }
}

double stable_dt_from(const FluxWorkspace& ws, const Grid& g, const ModelParams& params, double safety) {
  const double h = g.min_spacing();
  const double two_dim = 2.0 * g.dim();
  double dt = h * h / (two_dim * ws.diffusivity_max);
  if (ws.drift_max > 0.0) dt = std::min(dt, h / (two_dim * ws.drift_max));
  const double u_sup = std::max(ws.u_sup, 0.0);
  const double v_sup = std::max(ws.v_sup, 0.0);
  dt = std::min(dt, 1.0 / (std::abs(params.k) + 2.0 * params.mu * u_sup + u_sup + v_sup + 1.0));
  return safety * dt;
}

FaceField to_face_field(const Grid& g, const std::array<std::vector<double>, 2>& faces) {
  FaceField out{g, {}};
  for (int axis = 0; axis < g.dim(); ++axis) out.axis.push_back(faces[axis]);
  return out;
}

struct Scratch {
  FluxWorkspace fluxes;
  std::vector<double> u_next;
  std::vector<double> v_next;
};

// Advances `state` in place. On any status other than `advanced` with a
// nonzero dt the state holds the offending update for diagnosis.
StepOutcome advance(SimState& state, const ModelParams& params, const SolverConfig& config, double v_ceiling,
                    Scratch& scratch) {
  const Grid& g = state.u.grid();
  FluxWorkspace& ws = scratch.fluxes;
  compute_fluxes(state.u, state.v, params, ws);

  const double dt_stable = stable_dt_from(ws, g, params, config.safety);
  if (!(dt_stable >= config.dt_min)) {
    return {StepStatus::dt_underflow, 0.0, "stable dt " + std::to_string(dt_stable) + " below dt_min"};
  }
  const double t_stop = next_stop_time(state.t, config);
  const double remaining = t_stop - state.t;
  const bool lands = dt_stable >= remaining;
  // Split the last two steps evenly instead of leaving a sliver step.
  const double dt = lands ? remaining : std::min(dt_stable, std::max(0.5 * remaining, remaining - dt_stable));

  const std::size_t n = g.size();
  scratch.u_next.resize(n);
  scratch.v_next.resize(n);
  const double ihx = 1.0 / g.hx();
  const double ihy = 1.0 / g.hy();
  const double ihx2 = ihx * ihx;
  const double ihy2 = ihy * ihy;
  const auto& dx = ws.diffusive[0];
  const auto& cx = ws.chemotactic[0];
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const std::size_t c = g.index(i, j);
      const std::size_t fl = g.face_index(0, i, j);
      const std::size_t fr = g.face_index(0, i + 1, j);
      double div = ((dx[fr] - cx[fr]) - (dx[fl] - cx[fl])) * ihx;

      const double vc = state.v[c];
      const double vw = i > 0 ? state.v[c - 1] : vc;
      const double ve = i + 1 < g.nx() ? state.v[c + 1] : vc;
      double lap_v = (ve - 2.0 * vc + vw) * ihx2;

      if (g.dim() == 2) {
        const auto& dy = ws.diffusive[1];
        const auto& cy = ws.chemotactic[1];
        const std::size_t fb = g.face_index(1, i, j);
        const std::size_t ft = g.face_index(1, i, j + 1);
        div += ((dy[ft] - cy[ft]) - (dy[fb] - cy[fb])) * ihy;
        const double vs = j > 0 ? state.v[g.index(i, j - 1)] : vc;
        const double vn = j + 1 < g.ny() ? state.v[g.index(i, j + 1)] : vc;
        lap_v += (vn - 2.0 * vc + vs) * ihy2;
      }

      const double uc = state.u[c];
      scratch.u_next[c] = uc + dt * (div + params.k * uc - params.mu * uc * uc);
      scratch.v_next[c] = vc + dt * (lap_v - uc * vc);
    }
  }

  std::copy(scratch.u_next.begin(), scratch.u_next.end(), state.u.values().begin());
  std::copy(scratch.v_next.begin(), scratch.v_next.end(), state.v.values().begin());
  state.t = lands ? t_stop : state.t + dt;

  if (!state.u.all_finite() || !state.v.all_finite()) return {StepStatus::corrupted, dt, "non-finite values after step"};
  const double u_sup = max_value(state.u);
  if (u_sup > config.u_max) return {StepStatus::blowup_detected, dt, "sup u exceeded u_max"};
  const double u_inf = min_value(state.u);
  if (u_inf < -kNegativeTolerance) return {StepStatus::corrupted, dt, "u below zero: " + std::to_string(u_inf)};
  const double v_inf = min_value(state.v);
  if (v_inf < -kNegativeTolerance) return {StepStatus::corrupted, dt, "v below zero: " + std::to_string(v_inf)};
  if (max_value(state.v) > v_ceiling * (1.0 + kMaxPrincipleTolerance))
    return {StepStatus::corrupted, dt, "v above its initial supremum"};
  return {StepStatus::advanced, dt, {}};
}

}  // namespace

void SolverConfig::validate() const {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw DomainError("t_end must be positive");
  if (!(safety > 0.0 && safety <= 1.0)) throw DomainError("safety must lie in (0, 1]");
  if (!(dt_min > 0.0)) throw DomainError("dt_min must be positive");
  if (!(u_max > 0.0)) throw DomainError("u_max must be positive");
  if (output_interval < 0.0) throw DomainError("output_interval must be nonnegative");
  if (output_every_steps < 0) throw DomainError("output_every_steps must be nonnegative");
}

const char* to_string(StepStatus s) {
  switch (s) {
    case StepStatus::advanced: return "advanced";
    case StepStatus::blowup_detected: return "blowup_detected";
    case StepStatus::dt_underflow: return "dt_underflow";
    case StepStatus::corrupted: return "corrupted";
  }
  return "unknown";
}

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::completed: return "completed";
    case RunStatus::blowup_detected: return "blowup_detected";
    case RunStatus::dt_underflow: return "dt_underflow";
    case RunStatus::corrupted: return "corrupted";
  }
  return "unknown";
}

FaceField diffusive_flux_u(const ScalarField& u, double m) {
  if (!u.all_finite()) throw CorruptionError("diffusive_flux_u: non-finite u");
  ModelParams params;
  params.m = m;
  params.chi0 = 0.0;
  FluxWorkspace ws;
  compute_fluxes(u, u, params, ws);
  return to_face_field(u.grid(), ws.diffusive);
}

FaceField chemotactic_flux(const ScalarField& u, const ScalarField& v, const ModelParams& params) {
  require_finite_state(u, v);
  FluxWorkspace ws;
  compute_fluxes(u, v, params, ws);
  return to_face_field(u.grid(), ws.chemotactic);
}

ScalarField reaction_u(const ScalarField& u, double k, double mu) {
  ScalarField out(u.grid());
  for (std::size_t c = 0; c < u.size(); ++c) out[c] = k * u[c] - mu * u[c] * u[c];
  return out;
}

ScalarField rhs_v(const ScalarField& u, const ScalarField& v) {
  ScalarField out = laplacian(v);
  for (std::size_t c = 0; c < v.size(); ++c) out[c] -= u[c] * v[c];
  return out;
}

double stable_dt(const SimState& state, const ModelParams& params, const SolverConfig& config) {
  require_finite_state(state.u, state.v);
  FluxWorkspace ws;
  compute_fluxes(state.u, state.v, params, ws);
  return stable_dt_from(ws, state.u.grid(), params, config.safety);
}

double next_stop_time(double t, const SolverConfig& config) {
  if (config.output_interval <= 0.0) return config.t_end;
  const double dT = config.output_interval;
  double n = std::floor(t / dT) + 1.0;
  while (n * dT <= t) n += 1.0;
  return std::min(n * dT, config.t_end);
}

StepResult step(const SimState& state, const ModelParams& params, const SolverConfig& config, double v_ceiling) {
  validate_simulable(params);
  config.validate();
  require_finite_state(state.u, state.v);
  StepResult result{state, {}};
  Scratch scratch;
  result.outcome = advance(result.state, params, config, v_ceiling, scratch);
  return result;
}

RunResult run(SimState initial, const ModelParams& params, const SolverConfig& config, const MonitorHook& hook) {
  validate_simulable(params);
  config.validate();
  require_finite_state(initial.u, initial.v);
  if (min_value(initial.u) < 0.0 || min_value(initial.v) < 0.0)
    throw DomainError("initial data must be nonnegative");
  if (!(initial.u.grid() == initial.v.grid())) throw DomainError("u and v must live on the same grid");

  const double v_ceiling = max_value(initial.v);
  RunResult result{RunStatus::completed, std::move(initial), 0, 0.0, {}};
  SimState& state = result.final_state;
  result.sup_u_max = max_value(state.u);

  double last_recorded_t = state.t;
  auto emit = [&](double dt) {
    if (hook) hook(state, dt);
    last_recorded_t = state.t;
  };
  emit(0.0);

  if (result.sup_u_max > config.u_max) {
    result.status = RunStatus::blowup_detected;
    result.detail = "sup u0 exceeds u_max";
    return result;
  }

  Scratch scratch;
  while (state.t < config.t_end) {
    const double t_stop = next_stop_time(state.t, config);
    const StepOutcome outcome = advance(state, params, config, v_ceiling, scratch);
    if (outcome.status == StepStatus::dt_underflow) {
      result.status = RunStatus::dt_underflow;
      result.detail = outcome.detail;
      return result;
    }
    ++result.steps;
    result.sup_u_max = std::max(result.sup_u_max, max_value(state.u));
    if (outcome.status != StepStatus::advanced) {
      result.status = outcome.status == StepStatus::blowup_detected ? RunStatus::blowup_detected : RunStatus::corrupted;
      result.detail = outcome.detail;
      emit(outcome.dt_used);
      return result;
    }
    const bool on_output = config.output_interval > 0.0 && state.t == t_stop;
    const bool on_step = config.output_every_steps > 0 && result.steps % config.output_every_steps == 0;
    if (on_output || on_step || state.t >= config.t_end) emit(outcome.dt_used);
  }
  if (last_recorded_t != state.t) emit(0.0);
  return result;
}

}  // namespace chemo
