#include "hyper/solver.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "hyper/errors.hpp"

namespace hyper {

namespace {

struct Rotation {
  double nx = 1.0;
  double ny = 0.0;
  double c = 1.0;
  double s = 0.0;
};

// Rotation about (nx, ny, 0) applied to n Bloch vectors.
void rotate_in_plane(const Rotation& r, double* u, double* v, double* w, std::size_t n) {
  const double k = 1.0 - r.c;
  for (std::size_t j = 0; j < n; ++j) {
    const double ndr = r.nx * u[j] + r.ny * v[j];
    const double nu = u[j] * r.c + r.ny * w[j] * r.s + r.nx * ndr * k;
    const double nv = v[j] * r.c - r.nx * w[j] * r.s + r.ny * ndr * k;
    const double nw = w[j] * r.c + (r.nx * v[j] - r.ny * u[j]) * r.s;
    u[j] = nu;
    v[j] = nv;
    w[j] = nw;
  }
}

void cos_sin_pi(double m, double& c, double& s) {
  if (m == 1.0) {
    c = -1.0;
    s = 0.0;
  } else {
    c = std::cos(m * std::numbers::pi);
    s = std::sin(m * std::numbers::pi);
  }
}

[[noreturn]] void report_nonfinite(const EnsembleState& state, const SimulationGrid& grid, double t) {
  std::ostringstream msg;
  msg << "non-finite field at t = " << t;
  for (std::size_t k = 0; k < state.num_z(); ++k) {
    for (std::size_t j = 0; j < state.num_detunings(); ++j) {
      const std::size_t i = state.index(k, j);
      if (!std::isfinite(state.u[i]) || !std::isfinite(state.v[i]) || !std::isfinite(state.w[i])) {
        msg << "; first bad Bloch vector at z = " << grid.z_points()[k] << ", detuning = " << grid.detunings()[j];
        throw SolverError(msg.str());
      }
    }
  }
  throw SolverError(msg.str());
}

}  // namespace

MaxwellBlochSolver::MaxwellBlochSolver(const SimulationGrid& grid, SolverConfig config)
    : grid_(grid), config_(config), coupling_(grid.optical_depth() / (2.0 * std::numbers::pi)) {
  const double h = 0.5 * grid.t_step();
  for (double d : grid.detunings()) {
    half_cos_.push_back(std::cos(d * h));
    half_sin_.push_back(std::sin(d * h));
  }
}

void MaxwellBlochSolver::rotate_detuning(EnsembleState& state, double t_from, double t_to,
                                         const StarkProfile& stark) const {
  const std::size_t nd = state.num_detunings();
  const auto z = grid_.z_points();
  const double stark_phase = stark.empty() ? 0.0 : stark.integrated_gradient(t_from, t_to);
  for (std::size_t k = 0; k < state.num_z(); ++k) {
    state.frame_phase[k] += stark_phase * z[k];
    double* u = &state.u[k * nd];
    double* v = &state.v[k * nd];
    for (std::size_t j = 0; j < nd; ++j) {
      const double nu = u[j] * half_cos_[j] - v[j] * half_sin_[j];
      const double nv = u[j] * half_sin_[j] + v[j] * half_cos_[j];
      u[j] = nu;
      v[j] = nv;
    }
  }
}

std::complex<double> MaxwellBlochSolver::step(EnsembleState& state, std::complex<double> boundary_field,
                                              const StarkProfile& stark) const {
  const double t = state.time;
  const double dt = grid_.t_step();
  const std::size_t nz = state.num_z();
  const std::size_t nd = state.num_detunings();
  const auto weights = grid_.weights();
  const double h = grid_.dz();
  const bool backward = state.emission == Direction::backward;

  rotate_detuning(state, t, t + 0.5 * dt, stark);

  std::complex<double> a = boundary_field;
  std::complex<double> f_prev = 0.0;
  double c_prev = 0.0;
  for (std::size_t m = 0; m < nz; ++m) {
    const std::size_t k = backward ? nz - 1 - m : m;
    double* u = &state.u[k * nd];
    double* v = &state.v[k * nd];
    double* w = &state.w[k * nd];

    double su = 0.0;
    double sv = 0.0;
    double sw = 0.0;
    for (std::size_t j = 0; j < nd; ++j) {
      su += weights[j] * u[j];
      sv += weights[j] * v[j];
      sw += weights[j] * w[j];
    }
    const std::complex<double> frame = std::polar(1.0, state.frame_phase[k]);
    const std::complex<double> f = std::complex<double>(0.0, coupling_) * frame * std::complex<double>(0.5 * su, 0.5 * sv);
    const double c = coupling_ * 0.5 * dt * sw;
    if (m > 0) a = (a * (1.0 + 0.5 * h * c_prev) + 0.5 * h * (f_prev + f)) / (1.0 - 0.5 * h * c);
    f_prev = f;
    c_prev = c;

    if (a != 0.0) {
      const std::complex<double> local = a * std::conj(frame);
      const double mag = std::abs(local);
      Rotation r;
      r.nx = local.real() / mag;
      r.ny = local.imag() / mag;
      r.c = std::cos(2.0 * mag * dt);
      r.s = std::sin(2.0 * mag * dt);
      rotate_in_plane(r, u, v, w, nd);
    }
  }

  rotate_detuning(state, t + 0.5 * dt, t + dt, stark);
  state.time = t + dt;
  return a;
}

void apply_instantaneous_pi(EnsembleState& state, bool direction_flip, double area_multiplier, double phase) {
  Rotation r;
  cos_sin_pi(area_multiplier, r.c, r.s);
  const std::size_t nd = state.num_detunings();
  for (std::size_t k = 0; k < state.num_z(); ++k) {
    const double axis = phase - state.frame_phase[k];
    if (axis == 0.0) {
      r.nx = 1.0;
      r.ny = 0.0;
    } else {
      r.nx = std::cos(axis);
      r.ny = std::sin(axis);
    }
    rotate_in_plane(r, &state.u[k * nd], &state.v[k * nd], &state.w[k * nd], nd);
  }
  if (direction_flip)
    state.emission = state.emission == Direction::forward ? Direction::backward : Direction::forward;
}

void apply_stark_kick(EnsembleState& state, const SimulationGrid& grid, double phase_per_z) {
  const auto z = grid.z_points();
  for (std::size_t k = 0; k < state.num_z(); ++k) state.frame_phase[k] += phase_per_z * z[k];
}

void free_evolve(EnsembleState& state, const SimulationGrid& grid, double duration) {
  const auto det = grid.detunings();
  const std::size_t nd = state.num_detunings();
  for (std::size_t j = 0; j < nd; ++j) {
    const double c = std::cos(det[j] * duration);
    const double s = std::sin(det[j] * duration);
    for (std::size_t k = 0; k < state.num_z(); ++k) {
      const std::size_t i = state.index(k, j);
      const double nu = state.u[i] * c - state.v[i] * s;
      const double nv = state.u[i] * s + state.v[i] * c;
      state.u[i] = nu;
      state.v[i] = nv;
    }
  }
  state.time += duration;
}

RunResult run_sequence(const PulseSequence& sequence, const StarkProfile& stark, const SimulationGrid& grid,
                       const SolverConfig& config) {
  const Interval span = grid.t_span();
  const double dt = grid.t_step();
  const bool resolved = config.pi_pulse_mode == PiPulseMode::resolved;

  bool has_flip = false;
  for (const auto& r : sequence.rephasing) {
    if (!span.contains(r.pulse.center))
      throw ValidationError("sequence", "rephasing pulse at t = " + std::to_string(r.pulse.center) + " lies outside the grid span");
    if (!(r.area_multiplier > 0.0 && r.area_multiplier <= 1.0))
      throw ValidationError("area_multiplier", "must lie in (0, 1]");
    has_flip = has_flip || r.direction_flip;
  }
  for (const auto& p : sequence.inputs)
    if (!span.contains(p.center))
      throw ValidationError("sequence", "input pulse at t = " + std::to_string(p.center) + " lies outside the grid span");
  if (resolved && has_flip)
    throw ValidationError("pi_pulse_mode", "direction_flip requires instantaneous rephasing pulses");
  if (config.direction_stage == Direction::backward && !has_flip)
    throw ValidationError("direction_stage", "a backward stage needs a direction_flip rephasing pulse");

  auto check_resolved = [&](const OpticalPulse& p) {
    if (p.area == 0.0) return;
    if (dt > p.fwhm / config.min_steps_per_fwhm)
      throw SolverError("t_step " + std::to_string(dt) + " exceeds fwhm/" + std::to_string(config.min_steps_per_fwhm) +
                        " of a resolved pulse");
    if (2.0 * p.peak_amplitude() * dt > config.max_rabi_step)
      throw SolverError("peak Rabi frequency times t_step exceeds " + std::to_string(config.max_rabi_step));
  };
  for (const auto& p : sequence.inputs) check_resolved(p);
  if (resolved)
    for (const auto& r : sequence.rephasing) check_resolved(r.pulse);

  std::vector<std::size_t> pi_steps;
  for (const auto& r : sequence.rephasing) {
    const double idx = std::round((r.pulse.center - span.begin) / dt);
    pi_steps.push_back(static_cast<std::size_t>(idx));
    if (!resolved) {
      const double t_pi = span.begin + idx * dt;
      for (const auto& win : stark.windows())
        if (t_pi > win.t_start - dt && t_pi < win.t_end + dt)
          throw ValidationError("stark", "rephasing pulse at t = " + std::to_string(t_pi) +
                                             " is within one t_step of a Stark window");
    } else {
      const Interval sup = r.pulse.support();
      for (const auto& win : stark.windows())
        if (sup.end > win.t_start && sup.begin < win.t_end)
          throw ValidationError("stark", "resolved rephasing pulse overlaps a Stark window");
    }
  }

  const auto drive = boundary_drive(sequence, grid, resolved);
  MaxwellBlochSolver solver(grid, config);

  RunResult result;
  result.warnings = grid.warnings();
  result.forward_output = zero_envelope(span.begin, dt, grid.num_steps());
  result.backward_output = zero_envelope(span.begin, dt, grid.num_steps());
  result.backward_output.direction = Direction::backward;
  result.backward_start_step = grid.num_steps();
  result.final_state = ground_state(grid);
  EnsembleState& state = result.final_state;

  for (std::size_t n = 0; n < grid.num_steps(); ++n) {
    if (!resolved) {
      for (std::size_t p = 0; p < pi_steps.size(); ++p) {
        if (pi_steps[p] != n) continue;
        const auto& r = sequence.rephasing[p];
        apply_instantaneous_pi(state, r.direction_flip, r.area_multiplier, r.pulse.phase);
        if (state.emission == Direction::backward && result.backward_start_step == grid.num_steps())
          result.backward_start_step = n;
      }
    }
    state.time = grid.time_at(n);
    const bool backward = state.emission == Direction::backward;
    const std::complex<double> a = solver.step(state, backward ? std::complex<double>() : drive[n], stark);
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) report_nonfinite(state, grid, grid.time_at(n));
    (backward ? result.backward_output : result.forward_output).samples[n] = a;
  }
  if (!resolved)
    for (std::size_t p = 0; p < pi_steps.size(); ++p)
      if (pi_steps[p] == grid.num_steps()) {
        const auto& r = sequence.rephasing[p];
        apply_instantaneous_pi(state, r.direction_flip, r.area_multiplier, r.pulse.phase);
      }

  const double norm_err = state.max_norm_error();
  const double allowed = config.norm_tolerance * std::max(1.0, static_cast<double>(grid.num_steps()) / 1000.0);
  if (!(norm_err <= allowed)) {
    std::ostringstream msg;
    msg << "Bloch norm drift " << norm_err << " exceeds " << allowed;
    throw SolverError(msg.str());
  }
  return result;
}

ExcitedFraction excited_state_fraction(const EnsembleState& state, const SimulationGrid& grid, Interval window) {
  ExcitedFraction out;
  const auto det = grid.detunings();
  const auto weights = grid.weights();
  double total_w = 0.0;
  double total = 0.0;
  for (std::size_t j = 0; j < det.size(); ++j) {
    if (!window.contains(det[j])) continue;
    double mean = 0.0;
    for (std::size_t k = 0; k < state.num_z(); ++k) mean += 0.5 * (state.w[state.index(k, j)] + 1.0);
    mean /= static_cast<double>(state.num_z());
    out.detunings.push_back(det[j]);
    out.per_detuning.push_back(mean);
    total += weights[j] * mean;
    total_w += weights[j];
  }
  if (out.detunings.empty()) throw std::invalid_argument("detuning window contains no grid points");
  out.aggregate = total_w > 0.0 ? total / total_w : 0.0;
  return out;
}

}  // namespace hyper
