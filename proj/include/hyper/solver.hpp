#pragma once

#include <complex>
#include <string>
#include <vector>

#include "hyper/ensemble.hpp"
#include "hyper/field.hpp"
#include "hyper/grid.hpp"
#include "hyper/pulse.hpp"
#include "hyper/stark.hpp"

namespace hyper {

// Strang splitting: half detuning rotation, field solve, exact Rabi
// rotation, half detuning rotation. Second order in t_step.
enum class TimeIntegrator { strang_exact_rotation };
enum class FieldIntegrator { trapezoid };
enum class PiPulseMode { instantaneous, resolved };

struct SolverConfig {
  TimeIntegrator time_integrator = TimeIntegrator::strang_exact_rotation;
  FieldIntegrator field_z_integrator = FieldIntegrator::trapezoid;
  PiPulseMode pi_pulse_mode = PiPulseMode::instantaneous;
  Direction direction_stage = Direction::forward;
  // Largest tolerated |u^2+v^2+w^2-1| at the end of a run, per 1000 steps.
  double norm_tolerance = 1e-6;
  // Resolved-pulse limits.
  double max_rabi_step = 0.1;
  double min_steps_per_fwhm = 20.0;
};

class MaxwellBlochSolver {
 public:
  MaxwellBlochSolver(const SimulationGrid& grid, SolverConfig config);

  // Advances `state` by one t_step from state.time. `boundary_field` enters
  // at z = 0 for forward emission and at z = L for backward emission. Returns
  // the field leaving the opposite face, averaged over the step.
  std::complex<double> step(EnsembleState& state, std::complex<double> boundary_field, const StarkProfile& stark) const;

  const SimulationGrid& grid() const { return grid_; }
  const SolverConfig& config() const { return config_; }

 private:
  void rotate_detuning(EnsembleState& state, double t_from, double t_to, const StarkProfile& stark) const;

  const SimulationGrid& grid_;
  SolverConfig config_;
  std::vector<double> half_cos_;
  std::vector<double> half_sin_;
  double coupling_;
};

// Rotation by area_multiplier * pi about the in-plane axis at `phase`.
// An exact multiplier of 1 maps (u, v, w) -> (u, -v, -w) in the lab frame at
// phase 0, i.e. D -> conj(D) with inversion. With `direction_flip` the
// ensemble's emission direction is toggled.
void apply_instantaneous_pi(EnsembleState& state, bool direction_flip, double area_multiplier = 1.0,
                            double phase = 0.0);

// Multiplies the coherence at z by exp(i * phase_per_z * z).
void apply_stark_kick(EnsembleState& state, const SimulationGrid& grid, double phase_per_z);

// Field-free precession at the grid detunings for `duration` (negative
// durations run backwards).
void free_evolve(EnsembleState& state, const SimulationGrid& grid, double duration);

struct RunResult {
  FieldEnvelope forward_output;   // at z = L
  FieldEnvelope backward_output;  // at z = 0
  EnsembleState final_state;
  std::vector<std::string> warnings;
  std::size_t backward_start_step = 0;  // first step of the backward stage, or num_steps
};

// Integrates the whole grid span. Instantaneous rephasing pulses act at the
// step boundary nearest their centre. Throws ValidationError for sequences
// that do not fit the grid or mode, SolverError on numerical failure.
RunResult run_sequence(const PulseSequence& sequence, const StarkProfile& stark, const SimulationGrid& grid,
                       const SolverConfig& config);

struct ExcitedFraction {
  std::vector<double> detunings;
  std::vector<double> per_detuning;
  double aggregate = 0.0;
};

// (w + 1)/2 averaged over z for each detuning inside `window`, and its
// density-weighted mean. Throws std::invalid_argument for an empty window.
ExcitedFraction excited_state_fraction(const EnsembleState& state, const SimulationGrid& grid, Interval window);

}  // namespace hyper
