#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyper/field.hpp"
#include "hyper/grid.hpp"
#include "hyper/pulse.hpp"
#include "hyper/solver.hpp"
#include "hyper/stark.hpp"

namespace hyper {

enum class ProtocolKind { two_pulse, three_pulse_context, hyper_forward, hyper_backward };
enum class SweepVariable { none, alpha_L, gradient, input_area };

const char* to_string(ProtocolKind kind);
const char* to_string(SweepVariable variable);

struct SequenceOptions {
  // Rephasing pulse template; only shape and fwhm are used, and only in
  // resolved mode.
  PulseShape pi_shape = PulseShape::gaussian;
  double pi_fwhm = 0.5;
  double pi_area_multiplier = 1.0;
  // Clearance between Stark windows and neighbouring pulses.
  double window_gap = 0.5;
  // Relative error applied to the inter-pi gradient (0 = balanced).
  double balance_error = 0.0;
  bool guard_3pe = true;
  bool resolved_pi = false;
};

struct BuiltSequence {
  PulseSequence sequence;
  StarkProfile stark;
  double echo_time = 0.0;        // where the measured echo is expected
  double two_pulse_time = 0.0;   // 2 t2 - t1
  double three_pulse_time = 0.0; // t4 + t2 - t1 (HYPER only)
  double balance_residual = 0.0; // net phase per unit z over input -> echo
  std::vector<std::string> flags;
};

// Input at t1, pi-pulses at t2 and t4. `stark_phase` is the phase across the
// sample accumulated in each of the two windows: a short one between the
// input and t2, and one spanning (t2, t4). With `backward` the second pulse
// counter-propagates. Throws ValidationError on ordering, degenerate echo,
// guard or balance violations.
BuiltSequence build_hyper_sequence(double t1, double t2, double t4, const OpticalPulse& input, double stark_phase,
                                   bool asymmetric_3pe_guard, const SequenceOptions& options = {},
                                   bool backward = false);

// Input at t1 and one pi-pulse at t2, with an optional unbalanced window of
// total phase `stark_phase` between them.
BuiltSequence build_two_pulse_sequence(double t1, double t2, const OpticalPulse& input, double stark_phase,
                                       const SequenceOptions& options = {});

struct ExperimentPlan {
  ProtocolKind kind = ProtocolKind::hyper_forward;
  SweepVariable sweep = SweepVariable::none;
  // Sweep values: alpha_L, total Stark phase (rad) or input area (units of pi).
  std::vector<double> values;
  double alpha_L = 1.0;
  double t1 = 0.0;
  double t2 = 10.0;
  double t4 = 35.0;
  OpticalPulse input;
  double stark_phase = 0.0;
  SequenceOptions options;
  bool reference_run = false;
  GridSpec grid;
  SolverConfig solver;
  std::uint64_t seed = 0;
  std::string label;

  // Throws ValidationError naming the offending field.
  void validate() const;
  // The plan with the sweep variable set to `value`.
  ExperimentPlan at(double value) const;
  BuiltSequence build() const;
};

struct EchoMetrics {
  double echo_energy = 0.0;
  double echo_area = 0.0;
  double peak_time = 0.0;
  double input_energy = 0.0;
  double efficiency = 0.0;
  std::optional<double> suppression_ratio;
};

// Energy, area and peak over [expected_time +- window_halfwidth]. Efficiency
// is echo_energy / input_energy (0 when input_energy is 0). Throws
// std::invalid_argument when the window leaves the trace span.
EchoMetrics measure_echo(const FieldEnvelope& trace, double expected_time, double window_halfwidth,
                         double input_energy = 0.0);

struct PlanRow {
  double value = 0.0;
  EchoMetrics metrics;
  FieldEnvelope trace;
  std::vector<std::string> flags;
};

// Result of a single plan point.
PlanRow run_plan_point(const ExperimentPlan& plan);

// One solver run per sweep value, plus zero-field references when the plan
// asks for suppression ratios. Rows come back in sweep order.
std::vector<PlanRow> run_plan(const ExperimentPlan& plan, unsigned threads = 1);

}  // namespace hyper
