#include "hyper/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hyper/errors.hpp"
#include "hyper/oracle.hpp"
#include "hyper/parallel.hpp"

namespace hyper {

const char* to_string(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::two_pulse: return "2pe";
    case ProtocolKind::three_pulse_context: return "3pe-context";
    case ProtocolKind::hyper_forward: return "hyper-forward";
    case ProtocolKind::hyper_backward: return "hyper-backward";
  }
  return "?";
}

const char* to_string(SweepVariable variable) {
  switch (variable) {
    case SweepVariable::none: return "none";
    case SweepVariable::alpha_L: return "alpha_L";
    case SweepVariable::gradient: return "gradient";
    case SweepVariable::input_area: return "input_area";
  }
  return "?";
}

namespace {

std::string fmt(double x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

double pi_clearance(const SequenceOptions& options) {
  return options.resolved_pi ? std::max(options.window_gap, 3.0 * options.pi_fwhm) : options.window_gap;
}

RephasingPulse make_pi(double t, const SequenceOptions& options) {
  RephasingPulse r;
  r.pulse.shape = options.pi_shape;
  r.pulse.center = t;
  r.pulse.fwhm = options.pi_fwhm;
  r.pulse.area = std::numbers::pi;
  r.area_multiplier = options.pi_area_multiplier;
  return r;
}

// Window between the input and the first pi-pulse.
StarkWindow pre_window(double t2, const OpticalPulse& input, const SequenceOptions& options, double phase) {
  StarkWindow w;
  w.t_start = input.support().end + options.window_gap;
  w.t_end = t2 - pi_clearance(options);
  if (!(w.t_end > w.t_start))
    throw ValidationError("stark_phase", "no room for a Stark window between the input (ends " +
                                             fmt(input.support().end) + ") and t2 = " + fmt(t2));
  w.phase = phase;
  return w;
}

void check_input_clear(double t2, const OpticalPulse& input, const SequenceOptions& options) {
  const double pi_start = options.resolved_pi ? t2 - 3.0 * options.pi_fwhm : t2;
  if (input.support().end >= pi_start)
    throw ValidationError("t2", "input pulse (support ends at " + fmt(input.support().end) +
                                    ") overlaps the first rephasing pulse at " + fmt(t2));
}

}  // namespace

BuiltSequence build_two_pulse_sequence(double t1, double t2, const OpticalPulse& input, double stark_phase,
                                       const SequenceOptions& options) {
  if (!(t1 < t2)) throw ValidationError("t2", "must be later than t1");
  OpticalPulse in = input;
  in.center = t1;
  check_input_clear(t2, in, options);

  BuiltSequence out;
  out.sequence.inputs = {in};
  out.sequence.rephasing = {make_pi(t2, options)};
  if (stark_phase != 0.0) out.stark = StarkProfile({pre_window(t2, in, options, stark_phase)});
  else out.flags.push_back("no suppression");
  out.two_pulse_time = 2.0 * t2 - t1;
  out.echo_time = out.two_pulse_time;
  out.balance_residual = stark_phase_map(out.stark, out.sequence.rephasing_times()).slope;
  return out;
}

BuiltSequence build_hyper_sequence(double t1, double t2, double t4, const OpticalPulse& input, double stark_phase,
                                   bool asymmetric_3pe_guard, const SequenceOptions& options, bool backward) {
  if (t4 == t2)
    throw ValidationError("t4", "degenerate echo: t4 = t2 collapses the echo onto the input time");
  if (!(t1 < t2)) throw ValidationError("t2", "must be later than t1");
  if (!(t2 < t4)) throw ValidationError("t4", "must be later than t2");
  OpticalPulse in = input;
  in.center = t1;
  check_input_clear(t2, in, options);

  const double t5 = echo_arrival_time(t1, t2, t4);
  const double t3pe = three_pulse_echo_time(t1, t2, t4);
  if (t5 - t4 < 2.0 * in.fwhm)
    throw ValidationError("t4", "echo at " + fmt(t5) + " is within 2 input FWHM of the second pi-pulse at " + fmt(t4));
  if (asymmetric_3pe_guard && std::abs(t5 - t3pe) < 2.0 * in.fwhm)
    throw ValidationError("guard_3pe", "hybrid echo at " + fmt(t5) + " overlaps the three-pulse echo at " + fmt(t3pe) +
                                           " (need >= 2 input FWHM separation)");

  BuiltSequence out;
  out.sequence.inputs = {in};
  out.sequence.rephasing = {make_pi(t2, options), make_pi(t4, options)};
  out.sequence.rephasing[1].direction_flip = backward;
  if (stark_phase != 0.0) {
    StarkWindow pre = pre_window(t2, in, options, stark_phase);
    StarkWindow mid;
    mid.t_start = t2 + pi_clearance(options);
    mid.t_end = t4 - pi_clearance(options);
    if (!(mid.t_end > mid.t_start))
      throw ValidationError("t4", "no room for the balancing Stark window between t2 and t4");
    mid.phase = stark_phase * (1.0 + options.balance_error);
    out.stark = StarkProfile({pre, mid});
    if (options.balance_error != 0.0) out.flags.push_back("unbalanced");
  } else {
    out.flags.push_back("no suppression");
  }
  out.echo_time = t5;
  out.two_pulse_time = 2.0 * t2 - t1;
  out.three_pulse_time = t3pe;
  out.balance_residual = stark_phase_map(out.stark, out.sequence.rephasing_times()).slope;
  return out;
}

ExperimentPlan ExperimentPlan::at(double value) const {
  ExperimentPlan p = *this;
  switch (sweep) {
    case SweepVariable::none: break;
    case SweepVariable::alpha_L: p.alpha_L = value; break;
    case SweepVariable::gradient: p.stark_phase = value; break;
    case SweepVariable::input_area: p.input.area = value * std::numbers::pi; break;
  }
  p.sweep = SweepVariable::none;
  p.values.clear();
  return p;
}

BuiltSequence ExperimentPlan::build() const {
  SequenceOptions opts = options;
  opts.resolved_pi = solver.pi_pulse_mode == PiPulseMode::resolved;
  switch (kind) {
    case ProtocolKind::two_pulse:
      return build_two_pulse_sequence(t1, t2, input, stark_phase, opts);
    case ProtocolKind::three_pulse_context: {
      BuiltSequence b = build_hyper_sequence(t1, t2, t4, input, 0.0, false, opts);
      b.echo_time = b.three_pulse_time;
      return b;
    }
    case ProtocolKind::hyper_forward:
      return build_hyper_sequence(t1, t2, t4, input, stark_phase, options.guard_3pe, opts);
    case ProtocolKind::hyper_backward:
      return build_hyper_sequence(t1, t2, t4, input, stark_phase, options.guard_3pe, opts, true);
  }
  throw ValidationError("kind", "unknown protocol kind");
}

void ExperimentPlan::validate() const {
  if (grid.num_z < 2) throw ValidationError("grid.num_z", "must be at least 2");
  if (grid.num_detunings < 2) throw ValidationError("grid.num_detunings", "must be at least 2");
  if (!(grid.t_step > 0.0)) throw ValidationError("grid.t_step", "must be positive");
  if (!(grid.t_span.end > grid.t_span.begin)) throw ValidationError("grid.t_end", "must exceed t_start");
  if (!(grid.t_span.begin <= 0.0 && grid.t_span.end >= 0.0))
    throw ValidationError("grid.t_start", "the time span must contain t = 0");
  if (!(input.fwhm > 0.0)) throw ValidationError("input.fwhm", "must be positive");
  if (!(input.area >= 0.0)) throw ValidationError("input.area_pi", "must be non-negative");
  if (!(options.pi_fwhm > 0.0)) throw ValidationError("pi_pulse.fwhm", "must be positive");
  if (!(options.window_gap >= 0.0)) throw ValidationError("window_gap", "must be non-negative");
  if (!(options.pi_area_multiplier > 0.0 && options.pi_area_multiplier <= 1.0))
    throw ValidationError("pi_pulse.area_multiplier", "must lie in (0, 1]");
  if (kind == ProtocolKind::hyper_backward && solver.pi_pulse_mode == PiPulseMode::resolved)
    throw ValidationError("solver.pi_pulse_mode", "backward retrieval needs instantaneous rephasing pulses");
  if (sweep != SweepVariable::none && values.empty())
    throw ValidationError("sweep.values", "sweep list must not be empty");
  if (sweep != SweepVariable::input_area && input.area > 0.1 * std::numbers::pi * (1.0 + 1e-12))
    throw ValidationError("input.area_pi", "weak-input regime requires area <= 0.1 pi");

  const std::vector<double> points = sweep == SweepVariable::none ? std::vector<double>{0.0} : values;
  for (double v : points) {
    const ExperimentPlan p = at(v);
    if (!(p.alpha_L >= 0.0) || !std::isfinite(p.alpha_L))
      throw ValidationError(sweep == SweepVariable::alpha_L ? "sweep.values" : "alpha_L", "must be non-negative");
    if (!(p.input.area >= 0.0) || !std::isfinite(p.input.area))
      throw ValidationError("sweep.values", "input areas must be non-negative");
    if (!std::isfinite(p.stark_phase)) throw ValidationError("stark_phase", "must be finite");
    const BuiltSequence b = p.build();
    if (options.balance_error == 0.0 && kind != ProtocolKind::two_pulse &&
        std::abs(b.balance_residual) > 1e-9 * (1.0 + std::abs(p.stark_phase)))
      throw ValidationError("stark_phase", "Stark windows are not balanced (residual " + fmt(b.balance_residual) + ")");
    const double hw = 3.0 * input.fwhm;
    if (b.echo_time + hw > grid.t_span.end)
      throw ValidationError("grid.t_end", "span must extend to the echo window end " + fmt(b.echo_time + hw));
    if (input.support().begin + t1 - input.center < grid.t_span.begin)
      throw ValidationError("grid.t_start", "span must start before the input pulse");
  }
}

EchoMetrics measure_echo(const FieldEnvelope& trace, double expected_time, double window_halfwidth,
                         double input_energy) {
  const Interval window{expected_time - window_halfwidth, expected_time + window_halfwidth};
  const Interval span = trace.span();
  if (!(window_halfwidth > 0.0) || window.begin < span.begin || window.end > span.end)
    throw std::invalid_argument("echo window [" + fmt(window.begin) + ", " + fmt(window.end) +
                                "] exceeds the trace span [" + fmt(span.begin) + ", " + fmt(span.end) + "]");
  EchoMetrics m;
  m.echo_energy = trace.energy(window);
  m.echo_area = trace.area(window);
  m.input_energy = input_energy;
  m.efficiency = input_energy > 0.0 ? m.echo_energy / input_energy : 0.0;
  double best = 0.0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const double t = trace.time_at(i);
    if (!window.contains(t)) continue;
    const double mag = std::abs(trace.samples[i]);
    if (mag > best) {
      best = mag;
      m.peak_time = t;
    }
  }
  return m;
}

PlanRow run_plan_point(const ExperimentPlan& plan) {
  const BuiltSequence built = plan.build();
  const SimulationGrid grid = build_grid(plan.grid, plan.alpha_L, {}, built.sequence.max_bandwidth(plan.solver.pi_pulse_mode == PiPulseMode::resolved));
  const RunResult run = run_sequence(built.sequence, built.stark, grid, plan.solver);
  PlanRow row;
  row.trace = plan.kind == ProtocolKind::hyper_backward ? run.backward_output : run.forward_output;
  const double input_energy = input_envelope(built.sequence, grid).energy();
  row.metrics = measure_echo(row.trace, built.echo_time, 3.0 * plan.input.fwhm, input_energy);
  row.flags = built.flags;
  for (const auto& w : run.warnings) row.flags.push_back("warning: " + w);
  return row;
}

std::vector<PlanRow> run_plan(const ExperimentPlan& plan, unsigned threads) {
  plan.validate();
  const std::vector<double> points =
      plan.sweep == SweepVariable::none ? std::vector<double>{std::numeric_limits<double>::quiet_NaN()} : plan.values;
  const bool shared_reference = plan.sweep == SweepVariable::gradient;
  const std::size_t n = points.size();
  const std::size_t refs = plan.reference_run ? (shared_reference ? 1 : n) : 0;

  std::vector<PlanRow> rows(n);
  std::vector<PlanRow> references(refs);
  auto attach = [&](std::size_t i, auto&& job) {
    try {
      job();
    } catch (const ValidationError& e) {
      std::string msg = e.what();
      if (!e.key().empty() && msg.rfind(e.key() + ": ", 0) == 0) msg.erase(0, e.key().size() + 2);
      throw ValidationError(e.key(), msg + " [sweep value " + fmt(points[i]) + "]");
    } catch (const SolverError& e) {
      throw SolverError(std::string(e.what()) + " [sweep value " + fmt(points[i]) + "]");
    }
  };
  parallel_for(n + refs, threads, [&](std::size_t i) {
    if (i < n) {
      attach(i, [&] { rows[i] = run_plan_point(plan.sweep == SweepVariable::none ? plan : plan.at(points[i])); });
    } else {
      const std::size_t r = i - n;
      attach(r, [&] {
        ExperimentPlan p = plan.sweep == SweepVariable::none ? plan : plan.at(points[r]);
        p.stark_phase = 0.0;
        references[r] = run_plan_point(p);
      });
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    rows[i].value = plan.sweep == SweepVariable::none ? plan.alpha_L : points[i];
    if (plan.reference_run) {
      const double ref = references[shared_reference ? 0 : i].metrics.echo_energy;
      rows[i].metrics.suppression_ratio = ref > 0.0 ? rows[i].metrics.echo_energy / ref : 0.0;
    }
  }
  return rows;
}

}  // namespace hyper
