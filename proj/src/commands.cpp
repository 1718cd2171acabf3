#include "hyper/commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "hyper/errors.hpp"
#include "hyper/oracle.hpp"
#include "hyper/parallel.hpp"

namespace hyper {

namespace {

using nlohmann::ordered_json;

std::string g9(double x) { return format_number(x, 9); }

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ordered_json metadata(const RunConfig& config, const std::string& command) {
  ordered_json m;
  m["config_sha256"] = sha256_hex(config.document);
  m["version"] = kVersion;
  m["command"] = command;
  m["seed"] = config.seed;
  m["created_utc"] = utc_now();
  return m;
}

// Closed-form efficiency for the row, or NaN where none applies.
double oracle_efficiency(const ExperimentPlan& p) {
  switch (p.kind) {
    case ProtocolKind::two_pulse:
      return p.stark_phase == 0.0 ? two_pulse_echo_gain(p.alpha_L) : std::norm(echo_suppression_factor(p.alpha_L, p.stark_phase));
    case ProtocolKind::hyper_forward:
      return p.stark_phase != 0.0 ? hyper_echo_efficiency_forward(p.alpha_L) : std::nan("");
    case ProtocolKind::hyper_backward:
      return backward_retrieval_efficiency(p.alpha_L);
    case ProtocolKind::three_pulse_context:
      return std::nan("");
  }
  return std::nan("");
}

std::string row_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "traces/row_%03zu.csv", i);
  return buf;
}

unsigned thread_count(const CommandOptions& options, const RunConfig& config) {
  return resolve_threads(options.threads > 0 ? options.threads : config.threads);
}

std::string bundle_path(const CommandOptions& options, const RunConfig& config) {
  if (!options.out_dir.empty()) return options.out_dir;
  if (!config.output_dir.empty()) return config.output_dir;
  return "results/" + config.plan.label;
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ValidationError& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return 2;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

ResultBundle make_run_bundle(const RunConfig& config, unsigned threads) {
  const ExperimentPlan& plan = config.plan;
  const auto rows = run_plan(plan, threads);

  std::string metrics =
      "sweep_value,echo_energy,echo_area,peak_time,input_energy,efficiency,oracle_efficiency,suppression_ratio\n";
  ResultBundle bundle;
  ordered_json row_flags = ordered_json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const ExperimentPlan point = plan.sweep == SweepVariable::none ? plan : plan.at(r.value);
    metrics += g9(r.value) + ',' + g9(r.metrics.echo_energy) + ',' + g9(r.metrics.echo_area) + ',' +
               g9(r.metrics.peak_time) + ',' + g9(r.metrics.input_energy) + ',' + g9(r.metrics.efficiency) + ',' +
               g9(oracle_efficiency(point)) + ',' +
               (r.metrics.suppression_ratio ? g9(*r.metrics.suppression_ratio) : std::string()) + '\n';
    bundle.add(row_name(i), trace_csv(r.trace));
    row_flags.push_back(r.flags);
  }
  bundle.add("metrics.csv", metrics);
  bundle.add("config.json", config.document);

  const BuiltSequence built = plan.sweep == SweepVariable::none ? plan.build() : plan.at(plan.values.front()).build();
  ordered_json summary;
  summary["kind"] = to_string(plan.kind);
  summary["label"] = plan.label;
  summary["sweep_variable"] = to_string(plan.sweep);
  summary["rows"] = rows.size();
  summary["expected_echo_time"] = built.echo_time;
  summary["columns"]["metrics.csv"] = {
      {"sweep_value", "swept parameter (alpha_L, total Stark phase in rad, or input area in units of pi); alpha_L when not sweeping"},
      {"echo_energy", "sum |a|^2 dt over the echo window (expected time +- 3 input FWHM)"},
      {"echo_area", "sum |a| dt over the echo window"},
      {"peak_time", "time of the largest |a| in the window"},
      {"input_energy", "energy of the input pulse at the entry face"},
      {"efficiency", "echo_energy / input_energy"},
      {"oracle_efficiency", "closed-form efficiency for the row, nan where none applies"},
      {"suppression_ratio", "echo_energy / zero-field echo_energy (empty without reference runs)"}};
  summary["columns"]["traces/row_NNN.csv"] = {{"time", "us, step midpoint"},
                                              {"real", "Re a at the exit face"},
                                              {"imag", "Im a at the exit face"}};
  summary["flags"] = row_flags;
  bundle.add("summary.json", summary.dump(2) + "\n");
  bundle.add("metadata.json", metadata(config, "run").dump(2) + "\n");
  return bundle;
}

ResultBundle make_noise_bundle(const RunConfig& config, unsigned threads) {
  if (!config.noise) throw ValidationError("noise", "the noise command needs a noise section");
  const NoiseSettings& settings = *config.noise;
  const NoiseExperiment exp = run_noise_experiment(config.plan, settings, threads);

  auto norm = [&](double v) { return exp.shot_noise_floor > 0.0 ? g9(v / exp.shot_noise_floor) : std::string(); };
  std::string timeline =
      "center,variance_field_off,variance_field_on,shot_noise_floor,normalized_field_off,normalized_field_on\n";
  for (std::size_t i = 0; i < exp.timeline_off.size(); ++i) {
    timeline += g9(exp.timeline_off[i].center) + ',' + g9(exp.timeline_off[i].variance) + ',' +
                g9(exp.timeline_on[i].variance) + ',' + g9(exp.shot_noise_floor) + ',' +
                norm(exp.timeline_off[i].variance) + ',' + norm(exp.timeline_on[i].variance) + '\n';
  }

  std::string estimates = "condition,mode_variance,shot_noise_variance,normalized_variance,standard_error,shots\n";
  auto add = [&](const char* name, const NoiseCondition& c) {
    estimates += std::string(name) + ',' + g9(c.mode_variance) + ',' + g9(c.shot_noise_variance) + ',' +
                 (c.normalized_variance ? g9(*c.normalized_variance) : std::string()) + ',' +
                 (c.normalized_variance ? g9(c.standard_error) : std::string()) + ',' + std::to_string(settings.shots) +
                 '\n';
  };
  add("field_off", exp.field_off);
  add("field_on", exp.field_on);

  std::string shots = "index,seed,area_multiplier,mode_off_real,mode_off_imag,mode_on_real,mode_on_imag\n";
  for (std::size_t i = 0; i < exp.shots_off.size(); ++i) {
    const auto& a = exp.shots_off[i];
    const auto& b = exp.shots_on[i];
    shots += std::to_string(a.index) + ',' + std::to_string(a.seed) + ',' + format_number(a.area_multiplier, 17) + ',' +
             format_number(a.mode_amplitude.real(), 17) + ',' + format_number(a.mode_amplitude.imag(), 17) + ',' +
             format_number(b.mode_amplitude.real(), 17) + ',' + format_number(b.mode_amplitude.imag(), 17) + '\n';
  }

  ResultBundle bundle;
  bundle.add("timeline.csv", timeline);
  bundle.add("mode_estimates.csv", estimates);
  bundle.add("shots.csv", shots);
  bundle.add("config.json", config.document);

  ordered_json summary;
  summary["shots"] = settings.shots;
  summary["echo_mode_center"] = settings.echo_mode(config.plan).center;
  summary["reference_mode_center"] = settings.reference_mode(config.plan).center;
  summary["envelope_fwhm"] = settings.envelope_fwhm;
  summary["beat_frequency"] = settings.model.beat_frequency;
  if (exp.field_on.normalized_variance && exp.field_off.normalized_variance && *exp.field_on.normalized_variance > 0.0)
    summary["suppression_factor"] = *exp.field_off.normalized_variance / *exp.field_on.normalized_variance;
  summary["columns"]["timeline.csv"] = {
      {"center", "envelope centre, us"},
      {"variance_field_off", "mode variance across shots without the Stark field"},
      {"variance_field_on", "mode variance across shots with the balanced Stark field"},
      {"shot_noise_floor", "mode variance at the reference envelope before the first pi-pulse"},
      {"normalized_field_off", "variance_field_off / shot_noise_floor (empty when the floor is 0)"},
      {"normalized_field_on", "variance_field_on / shot_noise_floor (empty when the floor is 0)"}};
  summary["columns"]["mode_estimates.csv"] = {
      {"condition", "field_off or field_on"},
      {"mode_variance", "variance of the echo-mode amplitude"},
      {"shot_noise_variance", "variance at the reference envelope"},
      {"normalized_variance", "mode_variance / shot_noise_variance"},
      {"standard_error", "normalized_variance * sqrt(2/(shots-1))"},
      {"shots", "shot count"}};
  summary["columns"]["shots.csv"] = {{"index", "shot number"},
                                     {"seed", "derived per-shot seed"},
                                     {"area_multiplier", "rephasing-pulse area / pi for the shot"},
                                     {"mode_*", "echo-mode amplitude without / with the field"}};
  bundle.add("summary.json", summary.dump(2) + "\n");
  bundle.add("metadata.json", metadata(config, "noise").dump(2) + "\n");
  return bundle;
}

std::string validation_report(const RunConfig& config) {
  const ExperimentPlan& plan = config.plan;
  std::ostringstream out;
  out << "plan " << plan.label << " (" << to_string(plan.kind) << ")\n";
  const std::vector<double> points = plan.sweep == SweepVariable::none ? std::vector<double>{plan.alpha_L} : plan.values;
  for (double v : points) {
    const ExperimentPlan p = plan.sweep == SweepVariable::none ? plan : plan.at(v);
    const BuiltSequence b = p.build();
    if (plan.sweep != SweepVariable::none) out << "[" << to_string(plan.sweep) << " = " << v << "] ";
    out << "echo at " << b.echo_time;
    if (p.kind != ProtocolKind::two_pulse) out << ", three-pulse echo at " << b.three_pulse_time;
    const double tol = 1e-12 * (1.0 + std::abs(p.stark_phase));
    const double residual = std::abs(b.balance_residual) <= tol ? 0.0 : b.balance_residual;
    out << ", balance residual " << residual;
    if (residual != 0.0) out << " * z rad";
    for (const auto& f : b.flags) out << ", " << f;
    out << "\n";
    for (const auto& w : b.stark.windows())
      out << "  stark window [" << w.t_start << ", " << w.t_end << "] gradient " << w.gradient() << " rad/us, phase " << w.phase << " rad\n";
  }
  const BuiltSequence first = plan.sweep == SweepVariable::none ? plan.build() : plan.at(plan.values.front()).build();
  const SimulationGrid grid = build_grid(plan.grid, plan.alpha_L, config.noise ? config.noise->model.spectral_mask : SpectralMask{},
                                         first.sequence.max_bandwidth(plan.solver.pi_pulse_mode == PiPulseMode::resolved));
  out << "grid: " << grid.num_z() << " z x " << grid.num_detunings() << " detunings, half width "
      << grid.detuning_halfwidth() << " rad/us, " << grid.num_steps() << " steps of " << grid.t_step() << " us\n";
  for (const auto& w : grid.warnings()) out << "warning: " << w << "\n";
  out << "ok\n";
  return out.str();
}

int cmd_run(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig config = load_config(options.config_path);
    const ResultBundle bundle = make_run_bundle(config, thread_count(options, config));
    const std::string path = bundle_path(options, config);
    bundle.write_atomically(path);
    out << "wrote " << path << "\n";
    return 0;
  });
}

int cmd_validate(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig config = load_config(options.config_path);
    out << validation_report(config);
    return 0;
  });
}

int cmd_noise(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig config = load_config(options.config_path);
    const ResultBundle bundle = make_noise_bundle(config, thread_count(options, config));
    const std::string path = bundle_path(options, config);
    bundle.write_atomically(path);
    out << "wrote " << path << "\n";
    return 0;
  });
}

}  // namespace hyper
