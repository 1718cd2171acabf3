// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.
//
//   acceptance [--only N,...] [--write-map-reference]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hyper/bundle.hpp"
#include "hyper/commands.hpp"
#include "hyper/config.hpp"
#include "hyper/errors.hpp"
#include "hyper/noise.hpp"
#include "hyper/oracle.hpp"
#include "hyper/parallel.hpp"
#include "hyper/protocol.hpp"
#include "hyper/seeds.hpp"
#include "hyper/solver.hpp"

#ifndef HYPER_SOURCE_DIR
#define HYPER_SOURCE_DIR "."
#endif

using namespace hyper;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

std::string num(double x, int digits = 4) {
  std::ostringstream s;
  s << std::setprecision(digits) << x;
  return s.str();
}

unsigned threads() { return resolve_threads(0); }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Weak 1 us input at t = 0, pi-pulses at 10 and 35, echo at 50.
ExperimentPlan hyper_plan(double t_step = 0.05, std::size_t num_det = 1601) {
  ExperimentPlan plan;
  plan.kind = ProtocolKind::hyper_forward;
  plan.t1 = 0.0;
  plan.t2 = 10.0;
  plan.t4 = 35.0;
  plan.input.fwhm = 1.0;
  plan.input.area = 0.01 * kPi;
  plan.stark_phase = 400.0;
  plan.grid = GridSpec{200, num_det, 0.0, t_step, {-5.0, 55.0}};
  return plan;
}

ExperimentPlan two_pulse_plan(double alpha) {
  ExperimentPlan plan;
  plan.kind = ProtocolKind::two_pulse;
  plan.alpha_L = alpha;
  plan.t1 = 0.0;
  plan.t2 = 10.0;
  plan.input.fwhm = 1.0;
  plan.input.area = 0.01 * kPi;
  plan.grid = GridSpec{200, 801, 0.0, 0.05, {-5.0, 26.0}};
  return plan;
}

std::vector<double> alpha_efficiencies(double t_step, std::size_t num_det) {
  ExperimentPlan plan = hyper_plan(t_step, num_det);
  plan.sweep = SweepVariable::alpha_L;
  plan.values = {0.5, 1.0, 2.0};
  std::vector<double> out;
  for (const auto& row : run_plan(plan, threads())) out.push_back(row.metrics.efficiency);
  return out;
}

std::optional<std::vector<double>> criterion1_efficiencies;

// 1. Forward hybrid echo efficiency.
void criterion_1(Outcome& o) {
  const double peak = hyper_echo_efficiency_forward(2.0);
  o.require(std::abs(peak - 4.0 * std::exp(-2.0)) <= 1e-12, "oracle peak 4 e^-2");
  bool is_max = true;
  for (double a = 0.01; a < 10.0; a += 0.01)
    if (std::abs(a - 2.0) > 1e-9 && hyper_echo_efficiency_forward(a) >= peak) is_max = false;
  o.require(is_max, "oracle maximum at alpha_L = 2");
  o.detail << "oracle max " << num(peak, 13) << " at alpha_L 2; ";

  o.require(400.0 >= 40.0 * kPi, "total Stark phase >= 40 pi");
  const auto start = std::chrono::steady_clock::now();
  const auto eff = alpha_efficiencies(0.05, 1601);
  const double elapsed = seconds_since(start);
  criterion1_efficiencies = eff;
  const double alphas[] = {0.5, 1.0, 2.0};
  for (std::size_t i = 0; i < 3; ++i) {
    const double expect = hyper_echo_efficiency_forward(alphas[i]);
    const double rel = std::abs(eff[i] - expect) / expect;
    o.require(rel <= 0.05, "solver within 5% at alpha_L " + num(alphas[i]));
    o.detail << "alpha_L " << num(alphas[i]) << ": solver " << num(eff[i]) << " vs " << num(expect) << "; ";
  }
  o.require(elapsed <= 300.0, "runtime <= 5 min");
  o.detail << "solver runtime " << num(elapsed, 3) << " s";
}

// 2. Two-pulse echo gain.
void criterion_2(Outcome& o) {
  for (double a : {0.25, 0.5, 1.0}) {
    const auto row = run_plan_point(two_pulse_plan(a));
    const double expect = two_pulse_echo_gain(a);
    o.require(std::abs(row.metrics.efficiency - expect) <= 0.10 * expect, "within 10% at alpha_L " + num(a));
    o.detail << "alpha_L " << num(a) << ": " << num(row.metrics.efficiency) << " vs " << num(expect) << "; ";
  }
}

// 3. Backward retrieval.
void criterion_3(Outcome& o) {
  ExperimentPlan plan = hyper_plan();
  plan.kind = ProtocolKind::hyper_backward;
  plan.sweep = SweepVariable::alpha_L;
  plan.values = {1.0, 2.0, 4.0};
  const auto rows = run_plan(plan, threads());
  const BuiltSequence built = plan.at(1.0).build();
  const SimulationGrid grid = build_grid(plan.grid, 1.0);
  const FieldEnvelope expected = input_envelope(built.sequence, grid).shifted(built.echo_time - plan.t1).scaled(-1.0);
  for (const auto& row : rows) {
    const double expect = backward_retrieval_efficiency(row.value);
    const double overlap = normalized_overlap(expected, row.trace);
    o.require(std::abs(row.metrics.efficiency - expect) <= 0.10 * expect, "within 10% at alpha_L " + num(row.value));
    o.require(overlap >= 0.99, "overlap >= 0.99 at alpha_L " + num(row.value));
    o.detail << "alpha_L " << num(row.value) << ": " << num(row.metrics.efficiency) << " vs " << num(expect)
             << ", overlap " << num(overlap, 6) << "; ";
  }
  o.require(rows.back().metrics.efficiency >= 0.9, "near-unit efficiency at alpha_L 4");
}

// 4. Suppression by the Stark phase.
void criterion_4(Outcome& o) {
  ExperimentPlan plan = two_pulse_plan(0.1);
  plan.sweep = SweepVariable::gradient;
  for (int k = 0; k <= 16; ++k) plan.values.push_back(k * kPi / 4.0);
  plan.reference_run = true;
  const auto rows = run_plan(plan, threads());
  double worst = 0.0;
  double at_two_pi = 1.0;
  bool monotone = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double phi = rows[i].value;
    const double s = std::sin(phi / 2.0) / (phi / 2.0);
    const double expect = phi == 0.0 ? 1.0 : s * s;
    const double got = *rows[i].metrics.suppression_ratio;
    worst = std::max(worst, std::abs(got - expect));
    if (std::abs(phi - 2.0 * kPi) < 1e-12) at_two_pi = got;
    if (i > 0 && phi <= 2.0 * kPi + 1e-12 && rows[i].metrics.echo_energy > rows[i - 1].metrics.echo_energy * 1.01)
      monotone = false;
  }
  o.require(at_two_pi < 0.01, "> 99% suppression at 2 pi");
  o.require(worst <= 0.05, "sinc^2 within 0.05 pointwise");
  o.require(monotone, "monotone decrease on the main lobe");
  o.detail << "ratio at 2 pi " << num(at_two_pi, 3) << " (" << num(100.0 * (1.0 - at_two_pi), 5)
           << "% suppressed); worst |ratio - sinc^2| over [0, 4 pi] " << num(worst, 3);
}

// 5. Echo timing and the three-pulse guard.
void criterion_5(Outcome& o) {
  struct Triple {
    double t1, t2, t4;
  };
  for (const Triple tr : {Triple{0.0, 10.0, 35.0}, Triple{0.0, 8.0, 30.0}, Triple{1.0, 7.0, 22.0}}) {
    ExperimentPlan plan = hyper_plan();
    plan.grid.num_z = 100;
    plan.t1 = tr.t1;
    plan.t2 = tr.t2;
    plan.t4 = tr.t4;
    const double t5 = echo_arrival_time(tr.t1, tr.t2, tr.t4);
    plan.grid.t_span = {-5.0, t5 + 5.0};
    const auto row = run_plan_point(plan);
    const double err = std::abs(row.metrics.peak_time - t5);
    o.require(err <= plan.grid.t_step, "peak within one step for (" + num(tr.t1) + ", " + num(tr.t2) + ", " +
                                           num(tr.t4) + ")");
    o.detail << "(" << num(tr.t1) << ", " << num(tr.t2) << ", " << num(tr.t4) << "): peak " << num(row.metrics.peak_time, 6)
             << " vs " << num(t5) << "; ";
  }
  ExperimentPlan overlap = hyper_plan();
  overlap.t4 = 30.0;  // hybrid and three-pulse echoes both at 40
  bool rejected = false;
  try {
    overlap.validate();
  } catch (const ValidationError& e) {
    rejected = e.key() == "guard_3pe";
  }
  o.require(rejected, "overlapping echoes rejected");
  o.detail << "overlap (0, 10, 30) " << (rejected ? "rejected" : "accepted");
}

// 6. Finite-Stark output converges to the large-Stark limit.
void criterion_6(Outcome& o) {
  std::mt19937_64 rng(derive_seed(6, 0, 0));
  std::uniform_real_distribution<double> alpha_dist(0.1, 4.0);
  FieldEnvelope in = zero_envelope(-5.0, 0.001, 10000);
  for (std::size_t i = 0; i < in.size(); ++i) {
    const double x = in.time_at(i);
    in.samples[i] = std::exp(-2.0 * std::numbers::ln2 * x * x);
  }
  double worst_at_threshold = 0.0;
  std::size_t cases = 0;
  for (int trial = 0; trial < 25; ++trial) {
    RegionSolutionParams p;
    p.alpha_L = alpha_dist(rng);
    p.t1 = 0.0;
    p.t2 = 10.0;
    p.t4 = 30.0;
    const double lag = echo_arrival_time(p.t1, p.t2, p.t4) - p.t4;
    const double limit = region3_output(p, in, true).energy();
    double prev = 1e300;
    bool monotone = true;
    // Stark parameter at the echo centre from 100 alpha_L upward, while the
    // phase eta' L dt per input sample stays below one radian.
    for (double scale = 1.0; scale <= 32.0; scale *= 2.0) {
      p.eta_prime = 100.0 * p.alpha_L * scale / lag;
      const double err = std::abs(region3_output(p, in, false).energy() - limit) / limit;
      if (err >= prev) monotone = false;
      if (scale == 1.0) worst_at_threshold = std::max(worst_at_threshold, err);
      prev = err;
    }
    o.require(monotone, "monotone decrease at alpha_L " + num(p.alpha_L));
    ++cases;
  }
  o.require(worst_at_threshold < 0.01, "< 1% error at eta'(t - t4)L = 100 alpha_L");
  o.detail << cases << " random alpha_L in [0.1, 4]; worst energy error at the threshold " << num(worst_at_threshold, 3);
}

// 7. Linearity in the input area.
void criterion_7(Outcome& o) {
  ExperimentPlan plan = hyper_plan();
  plan.sweep = SweepVariable::input_area;
  plan.values = {0.01, 0.025, 0.05, 0.1, 0.5};
  const auto rows = run_plan(plan, threads());
  const double slope = rows[0].metrics.echo_area / rows[0].value;
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < rows.size(); ++i)
    worst = std::max(worst, std::abs(rows[i].metrics.echo_area / rows[i].value / slope - 1.0));
  const double half_pi = rows.back().metrics.echo_area / rows.back().value / slope;
  o.require(worst <= 0.02, "linear within 2% up to 0.1 pi");
  o.require(half_pi < 0.95, "sublinear by 0.5 pi");
  o.detail << "max deviation from linear up to 0.1 pi " << num(worst, 3) << "; relative slope at 0.5 pi " << num(half_pi);
}

// 8. Noise pipeline.
void criterion_8(Outcome& o) {
  ExperimentPlan small;
  small.kind = ProtocolKind::hyper_forward;
  small.alpha_L = 0.15;
  small.t1 = -10.0;
  small.t2 = 0.0;
  small.t4 = 25.0;
  small.input.area = 0.0;
  small.stark_phase = 60.0;
  small.grid = GridSpec{4, 31, 0.0, 0.1, {-20.0, 46.0}};

  NoiseSettings ideal;
  ideal.shots = 20;
  ideal.model = ImperfectionModel::ideal();
  const auto ex = run_noise_experiment(small, ideal, threads());
  bool silent = ex.field_off.mode_variance == 0.0 && ex.field_on.mode_variance == 0.0 && ex.shot_noise_floor == 0.0;
  for (const auto& p : ex.timeline_off) silent = silent && p.variance == 0.0;
  for (const auto& p : ex.timeline_on) silent = silent && p.variance == 0.0;
  o.require(silent, "(a) ideal model has zero variance");
  o.detail << "(a) ideal variance " << (silent ? "exactly 0" : "nonzero") << "; ";

  ImperfectionModel white = ImperfectionModel::ideal();
  white.detector_noise_variance = 1e-4;
  white.seed = 8;
  auto shots = simulate_shots(1000, small, white, threads());
  const TemporalMode mode{15.0, 1.8};
  const auto est = mode_variance(shots, mode, {-15.0, 1.8}, white.beat_frequency);
  const double expect = white.detector_noise_variance * white_noise_gain(shots[0], mode);
  const double z = std::abs(est.mode_variance - expect) / (expect * std::sqrt(2.0 / 999.0));
  o.require(z <= 3.0, "(b) white noise within 3 standard errors");
  o.detail << "(b) white noise " << num(est.mode_variance, 5) << " vs " << num(expect, 5) << " (" << num(z, 2)
           << " SE); ";

  const auto start = std::chrono::steady_clock::now();
  const RunConfig cfg = load_config(std::string(HYPER_SOURCE_DIR) + "/configs/noise_default.json");
  const auto full = run_noise_experiment(cfg.plan, *cfg.noise, threads());
  const double elapsed = seconds_since(start);
  const double off = full.field_off.normalized_variance.value_or(0.0);
  const double on = full.field_on.normalized_variance.value_or(1e300);
  o.require(cfg.noise->shots == 1000 && cfg.plan.alpha_L == 0.15, "default run at N = 1000, alpha_L = 0.15");
  o.require(off >= 10.0 * on, "(c) field-on at least 10x below field-off");

  // Paired comparison across the inter-pi timeline, envelope clear of both pulses.
  const double fwhm = cfg.noise->envelope_fwhm;
  std::size_t points = 0;
  std::size_t lower = 0;
  for (std::size_t i = 0; i < full.timeline_on.size(); ++i) {
    const double c = full.timeline_on[i].center;
    if (c - 2.0 * fwhm <= cfg.plan.t2 || c + 2.0 * fwhm >= cfg.plan.t4) continue;
    ++points;
    if (full.timeline_on[i].variance < full.timeline_off[i].variance) ++lower;
  }
  o.require(points > 0 && lower == points, "(c) field-on below field-off at every inter-pulse timeline point");
  o.require(elapsed <= 900.0, "runtime <= 15 min");
  o.detail << "(c) normalized variance off " << num(off) << ", on " << num(on) << " (" << num(off / on, 3)
           << "x); field-on lower at " << lower << "/" << points << " inter-pulse points; " << num(elapsed, 4) << " s";
}

// 9. Excited-state map after two resolved pi-pulses.
constexpr double kMapFwhm = 0.5;
// Above 20x the pulse bandwidth; 4801 detunings resolve the Ramsey fringes
// of period 2 pi / separation.
constexpr double kMapHalfwidth = 120.0;
const std::vector<double> kMapAlphas = {0.1, 0.25, 0.5, 1.0, 2.0};

struct ExcitationMap {
  std::vector<double> alphas;
  std::vector<double> aggregate;  // central half of the bandwidth
  std::vector<double> core;       // central quarter, reported only
  std::vector<ExcitedFraction> maps;
};

ExcitationMap excitation_map(double t_step, std::size_t num_z, std::size_t num_det, const std::vector<double>& alphas) {
  const double separation = 20.0 * std::sqrt(2.0) * kMapFwhm;
  PulseSequence seq;
  for (double t : {0.0, separation}) {
    RephasingPulse r;
    r.pulse.center = t;
    r.pulse.fwhm = kMapFwhm;
    r.pulse.area = kPi;
    seq.rephasing.push_back(r);
  }
  SolverConfig cfg;
  cfg.pi_pulse_mode = PiPulseMode::resolved;
  const double bandwidth = seq.rephasing[0].pulse.bandwidth();
  const Interval span{-2.0, separation + 2.0};
  ExcitationMap out;
  out.alphas = alphas;
  out.aggregate.resize(alphas.size());
  out.core.resize(alphas.size());
  out.maps.resize(alphas.size());
  parallel_for(alphas.size(), threads(), [&](std::size_t i) {
    const SimulationGrid grid = build_grid(GridSpec{num_z, num_det, kMapHalfwidth, t_step, span}, alphas[i], {}, bandwidth);
    const RunResult run = run_sequence(seq, {}, grid, cfg);
    out.maps[i] = excited_state_fraction(run.final_state, grid, {-bandwidth, bandwidth});
    out.aggregate[i] = excited_state_fraction(run.final_state, grid, {-bandwidth / 4.0, bandwidth / 4.0}).aggregate;
    out.core[i] = excited_state_fraction(run.final_state, grid, {-bandwidth / 8.0, bandwidth / 8.0}).aggregate;
  });
  return out;
}

std::string excitation_csv(const ExcitationMap& m) {
  std::string csv = "alpha_L,detuning,excited_fraction\n";
  for (std::size_t i = 0; i < m.alphas.size(); ++i)
    for (std::size_t j = 0; j < m.maps[i].detunings.size(); ++j)
      csv += format_number(m.alphas[i], 17) + "," + format_number(m.maps[i].detunings[j], 17) + "," +
             format_number(m.maps[i].per_detuning[j], 17) + "\n";
  return csv;
}

const fs::path kMapReference = fs::path(HYPER_SOURCE_DIR) / "tests" / "acceptance" / "excitation_map_reference.csv";
bool write_map_reference = false;

void criterion_9(Outcome& o) {
  const ExcitationMap map = excitation_map(0.02, 100, 4801, kMapAlphas);
  const ExcitationMap again = excitation_map(0.02, 100, 4801, kMapAlphas);
  const std::string csv = excitation_csv(map);
  o.require(csv == excitation_csv(again), "bitwise repeatable");

  for (std::size_t i = 0; i < map.alphas.size(); ++i) {
    if (map.alphas[i] <= 0.5) o.require(map.aggregate[i] < 0.05, "near-ground centre at alpha_L " + num(map.alphas[i]));
    o.detail << "alpha_L " << num(map.alphas[i]) << ": " << num(map.aggregate[i], 3) << " (central quarter "
             << num(map.core[i], 3) << "); ";
  }

  // Convergence of the reference grid at the largest gated depth: step,
  // slices and detuning spacing all halved.
  const ExcitationMap fine = excitation_map(0.01, 200, 9601, {0.5});
  const double drift = std::abs(fine.aggregate[0] - map.aggregate[2]);
  o.require(drift < 0.005, "grid-converged (step, slices and spacing halved)");
  o.detail << "convergence drift " << num(drift, 2) << "; ";

  if (write_map_reference) {
    std::ofstream(kMapReference, std::ios::binary) << csv;
    o.detail << "reference written";
    return;
  }
  std::ifstream ref_in(kMapReference, std::ios::binary);
  o.require(static_cast<bool>(ref_in), "frozen reference present");
  if (!ref_in) return;
  std::string line;
  std::getline(ref_in, line);
  double worst = 0.0;
  std::size_t rows = 0;
  bool aligned = true;
  for (std::size_t i = 0; i < map.alphas.size(); ++i)
    for (std::size_t j = 0; j < map.maps[i].detunings.size(); ++j) {
      if (!std::getline(ref_in, line)) {
        aligned = false;
        continue;
      }
      double a = 0.0, d = 0.0, f = 0.0;
      if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &a, &d, &f) != 3 || a != map.alphas[i] ||
          std::abs(d - map.maps[i].detunings[j]) > 1e-12)
        aligned = false;
      worst = std::max(worst, std::abs(f - map.maps[i].per_detuning[j]));
      ++rows;
    }
  o.require(aligned && !std::getline(ref_in, line), "reference grid matches");
  o.require(worst <= 1e-12, "reference reproduced to 1e-12");
  o.detail << "reference " << rows << " points, max deviation " << num(worst, 2);
}

// 10. Determinism and step convergence.
void criterion_10(Outcome& o) {
  const fs::path dir = fs::temp_directory_path() / ("hyper_acceptance_" + std::to_string(derive_seed(10, 0, 0) % 100000));
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string doc = R"({
  "seed": 10,
  "grid": {"num_z": 60, "num_detunings": 801, "t_step": 0.05, "t_start": -5, "t_end": 26},
  "plan": {"kind": "2pe", "alpha_L": 0.5, "t1": 0, "t2": 10, "input": {"fwhm": 1.0, "area_pi": 0.01},
           "sweep": {"variable": "gradient", "values": [0, 3, 6.283185307179586]}, "reference_run": true}
})";
  std::ofstream(dir / "config.json", std::ios::binary) << doc;
  std::ostringstream sink;
  const int a = cmd_run({(dir / "config.json").string(), (dir / "a").string(), 1}, sink, sink);
  const int b = cmd_run({(dir / "config.json").string(), (dir / "b").string(), static_cast<int>(threads()) + 1}, sink, sink);
  bool identical = a == 0 && b == 0;
  std::size_t compared = 0;
  if (identical)
    for (const auto& entry : fs::recursive_directory_iterator(dir / "a")) {
      if (entry.path().extension() != ".csv") continue;
      const auto rel = fs::relative(entry.path(), dir / "a");
      auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
      };
      identical = identical && slurp(entry.path()) == slurp(dir / "b" / rel);
      ++compared;
    }
  fs::remove_all(dir);
  o.require(identical && compared >= 4, "bitwise-identical CSVs");
  o.detail << compared << " CSV files " << (identical ? "identical" : "differ") << "; ";

  if (!criterion1_efficiencies) criterion1_efficiencies = alpha_efficiencies(0.05, 1601);
  const auto halved = alpha_efficiencies(0.025, 3201);
  const double alphas[] = {0.5, 1.0, 2.0};
  for (std::size_t i = 0; i < 3; ++i) {
    const double rel = std::abs(halved[i] - (*criterion1_efficiencies)[i]) / (*criterion1_efficiencies)[i];
    o.require(rel < 0.01, "step halving < 1% at alpha_L " + num(alphas[i]));
    o.detail << "alpha_L " << num(alphas[i]) << " change " << num(rel, 2) << "; ";
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--write-map-reference") {
      write_map_reference = true;
    } else if (arg == "--only" && i + 1 < argc) {
      std::stringstream list(argv[++i]);
      std::string item;
      while (std::getline(list, item, ',')) only.insert(std::stoi(item));
    } else {
      std::cerr << "usage: acceptance [--only N,...] [--write-map-reference]\n";
      return 2;
    }
  }

  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"forward hybrid echo efficiency", criterion_1},
      {"two-pulse echo gain", criterion_2},
      {"backward retrieval", criterion_3},
      {"Stark suppression", criterion_4},
      {"echo timing and guard", criterion_5},
      {"finite-Stark convergence", criterion_6},
      {"input-area linearity", criterion_7},
      {"noise pipeline", criterion_8},
      {"two-pi-pulse excitation map", criterion_9},
      {"determinism and convergence", criterion_10},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "[exception: " << e.what() << "]";
    }
    if (!o.pass) ++failures;
    std::cout << "criterion " << std::setw(2) << id << " " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first
              << " (" << num(seconds_since(start), 3) << " s): " << o.detail.str() << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
