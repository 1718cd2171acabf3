#include "hyper/noise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hyper/errors.hpp"
#include "hyper/parallel.hpp"
#include "hyper/seeds.hpp"
#include "hyper/solver.hpp"

namespace hyper {

double AreaDistribution::sample(std::mt19937_64& rng) const {
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  return std::pow(min_multiplier, 1.0 - u);
}

void ImperfectionModel::validate() const {
  if (!(pulse_areas.min_multiplier > 0.0 && pulse_areas.min_multiplier <= 1.0))
    throw ValidationError("noise.multiplier_min", "must lie in (0, 1]");
  if (!(detector_noise_variance >= 0.0))
    throw ValidationError("noise.detector_noise_variance", "must be non-negative");
  for (const auto& f : spectral_mask)
    if (!(f.width > 0.0)) throw ValidationError("noise.spectral_mask", "feature width must be positive");
}

ImperfectionModel ImperfectionModel::ideal() {
  ImperfectionModel m;
  m.pulse_areas.min_multiplier = 1.0;
  return m;
}

std::vector<ShotRecord> simulate_shots(std::size_t n, const ExperimentPlan& plan, const ImperfectionModel& model,
                                       unsigned threads) {
  if (n < 2) throw ValidationError("noise.shots", "need at least 2 shots");
  if (plan.input.area != 0.0) throw ValidationError("input.area_pi", "noise runs record the sequence with no input pulse");
  model.validate();
  plan.validate();
  const BuiltSequence built = plan.build();
  SimulationGrid grid;
  try {
    grid = build_grid(plan.grid, plan.alpha_L, model.spectral_mask, built.sequence.max_bandwidth(plan.solver.pi_pulse_mode == PiPulseMode::resolved));
  } catch (const std::invalid_argument& e) {
    throw ValidationError("noise.spectral_mask", e.what());
  }

  std::vector<ShotRecord> shots(n);
  parallel_for(n, threads, [&](std::size_t i) {
    ShotRecord& shot = shots[i];
    shot.index = i;
    shot.seed = derive_seed(model.seed, 0, i);
    std::mt19937_64 rng(shot.seed);
    shot.area_multiplier = model.pulse_areas.sample(rng);
    PulseSequence seq = built.sequence;
    for (auto& r : seq.rephasing) r.area_multiplier = shot.area_multiplier;
    const RunResult run = run_sequence(seq, built.stark, grid, plan.solver);
    const FieldEnvelope& out = run.forward_output;
    shot.t0 = out.t0;
    shot.dt = out.dt;
    shot.detector.resize(out.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
      const double t = out.time_at(k);
      shot.detector[k] = 2.0 * (out.samples[k] * std::polar(1.0, model.beat_frequency * t)).real();
    }
    if (model.detector_noise_variance > 0.0) {
      std::normal_distribution<double> noise(0.0, std::sqrt(model.detector_noise_variance));
      for (auto& r : shot.detector) r += noise(rng);
    }
  });
  return shots;
}

namespace {

double envelope(double t, const TemporalMode& mode) {
  const double x = (t - mode.center) / mode.fwhm;
  return std::exp(-2.0 * std::numbers::ln2 * x * x);
}

void check_mode(const ShotRecord& shot, const TemporalMode& mode) {
  if (!(mode.fwhm > 0.0)) throw std::invalid_argument("mode fwhm must be positive");
  const double begin = shot.t0;
  const double end = shot.t0 + static_cast<double>(shot.detector.size()) * shot.dt;
  if (mode.center - 2.0 * mode.fwhm < begin || mode.center + 2.0 * mode.fwhm > end)
    throw std::invalid_argument("temporal mode centred at " + std::to_string(mode.center) + " does not fit the record");
}

}  // namespace

std::complex<double> demodulate(const ShotRecord& shot, const TemporalMode& mode, double beat_frequency) {
  std::complex<double> s = 0.0;
  for (std::size_t k = 0; k < shot.detector.size(); ++k) {
    const double t = shot.time_at(k);
    const double e = envelope(t, mode);
    if (e < 1e-300) continue;
    s += shot.detector[k] * e * std::polar(1.0, -beat_frequency * t);
  }
  return s * shot.dt;
}

double sample_variance(const std::vector<std::complex<double>>& values) {
  if (values.size() < 2) throw std::invalid_argument("variance needs at least 2 values");
  std::complex<double> mean = 0.0;
  for (const auto& v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double acc = 0.0;
  for (const auto& v : values) acc += std::norm(v - mean);
  return acc / static_cast<double>(values.size() - 1);
}

double white_noise_gain(const ShotRecord& shot, const TemporalMode& mode) {
  double acc = 0.0;
  for (std::size_t k = 0; k < shot.detector.size(); ++k) {
    const double e = envelope(shot.time_at(k), mode);
    acc += e * e;
  }
  return acc * shot.dt * shot.dt;
}

ModeEstimate mode_variance(std::vector<ShotRecord>& shots, const TemporalMode& mode, const TemporalMode& reference,
                           double beat_frequency) {
  if (shots.size() < 2) throw std::invalid_argument("mode variance needs at least 2 shots");
  check_mode(shots.front(), mode);
  check_mode(shots.front(), reference);
  std::vector<std::complex<double>> signal;
  std::vector<std::complex<double>> floor;
  for (auto& s : shots) {
    s.mode_amplitude = demodulate(s, mode, beat_frequency);
    signal.push_back(s.mode_amplitude);
    floor.push_back(demodulate(s, reference, beat_frequency));
  }
  ModeEstimate est;
  est.shots = shots.size();
  est.mode_variance = sample_variance(signal);
  est.shot_noise_variance = sample_variance(floor);
  if (!(est.shot_noise_variance > 0.0))
    throw std::invalid_argument("shot-noise reference variance is zero; cannot normalise");
  const double rel = std::sqrt(2.0 / static_cast<double>(est.shots - 1));
  est.normalized_variance = est.mode_variance / est.shot_noise_variance;
  est.mode_standard_error = est.mode_variance * rel;
  est.standard_error = est.normalized_variance * rel;
  return est;
}

std::vector<TimelinePoint> noise_timeline(const std::vector<ShotRecord>& shots, double envelope_fwhm,
                                          double beat_frequency, double step) {
  if (shots.size() < 2) throw std::invalid_argument("timeline needs at least 2 shots");
  if (!(step > 0.0)) throw std::invalid_argument("timeline step must be positive");
  const ShotRecord& first = shots.front();
  const double begin = first.t0 + 2.0 * envelope_fwhm;
  const double end = first.t0 + static_cast<double>(first.detector.size()) * first.dt - 2.0 * envelope_fwhm;
  std::vector<TimelinePoint> out;
  std::vector<std::complex<double>> amps(shots.size());
  for (std::size_t i = 0;; ++i) {
    const double c = begin + static_cast<double>(i) * step;
    if (c > end + 1e-12) break;
    const TemporalMode mode{c, envelope_fwhm};
    for (std::size_t s = 0; s < shots.size(); ++s) amps[s] = demodulate(shots[s], mode, beat_frequency);
    out.push_back({c, sample_variance(amps)});
  }
  return out;
}

}  // namespace hyper

namespace hyper {

namespace {

NoiseCondition condition(std::vector<ShotRecord>& shots, const TemporalMode& mode, const TemporalMode& reference,
                         double beat) {
  check_mode(shots.front(), mode);
  check_mode(shots.front(), reference);
  std::vector<std::complex<double>> signal;
  std::vector<std::complex<double>> floor;
  for (auto& s : shots) {
    s.mode_amplitude = demodulate(s, mode, beat);
    signal.push_back(s.mode_amplitude);
    floor.push_back(demodulate(s, reference, beat));
  }
  NoiseCondition c;
  c.mode_variance = sample_variance(signal);
  c.shot_noise_variance = sample_variance(floor);
  if (c.shot_noise_variance > 0.0) {
    c.normalized_variance = c.mode_variance / c.shot_noise_variance;
    c.standard_error = *c.normalized_variance * std::sqrt(2.0 / static_cast<double>(shots.size() - 1));
  }
  return c;
}

}  // namespace

NoiseExperiment run_noise_experiment(const ExperimentPlan& plan, const NoiseSettings& settings, unsigned threads) {
  ExperimentPlan off = plan;
  off.stark_phase = 0.0;
  NoiseExperiment out;
  out.shots_on = simulate_shots(settings.shots, plan, settings.model, threads);
  out.shots_off = simulate_shots(settings.shots, off, settings.model, threads);
  const TemporalMode mode = settings.echo_mode(plan);
  const TemporalMode reference = settings.reference_mode(plan);
  const double beat = settings.model.beat_frequency;
  try {
    out.field_off = condition(out.shots_off, mode, reference, beat);
    out.field_on = condition(out.shots_on, mode, reference, beat);
  } catch (const std::invalid_argument& e) {
    throw ValidationError("noise.envelope_offset", e.what());
  }
  out.shot_noise_floor = out.field_off.shot_noise_variance;
  out.timeline_off = noise_timeline(out.shots_off, settings.envelope_fwhm, beat, settings.timeline_step);
  out.timeline_on = noise_timeline(out.shots_on, settings.envelope_fwhm, beat, settings.timeline_step);
  return out;
}

}  // namespace hyper
