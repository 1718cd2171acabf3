#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "hyper/grid.hpp"
#include "hyper/protocol.hpp"

namespace hyper {

// Rephasing-pulse area multipliers seen through a Gaussian beam: density
// proportional to 1/m on [min_multiplier, 1]. min_multiplier = 1 gives
// perfect pulses.
struct AreaDistribution {
  double min_multiplier = 0.5;

  double sample(std::mt19937_64& rng) const;
  double spread() const { return 1.0 - min_multiplier; }
};

struct ImperfectionModel {
  AreaDistribution pulse_areas;
  SpectralMask spectral_mask;
  double detector_noise_variance = 0.0;  // per detector sample
  double beat_frequency = 2.0 * 3.14159265358979323846 * 6.0;  // rad/us
  std::uint64_t seed = 0;

  // Throws ValidationError on multipliers outside (0, 1], negative mask
  // values on the line or negative variance.
  void validate() const;

  static ImperfectionModel ideal();
};

struct ShotRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  double area_multiplier = 1.0;
  double t0 = 0.0;
  double dt = 1.0;
  // Real heterodyne record 2 Re[a(t) e^{i beat t}] + detector noise.
  std::vector<double> detector;
  // Demodulated amplitude in the echo mode, filled by mode_variance.
  std::complex<double> mode_amplitude = 0.0;

  double time_at(std::size_t i) const { return t0 + (static_cast<double>(i) + 0.5) * dt; }
};

struct TemporalMode {
  double center = 0.0;
  double fwhm = 1.8;
};

struct ModeEstimate {
  double mode_variance = 0.0;
  double shot_noise_variance = 0.0;
  double normalized_variance = 0.0;
  std::size_t shots = 0;
  // Standard errors from the shot count, relative error sqrt(2/(N-1)).
  double mode_standard_error = 0.0;
  double standard_error = 0.0;
};

// Runs `n` shots of `plan` (which must carry no input pulse). Shot i uses the
// seed derive_seed(model.seed, 0, i) for its area multiplier and detector
// noise, so results do not depend on thread count or evaluation order.
std::vector<ShotRecord> simulate_shots(std::size_t n, const ExperimentPlan& plan, const ImperfectionModel& model,
                                       unsigned threads = 1);

// sum_t r(t) env(t) e^{-i beat t} dt with env = exp(-2 ln2 (t - c)^2 / fwhm^2).
std::complex<double> demodulate(const ShotRecord& shot, const TemporalMode& mode, double beat_frequency);

// Unbiased complex sample variance (1/(N-1)) sum |s - mean|^2.
double sample_variance(const std::vector<std::complex<double>>& values);

// dt^2 sum env^2 for the record's time axis: the mode variance produced by
// unit-variance white detector noise.
double white_noise_gain(const ShotRecord& shot, const TemporalMode& mode);

// Mode variance at `mode` normalised by the same estimator applied at
// `reference` (the quiet region before the first pi-pulse). Throws
// std::invalid_argument for fewer than 2 shots, modes outside the record or
// a zero reference variance.
ModeEstimate mode_variance(std::vector<ShotRecord>& shots, const TemporalMode& mode, const TemporalMode& reference,
                           double beat_frequency);

struct TimelinePoint {
  double center = 0.0;
  double variance = 0.0;
};

// Mode variance with the envelope centre stepped by `step` across the
// record, keeping the whole envelope (+- 2 fwhm) inside it.
std::vector<TimelinePoint> noise_timeline(const std::vector<ShotRecord>& shots, double envelope_fwhm,
                                          double beat_frequency, double step);

struct NoiseSettings {
  std::size_t shots = 1000;
  ImperfectionModel model;
  double envelope_fwhm = 1.8;
  // Echo-mode centre relative to the first pi-pulse.
  double envelope_offset = 15.0;
  // Shot-noise reference centre relative to the first pi-pulse (negative =
  // before it).
  double reference_offset = -15.0;
  double timeline_step = 0.5;

  TemporalMode echo_mode(const ExperimentPlan& plan) const { return {plan.t2 + envelope_offset, envelope_fwhm}; }
  TemporalMode reference_mode(const ExperimentPlan& plan) const { return {plan.t2 + reference_offset, envelope_fwhm}; }
};

struct NoiseCondition {
  double mode_variance = 0.0;
  double shot_noise_variance = 0.0;
  std::optional<double> normalized_variance;  // absent when the floor is 0
  double standard_error = 0.0;                // of the normalised variance
};

// Paired field-off / field-on run: the field-off plan is `plan` with the
// Stark phase set to zero, and both use the same per-shot seeds.
struct NoiseExperiment {
  NoiseCondition field_off;
  NoiseCondition field_on;
  std::vector<TimelinePoint> timeline_off;
  std::vector<TimelinePoint> timeline_on;
  double shot_noise_floor = 0.0;
  std::vector<ShotRecord> shots_off;
  std::vector<ShotRecord> shots_on;
};

NoiseExperiment run_noise_experiment(const ExperimentPlan& plan, const NoiseSettings& settings, unsigned threads = 1);

}  // namespace hyper
