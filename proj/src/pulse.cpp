#include "hyper/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hyper {

namespace {

constexpr double kLn2 = std::numbers::ln2;

// Gaussian amplitude exp(-2 ln2 s^2 / fwhm^2) = exp(-(s/sigma)^2).
double gaussian_sigma(double fwhm) { return fwhm / std::sqrt(2.0 * kLn2); }

}  // namespace

double OpticalPulse::peak_amplitude() const {
  if (shape == PulseShape::square) return area / (2.0 * fwhm);
  return area / (2.0 * gaussian_sigma(fwhm) * std::sqrt(std::numbers::pi));
}

std::complex<double> OpticalPulse::amplitude(double t) const {
  double env = 0.0;
  if (shape == PulseShape::square) {
    env = std::abs(t - center) <= 0.5 * fwhm ? 1.0 : 0.0;
  } else {
    const double x = (t - center) / gaussian_sigma(fwhm);
    env = std::exp(-x * x);
  }
  return std::polar(peak_amplitude() * env, phase);
}

std::complex<double> OpticalPulse::average(double ta, double tb) const {
  double mean = 0.0;
  if (shape == PulseShape::square) {
    const double lo = std::max(ta, center - 0.5 * fwhm);
    const double hi = std::min(tb, center + 0.5 * fwhm);
    mean = hi > lo ? (hi - lo) / (tb - ta) : 0.0;
  } else {
    const double sigma = gaussian_sigma(fwhm);
    const double xa = (ta - center) / sigma;
    const double xb = (tb - center) / sigma;
    mean = 0.5 * std::sqrt(std::numbers::pi) * sigma * (std::erf(xb) - std::erf(xa)) / (tb - ta);
  }
  return std::polar(peak_amplitude() * mean, phase);
}

double OpticalPulse::bandwidth() const {
  if (shape == PulseShape::square) return 2.0 * std::numbers::pi * 0.8859 / fwhm;
  return 4.0 * kLn2 / fwhm;
}

Interval OpticalPulse::support() const {
  if (shape == PulseShape::square) return {center - 0.5 * fwhm, center + 0.5 * fwhm};
  return {center - 3.0 * fwhm, center + 3.0 * fwhm};
}

std::vector<double> PulseSequence::rephasing_times() const {
  std::vector<double> times;
  for (const auto& r : rephasing) times.push_back(r.pulse.center);
  return times;
}

double PulseSequence::max_bandwidth(bool include_rephasing) const {
  double bw = 0.0;
  for (const auto& p : inputs)
    if (p.area > 0.0) bw = std::max(bw, p.bandwidth());
  if (include_rephasing)
    for (const auto& r : rephasing) bw = std::max(bw, r.pulse.bandwidth());
  return bw;
}

std::vector<std::complex<double>> boundary_drive(const PulseSequence& sequence, const SimulationGrid& grid,
                                                 bool include_rephasing) {
  std::vector<std::complex<double>> drive(grid.num_steps());
  for (std::size_t n = 0; n < drive.size(); ++n) {
    const double ta = grid.time_at(n);
    const double tb = grid.time_at(n + 1);
    std::complex<double> a = 0.0;
    for (const auto& p : sequence.inputs) a += p.average(ta, tb);
    if (include_rephasing) {
      for (const auto& r : sequence.rephasing) {
        OpticalPulse scaled = r.pulse;
        scaled.area = r.effective_area();
        a += scaled.average(ta, tb);
      }
    }
    drive[n] = a;
  }
  return drive;
}

FieldEnvelope input_envelope(const PulseSequence& sequence, const SimulationGrid& grid) {
  FieldEnvelope f = zero_envelope(grid.t_span().begin, grid.t_step(), grid.num_steps());
  f.samples = boundary_drive(sequence, grid, false);
  return f;
}

}  // namespace hyper
