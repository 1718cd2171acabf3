#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "hyper/ensemble.hpp"
#include "hyper/grid.hpp"

namespace hyper {

// Complex envelope sampled on a uniform time axis at a fixed position.
// Sample i represents the interval [t0 + i*dt, t0 + (i+1)*dt] and is located
// at its midpoint.
struct FieldEnvelope {
  double t0 = 0.0;
  double dt = 1.0;
  std::vector<std::complex<double>> samples;
  Direction direction = Direction::forward;
  double carrier_offset = 0.0;

  std::size_t size() const { return samples.size(); }
  double time_at(std::size_t i) const { return t0 + (static_cast<double>(i) + 0.5) * dt; }
  Interval span() const { return {t0, t0 + static_cast<double>(samples.size()) * dt}; }

  // Sum of |a|^2 dt over all samples, or over samples whose midpoint lies in
  // `window`.
  double energy() const;
  double energy(Interval window) const;
  // Sum of |a| dt over samples in `window`.
  double area(Interval window) const;
  // Linear interpolation between sample midpoints; zero outside the span.
  std::complex<double> at(double t) const;

  FieldEnvelope scaled(std::complex<double> c) const;
  FieldEnvelope shifted(double delay) const;
};

FieldEnvelope zero_envelope(double t0, double dt, std::size_t n);

// Re <a, b> / sqrt(E_a E_b) over the samples of `a`, reading `b` at the same
// times. Equals 1 only for identical shapes with equal sign.
double normalized_overlap(const FieldEnvelope& a, const FieldEnvelope& b);

}  // namespace hyper
