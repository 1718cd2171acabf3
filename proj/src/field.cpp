#include "hyper/field.hpp"

#include <cmath>
#include <stdexcept>

namespace hyper {

double FieldEnvelope::energy() const {
  double e = 0.0;
  for (const auto& a : samples) e += std::norm(a);
  return e * dt;
}

double FieldEnvelope::energy(Interval window) const {
  double e = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i)
    if (window.contains(time_at(i))) e += std::norm(samples[i]);
  return e * dt;
}

double FieldEnvelope::area(Interval window) const {
  double s = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i)
    if (window.contains(time_at(i))) s += std::abs(samples[i]);
  return s * dt;
}

std::complex<double> FieldEnvelope::at(double t) const {
  if (samples.empty()) return {};
  const double x = (t - t0) / dt - 0.5;
  if (x < -0.5 || x > static_cast<double>(samples.size()) - 0.5) return {};
  if (x <= 0.0) return samples.front();
  const auto i = static_cast<std::size_t>(std::floor(x));
  if (i + 1 >= samples.size()) return samples.back();
  const double f = x - static_cast<double>(i);
  return (1.0 - f) * samples[i] + f * samples[i + 1];
}

FieldEnvelope FieldEnvelope::scaled(std::complex<double> c) const {
  FieldEnvelope out = *this;
  for (auto& a : out.samples) a *= c;
  return out;
}

FieldEnvelope FieldEnvelope::shifted(double delay) const {
  FieldEnvelope out = *this;
  out.t0 += delay;
  return out;
}

FieldEnvelope zero_envelope(double t0, double dt, std::size_t n) {
  if (!(dt > 0.0)) throw std::invalid_argument("envelope dt must be positive");
  FieldEnvelope f;
  f.t0 = t0;
  f.dt = dt;
  f.samples.assign(n, {});
  return f;
}

double normalized_overlap(const FieldEnvelope& a, const FieldEnvelope& b) {
  std::complex<double> inner = 0.0;
  double ea = 0.0;
  double eb = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const auto bv = b.at(a.time_at(i));
    inner += std::conj(a.samples[i]) * bv;
    ea += std::norm(a.samples[i]);
    eb += std::norm(bv);
  }
  if (ea == 0.0 || eb == 0.0) return 0.0;
  return inner.real() / std::sqrt(ea * eb);
}

}  // namespace hyper
