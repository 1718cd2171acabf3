#include "hyper/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hyper {

namespace {

void require_depth(double alpha_L) {
  if (!(alpha_L >= 0.0)) throw std::invalid_argument("alpha_L must be non-negative");
}

// (e^s - 1 - s) / s^2.
std::complex<double> e2(std::complex<double> s) {
  if (std::abs(s) < 1e-2) {
    std::complex<double> term = 0.5;
    std::complex<double> sum = term;
    for (int n = 3; n < 14; ++n) {
      term *= s / static_cast<double>(n);
      sum += term;
    }
    return sum;
  }
  return (std::exp(s) - 1.0 - s) / (s * s);
}

// (1 - e^{-s}) / s.
std::complex<double> absorbed_fraction(std::complex<double> s) {
  if (std::abs(s) < 1e-8) return 1.0 - 0.5 * s;
  return (1.0 - std::exp(-s)) / s;
}

}  // namespace

void RegionSolutionParams::validate() const {
  require_depth(alpha_L);
  if (!(t1 < t2 && t2 < t4)) throw std::invalid_argument("event times must satisfy t1 < t2 < t4");
}

FieldEnvelope transmitted_field(double alpha_L, const FieldEnvelope& input) {
  require_depth(alpha_L);
  return input.scaled(std::exp(-0.5 * alpha_L));
}

double two_pulse_echo_gain(double alpha_L) {
  require_depth(alpha_L);
  const double s = std::sinh(0.5 * alpha_L);
  return 4.0 * s * s;
}

double hyper_echo_efficiency_forward(double alpha_L) {
  require_depth(alpha_L);
  return alpha_L * alpha_L * std::exp(-alpha_L);
}

double backward_retrieval_efficiency(double alpha_L) {
  require_depth(alpha_L);
  const double x = -std::expm1(-alpha_L);
  return x * x;
}

double echo_arrival_time(double t1, double t2, double t4) {
  if (!(t1 < t2 && t2 <= t4)) throw std::invalid_argument("event times must satisfy t1 < t2 <= t4");
  return t1 + 2.0 * t4 - 2.0 * t2;
}

double three_pulse_echo_time(double t1, double t2, double t4) {
  if (!(t1 < t2 && t2 <= t4)) throw std::invalid_argument("event times must satisfy t1 < t2 <= t4");
  return t4 + (t2 - t1);
}

std::complex<double> echo_suppression_factor(double alpha_L, double phi_L) {
  require_depth(alpha_L);
  return alpha_L * std::exp(0.5 * alpha_L) * absorbed_fraction(std::complex<double>(alpha_L, phi_L));
}

double echo_suppression_ratio(double alpha_L, double phi_L) {
  require_depth(alpha_L);
  return std::norm(absorbed_fraction({alpha_L, phi_L})) / std::norm(absorbed_fraction({alpha_L, 0.0}));
}

std::complex<double> region3_bracket(double alpha_L, double x) {
  require_depth(alpha_L);
  return alpha_L + alpha_L * alpha_L * e2(std::complex<double>(alpha_L, -x));
}

FieldEnvelope region3_output(const RegionSolutionParams& params, const FieldEnvelope& input, bool large_stark) {
  params.validate();
  const double shift = 2.0 * (params.t4 - params.t2);
  FieldEnvelope out = input.shifted(shift);
  const double decay = std::exp(-0.5 * params.alpha_L);
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    const std::complex<double> bracket =
        large_stark ? std::complex<double>(params.alpha_L)
                    : region3_bracket(params.alpha_L, params.eta_prime * (out.time_at(i) - params.t4));
    out.samples[i] = -input.samples[i] * decay * bracket;
  }
  return out;
}

FieldEnvelope backward_output(double alpha_L, double t_d, const FieldEnvelope& input) {
  require_depth(alpha_L);
  double peak = 0.0;
  for (const auto& a : input.samples) peak = std::max(peak, std::abs(a));
  for (std::size_t i = 0; i < input.samples.size(); ++i)
    if (input.time_at(i) > 0.0 && std::abs(input.samples[i]) > 1e-8 * peak)
      throw std::invalid_argument("backward retrieval input must vanish for t > 0");
  return input.shifted(t_d).scaled(std::expm1(-alpha_L));
}

}  // namespace hyper
