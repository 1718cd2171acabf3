#pragma once

// Closed-form semiclassical results for weak inputs and ideal instantaneous
// pi-pulses. All efficiencies are output/input energy ratios.

#include <complex>

#include "hyper/field.hpp"

namespace hyper {

struct RegionSolutionParams {
  double alpha_L = 0.0;
  double eta1 = 0.0;
  double eta_prime = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
  double t4 = 0.0;
  double t_d = 0.0;

  // Throws std::invalid_argument unless alpha_L >= 0 and t1 < t2 < t4 with
  // the echo after t4.
  void validate() const;
};

// Input attenuated by exp(-alpha_L/2) in amplitude.
FieldEnvelope transmitted_field(double alpha_L, const FieldEnvelope& input);

double two_pulse_echo_gain(double alpha_L);
double hyper_echo_efficiency_forward(double alpha_L);
double backward_retrieval_efficiency(double alpha_L);

// t1 + 2 t4 - 2 t2. Requires t1 < t2 <= t4.
double echo_arrival_time(double t1, double t2, double t4);
// Stimulated echo time t4 + (t2 - t1).
double three_pulse_echo_time(double t1, double t2, double t4);

// Amplitude multiplier of the two-pulse echo when a residual phase phi_L
// (rad across the sample) is left on the coherence:
//   alpha e^{alpha/2} (1 - e^{-(alpha + i phi)}) / (alpha + i phi).
std::complex<double> echo_suppression_factor(double alpha_L, double phi_L);
// |factor(phi)|^2 / |factor(0)|^2.
double echo_suppression_ratio(double alpha_L, double phi_L);

// Bracket of the region-3 output at Stark parameter x = eta'(t - t4) L:
//   alpha + alpha^2 (e^s - 1 - s)/s^2 with s = alpha - i x.
std::complex<double> region3_bracket(double alpha_L, double x);

// Forward output after the second pi-pulse for balanced fields:
//   a(L, t) = -a_in(t - 2t4 + 2t2) e^{-alpha/2} B(eta'(t - t4) L),
// with B = alpha in the large-Stark limit.
FieldEnvelope region3_output(const RegionSolutionParams& params, const FieldEnvelope& input, bool large_stark);

// -a_in(t - t_d)(1 - e^{-alpha_L}). Throws std::invalid_argument when the
// input exceeds 1e-8 of its peak anywhere at t > 0.
FieldEnvelope backward_output(double alpha_L, double t_d, const FieldEnvelope& input);

}  // namespace hyper
