#pragma once

#include <complex>
#include <vector>

#include "hyper/ensemble.hpp"
#include "hyper/field.hpp"
#include "hyper/grid.hpp"

namespace hyper {

enum class PulseShape { gaussian, square };

// `fwhm` is the intensity full width at half maximum for Gaussians and the
// full duration for square pulses. `area` is the pulse area 2*integral|a| dt
// in radians.
struct OpticalPulse {
  PulseShape shape = PulseShape::gaussian;
  double center = 0.0;
  double fwhm = 1.0;
  double area = 0.0;
  double phase = 0.0;
  Direction direction = Direction::forward;

  double peak_amplitude() const;
  std::complex<double> amplitude(double t) const;
  // Exact mean of amplitude() over [ta, tb].
  std::complex<double> average(double ta, double tb) const;
  // Spectral intensity FWHM, rad/us.
  double bandwidth() const;
  // Interval holding the pulse: center +- 3 fwhm for Gaussians, the pulse
  // itself for square pulses.
  Interval support() const;
};

struct RephasingPulse {
  OpticalPulse pulse;
  double area_multiplier = 1.0;
  // Counter-propagating pulse: re-tags subsequent emission as backward.
  bool direction_flip = false;

  double effective_area() const { return pulse.area * area_multiplier; }
};

struct PulseSequence {
  std::vector<OpticalPulse> inputs;
  std::vector<RephasingPulse> rephasing;

  std::vector<double> rephasing_times() const;
  double max_bandwidth(bool include_rephasing = true) const;
};

// Step-averaged entry-face drive for every time step of `grid`. Rephasing
// pulses are included only when `include_rephasing` is set.
std::vector<std::complex<double>> boundary_drive(const PulseSequence& sequence, const SimulationGrid& grid,
                                                 bool include_rephasing);

// The input pulses alone, as an envelope on the grid's time axis.
FieldEnvelope input_envelope(const PulseSequence& sequence, const SimulationGrid& grid);

}  // namespace hyper
