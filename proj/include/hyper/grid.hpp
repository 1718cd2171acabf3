#pragma once

// Discretisation of the medium: positions along the sample, the detuning
// band of the inhomogeneous line, and the time axis.
//
// Units: time in microseconds, angular frequency in rad/us, z dimensionless
// on [0, 1]. The optical depth is carried as the product alpha*L.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace hyper {

struct Interval {
  double begin = 0.0;
  double end = 0.0;

  double length() const { return end - begin; }
  bool contains(double t) const { return t >= begin && t <= end; }
};

// One Lorentzian feature on the inhomogeneous line. Negative depth is a
// spectral hole, positive depth an antihole.
struct SpectralFeature {
  double center = 0.0;
  double width = 1.0;  // half width at half maximum, rad/us
  double depth = 0.0;
};

using SpectralMask = std::vector<SpectralFeature>;

// Multiplicative density factor at `detuning`; 1 for an empty mask.
double mask_value(const SpectralMask& mask, double detuning);

// Detuning half width that makes the band exactly one Nyquist zone of the
// time step (pi / t_step).
double nyquist_halfwidth(double t_step);

class SimulationGrid {
 public:
  std::size_t num_z() const { return z_.size(); }
  std::size_t num_detunings() const { return detunings_.size(); }
  std::size_t num_points() const { return z_.size() * detunings_.size(); }

  std::span<const double> z_points() const { return z_; }
  std::span<const double> detunings() const { return detunings_; }
  // Spectral density weights: detuning spacing times the mask.
  std::span<const double> weights() const { return weights_; }

  double dz() const { return z_[1] - z_[0]; }
  double detuning_spacing() const { return spacing_; }
  double detuning_halfwidth() const { return halfwidth_; }
  // Time after which a coherence created with a common phase rephases on the
  // discrete detuning comb.
  double revival_time() const;

  double t_step() const { return t_step_; }
  Interval t_span() const { return {t_start_, t_start_ + static_cast<double>(num_steps_) * t_step_}; }
  std::size_t num_steps() const { return num_steps_; }
  double time_at(std::size_t step) const { return t_start_ + static_cast<double>(step) * t_step_; }

  double optical_depth() const { return optical_depth_; }
  const SpectralMask& mask() const { return mask_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  SimulationGrid with_optical_depth(double alpha_L) const;
  SimulationGrid with_mask(SpectralMask mask) const;

 private:
  friend SimulationGrid make_grid(std::size_t, std::size_t, double, double, Interval, double);

  std::vector<double> z_;
  std::vector<double> detunings_;
  std::vector<double> weights_;
  double spacing_ = 0.0;
  double halfwidth_ = 0.0;
  double t_step_ = 0.0;
  double t_start_ = 0.0;
  std::size_t num_steps_ = 0;
  double optical_depth_ = 0.0;
  SpectralMask mask_;
  std::vector<std::string> warnings_;
};

// Builds a uniform grid. Detunings are centred on zero with spacing
// 2*halfwidth/num_detunings, so an odd count puts a point at resonance.
// `max_pulse_bandwidth` (rad/us, 0 = unknown) drives the flat-line warning.
// Throws std::invalid_argument on counts < 2, non-positive steps or widths,
// and spans that do not contain t = 0.
SimulationGrid make_grid(std::size_t num_z, std::size_t num_detunings, double detuning_halfwidth,
                         double t_step, Interval t_span, double max_pulse_bandwidth = 0.0);

// Declarative form of make_grid's arguments, used by plans and configs.
struct GridSpec {
  std::size_t num_z = 200;
  std::size_t num_detunings = 801;
  double detuning_halfwidth = 0.0;  // <= 0 selects nyquist_halfwidth(t_step)
  double t_step = 0.02;
  Interval t_span{0.0, 1.0};
};

SimulationGrid build_grid(const GridSpec& spec, double alpha_L, const SpectralMask& mask = {},
                          double max_pulse_bandwidth = 0.0);

}  // namespace hyper
