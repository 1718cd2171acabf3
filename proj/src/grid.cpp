#include "hyper/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hyper {

double mask_value(const SpectralMask& mask, double detuning) {
  double value = 1.0;
  for (const auto& f : mask) {
    const double x = (detuning - f.center) / f.width;
    value += f.depth / (1.0 + x * x);
  }
  return value;
}

double nyquist_halfwidth(double t_step) { return std::numbers::pi / t_step; }

double SimulationGrid::revival_time() const { return 2.0 * std::numbers::pi / spacing_; }

namespace {

void fill_weights(SimulationGrid& grid, std::vector<double>& weights, const std::vector<double>& detunings,
                  double spacing, const SpectralMask& mask) {
  weights.resize(detunings.size());
  for (std::size_t j = 0; j < detunings.size(); ++j) {
    const double m = mask_value(mask, detunings[j]);
    if (m < 0.0) {
      std::ostringstream msg;
      msg << "spectral mask is negative (" << m << ") at detuning " << detunings[j];
      throw std::invalid_argument(msg.str());
    }
    weights[j] = spacing * m;
  }
  (void)grid;
}

}  // namespace

SimulationGrid make_grid(std::size_t num_z, std::size_t num_detunings, double detuning_halfwidth,
                         double t_step, Interval t_span, double max_pulse_bandwidth) {
  if (num_z < 2) throw std::invalid_argument("num_z must be at least 2");
  if (num_detunings < 2) throw std::invalid_argument("num_detunings must be at least 2");
  if (!(detuning_halfwidth > 0.0)) throw std::invalid_argument("detuning_halfwidth must be positive");
  if (!(t_step > 0.0)) throw std::invalid_argument("t_step must be positive");
  if (!(t_span.end > t_span.begin)) throw std::invalid_argument("t_span must have positive length");
  if (!(t_span.begin <= 0.0 && t_span.end >= 0.0)) throw std::invalid_argument("t_span must contain t = 0");

  SimulationGrid grid;
  grid.z_.resize(num_z);
  for (std::size_t k = 0; k < num_z; ++k) grid.z_[k] = static_cast<double>(k) / static_cast<double>(num_z - 1);

  grid.halfwidth_ = detuning_halfwidth;
  grid.spacing_ = 2.0 * detuning_halfwidth / static_cast<double>(num_detunings);
  grid.detunings_.resize(num_detunings);
  const double mid = 0.5 * static_cast<double>(num_detunings - 1);
  for (std::size_t j = 0; j < num_detunings; ++j)
    grid.detunings_[j] = (static_cast<double>(j) - mid) * grid.spacing_;
  fill_weights(grid, grid.weights_, grid.detunings_, grid.spacing_, grid.mask_);

  grid.t_step_ = t_step;
  grid.t_start_ = t_span.begin;
  grid.num_steps_ = static_cast<std::size_t>(std::ceil(t_span.length() / t_step - 1e-9));

  if (detuning_halfwidth * t_step > std::numbers::pi * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "detuning band +-" << detuning_halfwidth << " exceeds the Nyquist band +-" << nyquist_halfwidth(t_step)
        << " of the time step; far detunings alias";
    grid.warnings_.push_back(msg.str());
  }
  if (max_pulse_bandwidth > 0.0 && detuning_halfwidth < 20.0 * max_pulse_bandwidth) {
    std::ostringstream msg;
    msg << "flat-line assumption violated: detuning half width " << detuning_halfwidth
        << " is below 20x the widest pulse bandwidth " << max_pulse_bandwidth;
    grid.warnings_.push_back(msg.str());
  }
  if (grid.revival_time() < t_span.length()) {
    std::ostringstream msg;
    msg << "detuning spacing " << grid.spacing_ << " gives comb revivals after " << grid.revival_time()
        << " us, inside the " << t_span.length() << " us span";
    grid.warnings_.push_back(msg.str());
  }
  return grid;
}

SimulationGrid SimulationGrid::with_optical_depth(double alpha_L) const {
  if (!(alpha_L >= 0.0)) throw std::invalid_argument("optical depth must be non-negative");
  SimulationGrid copy = *this;
  copy.optical_depth_ = alpha_L;
  return copy;
}

SimulationGrid SimulationGrid::with_mask(SpectralMask mask) const {
  SimulationGrid copy = *this;
  for (const auto& f : mask)
    if (!(f.width > 0.0)) throw std::invalid_argument("spectral feature width must be positive");
  copy.mask_ = std::move(mask);
  fill_weights(copy, copy.weights_, copy.detunings_, copy.spacing_, copy.mask_);
  return copy;
}

SimulationGrid build_grid(const GridSpec& spec, double alpha_L, const SpectralMask& mask,
                          double max_pulse_bandwidth) {
  const double halfwidth = spec.detuning_halfwidth > 0.0 ? spec.detuning_halfwidth : nyquist_halfwidth(spec.t_step);
  return make_grid(spec.num_z, spec.num_detunings, halfwidth, spec.t_step, spec.t_span, max_pulse_bandwidth)
      .with_optical_depth(alpha_L)
      .with_mask(mask);
}

}  // namespace hyper
