#include "hyper/ensemble.hpp"

#include <cmath>

namespace hyper {

EnsembleState::EnsembleState(std::size_t num_z, std::size_t num_detunings, double t)
    : u(num_z * num_detunings, 0.0),
      v(num_z * num_detunings, 0.0),
      w(num_z * num_detunings, -1.0),
      frame_phase(num_z, 0.0),
      time(t),
      num_z_(num_z),
      num_det_(num_detunings) {}

std::complex<double> EnsembleState::coherence(std::size_t k, std::size_t j) const {
  const std::size_t i = index(k, j);
  return 0.5 * std::complex<double>(u[i], v[i]) * std::polar(1.0, frame_phase[k]);
}

void EnsembleState::set_coherence(std::size_t k, std::size_t j, std::complex<double> d) {
  const std::size_t i = index(k, j);
  const std::complex<double> stored = 2.0 * d * std::polar(1.0, -frame_phase[k]);
  u[i] = stored.real();
  v[i] = stored.imag();
}

void EnsembleState::normalize_frame() {
  for (std::size_t k = 0; k < num_z_; ++k) {
    if (frame_phase[k] == 0.0) continue;
    const double c = std::cos(frame_phase[k]);
    const double s = std::sin(frame_phase[k]);
    for (std::size_t j = 0; j < num_det_; ++j) {
      const std::size_t i = index(k, j);
      const double nu = u[i] * c - v[i] * s;
      const double nv = u[i] * s + v[i] * c;
      u[i] = nu;
      v[i] = nv;
    }
    frame_phase[k] = 0.0;
  }
}

double EnsembleState::max_norm_error() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    worst = std::max(worst, std::abs(u[i] * u[i] + v[i] * v[i] + w[i] * w[i] - 1.0));
  return worst;
}

EnsembleState ground_state(const SimulationGrid& grid) {
  return EnsembleState(grid.num_z(), grid.num_detunings(), grid.t_span().begin);
}

}  // namespace hyper
