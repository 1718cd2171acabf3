#pragma once

#include <vector>

#include "hyper/grid.hpp"

namespace hyper {

// Constant field gradient switched on over [t_start, t_end]. `phase` is the
// phase per unit z accumulated across the window, so the detuning of an atom
// at z is shifted by gradient() * z.
struct StarkWindow {
  double t_start = 0.0;
  double t_end = 0.0;
  double phase = 0.0;

  double duration() const { return t_end - t_start; }
  double gradient() const { return phase / duration(); }
};

class StarkProfile {
 public:
  StarkProfile() = default;
  // Throws std::invalid_argument on reversed or overlapping windows.
  explicit StarkProfile(std::vector<StarkWindow> windows);

  const std::vector<StarkWindow>& windows() const { return windows_; }
  bool empty() const { return windows_.empty(); }

  double gradient_at(double t) const;
  // Exact integral of the gradient over [ta, tb].
  double integrated_gradient(double ta, double tb) const;

 private:
  std::vector<StarkWindow> windows_;
};

// Phase that is linear in z: phi(z) = slope * z.
struct LinearPhaseMap {
  double slope = 0.0;
  double operator()(double z) const { return slope * z; }
};

// Net coherence phase per unit z accumulated through the windows, with the
// sign of each window flipped once per preceding rephasing pulse. Throws
// std::invalid_argument on unsorted pulse times or a pulse inside a window.
LinearPhaseMap stark_phase_map(const StarkProfile& profile, const std::vector<double>& pi_pulse_times);

}  // namespace hyper
