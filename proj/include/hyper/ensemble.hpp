#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "hyper/grid.hpp"

namespace hyper {

enum class Direction { forward, backward };

// Bloch vectors on the (z, detuning) grid, stored z-major in three parallel
// arrays. The coherence D = (u + iv)/2 is kept in a per-slice Stark frame:
// the physical coherence at slice k is D_stored * exp(i * frame_phase[k]).
class EnsembleState {
 public:
  EnsembleState() = default;
  EnsembleState(std::size_t num_z, std::size_t num_detunings, double time);

  std::size_t num_z() const { return num_z_; }
  std::size_t num_detunings() const { return num_det_; }
  std::size_t index(std::size_t k, std::size_t j) const { return k * num_det_ + j; }

  std::vector<double> u;
  std::vector<double> v;
  std::vector<double> w;
  std::vector<double> frame_phase;
  double time = 0.0;
  Direction emission = Direction::forward;

  std::complex<double> coherence(std::size_t k, std::size_t j) const;
  void set_coherence(std::size_t k, std::size_t j, std::complex<double> d);

  // Folds the Stark frame into u and v and resets the frame to zero.
  void normalize_frame();

  // max |u^2 + v^2 + w^2 - 1| over the grid.
  double max_norm_error() const;

 private:
  std::size_t num_z_ = 0;
  std::size_t num_det_ = 0;
};

EnsembleState ground_state(const SimulationGrid& grid);

}  // namespace hyper
