#include "hyper/stark.hpp"

#include <algorithm>
#include <stdexcept>

namespace hyper {

StarkProfile::StarkProfile(std::vector<StarkWindow> windows) : windows_(std::move(windows)) {
  std::sort(windows_.begin(), windows_.end(),
            [](const StarkWindow& a, const StarkWindow& b) { return a.t_start < b.t_start; });
  for (std::size_t i = 0; i < windows_.size(); ++i) {
    if (!(windows_[i].t_end > windows_[i].t_start))
      throw std::invalid_argument("Stark window must have positive duration");
    if (i > 0 && windows_[i].t_start < windows_[i - 1].t_end)
      throw std::invalid_argument("Stark windows overlap");
  }
}

double StarkProfile::gradient_at(double t) const {
  for (const auto& w : windows_)
    if (t >= w.t_start && t < w.t_end) return w.gradient();
  return 0.0;
}

double StarkProfile::integrated_gradient(double ta, double tb) const {
  double total = 0.0;
  for (const auto& w : windows_) {
    const double lo = std::max(ta, w.t_start);
    const double hi = std::min(tb, w.t_end);
    if (lo == w.t_start && hi == w.t_end) total += w.phase;
    else if (hi > lo) total += w.gradient() * (hi - lo);
  }
  return total;
}

LinearPhaseMap stark_phase_map(const StarkProfile& profile, const std::vector<double>& pi_pulse_times) {
  if (!std::is_sorted(pi_pulse_times.begin(), pi_pulse_times.end()))
    throw std::invalid_argument("pi-pulse times must be sorted");
  LinearPhaseMap map;
  for (const auto& w : profile.windows()) {
    std::size_t before = 0;
    for (double t : pi_pulse_times) {
      if (t > w.t_start && t < w.t_end) throw std::invalid_argument("pi-pulse falls inside a Stark window");
      if (t <= w.t_start) ++before;
    }
    const double sign = before % 2 == 0 ? 1.0 : -1.0;
    map.slope += sign * w.phase;
  }
  return map;
}

}  // namespace hyper
