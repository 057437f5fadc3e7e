#include "pedalmap/workspace.hpp"

#include <algorithm>
#include <cmath>

#include "seed_mix.hpp"

namespace pedalmap {

bool is_reachable(const Pose& pose, const InterfaceGeometry& g,
                  const SpringParams& sp) {
  std::array<double, kNumSprings> lengths;
  try {
    lengths = guide_lengths(pose, g);
  } catch (const std::invalid_argument&) {
    return false;
  }
  const double tol = 1e-12;
  for (int i = 0; i < kNumSprings; ++i) {
    const double raw =
        sp.home_deflection + (sp.home_guide_length[i] - lengths[i]);
    if (raw < -tol || raw > sp.max_deflection + tol) return false;
  }
  return true;
}

WorkspaceSlice monte_carlo_slice(double yaw, std::uint64_t samples,
                                 const InterfaceGeometry& g,
                                 const SpringParams& sp, std::uint64_t seed) {
  WorkspaceSlice slice;
  slice.yaw = yaw;
  slice.samples = samples;

  std::mt19937_64 rng(seed);
  bool first = true;
  for (std::uint64_t n = 0; n < samples; ++n) {
    Pose pose;
    pose.x = detail::uniform_range(rng, -g.x_max, g.x_max);
    pose.y = detail::uniform_range(rng, -g.y_max, g.y_max);
    pose.yaw = yaw;
    if (!is_reachable(pose, g, sp)) continue;
    slice.accepted.push_back({pose.x, pose.y});
    if (first) {
      slice.x_min = slice.x_max = pose.x;
      slice.y_min = slice.y_max = pose.y;
      first = false;
    } else {
      slice.x_min = std::min(slice.x_min, pose.x);
      slice.x_max = std::max(slice.x_max, pose.x);
      slice.y_min = std::min(slice.y_min, pose.y);
      slice.y_max = std::max(slice.y_max, pose.y);
    }
  }
  if (samples > 0)
    slice.acceptance =
        static_cast<double>(slice.accepted.size()) / static_cast<double>(samples);
  slice.area = slice.acceptance * (2.0 * g.x_max) * (2.0 * g.y_max);
  return slice;
}

std::vector<WorkspaceSlice> yaw_sweep(int steps, std::uint64_t samples,
                                      const InterfaceGeometry& g,
                                      const SpringParams& sp,
                                      std::uint64_t seed) {
  std::vector<WorkspaceSlice> out;
  out.reserve(static_cast<std::size_t>(std::max(steps, 0)));
  for (int i = 0; i < steps; ++i) {
    const double yaw =
        steps == 1 ? 0.0
                   : g.yaw_max * static_cast<double>(i) /
                         static_cast<double>(steps - 1);
    out.push_back(
        monte_carlo_slice(yaw, samples, g, sp, detail::mix_seed(seed, i)));
  }
  return out;
}

}  // namespace pedalmap
