// Monte Carlo exploration of the reachable translation workspace at fixed yaw.
#pragma once

#include <cstdint>
#include <vector>

#include "pedalmap/mechanics.hpp"

namespace pedalmap {

// A pose is reachable when it lies inside the motion limits and every spring
// stays in its elastic range: 0 <= deflection <= max_deflection (contact
// kept, travel not exceeded). Boundary equality counts as reachable.
bool is_reachable(const Pose& pose, const InterfaceGeometry& g,
                  const SpringParams& sp);

struct WorkspaceSlice {
  double yaw = 0.0;           // rad
  std::uint64_t samples = 0;  // points drawn
  std::vector<Vec2> accepted;
  double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
  double area = 0.0;          // acceptance fraction * sampling-box area, m^2
  double acceptance = 0.0;    // accepted / samples
};

// Uniform sampling of the +-x_max by +-y_max box at fixed yaw. Deterministic
// for a given seed. Extents are min/max over accepted points (zero if none).
WorkspaceSlice monte_carlo_slice(double yaw, std::uint64_t samples,
                                 const InterfaceGeometry& g,
                                 const SpringParams& sp, std::uint64_t seed);

// Slices at `steps` evenly spaced yaws from 0 to yaw_max inclusive.
// Each slice uses a sub-seed derived deterministically from (seed, index),
// so the sweep is reproducible regardless of evaluation order.
std::vector<WorkspaceSlice> yaw_sweep(int steps, std::uint64_t samples,
                                      const InterfaceGeometry& g,
                                      const SpringParams& sp,
                                      std::uint64_t seed);

}  // namespace pedalmap
