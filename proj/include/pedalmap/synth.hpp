// Synthetic operator trials: smooth pose trajectories toward each direction's
// extreme, the inverse sensing model (pose -> load-cell frame), and noise /
// artifact injection shaped like the effects seen on real operators
// (sensor noise, biomechanical cross-coupling, tremor, isometric over-push).
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pedalmap/labels.hpp"
#include "pedalmap/mechanics.hpp"

namespace pedalmap {

inline constexpr double kSampleRateHz = 50.0;
inline constexpr double kRampSeconds = 1.0;
inline constexpr double kHoldSeconds = 1.0;
inline constexpr double kReturnSeconds = 1.0;

using CouplingMatrix = std::array<std::array<double, kNumSensors>, kNumSensors>;

struct NoiseSpec {
  double sigma = 0.0;               // additive per-cell noise, N
  CouplingMatrix coupling{};        // applied to force deviations; identity = off
  double coupling_trial_jitter = 0.0;  // gain spread on the off-diagonal part,
                                       // drawn once per subject and once per trial
  double tremor_amp = 0.0;          // m, on the x/y pose path (scaled for yaw/pitch)
  double tremor_freq = 0.0;         // Hz
  double over_push = 0.0;           // N beyond saturation during holds
  double over_push_jitter = 0.0;    // per-trial spread of over_push

  // Default-constructed spec is a no-op: coupling starts as the identity.
  NoiseSpec() {
    for (int i = 0; i < kNumSensors; ++i) coupling[i][i] = 1.0;
  }

  static NoiseSpec none();      // all effects off (coupling = identity)
  static NoiseSpec defaults();  // mild sensor noise + 2 N over-push
};

// Identity plus a symmetric x<->yaw leak: a fraction `gamma` of any
// left/right force pattern appears as a supination/pronation pattern on the
// side cells and vice versa. Models the foot's translation/twist interplay.
CouplingMatrix lr_sp_coupling(double gamma);

struct Trial {
  int subject = 0;
  DirectionLabel direction = DirectionLabel::Neutral;
  std::uint64_t seed = 0;
  std::vector<SensorFrame> frames;
  // Ground truth (pre-noise): pose path and the clean statics wrench.
  std::vector<Pose> truth_pose;
  std::vector<CommandVector> truth_cmd;
  bool has_truth = false;
};

struct Dataset {
  std::vector<Trial> trials;
};

// Minimum-jerk ramp (1 s) to the direction's extreme, hold (1 s), minimum-
// jerk return (1 s), sampled at 50 Hz (150 poses). Single-axis directions
// drive one pose axis to its limit; diagonals drive both their axes.
// Throws std::invalid_argument for Neutral/Mixed.
std::vector<Pose> trajectory(DirectionLabel d, const InterfaceGeometry& g);

// Clean sensing of one pose: guide cells via the spring law, toe/heel via
// the torsion pair, F7 = preload + max(0, k_t*pitch/r_p) and mirrored F8.
SensorFrame inverse_sense(const Pose& pose, const InterfaceGeometry& g,
                          const SpringParams& sp);

// One trial: trajectory -> tremor -> clean frames -> over-push on saturated
// cells during the hold -> coupling on force deviations -> additive noise ->
// clamp at zero. Truth carries the clean pose and clean wrench.
// Deterministic for a given (seed) regardless of other arguments' history.
Trial generate_trial(int subject, DirectionLabel d, const NoiseSpec& noise,
                     const InterfaceGeometry& g, const SpringParams& sp,
                     std::uint64_t seed);

// subjects x trials_per_direction x directions. Per-subject variation scales
// the coupling off-diagonal (subject-specific biomechanics); all sub-seeds
// derive from `seed` deterministically.
Dataset generate_dataset(int subjects, int trials_per_direction,
                         const std::vector<DirectionLabel>& directions,
                         const NoiseSpec& noise, const InterfaceGeometry& g,
                         const SpringParams& sp, std::uint64_t seed);

}  // namespace pedalmap
