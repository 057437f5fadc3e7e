#include "pedalmap/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "seed_mix.hpp"

namespace pedalmap {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double min_jerk(double tau) {
  const double t3 = tau * tau * tau;
  return 10.0 * t3 - 15.0 * t3 * tau + 6.0 * t3 * tau * tau;
}

// Ramp/hold/return profile value at time t (seconds from trial start).
double profile(double t) {
  if (t < kRampSeconds) return min_jerk(t / kRampSeconds);
  if (t < kRampSeconds + kHoldSeconds) return 1.0;
  const double tau = (t - kRampSeconds - kHoldSeconds) / kReturnSeconds;
  return 1.0 - min_jerk(std::min(tau, 1.0));
}

Pose direction_extreme(DirectionLabel d, const InterfaceGeometry& g) {
  const auto pattern = sign_pattern(d);
  Pose extreme;
  extreme.x = pattern[0] * g.x_max;
  extreme.y = pattern[1] * g.y_max;
  extreme.pitch = pattern[2] * g.pitch_max;
  extreme.yaw = pattern[3] * g.yaw_max;
  return extreme;
}

}  // namespace

NoiseSpec NoiseSpec::none() { return NoiseSpec{}; }

NoiseSpec NoiseSpec::defaults() {
  NoiseSpec n = none();
  n.sigma = 0.05;
  n.over_push = 2.0;
  return n;
}

CouplingMatrix lr_sp_coupling(double gamma) {
  // Sensor-space deviation patterns of a pure lateral push and a pure twist
  // on the four side cells (left cells compress under +x; the +yaw diagonal
  // compresses right-front and left-back).
  const std::array<double, kNumSensors> ux{0, 0, +1, -1, +1, -1, 0, 0};
  const std::array<double, kNumSensors> um{0, 0, -1, +1, +1, -1, 0, 0};
  CouplingMatrix c{};
  for (int i = 0; i < kNumSensors; ++i) {
    for (int j = 0; j < kNumSensors; ++j) {
      if (i == j) {
        c[i][j] = 1.0;  // diagonal stays exactly 1; only cross-talk is added
      } else {
        c[i][j] = gamma * (um[i] * ux[j] + ux[i] * um[j]) / 4.0;
      }
    }
  }
  return c;
}

std::vector<Pose> trajectory(DirectionLabel d, const InterfaceGeometry& g) {
  if (d == DirectionLabel::Neutral || d == DirectionLabel::Mixed)
    throw std::invalid_argument("trajectory requires a motion direction");
  const Pose extreme = direction_extreme(d, g);
  const int samples = static_cast<int>(
      (kRampSeconds + kHoldSeconds + kReturnSeconds) * kSampleRateHz);
  std::vector<Pose> path;
  path.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    const double s = profile(k / kSampleRateHz);
    path.push_back({extreme.x * s, extreme.y * s, extreme.yaw * s,
                    extreme.pitch * s});
  }
  return path;
}

SensorFrame inverse_sense(const Pose& pose, const InterfaceGeometry& g,
                          const SpringParams& sp) {
  const auto lengths = guide_lengths(pose, g);
  const SpringForces forces = spring_forces(lengths, sp);
  SensorFrame frame;
  for (int i = 0; i < kNumSprings; ++i) frame.f[i] = forces.force[i];
  const double pitch_force =
      sp.torsion_stiffness * pose.pitch / g.pitch_lever;
  frame.f[6] = sp.pitch_preload_toe + std::max(0.0, pitch_force);
  frame.f[7] = sp.pitch_preload_heel + std::max(0.0, -pitch_force);
  return frame;
}

Trial generate_trial(int subject, DirectionLabel d, const NoiseSpec& noise,
                     const InterfaceGeometry& g, const SpringParams& sp,
                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);

  // Fixed draw order keeps a trial's randomness independent of which noise
  // effects are enabled: phases, coupling gain, over-push, then per-frame
  // sensor noise.
  std::array<double, 4> phase{};
  for (double& p : phase) p = kTwoPi * detail::uniform01(rng);
  const double coupling_gain =
      1.0 + noise.coupling_trial_jitter * (2.0 * detail::uniform01(rng) - 1.0);
  const double over_push = std::max(
      0.0, noise.over_push +
               noise.over_push_jitter * (2.0 * detail::uniform01(rng) - 1.0));

  Trial trial;
  trial.subject = subject;
  trial.direction = d;
  trial.seed = seed;
  trial.has_truth = true;
  trial.truth_pose = trajectory(d, g);

  const double rot_scale = 1.0 / g.pitch_lever;  // tremor meters -> radians
  std::array<double, kNumSensors> rest{};
  for (int i = 0; i < kNumSprings; ++i) rest[i] = sp.pretension[i];
  rest[6] = sp.pitch_preload_toe;
  rest[7] = sp.pitch_preload_heel;

  const std::size_t n = trial.truth_pose.size();
  trial.frames.reserve(n);
  trial.truth_cmd.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / kSampleRateHz;
    const Pose& clean = trial.truth_pose[k];

    SensorFrame truth_frame = inverse_sense(clean, g, sp);
    truth_frame.t = t;
    trial.truth_cmd.push_back(resultant_wrench(truth_frame, g, sp));

    Pose wobbled = clean;
    if (noise.tremor_amp > 0.0 && noise.tremor_freq > 0.0) {
      const double w = kTwoPi * noise.tremor_freq * t;
      wobbled.x += noise.tremor_amp * std::sin(w + phase[0]);
      wobbled.y += noise.tremor_amp * std::sin(w + phase[1]);
      wobbled.yaw += noise.tremor_amp * rot_scale * std::sin(w + phase[2]);
      wobbled.pitch += noise.tremor_amp * rot_scale * std::sin(w + phase[3]);
      wobbled.x = std::clamp(wobbled.x, -g.x_max, g.x_max);
      wobbled.y = std::clamp(wobbled.y, -g.y_max, g.y_max);
      wobbled.yaw = std::clamp(wobbled.yaw, -g.yaw_max, g.yaw_max);
      wobbled.pitch = std::clamp(wobbled.pitch, -g.pitch_max, g.pitch_max);
    }

    SensorFrame frame = inverse_sense(wobbled, g, sp);
    frame.t = t;

    // Isometric push-through: force keeps rising on fully compressed cells.
    if (over_push > 0.0) {
      const SpringForces forces = spring_forces(guide_lengths(wobbled, g), sp);
      for (int i = 0; i < kNumSprings; ++i)
        if (forces.saturated[i]) frame.f[i] += over_push;
    }

    // Cross-coupling acts on force deviations about the rest readings,
    // applied as the increment (C - I) * dev so an identity matrix leaves
    // the frame bitwise untouched.
    std::array<double, kNumSensors> dev{};
    std::array<double, kNumSensors> extra{};
    for (int i = 0; i < kNumSensors; ++i) dev[i] = frame.f[i] - rest[i];
    for (int i = 0; i < kNumSensors; ++i) {
      for (int j = 0; j < kNumSensors; ++j) {
        const double cij = (i == j) ? noise.coupling[i][j] - 1.0
                                    : coupling_gain * noise.coupling[i][j];
        extra[i] += cij * dev[j];
      }
    }
    for (int i = 0; i < kNumSensors; ++i) frame.f[i] += extra[i];

    for (int i = 0; i < kNumSensors; ++i) {
      const double z = detail::normal01(rng);
      frame.f[i] = std::max(0.0, frame.f[i] + noise.sigma * z);
    }
    trial.frames.push_back(frame);
  }
  return trial;
}

Dataset generate_dataset(int subjects, int trials_per_direction,
                         const std::vector<DirectionLabel>& directions,
                         const NoiseSpec& noise, const InterfaceGeometry& g,
                         const SpringParams& sp, std::uint64_t seed) {
  if (subjects < 1 || trials_per_direction < 1)
    throw std::invalid_argument("counts must be at least 1");
  Dataset data;
  std::uint64_t index = 0;
  for (int subj = 1; subj <= subjects; ++subj) {
    // Subject-specific biomechanics: one gain on the coupling cross-talk.
    std::mt19937_64 subject_rng(detail::mix_seed(seed, 0x53 + subj));
    const double subject_gain =
        1.0 + noise.coupling_trial_jitter *
                  (2.0 * detail::uniform01(subject_rng) - 1.0);
    NoiseSpec subject_noise = noise;
    for (int i = 0; i < kNumSensors; ++i)
      for (int j = 0; j < kNumSensors; ++j)
        if (i != j) subject_noise.coupling[i][j] *= subject_gain;

    for (DirectionLabel d : directions) {
      for (int rep = 0; rep < trials_per_direction; ++rep) {
        data.trials.push_back(generate_trial(
            subj, d, subject_noise, g, sp,
            detail::mix_seed(seed, 1000 + index)));
        ++index;
      }
    }
  }
  return data;
}

}  // namespace pedalmap
