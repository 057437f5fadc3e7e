// Quasi-static model of the pedal: pose <-> guide lengths, spring force law,
// load-cell sensing (elastic and isometric regimes), planar forward
// kinematics in closed form and numerically, and the statics reconstruction
// of the operator's command wrench.
#pragma once

#include <array>
#include <optional>
#include <stdexcept>

#include "pedalmap/geometry.hpp"

namespace pedalmap {

// Planar pose of the pedal plus the independent pitch DOF.
struct Pose {
  double x = 0.0;     // m
  double y = 0.0;     // m
  double yaw = 0.0;   // rad, counterclockwise positive
  double pitch = 0.0; // rad, toe-up positive
};

// One sampling instant of the eight load cells, newtons.
// f[0..5] are the guide cells (spring order above), f[6] toe, f[7] heel.
struct SensorFrame {
  double t = 0.0;
  std::array<double, kNumSensors> f{};
};

// Operator command reconstructed from a frame: planar forces, the pitch
// channel force, and the yaw torque. Positive directions follow the command
// convention: +fx right, +fy forward, +fz toe-up, +m supination (ccw yaw).
struct CommandVector {
  double fx = 0.0;  // N
  double fy = 0.0;  // N
  double fz = 0.0;  // N
  double m = 0.0;   // N*m
};

struct kinematics_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- pose -> lengths -------------------------------------------------------

// Guide lengths |A_i - R(yaw) B_i - p| for an in-limits pose.
// Throws std::invalid_argument outside the motion limits.
std::array<double, kNumSprings> guide_lengths(const Pose& pose,
                                              const InterfaceGeometry& g);

// --- spring force law ------------------------------------------------------

struct SpringForces {
  std::array<double, kNumSprings> force{};   // N
  std::array<bool, kNumSprings> saturated{}; // deflection clamped at max
};

// Hooke's law on the compression delta_i = clamp(home + (l_0i - l_i), 0, max).
// A guide shorter than home compresses its spring beyond pretension; at zero
// deflection the spring has lifted off and reports zero force.
SpringForces spring_forces(const std::array<double, kNumSprings>& lengths,
                           const SpringParams& sp);

// --- sensing: forces -> lengths --------------------------------------------

struct SensedLengths {
  std::array<double, kNumSprings> length{};
  // true when the cell reads at/above the saturation force: the guide is
  // pinned at its shortest elastic value and further force is isometric.
  std::array<bool, kNumSprings> isometric{};
};

// Inverse force law l_i = l_0i - (F_i - F_0i)/k_i, clamped at the
// fully-compressed length once F_i reaches k_i * max_deflection.
SensedLengths sensor_to_lengths(const SensorFrame& frame,
                                const SpringParams& sp);

// --- forward kinematics ----------------------------------------------------

// Length-combination coefficients of the planar loop-closure system plus the
// layout constants they pair with. All zero (e,f,g) at home.
struct ClosedFormCoefficients {
  double e = 0.0;  // l4^2 + l5^2 - l3^2 - l6^2  (1-based spring ids)
  double f = 0.0;  // l3^2 + l5^2 - l4^2 - l6^2
  double g = 0.0;  // l2^2 - l1^2
  double m = 0.0;  // a*b + a'*b'
  double q = 0.0;  // a*b' + a'*b
  double p = 0.0;  // b*c' - b'*c
};

ClosedFormCoefficients
closed_form_coefficients(const std::array<double, kNumSprings>& lengths,
                         const InterfaceGeometry& g);

// Closed-form planar solution: yaw = asin(e / 2p), then x and y from the
// linear system the remaining combinations define. Pitch is not observable
// from the guides and is returned as 0. Throws kinematics_error when the
// coefficients are singular (|e| > |2p|, vanishing denominator) or when the
// six loop-closure residuals exceed residual_tol (lengths not consistent
// with any planar pose; the default absorbs realistic sensor noise).
Pose forward_pose_closed_form(const std::array<double, kNumSprings>& lengths,
                              const InterfaceGeometry& g,
                              double residual_tol = 1e-3);

// Damped Gauss-Newton on the six squared loop-closure residuals. Converges
// to residual norm < 1e-10 m^2 for consistent lengths; throws
// kinematics_error if it fails to converge within the iteration budget.
Pose forward_pose_numeric(const std::array<double, kNumSprings>& lengths,
                          const InterfaceGeometry& g,
                          const Pose& initial = Pose{},
                          int max_iterations = 100);

// Closed form with numeric fallback (seeded from `hint` or home), for
// streamed noisy data. Still throws if both fail.
Pose forward_pose_robust(const std::array<double, kNumSprings>& lengths,
                         const InterfaceGeometry& g,
                         const std::optional<Pose>& hint = std::nullopt);

// --- per-spring geometry at a pose -----------------------------------------

struct SpringGeometryState {
  double guide_length = 0.0; // l_i, m
  double direction = 0.0;    // alpha_i: heading of (A_i - B_i^world), rad.
                             // This is the direction the operator loads the
                             // spring in; the rear guide points +y at home.
  double lever_angle = 0.0;  // beta_i in [0, pi]: angle between the pedal
                             // lever CB_i and the spring's push direction.
  double compression = 0.0;  // delta_i, m (clamped to [0, max])
  bool saturated = false;
};

// Throws kinematics_error if a guide vector degenerates to zero length.
std::array<SpringGeometryState, kNumSprings>
spring_geometry(const Pose& pose, const InterfaceGeometry& g,
                const SpringParams& sp);

// --- statics ---------------------------------------------------------------

// Command wrench from one frame: recovers the planar pose from the sensed
// lengths (isometric cells pin at the workspace boundary, freezing the
// geometry while the recorded force keeps growing), then sums force
// deviations about pretension along each guide direction. fz is the
// toe/heel differential; pitch is read back from it through the lever.
// Home (all cells at pretension) maps to the exact zero wrench.
CommandVector resultant_wrench(const SensorFrame& frame,
                               const InterfaceGeometry& g,
                               const SpringParams& sp);

// Stored elastic energy: per guide spring, the work integral of the cell
// force law (zero while slack, 1/2 k delta^2 in the elastic range, linear
// constant-force growth past saturation) plus the torsion pair's
// 1/2 k_t pitch^2. Minimal and equal to 6 * 1/2 k home_deflection^2 at home,
// and strictly increasing toward every workspace corner.
double elastic_energy(const Pose& pose, const InterfaceGeometry& g,
                      const SpringParams& sp);

}  // namespace pedalmap
