// Physical description of the compliant foot pedal: attachment layout of the
// six planar guide springs, the torsion (pitch) pair, and the motion limits.
#pragma once

#include <array>
#include <string>
#include <vector>

namespace pedalmap {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// Spring indices used throughout (0-based):
//   0 front midline, 1 back midline,
//   2 left-front, 3 right-front, 4 left-back, 5 right-back.
// The base frame {O} sits at the pedal's home center, x to the operator's
// right, y forward. Pedal attachments sit farther out than their base
// anchors, so moving toward an anchor shortens that guide and compresses
// its spring (e.g. pushing forward compresses the back spring).
inline constexpr int kNumSprings = 6;
inline constexpr int kNumSensors = 8;  // 6 planar cells + toe/heel pitch cells

struct InterfaceGeometry {
  // Full dims, meters. Base anchors at (0, +-base_length/2) and
  // (+-base_width/2, +-side_spacing_base/2); pedal attachments likewise with
  // the mobile dims. side_spacing_* is the y-separation of the two springs
  // that share a side.
  double base_length = 0.0;    // a
  double base_width = 0.0;     // b
  double mobile_length = 0.0;  // a'
  double mobile_width = 0.0;   // b'
  double side_spacing_base = 0.0;    // c
  double side_spacing_mobile = 0.0;  // c'

  std::array<Vec2, kNumSprings> anchor_base{};   // A_i in {O}
  std::array<Vec2, kNumSprings> anchor_mobile{}; // B_i in the pedal frame

  // Pitch: toe/heel cells sit pitch_lever meters from the pitch axis.
  double pitch_lever = 0.0;  // r_p

  // Motion limits (half-range, symmetric).
  double x_max = 0.0;      // m
  double y_max = 0.0;      // m
  double yaw_max = 0.0;    // rad
  double pitch_max = 0.0;  // rad
};

struct SpringParams {
  std::array<double, kNumSprings> stiffness{};      // k_i, N/m
  double free_length = 0.0;                         // m
  double home_deflection = 0.0;                     // delta at home, m
  double max_deflection = 0.0;                      // fully compressed, m
  std::array<double, kNumSprings> home_guide_length{};  // l_0i, m
  std::array<double, kNumSprings> pretension{};     // F_0i, N
  double torsion_stiffness = 0.0;                   // k_t, N*m/rad
  double pitch_preload_toe = 0.0;                   // F7 at home, N
  double pitch_preload_heel = 0.0;                  // F8 at home, N
};

struct ValidationIssue {
  std::string field;
  std::string message;
};

// Canonical rig. Translation limits equal the spring travel
// (max_deflection - home_deflection) because the opposing guides are
// axis-aligned at home; the side-spring spacing is solved so that pure yaw
// saturates the loaded diagonal exactly at yaw_max. That makes every motion
// limit a consequence of spring travel rather than an arbitrary clamp.
InterfaceGeometry default_geometry();
SpringParams default_springs();

// Force at which a spring saturates (becomes rigid): k * max_deflection.
double saturation_force(const SpringParams& sp, int spring);

// Structural checks: mirror symmetry about both axes, midline pair on the
// y-axis, side pairs at +-side_spacing/2, anchors consistent with the scalar
// dims, home guide lengths consistent with the layout, positive limits,
// limits below conservative human ankle ranges, spring parameters ordered
// (0 < home_deflection < max_deflection < free_length), pretension matching
// k * home_deflection. Empty result means consistent.
std::vector<ValidationIssue> validate(const InterfaceGeometry& g,
                                      const SpringParams& sp);

}  // namespace pedalmap
