#include "pedalmap/geometry.hpp"

#include <cmath>
#include <string>

namespace pedalmap {
namespace {

void fill_anchors(InterfaceGeometry& g) {
  const double a = g.base_length, ap = g.mobile_length;
  const double b = g.base_width, bp = g.mobile_width;
  const double c = g.side_spacing_base, cp = g.side_spacing_mobile;
  g.anchor_base = {Vec2{0.0, a / 2}, Vec2{0.0, -a / 2},
                   Vec2{-b / 2, c / 2}, Vec2{b / 2, c / 2},
                   Vec2{-b / 2, -c / 2}, Vec2{b / 2, -c / 2}};
  g.anchor_mobile = {Vec2{0.0, ap / 2}, Vec2{0.0, -ap / 2},
                     Vec2{-bp / 2, cp / 2}, Vec2{bp / 2, cp / 2},
                     Vec2{-bp / 2, -cp / 2}, Vec2{bp / 2, -cp / 2}};
}

// Side-spring y-spacing that makes pure yaw saturate the loaded diagonal
// exactly at yaw_max. At pose (0, 0, phi) with c' = c, the loaded side
// guide's squared length is
//   l^2(phi) = l0^2 + (c^2 + b b')(1 - cos phi) - l0 c sin phi * 2/... ,
// and requiring l(yaw_max) = l0 - travel collapses to the quadratic
//   (1-cos)/2 c^2 - sin * l0 * c + [b b' (1-cos)/2 + travel (2 l0 - travel)] = 0.
// The smaller root keeps the guides shorter than the pedal (physical).
double solve_side_spacing(double b, double bp, double l0, double travel,
                          double yaw_max) {
  const double co = std::cos(yaw_max);
  const double s = std::sin(yaw_max);
  const double qa = 0.5 * (1.0 - co);
  const double qb = -s * l0;
  const double qc = 0.5 * b * bp * (1.0 - co) + travel * (2.0 * l0 - travel);
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0) return 0.0;  // travel too large for this yaw limit
  return (-qb - std::sqrt(disc)) / (2.0 * qa);
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace

InterfaceGeometry default_geometry() {
  InterfaceGeometry g;
  g.base_length = 0.14;
  g.mobile_length = 0.30;
  g.base_width = 0.05;
  g.mobile_width = 0.21;

  const double l0 = (g.mobile_width - g.base_width) / 2;  // = 0.080
  const double travel = 0.020;

  g.yaw_max = 12.5 * kPi / 180.0;
  g.side_spacing_base = solve_side_spacing(g.base_width, g.mobile_width, l0,
                                           travel, g.yaw_max);
  g.side_spacing_mobile = g.side_spacing_base;
  fill_anchors(g);

  g.pitch_lever = 0.10;
  g.x_max = travel;
  g.y_max = travel;
  g.pitch_max = 10.0 * kPi / 180.0;
  return g;
}

SpringParams default_springs() {
  SpringParams sp;
  sp.stiffness.fill(200.0);
  sp.free_length = 0.060;
  sp.home_deflection = 0.028;
  sp.max_deflection = 0.048;
  sp.home_guide_length.fill(0.080);
  for (int i = 0; i < kNumSprings; ++i)
    sp.pretension[i] = sp.stiffness[i] * sp.home_deflection;
  sp.torsion_stiffness = 2.0;
  sp.pitch_preload_toe = 2.0;
  sp.pitch_preload_heel = 2.0;
  return sp;
}

double saturation_force(const SpringParams& sp, int spring) {
  return sp.stiffness[spring] * sp.max_deflection;
}

namespace {

bool near(double u, double v, double tol = 1e-9) {
  return std::abs(u - v) <= tol;
}

void check(std::vector<ValidationIssue>& issues, bool ok,
           const std::string& field, const std::string& message) {
  if (!ok) issues.push_back({field, message});
}

}  // namespace

std::vector<ValidationIssue> validate(const InterfaceGeometry& g,
                                      const SpringParams& sp) {
  std::vector<ValidationIssue> issues;

  check(issues, g.base_length > 0, "base_length", "must be positive");
  check(issues, g.base_width > 0, "base_width", "must be positive");
  check(issues, g.side_spacing_base > 0, "side_spacing_base",
        "must be positive");
  check(issues, g.side_spacing_mobile > 0, "side_spacing_mobile",
        "must be positive");
  check(issues, g.mobile_length > g.base_length, "mobile_length",
        "pedal attachments must sit farther out than the base anchors");
  check(issues, g.mobile_width > g.base_width, "mobile_width",
        "pedal attachments must sit farther out than the base anchors");

  // Anchors must agree with the scalar dims (mirror-symmetric layout).
  const InterfaceGeometry* gp = &g;
  auto anchors_ok = [gp] {
    InterfaceGeometry ref = *gp;
    fill_anchors(ref);
    for (int i = 0; i < kNumSprings; ++i) {
      if (!near(ref.anchor_base[i].x, gp->anchor_base[i].x) ||
          !near(ref.anchor_base[i].y, gp->anchor_base[i].y) ||
          !near(ref.anchor_mobile[i].x, gp->anchor_mobile[i].x) ||
          !near(ref.anchor_mobile[i].y, gp->anchor_mobile[i].y))
        return false;
    }
    return true;
  };
  check(issues, anchors_ok(), "anchors",
        "anchor tables do not match the scalar dims");

  check(issues, g.pitch_lever > 0, "pitch_lever", "must be positive");
  check(issues, g.x_max > 0 && g.y_max > 0, "x_max/y_max",
        "translation limits must be positive");
  check(issues, g.yaw_max > 0 && g.pitch_max > 0, "yaw_max/pitch_max",
        "rotation limits must be positive");
  check(issues, g.x_max <= 0.15 && g.y_max <= 0.15, "x_max/y_max",
        "translation limit beyond a comfortable seated foot excursion");
  check(issues, g.yaw_max <= 0.70, "yaw_max",
        "yaw limit beyond a comfortable ankle rotation");
  check(issues, g.pitch_max <= 0.61, "pitch_max",
        "pitch limit beyond a comfortable ankle flexion");

  check(issues, sp.free_length > 0, "free_length", "must be positive");
  check(issues,
        sp.home_deflection > 0 && sp.home_deflection < sp.max_deflection &&
            sp.max_deflection < sp.free_length,
        "deflections",
        "need 0 < home_deflection < max_deflection < free_length");
  for (int i = 0; i < kNumSprings; ++i) {
    const std::string id = std::to_string(i + 1);
    check(issues, sp.stiffness[i] > 0, "stiffness[" + id + "]",
          "must be positive");
    check(issues, sp.home_guide_length[i] > 0, "home_guide_length[" + id + "]",
          "must be positive");
    check(issues,
          near(sp.pretension[i], sp.stiffness[i] * sp.home_deflection, 1e-6),
          "pretension[" + id + "]",
          "must equal stiffness * home_deflection");
  }

  // Home guide lengths must match the layout at the identity pose.
  for (int i = 0; i < kNumSprings; ++i) {
    const double dx = g.anchor_base[i].x - g.anchor_mobile[i].x;
    const double dy = g.anchor_base[i].y - g.anchor_mobile[i].y;
    const double l = std::hypot(dx, dy);
    check(issues, near(l, sp.home_guide_length[i], 1e-9),
          "home_guide_length[" + std::to_string(i + 1) + "]",
          "does not match the anchor layout at home");
  }

  check(issues, sp.torsion_stiffness > 0, "torsion_stiffness",
        "must be positive");
  check(issues, sp.pitch_preload_toe >= 0 && sp.pitch_preload_heel >= 0,
        "pitch_preload", "preloads cannot be negative");

  return issues;
}

}  // namespace pedalmap
