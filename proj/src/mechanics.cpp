#include "pedalmap/mechanics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace pedalmap {
namespace {

struct WorldSpring {
  double bx = 0.0, by = 0.0;  // pedal attachment in {O}
  double dx = 0.0, dy = 0.0;  // A - B_world
  double length = 0.0;
};

// Guide vectors at a pose, no limit check (internal callers evaluate on and
// slightly beyond the boundary for gradients and sweeps).
std::array<WorldSpring, kNumSprings> world_springs(const Pose& pose,
                                                   const InterfaceGeometry& g) {
  const double co = std::cos(pose.yaw);
  const double si = std::sin(pose.yaw);
  std::array<WorldSpring, kNumSprings> out;
  for (int i = 0; i < kNumSprings; ++i) {
    const Vec2 a = g.anchor_base[i];
    const Vec2 b = g.anchor_mobile[i];
    WorldSpring w;
    w.bx = co * b.x - si * b.y + pose.x;
    w.by = si * b.x + co * b.y + pose.y;
    w.dx = a.x - w.bx;
    w.dy = a.y - w.by;
    w.length = std::hypot(w.dx, w.dy);
    out[i] = w;
  }
  return out;
}

std::array<double, kNumSprings> lengths_at(const Pose& pose,
                                           const InterfaceGeometry& g) {
  std::array<double, kNumSprings> l{};
  const auto ws = world_springs(pose, g);
  for (int i = 0; i < kNumSprings; ++i) l[i] = ws[i].length;
  return l;
}

}  // namespace

std::array<double, kNumSprings> guide_lengths(const Pose& pose,
                                              const InterfaceGeometry& g) {
  const double tol = 1e-9;
  if (std::abs(pose.x) > g.x_max + tol || std::abs(pose.y) > g.y_max + tol ||
      std::abs(pose.yaw) > g.yaw_max + tol ||
      std::abs(pose.pitch) > g.pitch_max + tol) {
    throw std::invalid_argument("pose outside the motion limits");
  }
  return lengths_at(pose, g);
}

SpringForces spring_forces(const std::array<double, kNumSprings>& lengths,
                           const SpringParams& sp) {
  SpringForces out;
  for (int i = 0; i < kNumSprings; ++i) {
    const double raw =
        sp.home_deflection + (sp.home_guide_length[i] - lengths[i]);
    const double d = std::clamp(raw, 0.0, sp.max_deflection);
    out.force[i] = sp.stiffness[i] * d;
    out.saturated[i] = raw >= sp.max_deflection;
  }
  return out;
}

SensedLengths sensor_to_lengths(const SensorFrame& frame,
                                const SpringParams& sp) {
  SensedLengths out;
  for (int i = 0; i < kNumSprings; ++i) {
    const double f_sat = saturation_force(sp, i);
    if (frame.f[i] > f_sat) {
      out.length[i] =
          sp.home_guide_length[i] - (sp.max_deflection - sp.home_deflection);
      out.isometric[i] = true;
    } else {
      out.length[i] =
          sp.home_guide_length[i] - (frame.f[i] - sp.pretension[i]) /
                                        sp.stiffness[i];
      out.isometric[i] = false;
    }
  }
  return out;
}

ClosedFormCoefficients
closed_form_coefficients(const std::array<double, kNumSprings>& lengths,
                         const InterfaceGeometry& g) {
  std::array<double, kNumSprings> sq{};
  for (int i = 0; i < kNumSprings; ++i) sq[i] = lengths[i] * lengths[i];
  ClosedFormCoefficients c;
  c.e = sq[3] + sq[4] - sq[2] - sq[5];
  c.f = sq[2] + sq[4] - sq[3] - sq[5];
  c.g = sq[1] - sq[0];
  c.m = g.base_length * g.base_width + g.mobile_length * g.mobile_width;
  c.q = g.base_length * g.mobile_width + g.mobile_length * g.base_width;
  c.p = g.base_width * g.side_spacing_mobile -
        g.mobile_width * g.side_spacing_base;
  return c;
}

Pose forward_pose_closed_form(const std::array<double, kNumSprings>& lengths,
                              const InterfaceGeometry& g,
                              double residual_tol) {
  const ClosedFormCoefficients c = closed_form_coefficients(lengths, g);
  if (c.p == 0.0)
    throw kinematics_error("degenerate layout: yaw coefficient p is zero");
  double s = c.e / (2.0 * c.p);
  if (std::abs(s) > 1.0 + 1e-9)
    throw kinematics_error("lengths imply |sin yaw| > 1");
  s = std::clamp(s, -1.0, 1.0);
  const double co = std::sqrt(1.0 - s * s);

  const double a = g.base_length, ap = g.mobile_length;
  const double b = g.base_width, bp = g.mobile_width;
  const double den = 4.0 * (c.q * co - c.m);
  if (std::abs(den) < 1e-12)
    throw kinematics_error("singular translation denominator");

  Pose pose;
  pose.yaw = std::asin(s);
  pose.x = (c.f * (ap * co - a) - 2.0 * bp * c.g * s) / den;
  pose.y = (2.0 * c.g * (bp * co - b) + ap * c.f * s) / den;
  pose.pitch = 0.0;

  const auto back = lengths_at(pose, g);
  double residual = 0.0;
  for (int i = 0; i < kNumSprings; ++i)
    residual = std::max(residual, std::abs(back[i] - lengths[i]));
  if (residual > residual_tol)
    throw kinematics_error(
        "lengths are not consistent with a planar pose (residual " +
        std::to_string(residual) + " m)");
  return pose;
}

Pose forward_pose_numeric(const std::array<double, kNumSprings>& lengths,
                          const InterfaceGeometry& g, const Pose& initial,
                          int max_iterations) {
  std::array<double, kNumSprings> target{};
  for (int i = 0; i < kNumSprings; ++i) target[i] = lengths[i] * lengths[i];

  auto cost_and_residual = [&](const Pose& p, Eigen::Matrix<double, 6, 1>& r) {
    const auto ws = world_springs(p, g);
    for (int i = 0; i < kNumSprings; ++i)
      r[i] = ws[i].length * ws[i].length - target[i];
    return r.squaredNorm();
  };

  Pose p = initial;
  p.pitch = 0.0;
  Eigen::Matrix<double, 6, 1> r;
  double cost = cost_and_residual(p, r);

  for (int iter = 0; iter < max_iterations; ++iter) {
    if (std::sqrt(cost) < 1e-12) return p;

    const double co = std::cos(p.yaw);
    const double si = std::sin(p.yaw);
    const auto ws = world_springs(p, g);
    Eigen::Matrix<double, 6, 3> J;
    for (int i = 0; i < kNumSprings; ++i) {
      const Vec2 b = g.anchor_mobile[i];
      // Derivative of the rotated attachment with respect to yaw.
      const double rbx = -si * b.x - co * b.y;
      const double rby = co * b.x - si * b.y;
      J(i, 0) = -2.0 * ws[i].dx;
      J(i, 1) = -2.0 * ws[i].dy;
      J(i, 2) = -2.0 * (ws[i].dx * rbx + ws[i].dy * rby);
    }

    const Eigen::Vector3d step = J.colPivHouseholderQr().solve(-r);
    // Stationary point: for consistent lengths this is the exact solution;
    // for noisy lengths it is the least-squares pose, the best planar
    // explanation of the data.
    if (step.cwiseAbs().maxCoeff() < 1e-14) return p;

    double scale = 1.0;
    Pose next = p;
    Eigen::Matrix<double, 6, 1> r_next;
    double cost_next = cost;
    bool improved = false;
    for (int half = 0; half < 40; ++half) {
      next.x = p.x + scale * step[0];
      next.y = p.y + scale * step[1];
      next.yaw = p.yaw + scale * step[2];
      cost_next = cost_and_residual(next, r_next);
      if (cost_next < cost) {
        improved = true;
        break;
      }
      scale *= 0.5;
    }
    if (!improved) return p;  // cannot descend further: local minimum
    p = next;
    r = r_next;
    cost = cost_next;
  }
  if (std::sqrt(cost) < 1e-10) return p;
  throw kinematics_error("forward kinematics did not converge");
}

Pose forward_pose_robust(const std::array<double, kNumSprings>& lengths,
                         const InterfaceGeometry& g,
                         const std::optional<Pose>& hint) {
  try {
    return forward_pose_closed_form(lengths, g);
  } catch (const kinematics_error&) {
    return forward_pose_numeric(lengths, g, hint.value_or(Pose{}));
  }
}

namespace {

struct SpringLoadState {
  SpringGeometryState geo;
  double rx = 0.0, ry = 0.0;  // lever R*B_i (attachment about pedal center)
  double ux = 0.0, uy = 0.0;  // unit vector along alpha_i
};

std::array<SpringLoadState, kNumSprings> spring_loads(
    const Pose& pose, const InterfaceGeometry& g, const SpringParams& sp) {
  const auto ws = world_springs(pose, g);
  std::array<SpringLoadState, kNumSprings> out;
  for (int i = 0; i < kNumSprings; ++i) {
    const WorldSpring& w = ws[i];
    if (w.length < 1e-12)
      throw kinematics_error("guide " + std::to_string(i + 1) +
                             " degenerates to zero length");
    SpringLoadState st;
    st.geo.guide_length = w.length;
    st.geo.direction = std::atan2(w.dy, w.dx);
    st.ux = w.dx / w.length;
    st.uy = w.dy / w.length;
    st.rx = w.bx - pose.x;
    st.ry = w.by - pose.y;

    // Angle between the pedal lever (center -> attachment) and the spring's
    // push direction (anchor -> attachment = -u).
    const double px = -st.ux, py = -st.uy;
    const double dot = st.rx * px + st.ry * py;
    const double cross = st.rx * py - st.ry * px;
    st.geo.lever_angle = std::atan2(std::abs(cross), dot);

    const double raw =
        sp.home_deflection + (sp.home_guide_length[i] - w.length);
    st.geo.compression = std::clamp(raw, 0.0, sp.max_deflection);
    st.geo.saturated = raw >= sp.max_deflection;
    out[i] = st;
  }
  return out;
}

}  // namespace

std::array<SpringGeometryState, kNumSprings>
spring_geometry(const Pose& pose, const InterfaceGeometry& g,
                const SpringParams& sp) {
  const auto loads = spring_loads(pose, g, sp);
  std::array<SpringGeometryState, kNumSprings> out;
  for (int i = 0; i < kNumSprings; ++i) out[i] = loads[i].geo;
  return out;
}

CommandVector resultant_wrench(const SensorFrame& frame,
                               const InterfaceGeometry& g,
                               const SpringParams& sp) {
  const SensedLengths sensed = sensor_to_lengths(frame, sp);
  const Pose pose = forward_pose_robust(sensed.length, g);
  const auto loads = spring_loads(pose, g, sp);

  // Per-spring contributions, summed in centrally symmetric pairs
  // ((front+back) + ((left-front + right-back) + (right-front + left-back)))
  // so the force/torque cancellations of symmetric poses are exact in
  // floating point: pure-axis motions then read exactly zero on their
  // off-axis channels.
  std::array<double, kNumSprings> cx{}, cy{}, cm{};
  for (int i = 0; i < kNumSprings; ++i) {
    const double dev = frame.f[i] - sp.pretension[i];
    cx[i] = dev * loads[i].ux;
    cy[i] = dev * loads[i].uy;
    cm[i] = dev * (loads[i].rx * loads[i].uy - loads[i].ry * loads[i].ux);
  }
  const auto paired = [](const std::array<double, kNumSprings>& c) {
    return (c[0] + c[1]) + ((c[2] + c[5]) + (c[3] + c[4]));
  };
  CommandVector w;
  w.fx = paired(cx);
  w.fy = paired(cy);
  w.m = paired(cm);
  w.fz = (frame.f[6] - sp.pitch_preload_toe) -
         (frame.f[7] - sp.pitch_preload_heel);
  return w;
}

double elastic_energy(const Pose& pose, const InterfaceGeometry& g,
                      const SpringParams& sp) {
  const auto l = lengths_at(pose, g);
  double e = 0.5 * sp.torsion_stiffness * pose.pitch * pose.pitch;
  for (int i = 0; i < kNumSprings; ++i) {
    // Exact work integral of the cell force law F = k * clamp(raw, 0, d_max):
    // zero while slack, quadratic in the elastic range, and linear (constant
    // force) past saturation.  Keeping the linear tail makes the energy the
    // true potential of the sensed forces everywhere in the pose box.
    const double raw =
        sp.home_deflection + (sp.home_guide_length[i] - l[i]);
    const double k = sp.stiffness[i];
    if (raw <= 0.0) continue;
    if (raw <= sp.max_deflection) {
      e += 0.5 * k * raw * raw;
    } else {
      e += 0.5 * k * sp.max_deflection * sp.max_deflection +
           k * sp.max_deflection * (raw - sp.max_deflection);
    }
  }
  return e;
}

}  // namespace pedalmap
