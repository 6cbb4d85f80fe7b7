#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "dynamics.hpp"
#include "se3.hpp"

namespace gp {

struct OffPlane : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Network-visible gate state: aperture width and pitch.
struct GateObservation {
  double width;
  double theta;
};

struct RewardConfig {
  double r_max = 100.0;
  double alpha = 1.0;
  double beta = 10.0;
  int n_last = 5;       // terminal window for the target penalty
  double margin = 0.2;  // safety margin epsilon [m]
};

// Gate plane with its in-plane axes. At pitch 0 the normal is world +y, the
// width axis is world +x and the height axis world +z; pitching rotates the
// normal and height axis about the width axis.
struct GatePlane {
  Vec3 center;
  Vec3 normal;
  Vec3 axis_w;
  Vec3 axis_h;
};

struct PlaneCrossing {
  Vec3 point;   // segment-plane intersection
  int index;    // first waypoint behind the gate
  bool inside;  // intersection within the aperture
  double dist;  // distance magnitude to the nearest side [m]
};

struct EdgeDistance {
  bool inside;
  double dist;
};

// Vertex order: (+h,+h), (-h,+h), (-h,-h), (+h,-h) in the body x-y plane.
std::array<Vec3, 4> vertex_world_positions(const Vec3& p, const Quat& q, double half_width);

GatePlane gate_plane(const Vec3& center, double theta);

std::optional<PlaneCrossing> plane_crossing(std::span<const Vec3> traj, const GatePlane& plane);

EdgeDistance edge_distance(const Vec3& s, const GatePlane& plane, double width, double height);

double collision_loss(bool inside, double dist, double margin);

// Sum of collision losses over the four vertex-trajectory plane crossings
// (Eq.-style: inside -> max(0, eps-d), outside -> 2*eps*d + eps^2). A vertex
// whose trajectory never crosses contributes 2*eps*D + eps^2 with D its
// terminal distance to the plane.
double collision_penalty(std::span<const QuadState> states, const GatePlane& plane,
                         double width, double height, const RewardConfig& cfg,
                         double quad_half_width);

double target_penalty(std::span<const QuadState> states, const Vec3& p_target, int n_last);

double reward(std::span<const QuadState> states, const GatePlane& plane, double width,
              double height, const Vec3& p_target, const RewardConfig& cfg,
              double quad_half_width);

}  // namespace gp
