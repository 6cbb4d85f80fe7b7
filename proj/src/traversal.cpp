#include "traversal.hpp"

namespace gp {

std::array<Vec3, 4> vertex_world_positions(const Vec3& p, const Quat& q, double half_width) {
  const Mat3 r = quat_to_rotmat(q);
  const double h = half_width;
  const std::array<Vec3, 4> body = {Vec3(h, h, 0), Vec3(-h, h, 0), Vec3(-h, -h, 0),
                                    Vec3(h, -h, 0)};
  std::array<Vec3, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = p + r * body[i];
  return out;
}

GatePlane gate_plane(const Vec3& center, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {center, Vec3(0, c, s), Vec3(1, 0, 0), Vec3(0, -s, c)};
}

std::optional<PlaneCrossing> plane_crossing(std::span<const Vec3> traj, const GatePlane& plane) {
  for (size_t j = 1; j < traj.size(); ++j) {
    const double prev = (traj[j - 1] - plane.center).dot(plane.normal);
    const double cur = (traj[j] - plane.center).dot(plane.normal);
    // A waypoint exactly on the plane counts as not yet behind.
    if (prev >= 0.0 && cur < 0.0) {
      const double t = prev / (prev - cur);
      PlaneCrossing crossing;
      crossing.point = traj[j - 1] + t * (traj[j] - traj[j - 1]);
      crossing.index = static_cast<int>(j);
      crossing.inside = false;
      crossing.dist = 0.0;
      return crossing;
    }
  }
  return std::nullopt;
}

EdgeDistance edge_distance(const Vec3& s, const GatePlane& plane, double width, double height) {
  const Vec3 rel = s - plane.center;
  if (std::abs(rel.dot(plane.normal)) > 1e-6) {
    throw OffPlane("edge_distance: point not on the gate plane");
  }
  const double a = std::abs(rel.dot(plane.axis_w));
  const double b = std::abs(rel.dot(plane.axis_h));
  const double hw = width / 2.0, hh = height / 2.0;
  if (a <= hw && b <= hh) {
    return {true, std::min(hw - a, hh - b)};
  }
  const double da = std::max(a - hw, 0.0);
  const double db = std::max(b - hh, 0.0);
  return {false, std::sqrt(da * da + db * db)};
}

double collision_loss(bool inside, double dist, double margin) {
  if (inside) return std::max(0.0, margin - dist);
  return 2.0 * margin * dist + margin * margin;
}

double collision_penalty(std::span<const QuadState> states, const GatePlane& plane,
                         double width, double height, const RewardConfig& cfg,
                         double quad_half_width) {
  std::array<std::vector<Vec3>, 4> tracks;
  for (auto& t : tracks) t.reserve(states.size());
  for (const QuadState& x : states) {
    const auto verts = vertex_world_positions(x.p, x.q, quad_half_width);
    for (int i = 0; i < 4; ++i) tracks[i].push_back(verts[i]);
  }

  double total = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (auto crossing = plane_crossing(tracks[i], plane)) {
      const EdgeDistance ed = edge_distance(crossing->point, plane, width, height);
      total += collision_loss(ed.inside, ed.dist, cfg.margin);
    } else {
      const double terminal = std::abs((tracks[i].back() - plane.center).dot(plane.normal));
      total += collision_loss(false, terminal, cfg.margin);
    }
  }
  return total;
}

double target_penalty(std::span<const QuadState> states, const Vec3& p_target, int n_last) {
  const int n_pts = static_cast<int>(states.size());
  double total = 0.0;
  for (int k = std::max(0, n_pts - 1 - n_last); k < n_pts; ++k) {
    total += (states[k].p - p_target).squaredNorm();
  }
  return total;
}

double reward(std::span<const QuadState> states, const GatePlane& plane, double width,
              double height, const Vec3& p_target, const RewardConfig& cfg,
              double quad_half_width) {
  const double l_t = target_penalty(states, p_target, cfg.n_last);
  const double l_coll = collision_penalty(states, plane, width, height, cfg, quad_half_width);
  return cfg.r_max - cfg.alpha * l_t - cfg.beta * l_coll;
}

}  // namespace gp
