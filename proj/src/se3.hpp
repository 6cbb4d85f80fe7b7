#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace gp {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;

// Thrown by quat_to_rodrigues when the rotation is within ~1e-6 of pi, where
// the Gibbs-vector chart blows up.
struct NearPiRotation : std::domain_error {
  using std::domain_error::domain_error;
};

// Unit quaternion (w, x, y, z) mapping body frame to world frame.
struct Quat {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

  Quat() = default;
  Quat(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

  double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

  // Unit norm with canonical sign w >= 0.
  Quat normalized() const {
    const double n = norm();
    const double s = (w < 0.0) ? -1.0 / n : 1.0 / n;
    return {w * s, x * s, y * s, z * s};
  }

  Vec4 coeffs() const { return {w, x, y, z}; }
};

Mat3 quat_to_rotmat(const Quat& q);
Quat rodrigues_to_quat(const Vec3& rho);
Vec3 quat_to_rodrigues(const Quat& q);  // throws NearPiRotation
double attitude_trace_error(const Quat& qa, const Quat& qb);

// d/dq of Tr(R(q)^T M) for a fixed 3x3 matrix M, evaluated at unnormalized q.
// Used by the trajectory optimizer for the attitude residual.
Vec4 trace_inner_grad_q(const Quat& q, const Mat3& m);

Quat quat_mul(const Quat& a, const Quat& b);

}  // namespace gp
