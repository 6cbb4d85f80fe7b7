#include "se3.hpp"

namespace gp {

Mat3 quat_to_rotmat(const Quat& q_in) {
  const Quat q = q_in.normalized();
  const double w = q.w, x = q.x, y = q.y, z = q.z;
  Mat3 r;
  r << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
      2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
      2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
  return r;
}

Quat rodrigues_to_quat(const Vec3& rho) {
  const double s = 1.0 / std::sqrt(1.0 + rho.squaredNorm());
  return Quat{s, s * rho.x(), s * rho.y(), s * rho.z()}.normalized();
}

Vec3 quat_to_rodrigues(const Quat& q_in) {
  const Quat q = q_in.normalized();
  if (std::abs(q.w) <= 1e-6) {
    throw NearPiRotation("quat_to_rodrigues: rotation within 1e-6 of pi");
  }
  return Vec3(q.x, q.y, q.z) / q.w;
}

double attitude_trace_error(const Quat& qa, const Quat& qb) {
  const Mat3 ra = quat_to_rotmat(qa);
  const Mat3 rb = quat_to_rotmat(qb);
  return (Mat3::Identity() - ra.transpose() * rb).trace();
}

Vec4 trace_inner_grad_q(const Quat& q, const Mat3& m) {
  const double w = q.w, x = q.x, y = q.y, z = q.z;
  Mat3 dw, dx, dy, dz;
  dw << 0, -z, y, z, 0, -x, -y, x, 0;
  dx << 0, y, z, y, -2 * x, -w, z, w, -2 * x;
  dy << -2 * y, x, w, x, 0, z, -w, z, -2 * y;
  dz << -2 * z, -w, x, w, -2 * z, y, x, y, 0;
  return 2.0 * Vec4(dw.cwiseProduct(m).sum(), dx.cwiseProduct(m).sum(),
                    dy.cwiseProduct(m).sum(), dz.cwiseProduct(m).sum());
}

Quat quat_mul(const Quat& a, const Quat& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

}  // namespace gp
