#include "dynamics.hpp"

namespace gp {

namespace {

Mat3 skew(const Vec3& v) {
  Mat3 s;
  s << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
  return s;
}

// Body-to-world thrust direction for raw q, quadratic in the components.
Vec3 thrust_axis(const Quat& q) {
  return {2 * (q.x * q.z + q.w * q.y), 2 * (q.y * q.z - q.w * q.x),
          1 - 2 * (q.x * q.x + q.y * q.y)};
}

}  // namespace

StateVec state_to_vec(const QuadState& x) {
  StateVec v;
  v << x.p, x.v, x.q.w, x.q.x, x.q.y, x.q.z, x.w;
  return v;
}

QuadState state_from_vec(const StateVec& v) {
  QuadState x;
  x.p = v.segment<3>(0);
  x.v = v.segment<3>(3);
  x.q = Quat{v(6), v(7), v(8), v(9)};
  x.w = v.segment<3>(10);
  return x;
}

void mixer(const Control& u, const QuadParams& params, double& f_r, Vec3& tau_r) {
  const double a = params.arm / std::sqrt(2.0);
  f_r = u.sum();
  tau_r.x() = a * (u(0) + u(1) - u(2) - u(3));
  tau_r.y() = a * (-u(0) + u(1) + u(2) - u(3));
  tau_r.z() = params.c_tau * (u(0) - u(1) + u(2) - u(3));
}

StateVec quad_derivative(const QuadState& x, const Control& u, const QuadParams& params) {
  double f_r;
  Vec3 tau_r;
  mixer(u, params, f_r, tau_r);

  StateVec d;
  d.segment<3>(0) = x.v;
  d.segment<3>(3) = (f_r / params.m) * thrust_axis(x.q) - Vec3(0, 0, params.g);
  const Quat qdot = quat_mul(x.q, Quat{0, x.w.x(), x.w.y(), x.w.z()});
  d(6) = 0.5 * qdot.w;
  d(7) = 0.5 * qdot.x;
  d(8) = 0.5 * qdot.y;
  d(9) = 0.5 * qdot.z;
  d.segment<3>(10) = params.J.ldlt().solve(tau_r - x.w.cross(params.J * x.w));
  return d;
}

QuadState integrate_quad(const QuadState& x, const Control& u, double dt, int substeps,
                         const QuadParams& params) {
  const double h = dt / substeps;
  StateVec s = state_to_vec(x);
  for (int i = 0; i < substeps; ++i) {
    s += h * quad_derivative(state_from_vec(s), u, params);
    s.segment<4>(6).normalize();
  }
  if (!s.allFinite()) throw NonFinite("integrate_quad: state diverged");
  return state_from_vec(s);
}

QuadState euler_step_jac(const QuadState& x, const Control& u, double dt,
                         const QuadParams& params,
                         Eigen::Matrix<double, 13, 13>* a_out,
                         Eigen::Matrix<double, 13, 4>* b_out) {
  StateVec y = state_to_vec(x) + dt * quad_derivative(x, u, params);
  const double qn = y.segment<4>(6).norm();
  const Eigen::Vector4d qhat = y.segment<4>(6) / qn;

  if (a_out != nullptr || b_out != nullptr) {
    const Mat3 j_inv = params.J.inverse();
    const double w = x.q.w, qx = x.q.x, qy = x.q.y, qz = x.q.z;
    const Vec3 om = x.w;

    Eigen::Matrix<double, 13, 13> fx = Eigen::Matrix<double, 13, 13>::Zero();
    fx.block<3, 3>(0, 3).setIdentity();

    double f_r;
    Vec3 tau_r;
    mixer(u, params, f_r, tau_r);
    Eigen::Matrix<double, 3, 4> dez;  // d(thrust_axis)/d(w,x,y,z)
    dez << qy, qz, w, qx, -qx, -w, qz, qy, 0, -2 * qx, -2 * qy, 0;
    dez *= 2.0;
    fx.block<3, 4>(3, 6) = (f_r / params.m) * dez;

    Eigen::Matrix4d omega;  // qdot = 0.5 * omega * q
    omega << 0, -om.x(), -om.y(), -om.z(), om.x(), 0, om.z(), -om.y(), om.y(),
        -om.z(), 0, om.x(), om.z(), om.y(), -om.x(), 0;
    fx.block<4, 4>(6, 6) = 0.5 * omega;

    Eigen::Matrix<double, 4, 3> dq_dw;
    dq_dw << -qx, -qy, -qz, w, -qz, qy, qz, w, -qx, -qy, qx, w;
    fx.block<4, 3>(6, 10) = 0.5 * dq_dw;

    fx.block<3, 3>(10, 10) = j_inv * (skew(params.J * om) - skew(om) * params.J);

    Eigen::Matrix<double, 13, 4> fu = Eigen::Matrix<double, 13, 4>::Zero();
    fu.block<3, 4>(3, 0) = (thrust_axis(x.q) / params.m) * Eigen::RowVector4d::Ones();
    const double a = params.arm / std::sqrt(2.0);
    Eigen::Matrix<double, 3, 4> dtau;
    dtau << a, a, -a, -a, -a, a, a, -a, params.c_tau, -params.c_tau, params.c_tau,
        -params.c_tau;
    fu.block<3, 4>(10, 0) = j_inv * dtau;

    // Jacobian of the quaternion renormalization at the pre-normalized point.
    Eigen::Matrix4d n_q = (Eigen::Matrix4d::Identity() - qhat * qhat.transpose()) / qn;

    if (a_out != nullptr) {
      *a_out = Eigen::Matrix<double, 13, 13>::Identity() + dt * fx;
      a_out->block<4, 13>(6, 0) = n_q * a_out->block<4, 13>(6, 0);
    }
    if (b_out != nullptr) {
      *b_out = dt * fu;
      b_out->block<4, 4>(6, 0) = n_q * b_out->block<4, 4>(6, 0);
    }
  }

  y.segment<4>(6) = qhat;
  if (!y.allFinite()) throw NonFinite("euler_step_jac: state diverged");
  return state_from_vec(y);
}

GatePose gate_state_at(const GateMotion& gate, double t) {
  return {gate.p0 + gate.v * t, gate.theta0 + gate.omega * t};
}

}  // namespace gp
