#pragma once

#include <Eigen/Dense>
#include <stdexcept>

#include "se3.hpp"

namespace gp {

using Control = Eigen::Vector4d;  // per-rotor thrusts [N]
using StateVec = Eigen::Matrix<double, 13, 1>;

struct NonFinite : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuadParams {
  double m = 1.0;                       // [kg]
  Mat3 J = Vec3(0.01, 0.01, 0.02).asDiagonal();  // [kg m^2]
  double g = 9.81;                      // [m/s^2]
  double arm = 0.2;                     // rotor moment arm [m]
  double c_tau = 0.01;                  // drag-torque coefficient [m]
  double f_max = 6.0;                   // per-rotor thrust bound [N]
  double half_width = 0.75;             // planar square half side [m]

  double hover_thrust() const { return m * g / 4.0; }
};

struct QuadState {
  Vec3 p = Vec3::Zero();   // position, world [m]
  Vec3 v = Vec3::Zero();   // velocity, world [m/s]
  Quat q;                  // body-to-world attitude
  Vec3 w = Vec3::Zero();   // body rates [rad/s]
};

StateVec state_to_vec(const QuadState& x);
QuadState state_from_vec(const StateVec& v);

struct GateMotion {
  Vec3 p0 = Vec3::Zero();      // gate center at t = 0 [m]
  double theta0 = 0.0;         // pitch at t = 0 [rad]
  Vec3 v = Vec3::Zero();       // translational velocity [m/s]
  double omega = 0.0;          // pitch rate [rad/s]
  double width = 0.9;          // aperture width [m]
  double height = 2.0;         // aperture height [m]
};

struct GatePose {
  Vec3 p;
  double theta;
};

// Rotor mixing, X configuration. With a = arm/sqrt2, rotor i sits at body
// position r1 = (a, a), r2 = (-a, a), r3 = (-a, -a), r4 = (a, -a), all thrusts
// along body +z; rotors 1 and 3 spin opposite to 2 and 4:
//   f_r   = f1 + f2 + f3 + f4
//   tau_x = a * ( f1 + f2 - f3 - f4)
//   tau_y = a * (-f1 + f2 + f3 - f4)
//   tau_z = c_tau * (f1 - f2 + f3 - f4)
void mixer(const Control& u, const QuadParams& params, double& f_r, Vec3& tau_r);

StateVec quad_derivative(const QuadState& x, const Control& u, const QuadParams& params);

// Forward Euler with zero-order-hold control; quaternion renormalized after
// each substep. Throws NonFinite if the state diverges.
QuadState integrate_quad(const QuadState& x, const Control& u, double dt, int substeps,
                         const QuadParams& params);

// One Euler step x + dt*f followed by quaternion renormalization, with the
// Jacobians d(x')/dx and d(x')/du of the composed map. Used by the MPC.
QuadState euler_step_jac(const QuadState& x, const Control& u, double dt,
                         const QuadParams& params,
                         Eigen::Matrix<double, 13, 13>* a_out,
                         Eigen::Matrix<double, 13, 4>* b_out);

GatePose gate_state_at(const GateMotion& gate, double t);

}  // namespace gp
