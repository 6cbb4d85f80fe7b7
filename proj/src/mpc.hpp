#pragma once

#include <optional>
#include <vector>

#include "dynamics.hpp"
#include "se3.hpp"

namespace gp {

// High-level decision variables z: traversal position, traversal attitude as a
// Rodrigues vector, traversal time.
struct DecisionVars {
  Vec3 p_tra = Vec3::Zero();
  Vec3 rho_tra = Vec3::Zero();
  double t_tra = 2.5;

  Eigen::Matrix<double, 7, 1> to_vec() const {
    Eigen::Matrix<double, 7, 1> v;
    v << p_tra, rho_tra, t_tra;
    return v;
  }
  static DecisionVars from_vec(const Eigen::Matrix<double, 7, 1>& v) {
    return {v.segment<3>(0), v.segment<3>(3), v(6)};
  }
};

// Diagonal cost weights. Every diagonal entry of q_max must strictly exceed
// the largest entry of the time-invariant matrices.
struct MpcWeights {
  Eigen::Matrix<double, 13, 1> q_x = (Eigen::Matrix<double, 13, 1>() << 10, 10, 10, 1, 1,
                                      1, 1, 1, 1, 1, 0.1, 0.1, 0.1)
                                         .finished();
  Eigen::Vector4d q_u = Eigen::Vector4d::Constant(0.01);
  Eigen::Vector4d q_du = Eigen::Vector4d::Constant(0.01);
  Eigen::Vector4d q_max = (Eigen::Vector4d() << 100, 100, 100, 50).finished();
  double gamma = 30.0;
};

struct SolverOptions {
  int max_iterations = 100;
  double tol_grad = 1e-4;      // projected-gradient norm
  double tol_cost = 1e-8;      // relative cost decrease
};

struct MpcProblem {
  QuadState x_init;
  Control u_init = Control::Zero();  // u_{-1}
  QuadState x_target;                // hover target (zero v, omega)
  DecisionVars z;
  int horizon = 50;
  double dt = 0.1;
  MpcWeights weights;
  QuadParams quad;
  double u_min = 0.0;
  double u_max = 6.0;
  SolverOptions options;
};

struct OptimalTrajectory {
  std::vector<QuadState> states;   // N+1
  std::vector<Control> controls;   // N
  double cost = 0.0;
  int iterations = 0;
  bool converged = false;
  double stationarity = 0.0;
  std::vector<double> cost_trace;  // accepted-iterate costs, non-increasing
};

// Gaussian traversal weight Q_max * exp(-gamma * (k*dt - t_tra)^2). t_tra is
// clamped to [0, N*dt] by the cost assembly before this is evaluated.
Eigen::Matrix4d traversal_weight(double t_tra, int k, double dt,
                                 const Eigen::Vector4d& q_max, double gamma);

// Running cost J_x + J_u + J_du + J_tra at stage k (k < N). The terminal
// stage uses J_x only; see terminal_cost.
double stage_cost(const QuadState& x, const Control& u, const Control& u_prev, int k,
                  const MpcProblem& problem);
double terminal_cost(const QuadState& x, const MpcProblem& problem);

double total_cost(const std::vector<QuadState>& states, const std::vector<Control>& controls,
                  const MpcProblem& problem);

// Single-shooting trajectory optimizer: iLQR-style backward/forward passes on
// the Euler-transcribed dynamics, controls clamped to the box, backtracking
// line search. Owns mutable workspace; one instance per concurrent solve.
class MpcSolver {
 public:
  OptimalTrajectory solve(const MpcProblem& problem,
                          const OptimalTrajectory* warm_start = nullptr);
};

// Build the problem at the current state, solve with a shifted warm start and
// return the first control together with the full trajectory.
std::pair<Control, OptimalTrajectory> receding_step(const QuadState& x_t,
                                                    const Control& u_prev,
                                                    const DecisionVars& z,
                                                    const MpcProblem& config,
                                                    const OptimalTrajectory* warm = nullptr);

}  // namespace gp
