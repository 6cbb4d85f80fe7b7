#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

#include "rng.hpp"

namespace gp {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct SchemaVersionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ShapeMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ReLU MLP with a linear final layer, a fixed affine input normalization and a
// per-output affine map (optionally through tanh). The normalization constants
// are stored with the weights so a saved network is self-contained.
struct Mlp {
  std::vector<int> dims;
  std::vector<Eigen::MatrixXd> weights;  // weights[l]: dims[l+1] x dims[l]
  std::vector<Eigen::VectorXd> biases;
  Eigen::VectorXd in_shift, in_scale;        // x_norm = (x - shift) / scale
  Eigen::VectorXd out_gain, out_offset;      // y = offset + gain * h (or tanh(h))
  std::vector<uint8_t> out_tanh;

  int input_dim() const { return dims.front(); }
  int output_dim() const { return dims.back(); }
};

struct MlpGrads {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;

  void set_zero();
  void accumulate(const MlpGrads& other, double scale = 1.0);
};

Mlp make_mlp(const std::vector<int>& dims, Rng& rng);  // He-uniform init

Eigen::VectorXd mlp_forward(const Mlp& net, const Eigen::VectorXd& input);

// Exact gradient of (upstream . output) w.r.t. every weight and bias,
// including the output affine/tanh map.
MlpGrads mlp_backward(const Mlp& net, const Eigen::VectorXd& input,
                      const Eigen::VectorXd& upstream);

MlpGrads make_grads_like(const Mlp& net);

struct Adam {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  long step_count = 0;
  MlpGrads m, v;

  explicit Adam(const Mlp& net, double lr_ = 1e-3);
  // ascent = true negates the update direction (reward maximization).
  void step(Mlp& net, const MlpGrads& grads, bool ascent = false);
};

void save_weights(const Mlp& net, const std::string& path);
Mlp load_weights(const std::string& path);

}  // namespace gp
