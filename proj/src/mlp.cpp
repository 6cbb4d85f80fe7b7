#include "mlp.hpp"

#include <fstream>

#include "json.hpp"

namespace gp {

namespace {
constexpr int kSchemaVersion = 1;

void check_shapes(const Mlp& net, const Eigen::VectorXd& input) {
  if (input.size() != net.input_dim()) {
    throw DimensionMismatch("mlp: input size " + std::to_string(input.size()) +
                            " != " + std::to_string(net.input_dim()));
  }
}
}  // namespace

void MlpGrads::set_zero() {
  for (auto& w : weights) w.setZero();
  for (auto& b : biases) b.setZero();
}

void MlpGrads::accumulate(const MlpGrads& other, double scale) {
  for (size_t l = 0; l < weights.size(); ++l) {
    weights[l] += scale * other.weights[l];
    biases[l] += scale * other.biases[l];
  }
}

Mlp make_mlp(const std::vector<int>& dims, Rng& rng) {
  Mlp net;
  net.dims = dims;
  for (size_t l = 0; l + 1 < dims.size(); ++l) {
    const double limit = std::sqrt(6.0 / dims[l]);
    Eigen::MatrixXd w(dims[l + 1], dims[l]);
    for (int i = 0; i < w.rows(); ++i)
      for (int j = 0; j < w.cols(); ++j) w(i, j) = rng.uniform(-limit, limit);
    net.weights.push_back(std::move(w));
    net.biases.push_back(Eigen::VectorXd::Zero(dims[l + 1]));
  }
  net.in_shift = Eigen::VectorXd::Zero(dims.front());
  net.in_scale = Eigen::VectorXd::Ones(dims.front());
  net.out_gain = Eigen::VectorXd::Ones(dims.back());
  net.out_offset = Eigen::VectorXd::Zero(dims.back());
  net.out_tanh.assign(dims.back(), 0);
  return net;
}

Eigen::VectorXd mlp_forward(const Mlp& net, const Eigen::VectorXd& input) {
  check_shapes(net, input);
  Eigen::VectorXd h = (input - net.in_shift).cwiseQuotient(net.in_scale);
  const size_t n_layers = net.weights.size();
  for (size_t l = 0; l + 1 < n_layers; ++l) {
    h = (net.weights[l] * h + net.biases[l]).cwiseMax(0.0);
  }
  h = net.weights.back() * h + net.biases.back();
  Eigen::VectorXd y(h.size());
  for (int i = 0; i < h.size(); ++i) {
    const double v = net.out_tanh[i] ? std::tanh(h(i)) : h(i);
    y(i) = net.out_offset(i) + net.out_gain(i) * v;
  }
  return y;
}

MlpGrads mlp_backward(const Mlp& net, const Eigen::VectorXd& input,
                      const Eigen::VectorXd& upstream) {
  check_shapes(net, input);
  if (upstream.size() != net.output_dim()) {
    throw DimensionMismatch("mlp_backward: upstream size mismatch");
  }
  const size_t n_layers = net.weights.size();
  std::vector<Eigen::VectorXd> acts(n_layers + 1);
  acts[0] = (input - net.in_shift).cwiseQuotient(net.in_scale);
  for (size_t l = 0; l + 1 < n_layers; ++l) {
    acts[l + 1] = (net.weights[l] * acts[l] + net.biases[l]).cwiseMax(0.0);
  }
  acts[n_layers] = net.weights.back() * acts[n_layers - 1] + net.biases.back();

  Eigen::VectorXd delta(net.output_dim());
  for (int i = 0; i < delta.size(); ++i) {
    double g = net.out_gain(i);
    if (net.out_tanh[i]) {
      const double t = std::tanh(acts[n_layers](i));
      g *= 1.0 - t * t;
    }
    delta(i) = upstream(i) * g;
  }

  MlpGrads grads = make_grads_like(net);
  for (size_t l = n_layers; l-- > 0;) {
    grads.weights[l] = delta * acts[l].transpose();
    grads.biases[l] = delta;
    if (l > 0) {
      delta = net.weights[l].transpose() * delta;
      for (int i = 0; i < delta.size(); ++i) {
        if (acts[l](i) <= 0.0) delta(i) = 0.0;
      }
    }
  }
  return grads;
}

MlpGrads make_grads_like(const Mlp& net) {
  MlpGrads g;
  for (size_t l = 0; l < net.weights.size(); ++l) {
    g.weights.push_back(Eigen::MatrixXd::Zero(net.weights[l].rows(), net.weights[l].cols()));
    g.biases.push_back(Eigen::VectorXd::Zero(net.biases[l].size()));
  }
  return g;
}

Adam::Adam(const Mlp& net, double lr_) : lr(lr_), m(make_grads_like(net)), v(make_grads_like(net)) {}

void Adam::step(Mlp& net, const MlpGrads& grads, bool ascent) {
  ++step_count;
  const double sign = ascent ? -1.0 : 1.0;
  const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(step_count));
  const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(step_count));
  auto update = [&](Eigen::Ref<Eigen::MatrixXd> p, Eigen::Ref<Eigen::MatrixXd> m_acc,
                    Eigen::Ref<Eigen::MatrixXd> v_acc, const Eigen::MatrixXd& g) {
    m_acc = beta1 * m_acc + (1.0 - beta1) * g;
    v_acc = beta2 * v_acc + (1.0 - beta2) * g.cwiseProduct(g);
    const Eigen::MatrixXd m_hat = m_acc / bc1;
    const Eigen::MatrixXd v_hat = v_acc / bc2;
    p -= sign * lr * (m_hat.array() / (v_hat.array().sqrt() + eps)).matrix();
  };
  for (size_t l = 0; l < net.weights.size(); ++l) {
    update(net.weights[l], m.weights[l], v.weights[l], grads.weights[l]);
    Eigen::MatrixXd bg = grads.biases[l];
    Eigen::MatrixXd bp = net.biases[l], bm = m.biases[l], bv = v.biases[l];
    update(bp, bm, bv, bg);
    net.biases[l] = bp;
    m.biases[l] = bm;
    v.biases[l] = bv;
  }
}

namespace {

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j, int rows, int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) {
    throw ShapeMismatch("weight matrix row count mismatch");
  }
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j[i].size()) != cols) throw ShapeMismatch("weight matrix col count mismatch");
    for (int c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
  }
  return m;
}

Eigen::VectorXd vector_from_json(const nlohmann::json& j, int size) {
  if (!j.is_array() || static_cast<int>(j.size()) != size) {
    throw ShapeMismatch("vector length mismatch");
  }
  Eigen::VectorXd v(size);
  for (int i = 0; i < size; ++i) v(i) = j[i].get<double>();
  return v;
}

}  // namespace

void save_weights(const Mlp& net, const std::string& path) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["layer_dims"] = net.dims;
  nlohmann::json ws = nlohmann::json::array(), bs = nlohmann::json::array();
  for (size_t l = 0; l < net.weights.size(); ++l) {
    ws.push_back(matrix_to_json(net.weights[l]));
    nlohmann::json b = nlohmann::json::array();
    for (int i = 0; i < net.biases[l].size(); ++i) b.push_back(net.biases[l](i));
    bs.push_back(std::move(b));
  }
  j["weights"] = std::move(ws);
  j["biases"] = std::move(bs);
  auto vec_json = [](const Eigen::VectorXd& v) {
    nlohmann::json a = nlohmann::json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
  };
  j["input_shift"] = vec_json(net.in_shift);
  j["input_scale"] = vec_json(net.in_scale);
  j["output_gain"] = vec_json(net.out_gain);
  j["output_offset"] = vec_json(net.out_offset);
  j["output_tanh"] = net.out_tanh;

  std::ofstream out(path);
  if (!out) throw IoError("save_weights: cannot open " + path);
  out << j.dump(2) << "\n";
  if (!out) throw IoError("save_weights: write failed for " + path);
}

Mlp load_weights(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("load_weights: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("load_weights: parse error in " + path + ": " + e.what());
  }
  if (!j.contains("schema_version") || j["schema_version"].get<int>() != kSchemaVersion) {
    throw SchemaVersionMismatch("load_weights: unsupported schema version in " + path);
  }
  Mlp net;
  net.dims = j.at("layer_dims").get<std::vector<int>>();
  if (net.dims.size() < 2) throw ShapeMismatch("load_weights: need at least two layer dims");
  const auto& ws = j.at("weights");
  const auto& bs = j.at("biases");
  if (ws.size() != net.dims.size() - 1 || bs.size() != net.dims.size() - 1) {
    throw ShapeMismatch("load_weights: layer count mismatch");
  }
  for (size_t l = 0; l + 1 < net.dims.size(); ++l) {
    net.weights.push_back(matrix_from_json(ws[l], net.dims[l + 1], net.dims[l]));
    net.biases.push_back(vector_from_json(bs[l], net.dims[l + 1]));
  }
  net.in_shift = vector_from_json(j.at("input_shift"), net.dims.front());
  net.in_scale = vector_from_json(j.at("input_scale"), net.dims.front());
  net.out_gain = vector_from_json(j.at("output_gain"), net.dims.back());
  net.out_offset = vector_from_json(j.at("output_offset"), net.dims.back());
  net.out_tanh = j.at("output_tanh").get<std::vector<uint8_t>>();
  if (static_cast<int>(net.out_tanh.size()) != net.dims.back()) {
    throw ShapeMismatch("load_weights: output_tanh length mismatch");
  }
  return net;
}

}  // namespace gp
