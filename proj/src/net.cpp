#include "ltlsynth/net.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <json.hpp>

namespace ltlsynth {

namespace {
constexpr double kInitSigma = 0.01;

// Box-Muller over the raw generator; std::normal_distribution is not
// bit-stable across standard libraries.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

  double next(double sigma) {
    if (have_spare_) {
      have_spare_ = false;
      return spare_ * sigma;
    }
    double u1, u2;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    u2 = uniform();
    double mag = std::sqrt(-2.0 * std::log(u1));
    spare_ = mag * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return mag * std::cos(2.0 * M_PI * u2) * sigma;
  }

 private:
  double uniform() {
    return (rng_() >> 11) * (1.0 / 9007199254740992.0);  // 53-bit mantissa
  }
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};
}  // namespace

QNetwork init_network(int n_in, int n_env_actions, std::uint64_t seed) {
  if (n_in < 1 || n_env_actions < 1)
    throw Error("network dimensions must be at least 1");
  QNetwork net;
  net.layer_sizes = {n_in, n_in, n_in, n_env_actions};
  GaussianSource gauss(seed);
  for (size_t l = 0; l + 1 < net.layer_sizes.size(); ++l) {
    int in = net.layer_sizes[l], out = net.layer_sizes[l + 1];
    std::vector<double> w(static_cast<size_t>(in) * out);
    for (double& x : w) x = gauss.next(kInitSigma);
    net.weights.push_back(std::move(w));
    net.biases.emplace_back(out, 0.0);
  }
  return net;
}

namespace {
// Forward pass keeping pre-activations; activations[0] is the input.
struct ForwardTrace {
  std::vector<std::vector<double>> activations;
  std::vector<std::vector<double>> pre;
};

ForwardTrace forward_trace(const QNetwork& net, std::span<const double> input) {
  ForwardTrace t;
  t.activations.emplace_back(input.begin(), input.end());
  const size_t layers = net.weights.size();
  for (size_t l = 0; l < layers; ++l) {
    const int in = net.layer_sizes[l], out = net.layer_sizes[l + 1];
    std::vector<double> z(out);
    const auto& a = t.activations.back();
    for (int o = 0; o < out; ++o) {
      double acc = net.biases[l][o];
      const double* row = net.weights[l].data() + static_cast<size_t>(o) * in;
      for (int i = 0; i < in; ++i) acc += row[i] * a[i];
      z[o] = acc;
    }
    std::vector<double> act(out);
    const bool hidden = l + 1 < layers;
    for (int o = 0; o < out; ++o) act[o] = hidden ? std::max(0.0, z[o]) : z[o];
    t.pre.push_back(std::move(z));
    t.activations.push_back(std::move(act));
  }
  return t;
}
}  // namespace

std::vector<double> forward(const QNetwork& net,
                            std::span<const double> input) {
  if (static_cast<int>(input.size()) != net.input_size())
    throw Error("network input dimension mismatch");
  return forward_trace(net, input).activations.back();
}

AdamState make_adam(const QNetwork& net, double alpha) {
  AdamState adam;
  adam.alpha = alpha;
  for (size_t l = 0; l < net.weights.size(); ++l) {
    adam.m_w.emplace_back(net.weights[l].size(), 0.0);
    adam.v_w.emplace_back(net.weights[l].size(), 0.0);
    adam.m_b.emplace_back(net.biases[l].size(), 0.0);
    adam.v_b.emplace_back(net.biases[l].size(), 0.0);
  }
  return adam;
}

double weight_norm_squared(const QNetwork& net) {
  double sum = 0.0;
  for (const auto& layer : net.weights)
    for (double w : layer) sum += w * w;
  return sum;
}

BatchGradients batch_gradients(const QNetwork& net,
                               std::span<const TrainSample> batch, double l2) {
  if (batch.empty()) throw Error("empty training batch");
  const size_t layers = net.weights.size();
  BatchGradients out;
  auto& grad_w = out.w;
  auto& grad_b = out.b;
  grad_w.resize(layers);
  grad_b.resize(layers);
  for (size_t l = 0; l < layers; ++l) {
    grad_w[l].assign(net.weights[l].size(), 0.0);
    grad_b[l].assign(net.biases[l].size(), 0.0);
  }

  double loss = 0.0;
  for (const TrainSample& sample : batch) {
    if (static_cast<int>(sample.input.size()) != net.input_size() ||
        static_cast<int>(sample.target.size()) != net.output_size())
      throw Error("training sample dimension mismatch");
    ForwardTrace t = forward_trace(net, sample.input);
    const auto& pred = t.activations.back();
    std::vector<double> delta(pred.size());
    for (size_t o = 0; o < pred.size(); ++o) {
      double r = pred[o] - sample.target[o];
      loss += std::abs(r);
      delta[o] = r > 0.0 ? 1.0 : (r < 0.0 ? -1.0 : 0.0);
    }
    for (size_t l = layers; l-- > 0;) {
      const int in = net.layer_sizes[l], out = net.layer_sizes[l + 1];
      const auto& a = t.activations[l];
      for (int o = 0; o < out; ++o) {
        grad_b[l][o] += delta[o];
        double* row = grad_w[l].data() + static_cast<size_t>(o) * in;
        for (int i = 0; i < in; ++i) row[i] += delta[o] * a[i];
      }
      if (l == 0) break;
      std::vector<double> prev(in, 0.0);
      for (int i = 0; i < in; ++i) {
        if (t.pre[l - 1][i] <= 0.0) continue;  // rectifier gate
        double acc = 0.0;
        for (int o = 0; o < out; ++o)
          acc += net.weights[l][static_cast<size_t>(o) * in + i] * delta[o];
        prev[i] = acc;
      }
      delta = std::move(prev);
    }
  }

  if (l2 > 0.0) {
    loss += l2 * weight_norm_squared(net);
    for (size_t l = 0; l < layers; ++l)
      for (size_t i = 0; i < net.weights[l].size(); ++i)
        grad_w[l][i] += 2.0 * l2 * net.weights[l][i];
  }
  out.loss = loss;
  return out;
}

double train_batch(QNetwork& net, AdamState& adam,
                   std::span<const TrainSample> batch, double l2) {
  BatchGradients grads = batch_gradients(net, batch, l2);
  const auto& grad_w = grads.w;
  const auto& grad_b = grads.b;
  const double loss = grads.loss;
  if (!std::isfinite(loss)) throw TrainingDiverged("training loss diverged");

  adam.step_count += 1;
  const double bc1 = 1.0 - std::pow(adam.beta1, adam.step_count);
  const double bc2 = 1.0 - std::pow(adam.beta2, adam.step_count);
  auto update = [&](std::vector<double>& param, std::vector<double>& m,
                    std::vector<double>& v, const std::vector<double>& g) {
    for (size_t i = 0; i < param.size(); ++i) {
      m[i] = adam.beta1 * m[i] + (1.0 - adam.beta1) * g[i];
      v[i] = adam.beta2 * v[i] + (1.0 - adam.beta2) * g[i] * g[i];
      double mhat = m[i] / bc1;
      double vhat = v[i] / bc2;
      param[i] -= adam.alpha * mhat / (std::sqrt(vhat) + adam.epsilon);
    }
  };
  for (size_t l = 0; l < net.weights.size(); ++l) {
    update(net.weights[l], adam.m_w[l], adam.v_w[l], grad_w[l]);
    update(net.biases[l], adam.m_b[l], adam.v_b[l], grad_b[l]);
  }
  return loss;
}

void clone_into(const QNetwork& src, QNetwork& dst) {
  if (src.layer_sizes != dst.layer_sizes)
    throw Error("cannot clone between differently shaped networks");
  dst.weights = src.weights;
  dst.biases = src.biases;
}

std::string save_checkpoint(const QNetwork& net) {
  nlohmann::json j;
  j["format"] = "ltlsynth-qnet";
  j["version"] = 1;
  j["layers"] = net.layer_sizes;
  j["weights"] = net.weights;
  j["biases"] = net.biases;
  return j.dump() + "\n";
}

QNetwork load_checkpoint(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.value("format", "") != "ltlsynth-qnet")
    throw Error("not a network checkpoint");
  if (j.value("version", 0) != 1)
    throw Error("unsupported checkpoint version");
  QNetwork net;
  net.layer_sizes = j.at("layers").get<std::vector<int>>();
  net.weights = j.at("weights").get<std::vector<std::vector<double>>>();
  net.biases = j.at("biases").get<std::vector<std::vector<double>>>();
  if (net.layer_sizes.size() != net.weights.size() + 1 ||
      net.weights.size() != net.biases.size())
    throw Error("malformed checkpoint");
  for (size_t l = 0; l < net.weights.size(); ++l) {
    size_t in = static_cast<size_t>(net.layer_sizes[l]);
    size_t out = static_cast<size_t>(net.layer_sizes[l + 1]);
    if (net.weights[l].size() != in * out || net.biases[l].size() != out)
      throw Error("malformed checkpoint");
  }
  return net;
}

}  // namespace ltlsynth
