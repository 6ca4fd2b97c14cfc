// Dense Q-network with manual backpropagation, Adam updates, and L2
// regularization. Self-contained: no external ML dependency.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ltlsynth/ltl.hpp"

namespace ltlsynth {

// Two rectifier hidden layers sized to the input, identity output:
// layer sizes [n_in, n_in, n_in, n_out].
struct QNetwork {
  std::vector<int> layer_sizes;
  std::vector<std::vector<double>> weights;  // [layer][out * n_in + in]
  std::vector<std::vector<double>> biases;   // [layer][out]

  int input_size() const { return layer_sizes.front(); }
  int output_size() const { return layer_sizes.back(); }
};

/// Weights drawn from N(0, 0.01) by a seeded generator, biases zero.
/// Deterministic per seed.
QNetwork init_network(int n_in, int n_env_actions, std::uint64_t seed);

std::vector<double> forward(const QNetwork& net, std::span<const double> input);

struct AdamState {
  double alpha = 0.005;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::int64_t step_count = 0;
  std::vector<std::vector<double>> m_w, v_w, m_b, v_b;
};

AdamState make_adam(const QNetwork& net, double alpha);

class TrainingDiverged : public Error {
 public:
  using Error::Error;
};

struct TrainSample {
  std::vector<double> input;
  std::vector<double> target;
};

// Subgradients of
//   loss = sum_samples sum_outputs |prediction - target| + l2 * ||weights||^2
// with the absolute-error subgradient at 0 taken as 0.
struct BatchGradients {
  double loss = 0.0;
  std::vector<std::vector<double>> w;
  std::vector<std::vector<double>> b;
};

BatchGradients batch_gradients(const QNetwork& net,
                               std::span<const TrainSample> batch, double l2);

/// One Adam step on the batch subgradient. Returns the pre-step loss;
/// throws TrainingDiverged when it is not finite.
double train_batch(QNetwork& net, AdamState& adam,
                   std::span<const TrainSample> batch, double l2);

void clone_into(const QNetwork& src, QNetwork& dst);

// Versioned JSON checkpoints; layout documented in the README.
std::string save_checkpoint(const QNetwork& net);
QNetwork load_checkpoint(const std::string& text);

double weight_norm_squared(const QNetwork& net);

}  // namespace ltlsynth
