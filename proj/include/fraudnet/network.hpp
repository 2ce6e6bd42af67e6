#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "fraudnet/matrix.hpp"

namespace fraudnet {

enum class Activation { relu, sigmoid, linear };

Activation activation_from_string(const std::string& name);
std::string to_string(Activation activation);

struct LayerSpec {
    std::size_t in_dim = 0;
    std::size_t out_dim = 0;
    Activation activation = Activation::linear;
};

struct DenseLayer {
    RealMatrix weight;         // out_dim x in_dim
    std::vector<double> bias;  // out_dim
    Activation activation = Activation::linear;

    std::size_t in_dim() const { return weight.cols(); }
    std::size_t out_dim() const { return weight.rows(); }
};

// Ordered dense layers; adjacent dimensions must chain.
struct NetworkParams {
    std::vector<DenseLayer> layers;

    std::size_t input_dim() const { return layers.front().in_dim(); }
    std::size_t output_dim() const { return layers.back().out_dim(); }
    std::vector<LayerSpec> specs() const;
    std::size_t parameter_count() const;
    void validate() const;  // throws on a broken dimension chain
};

struct TrainConfig {
    std::size_t epochs = 50;
    std::size_t batch_size = 128;
    double learning_rate = 0.01;
    std::uint64_t seed = 0;
};

// Glorot-uniform weights in +-sqrt(6/(in+out)), zero biases.
NetworkParams init_network(const std::vector<LayerSpec>& specs, std::uint64_t seed);

// Per-layer forward results: pre_activations[l] and activations[l] for layer l,
// each with one row per batch row.
struct ForwardTrace {
    std::vector<RealMatrix> pre_activations;
    std::vector<RealMatrix> activations;

    const RealMatrix& output() const { return activations.back(); }
};

ForwardTrace forward(const NetworkParams& net, const RealMatrix& batch);

// Mean over rows of half the squared row difference: (1/m) * sum_i 0.5*||p_i - t_i||^2.
double mse_loss(const RealMatrix& pred, const RealMatrix& target);

// Row-wise softmax, computed with max subtraction so large logits stay finite.
RealMatrix softmax(const RealMatrix& logits);

// Mean negative log-probability of the true class; log is clamped at 1e-12.
double cross_entropy_loss(const RealMatrix& probs, const std::vector<int>& labels);

enum class Loss { squared_error, softmax_cross_entropy };

// Training target: a matrix for the squared-error loss, class labels for
// softmax cross-entropy (softmax is applied to the network output).
using Target = std::variant<RealMatrix, std::vector<int>>;

Loss loss_of(const Target& target);

// Loss evaluated at the network output for the given target.
double evaluate_loss(const NetworkParams& net, const RealMatrix& batch, const Target& target);

struct Gradients {
    std::vector<RealMatrix> weight;
    std::vector<std::vector<double>> bias;
};

struct BackpropResult {
    double loss = 0.0;
    Gradients grads;
};

// Analytic gradients of the selected loss for every weight and bias.
BackpropResult backward(const NetworkParams& net, const RealMatrix& batch, const Target& target);

// params <- params - learning_rate * grads, elementwise.
void sgd_step(NetworkParams& net, const Gradients& grads, double learning_rate);

// One pass of shuffled mini-batch SGD over all rows; returns the mean sample loss.
double train_epoch(NetworkParams& net, const RealMatrix& inputs, const Target& target,
                   std::size_t batch_size, double learning_rate, std::mt19937_64& rng);

struct TrainResult {
    std::vector<double> loss_history;  // one mean loss per epoch
};

// cfg.epochs passes of train_epoch with an rng seeded from cfg.seed.
TrainResult train(NetworkParams& net, const RealMatrix& inputs, const Target& target,
                  const TrainConfig& cfg);

// Max over parameters of |analytic - numeric| / max(|analytic|, |numeric|, 1e-12),
// numeric side from central finite differences of the loss.
double gradient_check(const NetworkParams& net, const RealMatrix& batch, const Target& target,
                      double epsilon = 1e-5);

}  // namespace fraudnet
