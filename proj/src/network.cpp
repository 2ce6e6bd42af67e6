#include "fraudnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fraudnet/rng.hpp"

namespace fraudnet {

namespace {

constexpr double kLogClamp = 1e-12;

double activate(Activation activation, double z) {
    switch (activation) {
        case Activation::relu: return z > 0.0 ? z : 0.0;
        case Activation::sigmoid: return 1.0 / (1.0 + std::exp(-z));
        case Activation::linear: return z;
    }
    throw std::logic_error("unknown activation");
}

// Derivative in terms of the pre-activation z.
double activate_derivative(Activation activation, double z) {
    switch (activation) {
        case Activation::relu: return z > 0.0 ? 1.0 : 0.0;
        case Activation::sigmoid: {
            const double s = 1.0 / (1.0 + std::exp(-z));
            return s * (1.0 - s);
        }
        case Activation::linear: return 1.0;
    }
    throw std::logic_error("unknown activation");
}

void check_labels(const std::vector<int>& labels, std::size_t rows, std::size_t classes) {
    if (labels.size() != rows) {
        throw std::invalid_argument("label count " + std::to_string(labels.size()) +
                                    " does not match row count " + std::to_string(rows));
    }
    for (int label : labels) {
        if (label < 0 || static_cast<std::size_t>(label) >= classes) {
            throw std::invalid_argument("label " + std::to_string(label) +
                                        " outside 0.." + std::to_string(classes - 1));
        }
    }
}

Target select_target_rows(const Target& target, const std::vector<std::size_t>& rows) {
    if (const auto* matrix = std::get_if<RealMatrix>(&target)) {
        return matrix->select_rows(rows);
    }
    const auto& labels = std::get<std::vector<int>>(target);
    std::vector<int> subset;
    subset.reserve(rows.size());
    for (std::size_t r : rows) subset.push_back(labels[r]);
    return subset;
}

std::size_t target_rows(const Target& target) {
    if (const auto* matrix = std::get_if<RealMatrix>(&target)) return matrix->rows();
    return std::get<std::vector<int>>(target).size();
}

}  // namespace

Activation activation_from_string(const std::string& name) {
    if (name == "relu") return Activation::relu;
    if (name == "sigmoid") return Activation::sigmoid;
    if (name == "linear") return Activation::linear;
    throw std::invalid_argument("unknown activation '" + name + "'");
}

std::string to_string(Activation activation) {
    switch (activation) {
        case Activation::relu: return "relu";
        case Activation::sigmoid: return "sigmoid";
        case Activation::linear: return "linear";
    }
    throw std::logic_error("unknown activation");
}

std::vector<LayerSpec> NetworkParams::specs() const {
    std::vector<LayerSpec> out;
    out.reserve(layers.size());
    for (const auto& layer : layers) {
        out.push_back({layer.in_dim(), layer.out_dim(), layer.activation});
    }
    return out;
}

std::size_t NetworkParams::parameter_count() const {
    std::size_t count = 0;
    for (const auto& layer : layers) count += layer.weight.size() + layer.bias.size();
    return count;
}

void NetworkParams::validate() const {
    if (layers.empty()) {
        throw std::invalid_argument("network has no layers");
    }
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const auto& layer = layers[l];
        if (layer.in_dim() == 0 || layer.out_dim() == 0) {
            throw std::invalid_argument("layer " + std::to_string(l) + " has a zero dimension");
        }
        if (layer.bias.size() != layer.out_dim()) {
            throw std::invalid_argument("layer " + std::to_string(l) + " bias length " +
                                        std::to_string(layer.bias.size()) +
                                        " does not match out_dim " +
                                        std::to_string(layer.out_dim()));
        }
        if (l > 0 && layers[l - 1].out_dim() != layer.in_dim()) {
            throw std::invalid_argument("layer " + std::to_string(l) + " in_dim " +
                                        std::to_string(layer.in_dim()) +
                                        " does not chain from previous out_dim " +
                                        std::to_string(layers[l - 1].out_dim()));
        }
    }
}

NetworkParams init_network(const std::vector<LayerSpec>& specs, std::uint64_t seed) {
    if (specs.empty()) {
        throw std::invalid_argument("init_network: no layer specs");
    }
    auto rng = seeded_rng(seed, rng_stream::init);
    NetworkParams net;
    net.layers.reserve(specs.size());
    for (const auto& spec : specs) {
        if (spec.in_dim == 0 || spec.out_dim == 0) {
            throw std::invalid_argument("init_network: layer dimensions must be >= 1");
        }
        const double limit =
            std::sqrt(6.0 / static_cast<double>(spec.in_dim + spec.out_dim));
        std::uniform_real_distribution<double> uniform(-limit, limit);
        DenseLayer layer;
        layer.weight = RealMatrix(spec.out_dim, spec.in_dim);
        for (double& w : layer.weight.data()) w = uniform(rng);
        layer.bias.assign(spec.out_dim, 0.0);
        layer.activation = spec.activation;
        net.layers.push_back(std::move(layer));
    }
    net.validate();
    return net;
}

ForwardTrace forward(const NetworkParams& net, const RealMatrix& batch) {
    net.validate();
    if (batch.cols() != net.input_dim()) {
        throw std::invalid_argument("forward: batch has " + std::to_string(batch.cols()) +
                                    " columns, network expects " +
                                    std::to_string(net.input_dim()));
    }
    ForwardTrace trace;
    trace.pre_activations.reserve(net.layers.size());
    trace.activations.reserve(net.layers.size());
    const RealMatrix* input = &batch;
    for (const auto& layer : net.layers) {
        RealMatrix z = matmul_bt(*input, layer.weight);
        add_row_vector(z, layer.bias);
        RealMatrix a(z.rows(), z.cols());
        for (std::size_t i = 0; i < z.size(); ++i) {
            a.data()[i] = activate(layer.activation, z.data()[i]);
        }
        trace.pre_activations.push_back(std::move(z));
        trace.activations.push_back(std::move(a));
        input = &trace.activations.back();
    }
    return trace;
}

double mse_loss(const RealMatrix& pred, const RealMatrix& target) {
    if (!pred.same_shape(target)) {
        throw std::invalid_argument("mse_loss: shape mismatch");
    }
    if (pred.rows() == 0) {
        throw std::invalid_argument("mse_loss: empty matrices");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double d = pred.data()[i] - target.data()[i];
        total += d * d;
    }
    return 0.5 * total / static_cast<double>(pred.rows());
}

RealMatrix softmax(const RealMatrix& logits) {
    RealMatrix probs(logits.rows(), logits.cols());
    for (std::size_t r = 0; r < logits.rows(); ++r) {
        const double* in = logits.row_ptr(r);
        double* out = probs.row_ptr(r);
        double max_logit = in[0];
        for (std::size_t c = 1; c < logits.cols(); ++c) max_logit = std::max(max_logit, in[c]);
        double sum = 0.0;
        for (std::size_t c = 0; c < logits.cols(); ++c) {
            out[c] = std::exp(in[c] - max_logit);
            sum += out[c];
        }
        for (std::size_t c = 0; c < logits.cols(); ++c) out[c] /= sum;
    }
    return probs;
}

double cross_entropy_loss(const RealMatrix& probs, const std::vector<int>& labels) {
    if (probs.rows() == 0) {
        throw std::invalid_argument("cross_entropy_loss: empty probability matrix");
    }
    check_labels(labels, probs.rows(), probs.cols());
    double total = 0.0;
    for (std::size_t r = 0; r < probs.rows(); ++r) {
        const double p = probs.at(r, static_cast<std::size_t>(labels[r]));
        total -= std::log(std::max(p, kLogClamp));
    }
    return total / static_cast<double>(probs.rows());
}

Loss loss_of(const Target& target) {
    return std::holds_alternative<RealMatrix>(target) ? Loss::squared_error
                                                      : Loss::softmax_cross_entropy;
}

double evaluate_loss(const NetworkParams& net, const RealMatrix& batch, const Target& target) {
    const auto trace = forward(net, batch);
    if (const auto* matrix = std::get_if<RealMatrix>(&target)) {
        return mse_loss(trace.output(), *matrix);
    }
    return cross_entropy_loss(softmax(trace.output()),
                              std::get<std::vector<int>>(target));
}

BackpropResult backward(const NetworkParams& net, const RealMatrix& batch, const Target& target) {
    const auto trace = forward(net, batch);
    const std::size_t m = batch.rows();
    if (m == 0) {
        throw std::invalid_argument("backward: empty batch");
    }
    const std::size_t last = net.layers.size() - 1;
    const RealMatrix& output = trace.output();

    BackpropResult result;

    // dJ/da at the output, before folding in the final activation derivative.
    RealMatrix delta(output.rows(), output.cols());
    if (const auto* matrix = std::get_if<RealMatrix>(&target)) {
        if (!output.same_shape(*matrix)) {
            throw std::invalid_argument("backward: target shape mismatch");
        }
        for (std::size_t i = 0; i < output.size(); ++i) {
            delta.data()[i] = (output.data()[i] - matrix->data()[i]) / static_cast<double>(m);
        }
        result.loss = mse_loss(output, *matrix);
    } else {
        const auto& labels = std::get<std::vector<int>>(target);
        check_labels(labels, output.rows(), output.cols());
        const RealMatrix probs = softmax(output);
        delta = probs;
        for (std::size_t r = 0; r < output.rows(); ++r) {
            delta.at(r, static_cast<std::size_t>(labels[r])) -= 1.0;
        }
        for (double& v : delta.data()) v /= static_cast<double>(m);
        result.loss = cross_entropy_loss(probs, labels);
    }

    result.grads.weight.resize(net.layers.size());
    result.grads.bias.resize(net.layers.size());

    for (std::size_t l = last + 1; l-- > 0;) {
        // Fold the layer's activation derivative into delta (dJ/da -> dJ/dz).
        const RealMatrix& z = trace.pre_activations[l];
        for (std::size_t i = 0; i < delta.size(); ++i) {
            delta.data()[i] *= activate_derivative(net.layers[l].activation, z.data()[i]);
        }
        const RealMatrix& layer_input = l == 0 ? batch : trace.activations[l - 1];
        result.grads.weight[l] = matmul_at(delta, layer_input);
        result.grads.bias[l] = column_sums(delta);
        if (l > 0) {
            delta = matmul(delta, net.layers[l].weight);
        }
    }
    return result;
}

void sgd_step(NetworkParams& net, const Gradients& grads, double learning_rate) {
    if (grads.weight.size() != net.layers.size() || grads.bias.size() != net.layers.size()) {
        throw std::invalid_argument("sgd_step: gradient layer count mismatch");
    }
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        auto& layer = net.layers[l];
        if (!layer.weight.same_shape(grads.weight[l]) ||
            layer.bias.size() != grads.bias[l].size()) {
            throw std::invalid_argument("sgd_step: gradient shape mismatch at layer " +
                                        std::to_string(l));
        }
        for (std::size_t i = 0; i < layer.weight.size(); ++i) {
            layer.weight.data()[i] -= learning_rate * grads.weight[l].data()[i];
        }
        for (std::size_t i = 0; i < layer.bias.size(); ++i) {
            layer.bias[i] -= learning_rate * grads.bias[l][i];
        }
    }
}

double train_epoch(NetworkParams& net, const RealMatrix& inputs, const Target& target,
                   std::size_t batch_size, double learning_rate, std::mt19937_64& rng) {
    const std::size_t n = inputs.rows();
    if (n == 0) {
        throw std::invalid_argument("train_epoch: empty dataset");
    }
    if (target_rows(target) != n) {
        throw std::invalid_argument("train_epoch: target row count mismatch");
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);

    double loss_total = 0.0;
    for (std::size_t start = 0; start < n; start += batch_size) {
        const std::size_t end = std::min(start + batch_size, n);
        const std::vector<std::size_t> rows(order.begin() + start, order.begin() + end);
        const RealMatrix batch = inputs.select_rows(rows);
        const Target batch_target = select_target_rows(target, rows);
        const auto bp = backward(net, batch, batch_target);
        sgd_step(net, bp.grads, learning_rate);
        loss_total += bp.loss * static_cast<double>(rows.size());
    }
    return loss_total / static_cast<double>(n);
}

TrainResult train(NetworkParams& net, const RealMatrix& inputs, const Target& target,
                  const TrainConfig& cfg) {
    if (cfg.epochs == 0 || cfg.batch_size == 0 || cfg.learning_rate <= 0.0) {
        throw std::invalid_argument("train: epochs, batch_size and learning_rate must be positive");
    }
    auto rng = seeded_rng(cfg.seed, rng_stream::train);
    TrainResult result;
    result.loss_history.reserve(cfg.epochs);
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        const double loss =
            train_epoch(net, inputs, target, cfg.batch_size, cfg.learning_rate, rng);
        if (!std::isfinite(loss)) {
            throw std::runtime_error("train: loss diverged to a non-finite value at epoch " +
                                     std::to_string(epoch));
        }
        result.loss_history.push_back(loss);
    }
    return result;
}

namespace {

// Loss for the finite-difference oracle, evaluated in extended precision:
// double arithmetic leaves the difference quotient with ~1e-5 relative rounding
// noise on small gradient entries. The cross-entropy term uses log-sum-exp
// rather than the clamped public loss; the clamp flattens saturated
// probabilities and zeroes the numeric derivative where the analytic one is
// merely tiny.
long double oracle_loss(const NetworkParams& net, const RealMatrix& batch, const Target& target) {
    std::vector<long double> current(batch.data().begin(), batch.data().end());
    const std::size_t rows = batch.rows();
    std::size_t cols = batch.cols();
    for (const auto& layer : net.layers) {
        const std::size_t out = layer.out_dim();
        std::vector<long double> next(rows * out);
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t o = 0; o < out; ++o) {
                long double z = layer.bias[o];
                for (std::size_t i = 0; i < cols; ++i) {
                    z += static_cast<long double>(layer.weight.at(o, i)) * current[r * cols + i];
                }
                long double a = z;
                if (layer.activation == Activation::relu) a = z > 0.0L ? z : 0.0L;
                if (layer.activation == Activation::sigmoid) a = 1.0L / (1.0L + std::exp(-z));
                next[r * out + o] = a;
            }
        }
        current = std::move(next);
        cols = out;
    }

    if (const auto* matrix = std::get_if<RealMatrix>(&target)) {
        long double total = 0.0L;
        for (std::size_t i = 0; i < current.size(); ++i) {
            const long double d = current[i] - static_cast<long double>(matrix->data()[i]);
            total += d * d;
        }
        return 0.5L * total / static_cast<long double>(rows);
    }

    const auto& labels = std::get<std::vector<int>>(target);
    long double total = 0.0L;
    for (std::size_t r = 0; r < rows; ++r) {
        long double max_logit = current[r * cols];
        for (std::size_t c = 1; c < cols; ++c) {
            max_logit = std::max(max_logit, current[r * cols + c]);
        }
        long double sum = 0.0L;
        for (std::size_t c = 0; c < cols; ++c) {
            sum += std::exp(current[r * cols + c] - max_logit);
        }
        const std::size_t y = static_cast<std::size_t>(labels[r]);
        total += std::log(sum) + max_logit - current[r * cols + y];
    }
    return total / static_cast<long double>(rows);
}

}  // namespace

double gradient_check(const NetworkParams& net, const RealMatrix& batch, const Target& target,
                      double epsilon) {
    const auto analytic = backward(net, batch, target).grads;
    NetworkParams probe = net;

    double worst = 0.0;
    const auto update_worst = [&](double analytic_value, double* param) {
        const double saved = *param;
        const double hi = saved + epsilon;
        const double lo = saved - epsilon;
        *param = hi;
        const long double loss_plus = oracle_loss(probe, batch, target);
        *param = lo;
        const long double loss_minus = oracle_loss(probe, batch, target);
        *param = saved;
        // Divide by the step that was actually applied after rounding.
        const long double step = static_cast<long double>(hi) - static_cast<long double>(lo);
        const double numeric = static_cast<double>((loss_plus - loss_minus) / step);
        const double denom =
            std::max({std::abs(analytic_value), std::abs(numeric), 1e-12});
        worst = std::max(worst, std::abs(analytic_value - numeric) / denom);
    };

    for (std::size_t l = 0; l < probe.layers.size(); ++l) {
        auto& layer = probe.layers[l];
        for (std::size_t i = 0; i < layer.weight.size(); ++i) {
            update_worst(analytic.weight[l].data()[i], &layer.weight.data()[i]);
        }
        for (std::size_t i = 0; i < layer.bias.size(); ++i) {
            update_worst(analytic.bias[l][i], &layer.bias[i]);
        }
    }
    return worst;
}

}  // namespace fraudnet
