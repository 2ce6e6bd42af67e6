#include "fraudnet/classifier.hpp"

#include <cmath>
#include <stdexcept>

#include "fraudnet/model_io.hpp"

namespace fraudnet {

namespace {

const std::vector<std::size_t> kClassifierWidths = {29, 22, 15, 10, 5, 2};

}  // namespace

Threshold::Threshold(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw std::invalid_argument("threshold must be in [0,1], got " + std::to_string(value));
    }
}

ClassifierModel::ClassifierModel(NetworkParams params) : params_(std::move(params)) {
    params_.validate();
    const auto& widths = layer_widths();
    if (params_.layers.size() != widths.size() - 1) {
        throw std::invalid_argument("classifier must have " + std::to_string(widths.size() - 1) +
                                    " layers, got " + std::to_string(params_.layers.size()));
    }
    for (std::size_t l = 0; l < params_.layers.size(); ++l) {
        if (params_.layers[l].in_dim() != widths[l] ||
            params_.layers[l].out_dim() != widths[l + 1]) {
            throw std::invalid_argument(
                "classifier layer " + std::to_string(l) + " must be " +
                std::to_string(widths[l]) + "->" + std::to_string(widths[l + 1]) + ", got " +
                std::to_string(params_.layers[l].in_dim()) + "->" +
                std::to_string(params_.layers[l].out_dim()));
        }
    }
}

const std::vector<std::size_t>& ClassifierModel::layer_widths() { return kClassifierWidths; }

std::vector<LayerSpec> ClassifierModel::layer_specs() {
    std::vector<LayerSpec> specs;
    for (std::size_t l = 0; l + 1 < kClassifierWidths.size(); ++l) {
        const bool last = l + 2 == kClassifierWidths.size();
        specs.push_back({kClassifierWidths[l], kClassifierWidths[l + 1],
                         last ? Activation::linear : Activation::relu});
    }
    return specs;
}

ClassifierTrainResult train_classifier(const RealMatrix& x, const std::vector<int>& labels,
                                       const TrainConfig& cfg) {
    if (x.cols() != kClassifierWidths.front()) {
        throw std::invalid_argument("train_classifier: input must have " +
                                    std::to_string(kClassifierWidths.front()) +
                                    " columns, got " + std::to_string(x.cols()));
    }
    NetworkParams net = init_network(ClassifierModel::layer_specs(), cfg.seed);
    auto result = train(net, x, Target(labels), cfg);
    return {ClassifierModel(std::move(net)), std::move(result.loss_history)};
}

RealMatrix predict_proba(const ClassifierModel& model, const RealMatrix& x) {
    if (x.cols() != kClassifierWidths.front()) {
        throw std::invalid_argument("predict_proba: input must have " +
                                    std::to_string(kClassifierWidths.front()) +
                                    " columns, got " + std::to_string(x.cols()));
    }
    return softmax(forward(model.params(), x).output());
}

std::vector<int> decide(const RealMatrix& probs, Threshold t) {
    if (probs.cols() != 2) {
        throw std::invalid_argument("decide: expected an n-by-2 probability matrix, got " +
                                    std::to_string(probs.cols()) + " columns");
    }
    std::vector<int> labels(probs.rows());
    for (std::size_t r = 0; r < probs.rows(); ++r) {
        const double p_fraud = probs.at(r, 1);
        if (!std::isfinite(p_fraud) || p_fraud < 0.0 || p_fraud > 1.0 + 1e-9) {
            throw std::invalid_argument("decide: row " + std::to_string(r) +
                                        " is not a probability row");
        }
        labels[r] = p_fraud >= t.value() ? 1 : 0;
    }
    return labels;
}

void save_classifier(const ClassifierModel& model, const std::string& path) {
    save_network_file(model.params(), path);
}

ClassifierModel load_classifier(const std::string& path) {
    return ClassifierModel(load_network_file(path));
}

}  // namespace fraudnet
