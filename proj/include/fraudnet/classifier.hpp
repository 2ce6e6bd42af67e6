#pragma once

#include <string>
#include <vector>

#include "fraudnet/network.hpp"

namespace fraudnet {

// Two-class probability threshold in [0,1].
class Threshold {
public:
    explicit Threshold(double value);
    double value() const { return value_; }

private:
    double value_;
};

// Fully connected two-class classifier over 29-wide feature rows, layer widths
// 29-22-15-10-5-2. The final layer emits logits; softmax turns them into
// (P(normal), P(fraud)) rows.
class ClassifierModel {
public:
    explicit ClassifierModel(NetworkParams params);  // throws unless widths match

    static const std::vector<std::size_t>& layer_widths();
    static std::vector<LayerSpec> layer_specs();  // relu hidden, linear logits

    const NetworkParams& params() const { return params_; }

private:
    NetworkParams params_;
};

struct ClassifierTrainResult {
    ClassifierModel model;
    std::vector<double> loss_history;
};

// Softmax cross-entropy training on labels in {0,1}; 1 marks fraud.
ClassifierTrainResult train_classifier(const RealMatrix& x, const std::vector<int>& labels,
                                       const TrainConfig& cfg);

// n-by-2 matrix of class probabilities; each row sums to 1.
RealMatrix predict_proba(const ClassifierModel& model, const RealMatrix& x);

// Row i is labeled fraud (1) iff P(fraud) >= t, normal (0) otherwise.
std::vector<int> decide(const RealMatrix& probs, Threshold t);

void save_classifier(const ClassifierModel& model, const std::string& path);
ClassifierModel load_classifier(const std::string& path);

}  // namespace fraudnet
