#pragma once

#include <string>
#include <vector>

#include "fraudnet/classifier.hpp"
#include "fraudnet/dae.hpp"

namespace fraudnet {

// Two-class counts with fraud (label 1) as the positive class.
struct ConfusionMatrix {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tn = 0;

    std::size_t total() const { return tp + fp + fn + tn; }
};

ConfusionMatrix confusion(const std::vector<int>& pred, const std::vector<int>& actual);

// tp / (tp + fn). Throws when the evaluation set has no positive samples:
// an undefined recall must never read as 0.
double recall(const ConfusionMatrix& cm);

// (tp + tn) / total.
double accuracy(const ConfusionMatrix& cm);

struct SweepRow {
    double threshold = 0.0;
    double recall = 0.0;
    double accuracy = 0.0;
};

// Optionally denoises x, predicts probabilities once, then applies each
// threshold in the given order.
std::vector<SweepRow> threshold_sweep(const ClassifierModel& model, const DaeModel* dae,
                                      const RealMatrix& x, const std::vector<int>& y,
                                      const std::vector<double>& thresholds);

// Machine-readable report: `threshold,recall,accuracy` with proportions.
std::string sweep_csv(const std::vector<SweepRow>& rows);

// Aligned human-readable table with percentages to two decimal places.
std::string sweep_table(const std::vector<SweepRow>& rows);

}  // namespace fraudnet
