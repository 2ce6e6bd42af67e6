#include "fraudnet/metrics.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace fraudnet {

ConfusionMatrix confusion(const std::vector<int>& pred, const std::vector<int>& actual) {
    if (pred.size() != actual.size()) {
        throw std::invalid_argument("confusion: " + std::to_string(pred.size()) +
                                    " predictions vs " + std::to_string(actual.size()) +
                                    " actuals");
    }
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if ((pred[i] != 0 && pred[i] != 1) || (actual[i] != 0 && actual[i] != 1)) {
            throw std::invalid_argument("confusion: labels must be 0 or 1 (row " +
                                        std::to_string(i) + ")");
        }
        if (pred[i] == 1) {
            actual[i] == 1 ? ++cm.tp : ++cm.fp;
        } else {
            actual[i] == 1 ? ++cm.fn : ++cm.tn;
        }
    }
    return cm;
}

double recall(const ConfusionMatrix& cm) {
    const std::size_t positives = cm.tp + cm.fn;
    if (positives == 0) {
        throw std::runtime_error("recall is undefined: no positive samples in the evaluation set");
    }
    return static_cast<double>(cm.tp) / static_cast<double>(positives);
}

double accuracy(const ConfusionMatrix& cm) {
    if (cm.total() == 0) {
        throw std::runtime_error("accuracy is undefined: empty confusion matrix");
    }
    return static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
}

std::vector<SweepRow> threshold_sweep(const ClassifierModel& model, const DaeModel* dae,
                                      const RealMatrix& x, const std::vector<int>& y,
                                      const std::vector<double>& thresholds) {
    if (thresholds.empty()) {
        throw std::invalid_argument("threshold_sweep: no thresholds given");
    }
    const RealMatrix probs =
        dae != nullptr ? predict_proba(model, denoise(*dae, x)) : predict_proba(model, x);

    std::vector<SweepRow> rows;
    rows.reserve(thresholds.size());
    for (double t : thresholds) {
        const auto pred = decide(probs, Threshold(t));
        const auto cm = confusion(pred, y);
        rows.push_back({t, recall(cm), accuracy(cm)});
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    char buf[64];
    os << "threshold,recall,accuracy\n";
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof(buf), "%.4f,%.6f,%.6f\n", row.threshold, row.recall,
                      row.accuracy);
        os << buf;
    }
    return os.str();
}

std::string sweep_table(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    char buf[64];
    os << "Threshold  Recall Rate  Accuracy\n";
    os << "---------  -----------  --------\n";
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof(buf), "%9.2f  %10.2f%%  %7.2f%%\n", row.threshold,
                      row.recall * 100.0, row.accuracy * 100.0);
        os << buf;
    }
    return os.str();
}

}  // namespace fraudnet
