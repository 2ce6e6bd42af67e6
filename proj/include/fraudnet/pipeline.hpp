#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fraudnet/classifier.hpp"
#include "fraudnet/dae.hpp"
#include "fraudnet/dataset.hpp"
#include "fraudnet/metrics.hpp"
#include "fraudnet/smote.hpp"

namespace fraudnet {

// Everything a pipeline run needs, loadable from a flat key=value config file.
// The master seed drives every stage: split, oversampling, noise and both
// training runs use seeds derived from it, so one (config, seed) pair pins the
// whole run.
struct PipelineConfig {
    std::string input_path;
    double test_fraction = 0.2;
    std::uint64_t seed = 0;
    std::size_t smote_k = 5;
    std::size_t smote_target = 0;  // 0 balances the minority up to the majority count
    NoiseSpec noise;
    TrainConfig dae_train;
    TrainConfig classifier_train;
    std::vector<double> thresholds = {0.2, 0.3, 0.4, 0.5, 0.6};
    std::string out_dir = "out";

    void validate() const;
};

// Applies one config entry; throws on unknown keys or bad values.
void set_config_key(PipelineConfig& cfg, const std::string& key, const std::string& value);

// Flat `key = value` file, `#` starts a comment.
PipelineConfig parse_config_file(const std::string& path);

struct PipelineReport {
    std::string model_name;
    std::vector<std::string> stages;  // executed stage sequence
    std::vector<std::pair<std::string, std::string>> settings;
    std::vector<SweepRow> sweep;

    std::string setting(const std::string& key) const;  // throws if absent
    std::string text() const;  // provenance plus both result tables
};

// Baseline: classifier trained directly on the imbalanced training split,
// no oversampling and no autoencoder. Persists the model and reports under
// <out_dir>/model1/.
PipelineReport run_model1(const PipelineConfig& cfg);

// Full pipeline: oversample the training split to balance, train the
// autoencoder on it, denoise, train the classifier on denoised features and
// evaluate with test features denoised at prediction time. Persists both
// models and reports under <out_dir>/model2/.
PipelineReport run_model2(const PipelineConfig& cfg);

void save_models(const std::string& dir, const DaeModel* dae, const ClassifierModel& classifier);

struct LoadedModels {
    std::optional<DaeModel> dae;
    ClassifierModel classifier;
};

// Reads classifier.model and, when present, dae.model from dir.
LoadedModels load_models(const std::string& dir);

}  // namespace fraudnet
