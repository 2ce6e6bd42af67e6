#include "fraudnet/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fraudnet {

namespace {

// Sub-seed offsets derived from the master seed.
constexpr std::uint64_t kSplitSeedOffset = 0;
constexpr std::uint64_t kSmoteSeedOffset = 1;
constexpr std::uint64_t kNoiseSeedOffset = 2;
constexpr std::uint64_t kDaeSeedOffset = 3;
constexpr std::uint64_t kClassifierSeedOffset = 4;

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    const auto end = s.find_last_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& value, const std::string& key) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': '" + value + "' is not a number");
    }
}

std::uint64_t parse_uint(const std::string& value, const std::string& key) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw std::invalid_argument("config key '" + key + "': '" + value +
                                    "' is not a nonnegative integer");
    }
    return v;
}

std::vector<double> parse_threshold_list(const std::string& value, const std::string& key) {
    std::vector<double> thresholds;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const double t = parse_double(trim(item), key);
        if (!(t >= 0.0 && t <= 1.0)) {
            throw std::invalid_argument("config key '" + key + "': threshold " + trim(item) +
                                        " is outside [0,1]");
        }
        thresholds.push_back(t);
    }
    if (thresholds.empty()) {
        throw std::invalid_argument("config key '" + key + "': empty threshold list");
    }
    return thresholds;
}

std::string format_double(double v) {
    char buf[40];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);  // shortest round-trip
    return std::string(buf, end);
}

bool has_transaction_columns(const LabeledDataset& ds) {
    const auto has = [&](const char* name) {
        return std::find(ds.column_names.begin(), ds.column_names.end(), name) !=
               ds.column_names.end();
    };
    return has("Time") && has("Amount");
}

template <typename F>
auto run_stage(PipelineReport& report, const std::string& name, F&& fn) {
    try {
        auto result = fn();
        report.stages.push_back(name);
        return result;
    } catch (const std::exception& e) {
        throw std::runtime_error("stage " + name + ": " + e.what());
    }
}

void record_common_settings(PipelineReport& report, const PipelineConfig& cfg) {
    auto& s = report.settings;
    s.emplace_back("input", cfg.input_path);
    s.emplace_back("test_fraction", format_double(cfg.test_fraction));
    s.emplace_back("seed", std::to_string(cfg.seed));
    std::string thresholds;
    for (double t : cfg.thresholds) {
        if (!thresholds.empty()) thresholds += ',';
        thresholds += format_double(t);
    }
    s.emplace_back("thresholds", thresholds);
    s.emplace_back("clf_epochs", std::to_string(cfg.classifier_train.epochs));
    s.emplace_back("clf_batch_size", std::to_string(cfg.classifier_train.batch_size));
    s.emplace_back("clf_learning_rate", format_double(cfg.classifier_train.learning_rate));
}

void record_model2_settings(PipelineReport& report, const PipelineConfig& cfg) {
    auto& s = report.settings;
    s.emplace_back("smote_k", std::to_string(cfg.smote_k));
    s.emplace_back("smote_target", std::to_string(cfg.smote_target));
    s.emplace_back("noise_kind", to_string(cfg.noise.kind));
    s.emplace_back("sigma", format_double(cfg.noise.sigma));
    s.emplace_back("rate", format_double(cfg.noise.rate));
    s.emplace_back("dae_epochs", std::to_string(cfg.dae_train.epochs));
    s.emplace_back("dae_batch_size", std::to_string(cfg.dae_train.batch_size));
    s.emplace_back("dae_learning_rate", format_double(cfg.dae_train.learning_rate));
}

// load -> optional preprocess -> split, shared by both models.
struct PreparedData {
    LabeledDataset train;
    LabeledDataset test;
};

PreparedData prepare(PipelineReport& report, const PipelineConfig& cfg) {
    LabeledDataset data = run_stage(report, "load", [&] { return load_auto(cfg.input_path); });
    report.settings.emplace_back("rows_total", std::to_string(data.row_count()));

    if (has_transaction_columns(data)) {
        data = run_stage(report, "preprocess", [&] { return preprocess(data); });
    } else {
        // Feature files are already in model space; nothing to drop or rescale.
        report.stages.push_back("preprocess (skipped: no Time/Amount columns)");
    }

    SplitSpec spec;
    spec.test_fraction = cfg.test_fraction;
    spec.seed = cfg.seed + kSplitSeedOffset;
    auto parts = run_stage(report, "split", [&] { return split(data, spec); });

    PreparedData prepared{std::move(parts.first), std::move(parts.second)};
    auto& s = report.settings;
    s.emplace_back("train_rows", std::to_string(prepared.train.row_count()));
    s.emplace_back("test_rows", std::to_string(prepared.test.row_count()));
    s.emplace_back("train_normal", std::to_string(prepared.train.count_label(0)));
    s.emplace_back("train_fraud", std::to_string(prepared.train.count_label(1)));
    return prepared;
}

void persist_report(const PipelineReport& report, const std::filesystem::path& dir) {
    const auto write = [](const std::filesystem::path& path, const std::string& content) {
        std::ofstream file(path);
        if (!file) {
            throw std::runtime_error("cannot write report file: " + path.string());
        }
        file << content;
        if (!file) {
            throw std::runtime_error("write failed: " + path.string());
        }
    };
    write(dir / "report.csv", sweep_csv(report.sweep));
    write(dir / "report.txt", report.text());
}

}  // namespace

void PipelineConfig::validate() const {
    if (input_path.empty()) {
        throw std::invalid_argument("no input path configured");
    }
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw std::invalid_argument("test_fraction must be in (0,1)");
    }
    if (smote_k < 1) {
        throw std::invalid_argument("smote_k must be >= 1");
    }
    if (thresholds.empty()) {
        throw std::invalid_argument("threshold list is empty");
    }
    for (double t : thresholds) {
        Threshold check(t);  // range check
        (void)check;
    }
    noise.validate();
}

void set_config_key(PipelineConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "input") {
        cfg.input_path = value;
    } else if (key == "test_fraction") {
        cfg.test_fraction = parse_double(value, key);
    } else if (key == "seed") {
        cfg.seed = parse_uint(value, key);
    } else if (key == "smote_k") {
        cfg.smote_k = static_cast<std::size_t>(parse_uint(value, key));
    } else if (key == "smote_target") {
        cfg.smote_target = static_cast<std::size_t>(parse_uint(value, key));
    } else if (key == "noise_kind") {
        cfg.noise.kind = noise_kind_from_string(value);
    } else if (key == "sigma") {
        cfg.noise.sigma = parse_double(value, key);
    } else if (key == "rate") {
        cfg.noise.rate = parse_double(value, key);
    } else if (key == "dae_epochs") {
        cfg.dae_train.epochs = static_cast<std::size_t>(parse_uint(value, key));
    } else if (key == "dae_batch_size") {
        cfg.dae_train.batch_size = static_cast<std::size_t>(parse_uint(value, key));
    } else if (key == "dae_learning_rate") {
        cfg.dae_train.learning_rate = parse_double(value, key);
    } else if (key == "clf_epochs") {
        cfg.classifier_train.epochs = static_cast<std::size_t>(parse_uint(value, key));
    } else if (key == "clf_batch_size") {
        cfg.classifier_train.batch_size = static_cast<std::size_t>(parse_uint(value, key));
    } else if (key == "clf_learning_rate") {
        cfg.classifier_train.learning_rate = parse_double(value, key);
    } else if (key == "thresholds") {
        cfg.thresholds = parse_threshold_list(value, key);
    } else if (key == "out_dir") {
        cfg.out_dir = value;
    } else {
        throw std::invalid_argument("unknown config key '" + key + "'");
    }
}

PipelineConfig parse_config_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw std::runtime_error("cannot open config file: " + path);
    }
    PipelineConfig cfg;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(file, line)) {
        ++line_number;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error(path + ":" + std::to_string(line_number) +
                                     ": expected `key = value`");
        }
        try {
            set_config_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(line_number) + ": " + e.what());
        }
    }
    return cfg;
}

std::string PipelineReport::setting(const std::string& key) const {
    for (const auto& [k, v] : settings) {
        if (k == key) return v;
    }
    throw std::out_of_range("report has no setting '" + key + "'");
}

std::string PipelineReport::text() const {
    std::ostringstream os;
    os << "fraudnet run report\n";
    os << "model: " << model_name << "\n\n";
    os << "stages:\n";
    for (const auto& stage : stages) os << "  " << stage << '\n';
    os << "\nsettings:\n";
    for (const auto& [key, value] : settings) os << "  " << key << " = " << value << '\n';
    os << '\n' << sweep_table(sweep);
    os << '\n' << sweep_csv(sweep);
    return os.str();
}

PipelineReport run_model1(const PipelineConfig& cfg) {
    cfg.validate();
    PipelineReport report;
    report.model_name = "model1";
    record_common_settings(report, cfg);

    auto data = prepare(report, cfg);

    TrainConfig clf_cfg = cfg.classifier_train;
    clf_cfg.seed = cfg.seed + kClassifierSeedOffset;
    auto trained = run_stage(report, "train-classifier", [&] {
        return train_classifier(data.train.features, data.train.labels, clf_cfg);
    });

    report.sweep = run_stage(report, "evaluate", [&] {
        return threshold_sweep(trained.model, nullptr, data.test.features, data.test.labels,
                               cfg.thresholds);
    });

    run_stage(report, "persist", [&] {
        const std::filesystem::path dir = std::filesystem::path(cfg.out_dir) / "model1";
        std::filesystem::create_directories(dir);
        save_models(dir.string(), nullptr, trained.model);
        persist_report(report, dir);
        return 0;
    });
    return report;
}

PipelineReport run_model2(const PipelineConfig& cfg) {
    cfg.validate();
    PipelineReport report;
    report.model_name = "model2";
    record_common_settings(report, cfg);
    record_model2_settings(report, cfg);

    auto data = prepare(report, cfg);

    // The test split must not flow through any training stage.
    const RealMatrix test_features_snapshot = data.test.features;
    const std::vector<int> test_labels_snapshot = data.test.labels;

    SmoteConfig smote_cfg;
    smote_cfg.k = cfg.smote_k;
    smote_cfg.seed = cfg.seed + kSmoteSeedOffset;
    smote_cfg.target_minority_count =
        cfg.smote_target != 0 ? cfg.smote_target : data.train.count_label(0);
    auto balanced = run_stage(report, "oversample", [&] { return smote(data.train, smote_cfg); });
    report.settings.emplace_back("train_normal_after_oversample",
                                 std::to_string(balanced.count_label(0)));
    report.settings.emplace_back("train_fraud_after_oversample",
                                 std::to_string(balanced.count_label(1)));

    if (!(test_features_snapshot == data.test.features) ||
        test_labels_snapshot != data.test.labels) {
        throw std::runtime_error("stage oversample: test split changed during oversampling");
    }

    NoiseSpec noise = cfg.noise;
    noise.seed = cfg.seed + kNoiseSeedOffset;
    TrainConfig dae_cfg = cfg.dae_train;
    dae_cfg.seed = cfg.seed + kDaeSeedOffset;
    auto dae_result = run_stage(report, "train-dae", [&] {
        return train_dae(balanced.features, noise, dae_cfg);
    });

    auto denoised_train = run_stage(report, "denoise-train", [&] {
        return denoise(dae_result.model, balanced.features);
    });

    TrainConfig clf_cfg = cfg.classifier_train;
    clf_cfg.seed = cfg.seed + kClassifierSeedOffset;
    auto trained = run_stage(report, "train-classifier", [&] {
        return train_classifier(denoised_train, balanced.labels, clf_cfg);
    });

    report.sweep = run_stage(report, "evaluate", [&] {
        return threshold_sweep(trained.model, &dae_result.model, data.test.features,
                               data.test.labels, cfg.thresholds);
    });

    run_stage(report, "persist", [&] {
        const std::filesystem::path dir = std::filesystem::path(cfg.out_dir) / "model2";
        std::filesystem::create_directories(dir);
        save_models(dir.string(), &dae_result.model, trained.model);
        persist_report(report, dir);
        return 0;
    });
    return report;
}

void save_models(const std::string& dir, const DaeModel* dae, const ClassifierModel& classifier) {
    const std::filesystem::path base(dir);
    std::filesystem::create_directories(base);
    if (dae != nullptr) {
        save_dae(*dae, (base / "dae.model").string());
    }
    save_classifier(classifier, (base / "classifier.model").string());
}

LoadedModels load_models(const std::string& dir) {
    const std::filesystem::path base(dir);
    std::optional<DaeModel> dae;
    if (std::filesystem::exists(base / "dae.model")) {
        dae = load_dae((base / "dae.model").string());
    }
    return {std::move(dae), load_classifier((base / "classifier.model").string())};
}

}  // namespace fraudnet
