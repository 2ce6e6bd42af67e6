// fraudnet command-line interface: staged pipeline subcommands plus the
// end-to-end model-1 (baseline) and model-2 (oversample + denoise) runs.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fraudnet/classifier.hpp"
#include "fraudnet/dae.hpp"
#include "fraudnet/dataset.hpp"
#include "fraudnet/metrics.hpp"
#include "fraudnet/model_io.hpp"
#include "fraudnet/pipeline.hpp"
#include "fraudnet/smote.hpp"

namespace {

using namespace fraudnet;

struct GlobalFlags {
    std::string config_path;
    std::uint64_t seed = 0;
    std::string out_dir;
    CLI::Option* config_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* out_dir_opt = nullptr;
};

// String-valued pipeline overrides; values are validated by set_config_key so
// the CLI and the config file share one parser.
struct PipelineFlags {
    std::string input;
    std::vector<std::pair<std::string, std::string>> values;  // key -> raw value
    std::vector<CLI::Option*> options;                        // parallel to values
    std::vector<double> thresholds;
    CLI::Option* input_opt = nullptr;
    CLI::Option* thresholds_opt = nullptr;

    void bind(CLI::App* cmd) {
        input_opt = cmd->add_option("--input", input, "Input CSV (transaction or feature schema)");
        thresholds_opt = cmd->add_option("--threshold", thresholds,
                                         "Decision threshold (repeatable), default 0.2..0.6");
        values.reserve(16);  // CLI11 keeps references into the vector
        const auto add = [&](const std::string& key, const std::string& flag,
                             const std::string& help) {
            values.emplace_back(key, std::string{});
            options.push_back(cmd->add_option(flag, values.back().second, help));
        };
        add("test_fraction", "--test-fraction", "Test split proportion in (0,1)");
        add("smote_k", "--smote-k", "SMOTE neighbor count");
        add("smote_target", "--smote-target", "Minority count after oversampling (0 = balance)");
        add("noise_kind", "--noise-kind", "gaussian or salt_pepper");
        add("sigma", "--sigma", "Gaussian noise stddev");
        add("rate", "--rate", "Salt & pepper corruption probability");
        add("dae_epochs", "--dae-epochs", "Autoencoder training epochs");
        add("dae_batch_size", "--dae-batch-size", "Autoencoder mini-batch size");
        add("dae_learning_rate", "--dae-learning-rate", "Autoencoder SGD learning rate");
        add("clf_epochs", "--clf-epochs", "Classifier training epochs");
        add("clf_batch_size", "--clf-batch-size", "Classifier mini-batch size");
        add("clf_learning_rate", "--clf-learning-rate", "Classifier SGD learning rate");
    }

    PipelineConfig build(const GlobalFlags& globals) const {
        PipelineConfig cfg;
        if (globals.config_opt->count() > 0) {
            cfg = parse_config_file(globals.config_path);
        }
        if (globals.seed_opt->count() > 0) cfg.seed = globals.seed;
        if (globals.out_dir_opt->count() > 0) cfg.out_dir = globals.out_dir;
        if (input_opt->count() > 0) cfg.input_path = input;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (options[i]->count() > 0) set_config_key(cfg, values[i].first, values[i].second);
        }
        if (thresholds_opt->count() > 0) cfg.thresholds = thresholds;
        return cfg;
    }
};

TrainConfig train_config_from(std::size_t epochs, std::size_t batch_size, double learning_rate,
                              std::uint64_t seed) {
    TrainConfig cfg;
    cfg.epochs = epochs;
    cfg.batch_size = batch_size;
    cfg.learning_rate = learning_rate;
    cfg.seed = seed;
    return cfg;
}

void print_report(const PipelineReport& report, const PipelineConfig& cfg) {
    std::cout << report.text();
    std::cout << "\nmodels and reports written under " << cfg.out_dir << '/' << report.model_name
              << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Imbalanced-transaction classification pipeline: SMOTE oversampling, "
                 "denoising autoencoder and a softmax classifier with threshold sweeps"};
    app.require_subcommand(1);

    GlobalFlags globals;
    globals.config_opt =
        app.add_option("--config", globals.config_path, "Config file with key = value lines");
    globals.seed_opt = app.add_option("--seed", globals.seed, "Master seed (default 0)");
    globals.out_dir_opt = app.add_option("--out-dir", globals.out_dir, "Output directory");

    int exit_code = 0;
    const auto fail = [&](const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        exit_code = 1;
    };

    // synth
    auto* synth = app.add_subcommand("synth", "Generate a synthetic imbalanced dataset CSV");
    synth->fallthrough();
    struct {
        std::size_t n = 20000;
        double minority_fraction = 0.005;
        std::size_t d = 29;
        double separation = 3.0;
        std::string out;
    } synth_args;
    synth->add_option("--n", synth_args.n, "Total rows")->capture_default_str();
    synth->add_option("--minority-fraction", synth_args.minority_fraction,
                      "Minority proportion in (0,0.5)")->capture_default_str();
    synth->add_option("--d", synth_args.d, "Feature dimension")->capture_default_str();
    synth->add_option("--separation", synth_args.separation,
                      "Distance between class means")->capture_default_str();
    synth->add_option("--out", synth_args.out, "Output CSV path")->required();
    synth->callback([&] {
        try {
            auto ds = generate_synthetic(synth_args.n, synth_args.minority_fraction, synth_args.d,
                                         synth_args.separation, globals.seed);
            if (synth_args.d == 29) ds = to_transaction_schema(ds);
            save_csv(ds, synth_args.out);
            std::cout << "wrote " << ds.row_count() << " rows (" << ds.count_label(1)
                      << " minority) to " << synth_args.out << '\n';
        } catch (const std::exception& e) {
            fail(e);
        }
    });

    // preprocess
    auto* prep = app.add_subcommand("preprocess", "Drop Time and z-score Amount");
    prep->fallthrough();
    struct {
        std::string input, output;
    } prep_args;
    prep->add_option("--input", prep_args.input, "Input CSV")->required();
    prep->add_option("--output", prep_args.output, "Output CSV")->required();
    prep->callback([&] {
        try {
            const auto ds = preprocess(load_auto(prep_args.input));
            save_csv(ds, prep_args.output);
            std::cout << "wrote " << ds.row_count() << " rows x " << ds.feature_count()
                      << " columns to " << prep_args.output << '\n';
        } catch (const std::exception& e) {
            fail(e);
        }
    });

    // oversample
    auto* over = app.add_subcommand("oversample", "SMOTE the minority class to balance");
    over->fallthrough();
    struct {
        std::string input, output;
        std::size_t k = 5;
        std::size_t target = 0;
    } over_args;
    over->add_option("--input", over_args.input, "Input feature CSV")->required();
    over->add_option("--output", over_args.output, "Output CSV")->required();
    over->add_option("--smote-k", over_args.k, "Neighbor count")->capture_default_str();
    over->add_option("--target", over_args.target,
                     "Minority count after oversampling (0 = balance to majority)");
    over->callback([&] {
        try {
            const auto ds = load_auto(over_args.input);
            SmoteConfig cfg;
            cfg.k = over_args.k;
            cfg.seed = globals.seed;
            cfg.target_minority_count =
                over_args.target != 0 ? over_args.target : ds.count_label(0);
            const auto balanced = smote(ds, cfg);
            save_csv(balanced, over_args.output);
            std::cout << "wrote " << balanced.row_count() << " rows ("
                      << balanced.count_label(0) << " normal, " << balanced.count_label(1)
                      << " fraud) to " << over_args.output << '\n';
        } catch (const std::exception& e) {
            fail(e);
        }
    });

    // train-dae
    auto* tdae = app.add_subcommand("train-dae", "Train the denoising autoencoder");
    tdae->fallthrough();
    struct {
        std::string input, model_out;
        std::string noise_kind = "gaussian";
        double sigma = 0.5;
        double rate = 0.1;
        std::size_t epochs = 50;
        std::size_t batch_size = 128;
        double learning_rate = 0.01;
    } tdae_args;
    tdae->add_option("--input", tdae_args.input, "Training feature CSV (29 columns)")->required();
    tdae->add_option("--model-out", tdae_args.model_out, "Model file to write")->required();
    tdae->add_option("--noise-kind", tdae_args.noise_kind, "gaussian or salt_pepper")
        ->capture_default_str();
    tdae->add_option("--sigma", tdae_args.sigma, "Gaussian stddev")->capture_default_str();
    tdae->add_option("--rate", tdae_args.rate, "Salt & pepper probability")->capture_default_str();
    tdae->add_option("--epochs", tdae_args.epochs, "Epochs")->capture_default_str();
    tdae->add_option("--batch-size", tdae_args.batch_size, "Mini-batch size")->capture_default_str();
    tdae->add_option("--learning-rate", tdae_args.learning_rate, "SGD step size")
        ->capture_default_str();
    tdae->callback([&] {
        try {
            const auto ds = load_auto(tdae_args.input);
            NoiseSpec noise;
            noise.kind = noise_kind_from_string(tdae_args.noise_kind);
            noise.sigma = tdae_args.sigma;
            noise.rate = tdae_args.rate;
            noise.seed = globals.seed;
            const auto result =
                train_dae(ds.features, noise,
                          train_config_from(tdae_args.epochs, tdae_args.batch_size,
                                            tdae_args.learning_rate, globals.seed));
            save_dae(result.model, tdae_args.model_out);
            std::cout << "final reconstruction loss " << result.loss_history.back() << ", model in "
                      << tdae_args.model_out << '\n';
        } catch (const std::exception& e) {
            fail(e);
        }
    });

    // train-clf
    auto* tclf = app.add_subcommand("train-clf", "Train the softmax classifier");
    tclf->fallthrough();
    struct {
        std::string input, model_out, dae_path;
        std::size_t epochs = 50;
        std::size_t batch_size = 128;
        double learning_rate = 0.01;
    } tclf_args;
    tclf->add_option("--input", tclf_args.input, "Training feature CSV (29 columns)")->required();
    tclf->add_option("--model-out", tclf_args.model_out, "Model file to write")->required();
    tclf->add_option("--dae", tclf_args.dae_path, "Denoise features through this model first");
    tclf->add_option("--epochs", tclf_args.epochs, "Epochs")->capture_default_str();
    tclf->add_option("--batch-size", tclf_args.batch_size, "Mini-batch size")->capture_default_str();
    tclf->add_option("--learning-rate", tclf_args.learning_rate, "SGD step size")
        ->capture_default_str();
    tclf->callback([&] {
        try {
            const auto ds = load_auto(tclf_args.input);
            RealMatrix features = ds.features;
            if (!tclf_args.dae_path.empty()) {
                features = denoise(load_dae(tclf_args.dae_path), features);
            }
            const auto result =
                train_classifier(features, ds.labels,
                                 train_config_from(tclf_args.epochs, tclf_args.batch_size,
                                                   tclf_args.learning_rate, globals.seed));
            save_classifier(result.model, tclf_args.model_out);
            std::cout << "final training loss " << result.loss_history.back() << ", model in "
                      << tclf_args.model_out << '\n';
        } catch (const std::exception& e) {
            fail(e);
        }
    });

    // evaluate
    auto* eval = app.add_subcommand("evaluate", "Threshold sweep of a trained classifier");
    eval->fallthrough();
    struct {
        std::string input, classifier_path, dae_path, report_dir;
        std::vector<double> thresholds;
    } eval_args;
    eval->add_option("--input", eval_args.input, "Evaluation feature CSV")->required();
    eval->add_option("--classifier", eval_args.classifier_path, "Classifier model file")
        ->required();
    eval->add_option("--dae", eval_args.dae_path, "Denoise inputs through this model first");
    eval->add_option("--threshold", eval_args.thresholds,
                     "Decision threshold (repeatable), default 0.2..0.6");
    eval->add_option("--report-dir", eval_args.report_dir,
                     "Directory for report.csv and report.txt");
    eval->callback([&] {
        try {
            const auto ds = load_auto(eval_args.input);
            const auto model = load_classifier(eval_args.classifier_path);
            std::optional<DaeModel> dae;
            if (!eval_args.dae_path.empty()) dae = load_dae(eval_args.dae_path);
            const std::vector<double> thresholds =
                eval_args.thresholds.empty() ? std::vector<double>{0.2, 0.3, 0.4, 0.5, 0.6}
                                             : eval_args.thresholds;
            const auto sweep = threshold_sweep(model, dae ? &*dae : nullptr, ds.features,
                                               ds.labels, thresholds);
            std::cout << sweep_table(sweep);
            if (!eval_args.report_dir.empty()) {
                const std::filesystem::path dir(eval_args.report_dir);
                std::filesystem::create_directories(dir);
                std::ofstream csv(dir / "report.csv");
                csv << sweep_csv(sweep);
                std::ofstream txt(dir / "report.txt");
                txt << sweep_table(sweep);
                if (!csv || !txt) {
                    throw std::runtime_error("cannot write reports under " + eval_args.report_dir);
                }
            }
        } catch (const std::exception& e) {
            fail(e);
        }
    });

    // run-model1 / run-model2
    auto* model1 = app.add_subcommand(
        "run-model1", "Baseline: classifier on the imbalanced split, no SMOTE, no autoencoder");
    model1->fallthrough();
    PipelineFlags model1_flags;
    model1_flags.bind(model1);
    model1->callback([&] {
        try {
            const auto cfg = model1_flags.build(globals);
            print_report(run_model1(cfg), cfg);
        } catch (const std::exception& e) {
            fail(e);
        }
    });

    auto* model2 = app.add_subcommand(
        "run-model2", "Full pipeline: SMOTE, denoising autoencoder, classifier");
    model2->fallthrough();
    PipelineFlags model2_flags;
    model2_flags.bind(model2);
    model2->callback([&] {
        try {
            const auto cfg = model2_flags.build(globals);
            print_report(run_model2(cfg), cfg);
        } catch (const std::exception& e) {
            fail(e);
        }
    });

    CLI11_PARSE(app, argc, argv);
    return exit_code;
}
