#include "fraudnet/dae.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>

#include "fraudnet/model_io.hpp"
#include "fraudnet/rng.hpp"

namespace fraudnet {

namespace {

const std::vector<std::size_t> kDaeWidths = {29, 22, 15, 10, 15, 22, 29};

}  // namespace

NoiseKind noise_kind_from_string(const std::string& name) {
    if (name == "gaussian") return NoiseKind::gaussian;
    if (name == "salt_pepper") return NoiseKind::salt_pepper;
    throw std::invalid_argument("unknown noise kind '" + name + "'");
}

std::string to_string(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::gaussian: return "gaussian";
        case NoiseKind::salt_pepper: return "salt_pepper";
    }
    throw std::logic_error("unknown noise kind");
}

void NoiseSpec::validate() const {
    if (sigma < 0.0 || !std::isfinite(sigma)) {
        throw std::invalid_argument("noise sigma must be >= 0");
    }
    if (rate < 0.0 || rate > 1.0 || !std::isfinite(rate)) {
        throw std::invalid_argument("noise rate must be in [0,1]");
    }
}

DaeModel::DaeModel(NetworkParams params, NoiseSpec noise)
    : params_(std::move(params)), noise_(noise) {
    params_.validate();
    noise_.validate();
    const auto& widths = layer_widths();
    if (params_.layers.size() != widths.size() - 1) {
        throw std::invalid_argument("autoencoder must have " +
                                    std::to_string(widths.size() - 1) + " layers, got " +
                                    std::to_string(params_.layers.size()));
    }
    for (std::size_t l = 0; l < params_.layers.size(); ++l) {
        if (params_.layers[l].in_dim() != widths[l] ||
            params_.layers[l].out_dim() != widths[l + 1]) {
            throw std::invalid_argument(
                "autoencoder layer " + std::to_string(l) + " must be " +
                std::to_string(widths[l]) + "->" + std::to_string(widths[l + 1]) + ", got " +
                std::to_string(params_.layers[l].in_dim()) + "->" +
                std::to_string(params_.layers[l].out_dim()));
        }
    }
}

const std::vector<std::size_t>& DaeModel::layer_widths() { return kDaeWidths; }

std::vector<LayerSpec> DaeModel::layer_specs() {
    std::vector<LayerSpec> specs;
    for (std::size_t l = 0; l + 1 < kDaeWidths.size(); ++l) {
        const bool last = l + 2 == kDaeWidths.size();
        specs.push_back({kDaeWidths[l], kDaeWidths[l + 1],
                         last ? Activation::linear : Activation::relu});
    }
    return specs;
}

RealMatrix corrupt(const RealMatrix& x, const NoiseSpec& noise) {
    noise.validate();
    RealMatrix out = x;
    auto rng = seeded_rng(noise.seed, rng_stream::corrupt);
    if (noise.kind == NoiseKind::gaussian) {
        if (noise.sigma == 0.0) return out;
        std::normal_distribution<double> gaussian(0.0, noise.sigma);
        for (double& v : out.data()) v += gaussian(rng);
        return out;
    }

    // Salt & pepper: extremes are taken per column of the given matrix.
    std::vector<double> col_min(x.cols()), col_max(x.cols());
    for (std::size_t c = 0; c < x.cols(); ++c) {
        col_min[c] = col_max[c] = x.at(0, c);
    }
    for (std::size_t r = 1; r < x.rows(); ++r) {
        const double* row = x.row_ptr(r);
        for (std::size_t c = 0; c < x.cols(); ++c) {
            col_min[c] = std::min(col_min[c], row[c]);
            col_max[c] = std::max(col_max[c], row[c]);
        }
    }
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (std::size_t r = 0; r < out.rows(); ++r) {
        double* row = out.row_ptr(r);
        for (std::size_t c = 0; c < out.cols(); ++c) {
            if (coin(rng) < noise.rate) {
                row[c] = coin(rng) < 0.5 ? col_min[c] : col_max[c];
            }
        }
    }
    return out;
}

DaeTrainResult train_dae(const RealMatrix& clean, const NoiseSpec& noise, const TrainConfig& cfg) {
    if (clean.cols() != kDaeWidths.front()) {
        throw std::invalid_argument("train_dae: input must have " +
                                    std::to_string(kDaeWidths.front()) + " columns, got " +
                                    std::to_string(clean.cols()));
    }
    if (clean.rows() == 0) {
        throw std::invalid_argument("train_dae: empty training matrix");
    }
    if (cfg.epochs == 0 || cfg.batch_size == 0 || cfg.learning_rate <= 0.0) {
        throw std::invalid_argument("train_dae: epochs, batch_size and learning_rate must be positive");
    }
    noise.validate();

    NetworkParams net = init_network(DaeModel::layer_specs(), cfg.seed);
    auto rng = seeded_rng(cfg.seed, rng_stream::train);
    const Target target = clean;

    std::vector<double> history;
    history.reserve(cfg.epochs);
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        NoiseSpec epoch_noise = noise;
        epoch_noise.seed = noise.seed + epoch;
        const RealMatrix corrupted = corrupt(clean, epoch_noise);
        const double loss =
            train_epoch(net, corrupted, target, cfg.batch_size, cfg.learning_rate, rng);
        if (!std::isfinite(loss)) {
            throw std::runtime_error("train_dae: loss diverged at epoch " + std::to_string(epoch));
        }
        history.push_back(loss);
    }
    return {DaeModel(std::move(net), noise), std::move(history)};
}

RealMatrix denoise(const DaeModel& model, const RealMatrix& x) {
    if (x.cols() != kDaeWidths.front()) {
        throw std::invalid_argument("denoise: input must have " +
                                    std::to_string(kDaeWidths.front()) + " columns, got " +
                                    std::to_string(x.cols()));
    }
    return forward(model.params(), x).output();
}

void save_dae(const DaeModel& model, const std::string& path) {
    std::ofstream file(path);
    if (!file) {
        throw std::runtime_error("cannot write model file: " + path);
    }
    char buf[40];
    file << "fraudnet-dae " << kModelFormatVersion << '\n';
    file << "noise " << to_string(model.noise().kind) << ' ';
    std::snprintf(buf, sizeof(buf), "%.17g", model.noise().sigma);
    file << buf << ' ';
    std::snprintf(buf, sizeof(buf), "%.17g", model.noise().rate);
    file << buf << ' ' << model.noise().seed << '\n';
    save_network(model.params(), file);
    if (!file) {
        throw std::runtime_error("write failed: " + path);
    }
}

DaeModel load_dae(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw std::runtime_error("cannot open model file: " + path);
    }
    std::string magic;
    int version = 0;
    if (!(file >> magic >> version)) {
        throw std::runtime_error("model file is empty or has no header: " + path);
    }
    if (magic != "fraudnet-dae") {
        throw std::runtime_error("not an autoencoder model file (bad magic '" + magic + "')");
    }
    if (version != kModelFormatVersion) {
        throw std::runtime_error("unsupported model format version " + std::to_string(version) +
                                 " (this build reads version " +
                                 std::to_string(kModelFormatVersion) + ")");
    }
    std::string keyword, kind;
    NoiseSpec noise;
    if (!(file >> keyword >> kind >> noise.sigma >> noise.rate >> noise.seed) ||
        keyword != "noise") {
        throw std::runtime_error("model file truncated while reading noise spec: " + path);
    }
    noise.kind = noise_kind_from_string(kind);
    return DaeModel(load_network(file), noise);
}

}  // namespace fraudnet
