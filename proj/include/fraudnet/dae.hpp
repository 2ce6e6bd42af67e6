#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fraudnet/network.hpp"

namespace fraudnet {

enum class NoiseKind { gaussian, salt_pepper };

NoiseKind noise_kind_from_string(const std::string& name);
std::string to_string(NoiseKind kind);

struct NoiseSpec {
    NoiseKind kind = NoiseKind::gaussian;
    double sigma = 0.5;  // gaussian stddev, >= 0
    double rate = 0.1;   // salt & pepper corruption probability, in [0,1]
    std::uint64_t seed = 0;

    void validate() const;
};

// Denoising autoencoder over 29-wide feature rows, layer widths
// 29-22-15-10-15-22-29. Trained to reconstruct clean inputs from corrupted ones.
class DaeModel {
public:
    DaeModel(NetworkParams params, NoiseSpec noise);  // throws unless widths match

    static const std::vector<std::size_t>& layer_widths();
    static std::vector<LayerSpec> layer_specs();  // relu hidden, linear output

    const NetworkParams& params() const { return params_; }
    const NoiseSpec& noise() const { return noise_; }

private:
    NetworkParams params_;
    NoiseSpec noise_;
};

// Seeded corruption of a copy of x. Gaussian adds N(0, sigma^2) per entry;
// salt & pepper replaces each entry, with probability rate, by its column's
// min or max (equal odds).
RealMatrix corrupt(const RealMatrix& x, const NoiseSpec& noise);

struct DaeTrainResult {
    DaeModel model;
    std::vector<double> loss_history;  // mean reconstruction loss per epoch
};

// Trains against freshly corrupted inputs every epoch (corruption seed is
// noise.seed + epoch), with the clean rows as reconstruction targets.
DaeTrainResult train_dae(const RealMatrix& clean, const NoiseSpec& noise, const TrainConfig& cfg);

// Forward pass through the trained network; shape is preserved.
RealMatrix denoise(const DaeModel& model, const RealMatrix& x);

// Network serialization plus a noise-spec record.
void save_dae(const DaeModel& model, const std::string& path);
DaeModel load_dae(const std::string& path);

}  // namespace fraudnet
