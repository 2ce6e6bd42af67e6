#include "fraudnet/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fraudnet {

namespace {

constexpr const char* kMagic = "fraudnet-network";

void write_value(std::ostream& os, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    os << buf;
}

double read_value(std::istream& is, const char* what) {
    double v = 0.0;
    if (!(is >> v)) {
        throw std::runtime_error(std::string("model file truncated while reading ") + what);
    }
    return v;
}

}  // namespace

void save_network(const NetworkParams& net, std::ostream& os) {
    net.validate();
    os << kMagic << ' ' << kModelFormatVersion << '\n';
    os << "layers " << net.layers.size() << '\n';
    for (const auto& layer : net.layers) {
        os << "layer " << layer.in_dim() << ' ' << layer.out_dim() << ' '
           << to_string(layer.activation) << '\n';
    }
    for (const auto& layer : net.layers) {
        for (std::size_t r = 0; r < layer.weight.rows(); ++r) {
            for (std::size_t c = 0; c < layer.weight.cols(); ++c) {
                if (c > 0) os << ' ';
                write_value(os, layer.weight.at(r, c));
            }
            os << '\n';
        }
        for (std::size_t i = 0; i < layer.bias.size(); ++i) {
            if (i > 0) os << ' ';
            write_value(os, layer.bias[i]);
        }
        os << '\n';
    }
}

NetworkParams load_network(std::istream& is) {
    std::string magic;
    int version = 0;
    if (!(is >> magic >> version)) {
        throw std::runtime_error("model file is empty or has no header");
    }
    if (magic != kMagic) {
        throw std::runtime_error("not a network model file (bad magic '" + magic + "')");
    }
    if (version != kModelFormatVersion) {
        throw std::runtime_error("unsupported model format version " + std::to_string(version) +
                                 " (this build reads version " +
                                 std::to_string(kModelFormatVersion) + ")");
    }

    std::string keyword;
    std::size_t layer_count = 0;
    if (!(is >> keyword >> layer_count) || keyword != "layers") {
        throw std::runtime_error("model file truncated while reading layer count");
    }
    if (layer_count == 0) {
        throw std::runtime_error("model file declares zero layers");
    }

    std::vector<LayerSpec> specs(layer_count);
    for (auto& spec : specs) {
        std::string activation;
        if (!(is >> keyword >> spec.in_dim >> spec.out_dim >> activation) || keyword != "layer") {
            throw std::runtime_error("model file truncated while reading layer specs");
        }
        spec.activation = activation_from_string(activation);
    }

    NetworkParams net;
    net.layers.reserve(layer_count);
    for (const auto& spec : specs) {
        DenseLayer layer;
        layer.weight = RealMatrix(spec.out_dim, spec.in_dim);
        for (double& w : layer.weight.data()) w = read_value(is, "weights");
        layer.bias.resize(spec.out_dim);
        for (double& b : layer.bias) b = read_value(is, "biases");
        layer.activation = spec.activation;
        net.layers.push_back(std::move(layer));
    }
    net.validate();
    return net;
}

void save_network_file(const NetworkParams& net, const std::string& path) {
    std::ofstream file(path);
    if (!file) {
        throw std::runtime_error("cannot write model file: " + path);
    }
    save_network(net, file);
    if (!file) {
        throw std::runtime_error("write failed: " + path);
    }
}

NetworkParams load_network_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw std::runtime_error("cannot open model file: " + path);
    }
    return load_network(file);
}

}  // namespace fraudnet
