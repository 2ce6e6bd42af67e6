#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "fraudnet/model_io.hpp"

using namespace fraudnet;

namespace {

RealMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> unit(0.0, 1.0);
    RealMatrix m(rows, cols);
    for (double& v : m.data()) v = unit(rng);
    return m;
}

NetworkParams sample_network() {
    auto net = init_network(
        {{7, 5, Activation::relu}, {5, 4, Activation::sigmoid}, {4, 3, Activation::linear}}, 321);
    // Touch values that need all 17 digits to survive a text round-trip.
    net.layers[0].weight.at(0, 0) = 1.0 / 3.0;
    net.layers[1].bias[2] = -2.718281828459045e-7;
    return net;
}

}  // namespace

TEST_CASE("save/load round-trips parameters and predictions bit for bit") {
    const auto net = sample_network();
    std::stringstream stream;
    save_network(net, stream);
    const auto loaded = load_network(stream);

    REQUIRE(loaded.layers.size() == net.layers.size());
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        CHECK(loaded.layers[l].weight == net.layers[l].weight);
        CHECK(loaded.layers[l].bias == net.layers[l].bias);
        CHECK(loaded.layers[l].activation == net.layers[l].activation);
    }

    const auto batch = random_matrix(6, 7, 12);
    CHECK(forward(loaded, batch).output() == forward(net, batch).output());
}

TEST_CASE("file round-trip") {
    const auto net = sample_network();
    const auto path = (std::filesystem::temp_directory_path() / "fraudnet_model_io.model").string();
    save_network_file(net, path);
    const auto loaded = load_network_file(path);
    const auto batch = random_matrix(3, 7, 9);
    CHECK(forward(loaded, batch).output() == forward(net, batch).output());
}

TEST_CASE("truncated files are rejected without a partial model") {
    const auto net = sample_network();
    std::stringstream full;
    save_network(net, full);
    const std::string text = full.str();

    for (double cut : {0.25, 0.6, 0.95}) {
        std::stringstream broken(text.substr(0, static_cast<std::size_t>(text.size() * cut)));
        CHECK_THROWS_WITH_AS(load_network(broken), doctest::Contains("truncated"),
                             std::runtime_error);
    }
}

TEST_CASE("foreign format versions are rejected with both version numbers") {
    std::stringstream stream("fraudnet-network 2\nlayers 1\nlayer 1 1 linear\n0\n0\n");
    CHECK_THROWS_WITH_AS(load_network(stream), doctest::Contains("version 2"),
                         std::runtime_error);
    try {
        std::stringstream again("fraudnet-network 2\n");
        load_network(again);
        FAIL("expected a version error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("version 1") != std::string::npos);
    }
}

TEST_CASE("unrelated files are rejected on the magic line") {
    std::stringstream stream("threshold,recall,accuracy\n0.5,0.9,0.95\n");
    CHECK_THROWS_WITH_AS(load_network(stream), doctest::Contains("magic"), std::runtime_error);
}

TEST_CASE("missing model file names the path") {
    CHECK_THROWS_WITH_AS(load_network_file("/nonexistent/net.model"),
                         doctest::Contains("/nonexistent/net.model"), std::runtime_error);
}
