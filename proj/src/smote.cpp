#include "fraudnet/smote.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

#include "fraudnet/rng.hpp"

namespace fraudnet {

namespace {

double squared_distance(const RealMatrix& m, std::size_t a, std::size_t b) {
    const double* ra = m.row_ptr(a);
    const double* rb = m.row_ptr(b);
    double sum = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        const double d = ra[c] - rb[c];
        sum += d * d;
    }
    return sum;
}

}  // namespace

NeighborTable minority_knn(const LabeledDataset& ds, std::size_t k) {
    ds.validate();
    if (k < 1) {
        throw std::invalid_argument("minority_knn: k must be >= 1");
    }
    NeighborTable table;
    table.minority_rows = ds.rows_with_label(1);
    const std::size_t m = table.minority_rows.size();
    if (m < k + 1) {
        throw std::runtime_error("minority_knn: need at least k+1 = " + std::to_string(k + 1) +
                                 " minority rows, have " + std::to_string(m));
    }

    table.neighbors.resize(m);
    std::vector<std::pair<double, std::size_t>> candidates;
    for (std::size_t i = 0; i < m; ++i) {
        candidates.clear();
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            candidates.emplace_back(
                squared_distance(ds.features, table.minority_rows[i], table.minority_rows[j]), j);
        }
        // Sort key (distance, dataset row index): equal distances resolve to the
        // lower row index. Minority positions are already in row order.
        std::partial_sort(candidates.begin(), candidates.begin() + k, candidates.end());
        auto& list = table.neighbors[i];
        list.reserve(k);
        for (std::size_t s = 0; s < k; ++s) list.push_back(candidates[s].second);
    }
    return table;
}

LabeledDataset smote(const LabeledDataset& ds, const SmoteConfig& cfg) {
    ds.validate();
    const std::size_t minority_count = ds.count_label(1);
    if (cfg.k < 1 || cfg.k + 1 > minority_count) {
        throw std::invalid_argument("smote: k must satisfy 1 <= k <= minority_count-1 (k=" +
                                    std::to_string(cfg.k) + ", minority=" +
                                    std::to_string(minority_count) + ")");
    }
    if (cfg.target_minority_count < minority_count) {
        throw std::invalid_argument("smote: target_minority_count " +
                                    std::to_string(cfg.target_minority_count) +
                                    " is below the current minority count " +
                                    std::to_string(minority_count));
    }

    const auto table = minority_knn(ds, cfg.k);
    const std::size_t synthetic_count = cfg.target_minority_count - minority_count;
    const std::size_t d = ds.feature_count();

    LabeledDataset out;
    out.features = RealMatrix(ds.row_count() + synthetic_count, d);
    std::copy(ds.features.data().begin(), ds.features.data().end(), out.features.data().begin());
    out.labels = ds.labels;
    out.labels.resize(ds.row_count() + synthetic_count, 1);
    out.column_names = ds.column_names;

    auto rng = seeded_rng(cfg.seed, rng_stream::smote);
    std::uniform_int_distribution<std::size_t> pick_neighbor(0, cfg.k - 1);
    std::uniform_real_distribution<double> pick_lambda(0.0, 1.0);

    // Base points cycle round-robin over the minority rows so coverage stays
    // near-uniform; neighbor and interpolation weight are drawn per sample.
    for (std::size_t s = 0; s < synthetic_count; ++s) {
        const std::size_t i = s % table.minority_rows.size();
        const std::size_t j = table.neighbors[i][pick_neighbor(rng)];
        const double lambda = pick_lambda(rng);

        const double* base = ds.features.row_ptr(table.minority_rows[i]);
        const double* neighbor = ds.features.row_ptr(table.minority_rows[j]);
        double* row = out.features.row_ptr(ds.row_count() + s);
        for (std::size_t c = 0; c < d; ++c) {
            row[c] = base[c] + lambda * (neighbor[c] - base[c]);
        }
    }
    return out;
}

}  // namespace fraudnet
