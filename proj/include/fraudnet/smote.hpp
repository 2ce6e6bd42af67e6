#pragma once

#include <cstdint>
#include <vector>

#include "fraudnet/dataset.hpp"

namespace fraudnet {

struct SmoteConfig {
    std::size_t k = 5;                      // neighbors per minority sample
    std::size_t target_minority_count = 0;  // desired minority rows after oversampling
    std::uint64_t seed = 0;
};

// k nearest minority neighbors of each minority row, self excluded.
// neighbors[i] holds positions into minority_rows, nearest first; distance ties
// are broken toward the lower dataset row index.
struct NeighborTable {
    std::vector<std::size_t> minority_rows;
    std::vector<std::vector<std::size_t>> neighbors;
};

NeighborTable minority_knn(const LabeledDataset& ds, std::size_t k);

// Appends synthetic minority rows until the minority count reaches
// cfg.target_minority_count. Each synthetic row lies on the segment between a
// minority sample and one of its k nearest minority neighbors. Original rows
// are passed through untouched.
LabeledDataset smote(const LabeledDataset& ds, const SmoteConfig& cfg);

}  // namespace fraudnet
