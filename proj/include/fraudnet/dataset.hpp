#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fraudnet/matrix.hpp"

namespace fraudnet {

// Feature matrix plus binary labels. Label 1 marks the minority (fraud) class,
// label 0 the majority (normal) class. Immutable by convention once built.
struct LabeledDataset {
    RealMatrix features;                    // n rows, d columns
    std::vector<int> labels;                // n entries, each 0 or 1
    std::vector<std::string> column_names;  // d entries

    std::size_t row_count() const { return features.rows(); }
    std::size_t feature_count() const { return features.cols(); }
    std::size_t count_label(int label) const;
    std::vector<std::size_t> rows_with_label(int label) const;

    // Throws if labels/column names disagree with the matrix or a value is not finite.
    void validate() const;
};

struct SplitSpec {
    double test_fraction = 0.2;  // must be in (0,1)
    std::uint64_t seed = 0;
    bool stratified = false;
};

// Reads the transaction CSV schema: Time,V1..V28,Amount,Class (31 fields per row).
// All 30 leading fields become feature columns; Class becomes the label.
// Malformed rows are rejected with the offending 1-based data row index.
LabeledDataset load_csv(const std::string& path, bool has_header);

// Reads any feature CSV produced by save_csv: a header line naming the feature
// columns plus a final Class column holding 0/1 labels.
LabeledDataset load_feature_csv(const std::string& path);

// Dispatches on the header: the 31-column Time..Class schema goes through
// load_csv, anything else through load_feature_csv.
LabeledDataset load_auto(const std::string& path);

// Writes header `<columns...>,Class` then one row per sample. Values use the
// shortest decimal form that reloads bit for bit.
void save_csv(const LabeledDataset& ds, const std::string& path);

// Drops the Time column and replaces Amount with its z-score over the whole
// dataset (sample standard deviation). Output has d = 29 columns.
LabeledDataset preprocess(const LabeledDataset& ds);

// Seeded random partition into (train, test) with |test| = round(n * test_fraction).
// Stratified mode applies the rounding rule per class instead.
std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& ds, const SplitSpec& spec);

// Two unit-covariance Gaussian clusters whose means are `separation` apart.
// round(n * minority_fraction) rows are minority (label 1); row order is a
// seeded shuffle. Column names are f1..fd.
LabeledDataset generate_synthetic(std::size_t n, double minority_fraction, std::size_t d,
                                  double separation, std::uint64_t seed);

// Reshapes a 29-column dataset into the transaction schema by prepending a Time
// column (row index) and renaming columns to Time,V1..V28,Amount.
LabeledDataset to_transaction_schema(const LabeledDataset& ds);

}  // namespace fraudnet
