#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "fraudnet/dataset.hpp"

using namespace fraudnet;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

std::string transaction_row(double time, double v_fill, double amount, int label) {
    std::string row = std::to_string(time);
    for (int i = 0; i < 28; ++i) row += "," + std::to_string(v_fill + i);
    row += "," + std::to_string(amount) + "," + std::to_string(label);
    return row;
}

std::filesystem::path write_transaction_csv(const std::string& name,
                                            const std::vector<std::string>& rows,
                                            bool with_header = false) {
    const auto path = temp_file(name);
    std::ofstream file(path);
    if (with_header) {
        file << "Time";
        for (int i = 1; i <= 28; ++i) file << ",V" << i;
        file << ",Amount,Class\n";
    }
    for (const auto& row : rows) file << row << '\n';
    return path;
}

// Rank-statistic AUC of score = first feature, positives = label 1.
double first_feature_auc(const LabeledDataset& ds) {
    std::vector<double> pos, neg;
    for (std::size_t r = 0; r < ds.row_count(); ++r) {
        (ds.labels[r] == 1 ? pos : neg).push_back(ds.features.at(r, 0));
    }
    double wins = 0.0;
    for (double p : pos) {
        for (double n : neg) {
            if (p > n) wins += 1.0;
            else if (p == n) wins += 0.5;
        }
    }
    return wins / (static_cast<double>(pos.size()) * static_cast<double>(neg.size()));
}

// Sortable (row values, label) view for multiset comparisons.
std::vector<std::vector<double>> sorted_rows(const LabeledDataset& ds) {
    std::vector<std::vector<double>> rows;
    for (std::size_t r = 0; r < ds.row_count(); ++r) {
        std::vector<double> row(ds.features.row_ptr(r), ds.features.row_ptr(r) + ds.feature_count());
        row.push_back(static_cast<double>(ds.labels[r]));
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end());
    return rows;
}

}  // namespace

TEST_CASE("load_csv reads well-formed transaction rows") {
    const auto path = write_transaction_csv("fraudnet_test_3rows.csv",
                                            {transaction_row(0, 0.5, 10, 0),
                                             transaction_row(1, -1.5, 20, 1),
                                             transaction_row(2, 2.25, 30, 0)});
    const auto ds = load_csv(path.string(), false);
    CHECK(ds.row_count() == 3);
    CHECK(ds.feature_count() == 30);
    CHECK(ds.labels == std::vector<int>{0, 1, 0});
    CHECK(ds.column_names.front() == "Time");
    CHECK(ds.column_names.back() == "Amount");
}

TEST_CASE("load_csv accepts a header line") {
    const auto path = write_transaction_csv("fraudnet_test_header.csv",
                                            {transaction_row(0, 0.5, 10, 0),
                                             transaction_row(1, 1.5, 20, 1)},
                                            true);
    const auto ds = load_csv(path.string(), true);
    CHECK(ds.row_count() == 2);
    CHECK(ds.column_names[1] == "V1");
}

TEST_CASE("load_csv rejects a bad label with the row index") {
    const auto path = write_transaction_csv("fraudnet_test_badlabel.csv",
                                            {transaction_row(0, 0.5, 10, 0),
                                             transaction_row(1, 1.5, 20, 2)});
    CHECK_THROWS_WITH_AS(load_csv(path.string(), false),
                         doctest::Contains("data row 2"), std::runtime_error);
}

TEST_CASE("load_csv rejects a short row with the row index") {
    const auto path = write_transaction_csv("fraudnet_test_shortrow.csv",
                                            {transaction_row(0, 0.5, 10, 0), "1.0,2.0,3.0"});
    CHECK_THROWS_WITH_AS(load_csv(path.string(), false),
                         doctest::Contains("data row 2"), std::runtime_error);
}

TEST_CASE("load_csv rejects an unparsable field with the row index") {
    auto row = transaction_row(0, 0.5, 10, 0);
    row.replace(row.find("0.5"), 3, "abc");
    const auto path = write_transaction_csv("fraudnet_test_badnum.csv", {row});
    CHECK_THROWS_WITH_AS(load_csv(path.string(), false),
                         doctest::Contains("data row 1"), std::runtime_error);
}

TEST_CASE("load_csv reports a missing file") {
    CHECK_THROWS_WITH_AS(load_csv("/nonexistent/fraudnet.csv", false),
                         doctest::Contains("cannot open"), std::runtime_error);
}

TEST_CASE("load_csv handles a full-scale transaction file") {
    const auto ds = to_transaction_schema(generate_synthetic(28315, 0.005, 29, 2.0, 19));
    const auto path = temp_file("fraudnet_test_fullscale.csv");
    save_csv(ds, path.string());
    const auto back = load_csv(path.string(), true);
    CHECK(back.row_count() == 28315);
    CHECK(back.feature_count() == 30);
    CHECK(back.count_label(1) == ds.count_label(1));
    CHECK(back.features == ds.features);
}

TEST_CASE("preprocess drops Time and z-scores Amount") {
    const auto path = write_transaction_csv("fraudnet_test_prep.csv",
                                            {transaction_row(0, 0.5, 10, 0),
                                             transaction_row(100, -1.0, 20, 0),
                                             transaction_row(200, 3.0, 60, 1),
                                             transaction_row(300, 7.0, 30, 0)});
    const auto raw = load_csv(path.string(), false);
    const auto ds = preprocess(raw);

    CHECK(ds.feature_count() == 29);
    CHECK(ds.column_names.front() == "V1");
    CHECK(ds.column_names.back() == "Amount");

    // z-scored Amount: sample mean 0, sample stddev 1.
    const std::size_t amount = ds.feature_count() - 1;
    double mean = 0.0;
    for (std::size_t r = 0; r < ds.row_count(); ++r) mean += ds.features.at(r, amount);
    mean /= static_cast<double>(ds.row_count());
    double ssq = 0.0;
    for (std::size_t r = 0; r < ds.row_count(); ++r) {
        const double d = ds.features.at(r, amount) - mean;
        ssq += d * d;
    }
    const double stddev = std::sqrt(ssq / static_cast<double>(ds.row_count() - 1));
    CHECK(mean == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(stddev == doctest::Approx(1.0).epsilon(1e-9));

    // V columns pass through bitwise.
    for (std::size_t r = 0; r < ds.row_count(); ++r) {
        for (std::size_t c = 0; c < 28; ++c) {
            CHECK(ds.features.at(r, c) == raw.features.at(r, c + 1));
        }
    }
    CHECK(ds.labels == raw.labels);
}

TEST_CASE("preprocess is idempotent on the V columns") {
    const auto path = write_transaction_csv("fraudnet_test_prep2.csv",
                                            {transaction_row(0, 1.5, 10, 0),
                                             transaction_row(1, -2.0, 25, 1),
                                             transaction_row(2, 0.25, 40, 0)});
    const auto once = preprocess(load_csv(path.string(), false));
    CHECK(once.feature_count() == 29);
    // A second normalization of the already-normalized Amount is still finite and
    // the V columns stay untouched; Time is gone so a second call must fail.
    CHECK_THROWS_WITH_AS(preprocess(once), doctest::Contains("Time"), std::runtime_error);
}

TEST_CASE("preprocess rejects a degenerate Amount column") {
    const auto path = write_transaction_csv("fraudnet_test_prep3.csv",
                                            {transaction_row(0, 0.5, 42, 0),
                                             transaction_row(1, 1.5, 42, 1)});
    CHECK_THROWS_WITH_AS(preprocess(load_csv(path.string(), false)),
                         doctest::Contains("degenerate"), std::runtime_error);
}

TEST_CASE("split rounding at full scale") {
    const auto ds = generate_synthetic(28315, 0.005, 2, 1.0, 7);
    SplitSpec spec;
    spec.test_fraction = 0.2;
    spec.seed = 11;
    const auto [train, test] = split(ds, spec);
    CHECK(train.row_count() == 22652);
    CHECK(test.row_count() == 5663);
}

TEST_CASE("split partitions the dataset exactly") {
    const auto ds = generate_synthetic(1003, 0.1, 4, 2.0, 3);
    SplitSpec spec;
    spec.test_fraction = 0.31;
    spec.seed = 5;
    const auto [train, test] = split(ds, spec);

    CHECK(train.row_count() + test.row_count() == ds.row_count());

    auto combined = sorted_rows(train);
    auto test_rows = sorted_rows(test);
    combined.insert(combined.end(), test_rows.begin(), test_rows.end());
    std::sort(combined.begin(), combined.end());
    CHECK(combined == sorted_rows(ds));
}

TEST_CASE("split is deterministic per seed") {
    const auto ds = generate_synthetic(500, 0.1, 3, 2.0, 9);
    SplitSpec spec;
    spec.test_fraction = 0.2;
    spec.seed = 42;
    const auto [train_a, test_a] = split(ds, spec);
    const auto [train_b, test_b] = split(ds, spec);
    CHECK(train_a.features == train_b.features);
    CHECK(test_a.features == test_b.features);
    CHECK(train_a.labels == train_b.labels);

    spec.seed = 43;
    const auto [train_c, test_c] = split(ds, spec);
    CHECK_FALSE(test_a.features == test_c.features);
}

TEST_CASE("stratified split preserves the class ratio") {
    LabeledDataset ds;
    ds.features = RealMatrix(10, 2);
    for (std::size_t r = 0; r < 10; ++r) {
        ds.features.at(r, 0) = static_cast<double>(r);
        ds.features.at(r, 1) = 1.0;
    }
    ds.labels = {0, 0, 0, 0, 0, 1, 1, 1, 1, 1};
    ds.column_names = {"a", "b"};

    SplitSpec spec;
    spec.test_fraction = 0.2;
    spec.seed = 1;
    spec.stratified = true;
    const auto [train, test] = split(ds, spec);
    CHECK(test.row_count() == 2);
    CHECK(test.count_label(0) == 1);
    CHECK(test.count_label(1) == 1);
    CHECK(train.count_label(0) == 4);
    CHECK(train.count_label(1) == 4);
}

TEST_CASE("stratified split rejects an empty class") {
    LabeledDataset ds;
    ds.features = RealMatrix(4, 1, 1.0);
    ds.labels = {0, 0, 0, 0};
    ds.column_names = {"a"};
    SplitSpec spec;
    spec.stratified = true;
    CHECK_THROWS_WITH_AS(split(ds, spec), doctest::Contains("class 1"), std::runtime_error);
}

TEST_CASE("generate_synthetic honors the rounding rule") {
    const auto ds = generate_synthetic(20000, 0.005, 5, 2.0, 1);
    CHECK(ds.row_count() == 20000);
    CHECK(ds.count_label(1) == 100);
    CHECK(ds.feature_count() == 5);
    CHECK(ds.features.all_finite());

    // Closed-form rounding rule across assorted sizes.
    for (std::size_t n : {37UL, 100UL, 9999UL}) {
        const double fraction = 0.0421;
        const auto sample = generate_synthetic(n, fraction, 2, 1.0, 3);
        CHECK(sample.count_label(1) ==
              static_cast<std::size_t>(std::llround(static_cast<double>(n) * fraction)));
    }
}

TEST_CASE("generate_synthetic is deterministic per seed") {
    const auto a = generate_synthetic(300, 0.1, 7, 2.5, 123);
    const auto b = generate_synthetic(300, 0.1, 7, 2.5, 123);
    const auto c = generate_synthetic(300, 0.1, 7, 2.5, 124);
    CHECK(a.features == b.features);
    CHECK(a.labels == b.labels);
    CHECK_FALSE(a.features == c.features);
}

TEST_CASE("zero separation means indistinguishable classes") {
    const auto ds = generate_synthetic(20000, 0.005, 8, 0.0, 31);
    const double auc = first_feature_auc(ds);
    CHECK(auc > 0.40);
    CHECK(auc < 0.60);

    // Strong separation pushes the same statistic toward 1.
    const auto separated = generate_synthetic(20000, 0.005, 8, 6.0, 31);
    CHECK(first_feature_auc(separated) > 0.99);
}

TEST_CASE("generate_synthetic validates parameters") {
    CHECK_THROWS_AS(generate_synthetic(1, 0.1, 2, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(generate_synthetic(100, 0.0, 2, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(generate_synthetic(100, 0.5, 2, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(generate_synthetic(100, 0.1, 0, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(generate_synthetic(100, 0.1, 2, -1.0, 0), std::invalid_argument);
}

TEST_CASE("save_csv and load_feature_csv round-trip bit for bit") {
    const auto ds = generate_synthetic(50, 0.2, 6, 1.5, 77);
    const auto path = temp_file("fraudnet_test_roundtrip.csv");
    save_csv(ds, path.string());
    const auto back = load_feature_csv(path.string());
    CHECK(back.features == ds.features);
    CHECK(back.labels == ds.labels);
    CHECK(back.column_names == ds.column_names);
}

TEST_CASE("load_auto dispatches on the header") {
    const auto synthetic = generate_synthetic(40, 0.25, 29, 2.0, 5);
    const auto transaction = to_transaction_schema(synthetic);

    const auto feature_path = temp_file("fraudnet_test_auto_feature.csv");
    save_csv(synthetic, feature_path.string());
    const auto loaded_feature = load_auto(feature_path.string());
    CHECK(loaded_feature.feature_count() == 29);

    const auto txn_path = temp_file("fraudnet_test_auto_txn.csv");
    save_csv(transaction, txn_path.string());
    const auto loaded_txn = load_auto(txn_path.string());
    CHECK(loaded_txn.feature_count() == 30);
    CHECK(loaded_txn.column_names.front() == "Time");
    CHECK(loaded_txn.labels == synthetic.labels);
}

TEST_CASE("to_transaction_schema requires 29 columns") {
    const auto narrow = generate_synthetic(10, 0.2, 5, 1.0, 2);
    CHECK_THROWS_AS(to_transaction_schema(narrow), std::invalid_argument);

    const auto wide = generate_synthetic(10, 0.2, 29, 1.0, 2);
    const auto txn = to_transaction_schema(wide);
    CHECK(txn.feature_count() == 30);
    CHECK(txn.column_names[0] == "Time");
    CHECK(txn.column_names[29] == "Amount");
    for (std::size_t r = 0; r < txn.row_count(); ++r) {
        CHECK(txn.features.at(r, 0) == static_cast<double>(r));
        CHECK(txn.features.at(r, 5) == wide.features.at(r, 4));
    }
}
