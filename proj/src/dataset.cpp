#include "fraudnet/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "fraudnet/rng.hpp"

namespace fraudnet {

namespace {

constexpr std::size_t kTransactionFieldCount = 31;  // Time, V1..V28, Amount, Class

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::string strip(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r\"");
    auto end = s.find_last_not_of(" \t\r\"");
    if (begin == std::string::npos) return {};
    return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& raw, std::size_t row_index, std::size_t field_index) {
    const std::string token = strip(raw);
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || token.empty()) {
        throw std::runtime_error("data row " + std::to_string(row_index) + ": field " +
                                 std::to_string(field_index + 1) + " ('" + token +
                                 "') is not a number");
    }
    if (!std::isfinite(value)) {
        throw std::runtime_error("data row " + std::to_string(row_index) + ": field " +
                                 std::to_string(field_index + 1) + " is not finite");
    }
    return value;
}

int parse_label(const std::string& raw, std::size_t row_index, std::size_t field_index) {
    const double value = parse_number(raw, row_index, field_index);
    if (value == 0.0) return 0;
    if (value == 1.0) return 1;
    throw std::runtime_error("data row " + std::to_string(row_index) +
                             ": label must be 0 or 1, got '" + strip(raw) + "'");
}

std::vector<std::string> transaction_column_names() {
    std::vector<std::string> names;
    names.emplace_back("Time");
    for (int i = 1; i <= 28; ++i) names.push_back("V" + std::to_string(i));
    names.emplace_back("Amount");
    return names;
}

LabeledDataset load_rows(std::ifstream& file, std::vector<std::string> column_names,
                         std::size_t field_count) {
    std::vector<double> values;
    std::vector<int> labels;
    std::string line;
    std::size_t row_index = 0;
    while (std::getline(file, line)) {
        if (line.empty() || line == "\r") continue;
        ++row_index;
        const auto fields = split_fields(line);
        if (fields.size() != field_count) {
            throw std::runtime_error("data row " + std::to_string(row_index) + ": expected " +
                                     std::to_string(field_count) + " fields, got " +
                                     std::to_string(fields.size()));
        }
        for (std::size_t f = 0; f + 1 < fields.size(); ++f) {
            values.push_back(parse_number(fields[f], row_index, f));
        }
        labels.push_back(parse_label(fields.back(), row_index, fields.size() - 1));
    }
    if (row_index == 0) {
        throw std::runtime_error("no data rows found");
    }

    LabeledDataset ds;
    ds.features = RealMatrix(row_index, field_count - 1);
    ds.features.data() = std::move(values);
    ds.labels = std::move(labels);
    ds.column_names = std::move(column_names);
    return ds;
}

LabeledDataset take_rows(const LabeledDataset& ds, const std::vector<std::size_t>& indices) {
    LabeledDataset out;
    out.features = ds.features.select_rows(indices);
    out.labels.reserve(indices.size());
    for (std::size_t idx : indices) out.labels.push_back(ds.labels[idx]);
    out.column_names = ds.column_names;
    return out;
}

}  // namespace

std::size_t LabeledDataset::count_label(int label) const {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
}

std::vector<std::size_t> LabeledDataset::rows_with_label(int label) const {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == label) rows.push_back(i);
    }
    return rows;
}

void LabeledDataset::validate() const {
    if (features.rows() == 0) {
        throw std::runtime_error("dataset is empty");
    }
    if (labels.size() != features.rows()) {
        throw std::runtime_error("dataset has " + std::to_string(features.rows()) +
                                 " rows but " + std::to_string(labels.size()) + " labels");
    }
    if (column_names.size() != features.cols()) {
        throw std::runtime_error("dataset has " + std::to_string(features.cols()) +
                                 " columns but " + std::to_string(column_names.size()) +
                                 " column names");
    }
    for (int label : labels) {
        if (label != 0 && label != 1) {
            throw std::runtime_error("dataset label out of {0,1}");
        }
    }
    if (!features.all_finite()) {
        throw std::runtime_error("dataset contains a non-finite feature value");
    }
}

LabeledDataset load_csv(const std::string& path, bool has_header) {
    std::ifstream file(path);
    if (!file) {
        throw std::runtime_error("cannot open file: " + path);
    }
    auto names = transaction_column_names();
    if (has_header) {
        std::string header;
        if (!std::getline(file, header)) {
            throw std::runtime_error("file is empty: " + path);
        }
        auto fields = split_fields(header);
        if (fields.size() != kTransactionFieldCount) {
            throw std::runtime_error("header: expected " +
                                     std::to_string(kTransactionFieldCount) + " columns, got " +
                                     std::to_string(fields.size()));
        }
        names.clear();
        for (std::size_t f = 0; f + 1 < fields.size(); ++f) names.push_back(strip(fields[f]));
    }
    auto ds = load_rows(file, std::move(names), kTransactionFieldCount);
    ds.validate();
    return ds;
}

LabeledDataset load_feature_csv(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw std::runtime_error("cannot open file: " + path);
    }
    std::string header;
    if (!std::getline(file, header)) {
        throw std::runtime_error("file is empty: " + path);
    }
    auto fields = split_fields(header);
    if (fields.size() < 2) {
        throw std::runtime_error("header: need at least one feature column plus a label column");
    }
    std::vector<std::string> names;
    for (std::size_t f = 0; f + 1 < fields.size(); ++f) names.push_back(strip(fields[f]));
    auto ds = load_rows(file, std::move(names), fields.size());
    ds.validate();
    return ds;
}

LabeledDataset load_auto(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw std::runtime_error("cannot open file: " + path);
    }
    std::string header;
    if (!std::getline(file, header)) {
        throw std::runtime_error("file is empty: " + path);
    }
    const auto fields = split_fields(header);
    file.close();
    const bool transaction_schema =
        fields.size() == kTransactionFieldCount && strip(fields.front()) == "Time";
    return transaction_schema ? load_csv(path, true) : load_feature_csv(path);
}

void save_csv(const LabeledDataset& ds, const std::string& path) {
    ds.validate();
    std::ofstream file(path);
    if (!file) {
        throw std::runtime_error("cannot write file: " + path);
    }
    for (const auto& name : ds.column_names) file << name << ',';
    file << "Class\n";
    char buf[40];
    for (std::size_t r = 0; r < ds.row_count(); ++r) {
        const double* row = ds.features.row_ptr(r);
        for (std::size_t c = 0; c < ds.feature_count(); ++c) {
            const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), row[c]);
            file.write(buf, end - buf);
            file << ',';
        }
        file << ds.labels[r] << '\n';
    }
    if (!file) {
        throw std::runtime_error("write failed: " + path);
    }
}

LabeledDataset preprocess(const LabeledDataset& ds) {
    ds.validate();
    const auto find_column = [&](const std::string& name) {
        auto it = std::find(ds.column_names.begin(), ds.column_names.end(), name);
        if (it == ds.column_names.end()) {
            throw std::runtime_error("dataset has no '" + name + "' column");
        }
        return static_cast<std::size_t>(it - ds.column_names.begin());
    };
    const std::size_t time_col = find_column("Time");
    const std::size_t amount_col = find_column("Amount");

    const std::size_t n = ds.row_count();
    double mean = 0.0;
    for (std::size_t r = 0; r < n; ++r) mean += ds.features.at(r, amount_col);
    mean /= static_cast<double>(n);
    double ssq = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        const double d = ds.features.at(r, amount_col) - mean;
        ssq += d * d;
    }
    const double stddev = n > 1 ? std::sqrt(ssq / static_cast<double>(n - 1)) : 0.0;
    if (stddev == 0.0) {
        throw std::runtime_error("Amount column is degenerate (zero standard deviation)");
    }

    LabeledDataset out;
    out.features = RealMatrix(n, ds.feature_count() - 1);
    out.labels = ds.labels;
    for (std::size_t c = 0; c < ds.feature_count(); ++c) {
        if (c != time_col) out.column_names.push_back(ds.column_names[c]);
    }
    for (std::size_t r = 0; r < n; ++r) {
        const double* src = ds.features.row_ptr(r);
        double* dst = out.features.row_ptr(r);
        std::size_t oc = 0;
        for (std::size_t c = 0; c < ds.feature_count(); ++c) {
            if (c == time_col) continue;
            dst[oc++] = c == amount_col ? (src[c] - mean) / stddev : src[c];
        }
    }
    return out;
}

std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& ds, const SplitSpec& spec) {
    ds.validate();
    if (!(spec.test_fraction > 0.0 && spec.test_fraction < 1.0)) {
        throw std::invalid_argument("test_fraction must be in (0,1)");
    }
    const std::size_t n = ds.row_count();
    if (n < 2) {
        throw std::invalid_argument("split needs at least 2 rows");
    }

    auto rng = seeded_rng(spec.seed, rng_stream::split);
    std::vector<std::size_t> test_rows;
    if (spec.stratified) {
        for (int label : {0, 1}) {
            auto class_rows = ds.rows_with_label(label);
            if (class_rows.empty()) {
                throw std::runtime_error("stratified split: class " + std::to_string(label) +
                                         " has no members");
            }
            std::shuffle(class_rows.begin(), class_rows.end(), rng);
            const auto take = static_cast<std::size_t>(
                std::llround(static_cast<double>(class_rows.size()) * spec.test_fraction));
            test_rows.insert(test_rows.end(), class_rows.begin(), class_rows.begin() + take);
        }
    } else {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        const auto take = static_cast<std::size_t>(
            std::llround(static_cast<double>(n) * spec.test_fraction));
        test_rows.assign(order.begin(), order.begin() + take);
    }

    std::vector<bool> in_test(n, false);
    for (std::size_t idx : test_rows) in_test[idx] = true;
    std::vector<std::size_t> train_rows;
    train_rows.reserve(n - test_rows.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (!in_test[i]) train_rows.push_back(i);
    }
    std::sort(test_rows.begin(), test_rows.end());

    return {take_rows(ds, train_rows), take_rows(ds, test_rows)};
}

LabeledDataset generate_synthetic(std::size_t n, double minority_fraction, std::size_t d,
                                  double separation, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("generate_synthetic: n must be >= 2");
    if (!(minority_fraction > 0.0 && minority_fraction < 0.5)) {
        throw std::invalid_argument("generate_synthetic: minority_fraction must be in (0,0.5)");
    }
    if (d < 1) throw std::invalid_argument("generate_synthetic: d must be >= 1");
    if (separation < 0.0) throw std::invalid_argument("generate_synthetic: separation must be >= 0");

    const auto minority_count = static_cast<std::size_t>(
        std::llround(static_cast<double>(n) * minority_fraction));

    auto rng = seeded_rng(seed, rng_stream::synthetic);
    std::normal_distribution<double> unit(0.0, 1.0);

    // Majority mean at the origin, minority mean offset along the first axis.
    LabeledDataset ds;
    ds.features = RealMatrix(n, d);
    ds.labels.assign(n, 0);
    for (std::size_t i = 1; i <= d; ++i) ds.column_names.push_back("f" + std::to_string(i));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);

    for (std::size_t i = 0; i < n; ++i) {
        const bool minority = i < minority_count;
        double* row = ds.features.row_ptr(order[i]);
        ds.labels[order[i]] = minority ? 1 : 0;
        for (std::size_t c = 0; c < d; ++c) {
            row[c] = unit(rng) + (minority && c == 0 ? separation : 0.0);
        }
    }
    return ds;
}

LabeledDataset to_transaction_schema(const LabeledDataset& ds) {
    ds.validate();
    if (ds.feature_count() != 29) {
        throw std::invalid_argument("to_transaction_schema: need 29 feature columns, got " +
                                    std::to_string(ds.feature_count()));
    }
    LabeledDataset out;
    out.features = RealMatrix(ds.row_count(), 30);
    out.labels = ds.labels;
    out.column_names = transaction_column_names();
    for (std::size_t r = 0; r < ds.row_count(); ++r) {
        double* dst = out.features.row_ptr(r);
        const double* src = ds.features.row_ptr(r);
        dst[0] = static_cast<double>(r);
        for (std::size_t c = 0; c < 29; ++c) dst[c + 1] = src[c];
    }
    return out;
}

}  // namespace fraudnet
