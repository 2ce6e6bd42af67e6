#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace fraudnet {

// Dense row-major matrix of doubles. Rows are samples throughout the library.
class RealMatrix {
public:
    RealMatrix() = default;
    RealMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);

    // Builds a matrix from nested braces; all rows must have equal length.
    static RealMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    double* row_ptr(std::size_t r) { return data_.data() + r * cols_; }
    const double* row_ptr(std::size_t r) const { return data_.data() + r * cols_; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    bool same_shape(const RealMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }
    bool all_finite() const;

    // New matrix containing the given rows of this one, in the given order.
    RealMatrix select_rows(const std::vector<std::size_t>& indices) const;

    bool operator==(const RealMatrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// C = A * B, with A n-by-k and B k-by-m.
RealMatrix matmul(const RealMatrix& a, const RealMatrix& b);

// C = A * B^T, with A n-by-k and B m-by-k.
RealMatrix matmul_bt(const RealMatrix& a, const RealMatrix& b);

// C = A^T * B, with A n-by-k and B n-by-m.
RealMatrix matmul_at(const RealMatrix& a, const RealMatrix& b);

// Adds v to every row of m in place; v.size() must equal m.cols().
void add_row_vector(RealMatrix& m, const std::vector<double>& v);

// Per-column sums, length m.cols().
std::vector<double> column_sums(const RealMatrix& m);

}  // namespace fraudnet
