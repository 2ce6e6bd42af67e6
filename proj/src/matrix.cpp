#include "fraudnet/matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fraudnet {

namespace {

[[noreturn]] void shape_error(const char* op, const RealMatrix& a, const RealMatrix& b) {
    throw std::invalid_argument(std::string(op) + ": incompatible shapes " +
                                std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                " and " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
}

}  // namespace

RealMatrix::RealMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

RealMatrix RealMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    RealMatrix m;
    m.rows_ = rows.size();
    m.cols_ = rows.size() > 0 ? rows.begin()->size() : 0;
    m.data_.reserve(m.rows_ * m.cols_);
    for (const auto& row : rows) {
        if (row.size() != m.cols_) {
            throw std::invalid_argument("from_rows: ragged row lengths");
        }
        m.data_.insert(m.data_.end(), row.begin(), row.end());
    }
    return m;
}

bool RealMatrix::all_finite() const {
    for (double v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

RealMatrix RealMatrix::select_rows(const std::vector<std::size_t>& indices) const {
    RealMatrix out(indices.size(), cols_);
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] >= rows_) {
            throw std::out_of_range("select_rows: row index " + std::to_string(indices[i]) +
                                    " out of range");
        }
        const double* src = row_ptr(indices[i]);
        double* dst = out.row_ptr(i);
        for (std::size_t c = 0; c < cols_; ++c) dst[c] = src[c];
    }
    return out;
}

RealMatrix matmul(const RealMatrix& a, const RealMatrix& b) {
    if (a.cols() != b.rows()) shape_error("matmul", a, b);
    RealMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* arow = a.row_ptr(i);
        double* crow = c.row_ptr(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = arow[k];
            if (aik == 0.0) continue;
            const double* brow = b.row_ptr(k);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                crow[j] += aik * brow[j];
            }
        }
    }
    return c;
}

RealMatrix matmul_bt(const RealMatrix& a, const RealMatrix& b) {
    if (a.cols() != b.cols()) shape_error("matmul_bt", a, b);
    RealMatrix c(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* arow = a.row_ptr(i);
        double* crow = c.row_ptr(i);
        for (std::size_t j = 0; j < b.rows(); ++j) {
            const double* brow = b.row_ptr(j);
            double sum = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) {
                sum += arow[k] * brow[k];
            }
            crow[j] = sum;
        }
    }
    return c;
}

RealMatrix matmul_at(const RealMatrix& a, const RealMatrix& b) {
    if (a.rows() != b.rows()) shape_error("matmul_at", a, b);
    RealMatrix c(a.cols(), b.cols());
    for (std::size_t n = 0; n < a.rows(); ++n) {
        const double* arow = a.row_ptr(n);
        const double* brow = b.row_ptr(n);
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const double ani = arow[i];
            if (ani == 0.0) continue;
            double* crow = c.row_ptr(i);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                crow[j] += ani * brow[j];
            }
        }
    }
    return c;
}

void add_row_vector(RealMatrix& m, const std::vector<double>& v) {
    if (v.size() != m.cols()) {
        throw std::invalid_argument("add_row_vector: vector length " + std::to_string(v.size()) +
                                    " does not match column count " + std::to_string(m.cols()));
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
        double* row = m.row_ptr(r);
        for (std::size_t c = 0; c < m.cols(); ++c) row[c] += v[c];
    }
}

std::vector<double> column_sums(const RealMatrix& m) {
    std::vector<double> sums(m.cols(), 0.0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const double* row = m.row_ptr(r);
        for (std::size_t c = 0; c < m.cols(); ++c) sums[c] += row[c];
    }
    return sums;
}

}  // namespace fraudnet
