#pragma once

#include <cstddef>
#include <vector>

#include "pathlap/errors.hpp"
#include "pathlap/rational.hpp"

namespace pathlap {

// Dense matrix of exact rationals. Zero-sized dimensions are legal and show up
// routinely (empty boundary matrices); products with a zero inner dimension
// yield zero matrices of the outer shape.
class rational_matrix {
public:
    rational_matrix() : rows_(0), cols_(0) {}
    rational_matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static rational_matrix identity(std::size_t n) {
        rational_matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_empty() const { return rows_ == 0 || cols_ == 0; }

    rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    rational_matrix transpose() const {
        rational_matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero() const {
        for (const auto& v : data_)
            if (v != 0) return false;
        return true;
    }

    friend rational_matrix operator*(const rational_matrix& a, const rational_matrix& b) {
        if (a.cols_ != b.rows_) throw internal_error("matrix product shape mismatch");
        rational_matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const rational& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    if (b(k, j) == 0) continue;
                    c(i, j) += aik * b(k, j);
                }
            }
        return c;
    }

    friend rational_matrix operator+(const rational_matrix& a, const rational_matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw internal_error("matrix sum shape mismatch");
        rational_matrix c(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) c.data_[i] = a.data_[i] + b.data_[i];
        return c;
    }

    friend rational_matrix operator-(const rational_matrix& a) {
        rational_matrix c(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) c.data_[i] = -a.data_[i];
        return c;
    }

    friend bool operator==(const rational_matrix& a, const rational_matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    // First `count` rows as a new matrix.
    rational_matrix top_rows(std::size_t count) const {
        rational_matrix m(count, cols_);
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
        return m;
    }

    rational_matrix column(std::size_t j) const {
        rational_matrix m(rows_, 1);
        for (std::size_t i = 0; i < rows_; ++i) m(i, 0) = (*this)(i, j);
        return m;
    }

    friend rational_matrix hcat(const rational_matrix& a, const rational_matrix& b) {
        if (a.rows_ != b.rows_) throw internal_error("hcat row mismatch");
        rational_matrix c(a.rows_, a.cols_ + b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t j = 0; j < a.cols_; ++j) c(i, j) = a(i, j);
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, a.cols_ + j) = b(i, j);
        }
        return c;
    }

private:
    std::size_t rows_, cols_;
    std::vector<rational> data_;
};

// Dense symmetric matrix of doubles, the hand-off point to the eigensolver.
class symmetric_matrix {
public:
    symmetric_matrix() : n_(0) {}
    explicit symmetric_matrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

    std::size_t order() const { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const double& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    friend bool operator==(const symmetric_matrix& a, const symmetric_matrix& b) {
        return a.n_ == b.n_ && a.a_ == b.a_;
    }

private:
    std::size_t n_;
    std::vector<double> a_;
};

// Exact symmetry is required; the rational input is where symmetry is decided.
inline symmetric_matrix to_symmetric(const rational_matrix& m) {
    if (m.rows() != m.cols()) throw internal_error("to_symmetric: matrix not square");
    symmetric_matrix s(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m(i, j) != m(j, i)) throw internal_error("to_symmetric: matrix not symmetric");
            s(i, j) = to_double(m(i, j));
        }
    return s;
}

} // namespace pathlap
