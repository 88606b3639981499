#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "bfly/common.hpp"

namespace bfly {

// Row-major dense real matrix. Constructors reject NaN/Inf entries so that
// max_norm is always finite.
class DenseMatrix {
  public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols);
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);
    DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const double> data() const { return data_; }
    std::span<double> data() { return data_; }
    double* row_ptr(std::size_t i) { return data_.data() + i * cols_; }
    const double* row_ptr(std::size_t i) const { return data_.data() + i * cols_; }

    void validate_finite() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

double max_norm(const DenseMatrix& a);
// Induced L-infinity norm (max absolute row sum).
double inf_norm(const DenseMatrix& a);
double frobenius_norm(const DenseMatrix& a);

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double s, const DenseMatrix& a);
std::vector<double> operator*(const DenseMatrix& a, std::span<const double> x);
DenseMatrix transpose(const DenseMatrix& a);
bool approx_equal(const DenseMatrix& a, const DenseMatrix& b, double tol);

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix direct_sum(const DenseMatrix& a, const DenseMatrix& b);

// CSV serialization: one row per line, entries "%.17g" comma separated.
std::string to_csv(const DenseMatrix& a);
DenseMatrix matrix_from_csv(const std::string& text);

}  // namespace bfly
