#include "bfly/matrix.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>

namespace bfly {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
        throw DimensionError("DenseMatrix: data length does not match rows*cols");
    validate_finite();
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionError("DenseMatrix: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
    validate_finite();
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) a(i, i) = 1.0;
    return a;
}

void DenseMatrix::validate_finite() const {
    for (double v : data_)
        if (!std::isfinite(v)) throw std::invalid_argument("DenseMatrix: non-finite entry");
}

double max_norm(const DenseMatrix& a) {
    double m = 0.0;
    for (double v : a.data()) m = std::max(m, std::fabs(v));
    return m;
}

double inf_norm(const DenseMatrix& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += std::fabs(a(i, j));
        m = std::max(m, s);
    }
    return m;
}

double frobenius_norm(const DenseMatrix& a) {
    double s = 0.0;
    for (double v : a.data()) s += v * v;
    return std::sqrt(s);
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("matmul: inner dimensions differ");
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double* ci = c.row_ptr(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            const double* bk = b.row_ptr(k);
            for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
        }
    }
    return c;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("matrix add: shape mismatch");
    DenseMatrix c = a;
    for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] += b.data()[i];
    return c;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("matrix sub: shape mismatch");
    DenseMatrix c = a;
    for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] -= b.data()[i];
    return c;
}

DenseMatrix operator*(double s, const DenseMatrix& a) {
    DenseMatrix c = a;
    for (double& v : c.data()) v *= s;
    return c;
}

std::vector<double> operator*(const DenseMatrix& a, std::span<const double> x) {
    if (a.cols() != x.size()) throw DimensionError("matvec: shape mismatch");
    std::vector<double> y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* ai = a.row_ptr(i);
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += ai[j] * x[j];
        y[i] = s;
    }
    return y;
}

DenseMatrix transpose(const DenseMatrix& a) {
    DenseMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

bool approx_equal(const DenseMatrix& a, const DenseMatrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        if (std::fabs(a.data()[i] - b.data()[i]) > tol) return false;
    return true;
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
    const std::size_t ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
    constexpr std::size_t kMaxSide = std::size_t{1} << 26;  // keeps rows*cols addressable
    if ((rb != 0 && ra > kMaxSide / rb) || (cb != 0 && ca > kMaxSide / cb))
        throw DimensionError("kron: result dimensions overflow");
    DenseMatrix c(ra * rb, ca * cb);
    for (std::size_t i = 0; i < ra; ++i)
        for (std::size_t j = 0; j < ca; ++j) {
            const double aij = a(i, j);
            for (std::size_t k = 0; k < rb; ++k) {
                double* crow = c.row_ptr(i * rb + k) + j * cb;
                const double* brow = b.row_ptr(k);
                for (std::size_t l = 0; l < cb; ++l) crow[l] = aij * brow[l];
            }
        }
    c.validate_finite();
    return c;
}

DenseMatrix direct_sum(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix c(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, a.cols() + j) = b(i, j);
    return c;
}

std::string to_csv(const DenseMatrix& a) {
    std::string out;
    char buf[40];
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", a(i, j));
            out += buf;
            out += (j + 1 == a.cols()) ? '\n' : ',';
        }
    }
    return out;
}

DenseMatrix matrix_from_csv(const std::string& text) {
    std::vector<double> data;
    std::size_t rows = 0, cols = 0;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::size_t c = 0;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            data.push_back(std::stod(cell));
            ++c;
        }
        if (rows == 0) cols = c;
        else if (c != cols) throw DimensionError("csv: ragged rows");
        ++rows;
    }
    return DenseMatrix(rows, cols, std::move(data));
}

}  // namespace bfly
