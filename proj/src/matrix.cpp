#include "tqp/matrix.hpp"

#include <cassert>
#include <cmath>
#include <cstring>

#include "tqp/errors.hpp"

namespace tqp {

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        m(i, i) = cplx(1.0, 0.0);
    return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw DimensionMismatch("matrix product: shapes do not match");
    Matrix out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            const cplx v = (*this)(i, k);
            if (v == cplx(0.0, 0.0))
                continue;
            for (int j = 0; j < rhs.cols_; ++j)
                out(i, j) += v * rhs(k, j);
        }
    }
    return out;
}

Matrix Matrix::adjoint() const {
    Matrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            out(j, i) = std::conj((*this)(i, j));
    return out;
}

double Matrix::max_abs_diff(const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionMismatch("max_abs_diff: shapes do not match");
    double worst = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i)
        worst = std::max(worst, std::abs(a_[i] - other.a_[i]));
    return worst;
}

double Matrix::unitarity_defect() const {
    if (!square())
        throw DimensionMismatch("unitarity_defect: matrix is not square");
    double worst = 0.0;
    for (int i = 0; i < cols_; ++i) {
        for (int j = 0; j < cols_; ++j) {
            cplx sum(0.0, 0.0);
            for (int k = 0; k < rows_; ++k)
                sum += std::conj((*this)(k, i)) * (*this)(k, j);
            if (i == j)
                sum -= 1.0;
            worst = std::max(worst, std::abs(sum));
        }
    }
    return worst;
}

cplx Matrix::trace_adjoint_product(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw DimensionMismatch("trace_adjoint_product: shapes do not match");
    cplx sum(0.0, 0.0);
    for (std::size_t i = 0; i < a_.size(); ++i)
        sum += std::conj(a_[i]) * rhs.a_[i];
    return sum;
}

bool Matrix::bit_equal(const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        return false;
    return std::memcmp(a_.data(), other.a_.data(), a_.size() * sizeof(cplx)) == 0;
}

std::vector<cplx> operator*(const Matrix& m, const std::vector<cplx>& x) {
    if (static_cast<std::size_t>(m.cols()) != x.size())
        throw DimensionMismatch("matrix-vector product: lengths do not match");
    std::vector<cplx> y(static_cast<std::size_t>(m.rows()));
    for (int i = 0; i < m.rows(); ++i) {
        cplx sum(0.0, 0.0);
        for (int j = 0; j < m.cols(); ++j)
            sum += m(i, j) * x[j];
        y[i] = sum;
    }
    return y;
}

} // namespace tqp
