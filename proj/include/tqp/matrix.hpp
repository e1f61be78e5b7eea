#pragma once

#include <complex>
#include <vector>

namespace tqp {

using cplx = std::complex<double>;

// Dense row-major complex matrix. Everything in this project is desk-scale
// (dims of a few hundred at most), so no sparsity and no BLAS.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {}

    static Matrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    const cplx& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

    const std::vector<cplx>& data() const { return a_; }

    Matrix operator*(const Matrix& rhs) const;
    Matrix adjoint() const;

    // Max-entry norm of (this - other); shapes must agree.
    double max_abs_diff(const Matrix& other) const;

    // Max-entry norm of (A†A - I); matrix must be square.
    double unitarity_defect() const;

    // tr(this† · rhs); shapes must agree.
    cplx trace_adjoint_product(const Matrix& rhs) const;

    // Exact bitwise comparison, used by determinism tests.
    bool bit_equal(const Matrix& other) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> a_;
};

// y = M x for a column vector x.
std::vector<cplx> operator*(const Matrix& m, const std::vector<cplx>& x);

} // namespace tqp
