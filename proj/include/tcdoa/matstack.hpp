#pragma once

// Complex dense and block-structured linear algebra primitives.
//
// All matrices are double-precision complex, stored column-major (Eigen
// default). Values are immutable after construction; every function here is
// pure, so concurrent read-only sharing is safe.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "tcdoa/errors.hpp"

namespace tcdoa {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Dense matrix partitioned into a uniform grid of blocks.
class BlockMatrix {
  public:
    BlockMatrix() = default;
    BlockMatrix(CMatrix data, Index block_rows_size, Index block_cols_size);

    const CMatrix& dense() const { return data_; }
    Index rows() const { return data_.rows(); }
    Index cols() const { return data_.cols(); }
    Index block_row_size() const { return brs_; }
    Index block_col_size() const { return bcs_; }
    Index block_rows() const { return data_.rows() / brs_; }
    Index block_cols() const { return data_.cols() / bcs_; }

    // (i,j) block copy; throws DimensionError when out of range.
    CMatrix block_at(Index i, Index j) const;

  private:
    CMatrix data_;
    Index brs_ = 1;
    Index bcs_ = 1;
};

// Kronecker product: (i,j) block of the result is a(i,j) * b.
CMatrix kron(const CMatrix& a, const CMatrix& b);

// Entrywise (Hadamard-Schur) product; dimensions must agree.
CMatrix hadamard(const CMatrix& a, const CMatrix& b);

// Sum of the m-by-m diagonal blocks of a square matrix whose size m divides.
CMatrix block_trace(const CMatrix& p, Index m);
CMatrix block_trace(const BlockMatrix& p);

CMatrix block_at(const BlockMatrix& p, Index i, Index j);

// max |a - a^H| over entries.
double herm_deviation(const CMatrix& a);

// (a + a^H)/2. All Hermitian inputs are symmetrized before factorization to
// suppress rounding drift.
CMatrix symmetrize(const CMatrix& a);

// Inverse Hermitian square root S of a Hermitian positive definite matrix:
// S a S = I, S = S^H. Throws NumericalError (naming the offending eigenvalue)
// when the smallest eigenvalue is <= 1e-12 times the largest.
CMatrix herm_sqrt_inv(const CMatrix& a);

// Solve a X = b for Hermitian positive definite a (Cholesky).
CMatrix solve_hpd(const CMatrix& a, const CMatrix& b);

// Lower-triangular F with F F^H = a, for Hermitian positive definite a.
CMatrix cholesky_factor(const CMatrix& a);

struct SvdResult {
    CMatrix left;    // rows x k, orthonormal columns
    RVector values;  // k, nonincreasing, nonnegative
    CMatrix right;   // cols x k, orthonormal columns
};

// Leading k singular triplets of a; k must not exceed min(rows, cols).
SvdResult dominant_svd(const CMatrix& a, Index k);

// True iff the smallest eigenvalue of the (Hermitian) input is
// >= -tol * max(1, largest eigenvalue). Throws on non-Hermitian input.
bool psd_check(const CMatrix& a, double tol);

// Smallest eigenvalue of a Hermitian matrix (helper for ordering checks).
double min_eigenvalue(const CMatrix& a);
double min_eigenvalue(const RMatrix& a);

// Spectral norm (largest singular value) of a real symmetric matrix.
double spectral_norm(const RMatrix& a);

}  // namespace tcdoa
