#include "tcdoa/matstack.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <sstream>

namespace tcdoa {

BlockMatrix::BlockMatrix(CMatrix data, Index block_row_size, Index block_col_size)
    : data_(std::move(data)), brs_(block_row_size), bcs_(block_col_size) {
    if (brs_ < 1 || bcs_ < 1) {
        throw DimensionError("BlockMatrix: block sizes must be positive");
    }
    if (data_.rows() % brs_ != 0 || data_.cols() % bcs_ != 0) {
        std::ostringstream os;
        os << "BlockMatrix: " << data_.rows() << "x" << data_.cols()
           << " not divisible into " << brs_ << "x" << bcs_ << " blocks";
        throw DimensionError(os.str());
    }
}

CMatrix BlockMatrix::block_at(Index i, Index j) const {
    if (i < 0 || j < 0 || i >= block_rows() || j >= block_cols()) {
        std::ostringstream os;
        os << "block_at: index (" << i << "," << j << ") outside " << block_rows()
           << "x" << block_cols() << " block grid";
        throw DimensionError(os.str());
    }
    return data_.block(i * brs_, j * bcs_, brs_, bcs_);
}

CMatrix block_at(const BlockMatrix& p, Index i, Index j) { return p.block_at(i, j); }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index j = 0; j < a.cols(); ++j) {
        for (Index i = 0; i < a.rows(); ++i) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

CMatrix hadamard(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        std::ostringstream os;
        os << "hadamard: dimension mismatch " << a.rows() << "x" << a.cols() << " vs "
           << b.rows() << "x" << b.cols();
        throw DimensionError(os.str());
    }
    return a.cwiseProduct(b);
}

CMatrix block_trace(const CMatrix& p, Index m) {
    if (p.rows() != p.cols()) {
        throw DimensionError("block_trace: matrix must be square");
    }
    if (m < 1 || p.rows() % m != 0) {
        std::ostringstream os;
        os << "block_trace: block size " << m << " does not divide " << p.rows();
        throw DimensionError(os.str());
    }
    const Index nblocks = p.rows() / m;
    CMatrix out = CMatrix::Zero(m, m);
    for (Index i = 0; i < nblocks; ++i) {
        out += p.block(i * m, i * m, m, m);
    }
    return out;
}

CMatrix block_trace(const BlockMatrix& p) {
    if (p.block_row_size() != p.block_col_size()) {
        throw DimensionError("block_trace: blocks must be square");
    }
    return block_trace(p.dense(), p.block_row_size());
}

double herm_deviation(const CMatrix& a) {
    if (a.rows() != a.cols()) {
        throw DimensionError("herm_deviation: matrix must be square");
    }
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

CMatrix symmetrize(const CMatrix& a) { return 0.5 * (a + a.adjoint()); }

namespace {

Eigen::SelfAdjointEigenSolver<CMatrix> herm_eig(const CMatrix& a, const char* who) {
    if (a.rows() != a.cols()) {
        throw DimensionError(std::string(who) + ": matrix must be square");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(symmetrize(a));
    if (es.info() != Eigen::Success) {
        throw NumericalError(std::string(who) + ": eigendecomposition failed");
    }
    return es;
}

}  // namespace

CMatrix herm_sqrt_inv(const CMatrix& a) {
    auto es = herm_eig(a, "herm_sqrt_inv");
    const RVector& ev = es.eigenvalues();
    const double largest = ev(ev.size() - 1);
    const double smallest = ev(0);
    if (smallest <= 1e-12 * largest || largest <= 0.0) {
        std::ostringstream os;
        os << "herm_sqrt_inv: input not positive definite, smallest eigenvalue "
           << smallest << " vs largest " << largest;
        throw NumericalError(os.str());
    }
    return es.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() *
           es.eigenvectors().adjoint();
}

CMatrix solve_hpd(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != a.cols() || a.rows() != b.rows()) {
        throw DimensionError("solve_hpd: incompatible dimensions");
    }
    Eigen::LLT<CMatrix> llt(symmetrize(a));
    if (llt.info() != Eigen::Success) {
        throw NumericalError("solve_hpd: matrix not positive definite");
    }
    return llt.solve(b);
}

CMatrix cholesky_factor(const CMatrix& a) {
    Eigen::LLT<CMatrix> llt(symmetrize(a));
    if (llt.info() != Eigen::Success) {
        throw NumericalError("cholesky_factor: matrix not positive definite");
    }
    return llt.matrixL();
}

SvdResult dominant_svd(const CMatrix& a, Index k) {
    const Index kmax = std::min(a.rows(), a.cols());
    if (k < 1 || k > kmax) {
        std::ostringstream os;
        os << "dominant_svd: k = " << k << " outside [1, " << kmax << "]";
        throw DimensionError(os.str());
    }
    Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SvdResult out;
    out.left = svd.matrixU().leftCols(k);
    out.values = svd.singularValues().head(k);
    out.right = svd.matrixV().leftCols(k);
    return out;
}

bool psd_check(const CMatrix& a, double tol) {
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    const double herm_tol = std::max(tol, 1e-12) * scale;
    if (herm_deviation(a) > herm_tol) {
        std::ostringstream os;
        os << "psd_check: matrix not Hermitian, max deviation " << herm_deviation(a);
        throw NumericalError(os.str());
    }
    auto es = herm_eig(a, "psd_check");
    const RVector& ev = es.eigenvalues();
    return ev(0) >= -tol * std::max(1.0, ev(ev.size() - 1));
}

double min_eigenvalue(const CMatrix& a) {
    return herm_eig(a, "min_eigenvalue").eigenvalues()(0);
}

double min_eigenvalue(const RMatrix& a) {
    Eigen::SelfAdjointEigenSolver<RMatrix> es(0.5 * (a + a.transpose()));
    return es.eigenvalues()(0);
}

double spectral_norm(const RMatrix& a) {
    Eigen::SelfAdjointEigenSolver<RMatrix> es(0.5 * (a + a.transpose()));
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace tcdoa
