#include "tcdoa/bounds.hpp"

#include <Eigen/Eigenvalues>
#include <sstream>

namespace tcdoa {

const char* to_string(SignalModel model) {
    switch (model) {
        case SignalModel::Det: return "det";
        case SignalModel::Iid: return "iid";
        case SignalModel::Cor: return "cor";
    }
    return "?";
}

ProjectorCache make_projector_cache(const CMatrix& A, const CMatrix& D, const CMatrix& C) {
    ProjectorCache pc;
    pc.noise_isqrt = herm_sqrt_inv(C);
    const CMatrix G = pc.noise_isqrt * A;
    const CMatrix gram = G.adjoint() * G;
    pc.proj_perp = CMatrix::Identity(A.rows(), A.rows()) -
                   G * solve_hpd(gram, G.adjoint());
    const CMatrix W = pc.noise_isqrt * pc.proj_perp * pc.noise_isqrt;
    pc.dfactor = D.adjoint() * W * D;
    pc.dfactor_re = pc.dfactor.real();
    return pc;
}

ProjectorCache make_projector_cache(const Scenario& scn) {
    return make_projector_cache(scn.A, scn.D, scn.noise.spatial);
}

double steering_gram_condition(const Scenario& scn) {
    const CMatrix white = herm_sqrt_inv(scn.noise.spatial) * scn.A;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(symmetrize(white.adjoint() * white));
    const double lo = es.eigenvalues()(0);
    const double hi = es.eigenvalues()(es.eigenvalues().size() - 1);
    if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

namespace {

// Invert the real symmetric Fisher-type bracket Re(dfactor .* H^T).
RMatrix invert_bracket(const CMatrix& dfactor, const CMatrix& H, const char* who) {
    const RMatrix bracket = dfactor.cwiseProduct(H.transpose()).real();
    Eigen::LDLT<RMatrix> ldlt(0.5 * (bracket + bracket.transpose()));
    const RMatrix id = RMatrix::Identity(bracket.rows(), bracket.cols());
    RMatrix inv = ldlt.solve(id);
    const double resid = (bracket * inv - id).cwiseAbs().maxCoeff();
    if (ldlt.info() != Eigen::Success || !inv.allFinite() || resid > 1e-6) {
        std::ostringstream os;
        os << who << ": singular Fisher bracket (residual " << resid << ")";
        throw NumericalError(os.str());
    }
    return 0.5 * (inv + inv.transpose());
}

void check_spacetime_dims(const Scenario& scn, const BlockMatrix& Pst, Index n,
                          const char* who) {
    const Index m = scn.source_count();
    if (Pst.block_row_size() != m || Pst.block_col_size() != m ||
        Pst.rows() != n * m || Pst.cols() != n * m) {
        std::ostringstream os;
        os << who << ": space-time covariance must be " << n * m << "x" << n * m
           << " with " << m << "x" << m << " blocks";
        throw DimensionError(os.str());
    }
}

// Rs = As Pst As^H + I_n (x) C assembled blockwise.
CMatrix spacetime_data_cov(const Scenario& scn, const BlockMatrix& Pst, Index n) {
    const Index L = scn.sensors();
    const Index m = scn.source_count();
    CMatrix R(n * L, n * L);
    for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i < n; ++i) {
            R.block(i * L, j * L, L, L) =
                scn.A * Pst.dense().block(i * m, j * m, m, m) * scn.A.adjoint();
        }
    }
    for (Index i = 0; i < n; ++i) {
        R.block(i * L, i * L, L, L) += scn.noise.spatial;
    }
    return R;
}

CMatrix kron_identity(const CMatrix& A, Index n) {
    return kron(CMatrix::Identity(n, n), A);
}

}  // namespace

CrbResult crb_det(const Scenario& scn, const CMatrix& P, Index n) {
    const ProjectorCache pc = make_projector_cache(scn);
    RMatrix crb = invert_bracket(pc.dfactor, P, "crb_det") / (2.0 * double(n));
    return CrbResult{std::move(crb), SignalModel::Det, n, scn.hash};
}

CrbResult crb_iid(const Scenario& scn, const CMatrix& P, Index n) {
    const ProjectorCache pc = make_projector_cache(scn);
    const CMatrix R = scn.A * P * scn.A.adjoint() + scn.noise.spatial;
    const CMatrix H = P * scn.A.adjoint() * solve_hpd(R, scn.A * P);
    RMatrix crb = invert_bracket(pc.dfactor, H, "crb_iid") / (2.0 * double(n));
    return CrbResult{std::move(crb), SignalModel::Iid, n, scn.hash};
}

CrbResult crb_cor(const Scenario& scn, const BlockMatrix& Pst, Index n) {
    check_spacetime_dims(scn, Pst, n, "crb_cor");
    const ProjectorCache pc = make_projector_cache(scn);
    const CMatrix R = spacetime_data_cov(scn, Pst, n);
    const CMatrix As = kron_identity(scn.A, n);
    const CMatrix H = block_trace(
        Pst.dense() * (As.adjoint() * solve_hpd(R, As * Pst.dense())),
        scn.source_count());
    RMatrix crb = invert_bracket(pc.dfactor, H, "crb_cor") / 2.0;
    return CrbResult{std::move(crb), SignalModel::Cor, n, scn.hash};
}

CrbResult crb_cor_whitened(const Scenario& scn, const BlockMatrix& Pst, Index n) {
    check_spacetime_dims(scn, Pst, n, "crb_cor_whitened");
    const ProjectorCache pc = make_projector_cache(scn);
    const CMatrix G = kron_identity(pc.noise_isqrt * scn.A, n);
    const CMatrix Rp = G * Pst.dense() * G.adjoint() +
                       CMatrix::Identity(G.rows(), G.rows());
    const CMatrix H = block_trace(
        Pst.dense() * (G.adjoint() * solve_hpd(Rp, G * Pst.dense())),
        scn.source_count());
    RMatrix crb = invert_bracket(pc.dfactor, H, "crb_cor_whitened") / 2.0;
    return CrbResult{std::move(crb), SignalModel::Cor, n, scn.hash};
}

CrbResult crb_cor_via_identity(const Scenario& scn, const BlockMatrix& Pst, Index n) {
    check_spacetime_dims(scn, Pst, n, "crb_cor_via_identity");
    const Index m = scn.source_count();
    const ProjectorCache pc = make_projector_cache(scn);
    const CMatrix id = CMatrix::Identity(n * m, n * m);
    CMatrix Pinv;
    try {
        Pinv = solve_hpd(Pst.dense(), id);
    } catch (const NumericalError&) {
        throw NumericalError(
            "crb_cor_via_identity: singular signal space-time covariance; "
            "use crb_cor for rank-deficient signals");
    }
    const CMatrix Ba = kron_identity(
        scn.A.adjoint() * solve_hpd(scn.noise.spatial, scn.A), n);
    const CMatrix H = block_trace(Pst.dense() - solve_hpd(Pinv + Ba, id), m);
    RMatrix crb = invert_bracket(pc.dfactor, H, "crb_cor_via_identity") / 2.0;
    return CrbResult{std::move(crb), SignalModel::Cor, n, scn.hash};
}

CrbResult crb_cor_high_snr(const Scenario& scn, const BlockMatrix& Pst, Index n) {
    check_spacetime_dims(scn, Pst, n, "crb_cor_high_snr");
    const Index m = scn.source_count();
    const ProjectorCache pc = make_projector_cache(scn);
    const CMatrix gram = scn.A.adjoint() * solve_hpd(scn.noise.spatial, scn.A);
    const CMatrix gram_inv = solve_hpd(gram, CMatrix::Identity(m, m));
    const CMatrix H = block_trace(Pst.dense(), m) - double(n) * gram_inv;
    RMatrix crb = invert_bracket(pc.dfactor, H, "crb_cor_high_snr") / 2.0;
    return CrbResult{std::move(crb), SignalModel::Cor, n, scn.hash};
}

CrbResult crb_cor_low_snr(const Scenario& scn, const BlockMatrix& Pst, Index n) {
    check_spacetime_dims(scn, Pst, n, "crb_cor_low_snr");
    const Index m = scn.source_count();
    const ProjectorCache pc = make_projector_cache(scn);
    CMatrix H = CMatrix::Zero(m, m);
    for (Index r = 0; r < n; ++r) {
        for (Index i = 0; i < n; ++i) {
            const CMatrix X = scn.A * Pst.block_at(r, i);
            H += X.adjoint() * solve_hpd(scn.noise.spatial, X);
        }
    }
    RMatrix crb = invert_bracket(pc.dfactor, H, "crb_cor_low_snr") / 2.0;
    return CrbResult{std::move(crb), SignalModel::Cor, n, scn.hash};
}

RMatrix ivssf_asymptotic_cov(const Scenario& scn, const CMatrix& J, const CMatrix& Phi,
                             Index M, Index n) {
    const Index L = scn.sensors();
    const Index m = scn.source_count();
    if (J.rows() != M * m || J.cols() != m) {
        throw DimensionError("ivssf_asymptotic_cov: J must be (M*m) x m");
    }
    if (Phi.rows() != M * L || Phi.cols() != M * L) {
        throw DimensionError("ivssf_asymptotic_cov: Phi must be (M*L) x (M*L)");
    }
    const ProjectorCache pc = make_projector_cache(scn);
    const CMatrix AmJ = kron_identity(scn.A, M) * J;
    CMatrix H;
    try {
        H = AmJ.adjoint() * solve_hpd(Phi, AmJ);
    } catch (const NumericalError&) {
        throw NumericalError("ivssf_asymptotic_cov: singular instrument covariance");
    }
    return invert_bracket(pc.dfactor, H, "ivssf_asymptotic_cov") / (2.0 * double(n));
}

std::vector<long> one_sided_offsets(Index M) {
    std::vector<long> o;
    for (Index k = 1; k <= M; ++k) o.push_back(-long(k));
    return o;
}

std::vector<long> two_sided_offsets(Index M) {
    if (M % 2 != 0) {
        throw DimensionError("two_sided_offsets: M must be even");
    }
    std::vector<long> o;
    for (Index k = M / 2; k >= 1; --k) o.push_back(long(k));
    for (Index k = 1; k <= M / 2; ++k) o.push_back(-long(k));
    return o;
}

CMatrix window_cross_stack(const SignalCovariance& sig, const std::vector<long>& offsets) {
    const Index m = sig.dim();
    CMatrix J(Index(offsets.size()) * m, m);
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        J.block(Index(i) * m, 0, m, m) = sig.lag(offsets[i]);
    }
    return J;
}

namespace {

CMatrix window_signal_cov(const SignalCovariance& sig, const std::vector<long>& offsets) {
    const Index m = sig.dim();
    const Index W = Index(offsets.size());
    CMatrix P(W * m, W * m);
    for (Index j = 0; j < W; ++j) {
        for (Index i = 0; i < W; ++i) {
            P.block(i * m, j * m, m, m) = sig.lag(offsets[std::size_t(i)] -
                                                  offsets[std::size_t(j)]);
        }
    }
    return P;
}

}  // namespace

CMatrix instrument_covariance(const Scenario& scn, const std::vector<long>& offsets) {
    const Index W = Index(offsets.size());
    const CMatrix Aw = kron_identity(scn.A, W);
    CMatrix Phi = Aw * window_signal_cov(scn.signal, offsets) * Aw.adjoint();
    const Index L = scn.sensors();
    for (Index i = 0; i < W; ++i) {
        Phi.block(i * L, i * L, L, L) += scn.noise.spatial;
    }
    return Phi;
}

CMatrix instrument_cross_covariance(const Scenario& scn, const std::vector<long>& offsets) {
    const Index W = Index(offsets.size());
    return kron_identity(scn.A, W) * window_cross_stack(scn.signal, offsets) *
           scn.A.adjoint();
}

CMatrix window_error_cov(const Scenario& scn, const std::vector<long>& offsets) {
    const Index m = scn.source_count();
    const CMatrix P0 = scn.signal.zero_lag();
    if (offsets.empty()) return P0;
    const CMatrix gram = scn.A.adjoint() * solve_hpd(scn.noise.spatial, scn.A);
    const CMatrix noise_eq = solve_hpd(gram, CMatrix::Identity(m, m));
    const CMatrix J = window_cross_stack(scn.signal, offsets);
    CMatrix M = window_signal_cov(scn.signal, offsets) +
                kron(CMatrix::Identity(Index(offsets.size()), Index(offsets.size())),
                     noise_eq);
    return symmetrize(P0 - J.adjoint() * solve_hpd(M, J));
}

SmootherCovs smoother_error_covs(const Scenario& scn, Index M) {
    if (M < 2 || M % 2 != 0) {
        throw DimensionError("smoother_error_covs: M must be even and >= 2");
    }
    return SmootherCovs{window_error_cov(scn, one_sided_offsets(M)),
                        window_error_cov(scn, two_sided_offsets(M))};
}

}  // namespace tcdoa
