#include "tcdoa/ivssf.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace tcdoa {

void IvConfig::validate_structure() const {
    if (M < 2) throw ConfigError("IvConfig: M must be >= 2");
    if (variant == IvVariant::TwoSided && M % 2 != 0) {
        throw ConfigError("IvConfig: two-sided variant requires even M");
    }
    if (!(coarse_step > 0.0) || !(fine_step > 0.0) || fine_step >= coarse_step) {
        throw ConfigError("IvConfig: need 0 < fine_step < coarse_step");
    }
    if (!(omega_min < omega_max)) throw ConfigError("IvConfig: empty search interval");
    if (r0_block < 0 || r0_block >= M) throw ConfigError("IvConfig: r0_block out of range");
}

void IvConfig::validate(Index n) const {
    validate_structure();
    if (2 * M >= n) throw ConfigError("IvConfig: need M < n/2");
}

std::pair<Index, Index> valid_sample_range(Index n, const IvConfig& cfg) {
    if (cfg.variant == IvVariant::OneSided) return {cfg.M + 1, n};
    return {cfg.M / 2 + 1, n - cfg.M / 2};
}

CVector build_instrument(const CMatrix& X, Index t, const IvConfig& cfg) {
    const Index L = X.rows();
    const Index n = X.cols();
    const auto [t_first, t_last] = valid_sample_range(n, cfg);
    if (t < t_first || t > t_last) {
        std::ostringstream os;
        os << "build_instrument: t = " << t << " outside valid range [" << t_first
           << ", " << t_last << "]";
        throw DimensionError(os.str());
    }
    CVector phi(cfg.M * L);
    Index slot = 0;
    auto put = [&](Index sample) {  // 1-based sample index
        phi.segment(slot * L, L) = X.col(sample - 1);
        ++slot;
    };
    if (cfg.variant == IvVariant::OneSided) {
        for (Index k = 1; k <= cfg.M; ++k) put(t - k);
    } else {
        for (Index k = cfg.M / 2; k >= 1; --k) put(t + k);
        for (Index k = 1; k <= cfg.M / 2; ++k) put(t - k);
    }
    return phi;
}

IvMoments sample_cross_moments(const CMatrix& X, const IvConfig& cfg) {
    const Index L = X.rows();
    const Index n = X.cols();
    cfg.validate_structure();
    const auto [t_first, t_last] = valid_sample_range(n, cfg);
    const Index terms = t_last - t_first + 1;  // = n - M for both variants
    if (terms < 1) throw ConfigError("sample_cross_moments: no valid sample indices");

    IvMoments mo;
    mo.terms = terms;
    mo.sigma = CMatrix::Zero(cfg.M * L, L);
    mo.phi = CMatrix::Zero(cfg.M * L, cfg.M * L);
    for (Index t = t_first; t <= t_last; ++t) {
        const CVector phi = build_instrument(X, t, cfg);
        mo.sigma.noalias() += phi * X.col(t - 1).adjoint();
        mo.phi.noalias() += phi * phi.adjoint();
    }
    mo.sigma /= double(terms);
    mo.phi /= double(terms);
    mo.phi = symmetrize(mo.phi);
    mo.r0 = mo.phi.block(cfg.r0_block * L, cfg.r0_block * L, L, L);
    return mo;
}

IvStatistics sample_statistics(const CMatrix& X, const IvConfig& cfg, Index num_sources) {
    const Index L = X.rows();
    if (num_sources < 1 || num_sources > L) {
        throw ConfigError("sample_statistics: invalid source count");
    }
    IvMoments mo = sample_cross_moments(X, cfg);

    IvStatistics st;
    st.sensors = L;
    st.instruments = cfg.M;
    st.subspace_rank = num_sources;
    st.sigma = std::move(mo.sigma);
    st.phi = std::move(mo.phi);
    st.r0 = std::move(mo.r0);

    CMatrix phi_isqrt;
    try {
        phi_isqrt = herm_sqrt_inv(st.phi);
        st.r0_isqrt = herm_sqrt_inv(st.r0);
    } catch (const NumericalError& e) {
        throw NumericalError(std::string("sample_statistics: instrument covariance "
                                         "numerically singular (increase n or reduce M): ") +
                             e.what());
    }
    const SvdResult svd = dominant_svd(phi_isqrt * st.sigma, num_sources);
    st.right_vectors = svd.right;
    st.singular_values = svd.values;
    st.weighted_basis = st.r0_isqrt * st.right_vectors *
                        st.singular_values.asDiagonal();
    return st;
}

double criterion(const std::vector<double>& omegas, const IvStatistics& stats,
                 const ArrayModel& array) {
    const Index m = Index(omegas.size());
    const Index L = stats.sensors;
    CMatrix B(L, m);  // R0^{-1/2} A(omega)
    for (Index j = 0; j < m; ++j) {
        B.col(j) = stats.r0_isqrt * array.steering_omega(omegas[std::size_t(j)]);
    }
    const CMatrix gram = symmetrize(B.adjoint() * B);
    Eigen::LLT<CMatrix> llt(gram);
    if (llt.info() != Eigen::Success ||
        gram.diagonal().real().minCoeff() <= 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    // Guard against near-coincident candidates that LLT still accepts.
    const CMatrix id = CMatrix::Identity(m, m);
    const CMatrix gram_inv = llt.solve(id);
    if ((gram * gram_inv - id).cwiseAbs().maxCoeff() > 1e-8) {
        return std::numeric_limits<double>::infinity();
    }
    const CMatrix BhY = B.adjoint() * stats.weighted_basis;
    const double total = stats.weighted_basis.squaredNorm();
    const double projected = (BhY.adjoint() * llt.solve(BhY)).real().trace();
    return std::max(0.0, total - projected);
}

namespace {

struct GridScan {
    double best_omega = 0.0;
    double best_value = std::numeric_limits<double>::infinity();
    long rejected = 0;
};

// Scan candidate values for one coordinate, others held fixed. Strict
// less-than keeps the smallest omega on ties.
GridScan scan_coordinate(std::vector<double>& omegas, std::size_t coord,
                         double lo, double hi, double step,
                         const IvStatistics& stats, const ArrayModel& array) {
    GridScan out;
    const double saved = omegas[coord];
    for (double w = lo; w <= hi + 0.5 * step; w += step) {
        omegas[coord] = w;
        const double value = criterion(omegas, stats, array);
        if (std::isinf(value)) {
            ++out.rejected;
            continue;
        }
        if (value < out.best_value) {
            out.best_value = value;
            out.best_omega = w;
        }
    }
    omegas[coord] = std::isinf(out.best_value) ? saved : out.best_omega;
    return out;
}

}  // namespace

EstimateResult estimate(const CMatrix& X, const ArrayModel& array, Index num_sources,
                        const IvConfig& cfg) {
    const IvStatistics stats = sample_statistics(X, cfg, num_sources);
    const std::size_t m = std::size_t(num_sources);

    EstimateResult res;
    // Coarse stage: evenly spaced start, then alternating full-interval
    // per-coordinate scans until no coordinate moves.
    std::vector<double> omegas(m);
    const double span = cfg.omega_max - cfg.omega_min;
    for (std::size_t j = 0; j < m; ++j) {
        omegas[j] = cfg.omega_min + span * double(j + 1) / double(m + 1);
    }
    double value = std::numeric_limits<double>::infinity();
    for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
        bool moved = false;
        for (std::size_t j = 0; j < m; ++j) {
            const double before = omegas[j];
            const GridScan scan =
                scan_coordinate(omegas, j, cfg.omega_min,
                                cfg.omega_max - 0.5 * cfg.coarse_step, cfg.coarse_step,
                                stats, array);
            res.rejected_candidates += scan.rejected;
            if (!std::isinf(scan.best_value)) value = scan.best_value;
            if (omegas[j] != before) moved = true;
        }
        res.sweeps = sweep + 1;
        if (!moved) break;
        if (m == 1) break;  // single coordinate converges in one pass
    }
    res.coarse_omegas = omegas;

    // Fine stage around each coarse coordinate.
    for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
        bool moved = false;
        for (std::size_t j = 0; j < m; ++j) {
            const double before = omegas[j];
            const double lo = std::max(cfg.omega_min, before - cfg.coarse_step);
            const double hi = std::min(cfg.omega_max, before + cfg.coarse_step);
            const GridScan scan =
                scan_coordinate(omegas, j, lo, hi, cfg.fine_step, stats, array);
            res.rejected_candidates += scan.rejected;
            if (!std::isinf(scan.best_value)) value = scan.best_value;
            if (omegas[j] != before) moved = true;
        }
        if (!moved) break;
        if (m == 1) break;
    }

    if (std::isinf(value)) {
        throw NumericalError("estimate: every grid candidate was rank deficient");
    }
    std::sort(omegas.begin(), omegas.end());
    res.omegas = omegas;
    res.criterion_value = value;
    return res;
}

}  // namespace tcdoa
