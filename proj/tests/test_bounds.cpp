#include <doctest.h>

#include "tcdoa/bounds.hpp"
#include "tcdoa/scenario_config.hpp"
#include "test_support.hpp"

using namespace tcdoa;
using test::max_abs;
using test::rel_err;

namespace {

// Direct-field scenario builder; noise is set as given (no SNR rescaling).
Scenario make_direct(Index L, AngleConvention conv, std::vector<double> angles,
                     NoiseModel noise, SignalCovariance signal, Index n) {
    Scenario s;
    s.array = ArrayModel::ula(L, conv);
    s.sources.angles = std::move(angles);
    s.signal = std::move(signal);
    s.noise = std::move(noise);
    s.n = n;
    s.A = build_A(s.array, s.sources);
    s.D = build_D(s.array, s.sources);
    return s;
}

// Fig. 1 conditions: two sources at [0, 0.2] rad off broadside, three
// half-wavelength sensors, exponential covariances.
Scenario fig1_scenario(Index n, double snr_db = 10.0) {
    Scenario s = make_direct(3, AngleConvention::BroadsideSine, {0.0, 0.2},
                             NoiseModel::exponential(3, 1.0),
                             SignalCovariance::kronecker(2, 0.2, 0.5, 1.0), n);
    s.noise = apply_snr(s.A, s.signal.zero_lag(), s.noise, snr_db);
    s.snr_db = snr_db;
    return s;
}

Scenario fir_scenario(Index n, double snr_db = 0.0) {
    Scenario s = make_direct(4, AngleConvention::Electrical, {0.8},
                             NoiseModel::exponential(4, 1.0),
                             SignalCovariance::fir({1.0, 0.5, 0.3, 0.2, 0.1},
                                                   CMatrix::Identity(1, 1)),
                             n);
    s.noise = apply_snr(s.A, s.signal.zero_lag(), s.noise, snr_db);
    s.snr_db = snr_db;
    return s;
}

}  // namespace

TEST_SUITE_BEGIN("bounds");

TEST_CASE("projector cache invariants") {
    const Scenario scn = fig1_scenario(4);
    const ProjectorCache pc = make_projector_cache(scn);

    CHECK(rel_err(CMatrix(pc.proj_perp * pc.proj_perp), pc.proj_perp) <= 1e-10);
    CHECK(herm_deviation(pc.proj_perp) <= 1e-10);
    CHECK(max_abs(pc.proj_perp * (pc.noise_isqrt * scn.A)) <= 1e-10);
    CHECK((pc.dfactor_re - pc.dfactor_re.transpose()).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("crb_det scales as 1/n and matches the scalar oracle") {
    const Scenario scn = fig1_scenario(4);
    const CMatrix P0 = scn.signal.zero_lag();
    const CrbResult at4 = crb_det(scn, P0, 4);
    const CrbResult at8 = crb_det(scn, P0, 8);
    CHECK(rel_err(at8.matrix, RMatrix(0.5 * at4.matrix)) <= 1e-14);

    // independently derived single-source closed form: a two-element
    // half-wavelength array with white noise sigma2 and scalar power p has
    // d^H Pi_a_perp d = 1/2, so the bound is sigma2 / (n p).
    const double sigma2 = 0.63;
    const double p = 1.7;
    std::vector<CMatrix> lag0(1, p * CMatrix::Identity(1, 1));
    const Scenario tiny = make_direct(2, AngleConvention::Electrical, {0.8},
                                      NoiseModel::white(2, sigma2),
                                      SignalCovariance::explicit_lags(lag0), 5);
    const CrbResult got = crb_det(tiny, tiny.signal.zero_lag(), 5);
    CHECK(std::abs(got.matrix(0, 0) - sigma2 / (5.0 * p)) <= 1e-12);
    CHECK(got.model == SignalModel::Det);
}

TEST_CASE("crb_iid diverges as the signal power vanishes") {
    const Scenario scn = fig1_scenario(6);
    CHECK_THROWS_AS(crb_iid(scn, CMatrix::Zero(2, 2), 6), NumericalError);
}

TEST_CASE("crb_iid approaches crb_det at high SNR") {
    const Scenario scn = fig1_scenario(8, 40.0);
    const CMatrix P0 = scn.signal.zero_lag();
    const CrbResult det = crb_det(scn, P0, 8);
    const CrbResult iid = crb_iid(scn, P0, 8);
    for (Index j = 0; j < 2; ++j) {
        CHECK(iid.matrix(j, j) / det.matrix(j, j) == doctest::Approx(1.0).epsilon(0.02));
    }
}

TEST_CASE("crb_cor reduces to crb_iid for block-diagonal signal covariance") {
    const Scenario scn = fig1_scenario(6);
    const CMatrix P0 = scn.signal.zero_lag();
    std::vector<CMatrix> lag0(1, P0);
    const SignalCovariance iid_cov = SignalCovariance::explicit_lags(lag0);
    const CrbResult cor = crb_cor(scn, iid_cov.spacetime(6), 6);
    const CrbResult iid = crb_iid(scn, P0, 6);
    CHECK(rel_err(cor.matrix, iid.matrix) <= 1e-10);
}

TEST_CASE("crb_cor evaluation paths agree") {
    const Scenario scn = fig1_scenario(5);
    const BlockMatrix Pst = scn.signal.spacetime(5);
    const CrbResult main = crb_cor(scn, Pst, 5);
    const CrbResult whitened = crb_cor_whitened(scn, Pst, 5);
    const CrbResult identity = crb_cor_via_identity(scn, Pst, 5);
    CHECK(rel_err(whitened.matrix, main.matrix) <= 1e-10);
    CHECK(rel_err(identity.matrix, main.matrix) <= 1e-10);
}

TEST_CASE("crb_cor_via_identity rejects singular signal covariance") {
    const Scenario scn = fig1_scenario(3);
    // rank-one temporal correlation: P_k = P0 for all k is singular over time
    std::vector<CMatrix> lags(3, scn.signal.zero_lag());
    const SignalCovariance flat = SignalCovariance::explicit_lags(lags);
    CHECK_THROWS_WITH_AS(crb_cor_via_identity(scn, flat.spacetime(3), 3),
                         doctest::Contains("crb_cor"), NumericalError);
    // the default path still handles it
    CHECK_NOTHROW(crb_cor(scn, flat.spacetime(3), 3));
}

TEST_CASE("woodbury identity in the scalar-block case") {
    // L=2 white noise with sigma2 = 2 makes a^H C^-1 a = 1; with Pst = I the
    // signal part of the data covariance is exactly I/2 on both routes
    const Index n = 3;
    std::vector<CMatrix> unit_lag(1, CMatrix::Identity(1, 1));
    const Scenario scn = make_direct(2, AngleConvention::Electrical, {0.8},
                                     NoiseModel::white(2, 2.0),
                                     SignalCovariance::explicit_lags(unit_lag), n);
    const BlockMatrix Pst = scn.signal.spacetime(n);
    const CMatrix As = kron(CMatrix::Identity(n, n), scn.A);
    const CMatrix R = As * Pst.dense() * As.adjoint() +
                      kron(CMatrix::Identity(n, n), scn.noise.spatial);
    const CMatrix lhs = Pst.dense() * (As.adjoint() * solve_hpd(R, As * Pst.dense()));
    const CMatrix Ba = As.adjoint() * solve_hpd(
        kron(CMatrix::Identity(n, n), scn.noise.spatial), As);
    CHECK(rel_err(Ba, CMatrix(CMatrix::Identity(n, n))) <= 1e-14);
    CHECK(rel_err(lhs, CMatrix(0.5 * CMatrix::Identity(n, n))) <= 1e-12);
}

TEST_CASE("signal part of the data covariance never exceeds the signal power") {
    // Pst As^H Rs^-1 As Pst <= Pst
    const Scenario scn = fig1_scenario(4);
    const BlockMatrix Pst = scn.signal.spacetime(4);
    const Index n = 4, m = 2, L = 3;
    CMatrix R(n * L, n * L);
    const CMatrix As = kron(CMatrix::Identity(n, n), scn.A);
    R = As * Pst.dense() * As.adjoint() +
        kron(CMatrix::Identity(n, n), scn.noise.spatial);
    const CMatrix lhs = Pst.dense() * (As.adjoint() * solve_hpd(R, As * Pst.dense()));
    CHECK(psd_check(Pst.dense() - lhs, 1e-9));
    (void)m;
}

TEST_CASE("ordering on the Fig. 1 scenario") {
    for (Index n : {2, 4, 8}) {
        const Scenario scn = fig1_scenario(n);
        const CMatrix P0 = scn.signal.zero_lag();
        const CrbResult det = crb_det(scn, P0, n);
        const CrbResult iid = crb_iid(scn, P0, n);
        const CrbResult cor = crb_cor(scn, scn.signal.spacetime(n), n);
        const double scale = spectral_norm(iid.matrix);
        CHECK(min_eigenvalue(RMatrix(iid.matrix - cor.matrix)) >= -1e-9 * scale);
        CHECK(min_eigenvalue(RMatrix(cor.matrix - det.matrix)) >= -1e-9 * scale);
        // strictly between for this temporally correlated scenario
        CHECK(cor.matrix(0, 0) > det.matrix(0, 0));
        CHECK(cor.matrix(0, 0) < iid.matrix(0, 0));
    }
}

TEST_CASE("high-SNR approximation") {
    const Index n = 8;
    const Scenario scn = fig1_scenario(n, 40.0);
    const BlockMatrix Pst = scn.signal.spacetime(n);
    const CrbResult full = crb_cor(scn, Pst, n);
    const CrbResult approx = crb_cor_high_snr(scn, Pst, n);
    for (Index i = 0; i < 2; ++i) {
        for (Index j = 0; j < 2; ++j) {
            CHECK(std::abs(approx.matrix(i, j) - full.matrix(i, j)) <=
                  0.05 * std::abs(full.matrix(i, j)) + 1e-12);
        }
    }

    // depends only on the diagonal blocks: zeroing the off-diagonal blocks
    // leaves the output unchanged exactly
    std::vector<CMatrix> lag0(1, scn.signal.zero_lag());
    const SignalCovariance diag_only = SignalCovariance::explicit_lags(lag0);
    const CrbResult approx_diag = crb_cor_high_snr(scn, diag_only.spacetime(n), n);
    CHECK((approx.matrix - approx_diag.matrix).cwiseAbs().maxCoeff() == 0.0);

    // block-diagonal case equals the blockwise closed form n (P0 - gram^-1)
    const ProjectorCache pc = make_projector_cache(scn);
    const CMatrix gram = scn.A.adjoint() * solve_hpd(scn.noise.spatial, scn.A);
    const CMatrix H = double(n) * (scn.signal.zero_lag() -
                                   solve_hpd(gram, CMatrix::Identity(2, 2)));
    const RMatrix bracket = pc.dfactor.cwiseProduct(H.transpose()).real();
    CHECK(rel_err(approx_diag.matrix, RMatrix(0.5 * bracket.inverse())) <= 1e-12);
}

TEST_CASE("low-SNR approximation") {
    const Index n = 8;
    const Scenario scn = fig1_scenario(n, -30.0);
    const BlockMatrix Pst = scn.signal.spacetime(n);
    const CrbResult full = crb_cor(scn, Pst, n);
    const CrbResult approx = crb_cor_low_snr(scn, Pst, n);
    for (Index i = 0; i < 2; ++i) {
        for (Index j = 0; j < 2; ++j) {
            CHECK(std::abs(approx.matrix(i, j) - full.matrix(i, j)) <=
                  0.05 * std::abs(full.matrix(i, j)) + 1e-12);
        }
    }

    // single block: the bracket is (A P0)^H C^-1 (A P0)
    const Scenario scn1 = fig1_scenario(2, -30.0);
    std::vector<CMatrix> lag0(1, scn1.signal.zero_lag());
    const SignalCovariance one = SignalCovariance::explicit_lags(lag0);
    const CrbResult got = crb_cor_low_snr(scn1, one.spacetime(1), 1);
    const ProjectorCache pc = make_projector_cache(scn1);
    const CMatrix X = scn1.A * scn1.signal.zero_lag();
    const CMatrix H = X.adjoint() * solve_hpd(scn1.noise.spatial, X);
    const RMatrix bracket = pc.dfactor.cwiseProduct(H.transpose()).real();
    const RMatrix want = 0.5 * bracket.inverse();
    CHECK(rel_err(got.matrix, want) <= 1e-12);

    // nonzero off-diagonal blocks only add PSD mass to the low-SNR bracket
    const CrbResult diag_only = crb_cor_low_snr(scn, one.spacetime(n), n);
    CHECK(min_eigenvalue(RMatrix(diag_only.matrix - approx.matrix)) >=
          -1e-9 * spectral_norm(diag_only.matrix));
}

TEST_CASE("ivssf asymptotic covariance") {
    const Index n = 100, M = 2;
    const Scenario scn = fir_scenario(n);
    const CMatrix J = scn.signal.stacked_lags(M);
    const CMatrix Phi = instrument_covariance(scn, one_sided_offsets(M));
    const RMatrix cov = ivssf_asymptotic_cov(scn, J, Phi, M, n);
    CHECK(cov(0, 0) > 0.0);
    CHECK(std::isfinite(cov(0, 0)));

    // suboptimal: never below the temporally correlated bound
    const CrbResult cor = crb_cor(scn, scn.signal.spacetime(n), n);
    CHECK(cov(0, 0) >= cor.matrix(0, 0));

    // a temporally white signal has zero instrument cross covariance
    const Scenario white = make_direct(4, AngleConvention::Electrical, {0.8},
                                       NoiseModel::exponential(4, 1.0),
                                       SignalCovariance::fir({1.0},
                                                             CMatrix::Identity(1, 1)),
                                       n);
    const CMatrix Jw = white.signal.stacked_lags(M);
    CHECK(max_abs(Jw) == 0.0);
    const CMatrix Phiw = instrument_covariance(white, one_sided_offsets(M));
    CHECK_THROWS_AS(ivssf_asymptotic_cov(white, Jw, Phiw, M, n), NumericalError);
}

TEST_CASE("instrument reduction identity") {
    const Scenario scn = fir_scenario(50);
    for (Index M : {2, 4}) {
        const auto offsets = one_sided_offsets(M);
        const CMatrix J = window_cross_stack(scn.signal, offsets);
        const CMatrix Phi = instrument_covariance(scn, offsets);
        const CMatrix AmJ = kron(CMatrix::Identity(M, M), scn.A) * J;
        const CMatrix lhs = AmJ.adjoint() * solve_hpd(Phi, AmJ);
        const CMatrix rhs = scn.signal.zero_lag() - window_error_cov(scn, offsets);
        CHECK(rel_err(lhs, rhs) <= 1e-9);
    }
}

TEST_CASE("smoother error covariances") {
    // white signal: nothing is predictable from non-contemporaneous samples
    const Scenario white = make_direct(4, AngleConvention::Electrical, {0.8},
                                       NoiseModel::exponential(4, 1.0),
                                       SignalCovariance::fir({1.0},
                                                             CMatrix::Identity(1, 1)),
                                       20);
    const SmootherCovs wcov = smoother_error_covs(white, 2);
    CHECK(rel_err(wcov.prediction, white.signal.zero_lag()) <= 1e-12);
    CHECK(rel_err(wcov.smoothing, white.signal.zero_lag()) <= 1e-12);

    // FIR scenario: the two-sided window strictly beats one-sided prediction
    const Scenario scn = fir_scenario(100);
    const SmootherCovs cov = smoother_error_covs(scn, 2);
    const CMatrix gap = cov.prediction - cov.smoothing;
    CHECK(psd_check(gap, 1e-9));
    CHECK(gap.real().trace() > 1e-3);

    CHECK_THROWS_AS(smoother_error_covs(scn, 3), DimensionError);
}

TEST_CASE("whitening and inversion identities on a random scenario") {
    auto gen = test::rng(31);
    const Scenario scn = make_direct(4, AngleConvention::Electrical, {-1.1, 0.7},
                                     NoiseModel::exponential(4, 0.8, 0.9),
                                     SignalCovariance::kronecker(2, 0.4, 0.6, 1.3), 3);
    const Index n = 3;
    const BlockMatrix Pst = scn.signal.spacetime(n);
    const CMatrix As = kron(CMatrix::Identity(n, n), scn.A);
    const CMatrix Cs = kron(CMatrix::Identity(n, n), scn.noise.spatial);
    const CMatrix R = As * Pst.dense() * As.adjoint() + Cs;
    const CMatrix q = As.adjoint() * solve_hpd(R, As);

    const CMatrix G = kron(CMatrix::Identity(n, n), herm_sqrt_inv(scn.noise.spatial)) *
                      As;
    const CMatrix Rp = G * Pst.dense() * G.adjoint() +
                       CMatrix::Identity(G.rows(), G.rows());
    CHECK(rel_err(CMatrix(G.adjoint() * solve_hpd(Rp, G)), q) <= 1e-10);

    const CMatrix id = CMatrix::Identity(q.rows(), q.cols());
    const CMatrix gram_inv = solve_hpd(As.adjoint() * solve_hpd(Cs, As), id);
    CHECK(rel_err(CMatrix(solve_hpd(Pst.dense() + gram_inv, id)), q) <= 1e-9);
    (void)gen;
}

TEST_SUITE_END();
