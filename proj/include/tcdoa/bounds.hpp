#pragma once

// Cramer-Rao bounds for the three signal models, the IV-SSF asymptotic
// covariance, the high/low-SNR CRB approximations, and the prediction /
// smoothing error covariances behind the two-sided instrument analysis.
//
// All bounds share the bracket structure
//
//   [ Re( (D^H C^-1/2 Pi0p C^-1/2 D) .* H^T ) ]^-1
//
// with a model-specific Hermitian factor H; the bracket is a real symmetric
// Fisher-type matrix, so every returned bound is real symmetric PSD.

#include <vector>

#include "tcdoa/scenario.hpp"

namespace tcdoa {

enum class SignalModel { Det, Iid, Cor };
const char* to_string(SignalModel model);

struct CrbResult {
    RMatrix matrix;  // m x m, radians^2 of the array's bearing parameter
    SignalModel model = SignalModel::Det;
    Index n = 0;
    std::uint64_t scenario_hash = 0;
};

struct ProjectorCache {
    CMatrix noise_isqrt;  // C^-1/2
    CMatrix proj_perp;    // Pi0p, projector onto the complement of C^-1/2 A
    CMatrix dfactor;      // D^H C^-1/2 Pi0p C^-1/2 D
    RMatrix dfactor_re;   // real part of dfactor
};

ProjectorCache make_projector_cache(const CMatrix& A, const CMatrix& D, const CMatrix& C);
ProjectorCache make_projector_cache(const Scenario& scn);

// Condition number of the whitened steering gram (C^-1/2 A)^H (C^-1/2 A);
// +inf when the gram is numerically singular. Near-coherent sources drive
// this up as 1/gap^2, and past about 1e5 the nested space-time inversions in
// the bounds lose the digits the ordering checks rely on, so randomized
// verification rejects such scenarios as ill-conditioned.
double steering_gram_condition(const Scenario& scn);
inline constexpr double kConditionScreen = 1e5;

// Deterministic-signal bound, factor 1/(2n).
CrbResult crb_det(const Scenario& scn, const CMatrix& P, Index n);

// iid stochastic bound with H = P A^H R^-1 A P, R = A P A^H + C.
CrbResult crb_iid(const Scenario& scn, const CMatrix& P, Index n);

// Temporally correlated bound, factor 1/2, H = BTr_m(Pst As^H Rs^-1 As Pst)
// with As = I_n (x) A and Rs = As Pst As^H + I_n (x) C. Works for
// positive semidefinite Pst (no signal-covariance inversion involved).
CrbResult crb_cor(const Scenario& scn, const BlockMatrix& Pst, Index n);

// Same bound through the whitened route G = Cs^-1/2 As, R' = G Pst G^H + I
// (independent evaluation path, used for cross-checks).
CrbResult crb_cor_whitened(const Scenario& scn, const BlockMatrix& Pst, Index n);

// Same bound through Pst As^H Rs^-1 As Pst = Pst - (Pst^-1 + As^H Cs^-1 As)^-1;
// requires positive definite Pst and refers callers to crb_cor otherwise.
CrbResult crb_cor_via_identity(const Scenario& scn, const BlockMatrix& Pst, Index n);

// High-SNR approximation: H = BTr_m(Pst) - n (A^H C^-1 A)^-1. Depends only on
// the diagonal blocks of Pst.
CrbResult crb_cor_high_snr(const Scenario& scn, const BlockMatrix& Pst, Index n);

// Low-SNR approximation: H = sum_{i,r} (A Pst^{ri})^H C^-1 (A Pst^{ri}).
CrbResult crb_cor_low_snr(const Scenario& scn, const BlockMatrix& Pst, Index n);

// Asymptotic IV-SSF error covariance from the instrument cross statistics:
// (1/2n) [ Re(dfactor .* (J^H Am^H Phi^-1 Am J)^T) ]^-1 with Am = I_M (x) A.
RMatrix ivssf_asymptotic_cov(const Scenario& scn, const CMatrix& J, const CMatrix& Phi,
                             Index M, Index n);

// Instrument time offsets relative to the current sample.
std::vector<long> one_sided_offsets(Index M);  // {-1, ..., -M}
std::vector<long> two_sided_offsets(Index M);  // {+M/2, ..., +1, -1, ..., -M/2}

// Population covariance of the stacked snapshots at the given offsets:
// Phi = Aw Pw Aw^H + I_W (x) C.
CMatrix instrument_covariance(const Scenario& scn, const std::vector<long>& offsets);

// Population cross covariance E[phi(t) x^H(t)] = (I_W (x) A) Jw A^H.
CMatrix instrument_cross_covariance(const Scenario& scn, const std::vector<long>& offsets);

// Stacked signal cross covariance for a window: block i is P_{o_i}.
CMatrix window_cross_stack(const SignalCovariance& sig, const std::vector<long>& offsets);

// Error covariance of the best linear estimate of s(t) from the noisy window
// z(t+o) = s(t+o) + w(t+o), w temporally white with spatial covariance
// (A^H C^-1 A)^-1:  Sigma = P0 - Jw^H (Pw + I_W (x) (A^H C^-1 A)^-1)^-1 Jw.
CMatrix window_error_cov(const Scenario& scn, const std::vector<long>& offsets);

struct SmootherCovs {
    CMatrix prediction;  // Sigma_e: window {-1..-M}
    CMatrix smoothing;   // Sigma_eps: window {+M/2..+1, -1..-M/2}
};

// Prediction vs two-sided smoothing error covariances for an M-sample window;
// prediction - smoothing is PSD.
SmootherCovs smoother_error_covs(const Scenario& scn, Index M);

}  // namespace tcdoa
