#pragma once

// One-sided and two-sided IV-SSF direction estimation: instrument stacking,
// sample cross statistics, dominant-subspace extraction, criterion
// evaluation, and the coarse-to-fine grid search over the electrical angle.
//
// Snapshot time indices t are 1-based throughout this module, matching the
// t = 1..n sample convention elsewhere.

#include <vector>

#include "tcdoa/scenario.hpp"

namespace tcdoa {

enum class IvVariant { OneSided, TwoSided };

struct IvConfig {
    Index M = 2;  // instrument count (stacked snapshots); even for two-sided
    IvVariant variant = IvVariant::OneSided;
    double coarse_step = 0.01;   // radians of omega
    double fine_step = 0.001;    // radians of omega
    double omega_min = -3.141592653589793;
    double omega_max = 3.141592653589793;
    Index r0_block = 0;  // which L x L diagonal block of Phi-hat supplies R0
    int max_sweeps = 20;

    void validate_structure() const;
    void validate(Index n) const;  // adds the M < n/2 estimation requirement
};

struct IvStatistics {
    CMatrix sigma;            // ML x L sample cross covariance
    CMatrix phi;              // ML x ML sample instrument covariance
    CMatrix r0;               // L x L diagonal block of phi
    CMatrix right_vectors;    // L x m dominant right singular vectors
    RVector singular_values;  // m, nonincreasing
    Index sensors = 0;
    Index instruments = 0;
    Index subspace_rank = 0;
    // cached for criterion evaluation
    CMatrix r0_isqrt;         // R0^{-1/2}
    CMatrix weighted_basis;   // R0^{-1/2} Vs diag(singular values), L x m
};

// Stacked instrument vector for (1-based) sample index t:
//   one-sided  [x(t-1); ...; x(t-M)]
//   two-sided  [x(t+M/2); ...; x(t+1); x(t-1); ...; x(t-M/2)]
CVector build_instrument(const CMatrix& X, Index t, const IvConfig& cfg);

// First and last valid 1-based t for the variant; both variants keep exactly
// n - M terms so their sample averages are comparable.
std::pair<Index, Index> valid_sample_range(Index n, const IvConfig& cfg);

struct IvMoments {
    CMatrix sigma;  // ML x L
    CMatrix phi;    // ML x ML Hermitian PSD
    CMatrix r0;     // L x L diagonal block of phi
    Index terms = 0;
};

// Plain averages over the variant's valid sample range; needs at least one
// valid index.
IvMoments sample_cross_moments(const CMatrix& X, const IvConfig& cfg);

// Sample statistics and the rank-m dominant subspace of Phi^{-1/2} Sigma.
// Throws NumericalError when Phi-hat is numerically singular (advising a
// larger n or smaller M).
IvStatistics sample_statistics(const CMatrix& X, const IvConfig& cfg, Index num_sources);

// Subspace-fitting criterion at a candidate source vector (electrical
// angles). Nonnegative; +inf when the candidate steering matrix is rank
// deficient (candidate rejected).
double criterion(const std::vector<double>& omegas, const IvStatistics& stats,
                 const ArrayModel& array);

struct EstimateResult {
    std::vector<double> omegas;         // ascending
    double criterion_value = 0.0;
    std::vector<double> coarse_omegas;  // coarse-stage argmin
    int sweeps = 0;                     // alternating sweeps used (m > 1)
    long rejected_candidates = 0;       // rank-deficient grid points skipped
};

// Two-stage grid search: coarse scan of [omega_min, omega_max), then a fine
// scan over +-coarse_step around the coarse argmin. Sources beyond the first
// are located by alternating per-coordinate minimization (at most max_sweeps
// passes). Ties break toward the smallest omega. Pure function of (X, cfg).
EstimateResult estimate(const CMatrix& X, const ArrayModel& array, Index num_sources,
                        const IvConfig& cfg);

}  // namespace tcdoa
