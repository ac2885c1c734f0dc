#pragma once

// Array geometry, steering models, and signal/noise covariance construction.
//
// The internal bearing parameter is the electrical angle omega: the phase
// advance per half-wavelength of aperture. A sensor at position p (in
// half-wavelength units) responds to a source at omega with exp(i*omega*p).
// Source angles theta map to omega through the array's angle convention:
//
//   Cosine        omega = pi * cos(theta)   (endfire-referenced angle)
//   BroadsideSine omega = pi * sin(theta)   (broadside-referenced angle)
//   Electrical    omega = theta             (the parameter is omega itself)
//
// Every stationary signal covariance built here has Hermitian lag blocks
// (a real, even temporal autocorrelation times a Hermitian spatial factor),
// so E[s(t-k) s(t)^H] and E[s(t) s(t-k)^H] coincide.

#include <cstdint>
#include <memory>
#include <vector>

#include "tcdoa/matstack.hpp"

namespace tcdoa {

enum class AngleConvention { Cosine, BroadsideSine, Electrical };

struct ArrayModel {
    std::vector<double> positions;  // half-wavelength units, strictly increasing
    AngleConvention convention = AngleConvention::Cosine;

    // Uniform linear array with the given element count and spacing
    // (spacing 1.0 = half-wavelength, the paper's layout).
    static ArrayModel ula(Index elements, AngleConvention conv = AngleConvention::Cosine,
                          double spacing = 1.0);

    Index size() const { return static_cast<Index>(positions.size()); }
    void validate() const;

    double omega(double angle) const;
    double omega_slope(double angle) const;  // d omega / d angle

    // a(omega): element k is exp(i * omega * p_k); unit modulus everywhere.
    CVector steering_omega(double omega) const;
    CVector steering(double angle) const;
    // d a / d angle, analytic.
    CVector steering_derivative(double angle) const;
};

struct SourceSet {
    std::vector<double> angles;  // in the array's convention parameter

    Index count() const { return static_cast<Index>(angles.size()); }
    void validate(Index sensors) const;  // m < L, angles distinct
};

// Steering matrix A = [a(theta_1) ... a(theta_m)]; throws when the columns
// are numerically rank deficient (violated manifold assumption).
CMatrix build_A(const ArrayModel& array, const SourceSet& sources);
// Derivative matrix D = [d a/d theta_1 ... d a/d theta_m].
CMatrix build_D(const ArrayModel& array, const SourceSet& sources);

struct NoiseModel {
    CMatrix spatial;      // C, Hermitian positive definite L x L
    double sigma2 = 1.0;  // power scale already folded into `spatial`

    // C_ij = sigma2 * exp(-rate * |i-j|), the exponential Toeplitz family.
    static NoiseModel exponential(Index sensors, double sigma2, double rate = 1.0);
    static NoiseModel white(Index sensors, double sigma2);

    Index sensors() const { return spatial.rows(); }
    // Space-time lift I_n (x) C.
    BlockMatrix spacetime(Index n) const;
};

// Stationary signal covariance: lag blocks P_k (Hermitian, P_{-k} = P_k^H)
// and the block-Toeplitz space-time matrix built from them with
// block(i,j) = P_{i-j}.
class SignalCovariance {
  public:
    SignalCovariance() = default;

    // Separable exponential model: P_k = exp(-alpha_t*|k|) * Ps with
    // [Ps]_ij = power * exp(-alpha_s*|i-j|). alpha_t = +inf gives the iid model.
    static SignalCovariance kronecker(Index sources, double alpha_t, double alpha_s,
                                      double power);
    // FIR-filtered model: temporal autocorrelation r(k) of the unit-energy
    // (L2-normalized) taps; P_k = r(k) * Ps; r(0) = 1.
    static SignalCovariance fir(std::vector<double> taps, CMatrix spatial);
    // Arbitrary lag blocks for k = 0..K; negative lags derived as P_k^H,
    // zero beyond K.
    static SignalCovariance explicit_lags(std::vector<CMatrix> lags);

    Index dim() const;          // m
    CMatrix zero_lag() const;   // P_0
    CMatrix lag(long k) const;  // P_k for any k

    // nm x nm block-Toeplitz space-time matrix, block(i,j) = P_{i-j}.
    BlockMatrix spacetime(Index n) const;
    // [P_1; P_2; ...; P_M], the stacked one-sided cross-covariances.
    CMatrix stacked_lags(Index M) const;
    // [P_{-half}; ...; P_{-1}; P_0; P_1; ...; P_{half}] stacked.
    CMatrix two_sided_stack(Index half) const;

    // Normalized FIR taps when built from the fir model; empty otherwise.
    const std::vector<double>& taps() const { return taps_; }

  private:
    CMatrix spatial_;                // Ps for separable models
    double alpha_t_ = 0.0;           // exponential decay (separable-exponential)
    bool exp_decay_ = false;
    std::vector<double> temporal_;   // r(k), k = 0.. (fir / derived)
    std::vector<CMatrix> lags_;      // explicit P_k, k = 0..K
    std::vector<double> taps_;       // normalized taps for the fir model
};

// Noise scaled so that the per-sensor average power ratio
// (Tr(A P0 A^H)/L) / (Tr(C)/L) equals 10^(snr_db/10).
NoiseModel apply_snr(const CMatrix& A, const CMatrix& P0, const NoiseModel& base,
                     double snr_db);

// A fully materialized experiment scenario (immutable after construction).
struct Scenario {
    ArrayModel array;
    SourceSet sources;
    SignalCovariance signal;
    NoiseModel noise;  // SNR-scaled
    Index n = 2;
    double snr_db = 0.0;
    std::uint64_t hash = 0;

    CMatrix A;  // L x m steering matrix
    CMatrix D;  // L x m steering derivative matrix

    Index sensors() const { return array.size(); }
    Index source_count() const { return sources.count(); }
    // True source parameters mapped to electrical angles.
    std::vector<double> omegas() const;
};

}  // namespace tcdoa
