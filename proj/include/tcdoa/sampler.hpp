#pragma once

// Synthetic snapshot generation for the three signal models.
//
// All randomness is circular complex Gaussian. Draws use mt19937_64 with an
// explicit Box-Muller transform (generator name "mt19937_64+box-muller"), so
// a given (seed, stream) pair reproduces bit-identical output on any
// conforming platform. Matrices are filled column by column.

#include <cstdint>
#include <random>
#include <string>

#include "tcdoa/scenario.hpp"

namespace tcdoa {

struct RngSpec {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

inline constexpr const char* kRngName = "mt19937_64+box-muller";

// Circular complex standard normal stream: E[z]=0, E[|z|^2]=1, E[z^2]=0.
class CxNormal {
  public:
    explicit CxNormal(RngSpec spec);
    Complex next();
    CVector vector(Index size);
    CMatrix matrix(Index rows, Index cols);  // column-major fill order

  private:
    std::mt19937_64 engine_;
};

struct SnapshotMatrix {
    CMatrix X;  // L x n sensor outputs, one column per time index
    RngSpec rng;
    std::uint64_t scenario_hash = 0;
};

// vec(X) ~ CN(0, Rs) with Rs = As Pst As^H + I_n (x) C, realized through a
// Cholesky factor of Rs.
SnapshotMatrix draw_correlated(const Scenario& scn, const BlockMatrix& Pst, Index n,
                               RngSpec rng);

// s(t) = Ps^{1/2} * (normalized taps convolved with iid CN(0,I) innovations),
// in steady state (the warm-up prefix of length taps-1 is discarded);
// X = A S + V with V columns iid CN(0, C).
SnapshotMatrix draw_fir_stream(const Scenario& scn, const std::vector<double>& taps,
                               Index n, RngSpec rng);

// X = A S + V for a fixed signal sequence S; only the noise is random.
SnapshotMatrix draw_deterministic(const Scenario& scn, const CMatrix& S, RngSpec rng);

// Dispatch on the scenario's signal model: FIR models stream, others factor
// the space-time covariance.
SnapshotMatrix draw_scenario(const Scenario& scn, RngSpec rng);

// Raw snapshot dump: little-endian uint32 L, uint32 n, uint64 seed, uint64
// stream, then 2*L*n little-endian doubles (re,im interleaved, column-major).
void dump_snapshots(const SnapshotMatrix& snap, const std::string& path);
SnapshotMatrix load_snapshots(const std::string& path);

}  // namespace tcdoa
