#include "tcdoa/sampler.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>

namespace tcdoa {

namespace {

// splitmix64, used to decorrelate (seed, stream) pairs into engine seeds.
std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t mix_seed(RngSpec spec) {
    std::uint64_t x = spec.seed;
    std::uint64_t a = splitmix64(x);
    x ^= 0x6a09e667f3bcc909ULL + spec.stream;
    std::uint64_t b = splitmix64(x);
    return a ^ (b + 0x9e3779b97f4a7c15ULL);
}

}  // namespace

CxNormal::CxNormal(RngSpec spec) : engine_(mix_seed(spec)) {}

Complex CxNormal::next() {
    // Box-Muller in polar form: sqrt(-ln u1) * exp(i 2 pi u2) has unit
    // second moment and zero pseudo-covariance.
    const double u1 = 1.0 - double(engine_() >> 11) * 0x1.0p-53;  // (0, 1]
    const double u2 = double(engine_() >> 11) * 0x1.0p-53;        // [0, 1)
    const double radius = std::sqrt(-std::log(u1));
    return std::polar(radius, 2.0 * std::numbers::pi * u2);
}

CVector CxNormal::vector(Index size) {
    CVector v(size);
    for (Index i = 0; i < size; ++i) v(i) = next();
    return v;
}

CMatrix CxNormal::matrix(Index rows, Index cols) {
    CMatrix m(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) m(i, j) = next();
    }
    return m;
}

SnapshotMatrix draw_correlated(const Scenario& scn, const BlockMatrix& Pst, Index n,
                               RngSpec rng) {
    const Index L = scn.sensors();
    const Index m = scn.source_count();
    if (Pst.rows() != n * m || Pst.cols() != n * m) {
        throw DimensionError("draw_correlated: space-time covariance size mismatch");
    }
    CMatrix R(n * L, n * L);
    for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i < n; ++i) {
            R.block(i * L, j * L, L, L) =
                scn.A * Pst.dense().block(i * m, j * m, m, m) * scn.A.adjoint();
        }
    }
    for (Index i = 0; i < n; ++i) R.block(i * L, i * L, L, L) += scn.noise.spatial;

    CMatrix F;
    try {
        F = cholesky_factor(R);
    } catch (const NumericalError&) {
        throw NumericalError("draw_correlated: space-time data covariance not PD");
    }
    CxNormal gen(rng);
    const CVector z = gen.vector(n * L);
    const CVector x = F * z;
    CMatrix X(L, n);
    for (Index t = 0; t < n; ++t) X.col(t) = x.segment(t * L, L);
    return SnapshotMatrix{std::move(X), rng, scn.hash};
}

SnapshotMatrix draw_fir_stream(const Scenario& scn, const std::vector<double>& taps,
                               Index n, RngSpec rng) {
    if (taps.empty()) throw ConfigError("draw_fir_stream: taps must be nonempty");
    double energy = 0.0;
    for (double t : taps) energy += t * t;
    const double norm = std::sqrt(energy);

    const Index L = scn.sensors();
    const Index m = scn.source_count();
    const Index T = Index(taps.size());
    const CMatrix Ps_half = cholesky_factor(scn.signal.zero_lag());
    const CMatrix C_half = cholesky_factor(scn.noise.spatial);

    CxNormal gen(rng);
    // Innovations for t = 1-(T-1) .. n, so every kept sample sees the full
    // filter support (steady state).
    const CMatrix E = gen.matrix(m, n + T - 1);
    CMatrix S(m, n);
    for (Index t = 0; t < n; ++t) {
        CVector u = CVector::Zero(m);
        for (Index k = 0; k < T; ++k) {
            u += (taps[std::size_t(k)] / norm) * E.col(t + T - 1 - k);
        }
        S.col(t) = Ps_half * u;
    }
    const CMatrix V = C_half * gen.matrix(L, n);
    return SnapshotMatrix{scn.A * S + V, rng, scn.hash};
}

SnapshotMatrix draw_deterministic(const Scenario& scn, const CMatrix& S, RngSpec rng) {
    if (S.rows() != scn.source_count()) {
        throw DimensionError("draw_deterministic: signal row count mismatch");
    }
    const CMatrix C_half = cholesky_factor(scn.noise.spatial);
    CxNormal gen(rng);
    const CMatrix V = C_half * gen.matrix(scn.sensors(), S.cols());
    return SnapshotMatrix{scn.A * S + V, rng, scn.hash};
}

SnapshotMatrix draw_scenario(const Scenario& scn, RngSpec rng) {
    if (!scn.signal.taps().empty()) {
        return draw_fir_stream(scn, scn.signal.taps(), scn.n, rng);
    }
    return draw_correlated(scn, scn.signal.spacetime(scn.n), scn.n, rng);
}

namespace {

static_assert(std::endian::native == std::endian::little,
              "snapshot dumps are little-endian; add byte swapping for this target");

template <typename T>
void put(std::ofstream& out, T value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T take(std::ifstream& in) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    return value;
}

}  // namespace

void dump_snapshots(const SnapshotMatrix& snap, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("dump_snapshots: cannot open " + path);
    put<std::uint32_t>(out, std::uint32_t(snap.X.rows()));
    put<std::uint32_t>(out, std::uint32_t(snap.X.cols()));
    put<std::uint64_t>(out, snap.rng.seed);
    put<std::uint64_t>(out, snap.rng.stream);
    for (Index j = 0; j < snap.X.cols(); ++j) {
        for (Index i = 0; i < snap.X.rows(); ++i) {
            put<double>(out, snap.X(i, j).real());
            put<double>(out, snap.X(i, j).imag());
        }
    }
    if (!out) throw ConfigError("dump_snapshots: write failed for " + path);
}

SnapshotMatrix load_snapshots(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("load_snapshots: cannot open " + path);
    const auto L = take<std::uint32_t>(in);
    const auto n = take<std::uint32_t>(in);
    SnapshotMatrix snap;
    snap.rng.seed = take<std::uint64_t>(in);
    snap.rng.stream = take<std::uint64_t>(in);
    snap.X.resize(L, n);
    for (Index j = 0; j < snap.X.cols(); ++j) {
        for (Index i = 0; i < snap.X.rows(); ++i) {
            const double re = take<double>(in);
            const double im = take<double>(in);
            snap.X(i, j) = Complex(re, im);
        }
    }
    if (!in) throw ConfigError("load_snapshots: truncated file " + path);
    return snap;
}

}  // namespace tcdoa
