#include "tcdoa/scenario.hpp"

#include <Eigen/QR>
#include <cmath>
#include <numbers>
#include <sstream>

namespace tcdoa {

namespace {
constexpr double kPi = std::numbers::pi;

CMatrix exp_toeplitz(Index size, double rate, double scale) {
    CMatrix out(size, size);
    for (Index j = 0; j < size; ++j) {
        for (Index i = 0; i < size; ++i) {
            out(i, j) = scale * std::exp(-rate * std::abs(double(i - j)));
        }
    }
    return out;
}
}  // namespace

ArrayModel ArrayModel::ula(Index elements, AngleConvention conv, double spacing) {
    ArrayModel a;
    a.convention = conv;
    a.positions.resize(elements);
    for (Index k = 0; k < elements; ++k) {
        a.positions[k] = spacing * double(k);
    }
    a.validate();
    return a;
}

void ArrayModel::validate() const {
    if (positions.size() < 2) {
        throw ConfigError("ArrayModel: at least two sensors required");
    }
    for (std::size_t k = 1; k < positions.size(); ++k) {
        if (!(positions[k] > positions[k - 1])) {
            throw ConfigError("ArrayModel: sensor positions must be strictly increasing");
        }
    }
}

double ArrayModel::omega(double angle) const {
    switch (convention) {
        case AngleConvention::Cosine: return kPi * std::cos(angle);
        case AngleConvention::BroadsideSine: return kPi * std::sin(angle);
        case AngleConvention::Electrical: return angle;
    }
    return angle;
}

double ArrayModel::omega_slope(double angle) const {
    switch (convention) {
        case AngleConvention::Cosine: return -kPi * std::sin(angle);
        case AngleConvention::BroadsideSine: return kPi * std::cos(angle);
        case AngleConvention::Electrical: return 1.0;
    }
    return 1.0;
}

CVector ArrayModel::steering_omega(double w) const {
    CVector a(size());
    for (Index k = 0; k < size(); ++k) {
        a(k) = std::polar(1.0, w * positions[k]);
    }
    return a;
}

CVector ArrayModel::steering(double angle) const { return steering_omega(omega(angle)); }

CVector ArrayModel::steering_derivative(double angle) const {
    const double w = omega(angle);
    const double slope = omega_slope(angle);
    CVector d(size());
    for (Index k = 0; k < size(); ++k) {
        d(k) = Complex(0.0, positions[k] * slope) * std::polar(1.0, w * positions[k]);
    }
    return d;
}

void SourceSet::validate(Index sensors) const {
    if (angles.empty()) {
        throw ConfigError("SourceSet: at least one source required");
    }
    if (count() >= sensors) {
        throw ConfigError("SourceSet: source count must be below sensor count");
    }
    for (std::size_t i = 0; i < angles.size(); ++i) {
        for (std::size_t j = i + 1; j < angles.size(); ++j) {
            if (angles[i] == angles[j]) {
                throw ConfigError("SourceSet: source angles must be distinct");
            }
        }
    }
}

namespace {
CMatrix build_columns(const ArrayModel& array, const SourceSet& sources, bool derivative) {
    array.validate();
    sources.validate(array.size());
    CMatrix out(array.size(), sources.count());
    for (Index j = 0; j < sources.count(); ++j) {
        out.col(j) = derivative ? array.steering_derivative(sources.angles[j])
                                : array.steering(sources.angles[j]);
    }
    return out;
}
}  // namespace

CMatrix build_A(const ArrayModel& array, const SourceSet& sources) {
    CMatrix A = build_columns(array, sources, false);
    Eigen::ColPivHouseholderQR<CMatrix> qr(A);
    qr.setThreshold(1e-10);
    if (qr.rank() < A.cols()) {
        std::ostringstream os;
        os << "build_A: steering matrix rank " << qr.rank() << " below source count "
           << A.cols() << " (violated manifold assumption)";
        throw NumericalError(os.str());
    }
    return A;
}

CMatrix build_D(const ArrayModel& array, const SourceSet& sources) {
    return build_columns(array, sources, true);
}

NoiseModel NoiseModel::exponential(Index sensors, double sigma2, double rate) {
    if (sensors < 1 || sigma2 <= 0.0) {
        throw ConfigError("NoiseModel: need sensors >= 1 and sigma2 > 0");
    }
    return NoiseModel{exp_toeplitz(sensors, rate, sigma2), sigma2};
}

NoiseModel NoiseModel::white(Index sensors, double sigma2) {
    if (sensors < 1 || sigma2 <= 0.0) {
        throw ConfigError("NoiseModel: need sensors >= 1 and sigma2 > 0");
    }
    return NoiseModel{sigma2 * CMatrix::Identity(sensors, sensors), sigma2};
}

BlockMatrix NoiseModel::spacetime(Index n) const {
    return BlockMatrix(kron(CMatrix::Identity(n, n), spatial), sensors(), sensors());
}

SignalCovariance SignalCovariance::kronecker(Index sources, double alpha_t, double alpha_s,
                                             double power) {
    if (sources < 1 || alpha_t < 0.0 || alpha_s < 0.0 || power <= 0.0) {
        throw ConfigError("SignalCovariance::kronecker: invalid parameters");
    }
    SignalCovariance sc;
    sc.spatial_ = exp_toeplitz(sources, alpha_s, power);
    sc.alpha_t_ = alpha_t;
    sc.exp_decay_ = true;
    return sc;
}

SignalCovariance SignalCovariance::fir(std::vector<double> taps, CMatrix spatial) {
    if (taps.empty()) {
        throw ConfigError("SignalCovariance::fir: taps must be nonempty");
    }
    if (spatial.rows() != spatial.cols() || spatial.rows() < 1) {
        throw ConfigError("SignalCovariance::fir: spatial factor must be square");
    }
    double energy = 0.0;
    for (double t : taps) energy += t * t;
    if (energy <= 0.0) {
        throw ConfigError("SignalCovariance::fir: taps must have positive energy");
    }
    const double norm = std::sqrt(energy);
    for (double& t : taps) t /= norm;

    SignalCovariance sc;
    sc.spatial_ = std::move(spatial);
    sc.taps_ = taps;
    sc.temporal_.resize(taps.size());
    for (std::size_t k = 0; k < taps.size(); ++k) {
        double r = 0.0;
        for (std::size_t i = 0; i + k < taps.size(); ++i) r += taps[i] * taps[i + k];
        sc.temporal_[k] = r;
    }
    return sc;
}

SignalCovariance SignalCovariance::explicit_lags(std::vector<CMatrix> lags) {
    if (lags.empty()) {
        throw ConfigError("SignalCovariance::explicit_lags: need at least P_0");
    }
    const Index m = lags[0].rows();
    for (const CMatrix& p : lags) {
        if (p.rows() != m || p.cols() != m) {
            throw ConfigError("SignalCovariance::explicit_lags: inconsistent block sizes");
        }
    }
    if (herm_deviation(lags[0]) > 1e-12 * std::max(1.0, lags[0].cwiseAbs().maxCoeff())) {
        throw ConfigError("SignalCovariance::explicit_lags: P_0 must be Hermitian");
    }
    SignalCovariance sc;
    sc.lags_ = std::move(lags);
    return sc;
}

Index SignalCovariance::dim() const {
    if (!lags_.empty()) return lags_[0].rows();
    return spatial_.rows();
}

CMatrix SignalCovariance::zero_lag() const { return lag(0); }

CMatrix SignalCovariance::lag(long k) const {
    const long a = std::labs(k);
    if (!lags_.empty()) {
        if (a >= long(lags_.size())) return CMatrix::Zero(dim(), dim());
        const CMatrix& p = lags_[std::size_t(a)];
        if (k >= 0) return p;
        return CMatrix(p.adjoint());
    }
    if (exp_decay_) {
        // k = 0 handled apart so alpha_t = +inf stays well defined.
        const double r = (a == 0) ? 1.0 : std::exp(-alpha_t_ * double(a));
        return r * spatial_;
    }
    const double r = a < long(temporal_.size()) ? temporal_[std::size_t(a)] : 0.0;
    return r * spatial_;
}

BlockMatrix SignalCovariance::spacetime(Index n) const {
    const Index m = dim();
    CMatrix out(n * m, n * m);
    for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i < n; ++i) {
            out.block(i * m, j * m, m, m) = lag(long(i - j));
        }
    }
    return BlockMatrix(std::move(out), m, m);
}

CMatrix SignalCovariance::stacked_lags(Index M) const {
    const Index m = dim();
    CMatrix out(M * m, m);
    for (Index k = 1; k <= M; ++k) {
        out.block((k - 1) * m, 0, m, m) = lag(long(k));
    }
    return out;
}

CMatrix SignalCovariance::two_sided_stack(Index half) const {
    const Index m = dim();
    CMatrix out((2 * half + 1) * m, m);
    for (long k = -long(half); k <= long(half); ++k) {
        out.block((k + long(half)) * m, 0, m, m) = lag(k);
    }
    return out;
}

NoiseModel apply_snr(const CMatrix& A, const CMatrix& P0, const NoiseModel& base,
                     double snr_db) {
    const Index L = A.rows();
    const double signal_power = (A * P0 * A.adjoint()).real().trace() / double(L);
    const double base_noise_power = base.spatial.real().trace() / double(L);
    const double target = std::pow(10.0, snr_db / 10.0);
    const double scale = signal_power / (base_noise_power * target);
    return NoiseModel{scale * base.spatial, scale * base.sigma2};
}

std::vector<double> Scenario::omegas() const {
    std::vector<double> out;
    out.reserve(sources.angles.size());
    for (double a : sources.angles) out.push_back(array.omega(a));
    return out;
}

}  // namespace tcdoa
