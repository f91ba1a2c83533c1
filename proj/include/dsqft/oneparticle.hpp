#ifndef DSQFT_ONEPARTICLE_HPP
#define DSQFT_ONEPARTICLE_HPP

// The truncated one-particle space: modes |k| <= K of L^2(S^1, r dpsi) in the basis
// e_k(psi) = exp(i k psi) / sqrt(2 pi r), with the scalar product
// <h, g> = sum_k conj(h_k) g_k / (2 w_k).

#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>

#include "dsqft/errors.hpp"
#include "dsqft/specfun.hpp"

namespace dsqft {

/// Spectral weights of the symbol, w[k] for |k| <= K.
class SpectralWeights {
public:
    SpectralWeights(const ModelParams& params, int K);

    /// Arbitrary positive even profile, e.g. for negative controls.
    static SpectralWeights from_profile(const ModelParams& params, int K, const std::vector<double>& nonnegative_k);

    const ModelParams& params() const { return params_; }
    int K() const { return K_; }
    int size() const { return 2 * K_ + 1; }
    double radius() const { return params_.radius; }

    double operator[](int k) const { return w_[static_cast<std::size_t>(k + K_)]; }

    /// Weights in storage order k = -K .. K.
    const Eigen::VectorXd& vector() const { return w_; }

private:
    SpectralWeights() = default;

    ModelParams params_;
    int K_ = 0;
    Eigen::VectorXd w_;
};

/// Coefficients h_k, k = -K .. K, stored at index k + K.
struct FourierVector {
    int K = 0;
    Eigen::VectorXcd coeff;

    FourierVector() = default;
    explicit FourierVector(int K_) : K(K_), coeff(Eigen::VectorXcd::Zero(2 * K_ + 1)) {}
    FourierVector(int K_, Eigen::VectorXcd c) : K(K_), coeff(std::move(c))
    {
        if (coeff.size() != 2 * K + 1) {
            throw dimension_error("FourierVector: coefficient count must be 2K + 1");
        }
    }

    complex& operator[](int k) { return coeff[k + K]; }
    complex operator[](int k) const { return coeff[k + K]; }
    int size() const { return 2 * K + 1; }

    static FourierVector basis(int K, int k)
    {
        FourierVector v(K);
        v[k] = 1.0;
        return v;
    }

    FourierVector operator+(const FourierVector& o) const { return {K, coeff + o.coeff}; }
    FourierVector operator-(const FourierVector& o) const { return {K, coeff - o.coeff}; }
    friend FourierVector operator*(complex s, const FourierVector& v) { return {v.K, s * v.coeff}; }
};

/// Cauchy data on the grid psi_j = 2 pi j / N, N = 2K + 1: a = Re h, c = w^{-1} Im h.
struct CauchyData {
    int K = 0;
    Eigen::VectorXd a;
    Eigen::VectorXd c;

    explicit CauchyData(int K_ = 0)
        : K(K_), a(Eigen::VectorXd::Zero(2 * K_ + 1)), c(Eigen::VectorXd::Zero(2 * K_ + 1))
    {
    }
    int grid_size() const { return 2 * K + 1; }
};

inline double grid_point(int j, int N) { return 2.0 * std::numbers::pi * j / N; }

/// w(k) = r^{-1} (k + s) Gamma((k+s)/2) Gamma((k+1-s)/2) / (Gamma((k-s)/2) Gamma((k+1+s)/2)), s = s+,
/// evaluated as a product of two Gamma(z + 1/2)/Gamma(z) ratios; w(-k) = w(k).
inline double omega_coeff(const ModelParams& p, int k)
{
    const double kk = std::abs(k);
    const complex s = p.s_plus;
    const complex value =
        (kk + s) * specfun::gamma_half_ratio(0.5 * (kk - s)) / specfun::gamma_half_ratio(0.5 * (kk + s)) / p.radius;
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
        throw overflow_error("omega_coeff: non-finite spectral weight at k = " + std::to_string(k));
    }
    if (std::abs(value.imag()) > 1e-10 * std::abs(value)) {
        throw non_real_error("omega_coeff: spectral weight at k = " + std::to_string(k) + " is not real");
    }
    return value.real();
}

inline SpectralWeights::SpectralWeights(const ModelParams& params, int K) : params_(params), K_(K)
{
    if (K < 1) {
        throw domain_error("SpectralWeights: K must be >= 1");
    }
    w_.resize(2 * K + 1);
    for (int k = 0; k <= K; ++k) {
        const double v = omega_coeff(params, k);
        if (!(v > 0.0)) {
            throw numerical_error("SpectralWeights: non-positive weight at k = " + std::to_string(k));
        }
        w_[K + k] = v;
        w_[K - k] = v;
    }
}

inline SpectralWeights SpectralWeights::from_profile(const ModelParams& params, int K,
                                                     const std::vector<double>& nonnegative_k)
{
    if (static_cast<int>(nonnegative_k.size()) != K + 1) {
        throw dimension_error("SpectralWeights::from_profile: need K + 1 values");
    }
    SpectralWeights w;
    w.params_ = params;
    w.K_ = K;
    w.w_.resize(2 * K + 1);
    for (int k = 0; k <= K; ++k) {
        if (!(nonnegative_k[k] > 0.0)) {
            throw domain_error("SpectralWeights::from_profile: weights must be positive");
        }
        w.w_[K + k] = nonnegative_k[k];
        w.w_[K - k] = nonnegative_k[k];
    }
    return w;
}

inline void require_same_size(const SpectralWeights& w, const FourierVector& h, const char* who)
{
    if (h.K != w.K()) {
        throw dimension_error(std::string(who) + ": mode cutoff mismatch");
    }
}

inline complex inner_product(const SpectralWeights& w, const FourierVector& h, const FourierVector& g)
{
    require_same_size(w, h, "inner_product");
    require_same_size(w, g, "inner_product");
    complex acc = 0.0;
    for (int i = 0; i < h.size(); ++i) {
        acc += std::conj(h.coeff[i]) * g.coeff[i] / (2.0 * w.vector()[i]);
    }
    return acc;
}

inline double norm_squared(const SpectralWeights& w, const FourierVector& h)
{
    return inner_product(w, h, h).real();
}

/// The squared norm sum_k w_k |f_k|^2 of the Sobolev space of order 1/2.
inline double sobolev_half_norm(const SpectralWeights& w, const FourierVector& f)
{
    require_same_size(w, f, "sobolev_half_norm");
    double acc = 0.0;
    for (int i = 0; i < f.size(); ++i) {
        acc += w.vector()[i] * std::norm(f.coeff[i]);
    }
    return acc;
}

inline FourierVector apply_omega(const SpectralWeights& w, const FourierVector& f)
{
    require_same_size(w, f, "apply_omega");
    return {f.K, f.coeff.cwiseProduct(w.vector().cast<complex>())};
}

// Discrete transforms between the N = 2K + 1 grid and the coefficients.

inline Eigen::VectorXcd grid_values(const FourierVector& h, double radius)
{
    const int N = h.size();
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(N);
    const double scale = 1.0 / std::sqrt(2.0 * std::numbers::pi * radius);
    for (int j = 0; j < N; ++j) {
        complex acc = 0.0;
        for (int k = -h.K; k <= h.K; ++k) {
            // k * j mod N keeps the phase argument small.
            const long m = ((static_cast<long>(k) * j) % N + N) % N;
            acc += h[k] * std::polar(1.0, grid_point(static_cast<int>(m), N));
        }
        out[j] = scale * acc;
    }
    return out;
}

inline FourierVector from_grid_values(const Eigen::VectorXcd& values, double radius)
{
    const int N = static_cast<int>(values.size());
    if (N % 2 == 0) {
        throw dimension_error("from_grid_values: grid size must be odd");
    }
    const int K = (N - 1) / 2;
    FourierVector h(K);
    const double scale = std::sqrt(2.0 * std::numbers::pi * radius) / N;
    for (int k = -K; k <= K; ++k) {
        complex acc = 0.0;
        for (int j = 0; j < N; ++j) {
            const long m = ((static_cast<long>(k) * j) % N + N) % N;
            acc += values[j] * std::polar(1.0, -grid_point(static_cast<int>(m), N));
        }
        h[k] = scale * acc;
    }
    return h;
}

inline FourierVector pack_cauchy(const SpectralWeights& w, const Eigen::VectorXd& a, const Eigen::VectorXd& c)
{
    if (a.size() != w.size() || c.size() != w.size()) {
        throw dimension_error("pack_cauchy: grid functions must have 2K + 1 points");
    }
    const FourierVector ah = from_grid_values(a.cast<complex>(), w.radius());
    const FourierVector ch = from_grid_values(c.cast<complex>(), w.radius());
    FourierVector h(w.K());
    const complex i(0.0, 1.0);
    for (int n = 0; n < w.size(); ++n) {
        h.coeff[n] = ah.coeff[n] + i * w.vector()[n] * ch.coeff[n];
    }
    return h;
}

inline FourierVector pack_cauchy(const SpectralWeights& w, const CauchyData& d)
{
    return pack_cauchy(w, d.a, d.c);
}

inline CauchyData unpack_cauchy(const SpectralWeights& w, const FourierVector& h)
{
    require_same_size(w, h, "unpack_cauchy");
    const int K = h.K;
    FourierVector re(K), im(K);
    const complex i(0.0, 1.0);
    for (int k = -K; k <= K; ++k) {
        re[k] = 0.5 * (h[k] + std::conj(h[-k]));
        im[k] = (h[k] - std::conj(h[-k])) / (2.0 * i) / w[k];
    }
    CauchyData d(K);
    d.a = grid_values(re, w.radius()).real();
    d.c = grid_values(im, w.radius()).real();
    return d;
}

/// exp(-1/(1 - x^2)) on |x| < 1, zero elsewhere.
inline double bump_profile(double x)
{
    return std::abs(x) < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0;
}

/// Grid samples of a bump centred at center with the given half-width.
inline Eigen::VectorXd bump_samples(int K, double center, double half_width)
{
    const int N = 2 * K + 1;
    Eigen::VectorXd v(N);
    for (int j = 0; j < N; ++j) {
        v[j] = bump_profile(std::remainder(grid_point(j, N) - center, 2.0 * std::numbers::pi) / half_width);
    }
    return v;
}

/// h = a + i w c with a = ca * bump, c = cc * bump.
inline FourierVector bump_vector(const SpectralWeights& w, double center, double half_width, double ca = 1.0,
                                 double cc = 0.0)
{
    const Eigen::VectorXd b = bump_samples(w.K(), center, half_width);
    return pack_cauchy(w, ca * b, cc * b);
}

/// Two-point kernel c_nu P_{s+}(-cos theta); logarithmically singular at theta = 0.
inline double kernel_eval(const ModelParams& p, double theta)
{
    const double th = std::remainder(theta, 2.0 * std::numbers::pi);
    const double half = std::sin(0.5 * th);
    const double zc = half * half;
    if (zc == 0.0) {
        throw domain_error("kernel_eval: coincident points (theta = 0 mod 2 pi)");
    }
    const double cz = std::cos(0.5 * th);
    const complex v = p.c_nu * specfun::legendre_p_split(p.s_plus, cz * cz, zc);
    if (std::abs(v.imag()) > 1e-10 * std::max(1.0, std::abs(v))) {
        throw non_real_error("kernel_eval: kernel value is not real");
    }
    return v.real();
}

struct KernelCheck {
    double kappa = 0.0;
    double max_deviation = 0.0;
    std::vector<double> q;          // q_k for k = 0 .. K
    std::vector<double> deviation;  // |q_k 2 w_k - kappa| / kappa
};

namespace detail {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline void add_gauss_panel(QuadratureRule& rule, double a, double b)
{
    using gauss = boost::math::quadrature::gauss<double, 16>;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    const auto& x = gauss::abscissa();
    const auto& wt = gauss::weights();
    for (std::size_t i = 0; i < x.size(); ++i) {
        rule.nodes.push_back(mid - half * x[i]);
        rule.weights.push_back(half * wt[i]);
        if (x[i] != 0.0) {
            rule.nodes.push_back(mid + half * x[i]);
            rule.weights.push_back(half * wt[i]);
        }
    }
}

// Panels on (0, pi]: uniform of width pi/64 away from 0, geometrically graded
// with ratio 1/2 over 40 levels towards the logarithmic singularity at 0.
inline QuadratureRule graded_rule(int uniform_panels = 64, int levels = 40)
{
    QuadratureRule rule;
    const double pi = std::numbers::pi;
    const double h = pi / uniform_panels;
    for (int p = 1; p < uniform_panels; ++p) {
        add_gauss_panel(rule, p * h, (p + 1) * h);
    }
    double b = h;
    for (int l = 0; l < levels; ++l) {
        add_gauss_panel(rule, 0.5 * b, b);
        b *= 0.5;
    }
    add_gauss_panel(rule, 0.0, b);
    return rule;
}

} // namespace detail

/// Fourier coefficients q_k of the kernel by graded quadrature; kappa = q_0 2 w_0
/// calibrates the convention and the deviation of q_k 2 w_k from kappa is reported.
inline KernelCheck kernel_fourier_check(const ModelParams& p, int K)
{
    if (K < 8) {
        throw domain_error("kernel_fourier_check: K must be >= 8");
    }
    const auto rule = detail::graded_rule();
    std::vector<double> values(rule.nodes.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        values[i] = kernel_eval(p, rule.nodes[i]);
        if (!std::isfinite(values[i])) {
            throw convergence_error("kernel_fourier_check: non-finite kernel sample");
        }
    }
    KernelCheck out;
    out.q.resize(K + 1);
    for (int k = 0; k <= K; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            acc += rule.weights[i] * values[i] * std::cos(k * rule.nodes[i]);
        }
        out.q[k] = 2.0 * acc; // kernel is even in theta
    }
    out.kappa = out.q[0] * 2.0 * omega_coeff(p, 0);
    out.deviation.resize(K + 1);
    for (int k = 0; k <= K; ++k) {
        out.deviation[k] = std::abs(out.q[k] * 2.0 * omega_coeff(p, k) - out.kappa) / std::abs(out.kappa);
        out.max_deviation = std::max(out.max_deviation, out.deviation[k]);
    }
    return out;
}

struct MultiplierEstimate {
    double measured_norm = 0.0;
    double bound = 0.0;
    double a = 0.0;
    double b = 0.0;
    bool smooth = true; // |chi_k| (1 + |k|)^4 stays bounded by its low-mode maximum
};

/// Multiplication by chi on the Sobolev space of order 1/2. chi holds plain Fourier-series
/// coefficients chi(psi) = sum_k chi_k exp(i k psi), so chi = 1 has chi_0 = 1.
inline MultiplierEstimate multiplier_norm_and_bound(const SpectralWeights& w, const FourierVector& chi)
{
    const int K = w.K();
    const int N = w.size();
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(N, N);
    for (int k = -K; k <= K; ++k) {
        for (int l = -K; l <= K; ++l) {
            const int d = k - l;
            if (std::abs(d) <= chi.K) {
                T(k + K, l + K) = chi[d] * std::sqrt(w[k] / w[l]);
            }
        }
    }
    MultiplierEstimate est;
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(T);
    est.measured_norm = svd.singularValues()[0];
    for (int k = 1; k <= K; ++k) {
        est.a = std::max(est.a, (w[k] - w[0]) / k);
        est.b = std::max(est.b, k / w[k]);
    }
    double l2 = 0.0, h12 = 0.0;
    for (int k = -chi.K; k <= chi.K; ++k) {
        const double m = std::norm(chi[k]);
        l2 += m;
        h12 += (std::abs(k) <= K ? w[k] : omega_coeff(w.params(), k)) * m;
    }
    const double ab = est.a * est.b;
    est.bound = std::sqrt((1.0 + ab) * l2 + ab / w[0] * h12);
    double low = 0.0;
    for (int k = -std::min(4, chi.K); k <= std::min(4, chi.K); ++k) {
        low = std::max(low, std::abs(chi[k]) * std::pow(1.0 + std::abs(k), 4));
    }
    for (int k = -chi.K; k <= chi.K; ++k) {
        if (std::abs(chi[k]) * std::pow(1.0 + std::abs(k), 4) > 10.0 * low + 1e-300) {
            est.smooth = false;
        }
    }
    return est;
}

/// CSV table "k,omega" with one row per mode, k = -K .. K.
inline void write_omega_csv(std::ostream& os, const SpectralWeights& w)
{
    os << "k,omega\n";
    os.precision(17);
    for (int k = -w.K(); k <= w.K(); ++k) {
        os << k << ',' << w[k] << '\n';
    }
}

} // namespace dsqft

#endif
