#ifndef DSQFT_REPRESENTATION_HPP
#define DSQFT_REPRESENTATION_HPP

// The SO_0(1,2) representation on the truncated one-particle space, written in the
// orthonormal basis f_k = sqrt(2 w_k) e_k. Coordinates of h are y_k = h_k / sqrt(2 w_k).
//
// In this basis the boost generator w r cos is real symmetric tridiagonal:
//   cos(psi) e_k = (e_{k+1} + e_{k-1}) / 2, so (w r cos) f_k = (r/2) sqrt(w_k w_{k+1}) f_{k+1} + ...
// with zero diagonal.

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <tuple>

#include <Eigen/Dense>

#include "dsqft/errors.hpp"
#include "dsqft/geometry.hpp"
#include "dsqft/oneparticle.hpp"

namespace dsqft {

/// Key identifying a boost generator built from the model weights.
struct GeneratorKey {
    double zeta = 0.0;
    double radius = 0.0;
    int K = 0;
    auto operator<=>(const GeneratorKey&) const = default;
};

/// Dense matrix on the truncated space in the basis f_k, indexed by k + K.
struct OperatorH {
    int K = 0;
    Eigen::MatrixXcd M;
    std::optional<GeneratorKey> key; // set for boost generators built from model weights
    double alpha = 0.0;              // rotation angle of a boost generator

    int size() const { return 2 * K + 1; }
};

inline Eigen::VectorXcd to_coordinates(const SpectralWeights& w, const FourierVector& h)
{
    require_same_size(w, h, "to_coordinates");
    return h.coeff.cwiseQuotient((2.0 * w.vector()).cwiseSqrt().cast<complex>());
}

inline FourierVector from_coordinates(const SpectralWeights& w, const Eigen::VectorXcd& y)
{
    if (y.size() != w.size()) {
        throw dimension_error("from_coordinates: size mismatch");
    }
    return {w.K(), y.cwiseProduct((2.0 * w.vector()).cwiseSqrt().cast<complex>())};
}

/// Rotation u(R_0(alpha)): h(psi) -> h(psi - alpha), i.e. h_k -> exp(-i k alpha) h_k.
inline FourierVector rotation_apply(const FourierVector& h, double alpha)
{
    FourierVector out(h.K);
    for (int k = -h.K; k <= h.K; ++k) {
        out[k] = std::polar(1.0, -k * alpha) * h[k];
    }
    return out;
}

inline Eigen::VectorXcd rotation_phases(int K, double alpha)
{
    Eigen::VectorXcd d(2 * K + 1);
    for (int k = -K; k <= K; ++k) {
        d[k + K] = std::polar(1.0, -k * alpha);
    }
    return d;
}

/// Real symmetric tridiagonal matrix of w r cos in the basis f_k.
inline Eigen::MatrixXd boost_generator_real(const SpectralWeights& w)
{
    const int K = w.K();
    const int N = w.size();
    const double r = w.radius();
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(N, N);
    for (int k = -K; k < K; ++k) {
        const double e = 0.5 * r * std::sqrt(w[k] * w[k + 1]);
        L(k + K, k + 1 + K) = e;
        L(k + 1 + K, k + K) = e;
    }
    return L;
}

/// Generator of the boosts fixing R_0(alpha) W_1: u(R_0(alpha)) (w r cos) u(R_0(alpha))^{-1}.
inline OperatorH boost_generator(const SpectralWeights& w, double alpha = 0.0)
{
    OperatorH op;
    op.K = w.K();
    op.alpha = alpha;
    op.key = GeneratorKey{w.params().zeta, w.params().radius, w.K()};
    const Eigen::VectorXcd d = rotation_phases(w.K(), alpha);
    op.M = d.asDiagonal() * boost_generator_real(w).cast<complex>() * d.conjugate().asDiagonal();
    return op;
}

/// Eigendecomposition of the alpha = 0 generator; the rotated ones follow by the phases.
struct BoostSpectrum {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
};

class SpectrumCache {
public:
    static SpectrumCache& instance()
    {
        static SpectrumCache cache;
        return cache;
    }

    std::shared_ptr<const BoostSpectrum> get(const SpectralWeights& w)
    {
        const GeneratorKey key{w.params().zeta, w.params().radius, w.K()};
        std::shared_ptr<Entry> entry;
        {
            std::lock_guard lock(mutex_);
            auto& slot = entries_[key];
            if (!slot) {
                slot = std::make_shared<Entry>();
            }
            entry = slot;
        }
        std::call_once(entry->once, [&] { entry->spectrum = compute(boost_generator_real(w)); });
        return entry->spectrum;
    }

    static std::shared_ptr<const BoostSpectrum> compute(const Eigen::MatrixXd& L)
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
        if (es.info() != Eigen::Success) {
            throw convergence_error("boost spectrum: eigensolver failed");
        }
        return std::make_shared<const BoostSpectrum>(BoostSpectrum{es.eigenvalues(), es.eigenvectors()});
    }

    std::size_t size() const
    {
        std::lock_guard lock(mutex_);
        return entries_.size();
    }

private:
    struct Entry {
        std::once_flag once;
        std::shared_ptr<const BoostSpectrum> spectrum;
    };

    mutable std::mutex mutex_;
    std::map<GeneratorKey, std::shared_ptr<Entry>> entries_;
};

/// Largest |Im t| * spectral radius accepted by boost_apply.
inline constexpr double exponent_budget = 700.0;

/// exp(i t L) applied to coordinates y. Hermitian L required.
inline Eigen::VectorXcd boost_apply_coordinates(const OperatorH& L, complex t, const Eigen::VectorXcd& y,
                                                const SpectralWeights* w = nullptr)
{
    if (y.size() != L.size()) {
        throw dimension_error("boost_apply: size mismatch");
    }
    if (t == complex(0.0, 0.0)) {
        return y;
    }
    const complex i(0.0, 1.0);
    auto exponentiate = [&](const Eigen::VectorXd& lambda, const auto& V, const Eigen::VectorXcd& v) {
        const double radius = lambda.cwiseAbs().maxCoeff();
        if (std::abs(t.imag()) * radius > exponent_budget) {
            throw overflow_error("boost_apply: |Im t| times the spectral radius exceeds the exponent budget");
        }
        Eigen::VectorXcd c = V.adjoint() * v;
        for (Eigen::Index n = 0; n < c.size(); ++n) {
            c[n] *= std::exp(i * t * lambda[n]);
        }
        return Eigen::VectorXcd(V * c);
    };
    if (L.key && w != nullptr) {
        const auto spec = SpectrumCache::instance().get(*w);
        const Eigen::VectorXcd d = rotation_phases(L.K, L.alpha);
        const Eigen::VectorXcd v = d.conjugate().cwiseProduct(y);
        const Eigen::MatrixXcd V = spec->eigenvectors.cast<complex>();
        return d.cwiseProduct(exponentiate(spec->eigenvalues, V, v));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(L.M);
    if (es.info() != Eigen::Success) {
        throw convergence_error("boost_apply: eigensolver failed");
    }
    return exponentiate(es.eigenvalues(), es.eigenvectors(), y);
}

inline FourierVector boost_apply(const SpectralWeights& w, const OperatorH& L, complex t, const FourierVector& h)
{
    return from_coordinates(w, boost_apply_coordinates(L, t, to_coordinates(w, h), &w));
}

/// Wedge reflection h(psi) -> conj(h(pi - psi)); in coefficients h_k -> (-1)^k conj(h_k).
/// The same formula holds for the coordinates in the basis f_k since w is even.
inline FourierVector theta_apply(const FourierVector& h)
{
    FourierVector out(h.K);
    for (int k = -h.K; k <= h.K; ++k) {
        out[k] = (k % 2 == 0 ? 1.0 : -1.0) * std::conj(h[k]);
    }
    return out;
}

inline Eigen::VectorXcd theta_coordinates(int K, const Eigen::VectorXcd& y)
{
    Eigen::VectorXcd out(y.size());
    for (int k = -K; k <= K; ++k) {
        out[k + K] = (k % 2 == 0 ? 1.0 : -1.0) * std::conj(y[k + K]);
    }
    return out;
}

struct StructureDefect {
    double max_defect = 0.0;
    double rotation_boost = 0.0; // relation involving the rotation generator and l_1
    double rotation_boost2 = 0.0;
    double boost_boost = 0.0;    // [l_1, l_2] relation, the one sensitive to the weights
    Eigen::Matrix3d structure[3]; // structure[a](b, c): coefficient of m_c in [m_a, m_b]
};

namespace detail {

// Derivative at 0 by Richardson-extrapolated central differences.
template <class F>
Eigen::Matrix3d derivative_at_zero(F f)
{
    double h = 0.05;
    constexpr int levels = 5;
    Eigen::Matrix3d table[levels][levels];
    for (int i = 0; i < levels; ++i) {
        table[i][0] = (f(h) - f(-h)) / (2.0 * h);
        double factor = 4.0;
        for (int j = 1; j <= i; ++j) {
            table[i][j] = (factor * table[i][j - 1] - table[i - 1][j - 1]) / (factor - 1.0);
            factor *= 4.0;
        }
        h *= 0.5;
    }
    return table[levels - 1][levels - 1];
}

} // namespace detail

/// so(1,2) relations on the truncated space. The ambient generators are differentiated from
/// the matrices of the geometry module, their structure constants are read off from exact 3x3
/// commutators, and the same relations are tested for the represented generators
/// dU(m_0) = -i k, dU(m_1) = i l_1, dU(m_2) = i l_2 on interior rows |j| <= K - 2.
inline StructureDefect structure_constant_defect(const SpectralWeights& w)
{
    const int K = w.K();
    if (K < 16) {
        throw domain_error("structure_constant_defect: K must be >= 16");
    }
    using geometry::boost;
    using geometry::rotation;
    const double half_pi = 0.5 * std::numbers::pi;
    Eigen::Matrix3d m[3] = {
        detail::derivative_at_zero([](double t) { return rotation(t).matrix; }),
        detail::derivative_at_zero([](double t) { return boost(t, 0.0).matrix; }),
        detail::derivative_at_zero([&](double t) { return boost(t, half_pi).matrix; }),
    };
    // Coordinates of a 3x3 matrix in the basis m_0, m_1, m_2 (least squares on the 9 entries).
    Eigen::Matrix<double, 9, 3> B;
    for (int c = 0; c < 3; ++c) {
        B.col(c) = Eigen::Map<const Eigen::Matrix<double, 9, 1>>(m[c].data());
    }
    const auto solver = B.colPivHouseholderQr();

    const int N = w.size();
    const complex i(0.0, 1.0);
    Eigen::MatrixXcd X[3];
    X[0] = Eigen::MatrixXcd::Zero(N, N);
    for (int k = -K; k <= K; ++k) {
        X[0](k + K, k + K) = -i * static_cast<double>(k);
    }
    X[1] = i * boost_generator(w, 0.0).M;
    X[2] = i * boost_generator(w, half_pi).M;

    StructureDefect out;
    double* slots[3] = {&out.rotation_boost, &out.rotation_boost2, &out.boost_boost};
    const std::pair<int, int> pairs[3] = {{0, 1}, {0, 2}, {1, 2}};
    for (auto& s : out.structure) {
        s.setZero();
    }
    for (int p = 0; p < 3; ++p) {
        const auto [a, b] = pairs[p];
        const Eigen::Matrix3d comm = m[a] * m[b] - m[b] * m[a];
        Eigen::Vector3d coef = solver.solve(Eigen::Map<const Eigen::Matrix<double, 9, 1>>(comm.data()));
        for (int c = 0; c < 3; ++c) {
            // The constants are integers; the difference quotient leaves ~1e-12 of noise.
            const double rounded = std::round(coef[c]);
            if (std::abs(coef[c] - rounded) < 1e-8) {
                coef[c] = rounded;
            }
            out.structure[a](b, c) = coef[c];
            out.structure[b](a, c) = -coef[c];
        }
        const Eigen::MatrixXcd lhs = X[a] * X[b] - X[b] * X[a];
        const Eigen::MatrixXcd rhs = coef[0] * X[0] + coef[1] * X[1] + coef[2] * X[2];
        const Eigen::MatrixXcd diff = lhs - rhs;
        double d = 0.0;
        for (int j = -(K - 2); j <= K - 2; ++j) {
            d = std::max(d, diff.row(j + K).cwiseAbs().maxCoeff());
        }
        *slots[p] = d;
        out.max_defect = std::max(out.max_defect, d);
    }
    return out;
}

} // namespace dsqft

#endif
