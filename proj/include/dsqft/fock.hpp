#ifndef DSQFT_FOCK_HPP
#define DSQFT_FOCK_HPP

// Truncated bosonic Fock space over the modes |k| <= M of the one-particle space, in the
// orthonormal basis f_k. Basis states are occupation vectors with total occupation <= N_max.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "dsqft/errors.hpp"
#include "dsqft/oneparticle.hpp"
#include "dsqft/representation.hpp"

namespace dsqft {

using SparseOp = Eigen::SparseMatrix<complex, Eigen::ColMajor>;

inline constexpr std::size_t max_fock_dim = 200000;

class FockConfig {
public:
    FockConfig(int M, int N_max) : M_(M), N_max_(N_max)
    {
        if (M < 0 || N_max < 0) {
            throw domain_error("FockConfig: M and N_max must be >= 0");
        }
        // dim = C(modes + N_max, N_max), checked before enumerating
        double dim = 1.0;
        for (int i = 1; i <= N_max; ++i) {
            dim = dim * (modes() + i) / i;
        }
        if (dim > static_cast<double>(max_fock_dim)) {
            throw domain_error("FockConfig: dimension exceeds " + std::to_string(max_fock_dim));
        }
        std::vector<std::uint8_t> occ(modes(), 0);
        enumerate(occ, 0, N_max);
        for (std::size_t i = 0; i < states_.size(); ++i) {
            index_.emplace(states_[i], static_cast<int>(i));
        }
    }

    int M() const { return M_; }
    int N_max() const { return N_max_; }
    int modes() const { return 2 * M_ + 1; }
    int dim() const { return static_cast<int>(states_.size()); }

    const std::vector<std::uint8_t>& state(int i) const { return states_[i]; }

    int total(int i) const
    {
        int t = 0;
        for (auto n : states_[i]) {
            t += n;
        }
        return t;
    }

    /// Index of an occupation vector, or -1 when it lies above the cutoff.
    int index_of(const std::vector<std::uint8_t>& occ) const
    {
        const auto it = index_.find(occ);
        return it == index_.end() ? -1 : it->second;
    }

    int vacuum() const { return 0; }

private:
    void enumerate(std::vector<std::uint8_t>& occ, int mode, int budget)
    {
        if (mode == modes()) {
            states_.push_back(occ);
            return;
        }
        for (int n = 0; n <= budget; ++n) {
            occ[mode] = static_cast<std::uint8_t>(n);
            enumerate(occ, mode + 1, budget - n);
        }
        occ[mode] = 0;
    }

    int M_;
    int N_max_;
    std::vector<std::vector<std::uint8_t>> states_; // states_[0] is the vacuum
    std::map<std::vector<std::uint8_t>, int> index_;
};

inline long long binomial(int n, int k)
{
    if (k < 0 || k > n) {
        return 0;
    }
    long long r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

struct FockOperator {
    const FockConfig* config = nullptr;
    SparseOp matrix;

    Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(matrix); }
};

/// Coordinates of h on the modes |k| <= m in the basis f_k; higher modes must vanish.
inline Eigen::VectorXcd mode_coordinates(const FockConfig& cfg, const SpectralWeights& w, const FourierVector& h)
{
    const int M = cfg.M();
    if (M > w.K()) {
        throw domain_error("mode_coordinates: M exceeds the one-particle cutoff K");
    }
    for (int k = -h.K; k <= h.K; ++k) {
        if (std::abs(k) > M && h[k] != complex(0.0, 0.0)) {
            throw domain_error("mode_coordinates: vector has modes above the Fock cutoff M");
        }
    }
    const Eigen::VectorXcd y = to_coordinates(w, h);
    return y.segment(w.K() - M, 2 * M + 1);
}

/// Annihilator of mode index m (k = m - M), a |n> = sqrt(n_m) |n - e_m>.
inline SparseOp annihilator(const FockConfig& cfg, int m)
{
    std::vector<Eigen::Triplet<complex>> trip;
    for (int i = 0; i < cfg.dim(); ++i) {
        auto occ = cfg.state(i);
        if (occ[m] == 0) {
            continue;
        }
        const double amp = std::sqrt(static_cast<double>(occ[m]));
        occ[m] -= 1;
        trip.emplace_back(cfg.index_of(occ), i, amp);
    }
    SparseOp a(cfg.dim(), cfg.dim());
    a.setFromTriplets(trip.begin(), trip.end());
    return a;
}

/// Truncated creator: the transpose of the annihilator (states above N_max are dropped).
inline SparseOp creator(const FockConfig& cfg, int m)
{
    return SparseOp(annihilator(cfg, m).transpose());
}

/// a(h) = sum_m conj(y_m) a_m, anti-linear in h.
inline SparseOp annihilation(const FockConfig& cfg, const Eigen::VectorXcd& y)
{
    SparseOp out(cfg.dim(), cfg.dim());
    for (int m = 0; m < cfg.modes(); ++m) {
        if (y[m] != complex(0.0, 0.0)) {
            out += std::conj(y[m]) * annihilator(cfg, m);
        }
    }
    return out;
}

inline SparseOp creation(const FockConfig& cfg, const Eigen::VectorXcd& y)
{
    return SparseOp(annihilation(cfg, y).adjoint());
}

/// phi(h) = a(h) + a*(h); [phi(h), phi(g)] = 2i Im<h, g> below the occupation boundary.
inline FockOperator field_operator(const FockConfig& cfg, const SpectralWeights& w, const FourierVector& h)
{
    const Eigen::VectorXcd y = mode_coordinates(cfg, w, h);
    return {&cfg, annihilation(cfg, y) + creation(cfg, y)};
}

/// Truncated exponential vector sum_n y^{n}/sqrt(n!) over occupations with total <= N_max.
inline Eigen::VectorXcd coherent_vector(const FockConfig& cfg, const Eigen::VectorXcd& y)
{
    Eigen::VectorXcd v(cfg.dim());
    for (int i = 0; i < cfg.dim(); ++i) {
        complex amp = 1.0;
        const auto& occ = cfg.state(i);
        for (int m = 0; m < cfg.modes(); ++m) {
            for (int n = 1; n <= occ[m]; ++n) {
                amp *= y[m] / std::sqrt(static_cast<double>(n));
            }
        }
        v[i] = amp;
    }
    return v;
}

struct CoherentOverlap {
    double deviation = 0.0;
    complex overlap;
    complex partial_sum;
    bool norm_warning = false; // some input norm exceeds 1
};

inline CoherentOverlap coherent_overlap_details(const FockConfig& cfg, const SpectralWeights& w,
                                                const FourierVector& f, const FourierVector& g)
{
    const Eigen::VectorXcd yf = mode_coordinates(cfg, w, f);
    const Eigen::VectorXcd yg = mode_coordinates(cfg, w, g);
    CoherentOverlap out;
    out.norm_warning = yf.norm() > 1.0 || yg.norm() > 1.0;
    out.overlap = coherent_vector(cfg, yf).dot(coherent_vector(cfg, yg));
    const complex fg = yf.dot(yg);
    complex term = 1.0;
    out.partial_sum = 1.0;
    for (int n = 1; n <= cfg.N_max(); ++n) {
        term *= fg / static_cast<double>(n);
        out.partial_sum += term;
    }
    out.deviation = std::abs(out.overlap - out.partial_sum);
    return out;
}

inline double coherent_overlap_check(const FockConfig& cfg, const SpectralWeights& w, const FourierVector& f,
                                     const FourierVector& g)
{
    return coherent_overlap_details(cfg, w, f, g).deviation;
}

/// Restriction of a one-particle operator to the modes |k| <= M.
inline Eigen::MatrixXcd restrict_to_modes(const FockConfig& cfg, const OperatorH& A)
{
    const int M = cfg.M();
    if (M > A.K) {
        throw domain_error("restrict_to_modes: M exceeds the operator cutoff");
    }
    return A.M.block(A.K - M, A.K - M, 2 * M + 1, 2 * M + 1);
}

/// Multiplicative second quantization: Gamma(A)|n> = prod_m (b*_m)^{n_m} / sqrt(n_m!) Omega
/// with b*_m = sum_j A_{jm} a*_j, i.e. A^{(x) n} on the n-particle sector.
inline FockOperator second_quantize(const FockConfig& cfg, const Eigen::MatrixXcd& A)
{
    if (A.rows() != cfg.modes() || A.cols() != cfg.modes()) {
        throw dimension_error("second_quantize: matrix must act on the 2M + 1 modes");
    }
    std::vector<SparseOp> raise(cfg.modes());
    std::vector<SparseOp> create(cfg.modes());
    for (int m = 0; m < cfg.modes(); ++m) {
        create[m] = creator(cfg, m);
    }
    for (int m = 0; m < cfg.modes(); ++m) {
        SparseOp b(cfg.dim(), cfg.dim());
        for (int j = 0; j < cfg.modes(); ++j) {
            if (A(j, m) != complex(0.0, 0.0)) {
                b += A(j, m) * create[j];
            }
        }
        raise[m] = b;
    }
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(cfg.dim(), cfg.dim());
    for (int i = 0; i < cfg.dim(); ++i) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(cfg.dim());
        v[cfg.vacuum()] = 1.0;
        const auto& occ = cfg.state(i);
        for (int m = 0; m < cfg.modes(); ++m) {
            for (int n = 1; n <= occ[m]; ++n) {
                v = raise[m] * v;
                v /= std::sqrt(static_cast<double>(n));
            }
        }
        G.col(i) = v;
    }
    return {&cfg, G.sparseView(0.0, 0.0)};
}

/// Additive second quantization dGamma(B) = sum_{j,k} B_{jk} a*_j a_k.
inline FockOperator d_gamma(const FockConfig& cfg, const Eigen::MatrixXcd& B)
{
    if (B.rows() != cfg.modes() || B.cols() != cfg.modes()) {
        throw dimension_error("d_gamma: matrix must act on the 2M + 1 modes");
    }
    std::vector<Eigen::Triplet<complex>> trip;
    for (int i = 0; i < cfg.dim(); ++i) {
        const auto& occ = cfg.state(i);
        for (int k = 0; k < cfg.modes(); ++k) {
            if (occ[k] == 0) {
                continue;
            }
            for (int j = 0; j < cfg.modes(); ++j) {
                if (B(j, k) == complex(0.0, 0.0)) {
                    continue;
                }
                auto out = occ;
                const double amp_k = std::sqrt(static_cast<double>(out[k]));
                out[k] -= 1;
                const double amp_j = std::sqrt(static_cast<double>(out[j] + 1));
                out[j] += 1;
                trip.emplace_back(cfg.index_of(out), i, B(j, k) * amp_k * amp_j);
            }
        }
    }
    SparseOp D(cfg.dim(), cfg.dim());
    D.setFromTriplets(trip.begin(), trip.end());
    return {&cfg, D};
}

inline constexpr int max_normal_order_degree = 8;

namespace detail {

inline SparseOp identity_op(int dim)
{
    SparseOp I(dim, dim);
    I.setIdentity();
    return I;
}

inline SparseOp power(const SparseOp& A, int n)
{
    SparseOp out = identity_op(static_cast<int>(A.rows()));
    for (int i = 0; i < n; ++i) {
        out = SparseOp(A * out);
    }
    return out;
}

inline void require_degree(int n)
{
    if (n < 0 || n > max_normal_order_degree) {
        throw domain_error("normal_ordered_power: degree must lie in [0, 8]");
    }
}

} // namespace detail

/// :phi(h)^n: = sum_j C(n, j) a*(h)^j a(h)^{n-j}.
inline FockOperator normal_ordered_power(const FockConfig& cfg, const SpectralWeights& w, const FourierVector& h,
                                         int n)
{
    detail::require_degree(n);
    const Eigen::VectorXcd y = mode_coordinates(cfg, w, h);
    const SparseOp a = annihilation(cfg, y);
    const SparseOp ad = creation(cfg, y);
    std::vector<SparseOp> apow(n + 1), adpow(n + 1);
    apow[0] = adpow[0] = detail::identity_op(cfg.dim());
    for (int j = 1; j <= n; ++j) {
        apow[j] = SparseOp(a * apow[j - 1]);
        adpow[j] = SparseOp(ad * adpow[j - 1]);
    }
    SparseOp out(cfg.dim(), cfg.dim());
    for (int j = 0; j <= n; ++j) {
        out += static_cast<double>(binomial(n, j)) * SparseOp(adpow[j] * apow[n - j]);
    }
    return {&cfg, out};
}

/// The same operator by the Hermite recursion :phi^n: = phi :phi^{n-1}: - (n-1) |h|^2 :phi^{n-2}:.
/// It agrees with normal_ordered_power on states with total occupation <= N_max - n.
inline FockOperator normal_ordered_power_hermite(const FockConfig& cfg, const SpectralWeights& w,
                                                 const FourierVector& h, int n)
{
    detail::require_degree(n);
    const Eigen::VectorXcd y = mode_coordinates(cfg, w, h);
    const double norm2 = y.squaredNorm();
    const SparseOp phi = annihilation(cfg, y) + creation(cfg, y);
    SparseOp prev = detail::identity_op(cfg.dim());
    if (n == 0) {
        return {&cfg, prev};
    }
    SparseOp cur = phi;
    for (int m = 2; m <= n; ++m) {
        SparseOp next = SparseOp(phi * cur) - (static_cast<double>(m - 1) * norm2) * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return {&cfg, cur};
}

/// Real polynomial c_0 + c_1 x + ... + c_d x^d, bounded below: constant, or even degree with c_d > 0.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coefficients) : c_(std::move(coefficients))
    {
        while (!c_.empty() && c_.back() == 0.0) {
            c_.pop_back();
        }
        for (double v : c_) {
            if (!std::isfinite(v)) {
                throw domain_error("Polynomial: coefficients must be finite");
            }
        }
        if (degree() > 0 && (degree() % 2 != 0 || !(c_.back() > 0.0))) {
            throw domain_error("Polynomial: not bounded from below (need even degree and positive leading coefficient)");
        }
        if (degree() > max_normal_order_degree) {
            throw domain_error("Polynomial: degree exceeds 8");
        }
    }

    static Polynomial monomial(int n, double coefficient = 1.0)
    {
        std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
        c[n] = coefficient;
        return Polynomial(c);
    }

    int degree() const { return c_.empty() ? 0 : static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    double coefficient(int n) const { return n < static_cast<int>(c_.size()) ? c_[n] : 0.0; }
    const std::vector<double>& coefficients() const { return c_; }

private:
    std::vector<double> c_;
};

/// Fourier-truncated delta at psi packed as a real Cauchy datum: h_k = exp(-i k psi) / sqrt(2 pi r), |k| <= M.
inline FourierVector truncated_delta(const SpectralWeights& w, int M, double psi)
{
    FourierVector h(w.K());
    const double scale = 1.0 / std::sqrt(2.0 * std::numbers::pi * w.radius());
    for (int k = -M; k <= M; ++k) {
        h[k] = scale * std::polar(1.0, -k * psi);
    }
    return h;
}

namespace detail {

// Fixed-order pairwise reduction.
inline SparseOp pairwise_sum(std::vector<SparseOp> terms, int dim)
{
    if (terms.empty()) {
        return SparseOp(dim, dim);
    }
    while (terms.size() > 1) {
        std::vector<SparseOp> next;
        for (std::size_t i = 0; i + 1 < terms.size(); i += 2) {
            next.push_back(SparseOp(terms[i] + terms[i + 1]));
        }
        if (terms.size() % 2 == 1) {
            next.push_back(std::move(terms.back()));
        }
        terms = std::move(next);
    }
    return std::move(terms.front());
}

} // namespace detail

struct InteractionOptions {
    int nodes = 0;       // quadrature nodes; 0 selects 2M + 1
    double alpha = 0.0;  // weight r cos(psi - alpha)
};

/// V = sum_j (2 pi / N_q) r cos(psi_j - alpha) :P(phi(h_j)):, h_j the truncated delta at node j.
inline FockOperator interaction_generator(const FockConfig& cfg, const SpectralWeights& w, const Polynomial& P,
                                          InteractionOptions opt = {})
{
    const int Nq = opt.nodes > 0 ? opt.nodes : cfg.modes();
    const double r = w.radius();
    std::vector<SparseOp> terms;
    terms.reserve(Nq);
    for (int j = 0; j < Nq; ++j) {
        const double psi = 2.0 * std::numbers::pi * j / Nq;
        const double weight = 2.0 * std::numbers::pi / Nq * r * std::cos(psi - opt.alpha);
        const FourierVector h = truncated_delta(w, cfg.M(), psi);
        SparseOp node(cfg.dim(), cfg.dim());
        for (int n = 0; n <= P.degree(); ++n) {
            const double c = P.coefficient(n);
            if (c != 0.0) {
                node += c * normal_ordered_power(cfg, w, h, n).matrix;
            }
        }
        terms.push_back(weight * node);
    }
    return {&cfg, detail::pairwise_sum(std::move(terms), cfg.dim())};
}

/// L = dGamma(l_1 on |k| <= M) + V.
inline FockOperator full_generator(const FockConfig& cfg, const SpectralWeights& w, const Polynomial& P,
                                   InteractionOptions opt = {})
{
    const FockOperator L0 = d_gamma(cfg, restrict_to_modes(cfg, boost_generator(w)));
    if (P.is_zero()) {
        return L0;
    }
    return {&cfg, L0.matrix + interaction_generator(cfg, w, P, opt).matrix};
}

/// Columns with total occupation <= N_max - margin.
inline std::vector<int> safe_block(const FockConfig& cfg, int margin)
{
    std::vector<int> idx;
    for (int i = 0; i < cfg.dim(); ++i) {
        if (cfg.total(i) <= cfg.N_max() - margin) {
            idx.push_back(i);
        }
    }
    return idx;
}

/// max |A_{ij}| over all rows i and the columns j in cols.
inline double max_on_columns(const Eigen::MatrixXcd& A, const std::vector<int>& cols)
{
    double d = 0.0;
    for (int j : cols) {
        d = std::max(d, A.col(j).cwiseAbs().maxCoeff());
    }
    return d;
}

/// max |A - A^*| on the block of rows and columns in idx.
inline double hermiticity_defect(const FockOperator& A, const std::vector<int>& idx)
{
    const Eigen::MatrixXcd D = A.dense();
    double d = 0.0;
    for (int i : idx) {
        for (int j : idx) {
            d = std::max(d, std::abs(D(i, j) - std::conj(D(j, i))));
        }
    }
    return d;
}

inline double hermiticity_defect(const FockOperator& A)
{
    const Eigen::MatrixXcd D = A.dense();
    return (D - D.adjoint()).cwiseAbs().maxCoeff();
}

/// Gamma(u(R_0(alpha))) is diagonal with phase exp(-i alpha sum_k k n_k).
inline Eigen::VectorXcd rotation_phases_fock(const FockConfig& cfg, double alpha)
{
    Eigen::VectorXcd d(cfg.dim());
    for (int i = 0; i < cfg.dim(); ++i) {
        int charge = 0;
        const auto& occ = cfg.state(i);
        for (int m = 0; m < cfg.modes(); ++m) {
            charge += (m - cfg.M()) * occ[m];
        }
        d[i] = std::polar(1.0, -alpha * charge);
    }
    return d;
}

/// max |Gamma(u) V Gamma(u)^{-1} - V_alpha|, V_alpha built with the weight cos(psi - alpha).
inline double rotation_covariance_defect(const FockConfig& cfg, const SpectralWeights& w, const Polynomial& P,
                                         double alpha, int nodes = 0)
{
    const Eigen::VectorXcd d = rotation_phases_fock(cfg, alpha);
    const Eigen::MatrixXcd V = interaction_generator(cfg, w, P, {nodes, 0.0}).dense();
    const Eigen::MatrixXcd Va = interaction_generator(cfg, w, P, {nodes, alpha}).dense();
    const Eigen::MatrixXcd conj = d.asDiagonal() * V * d.conjugate().asDiagonal();
    return (conj - Va).cwiseAbs().maxCoeff();
}

} // namespace dsqft

#endif
