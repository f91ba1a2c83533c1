#ifndef DSQFT_MODLOC_HPP
#define DSQFT_MODLOC_HPP

// Real subspaces of the truncated one-particle space and the modular localization tests.
// A vector with coordinates y in the basis f_k is stored as the real 2N-vector [Re y; Im y];
// the real part of the scalar product is then the Euclidean product and
// Im<u, v> = u^T J v with J = [[0, I], [-I, 0]].

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "dsqft/errors.hpp"
#include "dsqft/geometry.hpp"
#include "dsqft/oneparticle.hpp"
#include "dsqft/representation.hpp"

namespace dsqft {

struct RealSubspace {
    int K = 0;
    Eigen::MatrixXd basis; // 2(2K+1) x dim, orthonormal columns
    double snap_distance = 0.0;

    int ambient_dim() const { return 2 * (2 * K + 1); }
    int dim() const { return static_cast<int>(basis.cols()); }

    /// Matrix of (u, v) -> Im<u, v>.
    Eigen::MatrixXd sigma() const
    {
        const int N = 2 * K + 1;
        Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * N, 2 * N);
        J.topRightCorner(N, N).setIdentity();
        J.bottomLeftCorner(N, N) = -Eigen::MatrixXd::Identity(N, N);
        return J;
    }
};

inline Eigen::VectorXd real_coordinates(const SpectralWeights& w, const FourierVector& h)
{
    const Eigen::VectorXcd y = to_coordinates(w, h);
    Eigen::VectorXd v(2 * y.size());
    v << y.real(), y.imag();
    return v;
}

inline FourierVector from_real_coordinates(const SpectralWeights& w, const Eigen::VectorXd& v)
{
    const int N = w.size();
    if (v.size() != 2 * N) {
        throw dimension_error("from_real_coordinates: size mismatch");
    }
    Eigen::VectorXcd y(N);
    for (int n = 0; n < N; ++n) {
        y[n] = complex(v[n], v[N + n]);
    }
    return from_coordinates(w, y);
}

/// Orthonormal basis of the column span; columns below rel_tol of the largest pivot are dropped.
inline Eigen::MatrixXd orthonormal_span(const Eigen::MatrixXd& vectors, double rel_tol = 1e-10)
{
    if (vectors.cols() == 0) {
        return Eigen::MatrixXd(vectors.rows(), 0);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(vectors);
    qr.setThreshold(rel_tol);
    const Eigen::Index rank = qr.rank();
    const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(vectors.rows(), rank);
    return Q;
}

inline RealSubspace subspace_for_grid_points(const SpectralWeights& w, const std::vector<long>& points)
{
    const int N = w.size();
    Eigen::MatrixXd vectors(2 * N, 2 * static_cast<Eigen::Index>(points.size()));
    Eigen::VectorXd delta = Eigen::VectorXd::Zero(N);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(N);
    for (std::size_t n = 0; n < points.size(); ++n) {
        delta.setZero();
        delta[points[n]] = 1.0;
        vectors.col(2 * n) = real_coordinates(w, pack_cauchy(w, delta, zero));
        vectors.col(2 * n + 1) = real_coordinates(w, pack_cauchy(w, zero, delta));
    }
    RealSubspace S;
    S.K = w.K();
    S.basis = orthonormal_span(vectors);
    if (S.dim() != 2 * static_cast<int>(points.size())) {
        throw numerical_error("subspace_for_grid_points: Cauchy-data vectors are not independent");
    }
    return S;
}

/// Span of the Cauchy data (delta_j, 0) and (0, delta_j) over grid points strictly inside I,
/// after snapping the endpoints of I to the grid.
inline RealSubspace subspace_for_interval(const SpectralWeights& w, const geometry::Interval& I)
{
    const int N = w.size();
    const auto snapped = geometry::snap_to_grid(I, N);
    const auto points = geometry::interior_grid_points(snapped, N);
    if (points.empty()) {
        throw domain_error("subspace_for_interval: no grid point inside the interval");
    }
    RealSubspace S = subspace_for_grid_points(w, points);
    S.snap_distance = snapped.snap_distance;
    return S;
}

inline RealSubspace subspace_full(const SpectralWeights& w)
{
    RealSubspace S;
    S.K = w.K();
    S.basis = Eigen::MatrixXd::Identity(2 * w.size(), 2 * w.size());
    return S;
}

inline RealSubspace span_of(int K, const Eigen::MatrixXd& vectors)
{
    RealSubspace S;
    S.K = K;
    S.basis = orthonormal_span(vectors);
    return S;
}

inline RealSubspace subspace_sum(const RealSubspace& A, const RealSubspace& B)
{
    if (A.K != B.K) {
        throw dimension_error("subspace_sum: mode cutoff mismatch");
    }
    Eigen::MatrixXd stacked(A.basis.rows(), A.dim() + B.dim());
    stacked << A.basis, B.basis;
    return span_of(A.K, stacked);
}

/// The image of a real coordinate matrix under multiplication by i: (x, y) -> (-y, x).
inline Eigen::MatrixXd times_i(const Eigen::MatrixXd& V)
{
    const Eigen::Index N = V.rows() / 2;
    Eigen::MatrixXd out(V.rows(), V.cols());
    out.topRows(N) = -V.bottomRows(N);
    out.bottomRows(N) = V.topRows(N);
    return out;
}

inline RealSubspace rotate_subspace(const RealSubspace& S, double alpha)
{
    const int N = 2 * S.K + 1;
    const Eigen::VectorXcd d = rotation_phases(S.K, alpha);
    RealSubspace out = S;
    for (Eigen::Index c = 0; c < S.basis.cols(); ++c) {
        for (int n = 0; n < N; ++n) {
            const complex z = d[n] * complex(S.basis(n, c), S.basis(N + n, c));
            out.basis(n, c) = z.real();
            out.basis(N + n, c) = z.imag();
        }
    }
    return out;
}

inline RealSubspace symplectic_complement(const RealSubspace& S)
{
    const int dimH = S.ambient_dim();
    if (S.dim() == 0) {
        RealSubspace full = S;
        full.basis = Eigen::MatrixXd::Identity(dimH, dimH);
        return full;
    }
    // v is in the complement iff v is orthogonal to J^T S; J^T maps (x, y) to (-y, x).
    const Eigen::MatrixXd JtS = times_i(S.basis);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(JtS);
    const Eigen::MatrixXd Q = qr.householderQ();
    RealSubspace out;
    out.K = S.K;
    out.basis = Q.rightCols(dimH - S.dim());
    return out;
}

/// Largest distance from a unit vector of A to B.
inline double containment_gap(const RealSubspace& A, const RealSubspace& B)
{
    if (A.K != B.K) {
        throw dimension_error("containment_gap: mode cutoff mismatch");
    }
    if (A.dim() == 0) {
        return 0.0;
    }
    const Eigen::MatrixXd R = A.basis - B.basis * (B.basis.transpose() * A.basis);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(R);
    return svd.singularValues()[0];
}

inline double two_sided_gap(const RealSubspace& A, const RealSubspace& B)
{
    return std::max(containment_gap(A, B), containment_gap(B, A));
}

struct Standardness {
    int intersection_dim = 0;
    int span_codim = 0;
    double relative_codim = 0.0; // span_codim over the real dimension of the space
};

/// dim(S cap iS) by principal angles below 1e-8 and the codimension of S + iS.
inline Standardness standardness_check(const RealSubspace& S)
{
    Standardness out;
    const int d = S.dim();
    if (d > 0) {
        const Eigen::MatrixXd iS = times_i(S.basis);
        const Eigen::MatrixXd R = S.basis - iS * (iS.transpose() * S.basis);
        Eigen::BDCSVD<Eigen::MatrixXd> svd(R);
        for (Eigen::Index n = 0; n < svd.singularValues().size(); ++n) {
            if (svd.singularValues()[n] < 1e-8) {
                ++out.intersection_dim;
            }
        }
    }
    out.span_codim = S.ambient_dim() - (2 * d - out.intersection_dim);
    out.relative_codim = static_cast<double>(out.span_codim) / S.ambient_dim();
    return out;
}

struct DualityResult {
    int subspace_dim = 0;
    int complement_dim = 0;     // dim of the symplectic complement of H_I
    int opposite_dim = 0;       // dim of H over the interior of the complementary arc
    int boundary_dims = 0;      // complement_dim - opposite_dim
    double gap = 0.0;           // two-sided gap between the complement and opposite plus boundary lines
    double opposite_gap = 0.0;  // containment of the opposite subspace in the complement
    double double_complement_gap = 0.0;
};

/// Symplectic complement of H_I against H over the complementary arc. The two endpoint grid
/// points are excluded from both arcs, so the complement carries their 2 x 2 extra real dimensions.
inline DualityResult duality_check(const SpectralWeights& w, const geometry::Interval& I)
{
    const int N = w.size();
    const auto snapped = geometry::snap_to_grid(I, N);
    const RealSubspace S = subspace_for_interval(w, I);
    const RealSubspace C = symplectic_complement(S);
    const auto opposite = geometry::snap_to_grid(snapped.interval.complement(), N);
    auto points = geometry::interior_grid_points(opposite, N);
    const RealSubspace O = subspace_for_grid_points(w, points);
    points.push_back(((snapped.lo_index % N) + N) % N);
    points.push_back(((snapped.hi_index % N) + N) % N);
    const RealSubspace OB = subspace_for_grid_points(w, points);
    DualityResult out;
    out.subspace_dim = S.dim();
    out.complement_dim = C.dim();
    out.opposite_dim = O.dim();
    out.boundary_dims = C.dim() - O.dim();
    out.gap = two_sided_gap(C, OB);
    out.opposite_gap = containment_gap(O, C);
    out.double_complement_gap = two_sided_gap(symplectic_complement(C), S);
    return out;
}

/// Smallest principal-angle sine between S and iS; zero for an empty subspace.
inline double min_principal_sine(const RealSubspace& S)
{
    if (S.dim() == 0) {
        return 0.0;
    }
    const Eigen::MatrixXd iS = times_i(S.basis);
    const Eigen::MatrixXd R = S.basis - iS * (iS.transpose() * S.basis);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(R);
    return svd.singularValues().minCoeff();
}

// Modular operator of W_1 in windowed weak form.

/// Largest pi * window for which exp(pi * window) stays inside the double-precision budget.
inline constexpr double window_exponent_budget = 36.0;

struct TomitaResult {
    double residual = 0.0;
    int window_modes = 0;
    double amplification = 0.0; // exp(pi * window)
};

/// Relative residual of Theta exp(-pi l_1) h = h in the span of the l_1 eigenvectors with
/// |eigenvalue| <= window. Theta maps the lambda eigenspace to the -lambda one, so the
/// window is invariant under Theta.
inline TomitaResult tomita_residual_details(const SpectralWeights& w, const FourierVector& h, double window)
{
    if (!(window > 0.0)) {
        throw domain_error("tomita_residual: window must be > 0");
    }
    if (std::numbers::pi * window > window_exponent_budget) {
        throw overflow_error("tomita_residual: window too large for the double-precision budget");
    }
    const auto spec = SpectrumCache::instance().get(w);
    const Eigen::VectorXcd y = to_coordinates(w, h);
    const Eigen::VectorXcd c = spec->eigenvectors.transpose() * y;
    const int N = w.size();
    Eigen::VectorXcd projected = Eigen::VectorXcd::Zero(N);
    Eigen::VectorXcd continued = Eigen::VectorXcd::Zero(N);
    TomitaResult out;
    out.amplification = std::exp(std::numbers::pi * window);
    for (int n = 0; n < N; ++n) {
        const double lambda = spec->eigenvalues[n];
        if (std::abs(lambda) <= window) {
            projected += c[n] * spec->eigenvectors.col(n);
            continued += c[n] * std::exp(-std::numbers::pi * lambda) * spec->eigenvectors.col(n);
            ++out.window_modes;
        }
    }
    const double norm = projected.norm();
    if (norm == 0.0) {
        throw domain_error("tomita_residual: vector has no component in the window");
    }
    Eigen::VectorXcd reflected = theta_coordinates(w.K(), continued);
    // Back onto the window.
    const Eigen::VectorXcd rc = spec->eigenvectors.transpose() * reflected;
    reflected.setZero();
    for (int n = 0; n < N; ++n) {
        if (std::abs(spec->eigenvalues[n]) <= window) {
            reflected += rc[n] * spec->eigenvectors.col(n);
        }
    }
    out.residual = (reflected - projected).norm() / norm;
    return out;
}

inline double tomita_residual(const SpectralWeights& w, const FourierVector& h, double window = 6.0)
{
    return tomita_residual_details(w, h, window).residual;
}

// Finite speed of light.

/// Fraction of sum_j (a_j^2 + c_j^2) carried by grid points outside the open arc J.
inline double mass_outside(const CauchyData& d, const geometry::Interval& J)
{
    const int N = d.grid_size();
    double total = 0.0, outside = 0.0;
    for (int j = 0; j < N; ++j) {
        const double m = d.a[j] * d.a[j] + d.c[j] * d.c[j];
        total += m;
        if (!J.contains(grid_point(j, N))) {
            outside += m;
        }
    }
    if (total == 0.0) {
        throw domain_error("mass_outside: zero Cauchy data");
    }
    return outside / total;
}

struct FslResult {
    double leakage = 0.0;
    geometry::Interval propagated; // I_t
    CauchyData evolved;
};

/// Evolves h in H_I by exp(i t l_1) and measures the Cauchy-data mass outside I_t.
inline FslResult fsl_leakage_details(const SpectralWeights& w, const geometry::Interval& I, const FourierVector& h,
                                     double t)
{
    if (std::abs(t) > 1.0) {
        throw domain_error("fsl_leakage: |t| must be <= 1");
    }
    if (mass_outside(unpack_cauchy(w, h), I) > 1e-24) {
        throw domain_error("fsl_leakage: initial data are not supported in I");
    }
    FslResult out{0.0, I, CauchyData(w.K())};
    const OperatorH L = boost_generator(w);
    const FourierVector ht = boost_apply(w, L, complex(t, 0.0), h);
    out.evolved = unpack_cauchy(w, ht);
    out.propagated = t == 0.0 ? I : geometry::dod_interval(geometry::boost(t), I, 4096, 60, w.radius());
    out.leakage = mass_outside(out.evolved, out.propagated);
    return out;
}

inline double fsl_leakage(const SpectralWeights& w, const geometry::Interval& I, const FourierVector& h, double t)
{
    return fsl_leakage_details(w, I, h, t).leakage;
}

/// |Im<h1, h2>| for vectors localized in disjoint arcs.
inline double microcausality_value(const SpectralWeights& w, const FourierVector& h1, const geometry::Interval& I1,
                                   const FourierVector& h2, const geometry::Interval& I2)
{
    if (I1.intersects(I2)) {
        throw domain_error("microcausality_value: intervals overlap");
    }
    return std::abs(inner_product(w, h1, h2).imag());
}

/// Two-sided gap between H_{I+} and the span of H_{R_0(alpha) I_small} over the grid
/// rotations keeping the rotated arc inside I_+. With coverage < 1 only that leading
/// fraction of the admissible rotations is used.
inline double additivity_check(const SpectralWeights& w, const geometry::Interval& I_small, double coverage = 1.0)
{
    const int N = w.size();
    const auto big = geometry::half_circle_plus();
    const auto big_snapped = geometry::snap_to_grid(big, N);
    const auto small = geometry::snap_to_grid(I_small, N);
    if (!small.interval.subset_of(big_snapped.interval)) {
        throw domain_error("additivity_check: I_small must lie in I_+");
    }
    const long width = small.hi_index - small.lo_index;
    std::vector<long> shifts;
    for (long lo = big_snapped.lo_index; lo + width <= big_snapped.hi_index; ++lo) {
        shifts.push_back(lo - small.lo_index);
    }
    const auto used = static_cast<std::size_t>(std::ceil(coverage * static_cast<double>(shifts.size())));
    std::vector<RealSubspace> parts;
    Eigen::Index cols = 0;
    for (std::size_t n = 0; n < std::min(used, shifts.size()); ++n) {
        const double alpha = geometry::grid_angle(shifts[n], N);
        parts.push_back(rotate_subspace(subspace_for_interval(w, small.interval), alpha));
        cols += parts.back().dim();
    }
    Eigen::MatrixXd vectors(2 * N, cols);
    cols = 0;
    for (const auto& p : parts) {
        vectors.middleCols(cols, p.dim()) = p.basis;
        cols += p.dim();
    }
    const RealSubspace joined = span_of(w.K(), vectors);
    return two_sided_gap(joined, subspace_for_interval(w, big));
}

} // namespace dsqft

#endif
