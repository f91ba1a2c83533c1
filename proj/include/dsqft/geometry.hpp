#ifndef DSQFT_GEOMETRY_HPP
#define DSQFT_GEOMETRY_HPP

// Causal geometry of two-dimensional de Sitter space embedded as the hyperboloid
// x0^2 - x1^2 - x2^2 = -r^2 in R^{1+2}. Points of the Cauchy circle x0 = 0 are
// parametrised as x(psi) = (0, r sin psi, r cos psi).

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "dsqft/errors.hpp"

namespace dsqft::geometry {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline double wrap_angle(double a)
{
    double r = std::fmod(a, two_pi);
    if (r < 0.0) {
        r += two_pi;
    }
    if (r >= two_pi) {
        r -= two_pi;
    }
    return r;
}

/// Element of SO_0(1,2) acting on the ambient Minkowski space.
struct GroupElement {
    Eigen::Matrix3d matrix = Eigen::Matrix3d::Identity();

    GroupElement operator*(const GroupElement& o) const { return {matrix * o.matrix}; }

    GroupElement inverse() const
    {
        const Eigen::Matrix3d eta = Eigen::Vector3d(1.0, -1.0, -1.0).asDiagonal();
        return {eta * matrix.transpose() * eta};
    }

    /// Deviation from preserving diag(+,-,-), plus orthochronicity and det = 1.
    bool is_proper_orthochronous(double tol = 1e-12) const
    {
        const Eigen::Matrix3d eta = Eigen::Vector3d(1.0, -1.0, -1.0).asDiagonal();
        const double defect = (matrix.transpose() * eta * matrix - eta).cwiseAbs().maxCoeff();
        return defect <= tol * std::max(1.0, matrix.squaredNorm()) && matrix(0, 0) > 0.0 &&
               std::abs(matrix.determinant() - 1.0) <= tol * std::max(1.0, matrix.squaredNorm());
    }
};

/// R_0(alpha): rotation in the (x1, x2) plane. Acts on the circle as psi -> psi - alpha.
inline GroupElement rotation(double alpha)
{
    const double c = std::cos(alpha), s = std::sin(alpha);
    Eigen::Matrix3d m;
    m << 1.0, 0.0, 0.0, 0.0, c, -s, 0.0, s, c;
    return {m};
}

/// Lambda^(alpha)(t) = R_0(alpha) Lambda_1(t) R_0(-alpha); alpha = 0 is the boost in the x2 direction.
inline GroupElement boost(double t, double alpha = 0.0)
{
    const double ch = std::cosh(t), sh = std::sinh(t);
    Eigen::Matrix3d m;
    m << ch, 0.0, sh, 0.0, 1.0, 0.0, sh, 0.0, ch;
    if (alpha == 0.0) {
        return {m};
    }
    return rotation(alpha) * GroupElement{m} * rotation(-alpha);
}

inline double minkowski(const Eigen::Vector3d& x, const Eigen::Vector3d& y)
{
    return x[0] * y[0] - x[1] * y[1] - x[2] * y[2];
}

struct DSPoint {
    Eigen::Vector3d x = Eigen::Vector3d::Zero();
    double radius = 1.0;

    double hyperboloid_defect() const { return std::abs(minkowski(x, x) + radius * radius) / (radius * radius); }
};

inline DSPoint circle_point(double psi, double radius)
{
    return {Eigen::Vector3d(0.0, radius * std::sin(psi), radius * std::cos(psi)), radius};
}

/// Global coordinates: x = (r sinh tau, r cosh tau sin psi, r cosh tau cos psi).
inline DSPoint ds_point(double tau, double psi, double radius)
{
    const double ch = std::cosh(tau);
    return {Eigen::Vector3d(radius * std::sinh(tau), radius * ch * std::sin(psi), radius * ch * std::cos(psi)),
            radius};
}

inline DSPoint apply(const GroupElement& g, const DSPoint& p)
{
    return {g.matrix * p.x, p.radius};
}

/// Causal connectibility on dS: <x, y> <= -r^2 in the ambient Minkowski product.
inline bool causally_related(const DSPoint& x, const DSPoint& y)
{
    if (std::abs(x.radius - y.radius) > 1e-12 * std::max(x.radius, y.radius)) {
        throw domain_error("causally_related: points lie on hyperboloids of different radius");
    }
    const double r2 = x.radius * x.radius;
    const double scale = std::max(r2, x.x.norm() * y.x.norm());
    return minkowski(x.x, y.x) + r2 <= 1e-12 * scale;
}

/// Open arc {psi : lo < psi < hi} of the circle, stored as (lo mod 2pi, length).
class Interval {
public:
    Interval() = default;

    /// Arc from lo counter-clockwise to hi; requires 0 < hi - lo < 2 pi.
    Interval(double lo, double hi)
    {
        const double len = hi - lo;
        if (!(len > 0.0) || !(len < two_pi)) {
            throw domain_error("Interval: length must lie in (0, 2 pi)");
        }
        lo_ = wrap_angle(lo);
        length_ = len;
    }

    static Interval from_lo_length(double lo, double length) { return Interval(lo, lo + length); }

    double lo() const { return lo_; }
    double hi() const { return lo_ + length_; }
    double length() const { return length_; }
    double center() const { return wrap_angle(lo_ + 0.5 * length_); }

    bool contains(double psi) const
    {
        const double d = wrap_angle(psi - lo_);
        return d > 0.0 && d < length_;
    }

    bool contains_closed(double psi, double tol = 0.0) const
    {
        const double d = wrap_angle(psi - lo_);
        return d <= length_ + tol || d >= two_pi - tol;
    }

    /// Image of the arc under psi -> psi + alpha (support translation by u(R_0(alpha))).
    Interval shifted(double alpha) const { return from_lo_length(lo_ + alpha, length_); }

    /// Interior of the complementary arc.
    Interval complement() const { return from_lo_length(lo_ + length_, two_pi - length_); }

    bool subset_of(const Interval& o, double tol = 1e-12) const
    {
        const double d = wrap_angle(lo_ - o.lo_ + tol);
        return d <= o.length_ + tol && d + length_ <= o.length_ + 2.0 * tol;
    }

    bool intersects(const Interval& o) const
    {
        return lo_ == o.lo_ || contains(o.lo_) || o.contains(lo_);
    }

    Interval shrunk(double factor) const
    {
        const double len = length_ * factor;
        return from_lo_length(lo_ + 0.5 * (length_ - len), len);
    }

private:
    double lo_ = 0.0;
    double length_ = std::numbers::pi;
};

/// I_+ = {x in S^1 : x2 > 0} = (-pi/2, pi/2), the base of W_1.
inline Interval half_circle_plus()
{
    return Interval(-0.5 * std::numbers::pi, 0.5 * std::numbers::pi);
}

inline double grid_angle(long j, long n) { return two_pi * static_cast<double>(j) / static_cast<double>(n); }

struct SnappedInterval {
    Interval interval;
    long lo_index = 0; // grid index of the snapped lower endpoint
    long hi_index = 0; // lo_index + number of grid steps spanned
    double snap_distance = 0.0;
};

/// Moves both endpoints to the nearest points of the uniform n-point grid.
inline SnappedInterval snap_to_grid(const Interval& I, long n)
{
    const double step = two_pi / static_cast<double>(n);
    const long lo_idx = std::lround(I.lo() / step);
    const long hi_idx = std::lround(I.hi() / step);
    if (hi_idx - lo_idx <= 0 || hi_idx - lo_idx >= n) {
        throw domain_error("snap_to_grid: interval collapses on this grid");
    }
    SnappedInterval s;
    s.lo_index = lo_idx;
    s.hi_index = hi_idx;
    s.snap_distance = std::max(std::abs(lo_idx * step - I.lo()), std::abs(hi_idx * step - I.hi()));
    s.interval = Interval(lo_idx * step, hi_idx * step);
    return s;
}

/// Grid indices in [0, n) strictly inside the snapped interval (endpoints excluded).
inline std::vector<long> interior_grid_points(const SnappedInterval& s, long n)
{
    std::vector<long> out;
    for (long j = s.lo_index + 1; j < s.hi_index; ++j) {
        out.push_back(((j % n) + n) % n);
    }
    return out;
}

namespace detail {

// min over psi in the closed arc [lo, hi] of <g x(psi), y>.
inline double min_product_over_arc(const GroupElement& g, double r, double lo, double hi, const Eigen::Vector3d& y)
{
    const Eigen::Vector3d col1 = g.matrix.col(1);
    const Eigen::Vector3d col2 = g.matrix.col(2);
    const double A = r * minkowski(col1, y);
    const double B = r * minkowski(col2, y);
    // f(psi) = A sin psi + B cos psi = R cos(psi - phi)
    const double R = std::hypot(A, B);
    const double phi = std::atan2(A, B);
    const double argmin = phi + std::numbers::pi;
    const double d = wrap_angle(argmin - lo);
    if (d <= hi - lo) {
        return -R;
    }
    return std::min(A * std::sin(lo) + B * std::cos(lo), A * std::sin(hi) + B * std::cos(hi));
}

} // namespace detail

/// True iff the circle point x(psi) is causally related to some point of g applied to closure(I).
inline bool shadow_contains(const GroupElement& g, const Interval& I, double psi, double radius)
{
    const Eigen::Vector3d y = circle_point(psi, radius).x;
    const double m = detail::min_product_over_arc(g, radius, I.lo(), I.hi(), y);
    return m + radius * radius <= 1e-13 * radius * radius;
}

/// The arc J = Gamma(g I) cap S^1: circle points causally related to g I.
/// A uniform scan of n_grid probes locates the arc, then each endpoint is bisected.
inline Interval dod_interval(const GroupElement& g, const Interval& I, int n_grid = 4096, int refinements = 60,
                             double radius = 1.0)
{
    if (n_grid < 64) {
        throw domain_error("dod_interval: n_grid must be >= 64");
    }
    std::vector<char> inside(static_cast<std::size_t>(n_grid));
    int count = 0;
    for (int j = 0; j < n_grid; ++j) {
        inside[j] = shadow_contains(g, I, grid_angle(j, n_grid), radius) ? 1 : 0;
        count += inside[j];
    }
    if (count == 0) {
        throw geometry_error("dod_interval: causal shadow not resolved by the probe grid");
    }
    if (count == n_grid) {
        throw geometry_error("dod_interval: causal shadow covers the whole circle");
    }
    int starts = 0;
    int start = -1;
    for (int j = 0; j < n_grid; ++j) {
        const int prev = (j + n_grid - 1) % n_grid;
        if (inside[j] && !inside[prev]) {
            ++starts;
            start = j;
        }
    }
    if (starts != 1) {
        throw geometry_error("dod_interval: causal shadow is not a single arc");
    }
    const int last = start + count - 1; // unwrapped index of the last inside probe
    auto pred = [&](double psi) { return shadow_contains(g, I, psi, radius); };
    double out_lo = grid_angle(start - 1, n_grid), in_lo = grid_angle(start, n_grid);
    double in_hi = grid_angle(last, n_grid), out_hi = grid_angle(last + 1, n_grid);
    for (int it = 0; it < refinements; ++it) {
        const double m = 0.5 * (out_lo + in_lo);
        (pred(m) ? in_lo : out_lo) = m;
        const double m2 = 0.5 * (in_hi + out_hi);
        (pred(m2) ? in_hi : out_hi) = m2;
    }
    return Interval(0.5 * (out_lo + in_lo), 0.5 * (in_hi + out_hi));
}

enum class RegionKind { wedge, double_cone };

/// A wedge g W_1, or a double cone g O_I with base interval I on the Cauchy circle.
struct Region {
    RegionKind kind = RegionKind::wedge;
    GroupElement generator;
    std::optional<Interval> base_interval;
    double radius = 1.0;
};

inline Region wedge(const GroupElement& g = {}, double radius = 1.0)
{
    return {RegionKind::wedge, g, std::nullopt, radius};
}

/// W(alpha) = R_0(alpha) W_1, whose base is I_+ translated by -alpha.
inline Region rotated_wedge(double alpha, double radius = 1.0)
{
    return wedge(rotation(alpha), radius);
}

inline Region double_cone(const Interval& base, const GroupElement& g = {}, double radius = 1.0)
{
    return {RegionKind::double_cone, g, base, radius};
}

/// Causal shadow of a point on the circle: the closed arc centred at phi with half-width delta.
struct PointShadow {
    double center = 0.0;
    double half_width = 0.0;
};

inline PointShadow point_shadow(const DSPoint& p)
{
    const double rho = std::hypot(p.x[1], p.x[2]);
    return {std::atan2(p.x[1], p.x[2]), std::acos(std::min(1.0, p.radius / rho))};
}

inline bool region_contains(const Region& R, const DSPoint& p)
{
    const DSPoint y = apply(R.generator.inverse(), p);
    if (R.kind == RegionKind::wedge) {
        return y.x[2] > std::abs(y.x[0]);
    }
    // Domain of dependence of the base: the whole causal shadow lies inside the open base arc.
    const PointShadow sh = point_shadow(y);
    const Interval& I = *R.base_interval;
    const double d = wrap_angle(sh.center - sh.half_width - I.lo());
    return d > 0.0 && d + 2.0 * sh.half_width < I.length();
}

/// Causal complement: (g W_1)' = g R_0(pi) W_1, and O_I' = O_{complement of I}.
inline Region spacelike_complement(const Region& R)
{
    if (R.kind == RegionKind::wedge) {
        return wedge(R.generator * rotation(std::numbers::pi), R.radius);
    }
    return double_cone(R.base_interval->complement(), R.generator, R.radius);
}

} // namespace dsqft::geometry

#endif
