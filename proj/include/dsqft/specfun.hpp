#ifndef DSQFT_SPECFUN_HPP
#define DSQFT_SPECFUN_HPP

// Complex Gamma, digamma, the Gauss hypergeometric series and the Legendre
// function P_s of complex degree, plus the model parameters (zeta, r) -> (nu, s±, c_nu).

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>

#include "dsqft/errors.hpp"

namespace dsqft {

using complex = std::complex<double>;

namespace specfun {

namespace detail {

// Godfrey's coefficients for the Lanczos approximation with g = 607/128.
inline constexpr std::array<double, 14> lanczos_coefficients = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   0.339946499848118887e-4, 0.465236289270485756e-4,
    -0.983744753048795646e-4, 0.158088703224912494e-3, -0.210264441724104883e-3,
    0.217439618115212643e-3, -0.164318106536763890e-3, 0.844182239838527433e-4,
    -0.261908384015814087e-4, 0.368991826595316234e-5};

inline complex log_gamma_right(complex z)
{
    complex y = z;
    complex tmp = z + 5.24218750000000000;
    tmp = (z + 0.5) * std::log(tmp) - tmp;
    complex ser = 0.999999999999997092;
    for (double c : lanczos_coefficients) {
        y += 1.0;
        ser += c / y;
    }
    return tmp + std::log(2.5066282746310005 * ser / z);
}

inline void check_pole(complex z, const char* who)
{
    const double n = std::round(z.real());
    if (n <= 0.0 && std::abs(z - complex(n, 0.0)) <= 1e-14) {
        throw pole_error(std::string(who) + ": pole at non-positive integer " + std::to_string(n));
    }
}

} // namespace detail

/// A logarithm of Gamma(z). The imaginary part is only defined modulo 2*pi;
/// exp(log_gamma(z)) is Gamma(z). Reflection is used for Re z < 1/2.
inline complex log_gamma(complex z)
{
    detail::check_pole(z, "log_gamma");
    if (z.real() < 0.5) {
        const double pi = std::numbers::pi;
        return std::log(pi) - std::log(std::sin(pi * z)) - detail::log_gamma_right(1.0 - z);
    }
    return detail::log_gamma_right(z);
}

inline complex complex_gamma(complex z)
{
    const complex lg = log_gamma(z);
    if (lg.real() > 709.0) {
        throw overflow_error("complex_gamma: |Gamma(z)| exceeds the double range");
    }
    return std::exp(lg);
}

/// Gamma(a)/Gamma(b) evaluated through log-Gamma, safe for large arguments.
inline complex gamma_ratio(complex a, complex b)
{
    return std::exp(log_gamma(a) - log_gamma(b));
}

/// Gamma(z + 1/2) / Gamma(z). Upward recursion to |z| >= 20, then the asymptotic
/// series of its logarithm; relative accuracy stays near machine precision for large z,
/// where a difference of log-Gamma values would cancel.
inline complex gamma_half_ratio(complex z)
{
    detail::check_pole(z, "gamma_half_ratio");
    complex prod = 1.0;
    int shifts = 0;
    while (std::abs(z) < 20.0 || z.real() < 10.0) {
        const complex denom = z + 0.5;
        if (std::abs(denom) < 1e-14) {
            throw pole_error("gamma_half_ratio: Gamma(z + 1/2) has a pole");
        }
        prod *= z / denom;
        z += 1.0;
        if (++shifts > 1000000) {
            throw convergence_error("gamma_half_ratio: argument too far in the left half-plane");
        }
    }
    static constexpr std::array<double, 7> c = {-1.0 / 8.0,         1.0 / 192.0,        -1.0 / 640.0,
                                                17.0 / 14336.0,     -31.0 / 18432.0,    691.0 / 180224.0,
                                                -5461.0 / 425984.0};
    const complex inv = 1.0 / z;
    const complex inv2 = inv * inv;
    complex p = inv;
    complex series = 0.0;
    for (double ck : c) {
        series += ck * p;
        p *= inv2;
    }
    return prod * std::sqrt(z) * std::exp(series);
}

inline complex digamma(complex z)
{
    detail::check_pole(z, "digamma");
    const double pi = std::numbers::pi;
    if (z.real() < 0.5) {
        return digamma(1.0 - z) - pi / std::tan(pi * z);
    }
    complex acc = 0.0;
    while (std::abs(z) < 12.0) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    // Asymptotic series with B_2 .. B_14.
    static constexpr std::array<double, 7> c = {
        1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0, 1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0};
    const complex inv2 = 1.0 / (z * z);
    complex tail = 0.0;
    complex p = inv2;
    for (double ck : c) {
        tail += ck * p;
        p *= inv2;
    }
    return acc + std::log(z) - 0.5 / z - tail;
}

struct SeriesOptions {
    double rel_tol = 1e-16;
    std::size_t max_terms = 1'000'000;
};

/// 2F1(a, b; c; z) by direct summation for |z| < 1. Terminates on an explicit
/// tail bound; throws convergence_error when the bound is not met within max_terms.
inline complex hyp2f1_series(complex a, complex b, complex c, complex z, SeriesOptions opt = {})
{
    if (std::abs(z) >= 1.0) {
        throw domain_error("hyp2f1_series: requires |z| < 1");
    }
    detail::check_pole(c, "hyp2f1_series (c)");
    complex term = 1.0;
    complex sum = 1.0;
    const double abs_a = std::abs(a), abs_b = std::abs(b), abs_c = std::abs(c);
    const double az = std::abs(z);
    for (std::size_t n = 0; n < opt.max_terms; ++n) {
        const double dn = static_cast<double>(n);
        term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * z;
        sum += term;
        if (term == 0.0) {
            return sum; // terminating (polynomial) series
        }
        const double m = dn + 1.0;
        if (m > 2.0 * (abs_a + abs_b + abs_c) + 2.0) {
            const double rho = az * (1.0 + abs_a / m) * (1.0 + abs_b / m) / (1.0 - abs_c / m);
            if (rho < 1.0 && std::abs(term) * rho / (1.0 - rho) <= opt.rel_tol * std::abs(sum)) {
                return sum;
            }
        }
    }
    throw convergence_error("hyp2f1_series: tail bound not met within the term cap");
}

namespace detail {

inline bool is_nonpositive_integer(complex a)
{
    const double n = std::round(a.real());
    return n <= 0.0 && a.imag() == 0.0 && a.real() == n;
}

// 2F1(a, b; a+b; z) with a + b = 1 around z = 1 (logarithmic case), written in
// terms of zc = 1 - z so that callers can pass 1 - z without cancellation.
inline complex hyp2f1_log_case(complex a, complex b, double zc, SeriesOptions opt)
{
    const double pi = std::numbers::pi;
    // 1 / (Gamma(a) Gamma(b)) with b = 1 - a.
    const complex prefactor = std::sin(pi * a) / pi;
    const double log_zc = std::log(zc);
    const double euler = 0.57721566490153286061;
    complex psi_a = digamma(a);
    complex psi_b = digamma(b);
    double psi_n1 = -euler; // psi(n + 1)
    complex u = 1.0;        // (a)_n (b)_n / (n!)^2 zc^n
    complex sum = u * (2.0 * psi_n1 - psi_a - psi_b - log_zc);
    const double abs_a = std::abs(a), abs_b = std::abs(b);
    for (std::size_t n = 0; n < opt.max_terms; ++n) {
        const double dn = static_cast<double>(n);
        u *= (a + dn) * (b + dn) / ((dn + 1.0) * (dn + 1.0)) * zc;
        psi_n1 += 1.0 / (dn + 1.0);
        psi_a += 1.0 / (a + dn);
        psi_b += 1.0 / (b + dn);
        const complex bracket = 2.0 * psi_n1 - psi_a - psi_b - log_zc;
        const complex term = u * bracket;
        sum += term;
        const double m = dn + 1.0;
        if (m > 2.0 * std::max(abs_a, abs_b) + 2.0) {
            const double rho = zc * (1.0 + abs_a / m) * (1.0 + abs_b / m);
            if (rho < 1.0) {
                const double tail = std::abs(u) * (std::abs(bracket) * rho / (1.0 - rho) +
                                                   6.0 * rho / (m * (1.0 - rho) * (1.0 - rho)));
                if (tail <= opt.rel_tol * std::abs(sum)) {
                    return prefactor * sum;
                }
            }
        }
    }
    throw convergence_error("legendre_p: logarithmic expansion did not converge");
}

} // namespace detail

/// P_s at x = 1 - 2z given both z = (1 - x)/2 and zc = (1 + x)/2. Supplying zc
/// separately keeps full relative accuracy as x -> -1, where P_s diverges like log(1 + x).
inline complex legendre_p_split(complex s, double z, double zc, SeriesOptions opt = {})
{
    if (!(z >= 0.0) || !(zc > 0.0)) {
        throw domain_error("legendre_p: argument outside (-1, 1]");
    }
    const complex a = -s;
    const complex b = s + 1.0;
    if (detail::is_nonpositive_integer(a) || detail::is_nonpositive_integer(b)) {
        return hyp2f1_series(a, b, 1.0, z, opt);
    }
    const double dist_to_integer = std::abs(s - complex(std::round(s.real()), 0.0));
    if (z <= 0.5 || dist_to_integer < 1e-3) {
        return hyp2f1_series(a, b, 1.0, z, opt);
    }
    return detail::hyp2f1_log_case(a, b, zc, opt);
}

/// Legendre function P_s(x) = 2F1(-s, s+1; 1; (1 - x)/2) for x in (-1, 1].
inline complex legendre_p(complex s, double x, SeriesOptions opt = {})
{
    if (!(x > -1.0) || !(x <= 1.0)) {
        throw domain_error("legendre_p: x must lie in (-1, 1]");
    }
    return legendre_p_split(s, 0.5 * (1.0 - x), 0.5 * (1.0 + x), opt);
}

} // namespace specfun

enum class Series { principal, complementary };

inline const char* to_string(Series s)
{
    return s == Series::principal ? "principal" : "complementary";
}

/// Physical constants of the model and the derived representation data.
struct ModelParams {
    double zeta = 0.0;   // Casimir parameter
    double radius = 0.0; // de Sitter radius r
    complex nu;
    complex s_plus;
    complex s_minus;
    double c_nu = 0.0;
    Series series = Series::principal;
};

inline ModelParams make_params(double zeta, double radius)
{
    if (!(zeta > 0.0) || !std::isfinite(zeta)) {
        throw domain_error("make_params: zeta must be > 0");
    }
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw domain_error("make_params: radius must be > 0");
    }
    ModelParams p;
    p.zeta = zeta;
    p.radius = radius;
    if (zeta < 0.5) {
        p.nu = complex(0.0, std::sqrt(0.25 - zeta * zeta));
        p.series = Series::complementary;
    } else {
        p.nu = complex(std::sqrt(zeta * zeta - 0.25), 0.0);
        p.series = Series::principal;
    }
    const complex i(0.0, 1.0);
    p.s_plus = -0.5 - i * p.nu;
    p.s_minus = -0.5 + i * p.nu;
    const complex c = 1.0 / (2.0 * std::cos(i * p.nu * std::numbers::pi));
    if (std::abs(c.imag()) > 1e-14 * std::abs(c) || !(c.real() > 0.0)) {
        throw non_real_error("make_params: c_nu is not real positive");
    }
    p.c_nu = c.real();
    return p;
}

} // namespace dsqft

#endif
