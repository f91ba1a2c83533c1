#ifndef DSQFT_EXTENDED_HPP
#define DSQFT_EXTENDED_HPP

// 50-digit arithmetic for the spectral weights, the boost spectrum and the
// full-vector modular residual at small mode cutoffs.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "dsqft/errors.hpp"
#include "dsqft/oneparticle.hpp"

namespace dsqft::extended {

using real50 = boost::multiprecision::cpp_bin_float_50;
using complex50 = boost::multiprecision::cpp_complex_50;

inline constexpr int max_extended_K = 32;

/// log Gamma(z) by Stirling's series after shifting Re z above 30 (about 50 digits).
template <class C, class R>
C log_gamma_stirling(C z)
{
    const R pi = boost::math::constants::pi<R>();
    C shift = 0;
    while (z.real() < 30) {
        if (abs(z) < R(1e-40)) {
            throw pole_error("log_gamma_stirling: pole");
        }
        shift += log(z);
        z += 1;
    }
    C acc = (z - R(0.5)) * log(z) - z + log(2 * pi) / 2;
    const C inv = C(1) / z;
    const C inv2 = inv * inv;
    C p = inv;
    for (int m = 1; m <= 30; ++m) {
        const R b = boost::math::bernoulli_b2n<R>(m);
        acc += b / R(2 * m * (2 * m - 1)) * p;
        p *= inv2;
    }
    return acc - shift;
}

struct Params50 {
    real50 zeta;
    real50 radius;
    complex50 s_plus;
};

inline Params50 make_params50(double zeta, double radius)
{
    Params50 p{real50(zeta), real50(radius), complex50(0)};
    const real50 q = p.zeta * p.zeta - real50(0.25);
    // s+ = -1/2 - i nu with nu = sqrt(q) (principal) or i sqrt(-q) (complementary)
    if (q >= 0) {
        p.s_plus = complex50(real50(-0.5), -sqrt(q));
    } else {
        p.s_plus = complex50(real50(-0.5) + sqrt(-q), real50(0));
    }
    return p;
}

/// Spectral weight from the four-Gamma formula in 50-digit arithmetic.
inline real50 omega50(const Params50& p, int k)
{
    const real50 kk = std::abs(k);
    const complex50 s = p.s_plus;
    auto lg = [](const complex50& z) { return log_gamma_stirling<complex50, real50>(z); };
    const complex50 e = lg((kk + s) / 2) + lg((kk + 1 - s) / 2) - lg((kk - s) / 2) - lg((kk + 1 + s) / 2);
    const complex50 v = (kk + s) * exp(e) / p.radius;
    if (abs(v.imag()) > real50(1e-40) * abs(v)) {
        throw non_real_error("omega50: spectral weight is not real");
    }
    return v.real();
}

/// Eigen-decomposition of a real symmetric tridiagonal matrix by implicit QL with shifts.
/// diag has n entries, off has n - 1; returns eigenvalues in diag and eigenvectors in columns of z.
template <class T>
void tridiagonal_ql(std::vector<T>& diag, std::vector<T> off, std::vector<std::vector<T>>& z)
{
    using std::abs;
    using std::sqrt;
    const int n = static_cast<int>(diag.size());
    z.assign(n, std::vector<T>(n, T(0)));
    for (int i = 0; i < n; ++i) {
        z[i][i] = 1;
    }
    off.push_back(T(0));
    const T eps = std::numeric_limits<T>::epsilon();
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m = l;
        do {
            for (m = l; m < n - 1; ++m) {
                const T dd = abs(diag[m]) + abs(diag[m + 1]);
                if (abs(off[m]) <= eps * dd) {
                    break;
                }
            }
            if (m == l) {
                break;
            }
            if (++iter > 200) {
                throw convergence_error("tridiagonal_ql: no convergence");
            }
            T g = (diag[l + 1] - diag[l]) / (2 * off[l]);
            T r = sqrt(g * g + 1);
            g = diag[m] - diag[l] + off[l] / (g + (g >= 0 ? r : T(-r)));
            T s = 1, c = 1, p = 0;
            bool deflated = false;
            for (int i = m - 1; i >= l; --i) {
                T f = s * off[i];
                const T b = c * off[i];
                r = sqrt(f * f + g * g);
                off[i + 1] = r;
                if (r == 0) {
                    diag[i + 1] -= p;
                    off[m] = 0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                for (int k = 0; k < n; ++k) {
                    f = z[k][i + 1];
                    z[k][i + 1] = s * z[k][i] + c * f;
                    z[k][i] = c * z[k][i] - s * f;
                }
            }
            if (deflated) {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0;
        } while (true);
    }
}

struct ExtendedTomita {
    double residual = 0.0;   // full-vector relative residual
    double max_weight_error = 0.0; // max relative difference to the double weights
};

/// Full-vector residual |Theta exp(-pi l_1) h - h| / |h| with 50-digit weights and spectrum.
inline ExtendedTomita tomita_residual_extended(const SpectralWeights& w, const FourierVector& h)
{
    const int K = w.K();
    if (K > max_extended_K) {
        throw domain_error("tomita_residual_extended: K must be <= " + std::to_string(max_extended_K));
    }
    require_same_size(w, h, "tomita_residual_extended");
    const int N = w.size();
    const Params50 p = make_params50(w.params().zeta, w.params().radius);
    std::vector<real50> wk(K + 1);
    ExtendedTomita out;
    for (int k = 0; k <= K; ++k) {
        wk[k] = omega50(p, k);
        out.max_weight_error =
            std::max(out.max_weight_error, std::abs(static_cast<double>((wk[k] - w[k]) / wk[k])));
    }
    auto weight = [&](int k) { return wk[std::abs(k)]; };
    std::vector<real50> diag(N, real50(0)), off(N - 1);
    for (int k = -K; k < K; ++k) {
        off[k + K] = p.radius / 2 * sqrt(weight(k) * weight(k + 1));
    }
    std::vector<std::vector<real50>> V;
    tridiagonal_ql(diag, off, V);

    std::vector<real50> yr(N), yi(N);
    for (int k = -K; k <= K; ++k) {
        const real50 scale = sqrt(2 * weight(k));
        yr[k + K] = real50(h[k].real()) / scale;
        yi[k + K] = real50(h[k].imag()) / scale;
    }
    const real50 pi = boost::math::constants::pi<real50>();
    std::vector<real50> zr(N, real50(0)), zi(N, real50(0));
    for (int n = 0; n < N; ++n) {
        real50 cr = 0, ci = 0;
        for (int i = 0; i < N; ++i) {
            cr += V[i][n] * yr[i];
            ci += V[i][n] * yi[i];
        }
        const real50 f = exp(-pi * diag[n]);
        for (int i = 0; i < N; ++i) {
            zr[i] += f * cr * V[i][n];
            zi[i] += f * ci * V[i][n];
        }
    }
    real50 num = 0, den = 0;
    for (int k = -K; k <= K; ++k) {
        const int i = k + K;
        const real50 sign = (k % 2 == 0) ? 1 : -1;
        const real50 dr = sign * zr[i] - yr[i];
        const real50 di = -sign * zi[i] - yi[i];
        num += dr * dr + di * di;
        den += yr[i] * yr[i] + yi[i] * yi[i];
    }
    if (den == 0) {
        throw domain_error("tomita_residual_extended: zero vector");
    }
    out.residual = static_cast<double>(sqrt(num / den));
    return out;
}

} // namespace dsqft::extended

#endif
