#pragma once

// Brute-force reference for the interaction matrix: every word of four ladder operators
// is expanded explicitly on occupation vectors, creators moved to the left.

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
using Occ = std::vector<int>;

struct Ladder {
    bool create;
    int mode;
    cplx coeff;
};

// Applies a word (rightmost letter first) to |occ>, returning the amplitude and the result.
inline bool apply_word(const std::vector<Ladder>& word, Occ& occ, cplx& amp)
{
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        int& n = occ[it->mode];
        if (it->create) {
            n += 1;
            amp *= it->coeff * std::sqrt(static_cast<double>(n));
        } else {
            if (n == 0) {
                return false;
            }
            amp *= it->coeff * std::sqrt(static_cast<double>(n));
            n -= 1;
        }
    }
    return true;
}

/// Occupation vectors over `modes` modes with total <= n_max, in the enumeration order
/// mode 0 outermost, occupation increasing.
inline std::vector<Occ> states(int modes, int n_max)
{
    std::vector<Occ> out;
    Occ occ(modes, 0);
    auto rec = [&](auto&& self, int m, int budget) -> void {
        if (m == modes) {
            out.push_back(occ);
            return;
        }
        for (int n = 0; n <= budget; ++n) {
            occ[m] = n;
            self(self, m + 1, budget - n);
        }
        occ[m] = 0;
    };
    rec(rec, 0, n_max);
    return out;
}

/// sum_j (2 pi / Nq) r cos(psi_j) :phi_j^4: where phi_j has coordinates y_k = e^{-ik psi_j} / sqrt(2 pi r 2 w_k).
/// weights[k + M] = w_k for |k| <= M.
inline Eigen::MatrixXcd quartic_interaction(int M, int n_max, double r, const std::vector<double>& weights, int Nq)
{
    const int modes = 2 * M + 1;
    const auto basis = states(modes, n_max);
    std::map<Occ, int> index;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        index[basis[i]] = static_cast<int>(i);
    }
    const int D = static_cast<int>(basis.size());
    Eigen::MatrixXcd V = Eigen::MatrixXcd::Zero(D, D);
    for (int j = 0; j < Nq; ++j) {
        const double psi = 2.0 * std::numbers::pi * j / Nq;
        const double weight = 2.0 * std::numbers::pi / Nq * r * std::cos(psi);
        std::vector<cplx> y(modes);
        for (int k = -M; k <= M; ++k) {
            y[k + M] = std::polar(1.0, -k * psi) / std::sqrt(2.0 * std::numbers::pi * r * 2.0 * weights[k + M]);
        }
        // phi = sum_m conj(y_m) a_m + y_m a*_m; 2 * modes letters.
        std::vector<Ladder> letters;
        for (int m = 0; m < modes; ++m) {
            letters.push_back({false, m, std::conj(y[m])});
            letters.push_back({true, m, y[m]});
        }
        const int L = static_cast<int>(letters.size());
        for (int a = 0; a < L; ++a)
            for (int b = 0; b < L; ++b)
                for (int c = 0; c < L; ++c)
                    for (int d = 0; d < L; ++d) {
                        std::vector<Ladder> word;
                        for (int idx : {a, b, c, d}) {
                            if (letters[idx].create) {
                                word.push_back(letters[idx]);
                            }
                        }
                        for (int idx : {a, b, c, d}) {
                            if (!letters[idx].create) {
                                word.push_back(letters[idx]);
                            }
                        }
                        for (int col = 0; col < D; ++col) {
                            Occ occ = basis[col];
                            cplx amp = weight;
                            if (!apply_word(word, occ, amp)) {
                                continue;
                            }
                            const auto it = index.find(occ);
                            if (it != index.end()) {
                                V(it->second, col) += amp;
                            }
                        }
                    }
    }
    return V;
}

} // namespace oracle
