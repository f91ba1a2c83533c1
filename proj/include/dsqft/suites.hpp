#ifndef DSQFT_SUITES_HPP
#define DSQFT_SUITES_HPP

// Check batteries run by the CLI and the acceptance binary, and report emission.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "dsqft/config.hpp"
#include "dsqft/extended.hpp"
#include "dsqft/fock.hpp"
#include "dsqft/geometry.hpp"
#include "dsqft/modloc.hpp"
#include "dsqft/oneparticle.hpp"
#include "dsqft/representation.hpp"
#include "dsqft/specfun.hpp"

namespace dsqft {

using ordered_json = nlohmann::ordered_json;

struct Check {
    std::string name;
    double metric = 0.0;
    double threshold = 0.0;
    bool upper = true; // pass iff metric <= threshold; otherwise metric >= threshold
    int K = 0;
    bool pass = false;
};

struct Table {
    std::string file;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct SuiteReport {
    std::string suite;
    double zeta = 0.0;
    double radius = 0.0;
    int K = 0;
    std::vector<Check> checks;
    ordered_json diagnostics = ordered_json::object();
    std::vector<Table> tables;
    double wall_seconds = 0.0; // never written into the report itself

    bool pass() const
    {
        for (const auto& c : checks) {
            if (!c.pass) {
                return false;
            }
        }
        return true;
    }

    const Check* find(const std::string& name) const
    {
        for (const auto& c : checks) {
            if (c.name == name) {
                return &c;
            }
        }
        return nullptr;
    }
};

namespace suites {

class Builder {
public:
    Builder(const SuiteConfig& cfg, std::string name) : cfg_(cfg)
    {
        rep_.suite = std::move(name);
        rep_.zeta = cfg.zeta;
        rep_.radius = cfg.radius;
        rep_.K = cfg.K;
    }

    void at_most(const std::string& check, double metric, double fallback, int K = 0)
    {
        add(check, metric, cfg_.threshold(rep_.suite, check, fallback, true), true, K);
    }

    void at_least(const std::string& check, double metric, double fallback, int K = 0)
    {
        add(check, metric, cfg_.threshold(rep_.suite, check, fallback, false), false, K);
    }

    ordered_json& diag() { return rep_.diagnostics; }
    void table(Table t) { rep_.tables.push_back(std::move(t)); }
    SuiteReport done() { return std::move(rep_); }

private:
    void add(const std::string& check, double metric, double threshold, bool upper, int K)
    {
        Check c{check, metric, threshold, upper, K > 0 ? K : cfg_.K, false};
        c.pass = upper ? (metric <= threshold) : (metric >= threshold); // NaN fails either way
        rep_.checks.push_back(c);
    }

    const SuiteConfig& cfg_;
    SuiteReport rep_;
};

inline std::uint64_t seed_for(const SuiteConfig& cfg, const std::string& suite)
{
    std::uint64_t h = config_hash(cfg);
    for (unsigned char ch : suite) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

/// Random vector with decaying coefficients on modes |k| <= kmax.
inline FourierVector random_smooth(Rng& rng, int K, int kmax, double decay = 2.0)
{
    FourierVector h(K);
    for (int k = -std::min(K, kmax); k <= std::min(K, kmax); ++k) {
        const double s = std::pow(1.0 + std::abs(k), -decay);
        h[k] = complex(rng.normal(), rng.normal()) * s;
    }
    return h;
}

/// Random real combination of a subspace basis, as a vector of the one-particle space.
inline FourierVector random_in(Rng& rng, const SpectralWeights& w, const RealSubspace& S)
{
    Eigen::VectorXd c(S.dim());
    for (int i = 0; i < S.dim(); ++i) {
        c[i] = rng.normal();
    }
    return from_real_coordinates(w, S.basis * c);
}

inline double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Spectral weights.
inline SuiteReport omega_suite(const SuiteConfig& cfg)
{
    Builder b(cfg, "omega");
    const auto p = make_params(cfg.zeta, cfg.radius);
    const SpectralWeights w(p, cfg.K);
    const int K = cfg.K;
    double min_w = std::numeric_limits<double>::infinity();
    double even = 0.0, mono = 0.0, product = 0.0;
    int convex_violations = 0;
    for (int k = -K; k <= K; ++k) {
        min_w = std::min(min_w, w[k]);
        even = std::max(even, std::abs(w[k] - w[-k]));
    }
    for (int k = 0; k < K; ++k) {
        mono = std::max(mono, w[k] - w[k + 1]);
        const double expected = (k * (k + 1.0) + cfg.zeta * cfg.zeta) / (cfg.radius * cfg.radius);
        product = std::max(product, relative(w[k] * w[k + 1], expected));
        if (k + 2 <= K && w[k + 2] - 2.0 * w[k + 1] + w[k] < 0.0) {
            ++convex_violations;
        }
    }
    const double asym = std::abs(cfg.radius * w[K] / K - 1.0);
    b.at_least("positivity", min_w, std::numeric_limits<double>::min());
    b.at_most("evenness", even, 0.0);
    b.at_most("monotonicity", mono, 0.0);
    b.at_most("asymptote", asym, 0.01);
    b.at_most("product_identity", product, 1e-12);
    b.diag()["series"] = to_string(p.series);
    b.diag()["omega_0"] = w[0];
    b.diag()["omega_K"] = w[K];
    b.diag()["convexity_violations"] = convex_violations;
    Table t{"omega.csv", {"k", "omega"}, {}};
    for (int k = -K; k <= K; ++k) {
        t.rows.push_back({static_cast<double>(k), w[k]});
    }
    b.table(std::move(t));
    return b.done();
}

// Two-point kernel against the spectral weights.
inline SuiteReport kernel_suite(const SuiteConfig& cfg)
{
    Builder b(cfg, "kernel");
    const int Kc = std::min(cfg.K, 32);
    const auto p = make_params(cfg.zeta, cfg.radius);
    const auto kc = kernel_fourier_check(p, Kc);
    b.at_most("max_deviation", kc.max_deviation, 1e-8, Kc);
    double spread = relative(kc.kappa, 2.0 / cfg.radius);
    ordered_json kappas = ordered_json::array();
    kappas.push_back({{"zeta", cfg.zeta}, {"kappa", kc.kappa}});
    for (double z : {0.3, 0.7, 1.5}) {
        const auto other = kernel_fourier_check(make_params(z, cfg.radius), Kc);
        spread = std::max(spread, relative(other.kappa, 2.0 / cfg.radius));
        kappas.push_back({{"zeta", z}, {"kappa", other.kappa}});
    }
    b.at_most("kappa_universal", spread, 1e-8, Kc);
    b.at_most("antipodal_value", relative(kernel_eval(p, std::numbers::pi), p.c_nu), 1e-12, Kc);
    b.diag()["kappa"] = kc.kappa;
    b.diag()["kappa_scan"] = kappas;
    Table t{"kernel.csv", {"k", "q_k", "deviation"}, {}};
    for (int k = 0; k <= Kc; ++k) {
        t.rows.push_back({static_cast<double>(k), kc.q[k], kc.deviation[k]});
    }
    b.table(std::move(t));
    return b.done();
}

// Multiplier estimates on the Sobolev space of order 1/2.
inline SuiteReport sobolev_suite(const SuiteConfig& cfg)
{
    Builder b(cfg, "sobolev");
    Rng rng(seed_for(cfg, "sobolev"));
    const SpectralWeights w(make_params(cfg.zeta, cfg.radius), cfg.K);
    const int K = cfg.K;
    constexpr int chi_modes = 8;
    double worst = 0.0;
    bool smooth = true;
    ordered_json samples = ordered_json::array();
    for (int n = 0; n < 20; ++n) {
        FourierVector chi(chi_modes);
        if (n == 0) {
            chi[1] = chi[-1] = 0.5; // cos
        } else {
            for (int k = 0; k <= chi_modes; ++k) {
                const double s = std::pow(1.0 + k, -6.0);
                const complex c = k == 0 ? complex(rng.normal(), 0.0) : complex(rng.normal(), rng.normal());
                chi[k] = c * s;
                chi[-k] = std::conj(chi[k]);
            }
        }
        const auto est = multiplier_norm_and_bound(w, chi);
        worst = std::max(worst, est.measured_norm / est.bound);
        smooth = smooth && est.smooth;
        samples.push_back({{"measured", est.measured_norm}, {"bound", est.bound}});
    }
    b.at_most("norm_over_bound", worst, 1.0);
    b.at_most("non_smooth_samples", smooth ? 0.0 : 1.0, 0.0);

    FourierVector one(0);
    one[0] = 1.0;
    b.at_most("unit_multiplier", std::abs(multiplier_norm_and_bound(w, one).measured_norm - 1.0), 1e-12);

    FourierVector chi(3);
    chi[0] = 1.0;
    chi[2] = chi[-2] = 0.25;
    const double n1 = multiplier_norm_and_bound(w, chi).measured_norm;
    const double n3 = multiplier_norm_and_bound(w, 3.0 * chi).measured_norm;
    b.at_most("homogeneity", relative(n3, 3.0 * n1), 1e-12);

    double parseval = 0.0, omega_id = 0.0, round_trip = 0.0;
    std::vector<FourierVector> vs;
    for (int n = 0; n < 8; ++n) {
        const FourierVector h = random_smooth(rng, K, K, 1.0);
        vs.push_back(h);
        const Eigen::VectorXcd g = grid_values(h, cfg.radius);
        const double lhs = h.coeff.squaredNorm();
        const double rhs = 2.0 * std::numbers::pi * cfg.radius / w.size() * g.squaredNorm();
        parseval = std::max(parseval, relative(rhs, lhs));
        omega_id = std::max(omega_id, relative(norm_squared(w, apply_omega(w, h)), 0.5 * sobolev_half_norm(w, h)));
        Eigen::VectorXd a(w.size()), c(w.size());
        for (int j = 0; j < w.size(); ++j) {
            a[j] = rng.normal();
            c[j] = rng.normal();
        }
        const CauchyData d = unpack_cauchy(w, pack_cauchy(w, a, c));
        round_trip = std::max(round_trip, std::sqrt(((d.a - a).squaredNorm() + (d.c - c).squaredNorm()) /
                                                    (a.squaredNorm() + c.squaredNorm())));
    }
    Eigen::MatrixXcd G(vs.size(), vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i) {
        for (std::size_t j = 0; j < vs.size(); ++j) {
            G(i, j) = inner_product(w, vs[i], vs[j]);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
    const double gram_neg = std::max(0.0, -es.eigenvalues().minCoeff() / es.eigenvalues().maxCoeff());
    b.at_most("parseval", parseval, 1e-12);
    b.at_most("omega_identity", omega_id, 1e-12);
    b.at_most("cauchy_round_trip", round_trip, 1e-12);
    b.at_most("gram_negativity", gram_neg, 1e-12);
    b.diag()["multipliers"] = samples;
    return b.done();
}

// The so(1,2) representation.
inline SuiteReport rep_suite(const SuiteConfig& cfg)
{
    Builder b(cfg, "rep");
    Rng rng(seed_for(cfg, "rep"));
    const int K = std::max(cfg.K, 16);
    const auto p = make_params(cfg.zeta, cfg.radius);
    const SpectralWeights w(p, K);
    const auto sd = structure_constant_defect(w);
    b.at_most("so12_defect", sd.max_defect, 1e-10, K);
    std::vector<double> bad(K + 1);
    for (int k = 0; k <= K; ++k) {
        bad[k] = (k + 0.1) / cfg.radius;
    }
    const auto sd_bad = structure_constant_defect(SpectralWeights::from_profile(p, K, bad));
    b.at_least("corrupted_weights_control", sd_bad.max_defect, 1e-3, K);

    const OperatorH L = boost_generator(w);
    const int N = w.size();
    const Eigen::MatrixXd Lr = boost_generator_real(w);
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(N, N);
    for (int k = -K; k <= K; ++k) {
        P(k + K, k + K) = (k % 2 == 0) ? 1.0 : -1.0;
    }
    b.at_most("reflection_anticommutes", (P * Lr * P + Lr).cwiseAbs().maxCoeff(), 1e-13, K);
    b.at_most("rotated_by_pi",
              (boost_generator(w, std::numbers::pi).M + L.M).cwiseAbs().maxCoeff() / Lr.cwiseAbs().maxCoeff(), 1e-13,
              K);

    double unitarity = 0.0, group_law = 0.0, theta_group = 0.0, theta_sq = 0.0, anti_unitary = 0.0;
    for (int n = 0; n < 4; ++n) {
        const FourierVector h = random_smooth(rng, K, K / 2);
        const FourierVector g = random_smooth(rng, K, K / 2);
        const Eigen::VectorXcd y = to_coordinates(w, h);
        const double s = rng.uniform(-1.0, 1.0), t = rng.uniform(-1.0, 1.0);
        const Eigen::VectorXcd ut = boost_apply_coordinates(L, t, y, &w);
        unitarity = std::max(unitarity, std::abs(ut.norm() / y.norm() - 1.0));
        const Eigen::VectorXcd ust = boost_apply_coordinates(L, s, ut, &w);
        group_law = std::max(group_law, (ust - boost_apply_coordinates(L, s + t, y, &w)).norm() / y.norm());
        const Eigen::VectorXcd th =
            theta_coordinates(K, boost_apply_coordinates(L, t, theta_coordinates(K, y), &w));
        theta_group = std::max(theta_group, (th - ut).norm() / y.norm());
        theta_sq = std::max(theta_sq, (theta_apply(theta_apply(h)) - h).coeff.norm() / h.coeff.norm());
        const complex ip = inner_product(w, h, g);
        anti_unitary = std::max(anti_unitary, std::abs(inner_product(w, theta_apply(h), theta_apply(g)) - std::conj(ip)) /
                                                  std::abs(ip));
    }
    b.at_most("unitarity", unitarity, 1e-11, K);
    b.at_most("group_law", group_law, 1e-11, K);
    b.at_most("reflection_group_relation", theta_group, 1e-11, K);
    b.at_most("reflection_involution", theta_sq, 1e-14, K);
    b.at_most("reflection_antiunitary", anti_unitary, 1e-12, K);

    // l_1 entries from grid multiplication by cos on interior modes.
    double grid_entries = 0.0;
    Eigen::VectorXcd cosv(N);
    for (int j = 0; j < N; ++j) {
        cosv[j] = std::cos(grid_point(j, N));
    }
    for (int k = -K + 1; k < K; ++k) {
        const FourierVector mult = from_grid_values(cosv.cwiseProduct(grid_values(FourierVector::basis(K, k), cfg.radius)),
                                                    cfg.radius);
        const double scale = std::sqrt(2.0 * w[k]);
        for (int l : {k - 1, k + 1}) {
            const double entry = cfg.radius * w[l] * mult[l].real() * scale / std::sqrt(2.0 * w[l]);
            grid_entries = std::max(grid_entries, relative(entry, Lr(l + K, k + K)));
        }
    }
    b.at_most("generator_entries", grid_entries, 1e-12, K);

    const auto spec = SpectrumCache::instance().get(w);
    Table t{"spectrum.csv", {"n", "eigenvalue"}, {}};
    for (int n = 0; n < N; ++n) {
        t.rows.push_back({static_cast<double>(n), spec->eigenvalues[n]});
    }
    b.table(std::move(t));
    b.diag()["defects"] = {{"rotation_boost", sd.rotation_boost},
                           {"rotation_boost2", sd.rotation_boost2},
                           {"boost_boost", sd.boost_boost}};
    b.diag()["corrupted_defect"] = sd_bad.max_defect;
    b.diag()["spectral_radius"] = spec->eigenvalues.cwiseAbs().maxCoeff();
    return b.done();
}

inline FourierVector wedge_bump(const SpectralWeights& w, double center) { return bump_vector(w, center, 1.0); }

// Modular objects of the wedge in windowed weak form.
inline SuiteReport modular_suite(const SuiteConfig& cfg)
{
    Builder b(cfg, "modular");
    const auto p = make_params(cfg.zeta, cfg.radius);
    const SpectralWeights w(p, cfg.K);
    const auto main = tomita_residual_details(w, wedge_bump(w, 0.0), cfg.window);
    b.at_most("tomita_residual", main.residual, 1e-3);

    const int Ks[3] = {std::max(8, cfg.K / 2), cfg.K, 2 * cfg.K};
    double res[3];
    Table t{"modular_convergence.csv", {"K", "residual"}, {}};
    for (int i = 0; i < 3; ++i) {
        const SpectralWeights wi(p, Ks[i]);
        res[i] = i == 1 ? main.residual : tomita_residual(wi, wedge_bump(wi, 0.0), cfg.window);
        t.rows.push_back({static_cast<double>(Ks[i]), res[i]});
    }
    b.at_most("improvement_" + std::to_string(Ks[0]) + "_" + std::to_string(Ks[1]), res[1] / res[0], 1.0, Ks[1]);
    b.at_most("improvement_" + std::to_string(Ks[1]) + "_" + std::to_string(Ks[2]), res[2] / res[1], 1.0, Ks[2]);
    b.table(std::move(t));

    const double wrong = tomita_residual(w, wedge_bump(w, std::numbers::pi), cfg.window);
    b.at_least("wrong_wedge_control", wrong, 0.1);
    b.diag()["window"] = cfg.window;
    b.diag()["window_modes"] = main.window_modes;
    b.diag()["amplification"] = main.amplification;
    if (cfg.precision == Precision::extended) {
        const int Ke = std::min(cfg.K, extended::max_extended_K);
        const SpectralWeights we(p, Ke);
        const auto ext = extended::tomita_residual_extended(we, wedge_bump(we, 0.0));
        b.diag()["extended"] = {{"K", Ke}, {"residual", ext.residual}, {"max_weight_error", ext.max_weight_error}};
    }
    return b.done();
}

// Finite propagation speed.
inline SuiteReport fsl_suite(const SuiteConfig& cfg)
{
    Builder b(cfg, "fsl");
    const SpectralWeights w(make_params(cfg.zeta, cfg.radius), cfg.K);
    const auto Ip = geometry::half_circle_plus();
    const double half = 0.5 * std::numbers::pi;
    const FourierVector hp = bump_vector(w, 0.0, 0.999 * half);
    double lp = 0.0;
    for (double t : {-0.5, -0.25, -0.1, 0.1, 0.25, 0.5}) {
        lp = std::max(lp, fsl_leakage(w, Ip, hp, t));
    }
    b.at_most("wedge_leakage", lp, 1e-6);

    const geometry::Interval sub(-0.25 * std::numbers::pi, 0.25 * std::numbers::pi);
    const FourierVector hs = bump_vector(w, 0.0, 0.999 * 0.25 * std::numbers::pi, 1.0, 0.5);
    double ls = 0.0, control = 0.0;
    ordered_json arcs = ordered_json::array();
    for (double t : {-0.3, -0.1, 0.1, 0.3}) {
        const auto r = fsl_leakage_details(w, sub, hs, t);
        ls = std::max(ls, r.leakage);
        control = std::max(control, mass_outside(r.evolved, sub));
        arcs.push_back({{"t", t}, {"lo", r.propagated.lo()}, {"hi", r.propagated.hi()}, {"leakage", r.leakage}});
    }
    b.at_most("subinterval_leakage", ls, 1e-5);
    b.at_least("fixed_interval_control", control, 1e-3);
    b.at_most("zero_time", fsl_leakage(w, sub, hs, 0.0), 1e-14);

    // I subset I' implies I_t subset I'_t.
    int isotony = 0;
    const geometry::Interval inner(-0.15 * std::numbers::pi, 0.1 * std::numbers::pi);
    for (double t : {-0.3, 0.3}) {
        const auto g = geometry::boost(t);
        const auto a = geometry::dod_interval(g, inner, 4096, 60, cfg.radius);
        const auto c = geometry::dod_interval(g, sub, 4096, 60, cfg.radius);
        isotony += a.subset_of(c, 1e-9) ? 0 : 1;
    }
    b.at_most("propagation_isotony", isotony, 0.0);
    b.diag()["subinterval_arcs"] = arcs;
    return b.done();
}

inline double symplectic_block(const RealSubspace& A, const RealSubspace& B)
{
    if (A.dim() == 0 || B.dim() == 0) {
        return 0.0;
    }
    const Eigen::MatrixXd form = A.basis.transpose() * A.sigma() * B.basis;
    return form.cwiseAbs().maxCoeff();
}

// Locality: symplectic orthogonality of disjoint arcs and wedge duality.
inline SuiteReport micro_suite(const SuiteConfig& cfg)
{
    Builder b(cfg, "micro");
    Rng rng(seed_for(cfg, "micro"));
    const SpectralWeights w(make_params(cfg.zeta, cfg.radius), cfg.K);
    const double spacing = geometry::two_pi / w.size();
    double worst = 0.0, worst_block = 0.0, control = 0.0;
    for (int n = 0; n < 8; ++n) {
        const double lo = rng.uniform(0.0, geometry::two_pi);
        const double l1 = rng.uniform(4.0 * spacing, 2.0);
        const double gap = spacing * (2.0 + rng.uniform());
        const double l2 = rng.uniform(4.0 * spacing, geometry::two_pi - l1 - 2.0 * gap);
        const auto I1 = geometry::Interval::from_lo_length(lo, l1);
        const auto I2 = geometry::Interval::from_lo_length(lo + l1 + gap, l2);
        const RealSubspace S1 = subspace_for_interval(w, I1), S2 = subspace_for_interval(w, I2);
        const FourierVector h1 = random_in(rng, w, S1), h2 = random_in(rng, w, S2);
        const double scale = std::sqrt(norm_squared(w, h1) * norm_squared(w, h2));
        worst = std::max(worst, microcausality_value(w, h1, I1, h2, I2) / scale);
        worst_block = std::max(worst_block, symplectic_block(S1, S2));
        // Overlapping arcs: shift I2 back onto I1.
        const auto I3 = geometry::Interval::from_lo_length(lo + 0.5 * l1, l2);
        control = std::max(control, symplectic_block(S1, subspace_for_interval(w, I3)));
    }
    b.at_most("disjoint_pairs", worst, 1e-12);
    b.at_most("disjoint_blocks", worst_block, 1e-12);
    b.at_least("overlap_control", control, 1e-3);

    const auto d = duality_check(w, geometry::half_circle_plus());
    b.at_most("wedge_duality_gap", d.gap, 1e-10);
    b.at_most("boundary_dims_excess", std::abs(d.boundary_dims - 4), 0.0);
    b.at_most("opposite_in_complement", d.opposite_gap, 1e-10);
    b.at_most("double_complement", d.double_complement_gap, 1e-10);
    b.at_most("complement_of_full", symplectic_complement(subspace_full(w)).dim(), 0.0);
    b.diag()["wedge_duality"] = {{"subspace_dim", d.subspace_dim},
                                 {"complement_dim", d.complement_dim},
                                 {"opposite_dim", d.opposite_dim},
                                 {"boundary_dims", d.boundary_dims}};
    const geometry::Interval arc(-0.3 * std::numbers::pi, 0.2 * std::numbers::pi);
    const auto da = duality_check(w, arc);
    b.diag()["arc_duality"] = {{"gap", da.gap}, {"boundary_dims", da.boundary_dims}};
    b.diag()["snap_distance"] = geometry::snap_to_grid(geometry::half_circle_plus(), w.size()).snap_distance;
    return b.done();
}

// Additivity, covariance and isotony of the arc subspaces.
inline SuiteReport additivity_suite(const SuiteConfig& cfg)
{
    Builder b(cfg, "additivity");
    const SpectralWeights w(make_params(cfg.zeta, cfg.radius), cfg.K);
    const int N = w.size();
    const auto big = geometry::snap_to_grid(geometry::half_circle_plus(), N);
    // Three interior grid points at the left end of I_+.
    const geometry::Interval small(geometry::grid_angle(big.lo_index, N), geometry::grid_angle(big.lo_index + 4, N));
    b.at_most("generated_gap", additivity_check(w, small, 1.0), 1e-12);
    b.at_least("half_coverage_control", additivity_check(w, small, 0.5), 0.1);

    const geometry::Interval arc(-0.3 * std::numbers::pi, 0.1 * std::numbers::pi);
    double cov = 0.0;
    for (long s : {1L, 5L, -7L}) {
        const double alpha = geometry::grid_angle(s, N);
        cov = std::max(cov, two_sided_gap(rotate_subspace(subspace_for_interval(w, arc), alpha),
                                          subspace_for_interval(w, arc.shifted(alpha))));
    }
    b.at_most("rotation_covariance", cov, 1e-12);
    const geometry::Interval inner(-0.2 * std::numbers::pi, 0.05 * std::numbers::pi);
    b.at_most("isotony", containment_gap(subspace_for_interval(w, inner), subspace_for_interval(w, arc)), 1e-12);
    b.diag()["small_arc_points"] = 3;
    return b.done();
}

// Cyclicity and separation proxies.
inline SuiteReport standard_suite(const SuiteConfig& cfg)
{
    Builder b(cfg, "standard");
    const auto p = make_params(cfg.zeta, cfg.radius);
    const int Ks[3] = {std::max(8, cfg.K / 4), std::max(8, cfg.K / 2), cfg.K};
    Table t{"standard_convergence.csv", {"K", "intersection_dim", "span_codim", "relative_codim", "min_sine"}, {}};
    double prev = 0.0;
    for (int i = 0; i < 3; ++i) {
        if (i > 0 && Ks[i] == Ks[i - 1]) {
            continue;
        }
        const SpectralWeights w(p, Ks[i]);
        const RealSubspace S = subspace_for_interval(w, geometry::half_circle_plus());
        const auto st = standardness_check(S);
        const double sine = min_principal_sine(S);
        t.rows.push_back({static_cast<double>(Ks[i]), static_cast<double>(st.intersection_dim),
                          static_cast<double>(st.span_codim), st.relative_codim, sine});
        b.at_most("intersection_dim_K" + std::to_string(Ks[i]), st.intersection_dim, 0.0, Ks[i]);
        if (i > 0) {
            b.at_most("codim_ratio_K" + std::to_string(Ks[i]), st.relative_codim / prev, 0.99, Ks[i]);
        }
        prev = st.relative_codim;
    }
    b.table(std::move(t));

    const SpectralWeights w(p, cfg.K);
    const auto full = standardness_check(subspace_full(w));
    b.at_most("full_space_intersection_excess", std::abs(full.intersection_dim - 2 * w.size()), 0.0);
    b.at_most("full_space_codim", full.span_codim, 0.0);
    // Real-axis subspace: all coordinates real, a totally real half of the space.
    Eigen::MatrixXd real_axis = Eigen::MatrixXd::Zero(2 * w.size(), w.size());
    real_axis.topRows(w.size()).setIdentity();
    const auto ra = standardness_check(span_of(w.K(), real_axis));
    b.at_most("real_axis_intersection", ra.intersection_dim, 0.0);
    b.at_most("real_axis_codim", ra.span_codim, 0.0);
    const geometry::Interval arc(-0.25 * std::numbers::pi, 0.25 * std::numbers::pi);
    const RealSubspace Sa = subspace_for_interval(w, arc);
    const auto sa = standardness_check(Sa);
    b.diag()["proper_arc"] = {{"intersection_dim", sa.intersection_dim},
                              {"relative_codim", sa.relative_codim},
                              {"min_sine", min_principal_sine(Sa)}};
    return b.done();
}

inline Eigen::VectorXcd random_modes(Rng& rng, int modes, double scale)
{
    Eigen::VectorXcd y(modes);
    for (int m = 0; m < modes; ++m) {
        y[m] = scale * complex(rng.normal(), rng.normal());
    }
    return y;
}

inline FourierVector vector_from_modes(const SpectralWeights& w, int M, const Eigen::VectorXcd& y)
{
    Eigen::VectorXcd full = Eigen::VectorXcd::Zero(w.size());
    full.segment(w.K() - M, 2 * M + 1) = y;
    return from_coordinates(w, full);
}

// Truncated Fock space.
inline SuiteReport fock_suite(const SuiteConfig& cfg)
{
    Builder b(cfg, "fock");
    Rng rng(seed_for(cfg, "fock"));
    const int M = cfg.M;
    const SpectralWeights w(make_params(cfg.zeta, cfg.radius), std::max(cfg.K, M));
    const FockConfig fc(M, cfg.N_max);
    const int D = fc.dim();
    const Eigen::MatrixXcd Id = Eigen::MatrixXcd::Identity(D, D);
    const auto safe1 = safe_block(fc, 1);

    double ccr = 0.0;
    for (int m = 0; m < fc.modes(); ++m) {
        const Eigen::MatrixXcd a = Eigen::MatrixXcd(annihilator(fc, m));
        for (int n = 0; n < fc.modes(); ++n) {
            const Eigen::MatrixXcd ad = Eigen::MatrixXcd(creator(fc, n));
            const Eigen::MatrixXcd c = a * ad - ad * a - (m == n ? 1.0 : 0.0) * Id;
            ccr = std::max(ccr, max_on_columns(c, safe1));
        }
    }
    const Polynomial P(cfg.polynomial);
    double field_ccr = 0.0, two_point = 0.0, one_particle = 0.0;
    for (int n = 0; n < 4; ++n) {
        const Eigen::VectorXcd yh = random_modes(rng, fc.modes(), 0.3), yg = random_modes(rng, fc.modes(), 0.3);
        const FourierVector h = vector_from_modes(w, M, yh), g = vector_from_modes(w, M, yg);
        const Eigen::MatrixXcd ph = field_operator(fc, w, h).dense(), pg = field_operator(fc, w, g).dense();
        const complex ip = inner_product(w, h, g);
        const Eigen::MatrixXcd c = ph * pg - pg * ph - complex(0.0, 2.0 * ip.imag()) * Id;
        field_ccr = std::max(field_ccr, max_on_columns(c, safe1));
        Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(D);
        vac[fc.vacuum()] = 1.0;
        two_point = std::max(two_point, std::abs(vac.dot(ph * pg * vac) - ip));
        if (cfg.N_max >= 1) {
            const Eigen::VectorXcd one = ph * vac;
            double d = 0.0;
            for (int m = 0; m < fc.modes(); ++m) {
                std::vector<std::uint8_t> occ(fc.modes(), 0);
                occ[m] = 1;
                d = std::max(d, std::abs(one[fc.index_of(occ)] - yh[m]));
            }
            one_particle = std::max(one_particle, std::max(d, std::abs(one.squaredNorm() - yh.squaredNorm())));
        }
    }
    b.at_most("ccr_block", std::max(ccr, field_ccr), 1e-12);
    b.at_most("two_point", two_point, 1e-12);
    b.at_most("one_particle_vector", one_particle, 1e-12);

    {
        const FockConfig big(M, std::max(cfg.N_max, 12));
        double dev = 0.0;
        for (int n = 0; n < 3; ++n) {
            const Eigen::VectorXcd yf = random_modes(rng, big.modes(), 0.15), yg = random_modes(rng, big.modes(), 0.15);
            dev = std::max(dev, coherent_overlap_check(big, w, vector_from_modes(w, M, yf), vector_from_modes(w, M, yg)));
        }
        b.at_most("coherent_overlap", dev, 1e-12);
    }

    {
        Eigen::MatrixXcd A(fc.modes(), fc.modes()), R(fc.modes(), fc.modes());
        for (int i = 0; i < fc.modes(); ++i) {
            A.col(i) = random_modes(rng, fc.modes(), 0.2);
            R.col(i) = random_modes(rng, fc.modes(), 1.0);
        }
        const Eigen::VectorXcd y = random_modes(rng, fc.modes(), 0.3);
        const Eigen::VectorXcd lhs = second_quantize(fc, A).matrix * coherent_vector(fc, y);
        b.at_most("multiplicative_functor", (lhs - coherent_vector(fc, A * y)).cwiseAbs().maxCoeff(), 1e-12);
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(R);
        const Eigen::MatrixXcd U = qr.householderQ();
        const Eigen::MatrixXcd G = second_quantize(fc, U).dense();
        b.at_most("unitary_functor", (G.adjoint() * G - Id).cwiseAbs().maxCoeff(), 1e-12);
    }

    {
        const FourierVector h = vector_from_modes(w, M, random_modes(rng, fc.modes(), 0.3));
        double diff = 0.0, vac_exp = 0.0;
        for (int n = 0; n <= std::min(cfg.N_max, max_normal_order_degree); ++n) {
            const Eigen::MatrixXcd A = normal_ordered_power(fc, w, h, n).dense();
            const Eigen::MatrixXcd B = normal_ordered_power_hermite(fc, w, h, n).dense();
            diff = std::max(diff, max_on_columns(A - B, safe_block(fc, n)));
            if (n > 0) {
                vac_exp = std::max(vac_exp, std::abs(A(fc.vacuum(), fc.vacuum())));
            }
        }
        b.at_most("normal_order_recursion", diff, 1e-12);
        b.at_most("normal_order_vacuum", vac_exp, 1e-12);
    }

    {
        const FockOperator Vc = interaction_generator(fc, w, Polynomial({1.0}));
        b.at_most("constant_interaction", Vc.matrix.norm() == 0.0 ? 0.0 : Vc.dense().cwiseAbs().maxCoeff(), 1e-12);
        const Eigen::MatrixXcd V2 = interaction_generator(fc, w, Polynomial::monomial(2)).dense();
        b.at_most("quadratic_vacuum", std::abs(V2(fc.vacuum(), fc.vacuum())), 1e-12);
    }

    const FockOperator L = full_generator(fc, w, P);
    b.at_most("generator_hermitian", hermiticity_defect(L), 1e-12);
    const int Nq = fc.modes();
    b.at_most("rotation_covariance",
              rotation_covariance_defect(fc, w, P, geometry::two_pi / Nq, Nq) / std::max(1.0, L.dense().cwiseAbs().maxCoeff()),
              1e-12);
    {
        const int alias_free = P.degree() * M + 2;
        const Eigen::MatrixXcd V1 = interaction_generator(fc, w, P, {alias_free, 0.0}).dense();
        const Eigen::MatrixXcd V2 = interaction_generator(fc, w, P, {2 * alias_free, 0.0}).dense();
        const Eigen::MatrixXcd V0 = interaction_generator(fc, w, P).dense();
        const double scale = std::max(1.0, V2.cwiseAbs().maxCoeff());
        b.at_most("quadrature_alias_free", (V1 - V2).cwiseAbs().maxCoeff() / scale, 1e-10);
        b.diag()["alias_free_nodes"] = alias_free;
        b.diag()["default_nodes_aliasing"] = (V0 - V2).cwiseAbs().maxCoeff() / scale;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(L.dense());
    Table t{"fock_spectrum.csv", {"n", "eigenvalue"}, {}};
    for (int n = 0; n < std::min(D, 32); ++n) {
        t.rows.push_back({static_cast<double>(n), es.eigenvalues()[n]});
    }
    b.table(std::move(t));
    b.diag()["fock_dim"] = D;
    b.diag()["polynomial"] = P.coefficients();
    return b.done();
}

using SuiteFn = std::function<SuiteReport(const SuiteConfig&)>;

inline SuiteFn lookup(const std::string& name)
{
    if (name == "omega") return omega_suite;
    if (name == "kernel") return kernel_suite;
    if (name == "rep") return rep_suite;
    if (name == "modular") return modular_suite;
    if (name == "fsl") return fsl_suite;
    if (name == "micro") return micro_suite;
    if (name == "additivity") return additivity_suite;
    if (name == "standard") return standard_suite;
    if (name == "sobolev") return sobolev_suite;
    if (name == "fock") return fock_suite;
    throw config_error("suites", "unknown suite '" + name + "'");
}

} // namespace suites

/// Checks the parts of the config that need the numerical modules.
inline void validate_numerics(const SuiteConfig& cfg)
{
    try {
        (void)Polynomial(cfg.polynomial);
    } catch (const domain_error& e) {
        throw config_error("polynomial", e.what());
    }
    try {
        (void)FockConfig(cfg.M, cfg.N_max);
    } catch (const domain_error& e) {
        throw config_error("N_max", e.what());
    }
}

/// Runs the configured suites, at most cfg.workers at a time, and returns them in canonical order.
inline std::vector<SuiteReport> run_suites(const SuiteConfig& cfg)
{
    validate(cfg);
    validate_numerics(cfg);
    std::vector<std::string> names;
    for (const auto& n : suite_names()) {
        if (std::find(cfg.suites.begin(), cfg.suites.end(), n) != cfg.suites.end()) {
            names.push_back(n);
        }
    }
    std::vector<SuiteReport> out(names.size());
    std::vector<std::exception_ptr> errors(names.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < names.size(); i = next++) {
            const auto start = std::chrono::steady_clock::now();
            try {
                out[i] = suites::lookup(names[i])(cfg);
            } catch (...) {
                errors[i] = std::current_exception();
            }
            out[i].wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        }
    };
    std::vector<std::future<void>> jobs;
    const int n_workers = std::min<int>(cfg.workers, static_cast<int>(names.size()));
    for (int i = 0; i < n_workers; ++i) {
        jobs.push_back(std::async(std::launch::async, worker));
    }
    for (auto& j : jobs) {
        j.get();
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

inline bool all_pass(const std::vector<SuiteReport>& reports)
{
    return std::all_of(reports.begin(), reports.end(), [](const SuiteReport& r) { return r.pass(); });
}

inline ordered_json report_json(const SuiteReport& r, const SuiteConfig& cfg)
{
    ordered_json j;
    j["suite"] = r.suite;
    j["version"] = version;
    j["config_hash"] = hash_hex(config_hash(cfg));
    j["params"] = {{"zeta", r.zeta}, {"radius", r.radius}};
    j["K"] = r.K;
    ordered_json checks = ordered_json::array();
    for (const auto& c : r.checks) {
        ordered_json e;
        e["check"] = c.name;
        e["params"] = {{"zeta", r.zeta}, {"radius", r.radius}};
        e["K"] = c.K;
        e["metric"] = c.metric;
        e["threshold"] = c.threshold;
        e["sense"] = c.upper ? "max" : "min";
        e["pass"] = c.pass;
        checks.push_back(e);
    }
    j["checks"] = checks;
    j["diagnostics"] = r.diagnostics;
    j["pass"] = r.pass();
    return j;
}

inline ordered_json summary_json(const std::vector<SuiteReport>& reports, const SuiteConfig& cfg)
{
    ordered_json j;
    j["version"] = version;
    j["config_hash"] = hash_hex(config_hash(cfg));
    j["config"] = ordered_json::parse(cfg.hashed_json().dump());
    ordered_json list = ordered_json::array();
    for (const auto& r : reports) {
        int failed = 0;
        for (const auto& c : r.checks) {
            failed += c.pass ? 0 : 1;
        }
        list.push_back({{"suite", r.suite}, {"checks", r.checks.size()}, {"failed", failed}, {"pass", r.pass()}});
    }
    j["suites"] = list;
    j["pass"] = all_pass(reports);
    return j;
}

inline std::string format_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_table(std::ostream& os, const Table& t)
{
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        os << (c ? "," : "") << t.columns[c];
    }
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            os << (c ? "," : "") << format_number(row[c]);
        }
        os << '\n';
    }
}

/// Writes <suite>.json, summary.json, the CSV tables and timing.json into dir.
inline std::vector<std::string> emit_report(const std::vector<SuiteReport>& reports, const SuiteConfig& cfg,
                                            const std::string& dir)
{
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::vector<std::string> written;
    auto write = [&](const std::string& name, const std::string& text) {
        const fs::path path = fs::path(dir) / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw domain_error("emit_report: cannot write " + path.string());
        }
        out << text;
        written.push_back(path.string());
    };
    ordered_json timing = ordered_json::object();
    for (const auto& r : reports) {
        write(r.suite + ".json", report_json(r, cfg).dump(2) + "\n");
        for (const auto& t : r.tables) {
            std::ostringstream os;
            write_table(os, t);
            write(t.file, os.str());
        }
        timing[r.suite] = r.wall_seconds;
    }
    write("summary.json", summary_json(reports, cfg).dump(2) + "\n");
    write("timing.json", timing.dump(2) + "\n");
    return written;
}

} // namespace dsqft

#endif
