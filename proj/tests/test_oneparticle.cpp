#include <catch_amalgamated.hpp>

#include <sstream>

#include "dsqft/oneparticle.hpp"

using namespace dsqft;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("spectral weights against reference values", "[oneparticle]")
{
    struct Row {
        double zeta, r;
        int k;
        double value;
    };
    // tests/oracles/gen_reference.py
    const Row rows[] = {
        {1.0, 1.0, 0, 0.73946282426704895937},   {1.0, 1.0, 1, 1.3523330276828911581},
        {1.0, 1.0, 7, 7.0703863258755624567},    {1.0, 1.0, 100, 100.00499962509370527},
        {1.0, 1.0, 1000, 1000.0004999996250009}, {0.3, 1.0, 0, 0.08700240868988695759},
        {0.3, 1.0, 5, 5.0088251966541806348},    {0.5, 1.0, 0, 0.22847329052223181269},
        {2.0, 0.5, 3, 7.1721292595654190802},    {0.1, 2.0, 12, 6.0002076161742171949},
    };
    for (const auto& row : rows) {
        INFO("zeta " << row.zeta << " r " << row.r << " k " << row.k);
        REQUIRE_THAT(omega_coeff(make_params(row.zeta, row.r), row.k), WithinRel(row.value, 1e-13));
        REQUIRE(omega_coeff(make_params(row.zeta, row.r), -row.k) == omega_coeff(make_params(row.zeta, row.r), row.k));
    }
}

TEST_CASE("spectral weights: product identity and growth", "[oneparticle][property]")
{
    for (double zeta : {0.1, 0.3, 0.49, 0.51, 1.0, 2.0, 5.0}) {
        for (double r : {0.5, 1.0, 2.0}) {
            const SpectralWeights w(make_params(zeta, r), 256);
            for (int k = 0; k < 256; ++k) {
                REQUIRE(w[k] > 0.0);
                REQUIRE(w[k + 1] >= w[k]);
                REQUIRE_THAT(w[k] * w[k + 1], WithinRel((k * (k + 1.0) + zeta * zeta) / (r * r), 1e-12));
            }
            REQUIRE_THAT(r * w[256] / 256.0, WithinAbs(1.0, 0.01));
        }
    }
}

TEST_CASE("spectral weights: argument checks", "[oneparticle]")
{
    REQUIRE_THROWS_AS(SpectralWeights(make_params(1.0, 1.0), 0), domain_error);
    REQUIRE_THROWS_AS(SpectralWeights::from_profile(make_params(1.0, 1.0), 2, {1.0, 2.0}), domain_error);
}

TEST_CASE("kernel values", "[oneparticle]")
{
    REQUIRE_THAT(kernel_eval(make_params(1.0, 1.0), 0.5 * std::numbers::pi), WithinRel(0.11877379814063129852, 1e-13));
    REQUIRE_THAT(kernel_eval(make_params(0.3, 1.0), 0.1), WithinRel(2.5493602461125872428, 1e-12));
    REQUIRE_THAT(kernel_eval(make_params(2.0, 1.0), 2.5), WithinRel(0.0033382961468610058927, 1e-12));
    REQUIRE_THROWS_AS(kernel_eval(make_params(1.0, 1.0), 0.0), domain_error);
    // Even and 2 pi periodic.
    const auto p = make_params(1.0, 1.0);
    REQUIRE_THAT(kernel_eval(p, -0.7), WithinRel(kernel_eval(p, 0.7), 1e-14));
    REQUIRE_THAT(kernel_eval(p, 0.7 + 2.0 * std::numbers::pi), WithinRel(kernel_eval(p, 0.7), 1e-12));
}

TEST_CASE("kernel Fourier coefficients match the weights", "[oneparticle]")
{
    for (double zeta : {0.3, 1.0}) {
        const auto kc = kernel_fourier_check(make_params(zeta, 1.0), 32);
        REQUIRE_THAT(kc.kappa, WithinRel(2.0, 1e-8));
        REQUIRE(kc.max_deviation <= 1e-8);
    }
    REQUIRE_THROWS_AS(kernel_fourier_check(make_params(1.0, 1.0), 4), domain_error);
}

TEST_CASE("grid transforms and Cauchy data", "[oneparticle][property]")
{
    const SpectralWeights w(make_params(1.0, 1.5), 20);
    FourierVector h(20);
    for (int k = -20; k <= 20; ++k) {
        h[k] = complex(std::cos(0.3 * k), std::sin(1.1 * k)) / (1.0 + k * k);
    }
    const FourierVector back = from_grid_values(grid_values(h, 1.5), 1.5);
    REQUIRE((back - h).coeff.norm() < 1e-14);

    Eigen::VectorXd a(41), c(41);
    for (int j = 0; j < 41; ++j) {
        a[j] = std::sin(0.4 * j);
        c[j] = std::cos(0.9 * j * j);
    }
    const CauchyData d = unpack_cauchy(w, pack_cauchy(w, a, c));
    REQUIRE((d.a - a).norm() < 1e-13);
    REQUIRE((d.c - c).norm() < 1e-13);
    REQUIRE_THROWS_AS(from_grid_values(Eigen::VectorXcd::Zero(40), 1.0), dimension_error);
}

TEST_CASE("inner product", "[oneparticle][property]")
{
    const SpectralWeights w(make_params(0.7, 1.0), 10);
    FourierVector h = FourierVector::basis(10, 3), g = FourierVector::basis(10, -2);
    REQUIRE_THAT(norm_squared(w, h), WithinRel(1.0 / (2.0 * w[3]), 1e-15));
    REQUIRE(std::abs(inner_product(w, h, g)) == 0.0);
    const FourierVector s = h + complex(0.0, 2.0) * g;
    REQUIRE(std::abs(inner_product(w, s, g) - complex(0.0, -2.0) * norm_squared(w, g)) < 1e-15); // antilinear in the first slot
    REQUIRE_THAT(norm_squared(w, apply_omega(w, s)), WithinRel(0.5 * sobolev_half_norm(w, s), 1e-14));
    REQUIRE_THROWS_AS(inner_product(w, FourierVector(9), g), dimension_error);
}

TEST_CASE("multiplier bound", "[oneparticle]")
{
    const SpectralWeights w(make_params(1.0, 1.0), 64);
    FourierVector one(0);
    one[0] = 1.0;
    REQUIRE_THAT(multiplier_norm_and_bound(w, one).measured_norm, WithinAbs(1.0, 1e-12));
    FourierVector cosine(1);
    cosine[1] = cosine[-1] = 0.5;
    const auto est = multiplier_norm_and_bound(w, cosine);
    REQUIRE(est.smooth);
    REQUIRE(est.measured_norm <= est.bound);
    REQUIRE(est.measured_norm > 0.9);
}

TEST_CASE("omega table", "[oneparticle]")
{
    std::ostringstream os;
    write_omega_csv(os, SpectralWeights(make_params(1.0, 1.0), 3));
    const std::string s = os.str();
    REQUIRE(s.rfind("k,omega\n", 0) == 0);
    REQUIRE(std::count(s.begin(), s.end(), '\n') == 8);
    REQUIRE(s.find("0,0.73946282426704") != std::string::npos);
}
