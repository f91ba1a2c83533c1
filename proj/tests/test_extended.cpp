#include <catch_amalgamated.hpp>

#include "dsqft/extended.hpp"
#include "dsqft/modloc.hpp"

using namespace dsqft;

TEST_CASE("50-digit spectral weights", "[extended]")
{
    const auto p = extended::make_params50(1.0, 1.0);
    // mpmath: omega(1, 1, 7) = 7.0703863258755624567...
    const extended::real50 ref("7.0703863258755624567");
    REQUIRE(abs(extended::omega50(p, 7) - ref) < extended::real50("1e-18"));
    for (int k : {0, 3, 20}) {
        const double d = omega_coeff(make_params(1.0, 1.0), k);
        REQUIRE(std::abs(static_cast<double>(extended::omega50(p, k)) - d) <= 2e-15 * d);
    }
    const auto q = extended::make_params50(0.3, 2.0);
    REQUIRE(std::abs(static_cast<double>(extended::omega50(q, 0)) - 0.08700240868988695759 / 2.0) < 1e-16);
}

TEST_CASE("tridiagonal eigensolver", "[extended]")
{
    std::vector<double> diag = {2.0, -1.0, 0.5, 3.0}, off = {1.0, 0.3, -0.7};
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(4, 4);
    for (int i = 0; i < 4; ++i) {
        A(i, i) = diag[i];
    }
    for (int i = 0; i < 3; ++i) {
        A(i, i + 1) = A(i + 1, i) = off[i];
    }
    std::vector<std::vector<double>> z;
    extended::tridiagonal_ql(diag, off, z);
    for (int n = 0; n < 4; ++n) {
        Eigen::Vector4d v;
        for (int i = 0; i < 4; ++i) {
            v[i] = z[i][n];
        }
        REQUIRE((A * v - diag[n] * v).norm() < 1e-13);
        REQUIRE(std::abs(v.norm() - 1.0) < 1e-14);
    }
}

TEST_CASE("extended modular residual", "[extended]")
{
    const SpectralWeights w(make_params(1.0, 1.0), 16);
    const auto r = extended::tomita_residual_extended(w, bump_vector(w, 0.0, 1.0));
    REQUIRE(r.max_weight_error < 1e-14);
    REQUIRE(std::isfinite(r.residual));
    const auto wrong = extended::tomita_residual_extended(w, bump_vector(w, std::numbers::pi, 1.0));
    REQUIRE(wrong.residual > r.residual);
    REQUIRE_THROWS_AS(extended::tomita_residual_extended(SpectralWeights(make_params(1.0, 1.0), 40),
                                                         FourierVector(40)),
                      domain_error);
}
