#include <catch_amalgamated.hpp>

#include "dsqft/specfun.hpp"

using namespace dsqft;
using Catch::Matchers::WithinRel;
using Catch::Matchers::WithinAbs;

namespace {

// Reference values: tests/oracles/gen_reference.py (mpmath, 40 digits).
void require_close(complex got, complex want, double rel)
{
    INFO("got " << got << " want " << want);
    REQUIRE(std::abs(got - want) <= rel * std::abs(want));
}

} // namespace

TEST_CASE("complex gamma against reference values", "[specfun]")
{
    require_close(specfun::complex_gamma({0.25, 1.3}), {0.069035135715055900716, -0.29833596599215797837}, 1e-13);
    require_close(specfun::complex_gamma({-2.5, 0.5}), {-0.3338752035224323374, -0.20645730796360841492}, 1e-13);
    require_close(specfun::log_gamma({50.0, 30.0}), {135.96296410344415869, 118.72299064233304554}, 1e-14);
}

TEST_CASE("gamma recurrence and reflection", "[specfun][property]")
{
    for (double x : {-3.7, -0.4, 0.3, 1.9, 7.2}) {
        for (double y : {-2.0, 0.0, 0.7, 5.0}) {
            const complex z(x, y);
            require_close(specfun::complex_gamma(z + 1.0), z * specfun::complex_gamma(z), 1e-12);
            const complex refl = specfun::complex_gamma(z) * specfun::complex_gamma(1.0 - z);
            require_close(refl, std::numbers::pi / std::sin(std::numbers::pi * z), 1e-11);
        }
    }
}

TEST_CASE("gamma poles raise", "[specfun]")
{
    REQUIRE_THROWS_AS(specfun::complex_gamma({0.0, 0.0}), pole_error);
    REQUIRE_THROWS_AS(specfun::complex_gamma({-3.0, 0.0}), pole_error);
    REQUIRE_THROWS_AS(specfun::gamma_half_ratio({-0.5, 0.0}), pole_error);
}

TEST_CASE("half-integer gamma ratio", "[specfun]")
{
    require_close(specfun::gamma_half_ratio({3.7, 2.1}), {1.9363731039313723605, 0.54122901428346943017}, 1e-14);
    require_close(specfun::gamma_half_ratio({0.3, 0.0}), 0.38917027102397670607, 1e-14);
    for (double x : {0.2, 2.5, 30.0, 400.0}) {
        const complex z(x, 0.8);
        require_close(specfun::gamma_half_ratio(z), specfun::gamma_ratio(z + 0.5, z), 1e-12);
    }
}

TEST_CASE("digamma and hypergeometric series", "[specfun]")
{
    require_close(specfun::digamma({1.5, 2.0}), {0.79983375817295367991, 1.1001971357298586774}, 1e-13);
    require_close(specfun::hyp2f1_series(0.3, 0.7, 1.9, 0.6), 1.089464800785896136, 1e-14);
    REQUIRE(specfun::hyp2f1_series(1.0, 2.0, 3.0, 0.0) == complex(1.0, 0.0));
}

TEST_CASE("Legendre functions of complex degree", "[specfun]")
{
    require_close(specfun::legendre_p({-0.5, -2.0}, 0.3), 3.7990855691964300545, 1e-13);
    require_close(specfun::legendre_p({-0.5, -2.0}, -0.95), 127.55625258479356637, 1e-11);
    require_close(specfun::legendre_p(-0.2, 0.5), 1.0465444107122356472, 1e-13);
    require_close(specfun::legendre_p(-0.2, -0.999), 2.3763665140856956142, 1e-11);
}

TEST_CASE("Legendre degree symmetry and normalization", "[specfun][property]")
{
    for (double x : {-0.9, -0.2, 0.4, 0.99}) {
        const complex s(-0.5, -1.3);
        require_close(specfun::legendre_p(s, x), specfun::legendre_p(-1.0 - s, x), 1e-12);
    }
    REQUIRE_THAT(specfun::legendre_p({-0.5, -2.0}, 1.0).real(), WithinAbs(1.0, 1e-15));
    REQUIRE_THAT(specfun::legendre_p(2.0, 0.3).real(), WithinRel(0.5 * (3 * 0.09 - 1), 1e-13));
}

TEST_CASE("model parameters", "[specfun]")
{
    const auto p = make_params(1.0, 1.0);
    REQUIRE(p.series == Series::principal);
    REQUIRE_THAT(p.c_nu, WithinRel(0.065544688314633566703, 1e-13));
    REQUIRE_THAT(make_params(0.3, 2.0).c_nu, WithinRel(1.6180339887498949785, 1e-13));
    REQUIRE(make_params(0.3, 1.0).series == Series::complementary);
    for (double z : {0.1, 0.49, 0.5, 0.51, 2.0}) {
        const auto q = make_params(z, 1.0);
        // s (1 + s) = -zeta^2
        REQUIRE(std::abs(q.s_plus * (1.0 + q.s_plus) + z * z) < 1e-14);
    }
    REQUIRE_THROWS_AS(make_params(0.0, 1.0), domain_error);
    REQUIRE_THROWS_AS(make_params(1.0, -1.0), domain_error);
}
