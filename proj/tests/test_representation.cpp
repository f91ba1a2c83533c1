#include <catch_amalgamated.hpp>

#include <thread>

#include "dsqft/representation.hpp"

using namespace dsqft;
using Catch::Matchers::WithinAbs;

namespace {

FourierVector smooth_vector(int K, double phase)
{
    FourierVector h(K);
    for (int k = -K; k <= K; ++k) {
        h[k] = std::polar(1.0 / (1.0 + k * k), phase * k);
    }
    return h;
}

} // namespace

TEST_CASE("structure constants", "[representation]")
{
    const SpectralWeights w(make_params(1.0, 1.0), 64);
    const auto d = structure_constant_defect(w);
    REQUIRE(d.max_defect <= 1e-10);
    // [m0, m1] = m2, [m0, m2] = -m1, [m1, m2] = -m0
    REQUIRE(d.structure[0](1, 2) == 1.0);
    REQUIRE(d.structure[0](2, 1) == -1.0);
    REQUIRE(d.structure[1](2, 0) == -1.0);

    std::vector<double> bad(65);
    for (int k = 0; k <= 64; ++k) {
        bad[k] = k + 0.1;
    }
    REQUIRE(structure_constant_defect(SpectralWeights::from_profile(make_params(1.0, 1.0), 64, bad)).max_defect >= 1e-3);
    REQUIRE_THROWS_AS(structure_constant_defect(SpectralWeights(make_params(1.0, 1.0), 8)), domain_error);
}

TEST_CASE("generator shape", "[representation]")
{
    const SpectralWeights w(make_params(0.8, 2.0), 12);
    const Eigen::MatrixXd L = boost_generator_real(w);
    REQUIRE((L - L.transpose()).cwiseAbs().maxCoeff() == 0.0);
    REQUIRE(L.diagonal().cwiseAbs().maxCoeff() == 0.0);
    REQUIRE_THAT(L(13, 12), WithinAbs(1.0 * std::sqrt(w[0] * w[1]), 1e-15));
    // l_1 does not depend on r.
    const Eigen::MatrixXd L1 = boost_generator_real(SpectralWeights(make_params(0.8, 1.0), 12));
    REQUIRE((L - L1).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("boost group", "[representation][property]")
{
    const SpectralWeights w(make_params(1.0, 1.0), 24);
    const OperatorH L = boost_generator(w);
    const FourierVector h = smooth_vector(24, 0.3);
    const FourierVector a = boost_apply(w, L, 0.3, boost_apply(w, L, -0.8, h));
    const FourierVector b = boost_apply(w, L, -0.5, h);
    REQUIRE((a - b).coeff.norm() < 1e-12 * h.coeff.norm());
    REQUIRE_THAT(norm_squared(w, b), Catch::Matchers::WithinRel(norm_squared(w, h), 1e-13));
    REQUIRE((boost_apply(w, L, 0.0, h) - h).coeff.norm() < 1e-15 * h.coeff.norm());
    REQUIRE_THROWS_AS(boost_apply(w, L, complex(0.0, 200.0), h), overflow_error);

    // The rotated generator, with and without the cache, agrees with conjugation by rotations.
    const OperatorH La = boost_generator(w, 0.7);
    OperatorH plain = La;
    plain.key.reset();
    const FourierVector c1 = boost_apply(w, La, 0.4, h);
    const FourierVector c2 = boost_apply(w, plain, 0.4, h);
    const FourierVector c3 = rotation_apply(boost_apply(w, L, 0.4, rotation_apply(h, -0.7)), 0.7);
    REQUIRE((c1 - c2).coeff.norm() < 1e-12);
    REQUIRE((c1 - c3).coeff.norm() < 1e-12);
}

TEST_CASE("reflection", "[representation][property]")
{
    const SpectralWeights w(make_params(1.0, 1.0), 16);
    const FourierVector h = smooth_vector(16, 0.9), g = smooth_vector(16, -0.2);
    REQUIRE((theta_apply(theta_apply(h)) - h).coeff.norm() == 0.0);
    REQUIRE(std::abs(inner_product(w, theta_apply(h), theta_apply(g)) - std::conj(inner_product(w, h, g))) < 1e-14);
    const OperatorH L = boost_generator(w);
    const FourierVector lhs = theta_apply(boost_apply(w, L, 0.6, theta_apply(h)));
    REQUIRE((lhs - boost_apply(w, L, 0.6, h)).coeff.norm() < 1e-12);
}

TEST_CASE("spectrum cache is shared across threads", "[representation]")
{
    const SpectralWeights w(make_params(1.3, 1.0), 40);
    std::vector<std::shared_ptr<const BoostSpectrum>> got(4);
    std::vector<std::thread> threads;
    for (int i = 0; i < 4; ++i) {
        threads.emplace_back([&, i] { got[i] = SpectrumCache::instance().get(w); });
    }
    for (auto& t : threads) {
        t.join();
    }
    for (int i = 1; i < 4; ++i) {
        REQUIRE(got[i].get() == got[0].get());
    }
    // Spectrum symmetric under lambda -> -lambda.
    const auto& ev = got[0]->eigenvalues;
    for (Eigen::Index n = 0; n < ev.size(); ++n) {
        REQUIRE_THAT(ev[n] + ev[ev.size() - 1 - n], WithinAbs(0.0, 1e-10));
    }
}
