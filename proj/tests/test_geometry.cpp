#include <catch_amalgamated.hpp>

#include <random>

#include "dsqft/geometry.hpp"

using namespace dsqft;
using namespace dsqft::geometry;
using Catch::Matchers::WithinAbs;

namespace {

double matrix_gap(const GroupElement& a, const GroupElement& b) { return (a.matrix - b.matrix).cwiseAbs().maxCoeff(); }

} // namespace

TEST_CASE("group elements preserve the form", "[geometry][property]")
{
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int n = 0; n < 50; ++n) {
        const GroupElement g = rotation(u(gen)) * boost(u(gen), u(gen)) * rotation(u(gen));
        REQUIRE(g.is_proper_orthochronous());
        REQUIRE(matrix_gap(g * g.inverse(), GroupElement{}) < 1e-12);
        const DSPoint x = ds_point(u(gen), u(gen), 1.7);
        REQUIRE(apply(g, x).hyperboloid_defect() < 1e-12);
    }
}

TEST_CASE("one-parameter groups", "[geometry]")
{
    REQUIRE(matrix_gap(rotation(0.4) * rotation(0.9), rotation(1.3)) < 1e-15);
    REQUIRE(matrix_gap(boost(0.4) * boost(-1.1), boost(-0.7)) < 1e-14);
    REQUIRE(matrix_gap(rotation(two_pi), GroupElement{}) < 1e-15);
    // Boosts fix the points psi = +-pi/2 of the circle.
    for (double psi : {0.5 * std::numbers::pi, -0.5 * std::numbers::pi}) {
        const DSPoint p = circle_point(psi, 1.0);
        REQUIRE((apply(boost(0.8), p).x - p.x).norm() < 1e-15);
    }
}

TEST_CASE("causal relations", "[geometry]")
{
    const DSPoint a = circle_point(0.0, 1.0);
    REQUIRE(causally_related(a, a));
    REQUIRE_FALSE(causally_related(a, circle_point(0.1, 1.0)));
    REQUIRE(causally_related(a, ds_point(0.3, 0.2, 1.0)));
    REQUIRE_FALSE(causally_related(a, ds_point(0.1, 0.3, 1.0)));
    REQUIRE_THROWS_AS(causally_related(a, circle_point(0.0, 2.0)), domain_error);
}

TEST_CASE("intervals", "[geometry]")
{
    const Interval I(-1.0, 1.0);
    REQUIRE(I.contains(0.0));
    REQUIRE_FALSE(I.contains(1.0));
    REQUIRE(I.contains_closed(1.0, 1e-15));
    REQUIRE(I.contains(two_pi - 0.5));
    REQUIRE_THAT(I.complement().length(), WithinAbs(two_pi - 2.0, 1e-15));
    REQUIRE_FALSE(I.intersects(I.complement()));
    REQUIRE(I.intersects(Interval(0.5, 3.0)));
    REQUIRE(Interval(-0.5, 0.5).subset_of(I));
    REQUIRE_THROWS_AS(Interval(1.0, 1.0), domain_error);
    REQUIRE_THROWS_AS(Interval(0.0, two_pi), domain_error);
}

TEST_CASE("grid snapping", "[geometry]")
{
    const long n = 129;
    const auto s = snap_to_grid(half_circle_plus(), n);
    REQUIRE(s.snap_distance <= 0.5 * two_pi / n + 1e-15);
    const auto pts = interior_grid_points(s, n);
    for (long j : pts) {
        REQUIRE(half_circle_plus().contains(grid_angle(j, n)));
    }
    REQUIRE(pts.size() == 63u); // -pi/2 snaps to index -32 on 129 points
}

TEST_CASE("domains of dependence", "[geometry]")
{
    // The wedge is boost invariant.
    const Interval Ip = half_circle_plus();
    // The shadow touches the fixed endpoints tangentially, so they resolve to ~sqrt(tolerance).
    const Interval It = dod_interval(boost(0.4), Ip);
    REQUIRE_THAT(std::remainder(It.lo() - Ip.lo(), two_pi), WithinAbs(0.0, 1e-6));
    REQUIRE_THAT(It.length(), WithinAbs(std::numbers::pi, 2e-6));
    // Rotations move arcs rigidly.
    const Interval J(0.2, 0.9);
    const Interval Jr = dod_interval(rotation(0.5), J);
    REQUIRE_THAT(std::remainder(Jr.lo() + 0.3, two_pi), WithinAbs(0.0, 1e-6)); // the matrix rotation moves psi to psi - alpha
    REQUIRE_THAT(Jr.length(), WithinAbs(0.7, 2e-6));
    // Boosting a proper sub-arc shrinks or moves it but keeps it a single arc.
    const Interval sub(-0.25 * std::numbers::pi, 0.25 * std::numbers::pi);
    const Interval St = dod_interval(boost(0.3), sub);
    REQUIRE(St.length() > 0.0);
    REQUIRE(St.length() < std::numbers::pi);
}

TEST_CASE("regions and complements", "[geometry]")
{
    const Region W = wedge();
    REQUIRE(region_contains(W, circle_point(0.0, 1.0)));
    REQUIRE_FALSE(region_contains(W, circle_point(std::numbers::pi, 1.0)));
    const Region Wc = spacelike_complement(W);
    REQUIRE(region_contains(Wc, circle_point(std::numbers::pi, 1.0)));
    const Region O = double_cone(Interval(-0.5, 0.5));
    REQUIRE(region_contains(O, circle_point(0.1, 1.0)));
    REQUIRE_FALSE(region_contains(O, circle_point(1.0, 1.0)));
    REQUIRE(region_contains(spacelike_complement(O), circle_point(1.0, 1.0)));
}
