// Evolve a bump supported in a quarter-circle arc and watch where the Cauchy data go.

#include <cstdio>
#include <numbers>

#include "dsqft/modloc.hpp"

int main()
{
    using namespace dsqft;
    const SpectralWeights w(make_params(1.0, 1.0), 128);
    const double pi = std::numbers::pi;
    const geometry::Interval arc(-pi / 4, pi / 4);
    const FourierVector h = bump_vector(w, 0.0, 0.999 * pi / 4);

    std::printf("%6s %10s %10s %12s %14s\n", "t", "lo", "hi", "leakage", "outside arc");
    for (double t : {0.0, 0.1, 0.2, 0.3, 0.5}) {
        const auto r = fsl_leakage_details(w, arc, h, t);
        std::printf("%6.2f %10.5f %10.5f %12.3e %14.3e\n", t, std::remainder(r.propagated.lo(), 2 * pi),
                    std::remainder(r.propagated.hi(), 2 * pi), r.leakage, mass_outside(r.evolved, arc));
    }
}
