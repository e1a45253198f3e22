// How far is a magic orbit from a 3-design? Prints the three figures of
// merit for the canonical magic orbits at a few (d, k) and compares the
// closed forms with the brute-force oracle where it is available.

#include "qdl/moments.hpp"
#include "qdl/oracle.hpp"

#include <cstdio>

int main() {
    for (int d : {3, 5, 7}) {
        for (int k : {0, 1}) {
            qdl::MagicStateSpec spec;
            spec.d = d;
            spec.n = 1;
            for (int i = 0; i < k; ++i) spec.factors.push_back(qdl::CubicFunction::canonical(d));
            const qdl::KappaProfile prof =
                k == 0 ? qdl::stabilizer_profile(d, 1) : qdl::kappa_profile(spec);
            const double phi3 = qdl::frame_potential3(prof);
            const auto bounds = qdl::moment_norm_bounds(prof);
            const auto shadow = qdl::shadow_norm_ensemble_bounds(
                prof, k ? std::optional<qdl::MagicContext>({k, false}) : std::nullopt);
            std::printf("d=%d k=%d  phi3=%.6f  |Q|=[%.6f, %.6f]  shadow=[%.6f, %.6f]\n", d, k, phi3,
                        bounds.lower, bounds.upper, shadow.first, shadow.second);

            // oracle cross-check of the frame potential
            qdl::StateVector psi(d, qdl::Complex(0, 0));
            psi[0] = 1;
            if (k > 0) psi = spec.factors[0].state();
            const qdl::DenseMatrix q = qdl::orbit_moment(psi, d);
            const double oracle_phi3 = qdl::dim_sym3(d) * q.mul(q).trace().real();
            std::printf("           oracle phi3=%.6f\n", oracle_phi3);
        }
    }
    return 0;
}
