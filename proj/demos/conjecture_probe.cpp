// Empirical probes of two conjectured sharpenings, logged but never
// asserted anywhere in the library:
//   (a) the stabilizer shadow norm equals its lower bound
//       (D+1)/(D+d) (2d - 1 - d/D), and
//   (b) kappa(Psi, T) >= 0 for every pure state and every T.
// The probes sample random observables / states at oracle sizes and print
// what they find.

#include "qdl/moments.hpp"
#include "qdl/oracle.hpp"

#include <cstdio>
#include <random>

int main() {
    std::mt19937_64 rng(12345);

    std::printf("probe (a): stabilizer shadow norm vs conjectured exact value, n=1\n");
    for (int d : {3, 5, 7}) {
        const auto states = qdl::enumerate_stabilizer_states(1, d);
        qdl::DenseMatrix qbar = qdl::moment_operator(states, 3);
        qbar *= qdl::Complex(qdl::dim_sym3(d), 0);
        auto squared_norm = [&](qdl::DenseMatrix o) {
            qdl::Complex tr = o.trace();
            for (int i = 0; i < d; ++i) o(i, i) -= tr / static_cast<double>(d);
            const double hs = o.frobenius_norm();
            o *= qdl::Complex(1.0 / hs, 0);
            return 6.0 * (d + 1) / (d + 2) * qdl::operator_norm_hermitian(qdl::shadow_map(qbar, o));
        };
        // the conjectured maximizer: a stabilizer-state projector
        qdl::DenseMatrix stab_obs(d);
        stab_obs(0, 0) = 1;
        const double at_stab = squared_norm(stab_obs);
        // random Hermitian observables
        double best = 0;
        std::normal_distribution<double> gauss;
        for (int trial = 0; trial < 400; ++trial) {
            qdl::DenseMatrix o(d);
            for (int i = 0; i < d; ++i) {
                o(i, i) = gauss(rng);
                for (int j = i + 1; j < d; ++j) {
                    o(i, j) = qdl::Complex(gauss(rng), gauss(rng)) / std::sqrt(2.0);
                    o(j, i) = std::conj(o(i, j));
                }
            }
            best = std::max(best, squared_norm(o));
        }
        const double conj = (d + 1.0) / (d + d) * (2.0 * d - 1 - 1.0);
        const double upper = (d + 1.0) * (2 * d - 1) / (d + d);
        std::printf("  d=%d  random max = %.9f   stabilizer observable = %.9f   conjectured = %.9f   proven upper = %.9f\n",
                    d, best, at_stab, conj, upper);
    }

    std::printf("probe (b): minimum kappa(Psi, T) over random pure states\n");
    for (int d : {3, 5, 7}) {
        const qdl::SigmaCatalog cat(d);
        double lo = 1;
        for (int trial = 0; trial < 2000; ++trial) {
            const qdl::StateVector psi = qdl::random_state(d, rng);
            for (const auto& t : cat.all()) lo = std::min(lo, qdl::kappa_bruteforce_factor(cat, t, psi));
        }
        std::printf("  d=%d  min kappa over samples = %.9f  (conjectured >= 0)\n", d, lo);
    }
    return 0;
}
