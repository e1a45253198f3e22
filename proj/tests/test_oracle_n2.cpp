#include <catch2/catch.hpp>

#include "qdl/designs.hpp"
#include "qdl/moments.hpp"
#include "qdl/oracle.hpp"

using namespace qdl;

// Heavier cross-checks of the n = 2 machinery against the closed forms.

TEST_CASE("two-qutrit stabilizer states form a 2-design", "[oracle][n2]") {
    const int d = 3, D = 9;
    const auto states = enumerate_stabilizer_states(2, d);
    REQUIRE(states.size() == 360);
    // first moment: I/D
    const DenseMatrix q1 = moment_operator(states, 1);
    DenseMatrix expect1 = DenseMatrix::identity(D);
    expect1 *= Complex(1.0 / D, 0);
    REQUIRE(q1.max_abs_diff(expect1) < 1e-12);
    // second moment: pi_2 Q_2 = P_[2]
    const DenseMatrix q2 = moment_operator(states, 2);
    DenseMatrix p2(D * D);
    for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b) {
            p2(a * D + b, a * D + b) += 0.5;
            p2(a * D + b, b * D + a) += 0.5;
        }
    DenseMatrix scaled = q2;
    scaled *= Complex(D * (D + 1) / 2.0, 0);
    REQUIRE(scaled.max_abs_diff(p2) < 1e-10);
}

TEST_CASE("two-qutrit frame potential and third moment", "[oracle][n2]") {
    const int d = 3, D = 9;
    const auto states = enumerate_stabilizer_states(2, d);
    const DenseMatrix q3 = moment_operator(states, 3);
    const double fro = q3.frobenius_norm();
    const double phi3 = dim_sym3(D) * fro * fro;
    REQUIRE(phi3 == Approx(frame_potential3_stab(d, 2)).margin(1e-10));
    REQUIRE(phi3 == Approx(11.0 / 9).margin(1e-10));
    // entrywise against the Sigma expansion with Z = D(1+D)(d+D)
    const SigmaCatalog cat(d);
    DenseMatrix analytic(D * D * D);
    const double z = static_cast<double>(D) * (1 + D) * (d + D);
    for (const auto& t : cat.all()) {
        const DenseMatrix r1 = r_matrix(cat, t);
        // R(T) = r(T) (x) r(T) under the party regrouping
        for (const auto& [x1, y1] : r_pairs(cat, t).pairs)
            for (const auto& [x2, y2] : r_pairs(cat, t).pairs) {
                auto split = [d](int v) { return std::array<int, 3>{v / (d * d), (v / d) % d, v % d}; };
                const auto xa = split(x1), xb = split(x2), ya = split(y1), yb = split(y2);
                const int row = (xa[0] * d + xb[0]) * D * D + (xa[1] * d + xb[1]) * D + (xa[2] * d + xb[2]);
                const int col = (ya[0] * d + yb[0]) * D * D + (ya[1] * d + yb[1]) * D + (ya[2] * d + yb[2]);
                analytic(row, col) += 1.0 / z;
            }
    }
    REQUIRE(q3.max_abs_diff(analytic) < 1e-10);
}

TEST_CASE("n=2 stabilizer moment spectrum matches the table", "[oracle][n2]") {
    const int d = 3, D = 9;
    const SigmaCatalog cat(d);
    const Sym3Basis basis(D);
    REQUIRE(basis.dim() == 165);
    DenseMatrix q(basis.dim());
    for (const auto& t : cat.all()) q += r_matrix_sym3_n2(cat, t, basis);
    q *= Complex((D + 2.0) / (6.0 * (D + d)), 0);
    auto eig = hermitian_eigenvalues(q);
    double top = 0;
    for (double e : eig) top = std::max(top, std::abs(e));
    const auto clusters = cluster_eigenvalues(eig, 1e-7 * top);
    const MomentSummary expect = stab_moment_spectrum(2, d);
    REQUIRE(clusters.size() == expect.spectrum.size());
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        REQUIRE(clusters[i].value == Approx(expect.spectrum[i].value).margin(1e-8));
        REQUIRE(clusters[i].multiplicity == static_cast<int>(expect.spectrum[i].multiplicity));
    }
}

TEST_CASE("two-orbit accurate design certificate matches the oracle", "[oracle][n2]") {
    const int d = 7;
    const PrimeField F(d);
    // choose the T-gate class whose defect-subspace kappa is smallest
    int best_j = 0;
    double best = 2;
    std::vector<CubicFunction> fs;
    for (int j = 0; j < 3; ++j) {
        CubicFunction f;
        f.d = d;
        f.c3 = F.pow(F.nu(), j);
        fs.push_back(f);
        const double k0 = kappa_classes(f)[0];
        if (k0 < best) {
            best = k0;
            best_j = j;
        }
    }
    REQUIRE(best < 1.0 / d);
    EnsembleSpec ens;
    MagicStateSpec spec;
    spec.d = d;
    spec.n = 1;
    spec.factors = {fs[best_j]};
    ens.members.emplace_back(spec, 1.0);
    const DesignRecipe r = two_orbit_accurate_design(ens, MagicContext{1, false});
    REQUIRE(r.orbit_count() == 2);
    // oracle: mix the orbit moments, project into Sym_3, take the norm
    DenseMatrix q(d * d * d);
    for (const auto& o : r.orbits) {
        DenseMatrix part = o.fiducial.k() == 0 ? moment_operator(enumerate_stabilizer_states(1, d), 3)
                                               : orbit_moment(o.fiducial.factors[0].state(), d);
        part *= Complex(o.weight, 0);
        q += part;
    }
    q *= Complex(dim_sym3(d), 0);
    const DenseMatrix qs = project_sym3(q, Sym3Basis(d));  // P_sym becomes the identity here
    const double norm_oracle = operator_norm_hermitian(qs);
    REQUIRE(norm_oracle == Approx(r.qnorm_upper).margin(1e-9));
    REQUIRE(operator_norm_hermitian(qs - DenseMatrix::identity(qs.dim())) <= r.dev_upper + 1e-9);
}

TEST_CASE("balanced magic spectra match the oracle at n=1", "[oracle][n2]") {
    for (int d : {3, 5, 7}) {
        // the k = 1 balanced family: uniform over the three classes for
        // d = 1 mod 3, a single canonical factor otherwise
        std::vector<StateVector> fiducials;
        if (d % 3 == 1) {
            const PrimeField F(d);
            for (int j = 0; j < 3; ++j) {
                CubicFunction f;
                f.d = d;
                f.c3 = F.pow(F.nu(), j);
                fiducials.push_back(f.state());
            }
        } else {
            fiducials.push_back(CubicFunction::canonical(d).state());
        }
        DenseMatrix q(d * d * d);
        for (const auto& psi : fiducials) {
            DenseMatrix part = orbit_moment(psi, d);
            part *= Complex(1.0 / fiducials.size(), 0);
            q += part;
        }
        q *= Complex(dim_sym3(d), 0);
        const DenseMatrix projected = project_sym3(q, Sym3Basis(d));
        auto eig = hermitian_eigenvalues(projected);
        double top = 0;
        for (double e : eig) top = std::max(top, std::abs(e));
        const auto clusters = cluster_eigenvalues(eig, 1e-7 * std::max(top, 1.0));
        const double kappaE = 2.0 / d;  // common to every k = 1 family
        const MomentSummary expect = balanced_moment_spectrum(kappaE, 1, d);
        REQUIRE(clusters.size() == expect.spectrum.size());
        for (std::size_t i = 0; i < clusters.size(); ++i) {
            CAPTURE(d, i);
            REQUIRE(clusters[i].value == Approx(expect.spectrum[i].value).margin(1e-8));
            REQUIRE(clusters[i].multiplicity == static_cast<int>(expect.spectrum[i].multiplicity));
        }
    }
}
