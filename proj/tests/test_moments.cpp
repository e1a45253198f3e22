#include <catch2/catch.hpp>

#include "qdl/moments.hpp"
#include "qdl/oracle.hpp"

#include <random>

using namespace qdl;

namespace {

MagicStateSpec canonical_spec(int d, int n, int k) {
    MagicStateSpec s;
    s.d = d;
    s.n = n;
    for (int i = 0; i < k; ++i) s.factors.push_back(CubicFunction::canonical(d));
    return s;
}

} // namespace

TEST_CASE("kappa_single closed forms", "[moments]") {
    // d = 5: 2/d on T_ns for any cubic
    {
        const auto cat = shared_catalog(5);
        CubicFunction f = CubicFunction::canonical(5);
        for (auto i : cat->ns_indices()) REQUIRE(kappa_single(f, (*cat)[i]) == Approx(0.4));
        for (auto i : cat->sym_indices()) REQUIRE(kappa_single(f, (*cat)[i]) == 1.0);
    }
    // d = 3: 2/3 on T_ns for any admissible function shape
    {
        const auto cat = shared_catalog(3);
        CubicFunction f;
        f.d = 3;
        f.c3 = 4;
        f.c2 = 2;
        for (auto i : cat->ns_indices()) REQUIRE(kappa_single(f, (*cat)[i]) == Approx(2.0 / 3));
    }
    // d = 7: class values are g^2(3, 3 nu^j)/49 summing to 6/7, and they
    // match the brute force on each class
    {
        const auto cat = shared_catalog(7);
        const CubicFunction f = CubicFunction::canonical(7);
        const auto ks = kappa_classes(f);
        REQUIRE(ks[0] + ks[1] + ks[2] == Approx(6.0 / 7).margin(1e-12));
        const StateVector psi = f.state();
        for (auto i : cat->ns_indices()) {
            const double brute = kappa_bruteforce_factor(*cat, (*cat)[i], psi);
            REQUIRE(kappa_single(f, (*cat)[i]) == Approx(brute).margin(1e-9));
        }
        // defect subspaces take the class-0 value
        for (auto i : cat->def_indices()) REQUIRE(kappa_single(f, (*cat)[i]) == Approx(ks[0]).margin(1e-12));
    }
}

TEST_CASE("stabilizer profile aggregates", "[moments]") {
    for (int d : {3, 5, 7}) {
        for (int n : {1, 2, 3}) {
            const KappaProfile p = stabilizer_profile(d, n);
            const double D = std::pow(static_cast<double>(d), n);
            REQUIRE(p.kappa_sigma() == Approx(2.0 * d + 2));
            for (std::size_t i = 0; i < p.kappa.size(); ++i)
                REQUIRE(p.hat(i) == Approx((D + 2) / (D + d)).margin(1e-12));
            REQUIRE(frame_potential3(p) == Approx(frame_potential3_stab(d, n)).margin(1e-12));
        }
    }
    REQUIRE(frame_potential3_stab(3, 1) == Approx(10.0 / 9).margin(1e-15));
}

TEST_CASE("magic profiles against the oracle at small sizes", "[moments]") {
    std::mt19937_64 rng(606);
    for (int d : {3, 5, 7}) {
        const auto cat = shared_catalog(d);
        std::uniform_int_distribution<int> nz(1, d - 1), any(0, d - 1);
        for (int trial = 0; trial < 5; ++trial) {
            CubicFunction f;
            f.d = d;
            if (d == 3) {
                const int c3s[] = {1, 2, 4, 5, 7, 8};
                f.c3 = c3s[any(rng) % 6];
                f.c2 = any(rng) % 3;
            } else {
                f.c3 = nz(rng);
                f.c2 = any(rng);
                f.c1 = any(rng);
                f.c0 = any(rng);
            }
            MagicStateSpec spec;
            spec.d = d;
            spec.n = 1;
            spec.factors = {f};
            const KappaProfile p = kappa_profile(spec);
            const StateVector psi = f.state();
            for (std::size_t i = 0; i < cat->size(); ++i)
                REQUIRE(p.kappa[i] == Approx(kappa_bruteforce_factor(*cat, (*cat)[i], psi)).margin(1e-9));
        }
    }
}

TEST_CASE("frame potential: design condition and magic closed form", "[moments]") {
    // kappa = 3/(D+2) on T_ns gives exactly 1
    {
        KappaProfile p = stabilizer_profile(5, 1);
        const double target = 3.0 / (p.D + 2);
        for (std::size_t i = 0; i < p.kappa.size(); ++i)
            if (!(*p.catalog)[i].sym) p.kappa[i] = target;
        REQUIRE(frame_potential3(p) == Approx(1.0).margin(1e-14));
    }
    // d != 1 mod 3 magic orbits: the closed form of the balanced family
    for (int d : {3, 5, 11}) {
        for (int n : {1, 2, 3}) {
            for (int k = 1; k <= n; ++k) {
                const KappaProfile p = kappa_profile(canonical_spec(d, n, k));
                const double D = p.D;
                const double gap = std::pow(2.0 / d, k) - 3 / (D + 2);
                const double expect = 1 + (d - 2) * (D + 2) * (D + 2) / (3 * (D - 1) * (D + d)) * gap * gap;
                REQUIRE(frame_potential3(p) == Approx(expect).margin(1e-12));
                REQUIRE(frame_potential3(p) >= 1.0);
            }
        }
    }
}

TEST_CASE("kappa over T_ns decomposes as sum of mu_j kappa_j", "[moments]") {
    for (int d : {7, 13, 19}) {
        const auto cat = shared_catalog(d);
        const KappaProfile p = kappa_profile(canonical_spec(d, 1, 1));
        const auto mu = cat->mu_counts();
        const auto& ctx = FieldContext::get(d);
        const int ind3 = ctx.field().index(3 % d);
        double expect = 0;
        for (int j = 0; j < 3; ++j) {
            // kappa_j belongs to the class of 3 nu^j
            const double g = ctx.sums().g3_class(ind3 + j);
            expect += mu[j] * g * g / (static_cast<double>(d) * d);
        }
        REQUIRE(p.kappa_ns() == Approx(expect).margin(1e-12));
        REQUIRE(p.kappa_sigma() == Approx(6 + expect).margin(1e-12));
    }
}

TEST_CASE("stabilizer moment spectra from the table", "[moments]") {
    {
        const MomentSummary s = stab_moment_spectrum(1, 5);
        REQUIRE(s.qnorm_upper == Approx(7.0 / 5).margin(1e-15));
        REQUIRE(s.spectrum[0].value == Approx(7.0 / 5));
    }
    {
        const MomentSummary s = stab_moment_spectrum(1, 3);
        REQUIRE(s.spectrum[0].value == Approx(5.0 / 3));
        REQUIRE(s.spectrum[0].multiplicity == 2);
    }
    for (int d : {3, 5, 7, 13}) {
        for (int n : {1, 2}) {
            const MomentSummary s = stab_moment_spectrum(n, d);
            double total = 0;
            for (const auto& line : s.spectrum) total += line.multiplicity;
            REQUIRE(total == Approx(dim_sym3(s.D)));
            REQUIRE(s.phi3 >= 1.0);
        }
    }
    // degenerate d=2 case collapses to P_sym
    const MomentSummary s2 = stab_moment_spectrum(3, 2);
    REQUIRE(s2.qnorm_upper == 1.0);
    REQUIRE(s2.dev_upper == 0.0);
    REQUIRE(s2.phi3 == Approx(1.0));
}

TEST_CASE("balanced spectra: stabilizer limit, design point, d=7 value", "[moments]") {
    // kappaE = 1 reproduces the stabilizer table
    for (int d : {3, 5, 7, 13}) {
        const MomentSummary bal = balanced_moment_spectrum(1.0, 1, d);
        const MomentSummary stab = stab_moment_spectrum(1, d);
        REQUIRE(bal.spectrum.size() == stab.spectrum.size());
        for (std::size_t i = 0; i < bal.spectrum.size(); ++i) {
            REQUIRE(bal.spectrum[i].value == Approx(stab.spectrum[i].value).margin(1e-12));
            REQUIRE(bal.spectrum[i].multiplicity == Approx(stab.spectrum[i].multiplicity));
        }
        REQUIRE(bal.qnorm_upper == Approx(stab.qnorm_upper).margin(1e-12));
        // kappaE at the design point: flat spectrum
        const MomentSummary flat = balanced_moment_spectrum(3.0 / (std::pow(d, 1) + 2), 1, d);
        for (const auto& line : flat.spectrum) REQUIRE(line.value == Approx(1.0).margin(1e-12));
    }
    // d = 7, n = k = 1, kappaE = 2/7
    const MomentSummary s = balanced_moment_spectrum(2.0 / 7, 1, 7);
    REQUIRE(s.qnorm_upper == Approx(15.0 / 14).margin(1e-12));
}

TEST_CASE("moment norm bounds", "[moments]") {
    // balanced profiles give the exact balanced norm
    {
        const KappaProfile p = kappa_profile(canonical_spec(5, 2, 1));
        REQUIRE(p.balanced());
        const MomentNormBounds b = moment_norm_bounds(p);
        REQUIRE(b.exact);
        const MomentSummary s = balanced_moment_spectrum(2.0 / 5, 2, 5);
        REQUIRE(b.lower == Approx(s.qnorm_lower).margin(1e-12));
    }
    // stabilizer profile at d=7, n=2: the defect eigenvalue (D+2)/3 is the norm
    {
        const KappaProfile p = stabilizer_profile(7, 2);
        const MomentNormBounds b = moment_norm_bounds(p);
        REQUIRE(b.lower == Approx((49.0 + 2) / 3).margin(1e-12));
        REQUIRE(b.exact);
    }
    // magic d = 1 mod 3 satisfies the envelope d^{n-2k}/3^{2k+1} <= ||Q|| <= max{7/4, 4^k d^{n-k}/3}
    for (int k : {1, 2}) {
        const KappaProfile p = kappa_profile(canonical_spec(7, 3, k));
        const MomentNormBounds b = moment_norm_bounds(p);
        const double lower_env = std::pow(7.0, 3 - 2 * k) / std::pow(3.0, 2 * k + 1);
        const double upper_env = std::max(7.0 / 4, std::pow(4.0, k) * std::pow(7.0, 3 - k) / 3);
        REQUIRE(b.upper >= lower_env - 1e-9);
        REQUIRE(b.lower <= upper_env + 1e-9);
    }
}

TEST_CASE("stabilizer-projector shadow norm", "[moments]") {
    REQUIRE(shadow_norm_stab_projector(1, 3, 1).value == Approx(16.0 / 9).margin(1e-15));
    const auto s = shadow_norm_stab_projector(2, 3, 3);
    const double D = 9, d = 3, K = 3;
    REQUIRE(s.ratio == Approx((D + 1) / (D + d) * (d - 1 - d / D + d / K)).margin(1e-12));
    REQUIRE(s.value / (K - K * K / D) == Approx(s.ratio).margin(1e-12));
    REQUIRE(s.ratio <= 2 * d - 1);
    REQUIRE_THROWS_AS(shadow_norm_stab_projector(1, 3, 2), std::invalid_argument);
    REQUIRE_THROWS_AS(shadow_norm_stab_projector(1, 3, 3), std::invalid_argument);
    // d = 2 is the degenerate 3-design case: ratio hits the lower envelope
    const auto s2 = shadow_norm_stab_projector(3, 2, 2);
    REQUIRE(s2.value > 0);
}

TEST_CASE("orbit shadow norm reduces to the stabilizer formula on stabilizer profiles", "[moments]") {
    for (int d : {3, 5, 7}) {
        for (int n : {1, 2, 3}) {
            const KappaProfile p = stabilizer_profile(d, n);
            const double D = p.D;
            for (double K = 1; K <= D / d + 0.5; K *= d) {
                const OrbitStabShadow o = shadow_norm_orbit_stab_observable(p, K);
                const StabProjectorShadow s = shadow_norm_stab_projector(n, d, K);
                REQUIRE(o.value == Approx(s.value).margin(1e-9));
            }
        }
    }
    // K = 1 reduces to the rank-one closed form
    const KappaProfile p = kappa_profile(canonical_spec(7, 2, 1));
    const double D = p.D;
    const OrbitStabShadow o = shadow_norm_orbit_stab_observable(p, 1);
    const double expect = (D + 1) / (D + 2) * p.hat_sigma() - (D + 1) * (3 * D - 1) / (D * D);
    REQUIRE(o.value == Approx(expect).margin(1e-10));
    REQUIRE(o.six_q_norm == Approx(p.hat_sigma()).margin(1e-12));
}

TEST_CASE("ensemble shadow-norm bounds", "[moments]") {
    // stabilizer: upper equals (D+1)(2d-1)/(D+d)
    for (int d : {3, 5, 7}) {
        const KappaProfile p = stabilizer_profile(d, 2);
        const auto [lo, hi] = shadow_norm_ensemble_bounds(p);
        const double D = p.D;
        REQUIRE(hi == Approx((D + 1) * (2.0 * d - 1) / (D + d)).margin(1e-12));
        REQUIRE(lo <= hi);
    }
    // magic k >= 1, d = 2 mod 3: upper at most 3 + 2^{k+1}(d-2)/d^k; 15/2 at k=1, d=5
    {
        const KappaProfile p = kappa_profile(canonical_spec(5, 1, 1));
        const auto [lo, hi] = shadow_norm_ensemble_bounds(p, MagicContext{1, false});
        REQUIRE(hi <= 3 + 2.0 * 2 * 3 / 5 + 1e-12);
        REQUIRE(hi <= 15.0 / 2);
        REQUIRE(lo <= hi);
    }
    // magic k >= 1, d = 1 mod 3: upper at most 3 + gamma_{d,k}
    for (int k : {1, 2, 3}) {
        const KappaProfile p = kappa_profile(canonical_spec(7, 3, k));
        const auto [lo, hi] = shadow_norm_ensemble_bounds(p, MagicContext{k, false});
        REQUIRE(hi <= 3 + gamma_dk(7, k) + 1e-12);
        REQUIRE(lo <= hi);
    }
}

TEST_CASE("kappa-hat identities on random profiles", "[moments]") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> nz(1, 6), any(0, 6);
    for (int trial = 0; trial < 40; ++trial) {
        MagicStateSpec spec;
        spec.d = 7;
        spec.n = 3;
        const int k = trial % 4;
        for (int i = 0; i < k; ++i) {
            CubicFunction f;
            f.d = 7;
            f.c3 = nz(rng);
            f.c2 = any(rng);
            f.c1 = any(rng);
            f.c0 = any(rng);
            spec.factors.push_back(f);
        }
        const KappaProfile p = kappa_profile(spec);
        const double D = p.D;
        // hat(Sigma) = (D+2)/(D+d) kappa(Sigma) and = 6 + (D-1)/(D+2) hat(T_ns)
        double hat_total = 0;
        for (std::size_t i = 0; i < p.kappa.size(); ++i) hat_total += p.hat(i);
        REQUIRE(hat_total == Approx((D + 2) / (D + 7) * p.kappa_sigma()).margin(1e-12));
        REQUIRE(hat_total == Approx(6 + (D - 1) / (D + 2) * p.hat_ns()).margin(1e-12));
        // hat(Delta) = 1 - hat(T_ns) / (2(D+2))
        REQUIRE(p.hat_delta() == Approx(1 - p.hat_ns() / (2 * (D + 2))).margin(1e-12));
        // the three frame-potential expressions agree
        const double e1 = frame_potential3(p);
        const double e2 = (D + 2) / (6 * (D - 1)) *
                          (p.kappa_sigma(2) - p.kappa_sigma() * p.kappa_sigma() / (2 * (D + 7)));
        double hat_sq = 0;
        for (std::size_t i = 0; i < p.kappa.size(); ++i) hat_sq += p.hat(i) * p.hat(i);
        const double e3 = (2 * (D - 1) * hat_sq + hat_total * hat_total) / (12 * (D + 2));
        REQUIRE(e1 == Approx(e2).margin(1e-12));
        REQUIRE(e1 == Approx(e3).margin(1e-12));
        // aggregate envelopes: 4(D+d)/(D+1) <= kappa(Sigma) <= 2d+2
        REQUIRE(p.kappa_sigma() >= 4 * (D + 7) / (D + 1) - 1e-12);
        REQUIRE(p.kappa_sigma() <= 2 * 7 + 2 + 1e-12);
    }
}

TEST_CASE("kappa is invariant under the S_3 actions", "[moments]") {
    const auto cat = shared_catalog(7);
    const KappaProfile p = kappa_profile(canonical_spec(7, 1, 1));
    const auto group = enumerate_O3(7);
    for (const auto& o : group) {
        bool is_perm = true;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (o.m[i][j] != 0 && o.m[i][j] != 1) is_perm = false;
        if (!is_perm) continue;
        for (std::size_t i = 0; i < cat->size(); ++i) {
            const SigmaId left = cat->left_act(o, (*cat)[i]);
            const SigmaId right = cat->right_act((*cat)[i], o);
            REQUIRE(p.kappa[cat->index_of(left)] == Approx(p.kappa[i]).margin(1e-12));
            REQUIRE(p.kappa[cat->index_of(right)] == Approx(p.kappa[i]).margin(1e-12));
        }
    }
}

TEST_CASE("analytic shadow and norm summaries agree with the oracle at n=1", "[moments]") {
    for (int d : {3, 5, 7}) {
        const auto cat = shared_catalog(d);
        const MagicStateSpec spec = canonical_spec(d, 1, 1);
        const KappaProfile p = kappa_profile(spec);
        // oracle moment operator of the orbit
        const DenseMatrix q = orbit_moment(spec.factors[0].state(), d);
        const double pi3 = dim_sym3(d);
        // frame potential
        const double phi_oracle = pi3 * q.mul(q).trace().real();
        REQUIRE(frame_potential3(p) == Approx(phi_oracle).margin(1e-9));
        // operator norm of Q-bar
        DenseMatrix qbar = q;
        qbar *= Complex(pi3, 0);
        const double norm_oracle = operator_norm_hermitian(qbar);
        const MomentNormBounds b = moment_norm_bounds(p);
        REQUIRE(b.lower <= norm_oracle + 1e-9);
        REQUIRE(b.upper >= norm_oracle - 1e-9);
        if (b.exact) REQUIRE(b.lower == Approx(norm_oracle).margin(1e-9));
        // shadow norm of a stabilizer-state observable
        DenseMatrix obs(d);
        obs(0, 0) = 1;
        for (int i = 0; i < d; ++i) obs(i, i) -= Complex(1.0 / d, 0);
        const double shadow_oracle = 6.0 * (d + 1) / (d + 2) * operator_norm_hermitian(shadow_map(qbar, obs));
        REQUIRE(shadow_norm_orbit_stab_observable(p, 1).value == Approx(shadow_oracle).margin(1e-9));
    }
}
