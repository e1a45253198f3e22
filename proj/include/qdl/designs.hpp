#pragma once

// Exact and approximate 3-designs from Clifford orbits: mixing weights,
// balanced magic ensembles, the threshold index k*(d,n) and the set S(d) of
// qudit counts admitting exact designs, qutrit fiducial angles, and
// two-orbit accurate designs. Comparisons that decide existence are done in
// exact rational arithmetic on top of the certified integer tilde_g(d)^2.

#include "qdl/charsums.hpp"
#include "qdl/moments.hpp"
#include "qdl/rational.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace qdl {

// ---------------------------------------------------------------------------
// Exact designs for d = 2 mod 3, n = k = 1

// Weight w of the stabilizer orbit mixed with a magic orbit so that the
// mixture is an exact 3-design; only n = k = 1 with d >= 5, d = 2 mod 3
// gives w in (0,1).
inline std::optional<Rational> exact_weight_d2mod3(int d, int n, int k) {
    if (d % 3 == 1) throw std::invalid_argument("exact_weight_d2mod3: requires d != 1 mod 3");
    const BigInt dk = big_pow(d, k);
    const BigInt two_k = big_pow(2, k);
    const BigInt Dp2 = big_pow(d, n) + 2;
    const Rational w(3 * dk - two_k * Dp2, (dk - two_k) * Dp2);
    if (w <= Rational(0) || w >= Rational(1)) return std::nullopt;
    return w;
}

// ---------------------------------------------------------------------------
// Qutrit design angles (d = 3)

// Angles phi in [0, 2pi) with cos^3 phi - sin^3 phi = +-(3/(D+2))^{1/(2n)},
// making |psi(phi)>^{(x)n} a 3-design fiducial; the single-factor family
// solves the same equation with exponent 1/2.
struct QutritAngles {
    std::vector<double> tensor_family;   // for |psi(phi)>^{(x)n}
    std::vector<double> single_factor;   // for |psi(phi)> (x) |0>^{(x)(n-1)}
};

inline std::vector<double> solve_cubic_angle_equation(double target) {
    // roots of g(phi) = cos^3 - sin^3 = +-target on [0, 2pi)
    auto g = [](double phi) {
        const double c = std::cos(phi), s = std::sin(phi);
        return c * c * c - s * s * s;
    };
    std::vector<double> roots;
    const int grid = 4096;
    for (double sign : {+1.0, -1.0}) {
        const double t = sign * target;
        for (int i = 0; i < grid; ++i) {
            double a = 2.0 * std::numbers::pi * i / grid;
            double b = 2.0 * std::numbers::pi * (i + 1) / grid;
            double fa = g(a) - t, fb = g(b) - t;
            if (fa == 0) { roots.push_back(a); continue; }
            if (fa * fb > 0) continue;
            for (int it = 0; it < 200; ++it) {
                const double m = 0.5 * (a + b);
                const double fm = g(m) - t;
                if (fm == 0 || (b - a) < 1e-15) { a = b = m; break; }
                if (fa * fm < 0) { b = m; fb = fm; }
                else { a = m; fa = fm; }
            }
            roots.push_back(0.5 * (a + b));
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

inline QutritAngles qutrit_design_angle(int n) {
    const double D = std::pow(3.0, n);
    QutritAngles out;
    out.tensor_family = solve_cubic_angle_equation(std::pow(3.0 / (D + 2), 1.0 / (2.0 * n)));
    out.single_factor = solve_cubic_angle_equation(std::sqrt(3.0 / (D + 2)));
    return out;
}

inline StateVector qutrit_fiducial(double phi) {
    StateVector v(3, Complex(0, 0));
    v[0] = std::cos(phi);
    v[1] = -std::sin(phi);
    return v;
}

// ---------------------------------------------------------------------------
// kappa_{d,k} and friends (d = 1 mod 3)

// kappa_{d,k} = (s_k + 1) tilde_g(d)^{2 floor(k/3)} / d^{k + floor(k/3)},
// the common kappa on T_ns of a k-balanced magic ensemble.
inline Rational kappa_dk(int d, int k) {
    if (d % 3 != 1) throw std::domain_error("kappa_dk: requires d = 1 mod 3");
    if (k < 1) throw std::invalid_argument("kappa_dk: k >= 1");
    const int sk = k % 3;
    const BigInt gsq = static_cast<long long>(tilde_g(d).s) * tilde_g(d).s;
    return Rational((sk + 1) * big_pow(gsq, k / 3), big_pow(d, k + k / 3));
}

inline double gammaB_dk(int d, int k) {
    return std::pow(4.0, (k + 2) / 3.0) * (d - 2) / std::pow(static_cast<double>(d), k);
}

// k*(d,n): least k with kappa_{d,k} <= 3/(D+2) (no k <= n restriction).
inline int k_star(int d, int n) {
    if (d % 3 != 1) throw std::domain_error("k_star: requires d = 1 mod 3");
    const BigInt gsq = static_cast<long long>(tilde_g(d).s) * tilde_g(d).s;
    const BigInt Dp2 = big_pow(d, n) + 2;
    // compare (s_k+1) gsq^{floor(k/3)} (D+2) <= 3 d^{k + floor(k/3)} incrementally
    BigInt gpow = 1;          // gsq^{floor(k/3)}
    BigInt dpow = BigInt(d);  // d^{k + floor(k/3)} at k = 1
    for (int k = 1;; ++k) {
        if (k > 1) {
            dpow *= d;
            if (k % 3 == 0) {
                dpow *= d;
                gpow *= gsq;
            }
        }
        const BigInt lhs = BigInt((k % 3) + 1) * gpow * Dp2;
        if (lhs <= 3 * dpow) return k;
    }
}

// S(d) = {n : k*(d,n) <= n}. For tilde_g^2 <= d the set is all n except 2;
// otherwise it is finite and a scan up to ceil(d ln 3) + 5 is exhaustive.
struct SSet {
    bool all_but_two = false;    // S(d) = N \ {2}
    std::vector<int> elements;   // explicit members (finite case, or a truncation)
};

inline int s_set_scan_bound(int d) {
    return std::max(30, static_cast<int>(std::ceil(d * std::log(3.0))) + 5);
}

inline SSet s_set(int d, int n_max = -1) {
    if (d % 3 != 1) throw std::domain_error("s_set: requires d = 1 mod 3");
    if (n_max < 0) n_max = s_set_scan_bound(d);
    const BigInt gsq = static_cast<long long>(tilde_g(d).s) * tilde_g(d).s;
    SSet out;
    out.all_but_two = (gsq <= d);
    // kappa_{d,k} is strictly decreasing in k (the ratio is (s_k+2)/((s_k+1)d)
    // within a residue block and g~^2/(3d^2) across blocks, both < 1), so
    // k*(d,n) is nondecreasing in n and one incremental sweep suffices.
    int k = 1;
    BigInt gpow = 1, dpow = BigInt(d), D = BigInt(d);
    for (int n = 1; n <= n_max; ++n) {
        const BigInt Dp2 = D + 2;
        while (BigInt((k % 3) + 1) * gpow * Dp2 > 3 * dpow) {
            ++k;
            dpow *= d;
            if (k % 3 == 0) {
                dpow *= d;
                gpow *= gsq;
            }
        }
        if (k <= n) out.elements.push_back(n);
        D *= d;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Balanced magic ensembles

// The k-balanced ensemble built from f_j = nu^j x^3: one state when
// k = 0 mod 3, otherwise a uniform mixture of three states.
inline EnsembleSpec balanced_ensemble(int d, int n, int k) {
    if (d % 3 != 1) throw std::domain_error("balanced_ensemble: requires d = 1 mod 3");
    if (k < 1 || k > n) throw std::invalid_argument("balanced_ensemble: need 1 <= k <= n");
    const PrimeField& F = FieldContext::get(d).field();
    auto f_of = [&](int j) {
        CubicFunction f;
        f.d = d;
        f.c3 = F.pow(F.nu(), j % 3);
        return f;
    };
    auto base_state = [&](std::vector<int> lead) {
        MagicStateSpec spec;
        spec.d = d;
        spec.n = n;
        for (int j : lead) spec.factors.push_back(f_of(j));
        for (int t = 0; t < k / 3; ++t)
            for (int j = 0; j < 3; ++j) spec.factors.push_back(f_of(j));
        if (spec.k() != k) throw std::logic_error("balanced_ensemble: factor bookkeeping");
        return spec;
    };
    EnsembleSpec ens;
    const int sk = k % 3;
    if (sk == 0) {
        ens.members.emplace_back(base_state({}), 1.0);
    } else {
        for (int j = 0; j < 3; ++j) {
            std::vector<int> lead;
            if (sk == 1) lead = {j};
            else lead = {(j + 1) % 3, (j + 2) % 3};
            ens.members.emplace_back(base_state(lead), 1.0 / 3.0);
        }
    }
    return ens;
}

// ---------------------------------------------------------------------------
// Design recipes

// A design: weighted orbits plus the certification of what the mixture
// achieves. The stabilizer orbit appears as a member with no factors.
struct DesignOrbit {
    MagicStateSpec fiducial;  // k = 0 encodes the stabilizer orbit
    double weight = 0;
    std::optional<Rational> exact_weight;
};

struct DesignRecipe {
    int d = 0, n = 0;
    std::vector<DesignOrbit> orbits;
    bool exact = false;
    // approximate-design certificates (valid when !exact)
    double phi3_minus_1 = 0;
    double qnorm_upper = 1;
    double dev_upper = 0;
    double shadow_upper = 0;

    int orbit_count() const { return static_cast<int>(orbits.size()); }
};

// Exact 3-design from a k-balanced magic ensemble mixed with the stabilizer
// orbit at the probability p that cancels kappa-hat on T_def; exists iff
// kappa_{d,k} <= 3/(D+2), certified in rational arithmetic.
inline std::optional<DesignRecipe> exact_design_balanced(int d, int n, int k) {
    if (d % 3 != 1) throw std::domain_error("exact_design_balanced: requires d = 1 mod 3");
    const Rational kap = kappa_dk(d, k);
    const Rational target(3, big_pow(d, n) + 2);
    if (kap > target) return std::nullopt;
    // (1-p) kappa + p * 1 = 3/(D+2)  =>  p = (3/(D+2) - kappa) / (1 - kappa)
    const Rational p = (target - kap) / (Rational(1) - kap);
    DesignRecipe r;
    r.d = d;
    r.n = n;
    r.exact = true;
    const EnsembleSpec ens = balanced_ensemble(d, n, k);
    for (const auto& [spec, w] : ens.members) {
        DesignOrbit o;
        o.fiducial = spec;
        const Rational wr = (Rational(1) - p) * Rational(static_cast<long long>(std::lround(w * 3)) , 3);
        o.weight = (1 - p.to_double()) * w;
        o.exact_weight = wr;
        r.orbits.push_back(std::move(o));
    }
    DesignOrbit stab;
    stab.fiducial.d = d;
    stab.fiducial.n = n;
    stab.weight = p.to_double();
    stab.exact_weight = p;
    r.orbits.push_back(std::move(stab));
    return r;
}

// Exact 3-design for d = 2 mod 3 (magic orbit + stabilizer orbit), only
// n = k = 1, d >= 5.
inline std::optional<DesignRecipe> exact_design_d2mod3(int d, int n, int k) {
    const auto w = exact_weight_d2mod3(d, n, k);
    if (!w) return std::nullopt;
    DesignRecipe r;
    r.d = d;
    r.n = n;
    r.exact = true;
    DesignOrbit magic;
    magic.fiducial.d = d;
    magic.fiducial.n = n;
    for (int i = 0; i < k; ++i) magic.fiducial.factors.push_back(CubicFunction::canonical(d));
    magic.weight = 1 - w->to_double();
    magic.exact_weight = Rational(1) - *w;
    r.orbits.push_back(std::move(magic));
    DesignOrbit stab;
    stab.fiducial.d = d;
    stab.fiducial.n = n;
    stab.weight = w->to_double();
    stab.exact_weight = *w;
    r.orbits.push_back(std::move(stab));
    return r;
}

// Two-orbit accurate approximate design: mixes orb(E) with the stabilizer
// orbit at the p that cancels kappa-hat on T_def. Requires
// kappa-hat(E, T_def) <= 0 (otherwise the caller should raise k).
inline DesignRecipe two_orbit_accurate_design(const EnsembleSpec& ens,
                                              const std::optional<MagicContext>& magic = {}) {
    const KappaProfile prof = kappa_profile(ens);
    const double D = prof.D;
    const int d = prof.d();
    const double hat_def = prof.hat_def();
    if (hat_def > 0)
        throw std::invalid_argument("two_orbit_accurate_design: kappa-hat(E, T_def) > 0; raise k");
    // (1-p) hat_def + p (D+2)/(D+d) = 0
    const double stab_hat = (D + 2) / (D + d);
    const double p = -hat_def / (stab_hat - hat_def);

    DesignRecipe r;
    r.d = d;
    r.n = prof.n;
    r.exact = false;
    for (const auto& [spec, w] : ens.members) {
        DesignOrbit o;
        o.fiducial = spec;
        o.weight = (1 - p) * w;
        r.orbits.push_back(std::move(o));
    }
    DesignOrbit stab;
    stab.fiducial.d = d;
    stab.fiducial.n = prof.n;
    stab.weight = p;
    r.orbits.push_back(std::move(stab));

    // certificates from the mixed profile
    const double kappa_min = prof.kappa_def();
    double kappa_prime_ns = 0;
    for (std::size_t i = 0; i < prof.kappa.size(); ++i)
        if (!(*prof.catalog)[i].sym) kappa_prime_ns += prof.kappa[i] - kappa_min;
    r.qnorm_upper = 1 + (1 - p) * kappa_prime_ns / 6.0;
    r.dev_upper = (1 - p) * (D + 5) * kappa_prime_ns / (6.0 * (D - 1));
    KappaProfile mixed = mix_profiles({{prof, 1 - p}, {stabilizer_profile(d, prof.n), p}});
    r.phi3_minus_1 = frame_potential3(mixed) - 1;
    r.shadow_upper = shadow_norm_ensemble_bounds(mixed, magic).second;
    return r;
}

} // namespace qdl
