#pragma once

// Closed-form third-moment statistics of magic and stabilizer Clifford
// orbits: the expansion coefficients kappa and kappa-hat over Sigma(d),
// frame potentials, moment-operator spectra and norms, and shadow norms.
// Everything in this header is analytic; the matching brute-force numbers
// live in oracle.hpp.

#include "qdl/charsums.hpp"
#include "qdl/lagrangian.hpp"
#include "qdl/matrix.hpp"
#include "qdl/rational.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qdl {

// ---------------------------------------------------------------------------
// Magic-state descriptions

// The cubic function behind a T gate. For d >= 5 an ordinary cubic
// polynomial over F_d with c3 != 0; for d = 3 the function
// f(u) = c3 u^3 + 3 c2 u^2 from F_3 to Z_9 with c3 != 0 mod 3.
struct CubicFunction {
    int d = 5;
    int c3 = 1, c2 = 0, c1 = 0, c0 = 0;

    static CubicFunction canonical(int d) {
        CubicFunction f;
        f.d = d;
        f.c3 = 1;
        return f;
    }

    void validate() const {
        if (!is_prime(d) || d == 2) throw std::invalid_argument("CubicFunction: d must be an odd prime");
        if (d == 3) {
            if (c3 % 3 == 0 || c3 < 0 || c3 > 8) throw std::invalid_argument("CubicFunction: d=3 needs c3 in Z_9, c3 != 0 mod 3");
            if (c2 < 0 || c2 > 2 || c1 != 0 || c0 != 0) throw std::invalid_argument("CubicFunction: d=3 form is c3 u^3 + 3 c2 u^2");
        } else if (c3 % d == 0) {
            throw std::invalid_argument("CubicFunction: cubic coefficient must be nonzero");
        }
    }

    // f(u) mod d, defined for d >= 5 (used by solution counting).
    std::vector<int> values_mod_d() const {
        validate();
        if (d == 3) throw std::domain_error("CubicFunction: values_mod_d needs d >= 5");
        std::vector<int> v(d);
        for (int u = 0; u < d; ++u) {
            std::int64_t acc = ((static_cast<std::int64_t>(c3) * u % d * u % d * u) + (static_cast<std::int64_t>(c2) * u % d * u) +
                                (static_cast<std::int64_t>(c1) * u) + c0) % d;
            v[u] = static_cast<int>((acc % d + d) % d);
        }
        return v;
    }

    // |psi_f> = T_f |+>; phases use omega_d for d >= 5 and omega_9 for d = 3.
    StateVector state() const {
        validate();
        StateVector psi(d);
        const double scale = 1.0 / std::sqrt(static_cast<double>(d));
        if (d == 3) {
            for (int u = 0; u < 3; ++u) {
                const int expo = (c3 * u * u * u + 3 * c2 * u * u) % 9;
                const double angle = 2.0 * std::numbers::pi * expo / 9.0;
                psi[u] = scale * Complex(std::cos(angle), std::sin(angle));
            }
        } else {
            const auto vals = values_mod_d();
            for (int u = 0; u < d; ++u) {
                const double angle = 2.0 * std::numbers::pi * vals[u] / d;
                psi[u] = scale * Complex(std::cos(angle), std::sin(angle));
            }
        }
        return psi;
    }
};

// |Psi> = psi_{f_1} (x) ... (x) psi_{f_k} (x) |0>^{(x)(n-k)}.
struct MagicStateSpec {
    int d = 5;
    int n = 1;
    std::vector<CubicFunction> factors;  // k <= n entries

    int k() const { return static_cast<int>(factors.size()); }

    void validate() const {
        if (k() > n) throw std::invalid_argument("MagicStateSpec: k exceeds n");
        for (const auto& f : factors) {
            if (f.d != d) throw std::invalid_argument("MagicStateSpec: factor dimension mismatch");
            f.validate();
        }
    }

    // class vector C(Psi): counts of factors by cubic character of the cubic
    // coefficient (d = 1 mod 3 only; all factors count as class 0 otherwise).
    std::array<int, 3> class_vector() const {
        std::array<int, 3> c{0, 0, 0};
        if (d % 3 != 1) {
            c[0] = k();
            return c;
        }
        const PrimeField& F = FieldContext::get(d).field();
        for (const auto& f : factors) ++c[F.index(f.c3 % d)];
        return c;
    }

    // Tensor factors as explicit states (magic factors first, then |0>).
    std::vector<StateVector> factor_states() const {
        validate();
        std::vector<StateVector> out;
        for (const auto& f : factors) out.push_back(f.state());
        StateVector zero(d, Complex(0, 0));
        zero[0] = 1;
        for (int i = k(); i < n; ++i) out.push_back(zero);
        return out;
    }
};

// Weighted list of magic states (weights nonnegative, summing to 1).
struct EnsembleSpec {
    std::vector<std::pair<MagicStateSpec, double>> members;

    void validate() const {
        if (members.empty()) throw std::invalid_argument("EnsembleSpec: empty ensemble");
        double total = 0;
        for (const auto& [spec, w] : members) {
            spec.validate();
            if (w < 0) throw std::invalid_argument("EnsembleSpec: negative weight");
            total += w;
        }
        if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("EnsembleSpec: weights must sum to 1");
    }
};

// ---------------------------------------------------------------------------
// kappa and kappa-hat profiles

// kappa(psi_f, T) in closed form: 1 on T_sym; 2/d on T_ns when d != 1 mod 3;
// g^2(3, a c)/d^2 with eta_3(a) = eta_3(T) when d = 1 mod 3.
inline double kappa_single(const CubicFunction& f, const StochLagrangian& t) {
    f.validate();
    const int d = f.d;
    if (t.sym) return 1.0;
    if (d % 3 != 1) return 2.0 / d;
    const auto& ctx = FieldContext::get(d);
    const int class_of_c = ctx.field().index(f.c3 % d);
    const double g = ctx.sums().g3_class(t.cubic_exponent + class_of_c);
    return g * g / (static_cast<double>(d) * d);
}

// The three values kappa_j(f) = g^2(3, 3 nu^j c)/d^2, j = 0, 1, 2.
inline std::array<double, 3> kappa_classes(const CubicFunction& f) {
    if (f.d % 3 != 1) throw std::domain_error("kappa_classes: requires d = 1 mod 3");
    const auto& ctx = FieldContext::get(f.d);
    const int base = ctx.field().index(3 % f.d) + ctx.field().index(f.c3 % f.d);
    std::array<double, 3> out{};
    for (int j = 0; j < 3; ++j) {
        const double g = ctx.sums().g3_class(base + j);
        out[j] = g * g / (static_cast<double>(f.d) * f.d);
    }
    return out;
}

// Expansion coefficients of one orbit (or mixture of orbits) over Sigma(d),
// plus the derived kappa-hat data.
struct KappaProfile {
    std::shared_ptr<const SigmaCatalog> catalog;
    int n = 1;
    double D = 0;  // d^n
    std::vector<double> kappa;  // aligned with catalog order

    int d() const { return catalog->d(); }

    double sum(const std::vector<std::size_t>& idx, int power = 1) const {
        double s = 0;
        for (auto i : idx) s += std::pow(kappa[i], power);
        return s;
    }
    double abs_sum(const std::vector<std::size_t>& idx) const {
        double s = 0;
        for (auto i : idx) s += std::abs(kappa[i]);
        return s;
    }

    double kappa_sigma(int power = 1) const {
        double s = 0;
        for (double k : kappa) s += std::pow(k, power);
        return s;
    }
    double kappa_ns() const {
        double s = 0;
        for (std::size_t i = 0; i < kappa.size(); ++i)
            if (!(*catalog)[i].sym) s += kappa[i];
        return s;
    }
    double kappa_def() const {
        // common value on T_def (d != 2 mod 3); 0 when T_def is empty
        for (std::size_t i = 0; i < kappa.size(); ++i)
            if ((*catalog)[i].defect) return kappa[i];
        return 0;
    }

    double hat(std::size_t i) const {
        return (D + 2) / (D - 1) * (kappa[i] - kappa_sigma() / (2 * D + 2 * d()));
    }
    double hat_delta() const { return hat(catalog->index_of(catalog->delta_id())); }
    double hat_sigma() const { return (D + 2) / (D + d()) * kappa_sigma(); }
    double hat_ns() const {
        double s = 0;
        for (std::size_t i = 0; i < kappa.size(); ++i)
            if (!(*catalog)[i].sym) s += hat(i);
        return s;
    }
    double hat_abs(const std::vector<std::size_t>& idx) const {
        double s = 0;
        for (auto i : idx) s += std::abs(hat(i));
        return s;
    }
    double hat_abs_sigma() const {
        double s = 0;
        for (std::size_t i = 0; i < kappa.size(); ++i) s += std::abs(hat(i));
        return s;
    }
    double hat_abs_ns() const {
        double s = 0;
        for (std::size_t i = 0; i < kappa.size(); ++i)
            if (!(*catalog)[i].sym) s += std::abs(hat(i));
        return s;
    }
    double hat_def() const {
        for (std::size_t i = 0; i < kappa.size(); ++i)
            if ((*catalog)[i].defect) return hat(i);
        return 0;
    }
    double hat_iso() const {
        double s = 0;
        for (std::size_t i = 0; i < kappa.size(); ++i)
            if (!(*catalog)[i].defect) s += hat(i);
        return s;
    }
    double hat_abs_iso() const {
        double s = 0;
        for (std::size_t i = 0; i < kappa.size(); ++i)
            if (!(*catalog)[i].defect) s += std::abs(hat(i));
        return s;
    }

    bool balanced(double tol = 1e-12) const {
        std::optional<double> common;
        for (std::size_t i = 0; i < kappa.size(); ++i) {
            if ((*catalog)[i].sym) continue;
            if (!common) common = kappa[i];
            else if (std::abs(*common - kappa[i]) > tol) return false;
        }
        return true;
    }
};

inline std::shared_ptr<const SigmaCatalog> shared_catalog(int d) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const SigmaCatalog>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(d);
    if (it == cache.end()) it = cache.emplace(d, std::make_shared<SigmaCatalog>(d)).first;
    return it->second;
}

inline KappaProfile kappa_profile(const MagicStateSpec& spec) {
    spec.validate();
    KappaProfile p;
    p.catalog = shared_catalog(spec.d);
    p.n = spec.n;
    p.D = std::pow(static_cast<double>(spec.d), spec.n);
    p.kappa.resize(p.catalog->size());
    for (std::size_t i = 0; i < p.catalog->size(); ++i) {
        const auto& t = (*p.catalog)[i];
        double prod = 1;
        for (const auto& f : spec.factors) prod *= kappa_single(f, t);
        p.kappa[i] = prod;  // |0> factors contribute 1
    }
    return p;
}

inline KappaProfile kappa_profile(const EnsembleSpec& ens) {
    ens.validate();
    KappaProfile total = kappa_profile(ens.members.front().first);
    for (auto& k : total.kappa) k *= ens.members.front().second;
    for (std::size_t m = 1; m < ens.members.size(); ++m) {
        const KappaProfile p = kappa_profile(ens.members[m].first);
        if (p.catalog != total.catalog || p.n != total.n)
            throw std::invalid_argument("kappa_profile: ensemble members must share (d, n)");
        for (std::size_t i = 0; i < total.kappa.size(); ++i)
            total.kappa[i] += ens.members[m].second * p.kappa[i];
    }
    return total;
}

// Profile of the stabilizer orbit: kappa = 1 everywhere.
inline KappaProfile stabilizer_profile(int d, int n) {
    KappaProfile p;
    p.catalog = shared_catalog(d);
    p.n = n;
    p.D = std::pow(static_cast<double>(d), n);
    p.kappa.assign(p.catalog->size(), 1.0);
    return p;
}

// Profile measured from explicit single-qudit tensor factors (oracle path;
// needs oracle.hpp's kappa_bruteforce for the per-factor traces).
inline KappaProfile mix_profiles(const std::vector<std::pair<KappaProfile, double>>& parts) {
    if (parts.empty()) throw std::invalid_argument("mix_profiles: empty");
    KappaProfile total = parts.front().first;
    for (auto& k : total.kappa) k *= parts.front().second;
    for (std::size_t m = 1; m < parts.size(); ++m) {
        for (std::size_t i = 0; i < total.kappa.size(); ++i)
            total.kappa[i] += parts[m].second * parts[m].first.kappa[i];
    }
    return total;
}

// ---------------------------------------------------------------------------
// Frame potential

// Phi-bar_3(orb) = (1/6) sum_T kappa(T) kappa-hat(T); >= 1 with equality
// exactly on 3-designs.
inline double frame_potential3(const KappaProfile& p) {
    double s = 0;
    for (std::size_t i = 0; i < p.kappa.size(); ++i) s += p.kappa[i] * p.hat(i);
    return s / 6.0;
}

inline double frame_potential3_stab(int d, int n) {
    const double D = std::pow(static_cast<double>(d), n);
    return (d + 1) * (D + 2) / (3.0 * (D + d));
}

// ---------------------------------------------------------------------------
// Moment spectra and norms

struct SpectrumLine {
    double value = 0;
    double multiplicity = 0;
};

struct MomentSummary {
    int d = 0;
    int n = 0;
    double D = 0;
    std::vector<SpectrumLine> spectrum;  // within Sym_3, descending by value
    double phi3 = 1;
    double qnorm_lower = 1, qnorm_upper = 1;
    bool qnorm_exact = true;
    double dev_lower = 0, dev_upper = 0;  // ||Q-bar - P_sym||
    bool dev_exact = true;
    double shadow_lower = 0, shadow_upper = 0;  // ensemble shadow norm
    std::optional<Rational> kappa_ns_exact;     // common kappa on T_ns when rational
};

inline double dim_sym3(double D) { return D * (D + 1) * (D + 2) / 6.0; }

// Spectrum of Q-bar(n,d,3) within Sym_3 (d = 2 degenerates to P_sym).
inline MomentSummary stab_moment_spectrum(int n, int d) {
    if (!is_prime(d)) throw std::invalid_argument("stab_moment_spectrum: d must be prime");
    MomentSummary s;
    s.d = d;
    s.n = n;
    const double D = std::pow(static_cast<double>(d), n);
    s.D = D;
    s.phi3 = frame_potential3_stab(d, n);
    const double sym_dim = dim_sym3(D);
    if (d == 2) {
        s.spectrum = {{1.0, sym_dim}};
        s.qnorm_lower = s.qnorm_upper = 1;
        s.dev_lower = s.dev_upper = 0;
        s.shadow_lower = s.shadow_upper = (3 * D - 2) * (D + 1) / (D * (D + 2));
        return s;
    }
    if (d == 3) {
        const double l1 = (D + 2) / 3.0, m1 = (D + 1) / 2.0;
        const double l2 = (D + 2) / (D + 3), m2 = sym_dim - m1;
        s.spectrum = {{l1, m1}, {l2, m2}};
        s.qnorm_lower = s.qnorm_upper = l1;
        s.dev_lower = s.dev_upper = (D - 1) / 3.0;
    } else if (d % 3 == 1) {
        const double l1 = (D + 2) / 3.0, m1 = D;
        const double rank = D * (D + 1) * (D + d - 2) / (2.0 * d - 2);
        const double l2 = (d - 1) * (D + 2) / (3.0 * (D + d)), m2 = rank - D;
        s.spectrum = {{l1, m1}, {l2, m2}, {0.0, sym_dim - rank}};
        s.qnorm_lower = s.qnorm_upper = l1;
        s.dev_lower = s.dev_upper = (D - 1) / 3.0;
    } else {
        const double l1 = (d + 1) * (D + 2) / (3.0 * (D + d));
        const double m1 = D * (D + 1) * (D + d) / (2.0 * d + 2);
        s.spectrum = {{l1, m1}, {0.0, sym_dim - m1}};
        s.qnorm_lower = s.qnorm_upper = l1;
        s.dev_lower = s.dev_upper = (d == 5) ? 1.0 : l1 - 1.0;
    }
    const double shadow_ub = (D + 1) * (2.0 * d - 1) / (D + d);
    s.shadow_lower = (D + 1) / (D + d) * (2.0 * d - 1 - d / D);
    s.shadow_upper = shadow_ub;
    s.kappa_ns_exact = Rational(1);
    return s;
}

// Spectrum of Q-bar(orb(E)) for a balanced ensemble with common value
// kappaE on T_ns.
inline MomentSummary balanced_moment_spectrum(double kappaE, int n, int d) {
    if (!is_prime(d) || d == 2) throw std::invalid_argument("balanced_moment_spectrum: d must be an odd prime");
    MomentSummary s;
    s.d = d;
    s.n = n;
    const double D = std::pow(static_cast<double>(d), n);
    s.D = D;
    const double sym_dim = dim_sym3(D);
    const double gap = kappaE - 3.0 / (D + 2);
    s.phi3 = 1 + (d - 2) * (D + 2) * (D + 2) / (3.0 * (D - 1) * (D + d)) * gap * gap;

    const double l1_high = (D + 2) / 3.0 * kappaE;  // common top eigenvalue for d != 2 mod 3
    if (d == 3) {
        const double hat_delta = 1 - (d - 2) * (D + 2) / ((D - 1) * (D + d)) * gap;
        const double m1 = (D + 1) / 2.0;
        s.spectrum = {{l1_high, m1}, {hat_delta, sym_dim - m1}};
        s.qnorm_lower = s.qnorm_upper = (kappaE >= 3.0 / (D + 2)) ? l1_high : hat_delta;
        s.dev_lower = s.dev_upper = std::abs(l1_high - 1);
    } else if (d % 3 == 1) {
        const double m1 = D;
        const double rank = D * (D + 1) * (D + d - 2) / (2.0 * d - 2);
        const double l2 = (D + 2) / (D + d) *
                          ((d * D - 4 * D - d - 2) / (3.0 * (D - 1)) * kappaE + (D + 1) / (D - 1));
        const double l3 = (D + 2) / (D - 1) * (1 - kappaE);
        s.spectrum = {{l1_high, m1}, {l2, rank - D}, {l3, sym_dim - rank}};
        s.qnorm_lower = s.qnorm_upper = (kappaE >= 3.0 / (D + 2)) ? l1_high : l3;
        s.dev_lower = s.dev_upper = std::abs(l1_high - 1);
    } else {
        const double l1 = (d - 2) * (D + 2) / (3.0 * (D + d)) * kappaE + (D + 2) / (D + d);
        const double m1 = D * (D + 1) * (D + d) / (2.0 * d + 2);
        const double l2 = (D + 2) / (D - 1) * (1 - kappaE);
        s.spectrum = {{l1, m1}, {l2, sym_dim - m1}};
        s.qnorm_lower = s.qnorm_upper = (kappaE >= 3.0 / (D + 2)) ? l1 : l2;
        s.dev_lower = s.dev_upper = (d == 5) ? std::abs(l2 - 1) : std::abs(l1 - 1);
    }
    std::sort(s.spectrum.begin(), s.spectrum.end(),
              [](const SpectrumLine& a, const SpectrumLine& b) { return a.value > b.value; });
    // shadow bounds for balanced ensembles
    const double hatE = (D + 2) * (D + 2) / ((D - 1) * (D + d)) * gap;
    const double hat_sig = 6 + (D - 1) / (D + 2) * (2 * (d - 2) * hatE);
    s.shadow_lower = hat_sig - 3 - 5 / D;
    s.shadow_upper = 3 + 2 * (d - 2) * (D + 1) * (D + 2) / ((D - 1) * (D + d)) * std::abs(gap);
    return s;
}

// Bounds (exact when certified) on ||Q-bar(orb)|| and ||Q-bar - P_sym|| for
// an arbitrary profile.
struct MomentNormBounds {
    double lower = 0, upper = 0;
    bool exact = false;
    double dev_lower = 0, dev_upper = 0;
    bool dev_exact = false;
};

inline MomentNormBounds moment_norm_bounds(const KappaProfile& p) {
    MomentNormBounds b;
    const double D = p.D;
    const int d = p.d();
    if (p.balanced()) {
        double kappaE = 1;
        for (std::size_t i = 0; i < p.kappa.size(); ++i)
            if (!(*p.catalog)[i].sym) { kappaE = p.kappa[i]; break; }
        const MomentSummary s = balanced_moment_spectrum(kappaE, p.n, d);
        b.lower = b.upper = s.qnorm_lower;
        b.exact = true;
        b.dev_lower = b.dev_upper = s.dev_lower;
        b.dev_exact = true;
        return b;
    }
    if (d % 3 == 2) {
        const double hs = p.hat_sigma();
        b.lower = hs / 6.0;
        b.upper = p.hat_abs_sigma() / 6.0;
        b.exact = std::abs(b.upper - b.lower) < 1e-12;
        b.dev_lower = std::abs(hs / 6.0 - 1);
        b.dev_upper = (D + 5) / (6 * (D + 2)) * p.hat_abs_ns();
        b.dev_exact = false;
        return b;
    }
    const double hat_iso = p.hat_iso();
    const double hat_abs_iso = p.hat_abs_iso();
    const double def_eig = 2 * (D + 2) * p.kappa_def();
    b.lower = std::max(hat_iso, def_eig) / 6.0;
    b.upper = std::max(hat_abs_iso, def_eig) / 6.0;
    b.exact = std::abs(b.upper - b.lower) < 1e-12;
    b.dev_lower = std::max(std::abs(hat_iso / 6.0 - 1), std::abs(def_eig / 6.0 - 1));
    b.dev_upper = std::max((D + 5) / (6 * (D + 2)) * p.hat_abs_ns(), std::abs(def_eig / 6.0 - 1));
    b.dev_exact = std::abs(b.dev_upper - b.dev_lower) < 1e-12;
    return b;
}

// ---------------------------------------------------------------------------
// Shadow norms

// ||O_0||^2_Stab for a rank-K stabilizer projector, plus the ratio to
// ||O_0||_2^2.
struct StabProjectorShadow {
    double value = 0;
    double ratio = 0;
};

inline StabProjectorShadow shadow_norm_stab_projector(int n, int d, double K) {
    if (!is_prime(d)) throw std::invalid_argument("shadow_norm_stab_projector: d must be prime");
    const double D = std::pow(static_cast<double>(d), n);
    if (K < 1 || K > D / d) throw std::invalid_argument("shadow_norm_stab_projector: need 1 <= K <= D/d");
    // K should be a power of d
    double probe = 1;
    while (probe < K) probe *= d;
    if (std::abs(probe - K) > 1e-9) throw std::invalid_argument("shadow_norm_stab_projector: K must be a power of d");
    StabProjectorShadow out;
    out.value = (D + 1) * (D - K) * (d * D * K + d * D - D * K - d * K) / (D * D * (D + d));
    out.ratio = (D + 1) / (D + d) * (d - 1 - d / D + d / K);
    return out;
}

// ||O_0||^2_{orb} for a rank-K stabilizer projector against an arbitrary
// orbit profile: (D+1) max{v1, v2} / (D+2) with the two eigenvalues of
// 6 Q-bar_orb(O_0).
struct OrbitStabShadow {
    double value = 0;        // ||O_0||^2_orb
    double ratio = 0;        // value / ||O_0||_2^2
    double six_q_norm = 0;   // 6 ||Q-bar_orb(O)||, O the projector itself
    double upsilon1 = 0, upsilon2 = 0;
};

inline OrbitStabShadow shadow_norm_orbit_stab_observable(const KappaProfile& p, double K) {
    const double D = p.D;
    const int d = p.d();
    if (K < 1 || K > D / d) throw std::invalid_argument("shadow_norm_orbit_stab_observable: need 1 <= K <= D/d");
    const double hat_sigma = p.hat_sigma();
    const double hat_delta = p.hat_delta();
    OrbitStabShadow out;
    out.upsilon1 = (D - K) * (K + 1) / (2 * (D - 1)) * hat_sigma -
                   (D + 2) * (D - K) * (2 * D * K + D - K) / (D * D * (D - 1));
    out.upsilon2 = -K * (K + 1) / (2 * (D - 1)) * hat_sigma +
                   (D + 2) * K * (D * D + 2 * D * K - K) / (D * D * (D - 1));
    out.value = (D + 1) * std::max(out.upsilon1, out.upsilon2) / (D + 2);
    out.ratio = out.value / (K - K * K / D);
    out.six_q_norm = (K + 1) / 2 * hat_sigma + (K * K - 1) * hat_delta;
    return out;
}

// Lower/upper bounds for the orbit shadow norm ||orb||_sh. The optional
// magic context sharpens the upper bound for magic orbits with k >= 1.
struct MagicContext {
    int k = 0;
    bool balanced = false;
};

inline double gamma_dk(int d, int k) {
    const double gk = (k == 1) ? 9.0 / 8 : (k == 2 ? 15.0 / 16 : 13.0 / 16);
    return std::pow(4.0, k) * gk / std::pow(static_cast<double>(d), k - 1);
}

inline std::pair<double, double> shadow_norm_ensemble_bounds(const KappaProfile& p,
                                                             const std::optional<MagicContext>& magic = {}) {
    const double D = p.D;
    const int d = p.d();
    const double lower = p.hat_sigma() - 3 - 5 / D;
    double upper = (D + 1) / (D + 2) * (3 * p.hat_delta() + p.hat_abs_ns());
    upper = std::min(upper, 2.0 * d - 1);
    if (magic && magic->k >= 1) {
        if (d % 3 == 1) upper = std::min(upper, 3 + gamma_dk(d, magic->k));
        else upper = std::min(upper, 3 + std::pow(2.0, magic->k + 1) * (d - 2) / std::pow(static_cast<double>(d), magic->k));
    }
    return {lower, upper};
}

// MomentSummary for an arbitrary magic-state or ensemble profile.
inline MomentSummary moment_summary(const KappaProfile& p, const std::optional<MagicContext>& magic = {}) {
    MomentSummary s;
    s.d = p.d();
    s.n = p.n;
    s.D = p.D;
    s.phi3 = frame_potential3(p);
    if (p.balanced()) {
        double kappaE = 1;
        for (std::size_t i = 0; i < p.kappa.size(); ++i)
            if (!(*p.catalog)[i].sym) { kappaE = p.kappa[i]; break; }
        s = balanced_moment_spectrum(kappaE, p.n, s.d);
        s.phi3 = frame_potential3(p);
    } else {
        const MomentNormBounds b = moment_norm_bounds(p);
        s.qnorm_lower = b.lower;
        s.qnorm_upper = b.upper;
        s.qnorm_exact = b.exact;
        s.dev_lower = b.dev_lower;
        s.dev_upper = b.dev_upper;
        s.dev_exact = b.dev_exact;
    }
    const auto [lo, hi] = shadow_norm_ensemble_bounds(p, magic);
    s.shadow_lower = lo;
    s.shadow_upper = hi;
    return s;
}

} // namespace qdl
