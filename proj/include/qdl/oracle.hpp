#pragma once

// Brute-force ground truth: explicit r(T)/R(T) operators, stabilizer-state
// and single-qudit Clifford-group enumeration, exact moment operators,
// shadow maps, Gram matrices, and cubic-equation solution counts on
// stochastic Lagrangian subspaces. Everything here is meant to be checked
// against the closed forms, so the implementations stay as literal as the
// size caps allow.

#include "qdl/lagrangian.hpp"
#include "qdl/matrix.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace qdl {

// ---------------------------------------------------------------------------
// r(T) as a sparse pair list

// Encoded (x_index, y_index) pairs of r(T) = sum |x><y|, with
// x_index = x1 d^2 + x2 d + x3.
struct RPairs {
    int d = 0;
    std::vector<std::pair<int, int>> pairs;
};

inline RPairs r_pairs(const SigmaCatalog& cat, const StochLagrangian& t) {
    RPairs r;
    r.d = cat.d();
    const int d = cat.d();
    r.pairs.reserve(static_cast<std::size_t>(d) * d * d);
    cat.for_each_vector(t, [&](const std::array<int, 6>& w) {
        const int x = (w[0] * d + w[1]) * d + w[2];
        const int y = (w[3] * d + w[4]) * d + w[5];
        r.pairs.emplace_back(x, y);
    });
    return r;
}

inline DenseMatrix r_matrix(const SigmaCatalog& cat, const StochLagrangian& t) {
    const int d = cat.d();
    DenseMatrix m(d * d * d);
    for (const auto& [x, y] : r_pairs(cat, t).pairs) m(x, y) += 1;
    return m;
}

inline void add_r_matrix(DenseMatrix& acc, const SigmaCatalog& cat, const StochLagrangian& t, double w) {
    for (const auto& [x, y] : r_pairs(cat, t).pairs) acc(x, y) += w;
}

// |T1 cap T2| counted literally on the d^3-element vector sets; equals
// d^{dim(T1 cup T2)} only through the theory, which is exactly what the
// tests want to confirm.
inline std::int64_t pair_intersection_count(const SigmaCatalog& cat, const StochLagrangian& a,
                                            const StochLagrangian& b) {
    const int d = cat.d();
    std::unordered_set<std::int64_t> set_a;
    set_a.reserve(static_cast<std::size_t>(d) * d * d * 2);
    cat.for_each_vector(a, [&](const std::array<int, 6>& w) {
        std::int64_t key = 0;
        for (int i = 0; i < 6; ++i) key = key * d + w[i];
        set_a.insert(key);
    });
    std::int64_t count = 0;
    cat.for_each_vector(b, [&](const std::array<int, 6>& w) {
        std::int64_t key = 0;
        for (int i = 0; i < 6; ++i) key = key * d + w[i];
        if (set_a.count(key)) ++count;
    });
    return count;
}

// Gram matrix of {R(T)}: entries tr[R(Ti)^dag R(Tj)] = |Ti cap Tj|^n.
inline DenseMatrix gram_matrix(const SigmaCatalog& cat, int n) {
    const int m = static_cast<int>(cat.size());
    DenseMatrix g(m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            double e = 1;
            const std::int64_t base = pair_intersection_count(cat, cat[i], cat[j]);
            for (int k = 0; k < n; ++k) e *= static_cast<double>(base);
            g(i, j) = e;
            g(j, i) = e;
        }
    return g;
}

inline int gram_rank(const SigmaCatalog& cat, int n, double rel_threshold = 1e-6) {
    const auto eig = hermitian_eigenvalues(gram_matrix(cat, n));
    double top = 0;
    for (double e : eig) top = std::max(top, std::abs(e));
    int rank = 0;
    for (double e : eig)
        if (std::abs(e) > rel_threshold * top) ++rank;
    return rank;
}

// ---------------------------------------------------------------------------
// Weyl operators and stabilizer states

inline DenseMatrix weyl(int d, int p, int q) {
    const PrimeField F(d);
    const int inv2 = F.inv(2);
    DenseMatrix w(d);
    for (int j = 0; j < d; ++j) {
        const int i = (j + q) % d;
        const std::int64_t expo = F.reduce(static_cast<std::int64_t>(p) * i - static_cast<std::int64_t>(p) * q % d * inv2);
        const double angle = 2.0 * std::numbers::pi * expo / d;
        w(i, j) = Complex(std::cos(angle), std::sin(angle));
    }
    return w;
}

// n-qudit Weyl operator labelled by (p_1..p_n, q_1..q_n).
inline DenseMatrix weyl_n(int d, const std::vector<int>& u) {
    const int n = static_cast<int>(u.size()) / 2;
    DenseMatrix w = weyl(d, u[0], u[n]);
    for (int i = 1; i < n; ++i) w = w.kron(weyl(d, u[i], u[n + i]));
    return w;
}

// All d(d+1) single-qudit stabilizer states: the computational basis plus
// the eigenbasis of X Z^a for a = 0..d-1, which together form a complete
// set of mutually unbiased bases.
inline std::vector<StateVector> stabilizer_states_1(int d) {
    const PrimeField F(d);
    const int inv2 = F.inv(2);
    std::vector<StateVector> out;
    for (int j = 0; j < d; ++j) {
        StateVector v(d, Complex(0, 0));
        v[j] = 1;
        out.push_back(std::move(v));
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            StateVector v(d);
            for (int j = 0; j < d; ++j) {
                const std::int64_t expo =
                    F.reduce(static_cast<std::int64_t>(a) * j % d * j % d * inv2 + static_cast<std::int64_t>(b) * j);
                const double angle = 2.0 * std::numbers::pi * expo / d;
                v[j] = scale * Complex(std::cos(angle), std::sin(angle));
            }
            out.push_back(std::move(v));
        }
    return out;
}

// Two-qutrit stabilizer states via maximal isotropic subspaces of F_3^4 and
// their d^2 characters: 40 * 9 = 360 states.
inline std::vector<StateVector> stabilizer_states_2_d3() {
    const int d = 3, D = 9;
    const PrimeField F(d);
    auto symplectic = [&](const std::array<int, 4>& u, const std::array<int, 4>& v) {
        // Omega = [[0, I],[-I, 0]] on (p1, p2, q1, q2)
        std::int64_t s = static_cast<std::int64_t>(u[0]) * v[2] + static_cast<std::int64_t>(u[1]) * v[3] -
                         static_cast<std::int64_t>(u[2]) * v[0] - static_cast<std::int64_t>(u[3]) * v[1];
        return F.reduce(s);
    };

    // enumerate 2-dim isotropic subspaces, deduplicated by their full point set
    std::vector<std::array<std::array<int, 4>, 2>> subspaces;
    std::unordered_set<std::int64_t> seen;
    std::vector<std::array<int, 4>> nonzero;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                for (int e = 0; e < d; ++e)
                    if (a | b | c | e) nonzero.push_back({a, b, c, e});
    for (std::size_t i = 0; i < nonzero.size(); ++i)
        for (std::size_t j = 0; j < nonzero.size(); ++j) {
            const auto& b1 = nonzero[i];
            const auto& b2 = nonzero[j];
            if (symplectic(b1, b2) != 0) continue;
            // independence
            bool dep = false;
            for (int s = 1; s < d && !dep; ++s)
                if (b2[0] == F.mul(s, b1[0]) && b2[1] == F.mul(s, b1[1]) && b2[2] == F.mul(s, b1[2]) &&
                    b2[3] == F.mul(s, b1[3]))
                    dep = true;
            if (dep) continue;
            // canonical key: sorted point set
            std::vector<std::int64_t> pts;
            for (int c1 = 0; c1 < d; ++c1)
                for (int c2 = 0; c2 < d; ++c2) {
                    std::int64_t key = 0;
                    for (int t = 0; t < 4; ++t)
                        key = key * d + F.reduce(static_cast<std::int64_t>(c1) * b1[t] + static_cast<std::int64_t>(c2) * b2[t]);
                    pts.push_back(key);
                }
            std::sort(pts.begin(), pts.end());
            std::int64_t h = 1469598103934665603LL;
            for (auto p : pts) h = (h ^ p) * 1099511628211LL;
            if (!seen.insert(h).second) continue;
            subspaces.push_back({b1, b2});
        }
    if (subspaces.size() != 40) throw std::logic_error("stabilizer_states_2_d3: expected 40 isotropic subspaces");

    std::vector<StateVector> out;
    for (const auto& sub : subspaces) {
        // cache the 9 Weyl operators of the subspace
        std::map<std::pair<int, int>, DenseMatrix> weyls;
        for (int c1 = 0; c1 < d; ++c1)
            for (int c2 = 0; c2 < d; ++c2) {
                std::vector<int> u(4);
                for (int t = 0; t < 4; ++t)
                    u[t] = F.reduce(static_cast<std::int64_t>(c1) * sub[0][t] + static_cast<std::int64_t>(c2) * sub[1][t]);
                weyls.emplace(std::make_pair(c1, c2), weyl_n(d, u));
            }
        for (int e1 = 0; e1 < d; ++e1)
            for (int e2 = 0; e2 < d; ++e2) {
                DenseMatrix proj(D);
                for (const auto& [key, w] : weyls) {
                    const int phase = F.reduce(static_cast<std::int64_t>(e1) * key.first + static_cast<std::int64_t>(e2) * key.second);
                    const double angle = 2.0 * std::numbers::pi * phase / d;
                    DenseMatrix scaled = w;
                    scaled *= Complex(std::cos(angle), std::sin(angle)) * Complex(1.0 / D, 0);
                    proj += scaled;
                }
                // extract the unique state in the rank-1 range
                StateVector psi;
                for (int col = 0; col < D && psi.empty(); ++col) {
                    StateVector cand(D);
                    double nrm = 0;
                    for (int r = 0; r < D; ++r) {
                        cand[r] = proj(r, col);
                        nrm += std::norm(cand[r]);
                    }
                    if (nrm > 1e-6) {
                        normalize(cand);
                        psi = std::move(cand);
                    }
                }
                if (psi.empty()) throw std::logic_error("stabilizer_states_2_d3: projector has empty range");
                out.push_back(std::move(psi));
            }
    }
    return out;
}

inline std::vector<StateVector> enumerate_stabilizer_states(int n, int d) {
    if (n == 1) {
        if (d > 13 || !is_prime(d) || d == 2) throw std::invalid_argument("enumerate_stabilizer_states: n=1 needs odd prime d <= 13");
        return stabilizer_states_1(d);
    }
    if (n == 2 && d == 3) return stabilizer_states_2_d3();
    throw std::invalid_argument("enumerate_stabilizer_states: unsupported size");
}

// ---------------------------------------------------------------------------
// Moment operators

inline DenseMatrix moment_operator(const std::vector<StateVector>& states, int t) {
    if (states.empty()) throw std::invalid_argument("moment_operator: no states");
    if (t < 1 || t > 3) throw std::invalid_argument("moment_operator: t must be 1, 2, or 3");
    const int D = static_cast<int>(states[0].size());
    // dense-matrix budget: the t-partite dimension D^t stays below ~10^6
    if (std::pow(static_cast<double>(D), t) > 1.0e6)
        throw std::invalid_argument("moment_operator: D^t exceeds the dense-matrix cap");
    int M = 1;
    for (int i = 0; i < t; ++i) M *= D;
    DenseMatrix q(M);
    const double w = 1.0 / static_cast<double>(states.size());
    for (const auto& psi : states) {
        if (t == 3) {
            accumulate_outer3(q, psi, w);
        } else {
            StateVector amp = psi;
            if (t == 2) amp = kron(psi, psi);
            for (int r = 0; r < M; ++r)
                for (int c = 0; c < M; ++c) q(r, c) += w * amp[r] * std::conj(amp[c]);
        }
    }
    return q;
}

// ---------------------------------------------------------------------------
// Single-qudit Clifford group (projective): all W(p,q) V_S with S in SL(2,d)

struct CliffordGroup {
    int d = 0;
    std::vector<std::array<int, 4>> sl_labels;  // (alpha, beta; gamma, delta), det = 1
    std::vector<DenseMatrix> sl_unitaries;      // fixed metaplectic lifts, one per label

    std::size_t size() const { return sl_labels.size() * static_cast<std::size_t>(d) * d; }

    // element (s, p, q) -> W(p,q) V_S
    DenseMatrix element(std::size_t s, int p, int q) const { return weyl(d, p, q).mul(sl_unitaries[s]); }
};

inline DenseMatrix fourier_matrix(int d) {
    DenseMatrix f(d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
            const double angle = 2.0 * std::numbers::pi * (static_cast<std::int64_t>(j) * k % d) / d;
            f(j, k) = scale * Complex(std::cos(angle), std::sin(angle));
        }
    return f;
}

inline CliffordGroup enumerate_clifford_group(int d) {
    if (d != 3 && d != 5 && d != 7) throw std::invalid_argument("enumerate_clifford_group: supported d are 3, 5, 7");
    const PrimeField F(d);
    const int inv2 = F.inv(2);

    // generators with exact SL(2,d) labels:
    //   Fourier        F : (0, 1; -1, 0)
    //   phase gate     P : (1, 0; 1, 1),  P|j> = w^{j(j-1)/2} |j>
    //   multiplication M_nu : (nu^{-1}, 0; 0, nu),  M|j> = |nu j>
    std::vector<std::array<int, 4>> gen_labels;
    std::vector<DenseMatrix> gen_mats;
    gen_labels.push_back({0, 1, F.neg(1), 0});
    gen_mats.push_back(fourier_matrix(d));
    DenseMatrix phase(d);
    for (int j = 0; j < d; ++j) {
        const int expo = F.reduce(static_cast<std::int64_t>(j) * (j - 1) % d * inv2);
        const double angle = 2.0 * std::numbers::pi * expo / d;
        phase(j, j) = Complex(std::cos(angle), std::sin(angle));
    }
    // P fixes Z and maps X to (a phase times) W(1,1)
    gen_labels.push_back({1, 1, 0, 1});
    gen_mats.push_back(phase);
    const int nu = F.nu();
    DenseMatrix mult(d);
    for (int j = 0; j < d; ++j) mult(F.mul(nu, j), j) = 1;
    gen_labels.push_back({F.inv(nu), 0, 0, nu});
    gen_mats.push_back(mult);

    auto label_mul = [&](const std::array<int, 4>& a, const std::array<int, 4>& b) {
        return std::array<int, 4>{
            F.reduce(static_cast<std::int64_t>(a[0]) * b[0] + static_cast<std::int64_t>(a[1]) * b[2]),
            F.reduce(static_cast<std::int64_t>(a[0]) * b[1] + static_cast<std::int64_t>(a[1]) * b[3]),
            F.reduce(static_cast<std::int64_t>(a[2]) * b[0] + static_cast<std::int64_t>(a[3]) * b[2]),
            F.reduce(static_cast<std::int64_t>(a[2]) * b[1] + static_cast<std::int64_t>(a[3]) * b[3])};
    };
    auto key_of = [&](const std::array<int, 4>& l) {
        return ((static_cast<std::int64_t>(l[0]) * d + l[1]) * d + l[2]) * d + l[3];
    };

    CliffordGroup g;
    g.d = d;
    std::map<std::int64_t, std::size_t> index;
    g.sl_labels.push_back({1, 0, 0, 1});
    g.sl_unitaries.push_back(DenseMatrix::identity(d));
    index[key_of(g.sl_labels[0])] = 0;
    for (std::size_t head = 0; head < g.sl_labels.size(); ++head) {
        const auto base_label = g.sl_labels[head];
        const auto base_mat = g.sl_unitaries[head];
        for (std::size_t gi = 0; gi < gen_labels.size(); ++gi) {
            const auto next = label_mul(gen_labels[gi], base_label);
            const auto key = key_of(next);
            if (index.count(key)) continue;
            index[key] = g.sl_labels.size();
            g.sl_labels.push_back(next);
            g.sl_unitaries.push_back(gen_mats[gi].mul(base_mat));
        }
    }
    const std::size_t expect = static_cast<std::size_t>(d) * (static_cast<std::size_t>(d) * d - 1);
    if (g.sl_labels.size() != expect) throw std::logic_error("enumerate_clifford_group: SL(2,d) closure has wrong size");
    return g;
}

// Third moment of the Clifford orbit of psi: the mean of (U rho U^dag)^{(x)3}
// over the projective Clifford group. The group splits into cosets
// W(p,q) V_S; the p-sum enforces sum(x) = sum(y) on matrix entries, which is
// used here to skip the entries whose average vanishes identically.
inline DenseMatrix orbit_moment(const StateVector& psi, int d) {
    const CliffordGroup g = enumerate_clifford_group(d);
    const int M = d * d * d;
    DenseMatrix q(M);

    // index buckets by residue of the coordinate sum
    std::vector<std::vector<int>> bucket(d);
    for (int x = 0; x < M; ++x) {
        const int x1 = x / (d * d), x2 = (x / d) % d, x3 = x % d;
        bucket[(x1 + x2 + x3) % d].push_back(x);
    }

    std::vector<Complex> t(M);
    for (std::size_t s = 0; s < g.sl_labels.size(); ++s) {
        StateVector phi(d, Complex(0, 0));
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) phi[r] += g.sl_unitaries[s](r, c) * psi[c];
        for (int shift = 0; shift < d; ++shift) {
            // X^shift phi, then triple-product amplitudes
            StateVector chi(d);
            for (int j = 0; j < d; ++j) chi[(j + shift) % d] = phi[j];
            int idx = 0;
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) {
                    const Complex ab = chi[a] * chi[b];
                    for (int c = 0; c < d; ++c) t[idx++] = ab * chi[c];
                }
            for (int r = 0; r < d; ++r)
                for (int x : bucket[r])
                    for (int y : bucket[r]) q(x, y) += t[x] * std::conj(t[y]);
        }
    }
    const double scale = 1.0 / (static_cast<double>(g.sl_labels.size()) * d);
    q *= scale;
    return q;
}

// Same average computed the slow way, iterating every group element.
inline DenseMatrix orbit_moment_literal(const StateVector& psi, int d) {
    const CliffordGroup g = enumerate_clifford_group(d);
    const int M = d * d * d;
    DenseMatrix q(M);
    const double w = 1.0 / static_cast<double>(g.size());
    for (std::size_t s = 0; s < g.sl_labels.size(); ++s)
        for (int p = 0; p < d; ++p)
            for (int sh = 0; sh < d; ++sh) {
                const DenseMatrix u = g.element(s, p, sh);
                StateVector chi(d, Complex(0, 0));
                for (int r = 0; r < d; ++r)
                    for (int c = 0; c < d; ++c) chi[r] += u(r, c) * psi[c];
                accumulate_outer3(q, chi, w);
            }
    return q;
}

// ---------------------------------------------------------------------------
// kappa by brute force

// Per-factor value tr[r(T) (|psi><psi|)^{(x)3}] for a single-qudit factor.
inline double kappa_bruteforce_factor(const SigmaCatalog& cat, const StochLagrangian& t, const StateVector& psi) {
    const int d = cat.d();
    if (static_cast<int>(psi.size()) != d) throw std::invalid_argument("kappa_bruteforce_factor: wrong state dimension");
    Complex acc = 0;
    cat.for_each_vector(t, [&](const std::array<int, 6>& w) {
        acc += psi[w[3]] * psi[w[4]] * psi[w[5]] * std::conj(psi[w[0]] * psi[w[1]] * psi[w[2]]);
    });
    if (std::abs(acc.imag()) >= 1e-8) throw std::runtime_error("kappa_bruteforce_factor: imaginary residual too large");
    return acc.real();
}

// kappa of a product state factorizes over the tensor factors.
inline double kappa_bruteforce(const SigmaCatalog& cat, const StochLagrangian& t,
                               const std::vector<StateVector>& factors) {
    double prod = 1;
    for (const auto& f : factors) prod *= kappa_bruteforce_factor(cat, t, f);
    return prod;
}

// ---------------------------------------------------------------------------
// Cubic-equation solution counts on subspaces

// N_alpha(f, T) for all alpha at once: f acts coordinatewise and the count
// runs over the d^3 elements of T literally.
inline std::vector<std::int64_t> count_solutions_all(const SigmaCatalog& cat, const StochLagrangian& t,
                                                     const std::vector<int>& f_values) {
    const int d = cat.d();
    if (static_cast<int>(f_values.size()) != d) throw std::invalid_argument("count_solutions_all: need d values of f");
    const PrimeField& F = cat.field();
    std::vector<std::int64_t> counts(d, 0);
    cat.for_each_vector(t, [&](const std::array<int, 6>& w) {
        const std::int64_t fx = f_values[w[0]] + f_values[w[1]] + f_values[w[2]];
        const std::int64_t fy = f_values[w[3]] + f_values[w[4]] + f_values[w[5]];
        ++counts[F.reduce(fy - fx)];
    });
    return counts;
}

inline std::int64_t count_solutions(const SigmaCatalog& cat, const StochLagrangian& t,
                                    const std::vector<int>& f_values, int alpha) {
    return count_solutions_all(cat, t, f_values)[alpha];
}

// ---------------------------------------------------------------------------
// Symmetric-subspace machinery (n = 1)

// Orthonormal basis of Sym_3(C^d) indexed by multisets {i <= j <= k}; each
// basis vector is the normalized sum over distinct permutations.
struct Sym3Basis {
    int d = 0;
    std::vector<std::array<int, 3>> multisets;
    std::map<std::array<int, 3>, int> index;

    explicit Sym3Basis(int d_) : d(d_) {
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j)
                for (int k = j; k < d; ++k) {
                    index[{i, j, k}] = static_cast<int>(multisets.size());
                    multisets.push_back({i, j, k});
                }
    }

    int dim() const { return static_cast<int>(multisets.size()); }

    static int perm_count(const std::array<int, 3>& m) {
        if (m[0] == m[1] && m[1] == m[2]) return 1;
        if (m[0] == m[1] || m[1] == m[2] || m[0] == m[2]) return 3;
        return 6;
    }

    int index_of(int a, int b, int c) const {
        std::array<int, 3> m{a, b, c};
        std::sort(m.begin(), m.end());
        return index.at(m);
    }
};

// <b_i| R(T) |b_j> over the multiset basis, accumulated from the d^3 pairs.
inline DenseMatrix r_matrix_sym3(const SigmaCatalog& cat, const StochLagrangian& t, const Sym3Basis& basis) {
    DenseMatrix m(basis.dim());
    std::vector<double> inv_norm(basis.dim());
    for (int i = 0; i < basis.dim(); ++i)
        inv_norm[i] = 1.0 / std::sqrt(static_cast<double>(Sym3Basis::perm_count(basis.multisets[i])));
    cat.for_each_vector(t, [&](const std::array<int, 6>& w) {
        const int i = basis.index_of(w[0], w[1], w[2]);
        const int j = basis.index_of(w[3], w[4], w[5]);
        m(i, j) += inv_norm[i] * inv_norm[j];
    });
    return m;
}

// Q-bar(1, d, 3) restricted to Sym_3: (D+2)/(6(D+d)) sum_T R(T).
inline DenseMatrix stab_moment_sym3(const SigmaCatalog& cat, const Sym3Basis& basis) {
    const int d = cat.d();
    DenseMatrix q(basis.dim());
    for (const auto& t : cat.all()) q += r_matrix_sym3(cat, t, basis);
    q *= Complex((d + 2.0) / (6.0 * (d + d)), 0);
    return q;
}

// <b_i| R(T) |b_j> at n = 2 over the multiset basis of Sym_3(C^{d^2}),
// accumulated from pairs of T-vectors under the party regrouping
// (H_d^{(x)3})^{(x)2} = (H_d^{(x)2})^{(x)3}.
inline DenseMatrix r_matrix_sym3_n2(const SigmaCatalog& cat, const StochLagrangian& t, const Sym3Basis& basis) {
    const int d = cat.d();
    if (basis.d != d * d) throw std::invalid_argument("r_matrix_sym3_n2: basis must live on d^2");
    DenseMatrix m(basis.dim());
    std::vector<double> inv_norm(basis.dim());
    for (int i = 0; i < basis.dim(); ++i)
        inv_norm[i] = 1.0 / std::sqrt(static_cast<double>(Sym3Basis::perm_count(basis.multisets[i])));
    std::vector<std::array<int, 6>> vectors;
    vectors.reserve(static_cast<std::size_t>(d) * d * d);
    cat.for_each_vector(t, [&](const std::array<int, 6>& w) { vectors.push_back(w); });
    for (const auto& w1 : vectors)
        for (const auto& w2 : vectors) {
            const int i = basis.index_of(w1[0] * d + w2[0], w1[1] * d + w2[1], w1[2] * d + w2[2]);
            const int j = basis.index_of(w1[3] * d + w2[3], w1[4] * d + w2[4], w1[5] * d + w2[5]);
            m(i, j) += inv_norm[i] * inv_norm[j];
        }
    return m;
}

// Projects a permutation-invariant operator on (C^d)^{(x)3} into the
// multiset basis.
inline DenseMatrix project_sym3(const DenseMatrix& Q, const Sym3Basis& basis) {
    const int d = basis.d;
    DenseMatrix out(basis.dim());
    auto perms_of = [](std::array<int, 3> m) {
        std::vector<std::array<int, 3>> p;
        std::sort(m.begin(), m.end());
        do p.push_back(m);
        while (std::next_permutation(m.begin(), m.end()));
        return p;
    };
    for (int i = 0; i < basis.dim(); ++i) {
        const auto pi = perms_of(basis.multisets[i]);
        for (int j = 0; j < basis.dim(); ++j) {
            const auto pj = perms_of(basis.multisets[j]);
            Complex acc = 0;
            for (const auto& x : pi)
                for (const auto& y : pj)
                    acc += Q((x[0] * d + x[1]) * d + x[2], (y[0] * d + y[1]) * d + y[2]);
            out(i, j) = acc / std::sqrt(static_cast<double>(pi.size() * pj.size()));
        }
    }
    return out;
}

// Projector onto Sym_3 of (C^D)^{(x)3} as a dense matrix.
inline DenseMatrix p_sym_dense(int D) {
    const int M = D * D * D;
    DenseMatrix p(M);
    const std::array<std::array<int, 3>, 6> perms = {
        std::array<int, 3>{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b)
            for (int c = 0; c < D; ++c) {
                const int xs[3] = {a, b, c};
                const int row = (a * D + b) * D + c;
                for (const auto& pm : perms)
                    p(row, (xs[pm[0]] * D + xs[pm[1]]) * D + xs[pm[2]]) += 1.0 / 6.0;
            }
    return p;
}

// Dual frame at n = 1: R~(T) = [R(T) - R(T_0)/(2d)] / (d^3 - d).
inline DenseMatrix dual_frame_matrix_n1(const SigmaCatalog& cat, const StochLagrangian& t) {
    const int d = cat.d();
    DenseMatrix m(d * d * d);
    add_r_matrix(m, cat, t, 1.0);
    for (auto idx : cat.class_indices(0)) add_r_matrix(m, cat, cat[idx], -1.0 / (2.0 * d));
    m *= Complex(1.0 / (static_cast<double>(d) * d * d - d), 0);
    return m;
}

// ---------------------------------------------------------------------------
// Random states

inline StateVector random_state(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    StateVector v(dim);
    for (auto& x : v) x = Complex(gauss(rng), gauss(rng));
    normalize(v);
    return v;
}

} // namespace qdl
