#pragma once

// The stochastic orthogonal group O_3(d) and the set Sigma(d) of stochastic
// Lagrangian subspaces of F_d^6, with defect data, intersections,
// characteristic vectors, and per-subspace cubic characters.
//
// A subspace is identified by its canonical id (y, cls): cls 1 holds the
// subspaces T_{v_y} spanned by {(1;1),(u;u),(v;-v)} with v = v_y, and
// cls 0 holds their images under the left action of the transposition
// tau_12. Characteristic vectors are v_y = (1, y, -1-y) for y < d and
// v_d = (0, 1, -1). All set operations compare canonical ids; results of
// group actions are recanonicalized.

#include "qdl/charsums.hpp"
#include "qdl/gf.hpp"
#include "qdl/linalg_fd.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qdl {

using Vec3 = std::array<int, 3>;

// Element of O_3(d): a 3x3 matrix over F_d with O 1 = 1 and O^T O = 1.
// Parity records the determinant (+1 even, -1 odd).
struct StochIsometry {
    std::array<Vec3, 3> m{};   // m[row][col]
    bool odd = false;          // det = -1

    Vec3 apply(const Vec3& x, const PrimeField& F) const {
        Vec3 y{};
        for (int r = 0; r < 3; ++r) {
            std::int64_t acc = 0;
            for (int c = 0; c < 3; ++c) acc += static_cast<std::int64_t>(m[r][c]) * x[c];
            y[r] = F.reduce(acc);
        }
        return y;
    }
    Vec3 apply_transpose(const Vec3& x, const PrimeField& F) const {
        Vec3 y{};
        for (int c = 0; c < 3; ++c) {
            std::int64_t acc = 0;
            for (int r = 0; r < 3; ++r) acc += static_cast<std::int64_t>(m[r][c]) * x[r];
            y[c] = F.reduce(acc);
        }
        return y;
    }
};

inline StochIsometry identity_isometry() {
    StochIsometry o;
    for (int i = 0; i < 3; ++i) o.m[i][i] = 1;
    return o;
}

inline StochIsometry tau12_isometry() {
    StochIsometry o;
    o.m[0][1] = o.m[1][0] = o.m[2][2] = 1;
    o.odd = true;
    return o;
}

inline StochIsometry mul(const StochIsometry& a, const StochIsometry& b, const PrimeField& F) {
    StochIsometry c;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            std::int64_t acc = 0;
            for (int k = 0; k < 3; ++k) acc += static_cast<std::int64_t>(a.m[i][k]) * b.m[k][j];
            c.m[i][j] = F.reduce(acc);
        }
    c.odd = a.odd != b.odd;
    return c;
}

// All 2h stochastic isometries, from the solutions of a+b+c = a^2+b^2+c^2 = 1:
// each solution yields one even matrix a*I + b*zeta + c*zeta^2 and one odd
// matrix a*tau_23 + b*tau_12 + c*tau_13.
inline std::vector<StochIsometry> enumerate_O3(int d) {
    const PrimeField F(d);
    std::vector<StochIsometry> out;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            const int c = F.reduce(1 - a - b);
            if (F.reduce(static_cast<std::int64_t>(a) * a + static_cast<std::int64_t>(b) * b +
                         static_cast<std::int64_t>(c) * c) != 1)
                continue;
            StochIsometry even;
            even.m = {Vec3{a, c, b}, Vec3{b, a, c}, Vec3{c, b, a}};
            even.odd = false;
            StochIsometry odd;
            odd.m = {Vec3{a, b, c}, Vec3{b, c, a}, Vec3{c, a, b}};
            odd.odd = true;
            out.push_back(even);
            out.push_back(odd);
        }
    return out;
}

// Canonical id of a stochastic Lagrangian subspace.
struct SigmaId {
    int y = 0;    // 0..d, selecting the characteristic vector v_y
    int cls = 1;  // 1: T_{v_y} itself; 0: tau_12 T_{v_y}

    bool operator==(const SigmaId& o) const { return y == o.y && cls == o.cls; }
    bool operator!=(const SigmaId& o) const { return !(*this == o); }
};

// One stochastic Lagrangian subspace with its derived data.
struct StochLagrangian {
    SigmaId id;
    Vec3 v{};                        // characteristic vector
    std::array<std::array<int, 3>, 6> basis{};  // generating matrix, columns span T
    bool sym = false;                // T = T_O for a permutation O
    bool defect = false;             // nontrivial left/right defect subspaces
    int cubic_exponent = 0;          // exponent of eta_3(v1^3+v2^3+v3^3); 0 when d != 1 mod 3

    bool ns() const { return !sym; }
    bool iso() const { return !defect; }
};

// The full set Sigma(d) of 2d+2 stochastic Lagrangian subspaces, ordered by
// (cls, y) with cls 0 first.
class SigmaCatalog {
public:
    explicit SigmaCatalog(int d) : F_(d), d_(d) {
        subspaces_.reserve(2 * d + 2);
        for (int cls = 0; cls <= 1; ++cls)
            for (int y = 0; y <= d; ++y)
                subspaces_.push_back(build(y, cls));
        if (d % 3 == 1) {
            mu_ = compute_mu_counts();
        }
    }

    int d() const { return d_; }
    const PrimeField& field() const { return F_; }
    std::size_t size() const { return subspaces_.size(); }
    const StochLagrangian& operator[](std::size_t i) const { return subspaces_[i]; }
    const std::vector<StochLagrangian>& all() const { return subspaces_; }

    std::size_t index_of(SigmaId id) const { return static_cast<std::size_t>(id.cls * (d_ + 1) + id.y); }
    const StochLagrangian& at(SigmaId id) const { return subspaces_[index_of(id)]; }

    SigmaId delta_id() const { return {d_ - 1, 0}; }
    SigmaId tau23_id() const { return {d_, 1}; }
    const StochLagrangian& delta() const { return at(delta_id()); }

    std::vector<std::size_t> sym_indices() const { return filter([](const StochLagrangian& t) { return t.sym; }); }
    std::vector<std::size_t> ns_indices() const { return filter([](const StochLagrangian& t) { return !t.sym; }); }
    std::vector<std::size_t> iso_indices() const { return filter([](const StochLagrangian& t) { return !t.defect; }); }
    std::vector<std::size_t> def_indices() const { return filter([](const StochLagrangian& t) { return t.defect; }); }
    std::vector<std::size_t> class_indices(int cls) const {
        return filter([cls](const StochLagrangian& t) { return t.id.cls == cls; });
    }

    // counts of T in T_ns by cubic character class: mu[j] = #{T : eta_3(T) = eta_3(3 nu^j)}
    const std::array<int, 3>& mu_counts() const {
        if (d_ % 3 != 1) throw std::domain_error("mu_counts: requires d = 1 mod 3");
        return mu_;
    }

    // Iterate the d^3 vectors of T as columns basis * (c1, c2, c3).
    template <typename Fn>
    void for_each_vector(const StochLagrangian& t, Fn&& fn) const {
        std::array<int, 6> w{};
        for (int c1 = 0; c1 < d_; ++c1)
            for (int c2 = 0; c2 < d_; ++c2)
                for (int c3 = 0; c3 < d_; ++c3) {
                    for (int r = 0; r < 6; ++r)
                        w[r] = F_.reduce(static_cast<std::int64_t>(t.basis[r][0]) * c1 +
                                         static_cast<std::int64_t>(t.basis[r][1]) * c2 +
                                         static_cast<std::int64_t>(t.basis[r][2]) * c3);
                    fn(w);
                }
    }

    // dim(T1 cap T2) by explicit rank computation over F_d.
    int intersection_dim(const StochLagrangian& a, const StochLagrangian& b) const {
        FdMatrix m(6, std::vector<int>(6, 0));
        for (int r = 0; r < 6; ++r)
            for (int c = 0; c < 3; ++c) {
                m[r][c] = a.basis[r][c];
                m[r][3 + c] = b.basis[r][c];
            }
        return 6 - rank_fd(std::move(m), F_);
    }

    // Canonical id of the span of a 6x3 generating matrix (column span must
    // be a member of Sigma(d)).
    SigmaId recanonicalize(const std::array<std::array<int, 3>, 6>& basis) const {
        // T_Delta: solve (top - bottom) c = 0
        FdMatrix diff(3, std::vector<int>(3, 0));
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                diff[r][c] = F_.sub(basis[r][c], basis[3 + r][c]);
        const FdMatrix kernel = nullspace(diff, F_);
        const int dim_delta = static_cast<int>(kernel.size());
        if (dim_delta == 3) return delta_id();
        if (dim_delta == 2) {
            // T1 class: v spans the orthogonal complement of T_Delta's top parts
            FdMatrix tops(2, std::vector<int>(3, 0));
            for (int k = 0; k < 2; ++k)
                for (int r = 0; r < 3; ++r) {
                    std::int64_t acc = 0;
                    for (int c = 0; c < 3; ++c) acc += static_cast<std::int64_t>(basis[r][c]) * kernel[k][c];
                    tops[k][r] = F_.reduce(acc);
                }
            const FdMatrix vs = nullspace(tops, F_);
            if (vs.size() != 1) throw std::logic_error("recanonicalize: bad characteristic vector");
            return {v_to_y(Vec3{vs[0][0], vs[0][1], vs[0][2]}), 1};
        }
        if (dim_delta != 1) throw std::logic_error("recanonicalize: not a stochastic Lagrangian subspace");
        // T0 class: left-multiply by tau_12 and classify as T1
        std::array<std::array<int, 3>, 6> swapped = basis;
        std::swap(swapped[0], swapped[1]);
        const SigmaId sub = recanonicalize(swapped);
        if (sub.cls != 1) throw std::logic_error("recanonicalize: tau_12 action did not reach T1");
        return {sub.y, 0};
    }

    SigmaId left_act(const StochIsometry& o, const StochLagrangian& t) const {
        std::array<std::array<int, 3>, 6> b{};
        for (int c = 0; c < 3; ++c) {
            const Vec3 top = o.apply({t.basis[0][c], t.basis[1][c], t.basis[2][c]}, F_);
            for (int r = 0; r < 3; ++r) {
                b[r][c] = top[r];
                b[3 + r][c] = t.basis[3 + r][c];
            }
        }
        return recanonicalize(b);
    }

    SigmaId right_act(const StochLagrangian& t, const StochIsometry& o) const {
        std::array<std::array<int, 3>, 6> b{};
        for (int c = 0; c < 3; ++c) {
            const Vec3 bot = o.apply_transpose({t.basis[3][c], t.basis[4][c], t.basis[5][c]}, F_);
            for (int r = 0; r < 3; ++r) {
                b[r][c] = t.basis[r][c];
                b[3 + r][c] = bot[r];
            }
        }
        return recanonicalize(b);
    }

    // Cubic-character exponent of T in T_ns (exponent of eta_3 at
    // v1^3 + v2^3 + v3^3); by convention 0 whenever d != 1 mod 3.
    int sigma_cubic_character(const StochLagrangian& t) const {
        if (t.sym) throw std::domain_error("sigma_cubic_character: undefined on T_sym");
        return t.cubic_exponent;
    }

private:
    template <typename Pred>
    std::vector<std::size_t> filter(Pred&& p) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < subspaces_.size(); ++i)
            if (p(subspaces_[i])) out.push_back(i);
        return out;
    }

    Vec3 characteristic_vector(int y) const {
        if (y == d_) return {0, 1, d_ - 1};
        return {1, y, F_.reduce(-1 - y)};
    }

    int v_to_y(const Vec3& v) const {
        if (v[0] != 0) {
            const int inv = F_.inv(v[0]);
            const int y = F_.mul(v[1], inv);
            if (F_.mul(v[2], inv) != F_.reduce(-1 - y))
                throw std::logic_error("v_to_y: vector not orthogonal to 1");
            return y;
        }
        if (v[1] == 0 || F_.mul(v[2], F_.inv(v[1])) != d_ - 1)
            throw std::logic_error("v_to_y: vector not orthogonal to 1");
        return d_;
    }

    StochLagrangian build(int y, int cls) const {
        StochLagrangian t;
        t.id = {y, cls};
        t.v = characteristic_vector(y);
        const Vec3& v = t.v;

        // lexicographically smallest u in v-perp with {1, u} independent:
        // candidates below (0,0,1) and (0,1,*) are multiples of 1_3
        Vec3 u{};
        if (v[2] == 0) u = {0, 0, 1};
        else u = {0, 1, F_.neg(F_.mul(v[1], F_.inv(v[2])))};

        const std::array<Vec3, 3> top_cols = {Vec3{1, 1, 1}, u, v};
        const std::array<Vec3, 3> bot_cols = {Vec3{1, 1, 1}, u, {F_.neg(v[0]), F_.neg(v[1]), F_.neg(v[2])}};
        for (int c = 0; c < 3; ++c)
            for (int r = 0; r < 3; ++r) {
                t.basis[r][c] = top_cols[c][r];
                t.basis[3 + r][c] = bot_cols[c][r];
            }
        if (cls == 0) std::swap(t.basis[0], t.basis[1]);  // left action of tau_12

        const int vvv = F_.reduce(static_cast<std::int64_t>(v[0]) * v[1] % d_ * v[2]);
        t.sym = (vvv == 0);
        const int vdotv = F_.reduce(static_cast<std::int64_t>(v[0]) * v[0] + static_cast<std::int64_t>(v[1]) * v[1] +
                                    static_cast<std::int64_t>(v[2]) * v[2]);
        t.defect = (vdotv == 0);
        if (!t.sym && d_ % 3 == 1) {
            const int cube_sum = F_.reduce(
                static_cast<std::int64_t>(F_.pow(v[0], 3)) + F_.pow(v[1], 3) + F_.pow(v[2], 3));
            t.cubic_exponent = F_.index(cube_sum);
        }
        return t;
    }

    std::array<int, 3> compute_mu_counts() const {
        const auto& sums = FieldContext::get(d_).sums();
        std::array<int, 3> counts{0, 0, 0};
        const int ind3 = F_.index(3 % d_);
        for (const auto& t : subspaces_) {
            if (t.sym) continue;
            const int j = ((t.cubic_exponent - ind3) % 3 + 3) % 3;  // eta_3(T) = eta_3(3 nu^j)
            ++counts[j];
        }
        const Complex G3cubed = std::pow(sums.G3(), 3);
        for (int j = 0; j < 3; ++j) {
            const Complex eta2 = sums.character_value(cubic_spec(d_, 2), F_.pow(F_.nu(), j));
            const double closed = (2.0 * d_ * (d_ - 2) + 4.0 * (eta2 * G3cubed).real()) / (3.0 * d_);
            if (std::abs(closed - counts[j]) > 0.5)
                throw std::runtime_error("mu_counts: enumeration disagrees with closed form");
        }
        return counts;
    }

    PrimeField F_;
    int d_;
    std::vector<StochLagrangian> subspaces_;
    std::array<int, 3> mu_{0, 0, 0};
};

} // namespace qdl
