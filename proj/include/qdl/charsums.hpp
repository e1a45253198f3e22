#pragma once

// Gauss sums g(m,a) and G(eta,a), Jacobi sums, and the integer invariant
// tilde_g(d) = g(3,1)g(3,nu)g(3,nu^2)/d. Sums are evaluated in double
// precision from a per-d table of d-th roots of unity; integer quantities
// are recovered by round-then-verify against an exact side condition.

#include "qdl/gf.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qdl {

using Complex = std::complex<double>;

// Multiplicative character eta(nu^k) = e^{2 pi i j k / (d-1)}. Trivial iff
// j = 0 mod d-1; order 2 iff j = (d-1)/2; order 3 iff j = (d-1)/3 or
// 2(d-1)/3 (requires d = 1 mod 3).
struct CharacterSpec {
    int j = 0;
};

inline CharacterSpec quadratic_spec(int d) { return {(d - 1) / 2}; }

// The cubic character with eta(nu^k) = omega_3^k; power 2 gives its square
// (= conjugate).
inline CharacterSpec cubic_spec(int d, int power = 1) {
    if (d % 3 != 1) throw std::domain_error("cubic_spec: requires d = 1 mod 3");
    return {(d - 1) / 3 * power};
}

// Cached per-d data: roots of unity and the three cubic Gauss sums.
class CharSumTable {
public:
    explicit CharSumTable(const PrimeField& F) : F_(F), d_(F.modulus()) {
        roots_.resize(d_);
        for (int k = 0; k < d_; ++k) {
            const double angle = 2.0 * std::numbers::pi * k / d_;
            roots_[k] = Complex(std::cos(angle), std::sin(angle));
        }
    }

    const PrimeField& field() const { return F_; }
    int d() const { return d_; }
    Complex root(std::int64_t k) const { return roots_[static_cast<int>(((k % d_) + d_) % d_)]; }

    // eta(a) for the character spec, as a complex number (0 at a = 0 for
    // nontrivial characters, 1 for the trivial one).
    Complex character_value(CharacterSpec eta, int a) const {
        const bool trivial = (eta.j % (d_ - 1) == 0);
        if (a == 0) return trivial ? Complex(1, 0) : Complex(0, 0);
        const std::int64_t k = F_.dlog(a);
        const double angle = 2.0 * std::numbers::pi * ((eta.j % (d_ - 1)) * k % (d_ - 1)) / (d_ - 1);
        return Complex(std::cos(angle), std::sin(angle));
    }

    // g(m,a) = sum_b omega_d^{a b^m}, a != 0.
    Complex gauss_g(int m, int a) const {
        if (a == 0) throw std::domain_error("gauss_g: a must be nonzero");
        if (m <= 1) throw std::domain_error("gauss_g: m must exceed 1");
        Complex s = 0;
        for (int b = 0; b < d_; ++b)
            s += root(static_cast<std::int64_t>(a) * F_.pow(b, m));
        return s;
    }

    // G(eta,a) = sum_{b != 0} eta(b) omega_d^{ab}, eta nontrivial, a != 0.
    Complex gauss_G(CharacterSpec eta, int a) const {
        if (eta.j % (d_ - 1) == 0) throw std::domain_error("gauss_G: character must be nontrivial");
        if (a == 0) throw std::domain_error("gauss_G: a must be nonzero");
        Complex s = 0;
        for (int b = 1; b < d_; ++b)
            s += character_value(eta, b) * root(static_cast<std::int64_t>(a) * b);
        return s;
    }

    // J(theta_1,...,theta_k) = sum over tuples with b_1 + ... + b_k = 1 of
    // the product of character values.
    Complex jacobi(const std::vector<CharacterSpec>& thetas) const {
        if (thetas.empty()) throw std::invalid_argument("jacobi: empty character list");
        const int k = static_cast<int>(thetas.size());
        if (k == 1) {
            // single-term sum at b = 1
            return character_value(thetas[0], 1);
        }
        Complex total = 0;
        std::vector<int> b(k, 0);
        // iterate over the first k-1 entries; the last is fixed by the sum
        std::vector<int> idx(k - 1, 0);
        while (true) {
            int sum = 0;
            for (int i = 0; i < k - 1; ++i) sum += idx[i];
            const int last = F_.reduce(1 - sum);
            Complex prod = character_value(thetas[k - 1], last);
            for (int i = 0; i < k - 1 && prod != Complex(0, 0); ++i)
                prod *= character_value(thetas[i], idx[i]);
            total += prod;
            int pos = k - 2;
            while (pos >= 0 && ++idx[pos] == d_) idx[pos--] = 0;
            if (pos < 0) break;
        }
        return total;
    }

    // The three cubic Gauss sums g(3, nu^j), j = 0, 1, 2, real to within
    // roundoff; g(3,a) = g3(dlog(a) mod 3). Requires d = 1 mod 3.
    double g3_class(int j) const {
        ensure_g3();
        return g3_[((j % 3) + 3) % 3];
    }
    double g3_of(int a) const {
        if (a == 0) throw std::domain_error("g3_of: a must be nonzero");
        return g3_class(F_.dlog(a) % 3);
    }
    Complex G3(int power = 1) const { return gauss_G(cubic_spec(d_, power), 1); }

private:
    void ensure_g3() const {
        std::call_once(g3_once_, [this] {
            if (d_ % 3 != 1) throw std::domain_error("cubic Gauss sums require d = 1 mod 3");
            for (int j = 0; j < 3; ++j) {
                const Complex v = gauss_g(3, F_.pow(F_.nu(), j));
                if (std::abs(v.imag()) > 1e-9)
                    throw std::runtime_error("cubic Gauss sum has nonreal value");
                g3_[j] = v.real();
            }
        });
    }

    const PrimeField& F_;
    int d_;
    std::vector<Complex> roots_;
    mutable std::once_flag g3_once_;
    mutable double g3_[3] = {0, 0, 0};
};

// Shared per-d context bundling the field and its character sums. Lookup is
// cached: concurrent readers are fine, population is idempotent.
class FieldContext {
public:
    static const FieldContext& get(int d) {
        static std::mutex mu;
        static std::map<int, std::unique_ptr<FieldContext>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(d);
        if (it == cache.end())
            it = cache.emplace(d, std::unique_ptr<FieldContext>(new FieldContext(d))).first;
        return *it->second;
    }

    const PrimeField& field() const { return field_; }
    const CharSumTable& sums() const { return sums_; }

private:
    explicit FieldContext(int d) : field_(d), sums_(field_) {}
    PrimeField field_;
    CharSumTable sums_;
};

// tilde_g(d) = g(3,1) g(3,nu) g(3,nu^2) / d, an integer = 1 mod 3 with
// 1 <= s^2 <= 4d - 27 and a companion integer j satisfying s^2 + 3 j^2 = 4d.
struct TildeG {
    int s = 0;
    int companion_j = 0;
};

inline TildeG tilde_g(int d) {
    if (d % 3 != 1) throw std::domain_error("tilde_g: requires d = 1 mod 3");
    const auto& ctx = FieldContext::get(d);
    const double prod = ctx.sums().g3_class(0) * ctx.sums().g3_class(1) * ctx.sums().g3_class(2) / d;
    const double rounded = std::round(prod);
    if (std::abs(prod - rounded) >= 1e-6)
        throw std::runtime_error("tilde_g: rounding residual too large");
    TildeG result;
    result.s = static_cast<int>(rounded);
    if (((result.s % 3) + 3) % 3 != 1)
        throw std::runtime_error("tilde_g: s != 1 mod 3");
    const int rem = 4 * d - result.s * result.s;
    if (rem < 0 || rem % 3 != 0)
        throw std::runtime_error("tilde_g: no companion integer");
    const int jsq = rem / 3;
    const int j = static_cast<int>(std::lround(std::sqrt(static_cast<double>(jsq))));
    if (j * j != jsq)
        throw std::runtime_error("tilde_g: companion is not a perfect square");
    result.companion_j = j;
    return result;
}

} // namespace qdl
