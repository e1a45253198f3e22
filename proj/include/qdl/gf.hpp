#pragma once

// Prime-field arithmetic for F_d with d an odd prime: primitive elements,
// discrete logarithms, quadratic and cubic multiplicative characters, and
// cubic-residue indices. Everything is table-driven: a PrimeField object
// precomputes the discrete-log table once, after which every character
// query is O(1).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdl {

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t p = 3; p * p <= n; p += 2)
        if (n % p == 0) return false;
    return true;
}

inline int mod_pow(std::int64_t base, std::int64_t exp, std::int64_t m) {
    std::int64_t r = 1 % m;
    base %= m;
    if (base < 0) base += m;
    while (exp > 0) {
        if (exp & 1) r = r * base % m;
        base = base * base % m;
        exp >>= 1;
    }
    return static_cast<int>(r);
}

// Smallest primitive root of F_d. Checked against the reference table of
// primitive elements for all d < 100 in the test suite.
inline int primitive_element(int d) {
    if (d == 2 || !is_prime(d)) throw std::invalid_argument("primitive_element: d must be an odd prime");
    // factor d-1
    std::vector<std::int64_t> prime_factors;
    std::int64_t m = d - 1;
    for (std::int64_t p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            prime_factors.push_back(p);
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) prime_factors.push_back(m);
    for (int g = 2; g < d; ++g) {
        bool primitive = true;
        for (std::int64_t p : prime_factors) {
            if (mod_pow(g, (d - 1) / p, d) == 1) { primitive = false; break; }
        }
        if (primitive) return g;
    }
    throw std::logic_error("primitive_element: no generator found");
}

// Value of a multiplicative character at a field element. Nontrivial
// characters vanish at 0; away from 0 the value is a root of unity,
// recorded as a sign for the quadratic character and as an exponent of
// omega_3 for a cubic character.
struct CharacterValue {
    bool is_zero = false;
    int sign = +1;      // quadratic character: +1 or -1
    int exponent = 0;   // cubic character: exponent of omega_3, in {0,1,2}
};

// Immutable per-d context. Safe to share across threads once constructed.
class PrimeField {
public:
    explicit PrimeField(int d) : d_(d) {
        if (d == 2 || !is_prime(d)) throw std::invalid_argument("PrimeField: modulus must be an odd prime, got " + std::to_string(d));
        nu_ = primitive_element(d);
        dlog_.assign(d, -1);
        int x = 1;
        for (int k = 0; k < d - 1; ++k) {
            dlog_[x] = k;
            x = static_cast<int>(static_cast<std::int64_t>(x) * nu_ % d);
        }
    }

    int modulus() const { return d_; }
    int nu() const { return nu_; }

    int reduce(std::int64_t a) const {
        int r = static_cast<int>(a % d_);
        return r < 0 ? r + d_ : r;
    }
    int add(int a, int b) const { return (a + b) % d_; }
    int sub(int a, int b) const { return (a - b + d_) % d_; }
    int mul(int a, int b) const { return static_cast<int>(static_cast<std::int64_t>(a) * b % d_); }
    int neg(int a) const { return a == 0 ? 0 : d_ - a; }
    int inv(int a) const {
        if (a == 0) throw std::domain_error("PrimeField::inv: zero has no inverse");
        return mod_pow(a, d_ - 2, d_);
    }
    int pow(int a, std::int64_t e) const { return mod_pow(a, e, d_); }

    // k such that a = nu^k, for a != 0.
    int dlog(int a) const {
        if (a == 0) throw std::domain_error("PrimeField::dlog: argument is zero");
        return dlog_[a];
    }

    bool is_square(int a) const { return a != 0 && dlog_[a] % 2 == 0; }

    // eta_2(a): +1 on nonzero squares, -1 on nonsquares, zero at 0.
    CharacterValue quadratic_character(int a) const {
        CharacterValue v;
        if (a == 0) { v.is_zero = true; v.sign = 0; return v; }
        v.sign = (dlog_[a] % 2 == 0) ? +1 : -1;
        return v;
    }
    int quadratic_sign(int a) const {
        return a == 0 ? 0 : (dlog_[a] % 2 == 0 ? +1 : -1);
    }

    // eta_3(nu^k) = omega_3^k, defined only when d = 1 mod 3.
    CharacterValue cubic_character(int a) const {
        if (d_ % 3 != 1) throw std::domain_error("cubic_character: requires d = 1 mod 3");
        CharacterValue v;
        if (a == 0) { v.is_zero = true; return v; }
        v.exponent = dlog_[a] % 3;
        return v;
    }

    // Smallest i in {0,1,2} such that a / nu^i is a cubic residue.
    // Equals 0 for every nonzero a when d != 1 mod 3.
    int index(int a) const {
        if (a == 0) throw std::domain_error("PrimeField::index: argument is zero");
        if (d_ % 3 != 1) return 0;
        return dlog_[a] % 3;
    }

    bool is_cubic_residue(int a) const { return a != 0 && index(a) == 0; }

private:
    int d_;
    int nu_;
    std::vector<int> dlog_;
};

// Integer residue mod an odd prime d, carrying its modulus. The scalar
// type of the algebraic layers; hot loops use PrimeField directly.
class FieldElement {
public:
    FieldElement(std::int64_t value, int modulus) : d_(modulus) {
        if (modulus == 2 || !is_prime(modulus)) throw std::invalid_argument("FieldElement: modulus must be an odd prime");
        v_ = static_cast<int>(value % modulus);
        if (v_ < 0) v_ += modulus;
    }

    int value() const { return v_; }
    int modulus() const { return d_; }

    FieldElement operator+(FieldElement o) const { check(o); return raw((v_ + o.v_) % d_, d_); }
    FieldElement operator-(FieldElement o) const { check(o); return raw((v_ - o.v_ + d_) % d_, d_); }
    FieldElement operator*(FieldElement o) const { check(o); return raw(static_cast<int>(static_cast<std::int64_t>(v_) * o.v_ % d_), d_); }
    FieldElement operator-() const { return raw(v_ == 0 ? 0 : d_ - v_, d_); }
    FieldElement inverse() const {
        if (v_ == 0) throw std::domain_error("FieldElement: zero has no inverse");
        return raw(mod_pow(v_, d_ - 2, d_), d_);
    }
    FieldElement pow(std::int64_t e) const { return raw(mod_pow(v_, e, d_), d_); }

    bool operator==(FieldElement o) const { return d_ == o.d_ && v_ == o.v_; }
    bool operator!=(FieldElement o) const { return !(*this == o); }

private:
    static FieldElement raw(int v, int d) {
        FieldElement e;
        e.v_ = v;
        e.d_ = d;
        return e;
    }
    FieldElement() : v_(0), d_(3) {}
    void check(FieldElement o) const {
        if (d_ != o.d_) throw std::invalid_argument("FieldElement: modulus mismatch");
    }
    int v_;
    int d_;
};

} // namespace qdl
