#pragma once

// Exact rational arithmetic on arbitrary-precision integers, used where a
// comparison must not depend on float noise (design thresholds kappa_{d,k}
// vs 3/(D+2), mixing probabilities of exact 3-designs).

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace qdl {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_pow(BigInt base, unsigned exp) {
    BigInt r = 1;
    while (exp > 0) {
        if (exp & 1u) r *= base;
        base *= base;
        exp >>= 1u;
    }
    return r;
}

struct Rational {
    BigInt num = 0;
    BigInt den = 1;

    Rational() = default;
    Rational(BigInt n, BigInt d) : num(std::move(n)), den(std::move(d)) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        normalize();
    }
    Rational(long long n) : num(n), den(1) {}  // NOLINT(google-explicit-constructor)

    void normalize() {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const BigInt g = boost::multiprecision::gcd(num < 0 ? BigInt(-num) : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    Rational operator+(const Rational& o) const { return {num * o.den + o.num * den, den * o.den}; }
    Rational operator-(const Rational& o) const { return {num * o.den - o.num * den, den * o.den}; }
    Rational operator*(const Rational& o) const { return {num * o.num, den * o.den}; }
    Rational operator/(const Rational& o) const {
        if (o.num == 0) throw std::domain_error("Rational: division by zero");
        return {num * o.den, den * o.num};
    }
    Rational operator-() const { return {-num, den}; }

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return num * o.den < o.num * den; }
    bool operator<=(const Rational& o) const { return num * o.den <= o.num * den; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const { return num.str() + "/" + den.str(); }
};

} // namespace qdl
