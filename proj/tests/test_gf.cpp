#include <catch2/catch.hpp>

#include "qdl/gf.hpp"
#include "qdl/reference_tables.hpp"

#include <set>

using namespace qdl;

TEST_CASE("smallest primitive roots match the reference table below 100", "[gf]") {
    for (const auto& [d, nu] : reference::primitive_roots_below_100()) {
        CAPTURE(d);
        REQUIRE(primitive_element(d) == nu);
    }
    REQUIRE(primitive_element(7) == 3);
    REQUIRE(primitive_element(3) == 2);
    REQUIRE(primitive_element(41) == 6);
}

TEST_CASE("primitive_element rejects non-primes and d=2", "[gf]") {
    REQUIRE_THROWS_AS(primitive_element(9), std::invalid_argument);
    REQUIRE_THROWS_AS(primitive_element(2), std::invalid_argument);
    REQUIRE_THROWS_AS(PrimeField(15), std::invalid_argument);
}

TEST_CASE("quadratic character by square enumeration", "[gf]") {
    const PrimeField F(7);
    // independent oracle: the squares mod 7
    std::set<int> squares;
    for (int x = 1; x < 7; ++x) squares.insert(x * x % 7);
    REQUIRE(squares == std::set<int>{1, 2, 4});
    REQUIRE(F.quadratic_sign(1) == +1);
    REQUIRE(F.quadratic_sign(0) == 0);
    REQUIRE(F.quadratic_sign(3) == -1);
    for (int a = 1; a < 7; ++a) REQUIRE(F.quadratic_sign(a) == (squares.count(a) ? +1 : -1));
    REQUIRE(F.quadratic_character(0).is_zero);
}

TEST_CASE("character multiplicativity and residue counts", "[gf]") {
    for (int d : {5, 7, 11, 13}) {
        const PrimeField F(d);
        int squares = 0;
        for (int a = 1; a < d; ++a) {
            if (F.is_square(a)) ++squares;
            for (int b = 1; b < d; ++b) {
                REQUIRE(F.quadratic_sign(F.mul(a, b)) == F.quadratic_sign(a) * F.quadratic_sign(b));
                if (d % 3 == 1)
                    REQUIRE(F.cubic_character(F.mul(a, b)).exponent ==
                            (F.cubic_character(a).exponent + F.cubic_character(b).exponent) % 3);
            }
        }
        REQUIRE(squares == (d - 1) / 2);
        if (d % 3 == 1) {
            int cubes = 0;
            for (int a = 1; a < d; ++a)
                if (F.is_cubic_residue(a)) ++cubes;
            REQUIRE(cubes == (d - 1) / 3);
        }
    }
}

TEST_CASE("cubic character and index examples at d=7", "[gf]") {
    const PrimeField F(7);
    REQUIRE(F.nu() == 3);
    REQUIRE(F.cubic_character(1).exponent == 0);
    // discrete log of 2 base 3 mod 7 is 2 (3^2 = 2)
    REQUIRE(mod_pow(3, 2, 7) == 2);
    REQUIRE(F.cubic_character(2).exponent == 2);
    // 3^3 = 27 = 6 mod 7, a cube
    REQUIRE(F.cubic_character(6).exponent == 0);
    REQUIRE(F.index(6) == 0);
    REQUIRE(F.index(3) == 1);
    REQUIRE(F.cubic_character(0).is_zero);
    REQUIRE_THROWS_AS(F.index(0), std::domain_error);
}

TEST_CASE("index is 0 everywhere when d != 1 mod 3", "[gf]") {
    const PrimeField F(5);
    for (int a = 1; a < 5; ++a) REQUIRE(F.index(a) == 0);
    REQUIRE_THROWS_AS(F.cubic_character(2), std::domain_error);
}

TEST_CASE("index 0 iff cubic character exponent 0 (d = 1 mod 3)", "[gf]") {
    for (int d : {7, 13, 19}) {
        const PrimeField F(d);
        for (int a = 1; a < d; ++a) {
            REQUIRE(F.index(a) == F.cubic_character(a).exponent);
            REQUIRE((F.index(a) == 0) == (F.cubic_character(a).exponent == 0));
        }
    }
}

TEST_CASE("quadratic reciprocity for odd prime pairs below 50", "[gf]") {
    std::vector<int> primes;
    for (int p = 3; p < 50; ++p)
        if (is_prime(p)) primes.push_back(p);
    for (int p : primes)
        for (int s : primes) {
            if (p == s) continue;
            const PrimeField Fp(p), Fs(s);
            const int lhs = Fs.quadratic_sign(p % s) * Fp.quadratic_sign(s % p);
            const int rhs = ((static_cast<std::int64_t>(p) - 1) * (s - 1) / 4) % 2 == 0 ? 1 : -1;
            CAPTURE(p, s);
            REQUIRE(lhs == rhs);
        }
}

TEST_CASE("FieldElement arithmetic and guards", "[gf]") {
    const FieldElement a(10, 7), b(-1, 7);
    REQUIRE(a.value() == 3);
    REQUIRE(b.value() == 6);
    REQUIRE((a + b).value() == 2);
    REQUIRE((a * b).value() == 4);
    REQUIRE((a - b).value() == 4);
    REQUIRE((-b).value() == 1);
    REQUIRE((a.inverse() * a).value() == 1);
    REQUIRE(a.pow(3).value() == 6);
    REQUIRE_THROWS_AS(FieldElement(1, 8), std::invalid_argument);
    REQUIRE_THROWS_AS(FieldElement(0, 7).inverse(), std::domain_error);
}
