#include <catch2/catch_amalgamated.hpp>

#include "lrfc/gf.hpp"

#include <set>
#include <random>

using lrfc::Field;

namespace {

// reference carry-less multiply mod prim_poly
int poly_mul(int a, int b, int poly, int m) {
    int r = 0;
    for (int i = 0; i < m; ++i)
        if (b & (1 << i)) r ^= a << i;
    for (int i = 2 * m - 2; i >= m; --i)
        if (r & (1 << i)) r ^= poly << (i - m);
    return r;
}

const int kDegrees[] = {1, 2, 3, 4, 8};

}  // namespace

TEST_CASE("table construction invariants", "[gf]") {
    for (int m : kDegrees) {
        const Field& f = Field::get(m);
        REQUIRE(f.q() == (1 << m));
        REQUIRE(f.alpha_pow(0) == 1);
        std::set<int> seen;
        for (int i = 0; i < f.q() - 1; ++i) {
            int e = f.alpha_pow(i);
            REQUIRE(e != 0);
            REQUIRE(f.log(static_cast<std::uint8_t>(e)) == i);
            seen.insert(e);
        }
        REQUIRE(static_cast<int>(seen.size()) == f.q() - 1);  // permutation of non-zeros
    }
}

TEST_CASE("unsupported degrees rejected", "[gf]") {
    REQUIRE_THROWS_AS(Field(0), std::invalid_argument);
    REQUIRE_THROWS_AS(Field(5), std::invalid_argument);
    REQUIRE_THROWS_AS(Field(9), std::invalid_argument);
    REQUIRE_THROWS_AS(Field::get(7), std::invalid_argument);
}

TEST_CASE("gf16 worked examples", "[gf]") {
    const Field& f = Field::get(4);
    REQUIRE(f.prim_poly() == 0x13);
    REQUIRE(f.add(1, 2) == 3);
    REQUIRE(f.mul(2, 2) == 4);   // x * x = x^2
    REQUIRE(f.mul(2, 8) == 3);   // x * x^3 = x^4 = x + 1
    REQUIRE(f.inv(3) == 14);
    REQUIRE(f.mul(3, 14) == 1);
    REQUIRE(f.inv(1) == 1);
    REQUIRE_THROWS_AS(f.inv(0), std::domain_error);
    REQUIRE_THROWS_AS(f.log(0), std::domain_error);
}

TEST_CASE("gf2 is boolean arithmetic", "[gf]") {
    const Field& f = Field::get(1);
    REQUIRE(f.q() == 2);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            REQUIRE(f.add(a, b) == (a ^ b));
            REQUIRE(f.mul(a, b) == (a & b));
        }
    REQUIRE(f.inv(1) == 1);
}

TEST_CASE("mul matches polynomial reference on all pairs", "[gf]") {
    for (int m : kDegrees) {
        const Field& f = Field::get(m);
        for (int a = 0; a < f.q(); ++a)
            for (int b = 0; b < f.q(); ++b)
                REQUIRE(f.mul(a, b) == poly_mul(a, b, f.prim_poly(), m));
    }
}

TEST_CASE("field axioms", "[gf]") {
    std::mt19937 gen(12345);
    for (int m : kDegrees) {
        const Field& f = Field::get(m);
        std::uniform_int_distribution<int> d(0, f.q() - 1);
        int triples = (m <= 4) ? f.q() * f.q() * f.q() : 20000;
        for (int t = 0; t < triples; ++t) {
            std::uint8_t a, b, c;
            if (m <= 4) {
                a = t % f.q();
                b = (t / f.q()) % f.q();
                c = (t / (f.q() * f.q())) % f.q();
            } else {
                a = d(gen);
                b = d(gen);
                c = d(gen);
            }
            REQUIRE(f.add(a, b) == f.add(b, a));
            REQUIRE(f.mul(a, b) == f.mul(b, a));
            REQUIRE(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
            REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
            REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            REQUIRE(f.add(a, f.add(a, b)) == b);  // xor involution
        }
    }
}

TEST_CASE("inverse and fermat", "[gf]") {
    for (int m : kDegrees) {
        const Field& f = Field::get(m);
        for (int a = 1; a < f.q(); ++a) {
            REQUIRE(f.mul(a, f.inv(a)) == 1);
            REQUIRE(f.pow(a, f.q() - 1) == 1);
        }
        REQUIRE(f.pow(0, 0) == 1);
        REQUIRE(f.pow(0, 3) == 0);
    }
}

TEST_CASE("op counter", "[gf]") {
    const Field& f = Field::get(4);
    lrfc::OpCount::reset();
    f.mul(5, 7);
    REQUIRE(lrfc::OpCount::value() == 0);  // disabled by default
    lrfc::OpCount::enabled() = true;
    f.mul(5, 7);
    f.add(1, 2);
    f.inv(9);
    lrfc::OpCount::enabled() = false;
    REQUIRE(lrfc::OpCount::value() == 3);
    f.mul(5, 7);
    REQUIRE(lrfc::OpCount::value() == 3);
    lrfc::OpCount::reset();
    REQUIRE(lrfc::OpCount::value() == 0);
}
