#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tmtlc/poly.hpp"
#include "tmtlc/ratfunc.hpp"

#include <random>

using namespace tmtlc;
using PolyI = Poly<Int>;
using PolyQ = Poly<Rat>;

namespace {

std::mt19937_64 rng(20240817);

PolyI random_poly(long deg, int bits) {
    std::uniform_int_distribution<long> d(0, deg);
    long dd = d(rng);
    std::vector<Int> c(static_cast<size_t>(dd) + 1);
    for (auto& x : c) {
        Int v = 0;
        for (int b = 0; b < bits; b += 32) v = (v << 32) | Int(static_cast<unsigned>(rng()));
        if (rng() & 1) v = -v;
        x = v;
    }
    if (c.back() == 0) c.back() = 1;
    return PolyI(std::move(c));
}

PolyI naive_mul(const PolyI& a, const PolyI& b) {
    if (a.is_zero() || b.is_zero()) return PolyI();
    std::vector<Int> c(static_cast<size_t>(a.degree() + b.degree()) + 1, Int(0));
    for (long i = 0; i <= a.degree(); ++i)
        for (long j = 0; j <= b.degree(); ++j)
            c[static_cast<size_t>(i + j)] += a.coeff(i) * b.coeff(j);
    return PolyI(std::move(c));
}

}  // namespace

TEST_CASE("basic arithmetic and rendering") {
    PolyI p(std::vector<Int>{1, -2, 0, 1});  // u^3 - 2u + 1
    CHECK(p.degree() == 3);
    CHECK(to_string(p, "u") == "u^3 - 2*u + 1");
    CHECK(to_string(PolyI(), "u") == "0");
    CHECK(to_string(PolyI(Int(-1)), "u") == "-1");
    CHECK(p + (-p) == PolyI());
    CHECK(p - p == PolyI());
    CHECK(PolyI::monomial(Int(1), 4).degree() == 4);
    CHECK(p.eval(Int(2)) == 5);
}

TEST_CASE("divrem and monic over a field") {
    PolyQ a(std::vector<Rat>{Rat(1), Rat(0), Rat(2), Rat(1)});
    PolyQ b(std::vector<Rat>{Rat(1), Rat(1)});
    auto [q, r] = divrem(a, b);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
    PolyQ m = a.scaled(Rat(3)).monic();
    CHECK(m.lead() == Rat(1));
    CHECK(m == a);
}

TEST_CASE("field gcd") {
    PolyQ g(std::vector<Rat>{Rat(1), Rat(1)});                 // u + 1
    PolyQ a = g * PolyQ(std::vector<Rat>{Rat(-2), Rat(1)});    // (u+1)(u-2)
    PolyQ b = g * PolyQ(std::vector<Rat>{Rat(5), Rat(0), Rat(1)});
    CHECK(gcd(a, b).monic() == g);
    CHECK(gcd(a, PolyQ()).monic() == a.monic());
}

TEST_CASE("content and primitive part") {
    PolyI p(std::vector<Int>{6, -9, 12});
    CHECK(content(p) == 3);
    CHECK(primitive(p) == PolyI(std::vector<Int>{2, -3, 4}));
    CHECK(div_scalar_exact(p, Int(3)) == primitive(p));
    CHECK_THROWS_AS(div_scalar_exact(p, Int(5)), undefined_input);
}

TEST_CASE("exact division, small and packed paths") {
    // small: classical synthetic division
    PolyI a(std::vector<Int>{2, 3, 1});  // (u+1)(u+2)
    PolyI b(std::vector<Int>{1, 1});
    CHECK(div_exact(a, b) == PolyI(std::vector<Int>{2, 1}));
    CHECK_THROWS_AS(div_exact(PolyI(std::vector<Int>{1, 1, 1}), b), undefined_input);

    // large: the packed-integer route must agree with the definition
    for (int trial = 0; trial < 10; ++trial) {
        PolyI x = random_poly(150, 96);
        PolyI y = random_poly(80, 64);
        PolyI prod = x * y;
        CHECK(div_exact(prod, y) == x);
        CHECK(div_exact(prod, x) == y);
    }
}

TEST_CASE("multiplication crosses the packed threshold consistently") {
    for (int trial = 0; trial < 12; ++trial) {
        PolyI x = random_poly(90, 128);
        PolyI y = random_poly(70, 128);
        CHECK(x * y == naive_mul(x, y));
    }
    // degenerate shapes
    CHECK(PolyI() * random_poly(40, 32) == PolyI());
    PolyI c(Int(-7));
    PolyI z = random_poly(60, 64);
    CHECK(c * z == z.scaled(Int(-7)));
}

TEST_CASE("gcd over Z[u], including the modular path") {
    for (int trial = 0; trial < 8; ++trial) {
        PolyI g = primitive(random_poly(20, 40));
        if (g.lead() < 0) g = -g;
        PolyI a = g * random_poly(25, 40);
        PolyI b = g * random_poly(25, 40);
        PolyI d = gcd_int(a, b);
        // d divides both and is divisible by g
        CHECK_NOTHROW(div_exact(a, d));
        CHECK_NOTHROW(div_exact(b, d));
        CHECK_NOTHROW(div_exact(d, g));
    }
    SUBCASE("common u-power is preserved") {
        PolyI u3 = PolyI::monomial(Int(1), 3);
        PolyI u5 = PolyI::monomial(Int(2), 5);
        PolyI d = gcd_int(u3, u5);
        CHECK(d == PolyI::monomial(Int(1), 3));
    }
    SUBCASE("coprime inputs") {
        PolyI a(std::vector<Int>{1, 1});
        PolyI b(std::vector<Int>{2, 1});
        CHECK(gcd_int(a, b).degree() == 0);
    }
    SUBCASE("zero operands") {
        PolyI a(std::vector<Int>{3, 6});
        PolyI prim(std::vector<Int>{1, 2});
        CHECK(gcd_int(a, PolyI()) == prim);
        CHECK(gcd_int(PolyI(), a) == prim);
    }
}

TEST_CASE("compose_power and reversal") {
    PolyI p(std::vector<Int>{1, 2, 3});
    PolyI p2 = p.compose_power(2);
    CHECK(p2.degree() == 4);
    CHECK(p2.coeff(2) == 2);
    CHECK(p2.coeff(1) == 0);
    CHECK(p.reversed() == PolyI(std::vector<Int>{3, 2, 1}));
}

TEST_CASE("rational functions reduce canonically") {
    RatFunc x(PolyI(std::vector<Int>{0, 2}), PolyI(std::vector<Int>{0, 0, 4}));
    CHECK(to_string(x) == "(1)/(2*u)");
    CHECK(x * RatFunc::u() * RatFunc(Int(2)) == RatFunc(Int(1)));
    CHECK((x - x).is_zero());
    CHECK(RatFunc::u().inv() * RatFunc::u() == RatFunc(Int(1)));
    RatFunc y = RatFunc::u() * RatFunc::u() - RatFunc::u();  // u^2 - u
    CHECK(y.degree() == 2);
    CHECK(y.eval(Rat(3)) == Rat(6));
    CHECK(is_doubly_monic(PolyI(std::vector<Int>{-1, 0, 1})));
    CHECK_FALSE(is_doubly_monic(PolyI(std::vector<Int>{2, 0, 1})));
    CHECK_FALSE(is_doubly_monic(PolyI(std::vector<Int>{1, 0, 2})));
}
