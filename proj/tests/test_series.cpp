// Copyright 2026 The petals Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "petals/poly2.hpp"
#include "support.hpp"

using namespace petals;
using petals::testing::rng;

static poly2 Z() { return poly2::var_z(mode::exact); }
static poly2 W() { return poly2::var_w(mode::exact); }
static poly2 one() { return poly2::constant(coeff::exact_int(1)); }

TEST_CASE("product of conjugate linear forms") {
    poly2 p = (Z() + W()) * (Z() - W());
    CHECK(p.equals(Z() * Z() - W() * W()));
}

TEST_CASE("truncation kills overflow terms") {
    int N = 5;
    poly2 zN = Z().with_trunc(N);
    poly2 p = zN;
    for (int i = 1; i < N; ++i) p = (p * Z()).with_trunc(N);  // z^N
    CHECK_FALSE(p.is_zero());
    poly2 q = (p * Z()).with_trunc(N);  // z^{N+1}: nothing stored
    CHECK(q.is_zero());
}

TEST_CASE("(1+z)(1+w) truncated at 2") {
    poly2 p = ((one() + Z()) * (one() + W())).with_trunc(2);
    poly2 expect = one() + Z() + W() + Z() * W();
    CHECK(p.equals(expect.with_trunc(2)));
}

TEST_CASE("geometric series inverse") {
    poly2 inv = (one() + Z()).inverse(6);
    poly2 expect(mode::exact, 6);
    for (int k = 0; k <= 6; ++k)
        expect.insert_term(k, 0, coeff::exact_int(k % 2 == 0 ? 1 : -1));
    CHECK(inv.equals(expect));
    CHECK(poly2::constant(coeff::exact_int(2)).inverse(3).at(0, 0) ==
          coeff::exact_rat(1, 2));
}

TEST_CASE("inverse of 1+z+w satisfies the defining identity") {
    poly2 a = one() + Z() + W();
    poly2 inv = a.inverse(2);
    // Frozen expected value, cross-checked by multiplying back below.
    poly2 expect(mode::exact, 2);
    expect.insert_term(0, 0, coeff::exact_int(1));
    expect.insert_term(1, 0, coeff::exact_int(-1));
    expect.insert_term(0, 1, coeff::exact_int(-1));
    expect.insert_term(2, 0, coeff::exact_int(1));
    expect.insert_term(1, 1, coeff::exact_int(2));
    expect.insert_term(0, 2, coeff::exact_int(1));
    CHECK(inv.equals(expect));
    CHECK((a * inv).with_trunc(2).equals(one().with_trunc(2)));
}

TEST_CASE("series inverse identity on random units") {
    rng rg(42);
    for (int i = 0; i < 25; ++i) {
        poly2 a = one() + rg.sparse_poly(1, 5, 5);
        poly2 inv = a.inverse(7);
        CHECK((a * inv).with_trunc(7).equals(one().with_trunc(7)));
    }
}

TEST_CASE("compose basic identities") {
    poly2 outer = Z() * W();
    poly2 c = poly2::compose(outer, Z() + Z() * Z(), W());
    CHECK(c.equals(Z() * W() + Z() * Z() * W()));
    CHECK(poly2::compose(Z(), Z() * W(), W()).equals(Z() * W()));
    CHECK(poly2::compose(Z() * Z() + W(), W(), Z()).equals(W() * W() + Z()));
}

TEST_CASE("log1p expansion and exp oracle") {
    poly2 l = poly2::log1p(Z(), 5);
    poly2 expect(mode::exact, 5);
    expect.insert_term(1, 0, coeff::exact_int(1));
    expect.insert_term(2, 0, coeff::exact_rat(-1, 2));
    expect.insert_term(3, 0, coeff::exact_rat(1, 3));
    expect.insert_term(4, 0, coeff::exact_rat(-1, 4));
    expect.insert_term(5, 0, coeff::exact_rat(1, 5));
    CHECK(l.equals(expect));
    CHECK(poly2::log1p(poly2(mode::exact, 8), 8).is_zero());

    // exp(log(1+z)) at z = 0.01 must equal 1.01 to 1e-12.
    cplx v = l.eval(cplx{0.01, 0.0}, cplx{0.0, 0.0});
    CHECK(std::abs(std::exp(v) - cplx{1.01, 0.0}) < 1e-12);
}

TEST_CASE("binomial series for (1+z)^(1/2)") {
    poly2 s = poly2::pow_binomial(Z(), 1, 2, 4);
    poly2 expect(mode::exact, 4);
    expect.insert_term(0, 0, coeff::exact_int(1));
    expect.insert_term(1, 0, coeff::exact_rat(1, 2));
    expect.insert_term(2, 0, coeff::exact_rat(-1, 8));
    expect.insert_term(3, 0, coeff::exact_rat(1, 16));
    expect.insert_term(4, 0, coeff::exact_rat(-5, 128));
    CHECK(s.equals(expect));
    CHECK(poly2::pow_binomial(Z(), 0, 5, 4).equals(one().with_trunc(4)));
    poly2 p1 = poly2::pow_binomial(Z() + W(), 1, 1, 4);
    CHECK(p1.equals((one() + Z() + W()).with_trunc(4)));
}

TEST_CASE("pow round trip (1+u)^(p/n) then ^(n/p)") {
    rng rg(7);
    for (int i = 0; i < 10; ++i) {
        poly2 u = rg.sparse_poly(1, 4, 4);
        poly2 s = poly2::pow_binomial(u, 2, 3, 6);
        poly2 back = poly2::pow_binomial(s - one().with_trunc(6), 3, 2, 6);
        CHECK(back.equals((one() + u).with_trunc(6)));
    }
}

TEST_CASE("ring axioms on random exact triples") {
    rng rg(2024);
    for (int i = 0; i < 40; ++i) {
        poly2 a = rg.sparse_poly(0, 5, 5), b = rg.sparse_poly(0, 5, 5),
              c = rg.sparse_poly(0, 5, 5);
        CHECK((a * (b + c)).equals(a * b + a * c));
        CHECK(((a * b) * c).equals(a * (b * c)));
        CHECK((a * b).equals(b * a));
        CHECK((a + b).equals(b + a));
    }
}

TEST_CASE("evaluation commutes with arithmetic") {
    rng rg(99);
    for (int i = 0; i < 12; ++i) {
        poly2 a = rg.sparse_poly(0, 5, 6), b = rg.sparse_poly(0, 5, 6);
        for (int pt = 0; pt < 8; ++pt) {
            cplx z{rg.real(-0.3, 0.3), rg.real(-0.3, 0.3)};
            cplx w{rg.real(-0.3, 0.3), rg.real(-0.3, 0.3)};
            cplx lhs = (a * b).eval(z, w) + (a + b).eval(z, w);
            cplx rhs = a.eval(z, w) * b.eval(z, w) + a.eval(z, w) + b.eval(z, w);
            CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
        }
    }
}

TEST_CASE("exact evaluation commutes exactly at rational points") {
    rng rg(5);
    for (int i = 0; i < 10; ++i) {
        poly2 a = rg.sparse_poly(0, 4, 5), b = rg.sparse_poly(0, 4, 5);
        coeff z = rg.small_rational(), w = rg.small_rational();
        coeff lhs = (a * b).eval_exact(z, w);
        coeff rhs = a.eval_exact(z, w) * b.eval_exact(z, w);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("mixed modes throw") {
    poly2 a = Z();
    poly2 b = poly2::var_z(mode::floating);
    CHECK_THROWS_AS(a * b, mode_error);
    CHECK_THROWS_AS(coeff::exact_int(1) + coeff::fl(1.0), mode_error);
}

TEST_CASE("gcd of monomials and coprime pairs") {
    poly2 g = poly_gcd(Z() * Z() * W(), Z() * W() * W());
    CHECK(g.equals(Z() * W()));
    CHECK(poly_gcd(Z(), W()).degree() == 0);  // constant 1
}

TEST_CASE("gcd with a genuine common factor") {
    // gcd(zw + w^2, z^2 + zw) = z + w after normalization.
    poly2 a = Z() * W() + W() * W();
    poly2 b = Z() * Z() + Z() * W();
    poly2 g = poly_gcd(a, b);
    CHECK(g.equals(Z() + W()));
}

TEST_CASE("gcd divides both inputs exactly on random products") {
    rng rg(11);
    for (int i = 0; i < 20; ++i) {
        poly2 f = rg.sparse_poly(0, 3, 3), u = rg.sparse_poly(0, 3, 3),
              v = rg.sparse_poly(0, 3, 3);
        if (f.is_zero() || u.is_zero() || v.is_zero()) continue;
        poly2 a = f * u, b = f * v;
        poly2 g = poly_gcd(a, b);
        CHECK(poly_divides(g, a));
        CHECK(poly_divides(g, b));
        CHECK(poly_divides(f, g * poly_gcd(u, v)));  // f | g up to gcd(u,v)
    }
}

TEST_CASE("gcd rejects float and truncated input") {
    CHECK_THROWS(poly_gcd(poly2::var_z(mode::floating), poly2::var_w(mode::floating)));
    CHECK_THROWS_AS(poly_gcd(Z().with_trunc(4), W()), truncation_error);
}
