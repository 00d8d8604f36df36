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

#include "petals/adapted.hpp"
#include "support.hpp"

using namespace petals;
using petals::testing::rng;

static poly2 Z() { return poly2::var_z(mode::exact); }
static poly2 W() { return poly2::var_w(mode::exact); }
static coeff ci(long v) { return coeff::exact_int(v); }

static lifted_germ as_lifted(poly2 f1, poly2 f2, int T) {
    lifted_germ lf;
    lf.g.f1 = f1.with_trunc(T);
    lf.g.f2 = f2.with_trunc(T);
    return lf;
}

TEST_CASE("adapted form of (z+z^2, w+zw)") {
    lifted_germ lf = as_lifted(Z() + Z() * Z(), W() + Z() * W(), 8);
    adapted_form af = extract_adapted_form(lf);
    CHECK(af.r == 1);
    CHECK(af.A0.equals(poly2::constant(ci(1)).with_trunc(af.A0.trunc())));
    CHECK(af.B1.equals(W().with_trunc(af.B1.trunc())));
    CHECK(af.tangential);
    CHECK(af.nu_o == 1);

    index_data idx = residual_index(af);
    CHECK(idx.m == 0);
    CHECK(idx.n == 1);
    CHECK(idx.index == ci(1));
}

TEST_CASE("non-tangential witness errors out") {
    lifted_germ lf = as_lifted(Z() + Z() * Z() + Z() * W(), W(), 8);
    CHECK_FALSE(try_adapted_form(lf).has_value());
    CHECK_THROWS_AS(extract_adapted_form(lf), hypothesis_error);
}

TEST_CASE("index of the blow-up of the order-2 worked example at [1:0]") {
    // f1 = z + zw, f2 = w + 2w^2 + z^3 + z^4 (jet with b = 1)
    germ2 f;
    f.f1 = Z() + Z() * W();
    f.f2 = W() + (W() * W()).scaled(ci(2)) + Z() * Z() * Z() + Z() * Z() * Z() * Z();
    lifted_germ lf = blow_up(f, direction::of(ci(1), ci(0)), 10);
    adapted_form af = extract_adapted_form(lf);
    CHECK(af.tangential);
    CHECK(af.r == 1);
    index_data idx = residual_index(af);
    CHECK(idx.index == ci(1));
    CHECK(idx.m == 1);
    CHECK(idx.n == 2);
    CHECK(af.nu_o == 1);
}

TEST_CASE("simple residues") {
    // A0(0,w) = 1, B1(0,w) = w: k = 1/w.
    lifted_germ lf = as_lifted(Z() + Z() * Z(), W() + Z() * W(), 8);
    index_data idx = residual_index(extract_adapted_form(lf));
    CHECK(idx.index == ci(1));

    // A0(0,w) = 2w, B1(0,w) = w^2 (plus the b10 z term for pure order 1):
    // k = 2/w, Ind = 2, m = 1, n = 2.
    lifted_germ h = as_lifted(Z() + (Z() * Z() * W()).scaled(ci(2)),
                              W() + Z() * (W() * W() + Z()), 8);
    adapted_form af = extract_adapted_form(h);
    index_data idx2 = residual_index(af);
    CHECK(idx2.index == ci(2));
    CHECK(idx2.m == 1);
    CHECK(idx2.n == 2);

    cplx oracle = residue_contour_oracle(af);
    CHECK(std::abs(oracle - idx2.index.to_cplx()) <= 1e-8 * std::abs(oracle));
}

TEST_CASE("n=1 closed form index") {
    rng rg(1001);
    for (int i = 0; i < 50; ++i) {
        coeff a00 = rg.small_rational(false);
        coeff b01 = rg.small_rational(false);
        coeff b10 = rg.small_rational();
        int r = (int)rg.integer(1, 3);
        poly2 A0 = poly2::constant(a00) + rg.sparse_poly(1, 3, 3);
        poly2 B1 = W().scaled(b01) + Z().scaled(b10) +
                   (rg.sparse_poly(1, 2, 2) * W() * W());
        poly2 zr = poly2::constant(ci(1));
        for (int k = 0; k < r; ++k) zr *= Z();
        lifted_germ lf = as_lifted(Z() + zr * Z() * A0, W() + zr * B1, 10);
        adapted_form af;
        try {
            af = extract_adapted_form(lf);
        } catch (const hypothesis_error&) {
            continue;  // random extra common factor; skip
        }
        index_data idx = residual_index(af);
        REQUIRE(idx.n == 1);
        CHECK(idx.index == a00 / b01);
    }
}

TEST_CASE("exact residue equals contour oracle on random instances") {
    rng rg(77);
    int done = 0;
    for (int i = 0; i < 120 && done < 40; ++i) {
        int r = (int)rg.integer(1, 2);
        poly2 A0 = rg.sparse_poly(0, 3, 4);
        poly2 B1 = Z().scaled(rg.small_rational(false)) + rg.sparse_poly(1, 4, 4);
        poly2 zr = poly2::constant(ci(1));
        for (int k = 0; k < r; ++k) zr *= Z();
        lifted_germ lf = as_lifted(Z() + zr * Z() * A0, W() + zr * B1, 12);
        try {
            adapted_form af = extract_adapted_form(lf);
            index_data idx = residual_index(af);
            cplx oracle = residue_contour_oracle(af);
            cplx exact = idx.index.to_cplx();
            CHECK(std::abs(oracle - exact) <= 1e-8 * std::max(1.0, std::abs(exact)));
            ++done;
        } catch (const error&) {
        }
    }
    CHECK(done >= 30);
}

TEST_CASE("chart independence of the index") {
    rng rg(31337);
    int done = 0;
    for (int i = 0; i < 150 && done < 20; ++i) {
        germ2 f = rg.tangent_germ(4);
        try {
            if (is_dicritical(f)) continue;
            auto dirs = characteristic_directions(f);
            for (const auto& d : dirs.dirs) {
                if (d.v1.is_zero() || d.v2.is_zero()) continue;  // need both charts
                lifted_germ in_u1 = blow_up_in_chart(f, chart_kind::u1, d.v2, 9);
                lifted_germ in_u2 =
                    blow_up_in_chart(f, chart_kind::u2, coeff::one(mode::exact) / d.v2, 9);
                auto a1 = try_adapted_form(in_u1);
                auto a2 = try_adapted_form(in_u2);
                // Degeneracy along S is well posed, and the residue is
                // chart-independent; the function k(w) itself is not.
                REQUIRE(a1.has_value() == a2.has_value());
                if (!a1) continue;
                index_data i1 = residual_index(*a1);
                index_data i2 = residual_index(*a2);
                CHECK(i1.index == i2.index);
                ++done;
            }
        } catch (const error&) {
        }
    }
    CHECK(done >= 10);
}

TEST_CASE("m >= n forces a vanishing index") {
    rng rg(909);
    for (int i = 0; i < 30; ++i) {
        int n = (int)rg.integer(1, 3);
        int m = n + (int)rg.integer(0, 2);
        poly2 A0(mode::exact, poly2::entire);
        for (int j = m; j <= m + 2; ++j) A0.insert_term(0, j, rg.small_rational(j == m ? false : true));
        A0 += rg.sparse_poly(1, 3, 2) * Z();
        poly2 B1 = Z().scaled(rg.small_rational(false));
        for (int j = n; j <= n + 2; ++j) B1.insert_term(0, j, rg.small_rational(j == n ? false : true));
        lifted_germ lf = as_lifted(Z() + Z() * Z() * A0, W() + Z() * B1, 12);
        try {
            index_data idx = residual_index(extract_adapted_form(lf));
            if (idx.m >= idx.n) CHECK(idx.index.is_zero());
        } catch (const error&) {
        }
    }
}
