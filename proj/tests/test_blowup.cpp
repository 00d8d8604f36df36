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
#include "petals/blowup.hpp"
#include "support.hpp"

using namespace petals;
using petals::testing::rng;

static poly2 Z() { return poly2::var_z(mode::exact); }
static poly2 W() { return poly2::var_w(mode::exact); }
static coeff ci(long v) { return coeff::exact_int(v); }

// pi o f-tilde == f o pi as truncated series, in the chart's coordinates.
static bool lift_identity_holds(const germ2& f, const lifted_germ& lf) {
    const blow_record& rec = lf.where.history.back();
    poly2 u = poly2::var_z(mode::exact), t = poly2::var_w(mode::exact);
    int T = lf.g.trunc();
    poly2 pz, pw;
    if (rec.kind == chart_kind::u1) {
        pz = u;
        pw = u * (t + poly2::constant(rec.center));
    } else {
        pz = u * (t + poly2::constant(rec.center));
        pw = u;
    }
    // pi o f-tilde
    poly2 pf_z, pf_w;
    if (rec.kind == chart_kind::u1) {
        pf_z = lf.g.f1;
        pf_w = lf.g.f1 * (lf.g.f2 + poly2::constant(rec.center, T));
    } else {
        pf_z = lf.g.f1 * (lf.g.f2 + poly2::constant(rec.center, T));
        pf_w = lf.g.f1;
    }
    // f o pi
    poly2 fp_z = poly2::compose(f.f1.with_trunc(T), pz, pw);
    poly2 fp_w = poly2::compose(f.f2.with_trunc(T), pz, pw);
    return pf_z.equals(fp_z) && pf_w.equals(fp_w);
}

TEST_CASE("blow-up of (z+z^2, w+w^2) at [1:0]") {
    germ2 f{Z() + Z() * Z(), W() + W() * W()};
    lifted_germ lf = blow_up(f, direction::of(ci(1), ci(0)), 9);
    // f1-part is untouched in the u1 chart.
    CHECK(lf.g.f1.equals((Z() + Z() * Z()).with_trunc(lf.g.trunc())));
    // Exceptional divisor is pointwise fixed: f2(0,t) = t.
    poly2 on_S = lf.g.h();
    CHECK(on_S.z_valuation() >= 1);
    CHECK(lift_identity_holds(f, lf));
    // t + u t(t-1)(1+u)^{-1}: check the first few coefficients.
    CHECK(lf.g.f2.at(1, 2) == ci(1));
    CHECK(lf.g.f2.at(1, 1) == ci(-1));
    CHECK(lf.g.f2.at(2, 2) == ci(-1));
    CHECK(lf.g.f2.at(2, 1) == ci(1));
}

TEST_CASE("order bookkeeping: id + high order terms") {
    germ2 f{Z() + W() * W() * W() * W() * W(), W() + Z() * Z() * Z() * Z() * Z()};
    int N = order(f);
    lifted_germ lf = blow_up(f, direction::of(ci(1), ci(0)), 9);
    poly2 diff1 = lf.g.g(), diff2 = lf.g.h();
    int o = std::min(diff1.order().value_or(poly2::entire),
                     diff2.order().value_or(poly2::entire));
    CHECK(o >= N - 1);
}

TEST_CASE("lift identity on random germs, all chart kinds") {
    rng rg(808);
    int done = 0;
    for (int i = 0; i < 120 && done < 50; ++i) {
        germ2 f = rg.tangent_germ(5);
        try {
            lifted_germ a = blow_up_in_chart(f, chart_kind::u1, ci(0), 8);
            CHECK(lift_identity_holds(f, a));
            lifted_germ b = blow_up_in_chart(f, chart_kind::u2, ci(0), 8);
            CHECK(lift_identity_holds(f, b));
            lifted_germ c = blow_up_in_chart(f, chart_kind::u1, rg.small_rational(), 8);
            CHECK(lift_identity_holds(f, c));
            ++done;
        } catch (const error&) {
        }
    }
    CHECK(done == 50);
}

TEST_CASE("exceptional divisor pointwise fixed, adapted shape") {
    rng rg(4242);
    int done = 0;
    for (int i = 0; i < 80 && done < 30; ++i) {
        germ2 f = rg.tangent_germ(4);
        try {
            if (is_dicritical(f)) continue;
            lifted_germ lf = blow_up(f, direction::of(ci(1), rg.small_rational()), 8);
            // f-tilde|_S = id_S
            CHECK(lf.g.g().z_valuation() >= 1);
            CHECK(lf.g.h().z_valuation() >= 1);
            // Tangential shape: z^2 divides f1 - z (non-dicritical origin).
            CHECK(lf.g.g().z_valuation() >= 2);
            ++done;
        } catch (const error&) {
        }
    }
    CHECK(done >= 20);
}

TEST_CASE("singular points on S are exactly the characteristic directions") {
    rng rg(616);
    int done = 0;
    for (int i = 0; i < 100 && done < 20; ++i) {
        germ2 f = rg.tangent_germ(4);
        try {
            if (is_dicritical(f)) continue;
            auto dirs = characteristic_directions(f);
            // Resolved [1:c] directions are singular points of the lift.
            for (const auto& d : dirs.dirs) {
                if (d.v1.is_zero()) continue;
                lifted_germ lf = blow_up(f, d, 8);
                auto af = try_adapted_form(lf);
                if (af) {
                    index_data idx = residual_index(*af);
                    CHECK(idx.n >= 1);
                }
            }
            // A few random non-characteristic points must not be singular.
            for (int probe = 0; probe < 3; ++probe) {
                coeff c = rg.small_rational();
                direction cand = direction::of(ci(1), c);
                bool is_char = false;
                for (const auto& d : dirs.dirs)
                    if (d.same_point(cand)) is_char = true;
                if (is_char) continue;
                lifted_germ lf = blow_up(f, cand, 8);
                auto af = try_adapted_form(lf);
                if (af) {
                    index_data idx = residual_index(*af);
                    CHECK(idx.n == 0);
                }
            }
            ++done;
        } catch (const error&) {
        }
    }
    CHECK(done >= 10);
}

TEST_CASE("push-forward of points") {
    chart ch;
    ch.history.push_back(blow_record{chart_kind::u1, ci(0)});
    auto [x, y] = ch.push_forward(cplx{0.1, 0.0}, cplx{0.2, 0.0});
    CHECK(std::abs(x - cplx{0.1, 0.0}) < 1e-15);
    CHECK(std::abs(y - cplx{0.02, 0.0}) < 1e-15);

    chart none;
    auto [x0, y0] = none.push_forward(cplx{0.3, 0.1}, cplx{-0.2, 0.0});
    CHECK(x0 == cplx{0.3, 0.1});
    CHECK(y0 == cplx{-0.2, 0.0});

    // Two recorded steps compose like the hand-written monomial maps.
    chart two;
    two.history.push_back(blow_record{chart_kind::u1, ci(0)});
    two.history.push_back(blow_record{chart_kind::chain, ci(0)});
    cplx u{0.05, 0.01}, t{0.3, -0.2};
    auto [a, b] = two.push_forward(u, t);
    // chain: (u,t) -> (u t, t); then u1: (p,q) -> (p, p q).
    cplx p = u * t, q = t;
    CHECK(std::abs(a - p) < 1e-15);
    CHECK(std::abs(b - p * q) < 1e-15);
}

TEST_CASE("blow-up refuses hopeless truncation") {
    germ2 f{Z() + Z() * Z(), W() + W() * W()};
    germ2 tf{f.f1.with_trunc(2), f.f2.with_trunc(2)};
    CHECK_THROWS_AS(blow_up(tf, direction::of(ci(1), ci(0))), truncation_error);
}
