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

#include "petals/toperator.hpp"
#include "support.hpp"

using namespace petals;

static poly2 Z() { return poly2::var_z(mode::exact); }
static poly2 W() { return poly2::var_w(mode::exact); }
static coeff ci(long v) { return coeff::exact_int(v); }
static coeff cr(long a, long b) { return coeff::exact_rat(a, b); }

static germ2 witness_n2_generic() {
    germ2 f;
    f.f1 = Z() + (Z() * Z() * W()).scaled(ci(2)) + (Z() * Z() * Z()).scaled(cr(1, 2));
    f.f2 = W() + Z() * Z() + Z() * W() * W() + (Z() * Z() * W()).scaled(cr(1, 3)) +
           (Z() * Z() * Z()).scaled(cr(-1, 4));
    return f;
}

static const normalized_germ& witness_normalized() {
    static normalized_germ ng = [] {
        germ2 f = witness_n2_generic();
        lifted_germ lf;
        lf.g.f1 = f.f1;
        lf.g.f2 = f.f2;
        adapted_form af = extract_adapted_form(lf);
        index_data idx = residual_index(af);
        normalized_germ g = normalize(af, idx);
        shift_ladder(g);
        return g;
    }();
    return ng;
}

static curve_options test_opts() {
    curve_options co;
    co.nr = 32;
    co.nt = 32;
    return co;
}

static const parabolic_solution& witness_solution() {
    static parabolic_solution sol = solve_parabolic_curve(witness_normalized(), test_opts());
    return sol;
}

TEST_CASE("membership predicate basics") {
    petal_domain d{1, 2, 0.1, 0.0, -1};
    // Boundary |q - delta| = delta is excluded: q == 0 is not a member.
    CHECK_FALSE(d.contains(cplx{1e-300, 0.0}));
    // A point with q ~ delta (disk center) is a member.
    component_count cc = count_components(d, raster_spec{128, 256, 1e-5});
    REQUIRE(cc.touching_origin >= 1);
    cplx center = petal_center(d, cc.components.front());
    CHECK(d.contains(center));
    // On-cut queries are refused.
    CHECK_THROWS(d.contains(cplx{-0.01, 0.0}));
}

TEST_CASE("delta doubling grows the set") {
    petal_domain d1{1, 2, 1e-3, 0.0, -1};
    petal_domain d2{1, 2, 2e-3, 0.0, -1};
    testing::rng rg(7);
    int members = 0;
    for (int i = 0; i < 20000; ++i) {
        double lr = rg.real(-9.0, -1.0), th = rg.real(-M_PI + 1e-6, M_PI);
        cplx z = std::exp(lr) * cplx{std::cos(th), std::sin(th)};
        if (d1.contains_nothrow(z)) {
            ++members;
            CHECK(d2.contains_nothrow(z));
        }
    }
    CHECK(members > 50);
}

TEST_CASE("component counts are r+1 for the four configurations") {
    struct cfg { int r, n, want; };
    for (cfg c : {cfg{1, 2, 2}, cfg{2, 2, 3}, cfg{1, 3, 2}, cfg{3, 4, 4}}) {
        petal_domain d{c.r, c.n, 1e-3, 0.0, -1};
        component_count cc = count_components(d, raster_spec{512, 512, 1e-6});
        CHECK(cc.touching_origin == c.want);
        // stability under refinement
        component_count cc2 = count_components(d, raster_spec{1024, 1024, 1e-6});
        CHECK(cc2.touching_origin == c.want);
    }
}

TEST_CASE("model-map orbit reproduces the asymptotic law") {
    // zeta - zeta^{rho+1} (log zeta)^{sigma} alone drives the diagnostic
    // toward 1 and satisfies the 2/3..2 sandwich at every step.
    petal_domain d{1, 2, 1e-2, 0.0, -1};
    branch br = d.br();
    auto map = [&](cplx z) {
        cplx t = br.tval(z);
        return z - std::exp(br.log(z) * 2.5) * t;
    };
    component_count cc = count_components(d, raster_spec{192, 384, 1e-5});
    REQUIRE(cc.touching_origin == 2);
    cplx z0 = petal_center(d, cc.components.front());
    orbit_options oo;
    oo.kmax = 10000;
    oo.track_points = false;
    orbit_record rec = iterate_orbit(map, z0, d, oo);
    CHECK_FALSE(rec.escaped);
    CHECK(rec.sandwich_ok);
    // Convergence toward 1 as k grows (the window is diagnostic, the
    // trend is the [PAPER] claim).
    double early = std::abs(rec.diag[99]);
    double late = std::abs(rec.diag.back());
    CHECK(std::abs(late - 1.0) < std::abs(early - 1.0));
    CHECK(std::abs(late - 1.0) < 0.08);
}

TEST_CASE("witness orbit diagnostics and sandwich") {
    const normalized_germ& ng = witness_normalized();
    petal_domain base{ng.r, ng.n, 1e-2, 0.0, -1};
    component_count cc = count_components(base, raster_spec{192, 384, 1e-5});
    REQUIRE(cc.touching_origin == ng.r + 1);
    for (const auto& base_comp : cc.components) {
        // Each petal is iterated in its own branch (cut on the far side).
        petal_domain d = base;
        d.theta0 = 0.5 * (base_comp.theta_lo + base_comp.theta_hi);
        component_count local = count_components(d, raster_spec{192, 384, 1e-5});
        component_info comp = base_comp;
        for (const auto& cand : local.components)
            if (d.theta0 >= cand.theta_lo - 1e-9 && d.theta0 <= cand.theta_hi + 1e-9)
                comp = cand;
        series_eval f1(ng.num_shifted1, d.br());
        auto map = [&](cplx z) { return f1(z, cplx{0.0, 0.0}); };
        cplx z0 = petal_center(d, comp);
        orbit_options oo;
        oo.kmax = 30000;
        oo.track_points = true;
        orbit_record rec = iterate_orbit(map, z0, d, oo);
        CHECK_FALSE(rec.escaped);
        CHECK(rec.sandwich_ok);
        CHECK(rec.sandwich_lo >= 2.0 / 3.0);
        CHECK(rec.sandwich_hi <= 2.0);

        // Corollary-4.14 partial sums: convergent for s > rho, divergent
        // at s = rho, finite (slower stabilization) with q = 3.
        tail_sum_report conv = sum_tail_bound_check(rec.z, d.rho() + 1.0, 0.0, d);
        CHECK(conv.converged);
        CHECK(conv.c_empirical > 0);
        tail_sum_report edge = sum_tail_bound_check(rec.z, d.rho(), 0.0, d);
        CHECK_FALSE(edge.converged);
        tail_sum_report logs = sum_tail_bound_check(rec.z, d.rho() + 1.0, 3.0, d);
        CHECK(logs.growth < 0.05);
        CHECK(logs.growth < 0.5 * edge.growth);
    }
}

TEST_CASE("solved curves satisfy the weighted bounds, residual and contraction") {
    const normalized_germ& ng = witness_normalized();
    const parabolic_solution& full = witness_solution();
    REQUIRE(full.curves.size() >= 2);
    for (const auto& cv : full.curves) {
        CHECK(cv.bound_profile_max <= 1.0);
        CHECK(cv.residual_max < 1e-8);
        CHECK(cv.contraction < 0.9);
    }
    CHECK(full.attraction_ok);
    CHECK(full.separation > 0);

    // T applied to w == 0 lands inside the weighted unit ball.
    curve_approx zero = full.curves.front();
    std::fill(zero.w.begin(), zero.w.end(), cplx{0.0, 0.0});
    curve_approx t0 = apply_T(zero, ng, test_opts());
    CHECK(t0.bound_profile_max <= 1.0);
    bool nonzero = false;
    for (const auto& v : t0.w)
        if (std::abs(v) > 0) nonzero = true;
    CHECK(nonzero);
}

TEST_CASE("fixed point is stable under re-application of T") {
    const normalized_germ& ng = witness_normalized();
    curve_options co = test_opts();
    const parabolic_solution& sol = witness_solution();
    REQUIRE(!sol.curves.empty());
    const curve_approx& g = sol.curves.front();
    curve_approx tg = apply_T(g, ng, co);
    double worst = 0.0;
    for (int i = 0; i < g.nr; ++i)
        for (int j = 0; j < g.nt; ++j) {
            size_t idx = (size_t)i * g.nt + j;
            if (!g.member[idx]) continue;
            worst = std::max(worst, std::abs(tg.w[idx] - g.w[idx]));
        }
    CHECK(worst < 1e-9);
}

TEST_CASE("contraction on a pair of weighted-ball elements") {
    const normalized_germ& ng = witness_normalized();
    curve_options co = test_opts();
    const parabolic_solution& sol = witness_solution();
    REQUIRE(!sol.curves.empty());
    curve_approx u = sol.curves.front(), v = sol.curves.front();
    testing::rng rg(3);
    for (int i = 0; i < u.nr; ++i)
        for (int j = 0; j < u.nt; ++j) {
            size_t idx = (size_t)i * u.nt + j;
            cplx z = u.node(i, j);
            u.w[idx] = 0.3 * u.weight(z);
            v.w[idx] = cplx{-0.2, 0.1} * v.weight(z);
        }
    curve_approx tu = apply_T(u, ng, co), tv = apply_T(v, ng, co);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < u.nr; ++i)
        for (int j = 0; j < u.nt; ++j) {
            size_t idx = (size_t)i * u.nt + j;
            if (!u.member[idx]) continue;
            cplx z = u.node(i, j);
            num = std::max(num, std::abs((tu.w[idx] - tv.w[idx]) / u.weight(z)));
            den = std::max(den, std::abs((u.w[idx] - v.w[idx]) / u.weight(z)));
        }
    CHECK(num < den);
}

TEST_CASE("push-forward invariance under the original germ") {
    germ2 f = witness_n2_generic();
    const normalized_germ& ng = witness_normalized();
    curve_options co = test_opts();
    const parabolic_solution& sol = witness_solution();
    REQUIRE(!sol.curves.empty());
    chart no_history;  // witness enters as an adapted germ already
    germ2 f_float{poly2(mode::floating, poly2::entire), poly2(mode::floating, poly2::entire)};
    for (const auto& [e, c] : f.f1.terms()) f_float.f1.insert_term(e.dz, e.dw, coeff(c.to_cplx()));
    for (const auto& [e, c] : f.f2.terms()) f_float.f2.insert_term(e.dz, e.dw, coeff(c.to_cplx()));
    pushforward_report rep =
        push_forward_curve(sol.curves.front(), ng, no_history, f_float, 50, co);
    CHECK(rep.normalized_residual_max < 1e-8);
    CHECK(rep.residual_max < 1e-7);
    CHECK(rep.orbits_converge);
    CHECK(rep.samples.size() > 30);
}

TEST_CASE("estimate shapes hold with stable constants") {
    const normalized_germ& ng = witness_normalized();
    curve_options co = test_opts();
    const parabolic_solution& sol = witness_solution();
    REQUIRE(!sol.curves.empty());
    estimate_report er = validate_estimates(sol.curves.front(), ng, co);
    CHECK(er.shapes_ok);
    CHECK(er.c15 > 0);
    CHECK(er.c16 > 0);
    CHECK(er.K17 > 0);
}
