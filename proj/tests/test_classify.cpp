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

#include "petals/classify.hpp"
#include "support.hpp"

using namespace petals;
using petals::testing::form_params;
using petals::testing::make_form_instance;
using petals::testing::rng;

static poly2 Z() { return poly2::var_z(mode::exact); }
static poly2 W() { return poly2::var_w(mode::exact); }
static coeff ci(long v) { return coeff::exact_int(v); }
static coeff cr(long n, long d) { return coeff::exact_rat(n, d); }

static lifted_germ as_lifted(const germ2& f, int T) {
    lifted_germ lf;
    lf.g.f1 = f.f1.with_trunc(T);
    lf.g.f2 = f.f2.with_trunc(T);
    return lf;
}

static classification classify_lifted(const lifted_germ& lf, adapted_form* afp = nullptr,
                                      index_data* idxp = nullptr) {
    adapted_form af = extract_adapted_form(lf);
    index_data idx = residual_index(af);
    if (afp) *afp = af;
    if (idxp) *idxp = idx;
    return classify(af, idx);
}

TEST_CASE("hard-case witness classifies as hard") {
    // f1 = z + 2 z^2 w, f2 = w + b10 z^2 + z w^2: r=1, m=1, n=2, Ind=2.
    germ2 f;
    f.f1 = Z() + (Z() * Z() * W()).scaled(ci(2));
    f.f2 = W() + Z() * Z() + Z() * W() * W();
    adapted_form af;
    index_data idx;
    classification cl = classify_lifted(as_lifted(f, 10), &af, &idx);
    CHECK(af.r == 1);
    CHECK(idx.m == 1);
    CHECK(idx.n == 2);
    CHECK(idx.index == ci(2));
    CHECK(cl.kind == germ_case::hard);
    CHECK(cl.curve_count == 1);
    CHECK_THROWS_AS(easy_case_target(af, idx), hypothesis_error);
}

TEST_CASE("n=1 with index not in {0,1}: nondegenerate direction") {
    // A0 = a00 + ..., B1 = b10 z + b01 w: Ind = a00/b01.
    germ2 f;
    f.f1 = Z() + (Z() * Z()).scaled(ci(3));
    f.f2 = W() + Z() * (Z().scaled(ci(2)) + W());
    classification cl = classify_lifted(as_lifted(f, 9));
    CHECK(cl.kind == germ_case::nondeg_direct);
    CHECK(cl.curve_count == 1);  // r = 1
    REQUIRE(cl.target.has_value());
    // w = b10 (a00 - b01)^{-1} = 2/(3-1) = 1.
    CHECK(cl.target->v2 == ci(1));
    CHECK(*cl.lambda == ci(3));
}

TEST_CASE("m=0, n>1: nondegenerate direction [1 : b10/a00]") {
    germ2 f;
    f.f1 = Z() + Z() * Z() * (poly2::constant(ci(2)) + W());  // A0 = 2 + w
    f.f2 = W() + Z() * (Z().scaled(ci(4)) + W() * W());       // B1 = 4z + w^2
    classification cl = classify_lifted(as_lifted(f, 9));
    CHECK(cl.kind == germ_case::easy_a);
    CHECK(cl.curve_count == 1);
    REQUIRE(cl.target.has_value());
    CHECK(cl.target->v2 == ci(2));  // 4/2
}

TEST_CASE("index zero and not-singular and not-tangential gates") {
    // m >= n makes the index vanish.
    germ2 f;
    f.f1 = Z() + Z() * Z() * W() * W();
    f.f2 = W() + Z() * (Z() + W());
    classification cl = classify_lifted(as_lifted(f, 9));
    CHECK(cl.kind == germ_case::index_zero);

    // B1 with a constant term: non-singular point.
    germ2 g;
    g.f1 = Z() + Z() * Z() * W();
    g.f2 = W() + Z() * (poly2::constant(ci(1)) + W());
    classification cg = classify_lifted(as_lifted(g, 9));
    CHECK(cg.kind == germ_case::not_singular);

    // Non-tangential germ: handled by the caller via try_adapted_form.
    lifted_germ lt = as_lifted(germ2{Z() + Z() * W(), W() + Z() * Z() * W()}, 9);
    CHECK_FALSE(try_adapted_form(lt).has_value());
}

TEST_CASE("easy-case target formula and the lambda identity") {
    rng rg(12);
    int done = 0;
    for (int i = 0; i < 200 && done < 60; ++i) {
        int n = (int)rg.integer(2, 4);
        int m = (int)rg.integer(1, n - 1);
        form_params fp{(int)rg.integer(1, 2), m, n, rg.small_rational(false),
                       rg.small_rational(false), rg.small_rational(false)};
        germ2 f = make_form_instance(rg, fp);
        adapted_form af;
        index_data idx;
        classification cl;
        try {
            cl = classify_lifted(as_lifted(f, 16), &af, &idx);
        } catch (const hypothesis_error&) {
            continue;
        }
        if (cl.kind != germ_case::easy_a && cl.kind != germ_case::easy_b) continue;
        if (idx.m < 1) continue;
        auto [z0, lambda] = easy_case_target(af, idx);
        // lambda agrees with b10 z0^{r+1} + b_{0,m+1} z0^r in all cases.
        coeff zr = coeff::one(mode::exact);
        for (int k = 0; k < af.r; ++k) zr *= z0;
        coeff general = af.b(1, 0) * zr * z0 + af.b(0, idx.m + 1) * zr;
        CHECK(lambda == general);
        CHECK_FALSE(z0.is_zero());
        ++done;
    }
    CHECK(done >= 40);
}

TEST_CASE("chain leading terms match the k=1 expansion") {
    rng rg(999);
    // Case (a) instance with m = 1, n = 3.
    form_params fp{1, 1, 3, cr(3, 2), ci(1), cr(-2, 1)};
    germ2 f = make_form_instance(rg, fp, 2);
    int r = fp.r, m = fp.m;
    chain_result cres = linear_chain(as_lifted(f, 14), 1);
    REQUIRE_FALSE(cres.terminated_early);
    const germ2& g = cres.g.g;
    // f1^[1] = z + z^r w^r [ -b10 z^2 + (a0m - b0,m+1) z w^m + ...]
    CHECK(g.f1.at(r + 2, r) == -fp.b10);
    CHECK(g.f1.at(r + 1, r + m) == fp.a0m);  // b_{0,m+1} = 0 since m+1 < n
    // f2^[1] = w + z^r w^r [ b10 z w + b0,m+1 w^{m+2-1} ...]
    CHECK(g.f2.at(r + 1, r + 1) == fp.b10);
    CHECK(g.f2.at(r, r + m + 1) == ci(0));
}

TEST_CASE("chain certificates for random easy instances") {
    rng rg(2025);
    int done_a = 0, done_b = 0;
    for (int i = 0; i < 400 && (done_a < 15 || done_b < 15); ++i) {
        int n = (int)rg.integer(2, 4);
        bool want_b = (done_b < 15) && (rg.integer(0, 1) == 0 || done_a >= 15);
        int m = want_b ? n - 1 : (n >= 3 ? (int)rg.integer(1, n - 2) : 1);
        if (!want_b && m >= n - 1) continue;
        form_params fp{(int)rg.integer(1, 2), m, n, rg.small_rational(false),
                       rg.small_rational(false), rg.small_rational(false)};
        germ2 f = make_form_instance(rg, fp);
        int T = fp.r + m * (fp.r + 1) + m + 4;
        adapted_form af;
        index_data idx;
        classification cl;
        try {
            cl = classify_lifted(as_lifted(f, T), &af, &idx);
        } catch (const hypothesis_error&) {
            continue;
        }
        if (cl.kind == germ_case::easy_a && done_a < 15) {
            chain_certificate cert = certify_chain(as_lifted(f, T), af, idx, cl);
            CHECK(cert.ok);
            CHECK(cert.order_after - 1 == fp.r + m * (fp.r + 1));
            ++done_a;
        } else if (cl.kind == germ_case::easy_b && done_b < 15) {
            chain_certificate cert = certify_chain(as_lifted(f, T), af, idx, cl);
            CHECK(cert.ok);
            ++done_b;
        }
    }
    CHECK(done_a >= 15);
    CHECK(done_b >= 15);
}

TEST_CASE("hard-case chain reaches the degenerate point at step n") {
    germ2 f;
    f.f1 = Z() + (Z() * Z() * W()).scaled(ci(2));
    f.f2 = W() + Z() * Z() + Z() * W() * W();
    adapted_form af;
    index_data idx;
    classification cl = classify_lifted(as_lifted(f, 12), &af, &idx);
    REQUIRE(cl.kind == germ_case::hard);
    chain_certificate cert = certify_chain(as_lifted(f, 12), af, idx, cl);
    CHECK(cert.ok);
    CHECK(cert.degenerate_endpoint);
    CHECK(cert.degenerate_at_step == idx.n);
}

TEST_CASE("classification is invariant under coordinate rescaling") {
    rng rg(51);
    int done = 0;
    for (int i = 0; i < 120 && done < 30; ++i) {
        int n = (int)rg.integer(1, 3);
        int m = (int)rg.integer(0, std::max(0, n - 1));
        form_params fp{(int)rg.integer(1, 2), m, n, rg.small_rational(false),
                       rg.small_rational(false), rg.small_rational(false)};
        germ2 f = make_form_instance(rg, fp);
        coeff al = rg.small_rational(false), be = rg.small_rational(false);
        // (z,w) -> (alpha z, beta w) conjugation.
        germ2 g;
        poly2 sz = Z().scaled(al), sw = W().scaled(be);
        g.f1 = poly2::compose(f.f1, sz, sw).scaled(coeff::one(mode::exact) / al);
        g.f2 = poly2::compose(f.f2, sz, sw).scaled(coeff::one(mode::exact) / be);
        classification c1, c2;
        try {
            c1 = classify_lifted(as_lifted(f, 12));
            c2 = classify_lifted(as_lifted(g, 12));
        } catch (const hypothesis_error&) {
            continue;
        }
        CHECK(c1.kind == c2.kind);
        CHECK(c1.curve_count == c2.curve_count);
        CHECK(c1.r == c2.r);
        CHECK(c1.m == c2.m);
        CHECK(c1.n == c2.n);
        ++done;
    }
    CHECK(done >= 20);
}

TEST_CASE("easy-c rescale certificate") {
    // n = 1, Ind = 1: a00 = b01.
    germ2 f;
    f.f1 = Z() + (Z() * Z()).scaled(ci(2));
    f.f2 = W() + Z() * (Z() + W().scaled(ci(2)));
    adapted_form af;
    index_data idx;
    classification cl = classify_lifted(as_lifted(f, 9), &af, &idx);
    REQUIRE(cl.kind == germ_case::easy_c);
    rescale_certificate rc = certify_easy_c(af);
    CHECK(rc.ok);
}
