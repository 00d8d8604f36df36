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

#include "petals/classify.hpp"

#include <cmath>
#include <sstream>

namespace petals {

std::string to_string(germ_case c) {
    switch (c) {
        case germ_case::index_zero: return "index-zero";
        case germ_case::easy_a: return "easy-a (m < n-1)";
        case germ_case::easy_b: return "easy-b (m = n-1, index != n)";
        case germ_case::easy_c: return "easy-c (m = 0, n = 1, index = 1)";
        case germ_case::nondeg_direct: return "nondegenerate-direction (n = 1)";
        case germ_case::hard: return "hard (m = n-1, index = n)";
        case germ_case::not_tangential: return "not-tangential";
        case germ_case::not_singular: return "not-singular";
    }
    return "?";
}

static coeff make_int(mode md, long v) {
    return md == mode::exact ? coeff::exact_int(v) : coeff::fl((double)v);
}

classification classify(const adapted_form& af, const index_data& idx) {
    classification cl;
    cl.r = af.r;
    cl.m = idx.m;
    cl.n = idx.n;
    cl.index = idx.index;
    const mode md = af.B1.poly_mode();

    if (!idx.tangential) {
        cl.kind = germ_case::not_tangential;
        return cl;
    }
    if (idx.n == 0) {
        cl.kind = germ_case::not_singular;
        return cl;
    }
    if (idx.index.is_zero()) {
        cl.kind = germ_case::index_zero;
        return cl;
    }
    if (af.nu_o != 1)
        throw hypothesis_error("classify: pure order is " + std::to_string(af.nu_o) +
                               ", the construction needs pure order 1");

    const int r = af.r, m = idx.m, n = idx.n;
    const coeff one = coeff::one(md);

    if (n == 1) {
        // index = a00 / b01 here.
        if (idx.index == one) {
            cl.kind = germ_case::easy_c;
            cl.curve_count = r;
            // Tangent to [0:1] when b10 != 0, else to [1:0].
            cl.target = af.b(1, 0).is_zero()
                            ? direction::of(one, coeff::zero(md))
                            : direction::of(coeff::zero(md), one);
            return cl;
        }
        cl.kind = germ_case::nondeg_direct;
        cl.curve_count = r;
        direction d = direction::of(one, af.b(1, 0) / (af.a(0, 0) - af.b(0, 1)));
        d.lambda = af.a(0, 0);
        d.degenerate = false;
        cl.target = d;
        cl.lambda = af.a(0, 0);
        return cl;
    }

    // n >= 2 and index != 0 force m < n.
    if (m == 0) {
        cl.kind = germ_case::easy_a;
        cl.curve_count = r;
        direction d = direction::of(one, af.b(1, 0) / af.a(0, 0));
        d.lambda = af.a(0, 0);
        d.degenerate = false;
        cl.target = d;
        cl.lambda = af.a(0, 0);
        return cl;
    }

    if (m == n - 1 && idx.index == make_int(md, n)) {
        cl.kind = germ_case::hard;
        cl.curve_count = 1;
        cl.z0 = coeff::zero(md);
        return cl;
    }

    cl.kind = (m < n - 1) ? germ_case::easy_a : germ_case::easy_b;
    cl.curve_count = r + (long)m * (r + 1);
    auto [z0, lambda] = easy_case_target(af, idx);
    cl.z0 = z0;
    cl.lambda = lambda;
    direction d = direction::of(z0, one);
    d.lambda = lambda;
    d.degenerate = false;
    cl.target = d;
    return cl;
}

std::pair<coeff, coeff> easy_case_target(const adapted_form& af, const index_data& idx) {
    const mode md = af.B1.poly_mode();
    const int r = af.r, m = idx.m, n = idx.n;
    if (m < 1) throw hypothesis_error("easy_case_target: needs m >= 1");
    coeff b10 = af.b(1, 0);
    if (b10.is_zero())
        throw hypothesis_error("easy_case_target: b_{1,0} = 0 contradicts pure order 1");
    coeff m1 = make_int(md, m + 1);
    coeff z0 = (af.a(0, m) - m1 * af.b(0, m + 1)) / (m1 * b10);
    if (z0.is_zero())
        throw hypothesis_error("easy_case_target: z0 = 0 (hard case, chain degenerates)");
    coeff lambda;
    if (m < n - 1) {
        coeff p = z0;
        for (int i = 0; i < r; ++i) p *= z0;
        lambda = b10 * p;  // b10 * z0^{r+1}
    } else {
        coeff p = coeff::one(md);
        for (int i = 0; i < r; ++i) p *= z0;
        lambda = af.a(0, n - 1) / make_int(md, n) * p;  // (a_{0,n-1}/n) z0^r
    }
    return {z0, lambda};
}

chain_certificate certify_chain(const lifted_germ& at_p, const adapted_form& af,
                                const index_data& idx, const classification& cls) {
    chain_certificate cert;
    const mode md = af.B1.poly_mode();
    const int r = af.r, m = idx.m, n = idx.n;

    if (cls.kind == germ_case::hard) {
        // Remark-4.5 behavior: z0 = 0, so the step-(n-1) chain point has
        // [0:1] as a degenerate characteristic direction and the chain
        // meets it at step n, still singular but outside this
        // construction.
        chain_result cr = linear_chain(at_p, n - 1);
        if (cr.terminated_early) {
            cert.detail = "chain lost singularity before the expected degeneration";
            return cert;
        }
        int nu = order(cr.g.g);
        auto dirs = characteristic_directions(cr.g.g);
        for (const auto& d : dirs.dirs)
            if (d.v1.is_zero()) {  // [0:1], i.e. z0 = 0
                cert.target_found = true;
                cert.degenerate_endpoint = d.degenerate;
            }
        chain_step_info info;
        lifted_germ next = chain_step(cr.g, &info);
        (void)next;
        cert.steps = n - 1;
        cert.order_after = nu;
        cert.degenerate_at_step = n;
        cert.ok = cert.target_found && cert.degenerate_endpoint && info.singular;
        cert.detail = cert.ok ? "chain reaches degenerate point z0=0 at step n"
                              : "degenerate endpoint pattern not confirmed";
        return cert;
    }

    if (cls.kind != germ_case::easy_a && cls.kind != germ_case::easy_b)
        throw hypothesis_error("certify_chain: only the m >= 1 easy cases run a chain");
    if (m < 1) throw hypothesis_error("certify_chain: m >= 1 required");

    auto [z0, lambda] = easy_case_target(af, idx);
    cert.z0 = z0;
    cert.lambda = lambda;
    cert.steps = m;
    cert.predicted_count = r + (long)m * (r + 1);

    chain_result cr = linear_chain(at_p, m);
    if (cr.terminated_early) {
        cert.detail = "chain terminated at step " + std::to_string(cr.termination_step) +
                      ": point not singular";
        return cert;
    }
    int nu = order(cr.g.g);
    cert.order_after = nu;

    auto dirs = characteristic_directions(cr.g.g);
    for (const auto& d : dirs.dirs) {
        // Compare with [z0:1] (normalized form [1 : 1/z0]).
        bool match = !d.v1.is_zero() && (d.v2 == coeff::one(md) / z0);
        if (match) {
            cert.target_found = true;
            cert.target_nondegenerate = !d.degenerate;
        }
    }
    // The eigenvalue is checked on the representative (z0, 1), where the
    // defining system reads P1(z0,1) = lambda z0, P2(z0,1) = lambda.
    poly2 p1 = cr.g.g.g().homogeneous_part(nu);
    poly2 p2 = cr.g.g.h().homogeneous_part(nu);
    coeff one = coeff::one(md);
    cert.lambda_matches = (p2.eval_exact(z0, one) == lambda) &&
                          (p1.eval_exact(z0, one) == lambda * z0);
    cert.ok = cert.target_found && cert.target_nondegenerate && cert.lambda_matches &&
              (nu - 1 == cert.predicted_count);
    if (!cert.ok) {
        std::ostringstream os;
        os << "target_found=" << cert.target_found
           << " nondeg=" << cert.target_nondegenerate
           << " lambda=" << cert.lambda_matches << " nu=" << nu
           << " predicted=" << cert.predicted_count + 1;
        cert.detail = os.str();
    }
    return cert;
}

chain_certificate certify_chain(const germ2& f, const direction& p,
                                const classification& cls, int work_trunc) {
    lifted_germ lf = blow_up(f, p, work_trunc);
    adapted_form af = extract_adapted_form(lf);
    index_data idx = residual_index(af);
    return certify_chain(lf, af, idx, cls);
}

rescale_certificate certify_easy_c(const adapted_form& af) {
    rescale_certificate rc;
    const int r = af.r;
    cplx a00 = af.a(0, 0).to_cplx();
    rc.alpha = std::pow(-a00, 1.0 / r);  // any r-th root works
    // After Z = alpha z: f1 = Z + a00 alpha^{-r} Z^{r+1} + ... and the
    // bracket of f2 carries a00 alpha^{-r} Z^r; both coefficients must
    // be -1.
    cplx scale = std::pow(rc.alpha, -(double)r);
    cplx c1 = a00 * scale;
    cplx c2 = af.b(0, 1).to_cplx() * scale;  // = a00 since index = 1
    rc.err_f1 = std::abs(c1 + 1.0);
    rc.err_f2 = std::abs(c2 + 1.0);
    rc.ok = rc.err_f1 < 1e-12 && rc.err_f2 < 1e-12;
    return rc;
}

}  // namespace petals
