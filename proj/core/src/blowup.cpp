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

#include "petals/blowup.hpp"

#include <algorithm>

namespace petals {

std::pair<cplx, cplx> chart::push_forward(cplx u, cplx t) const {
    for (auto it = history.rbegin(); it != history.rend(); ++it) {
        cplx c = it->center.to_cplx();
        switch (it->kind) {
            case chart_kind::u1: t = u * (t + c); break;
            case chart_kind::u2: {
                cplx z = u * (t + c);
                t = u;
                u = z;
                break;
            }
            case chart_kind::chain: u = u * t; break;
        }
    }
    return {u, t};
}

std::pair<coeff, coeff> chart::push_forward_exact(const coeff& u0, const coeff& t0) const {
    coeff u = u0, t = t0;
    for (auto it = history.rbegin(); it != history.rend(); ++it) {
        switch (it->kind) {
            case chart_kind::u1: t = u * (t + it->center); break;
            case chart_kind::u2: {
                coeff z = u * (t + it->center);
                t = u;
                u = z;
                break;
            }
            case chart_kind::chain: u = u * t; break;
        }
    }
    return {u, t};
}

static int resolve_work_trunc(const germ2& f, int work_trunc) {
    int t = f.trunc();
    if (t == poly2::entire) {
        if (work_trunc <= 0)
            throw error("blow_up: entire germ needs an explicit working degree");
        return work_trunc;
    }
    return work_trunc > 0 ? std::min(work_trunc, t) : t;
}

lifted_germ blow_up_in_chart(const germ2& f, chart_kind k, const coeff& c,
                             int work_trunc) {
    const mode md = f.germ_mode();
    int T = resolve_work_trunc(f, work_trunc);
    if (T < 3)
        throw truncation_error("blow_up: fewer than 3 valid degrees left");

    poly2 u = poly2::var_z(md), t = poly2::var_w(md);
    poly2 pz, pw;  // pi in chart coordinates
    if (k == chart_kind::u1) {
        pz = u;
        pw = u * (t + poly2::constant(c));
    } else if (k == chart_kind::u2) {
        pz = u * (t + poly2::constant(c));
        pw = u;
    } else {
        throw error("blow_up_in_chart: chain is not a blow-up chart");
    }

    poly2 F1 = poly2::compose(f.f1.with_trunc(T), pz, pw);
    poly2 F2 = poly2::compose(f.f2.with_trunc(T), pz, pw);

    // In u1 the new first coordinate is the z-image, in u2 the w-image.
    poly2 num = (k == chart_kind::u1) ? F2 : F1;   // ratio numerator
    poly2 den = (k == chart_kind::u1) ? F1 : F2;   // exceptional unit * u
    poly2 first = den;

    if (den.z_valuation() < 1)
        throw error("blow_up: map does not fix the center");
    poly2 unit = den.shift_z(-1);  // 1 + positive order
    poly2 ratio = (num.shift_z(-1) * unit.inverse(T - 1)).with_trunc(T - 1) -
                  poly2::constant(c, T - 1);

    lifted_germ out;
    out.g.f1 = first.with_trunc(T - 1);
    out.g.f2 = ratio;
    out.where.history.push_back(blow_record{k, c});
    return out;
}

lifted_germ blow_up(const germ2& f, const direction& center, int work_trunc) {
    f.require_tangent();
    if (!center.v1.is_zero())
        return blow_up_in_chart(f, chart_kind::u1, center.v2, work_trunc);
    return blow_up_in_chart(f, chart_kind::u2, center.v1, work_trunc);
}

lifted_germ chain_step(const lifted_germ& f, chain_step_info* info) {
    const mode md = f.g.germ_mode();
    int T = f.g.trunc();
    if (T == poly2::entire)
        throw error("chain_step: lifted germs are always truncated");
    if (T < 3)
        throw truncation_error("chain_step: fewer than 3 valid degrees left");

    poly2 z = poly2::var_z(md), w = poly2::var_w(md);
    poly2 G1 = poly2::compose(f.g.f1.with_trunc(T), z * w, w);
    poly2 G2 = poly2::compose(f.g.f2.with_trunc(T), z * w, w);

    // G2 = w * (1 + C), G1 = w * z * (1 + ...); shift_w throws if the
    // expected w-factor is missing.
    poly2 w_quot = G2.shift_w(-1);            // 1 + C
    poly2 inv = w_quot.inverse(T - 1);
    poly2 new_f1 = (G1.shift_w(-1) * inv).with_trunc(T - 1);
    poly2 new_f2 = G2.with_trunc(T - 1);

    lifted_germ out;
    out.g.f1 = new_f1;
    out.g.f2 = new_f2;
    out.where = f.where;
    out.where.history.push_back(blow_record{chart_kind::chain, coeff::zero(md)});

    if (info) {
        info->valid_trunc = T - 1;
        // Singularity of the new chain point: strip the common monomial
        // factor of (f1 - z, f2 - w); the point is singular when both
        // reduced parts still vanish at the origin.
        poly2 a = out.g.g(), b = out.g.h();
        info->singular = false;
        if (!a.is_zero() && !b.is_zero()) {
            int az = std::min(a.z_valuation(), b.z_valuation());
            int aw = poly2::entire;
            for (const auto& [e, c] : a.terms()) aw = std::min(aw, e.dw);
            for (const auto& [e, c] : b.terms()) aw = std::min(aw, e.dw);
            poly2 ra = a.shift_z(-az).shift_w(-aw);
            poly2 rb = b.shift_z(-az).shift_w(-aw);
            info->singular = ra.at(0, 0).is_zero() && rb.at(0, 0).is_zero();
        }
    }
    return out;
}

chain_result linear_chain(const lifted_germ& start, int k) {
    chain_result res;
    res.g = start;
    for (int j = 1; j <= k; ++j) {
        chain_step_info info;
        lifted_germ next = chain_step(res.g, &info);
        if (!info.singular) {
            res.terminated_early = true;
            res.termination_step = j;
            return res;
        }
        res.g = next;
        res.steps_done = j;
    }
    return res;
}

chain_result linear_chain(const germ2& f, const direction& p, int k, int work_trunc) {
    if (is_dicritical(f))
        throw hypothesis_error("linear_chain: dicritical origin");
    return linear_chain(blow_up(f, p, work_trunc), k);
}

bool is_regular_along(const germ2& f, const direction& v, int work_trunc) {
    if (is_dicritical(f))
        throw hypothesis_error("is_regular_along: dicritical origin");
    lifted_germ lf = blow_up(f, v, work_trunc);
    // pure_order needs an entire polynomial; the lift is truncated, but
    // pure order only reads finitely many degrees.  Promoting the stored
    // terms to an entire polynomial is sound as long as the verdict is
    // reached strictly below the valid degree, which we check.
    germ2 probe;
    probe.f1 = lf.g.f1.with_trunc(lf.g.trunc());
    probe.f2 = lf.g.f2.with_trunc(lf.g.trunc());
    poly2 p1(mode::exact, poly2::entire), p2(mode::exact, poly2::entire);
    for (const auto& [e, c] : probe.f1.terms()) p1.insert_term(e.dz, e.dw, c);
    for (const auto& [e, c] : probe.f2.terms()) p2.insert_term(e.dz, e.dw, c);
    point_class pc = pure_order(germ2{p1, p2});
    if (pc.pure_order >= lf.g.trunc() - 1)
        throw truncation_error("is_regular_along: verdict not determined at this degree");
    return pc.pure_order == 1;
}

}  // namespace petals
