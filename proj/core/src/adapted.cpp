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

#include "petals/adapted.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace petals {

std::optional<adapted_form> try_adapted_form(const lifted_germ& f) {
    const germ2& g = f.g;
    const mode md = g.germ_mode();
    poly2 gz = g.g();  // f1 - z
    poly2 hw = g.h();  // f2 - w
    int T = g.trunc();

    adapted_form af;
    int v1 = gz.is_zero() ? order_infinity : gz.z_valuation();
    int v2 = hw.is_zero() ? order_infinity : hw.z_valuation();
    if (v1 == order_infinity && v2 == order_infinity)
        throw hypothesis_error("adapted form: germ is the identity to the valid degree");
    // v1 == 1 (a w-dependent linear-in-z part) makes mu = -1 < nu, which
    // lands in the degenerate / k == infinity branch below.
    af.mu = v1 == order_infinity ? order_infinity : v1 - 2;
    af.nu = v2 == order_infinity ? order_infinity : v2 - 1;
    af.tangential = af.mu >= af.nu;
    if (!af.tangential) return std::nullopt;
    if (v2 == order_infinity)
        throw hypothesis_error("adapted form: f2 == w, no residual structure on S");

    af.r = af.nu + 1;  // = v2
    poly2 A1 = gz.is_zero() ? poly2(md, T) : gz.shift_z(-af.r);
    af.B1 = hw.shift_z(-af.r);
    af.A0 = A1.is_zero() ? poly2(md, T - af.r - 1) : A1.shift_z(-1);

    // gcd(z*A0, B1) must be 1.  Monomial factors are always detectable;
    // for exact polynomial data run the full gcd.
    int wv = order_infinity;
    for (const auto& [e, c] : af.B1.terms()) wv = std::min(wv, e.dw);
    if (!af.A0.is_zero()) {
        int wva = order_infinity;
        for (const auto& [e, c] : af.A0.terms()) wva = std::min(wva, e.dw);
        if (wv > 0 && wva > 0)
            throw hypothesis_error(
                "adapted form: w divides both residual factors (extra fixed component)");
    }
    int ordA1 = A1.order().value_or(order_infinity);
    int ordB1 = af.B1.order().value_or(order_infinity);
    af.nu_o = std::min(ordA1, ordB1);
    return af;
}

adapted_form extract_adapted_form(const lifted_germ& f) {
    auto af = try_adapted_form(f);
    if (!af)
        throw hypothesis_error(
            "adapted form: germ is degenerate (non-tangential) along S; the index is undefined");
    return *af;
}

static std::vector<coeff> w_slice(const poly2& p, int max_deg) {
    // Coefficients of p(0, w) up to degree max_deg.
    std::vector<coeff> out(max_deg + 1, coeff::zero(p.poly_mode()));
    for (const auto& [e, c] : p.terms())
        if (e.dz == 0 && e.dw <= max_deg) out[e.dw] = c;
    return out;
}

index_data residual_index(const adapted_form& af, int extra_depth) {
    index_data out;
    out.mu = af.mu;
    out.nu = af.nu;
    out.tangential = af.tangential;
    const mode md = af.B1.poly_mode();

    int wdeg = std::max(af.B1.w_degree(), af.A0.is_zero() ? 0 : af.A0.w_degree());
    // Valid w-degree of the z = 0 slices.
    int slice_valid = std::min(af.B1.trunc(), af.A0.trunc());
    if (slice_valid == poly2::entire) slice_valid = wdeg + extra_depth + 4;
    std::vector<coeff> b = w_slice(af.B1, std::min(wdeg, slice_valid));
    std::vector<coeff> a = w_slice(af.A0, std::min(wdeg, slice_valid));

    int n = -1, m = -1;
    for (size_t j = 0; j < b.size(); ++j)
        if (!b[j].is_zero()) {
            n = (int)j;
            break;
        }
    for (size_t h = 0; h < a.size(); ++h)
        if (!a[h].is_zero()) {
            m = (int)h;
            break;
        }
    if (n < 0)
        throw truncation_error(
            "residual index: B1(0,w) vanishes to the valid degree (insufficient truncation)");
    out.n = n;
    out.m = m < 0 ? order_infinity : m;

    // k(w) = A0(0,w)/B1(0,w) = w^{-n} * A0(0,w) * (B1(0,w)/w^n)^{-1}.
    int depth = n + extra_depth;             // compute k_{-n}..k_{depth-n-ish}
    int keep = depth;                        // highest power of the unit inverse
    if (keep > slice_valid - n && slice_valid != poly2::entire)
        keep = std::max(0, slice_valid - n);
    std::vector<coeff> unit(keep + 1, coeff::zero(md));
    for (int j = 0; j <= keep; ++j)
        if (n + j < (int)b.size()) unit[j] = b[n + j];
    // Series inverse of the unit.
    std::vector<coeff> inv(keep + 1, coeff::zero(md));
    inv[0] = coeff::one(md) / unit[0];
    for (int k = 1; k <= keep; ++k) {
        coeff s = coeff::zero(md);
        for (int j = 1; j <= k; ++j) s += unit[j] * inv[k - j];
        inv[k] = -s / unit[0];
    }
    // k-series coefficients: c_{h-n} = sum_{i+j=h} a_i inv_j.
    out.k_series.lo_valid = -n;
    out.k_series.hi_valid = keep - n;
    for (int h = 0; h <= keep; ++h) {
        coeff s = coeff::zero(md);
        for (int i = 0; i <= h; ++i) {
            if (i < (int)a.size() && (h - i) <= keep) s += a[i] * inv[h - i];
        }
        if (!s.is_zero()) out.k_series.c[h - n] = s;
    }
    out.index = out.k_series.at(-1, md);
    return out;
}

cplx residue_contour_oracle(const adapted_form& af, double radius, int nodes) {
    // (1/2 pi i) * contour integral of k(w) dw over |w| = radius, sampled
    // with the trapezoid rule; for this periodic analytic integrand that
    // reduces to the mean of k(w_j) * w_j.
    cplx s = 0.0;
    for (int j = 0; j < nodes; ++j) {
        double th = 2.0 * M_PI * j / nodes;
        cplx w = radius * cplx{std::cos(th), std::sin(th)};
        cplx a0 = af.A0.eval(0.0, w);
        cplx b1 = af.B1.eval(0.0, w);
        s += a0 / b1 * w;
    }
    return s / (double)nodes;
}

}  // namespace petals
