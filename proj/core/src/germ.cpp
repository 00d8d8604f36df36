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

#include "petals/germ.hpp"

#include <algorithm>
#include <sstream>

#include "petals/roots.hpp"

namespace petals {

poly2 germ2::g() const { return f1 - poly2::var_z(germ_mode(), f1.trunc()); }
poly2 germ2::h() const { return f2 - poly2::var_w(germ_mode(), f2.trunc()); }

bool germ2::fixes_origin() const {
    return f1.at(0, 0).is_zero() && f2.at(0, 0).is_zero();
}

bool germ2::tangent_to_identity() const {
    if (!fixes_origin()) return false;
    const mode m = germ_mode();
    const coeff one = coeff::one(m);
    return f1.at(1, 0) == one && f1.at(0, 1).is_zero() &&
           f2.at(0, 1) == one && f2.at(1, 0).is_zero();
}

void germ2::require_tangent() const {
    if (!tangent_to_identity())
        throw hypothesis_error("germ is not tangent to the identity");
}

direction direction::of(const coeff& v1, const coeff& v2) {
    direction d;
    if (!v1.is_zero()) {
        d.v1 = coeff::one(v1.coeff_mode());
        d.v2 = v2 / v1;
    } else {
        if (v2.is_zero()) throw error("direction: [0:0] is not a point of P^1");
        d.v1 = coeff::zero(v2.coeff_mode());
        d.v2 = coeff::one(v2.coeff_mode());
    }
    d.lambda = coeff::zero(d.v2.coeff_mode());
    return d;
}

bool direction::same_point(const direction& o) const {
    return v1 == o.v1 && v2 == o.v2;
}

std::string direction::str() const {
    std::ostringstream os;
    os << "[" << v1.str() << ":" << v2.str() << "]";
    return os.str();
}

int order(const germ2& f) {
    f.require_tangent();
    auto og = f.g().order(), oh = f.h().order();
    if (!og && !oh)
        throw hypothesis_error("order undefined: germ equals the identity to the valid degree");
    int o = std::min(og.value_or(poly2::entire), oh.value_or(poly2::entire));
    return o;
}

// Top homogeneous pair (P_{1,nu}, P_{2,nu}).
static std::pair<poly2, poly2> top_parts(const germ2& f, int nu) {
    return {f.g().homogeneous_part(nu), f.h().homogeneous_part(nu)};
}

bool is_dicritical(const germ2& f) {
    int nu = order(f);
    auto [p1, p2] = top_parts(f, nu);
    const mode m = f.germ_mode();
    poly2 phi = poly2::var_w(m) * p1 - poly2::var_z(m) * p2;
    return phi.is_zero();
}

char_dir_result characteristic_directions(const germ2& f) {
    int nu = order(f);
    auto [p1, p2] = top_parts(f, nu);
    const mode md = f.germ_mode();
    poly2 phi = poly2::var_w(md) * p1 - poly2::var_z(md) * p2;
    if (phi.is_zero())
        throw hypothesis_error("dicritical origin: every direction is characteristic");

    char_dir_result out;

    // phi = z^a * w^b * q(z, w), q(1,0) != 0 != q(0,1); roots of q as a
    // polynomial in x = v1/v2 give the remaining directions.
    int a = poly2::entire, b = poly2::entire, deg = nu + 1;
    for (const auto& [e, c] : phi.terms()) {
        a = std::min(a, e.dz);
        b = std::min(b, e.dw);
    }
    auto lambda_of = [&](const coeff& v1, const coeff& v2) {
        // P_{j,nu}(v) = lambda v_j; read lambda off the nonzero slot.
        if (!v1.is_zero()) return p1.eval_exact(v1, v2) / v1;
        return p2.eval_exact(v1, v2) / v2;
    };
    auto push = [&](const coeff& v1, const coeff& v2, int mult) {
        direction d = direction::of(v1, v2);
        d.lambda = lambda_of(d.v1, d.v2);
        d.degenerate = d.lambda.is_zero();
        d.multiplicity = mult;
        out.dirs.push_back(d);
    };

    if (a > 0) push(coeff::zero(md), coeff::one(md), a);   // z = 0 -> [0:1]
    if (b > 0) push(coeff::one(md), coeff::zero(md), b);   // w = 0 -> [1:0]

    int qdeg = deg - a - b;
    if (qdeg > 0) {
        // Coefficients of q in x: q = sum c_k x^k with x = z/w.
        std::vector<coeff> q(qdeg + 1, coeff::zero(md));
        for (const auto& [e, c] : phi.terms()) q[e.dz - a] = c;
        if (md == mode::exact) {
            auto rr = exact_rational_roots(q);
            for (const auto& r : rr.roots)
                push(coeff(r.value), coeff::one(md), r.multiplicity);
            out.residual_degree = (int)rr.residual.size() - 1;
            if (out.residual_degree > 0) out.residual_factor = rr.residual;
        } else {
            std::vector<cplx> qf(q.size());
            for (size_t i = 0; i < q.size(); ++i) qf[i] = q[i].to_cplx();
            std::vector<cplx> roots = aberth_roots(qf);
            std::vector<bool> used(roots.size(), false);
            for (size_t i = 0; i < roots.size(); ++i) {
                if (used[i]) continue;
                int mult = 1;
                for (size_t j = i + 1; j < roots.size(); ++j)
                    if (!used[j] &&
                        std::abs(roots[j] - roots[i]) <
                            1e-6 * (1.0 + std::abs(roots[i]))) {
                        used[j] = true;
                        ++mult;
                    }
                push(coeff(roots[i]), coeff::one(md), mult);
            }
        }
    }
    return out;
}

point_class pure_order(const germ2& f) {
    if (f.germ_mode() != mode::exact)
        throw mode_error("pure_order: exact mode required");
    if (!f.is_entire())
        throw truncation_error("pure_order: entire polynomial input required");

    point_class pc;
    poly2 g = f.g(), h = f.h();
    if (g.is_zero() && h.is_zero())
        throw hypothesis_error("pure order undefined: germ equals the identity");

    poly2 l = poly_gcd(g, h);
    poly2 go = g.is_zero() ? g : poly_divexact(g, l);
    poly2 ho = h.is_zero() ? h : poly_divexact(h, l);
    int og = go.order().value_or(poly2::entire);
    int oh = ho.order().value_or(poly2::entire);
    pc.pure_order = std::min(og, oh);
    pc.singular = pc.pure_order >= 1;

    // Corner: the fixed-point locus {l = 0} has at least two distinct
    // local irreducible components through O.  Monomial factors z^a, w^b
    // are split off exactly; the remaining square-free cofactor
    // contributes at least one component per distinct tangent direction
    // of its lowest homogeneous form (a lower bound, exact for the
    // normal-crossing corners the blow-up machinery produces).
    if (!l.is_zero() && l.degree() >= 1) {
        int az = poly2::entire, aw = poly2::entire;
        for (const auto& [e, c] : l.terms()) {
            az = std::min(az, e.dz);
            aw = std::min(aw, e.dw);
        }
        int comps = (az > 0 ? 1 : 0) + (aw > 0 ? 1 : 0);
        poly2 rest = l.shift_z(-az).shift_w(-aw);
        if (rest.degree() >= 1 && rest.order().value_or(1) >= 1) {
            poly2 sf = squarefree_part(rest);
            int lo = sf.order().value_or(0);
            if (lo >= 1) {
                poly2 low = sf.homogeneous_part(lo);
                // Count distinct linear factors of `low` (excluding the
                // monomial axes already counted).
                int a2 = poly2::entire, b2 = poly2::entire;
                for (const auto& [e, c] : low.terms()) {
                    a2 = std::min(a2, e.dz);
                    b2 = std::min(b2, e.dw);
                }
                if (a2 > 0 && az == 0) comps += 1;
                if (b2 > 0 && aw == 0) comps += 1;
                int qdeg = lo - a2 - b2;
                if (qdeg > 0) {
                    std::vector<coeff> q(qdeg + 1, coeff::zero(mode::exact));
                    for (const auto& [e, c] : low.terms())
                        if (e.dz - a2 >= 0 && e.dz - a2 <= qdeg) q[e.dz - a2] = c;
                    auto rr = exact_rational_roots(q);
                    comps += (int)rr.roots.size();
                    if (rr.residual.size() > 1) comps += 1;  // >=1 irrational branch
                }
            }
        }
        pc.corner = comps >= 2;
    }
    return pc;
}

}  // namespace petals
