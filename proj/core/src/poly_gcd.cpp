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
//
// Exact gcd of bivariate polynomials over Q(i), via a primitive PRS in z
// with coefficients in Q(i)[w].  Degrees in this project stay small, so
// the classical algorithm with per-step primitive parts is plenty.

#include <algorithm>
#include <vector>

#include "petals/poly2.hpp"

namespace petals {
namespace {

using uc = exact_complex;
using upoly = std::vector<uc>;  // univariate over Q(i), index = degree

void utrim(upoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

bool uzero(const upoly& p) { return p.empty(); }
int udeg(const upoly& p) { return (int)p.size() - 1; }

upoly uscale(const upoly& p, const uc& c) {
    upoly r(p.size());
    for (size_t i = 0; i < p.size(); ++i) r[i] = p[i] * c;
    utrim(r);
    return r;
}

upoly uadd(const upoly& a, const upoly& b) {
    upoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] = r[i] + a[i];
        if (i < b.size()) r[i] = r[i] + b[i];
    }
    utrim(r);
    return r;
}

upoly umul(const upoly& a, const upoly& b) {
    if (uzero(a) || uzero(b)) return {};
    upoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    utrim(r);
    return r;
}

// Division over the field Q(i): a = q*b + r.
void udivrem(const upoly& a, const upoly& b, upoly& q, upoly& r) {
    if (uzero(b)) throw error("upoly division by zero");
    r = a;
    q.assign(a.size() > b.size() ? a.size() - b.size() + 1 : 1, uc{});
    uc lb = b.back();
    while (!uzero(r) && udeg(r) >= udeg(b)) {
        int k = udeg(r) - udeg(b);
        uc f = r.back() / lb;
        q[k] = q[k] + f;
        for (size_t i = 0; i < b.size(); ++i) r[i + k] = r[i + k] - f * b[i];
        utrim(r);
    }
    utrim(q);
}

upoly udivexact(const upoly& a, const upoly& b) {
    upoly q, r;
    udivrem(a, b, q, r);
    if (!uzero(r)) throw error("upoly division not exact");
    return q;
}

upoly ugcd(upoly a, upoly b) {
    utrim(a);
    utrim(b);
    while (!uzero(b)) {
        upoly q, r;
        udivrem(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (uzero(a)) return a;
    return uscale(a, uc{mpq_class(1), mpq_class(0)} / a.back());  // monic
}

// poly2 <-> z-major form (coefficient of z^i is a w-poly).
using zpoly = std::vector<upoly>;

zpoly to_z(const poly2& p) {
    zpoly r;
    for (const auto& [e, c] : p.terms()) {
        if ((int)r.size() <= e.dz) r.resize(e.dz + 1);
        if ((int)r[e.dz].size() <= e.dw) r[e.dz].resize(e.dw + 1);
        r[e.dz][e.dw] = c.exact_value();
    }
    for (auto& u : r) utrim(u);
    while (!r.empty() && uzero(r.back())) r.pop_back();
    return r;
}

poly2 from_z(const zpoly& r) {
    poly2 p(mode::exact, poly2::entire);
    for (size_t i = 0; i < r.size(); ++i)
        for (size_t j = 0; j < r[i].size(); ++j)
            if (!r[i][j].is_zero()) p.insert_term((int)i, (int)j, coeff(r[i][j]));
    return p;
}

int zdeg(const zpoly& a) { return (int)a.size() - 1; }
bool zzero(const zpoly& a) { return a.empty(); }

upoly zcontent(const zpoly& a) {
    upoly g;
    for (const auto& c : a)
        if (!uzero(c)) g = ugcd(g, c);
    return g;
}

zpoly zprim(const zpoly& a, const upoly& content) {
    zpoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        if (!uzero(a[i])) r[i] = udivexact(a[i], content);
    return r;
}

zpoly zscale(const zpoly& a, const upoly& s) {
    zpoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = umul(a[i], s);
    return r;
}

// Pseudo-remainder of a by b in z (coefficients in Q(i)[w]).
zpoly zprem(zpoly a, const zpoly& b) {
    const upoly& lb = b.back();
    while (!zzero(a) && zdeg(a) >= zdeg(b)) {
        int k = zdeg(a) - zdeg(b);
        upoly la = a.back();
        a = zscale(a, lb);
        for (size_t i = 0; i < b.size(); ++i) {
            upoly t = umul(b[i], la);
            // a[i+k] -= t
            upoly& dst = a[i + k];
            upoly neg = uscale(t, uc{mpq_class(-1), mpq_class(0)});
            dst = uadd(dst, neg);
        }
        while (!a.empty() && uzero(a.back())) a.pop_back();
    }
    return a;
}

}  // namespace

static void require_entire_exact(const poly2& p, const char* who) {
    if (p.poly_mode() != mode::exact)
        throw error(std::string(who) + ": exact mode required");
    if (!p.is_entire())
        throw truncation_error(std::string(who) + ": truncated input is not a polynomial");
}

poly2 poly_gcd(const poly2& a, const poly2& b) {
    require_entire_exact(a, "poly_gcd");
    require_entire_exact(b, "poly_gcd");
    if (a.is_zero() && b.is_zero()) return poly2(mode::exact, poly2::entire);
    if (a.is_zero()) return poly_gcd(b, a);
    zpoly A = to_z(a), B = to_z(b);
    poly2 g;
    if (b.is_zero() || zzero(B)) {
        g = a;
    } else {
        upoly ca = zcontent(A), cb = zcontent(B);
        upoly cg = ugcd(ca, cb);
        zpoly pa = zprim(A, ca), pb = zprim(B, cb);
        if (zdeg(pa) < zdeg(pb)) std::swap(pa, pb);
        // Primitive PRS.
        while (true) {
            zpoly r = zprem(pa, pb);
            while (!r.empty() && uzero(r.back())) r.pop_back();
            if (zzero(r)) break;
            upoly cr = zcontent(r);
            r = zprim(r, cr);
            pa = std::move(pb);
            pb = std::move(r);
        }
        // gcd(pp(a),pp(b)) = pb up to units; restore the content gcd.
        zpoly res = zdeg(pb) == 0 ? zpoly{cg} : zscale(zprim(pb, zcontent(pb)), cg);
        g = from_z(res);
    }
    if (g.is_zero()) return g;
    // Normalize: leading term (lex on (dz,dw)) gets coefficient 1.
    const auto& lead = std::prev(g.terms().end())->second;
    return g.scaled(coeff::one(mode::exact) / lead);
}

poly2 poly_divexact(const poly2& a, const poly2& b) {
    require_entire_exact(a, "poly_divexact");
    require_entire_exact(b, "poly_divexact");
    if (b.is_zero()) throw error("poly_divexact: division by zero");
    if (a.is_zero()) return poly2(mode::exact, poly2::entire);
    zpoly A = to_z(a), B = to_z(b);
    zpoly Q(zdeg(A) >= zdeg(B) ? zdeg(A) - zdeg(B) + 1 : 0);
    while (!zzero(A) && zdeg(A) >= zdeg(B)) {
        int k = zdeg(A) - zdeg(B);
        upoly q = udivexact(A.back(), B.back());
        Q[k] = uadd(Q[k], q);
        for (size_t i = 0; i < B.size(); ++i) {
            upoly t = uscale(umul(B[i], q), uc{mpq_class(-1), mpq_class(0)});
            A[i + k] = uadd(A[i + k], t);
        }
        while (!A.empty() && uzero(A.back())) A.pop_back();
    }
    if (!zzero(A)) throw error("poly_divexact: not divisible");
    return from_z(Q);
}

bool poly_divides(const poly2& b, const poly2& a) {
    try {
        poly_divexact(a, b);
        return true;
    } catch (const error&) {
        return false;
    }
}

poly2 squarefree_part(const poly2& a) {
    require_entire_exact(a, "squarefree_part");
    if (a.is_zero() || a.degree() == 0) return a;
    poly2 g = a;
    poly2 az = a.dz(), aw = a.dw();
    poly2 d(mode::exact, poly2::entire);
    if (!az.is_zero()) d = poly_gcd(a, az);
    if (!aw.is_zero()) d = d.is_zero() ? poly_gcd(a, aw) : poly_gcd(d, aw);
    if (d.is_zero() || d.degree() == 0) return a;
    return poly_divexact(a, d);
}

}  // namespace petals
