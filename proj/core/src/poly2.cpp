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

#include "petals/poly2.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace petals {

std::string coeff::str() const {
    std::ostringstream os;
    if (is_exact()) {
        const auto& e = exact_value();
        os << e.re.get_str();
        if (e.im != 0) os << (e.im > 0 ? "+" : "") << e.im.get_str() << "i";
    } else {
        cplx v = to_cplx();
        os.precision(17);
        os << v.real();
        if (v.imag() != 0) os << (v.imag() > 0 ? "+" : "") << v.imag() << "i";
    }
    return os.str();
}

poly2 poly2::constant(const coeff& c, int trunc) {
    poly2 p(c.coeff_mode(), trunc);
    p.insert_term(0, 0, c);
    return p;
}

poly2 poly2::var_z(mode m, int trunc) {
    poly2 p(m, trunc);
    p.insert_term(1, 0, coeff::one(m));
    return p;
}

poly2 poly2::var_w(mode m, int trunc) {
    poly2 p(m, trunc);
    p.insert_term(0, 1, coeff::one(m));
    return p;
}

poly2 poly2::monomial(const coeff& c, int dz, int dw, int trunc) {
    poly2 p(c.coeff_mode(), trunc);
    p.insert_term(dz, dw, c);
    return p;
}

void poly2::insert_term(int dz, int dw, const coeff& c) {
    if (c.is_zero() || dz + dw > trunc_) return;
    auto it = c_.find(exp2{dz, dw});
    if (it == c_.end()) {
        c_.emplace(exp2{dz, dw}, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) c_.erase(it);
    }
}

void poly2::normalize() {
    for (auto it = c_.begin(); it != c_.end();) {
        if (it->second.is_zero() || it->first.total() > trunc_)
            it = c_.erase(it);
        else
            ++it;
    }
}

coeff poly2::at(int dz, int dw) const {
    if (dz + dw > trunc_)
        throw truncation_error("coefficient requested beyond valid degree");
    auto it = c_.find(exp2{dz, dw});
    return it == c_.end() ? coeff::zero(mode_) : it->second;
}

std::optional<int> poly2::order() const {
    std::optional<int> o;
    for (const auto& [e, c] : c_) o = o ? std::min(*o, e.total()) : e.total();
    return o;
}

int poly2::degree() const {
    int d = 0;
    for (const auto& [e, c] : c_) d = std::max(d, e.total());
    return d;
}

int poly2::z_valuation() const {
    int v = trunc_ == entire ? entire : trunc_ + 1;
    for (const auto& [e, c] : c_) v = std::min(v, e.dz);
    return v;
}

int poly2::w_degree() const {
    int d = 0;
    for (const auto& [e, c] : c_) d = std::max(d, e.dw);
    return d;
}

poly2 poly2::with_trunc(int t) const {
    poly2 r(mode_, min_trunc(t, trunc_));
    for (const auto& [e, c] : c_)
        if (e.total() <= r.trunc_) r.c_.emplace(e, c);
    return r;
}

poly2 poly2::homogeneous_part(int k) const {
    if (trunc_ != entire && k > trunc_)
        throw truncation_error("homogeneous part beyond valid degree");
    poly2 r(mode_, trunc_);
    for (const auto& [e, c] : c_)
        if (e.total() == k) r.c_.emplace(e, c);
    return r;
}

poly2 poly2::drop_below_z(int r) const {
    poly2 out(mode_, trunc_);
    for (const auto& [e, c] : c_)
        if (e.dz >= r) out.c_.emplace(e, c);
    return out;
}

poly2 poly2::shift_z(int s) const {
    poly2 out(mode_, trunc_ == entire ? entire : trunc_ + s);
    for (const auto& [e, c] : c_) {
        if (e.dz + s < 0) throw error("shift_z: z does not divide");
        out.c_.emplace(exp2{e.dz + s, e.dw}, c);
    }
    return out;
}

poly2 poly2::shift_w(int s) const {
    poly2 out(mode_, trunc_ == entire ? entire : trunc_ + s);
    for (const auto& [e, c] : c_) {
        if (e.dw + s < 0) throw error("shift_w: w does not divide");
        out.c_.emplace(exp2{e.dz, e.dw + s}, c);
    }
    return out;
}

poly2 poly2::dz() const {
    poly2 out(mode_, trunc_ == entire ? entire : trunc_ - 1);
    for (const auto& [e, c] : c_)
        if (e.dz > 0)
            out.insert_term(e.dz - 1, e.dw,
                            c * (mode_ == mode::exact ? coeff::exact_int(e.dz)
                                                       : coeff::fl(e.dz)));
    return out;
}

poly2 poly2::dw() const {
    poly2 out(mode_, trunc_ == entire ? entire : trunc_ - 1);
    for (const auto& [e, c] : c_)
        if (e.dw > 0)
            out.insert_term(e.dz, e.dw - 1,
                            c * (mode_ == mode::exact ? coeff::exact_int(e.dw)
                                                       : coeff::fl(e.dw)));
    return out;
}

poly2 poly2::swap_vars() const {
    poly2 out(mode_, trunc_);
    for (const auto& [e, c] : c_) out.c_.emplace(exp2{e.dw, e.dz}, c);
    return out;
}

cplx poly2::eval(cplx z, cplx w) const {
    // Power tables keep this O(terms) after O(degree) setup.
    int dz_max = 0, dw_max = 0;
    for (const auto& [e, c] : c_) {
        dz_max = std::max(dz_max, e.dz);
        dw_max = std::max(dw_max, e.dw);
    }
    std::vector<cplx> pz(dz_max + 1, 1.0), pw(dw_max + 1, 1.0);
    for (int i = 1; i <= dz_max; ++i) pz[i] = pz[i - 1] * z;
    for (int i = 1; i <= dw_max; ++i) pw[i] = pw[i - 1] * w;
    cplx s = 0.0;
    for (const auto& [e, c] : c_) s += c.to_cplx() * pz[e.dz] * pw[e.dw];
    return s;
}

coeff poly2::eval_exact(const coeff& z, const coeff& w) const {
    coeff s = coeff::zero(mode_);
    for (const auto& [e, c] : c_) {
        coeff t = c;
        for (int i = 0; i < e.dz; ++i) t *= z;
        for (int i = 0; i < e.dw; ++i) t *= w;
        s += t;
    }
    return s;
}

poly2 operator+(const poly2& a, const poly2& b) {
    if (a.mode_ != b.mode_) throw mode_error("poly2: mixed modes");
    poly2 r(a.mode_, min_trunc(a.trunc_, b.trunc_));
    r.c_ = a.c_;
    for (const auto& [e, c] : b.c_) {
        auto it = r.c_.find(e);
        if (it == r.c_.end())
            r.c_.emplace(e, c);
        else {
            it->second += c;
            if (it->second.is_zero()) r.c_.erase(it);
        }
    }
    r.normalize();
    return r;
}

poly2 operator-(const poly2& a) {
    poly2 r(a.mode_, a.trunc_);
    for (const auto& [e, c] : a.c_) r.c_.emplace(e, -c);
    return r;
}

poly2 operator-(const poly2& a, const poly2& b) { return a + (-b); }

poly2 operator*(const poly2& a, const poly2& b) {
    if (a.mode_ != b.mode_) throw mode_error("poly2: mixed modes");
    // A truncated factor with order nu still yields products valid past
    // the naive min: unknown tail of a (degree > Ta) times b contributes
    // only at degree > Ta + ord(b).
    int t;
    if (a.trunc_ == poly2::entire && b.trunc_ == poly2::entire) {
        t = poly2::entire;
    } else {
        int oa = a.order().value_or(a.trunc_ == poly2::entire ? 0 : a.trunc_ + 1);
        int ob = b.order().value_or(b.trunc_ == poly2::entire ? 0 : b.trunc_ + 1);
        long ta = (a.trunc_ == poly2::entire) ? poly2::entire : (long)a.trunc_ + ob;
        long tb = (b.trunc_ == poly2::entire) ? poly2::entire : (long)b.trunc_ + oa;
        t = (int)std::min({ta, tb, (long)poly2::entire});
    }
    poly2 r(a.mode_, t);
    for (const auto& [ea, ca] : a.c_)
        for (const auto& [eb, cb] : b.c_) {
            int dz = ea.dz + eb.dz, dw = ea.dw + eb.dw;
            if (dz + dw > r.trunc_) continue;
            r.insert_term(dz, dw, ca * cb);
        }
    return r;
}

poly2 poly2::scaled(const coeff& c) const {
    poly2 r(mode_, trunc_);
    if (c.is_zero()) return r;
    for (const auto& [e, cc] : c_) r.c_.emplace(e, cc * c);
    r.normalize();
    return r;
}

bool poly2::equals(const poly2& o) const {
    int t = min_trunc(trunc_, o.trunc_);
    poly2 d = (*this - o).with_trunc(t);
    return d.c_.empty();
}

poly2 poly2::inverse(int out_trunc) const {
    if (out_trunc >= entire) throw error("inverse needs a finite output degree");
    auto it = c_.find(exp2{0, 0});
    if (it == c_.end()) throw error("series inverse: zero constant term");
    if (trunc_ < out_trunc && trunc_ != entire)
        throw truncation_error("series inverse: input valid degree too small");
    coeff c0inv = coeff::one(mode_) / it->second;
    // u := 1 - a/c0 has positive order; 1/a = (1/c0) * sum u^k.
    poly2 u = poly2::constant(coeff::one(mode_), out_trunc) -
              this->with_trunc(out_trunc).scaled(c0inv);
    poly2 acc = poly2::constant(coeff::one(mode_), out_trunc);
    poly2 pw = poly2::constant(coeff::one(mode_), out_trunc);
    for (int k = 1; k <= out_trunc; ++k) {
        pw = (pw * u).with_trunc(out_trunc);
        if (pw.is_zero()) break;
        acc += pw;
    }
    return acc.scaled(c0inv);
}

poly2 poly2::compose(const poly2& outer, const poly2& g1, const poly2& g2) {
    if (outer.mode_ != g1.mode_ || outer.mode_ != g2.mode_)
        throw mode_error("compose: mixed modes");
    bool inner_zero_const =
        g1.c_.find(exp2{0, 0}) == g1.c_.end() && g2.c_.find(exp2{0, 0}) == g2.c_.end();
    if (!outer.is_entire() && !inner_zero_const)
        throw error("compose: inner series need zero constant term for a truncated outer");

    int t;
    if (outer.is_entire() && g1.is_entire() && g2.is_entire()) {
        t = entire;
    } else {
        long t1 = g1.is_entire() ? entire : g1.trunc_;
        long t2 = g2.is_entire() ? entire : g2.trunc_;
        long to = outer.is_entire() ? entire : outer.trunc_;
        t = (int)std::min({t1, t2, to});
    }

    // Power tables over the needed exponent ranges.
    int dzm = 0, dwm = 0;
    for (const auto& [e, c] : outer.c_) {
        dzm = std::max(dzm, e.dz);
        dwm = std::max(dwm, e.dw);
    }
    std::vector<poly2> p1(dzm + 1), p2(dwm + 1);
    p1[0] = poly2::constant(coeff::one(outer.mode_), t);
    for (int i = 1; i <= dzm; ++i) p1[i] = (p1[i - 1] * g1).with_trunc(t);
    p2[0] = poly2::constant(coeff::one(outer.mode_), t);
    for (int i = 1; i <= dwm; ++i) p2[i] = (p2[i - 1] * g2).with_trunc(t);

    poly2 acc(outer.mode_, t);
    for (const auto& [e, c] : outer.c_)
        acc += (p1[e.dz] * p2[e.dw]).scaled(c).with_trunc(t);
    return acc;
}

poly2 poly2::log1p(const poly2& u, int out_trunc) {
    if (u.c_.find(exp2{0, 0}) != u.c_.end())
        throw error("log1p: argument must have positive order");
    poly2 acc(u.mode_, out_trunc);
    poly2 pw = poly2::constant(coeff::one(u.mode_), out_trunc);
    for (int k = 1; k <= out_trunc; ++k) {
        pw = (pw * u).with_trunc(out_trunc);
        if (pw.is_zero()) break;
        coeff ck = u.mode_ == mode::exact
                       ? coeff::exact_rat(k % 2 == 1 ? 1 : -1, k)
                       : coeff::fl((k % 2 == 1 ? 1.0 : -1.0) / k);
        acc += pw.scaled(ck);
    }
    return acc;
}

poly2 poly2::pow_binomial(const poly2& u, long p, long q, int out_trunc) {
    if (u.c_.find(exp2{0, 0}) != u.c_.end())
        throw error("pow_binomial: series must be 1 + (positive order)");
    poly2 acc = poly2::constant(coeff::one(u.mode_), out_trunc);
    poly2 pw = acc;
    coeff binom = coeff::one(u.mode_);
    for (int k = 1; k <= out_trunc; ++k) {
        // binom(p/q, k) = binom(p/q, k-1) * (p/q - k + 1)/k
        coeff f = u.mode_ == mode::exact
                      ? coeff(exact_complex{mpq_class(p - (long)(k - 1) * q, q * (long)k),
                                            mpq_class(0)})
                      : coeff::fl(((double)p / q - (k - 1)) / k);
        binom = binom * f;
        pw = (pw * u).with_trunc(out_trunc);
        if (pw.is_zero() || binom.is_zero()) break;
        acc += pw.scaled(binom);
    }
    return acc;
}

std::string poly2::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : c_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        if (e.dz) os << "*z^" << e.dz;
        if (e.dw) os << "*w^" << e.dw;
    }
    if (trunc_ != entire) os << " +O(deg>" << trunc_ << ")";
    return os.str();
}

}  // namespace petals
