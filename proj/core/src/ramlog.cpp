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

#include "petals/ramlog.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace petals {

bool rlseries::is_zero() const {
    for (const auto& [e, l] : c_)
        if (!l.is_zero()) return false;
    return true;
}

int rlseries::z_order() const {
    int o = ztr_ + 1;
    for (const auto& [e, l] : c_)
        if (!l.is_zero()) o = std::min(o, e.first);
    return o;
}

int rlseries::w_order() const {
    int o = wtr_ + 1;
    for (const auto& [e, l] : c_)
        if (!l.is_zero()) o = std::min(o, e.second);
    return o;
}

int rlseries::w_degree() const {
    int d = 0;
    for (const auto& [e, l] : c_)
        if (!l.is_zero()) d = std::max(d, e.second);
    return d;
}

laurent rlseries::slice(int p, int j) const {
    if (p > ztr_ || j > wtr_)
        throw truncation_error("rlseries: slice beyond valid region");
    auto it = c_.find({p, j});
    return it == c_.end() ? laurent::zero() : it->second;
}

void rlseries::set_slice(int p, int j, laurent l) {
    if (p > ztr_ || j > wtr_) return;
    if (l.is_zero() && l.exact())
        c_.erase({p, j});
    else
        c_[{p, j}] = std::move(l);
}

void rlseries::trim() {
    for (auto it = c_.begin(); it != c_.end();) {
        if (it->first.first > ztr_ || it->first.second > wtr_ ||
            (it->second.is_zero() && it->second.exact()))
            it = c_.erase(it);
        else
            ++it;
    }
}

rlseries rlseries::with_ztrunc(int zt) const {
    rlseries r = *this;
    r.ztr_ = std::min(ztr_, zt);
    r.trim();
    return r;
}

rlseries rlseries::with_wtrunc(int wt) const {
    rlseries r = *this;
    r.wtr_ = std::min(wtr_, wt);
    r.trim();
    return r;
}

rlseries rlseries::drop_below_and_shift(int lead) const {
    rlseries r(ram_, ztr_ - lead, wtr_);
    for (const auto& [e, l] : c_)
        if (e.first >= lead) r.c_[{e.first - lead, e.second}] = l;
    r.trim();
    return r;
}

rlseries rlseries::shift_z(int dp) const {
    rlseries r(ram_, ztr_ + dp, wtr_);
    for (const auto& [e, l] : c_) {
        if (e.first + dp < 0) throw error("rlseries: negative z power after shift");
        r.c_[{e.first + dp, e.second}] = l;
    }
    r.trim();
    return r;
}

rlseries rlseries::shift_w(int dj) const {
    rlseries r(ram_, ztr_, wtr_ + dj);
    for (const auto& [e, l] : c_) {
        if (e.second + dj < 0) throw error("rlseries: negative w power after shift");
        r.c_[{e.first, e.second + dj}] = l;
    }
    r.trim();
    return r;
}

rlseries rlseries::mul_t(int dk) const {
    rlseries r(ram_, ztr_, wtr_);
    for (const auto& [e, l] : c_) r.c_[e] = l.shifted(dk);
    return r;
}

rlseries rlseries::scaled(cplx c) const {
    rlseries r(ram_, ztr_, wtr_);
    if (c == cplx{0.0, 0.0}) return r;
    for (const auto& [e, l] : c_) r.c_[e] = l.scaled(c);
    return r;
}

rlseries rlseries::scaled_laurent(const laurent& s) const {
    rlseries r(ram_, ztr_, wtr_);
    for (const auto& [e, l] : c_) {
        laurent v = l * s;
        if (!(v.is_zero() && v.exact())) r.c_[e] = v;
    }
    return r;
}

rlseries rlseries::w_slice(int j) const {
    if (j > wtr_) throw truncation_error("rlseries: w-slice beyond valid degree");
    // The extracted slice has no w-dependence left: exact in w.
    rlseries r(ram_, ztr_, inf);
    for (const auto& [e, l] : c_)
        if (e.second == j) r.c_[{e.first, 0}] = l;
    return r;
}

rlseries operator+(const rlseries& a, const rlseries& b) {
    if (a.ram_ != b.ram_) throw error("rlseries: mixed ramification");
    rlseries r(a.ram_, std::min(a.ztr_, b.ztr_), std::min(a.wtr_, b.wtr_));
    r.c_ = a.c_;
    for (const auto& [e, l] : b.c_) {
        auto it = r.c_.find(e);
        if (it == r.c_.end())
            r.c_[e] = l;
        else
            it->second = it->second + l;
    }
    r.trim();
    return r;
}

rlseries operator-(const rlseries& a) {
    rlseries r(a.ram_, a.ztr_, a.wtr_);
    for (const auto& [e, l] : a.c_) r.c_[e] = -l;
    return r;
}

rlseries operator-(const rlseries& a, const rlseries& b) { return a + (-b); }

rlseries operator*(const rlseries& a, const rlseries& b) {
    if (a.ram_ != b.ram_) throw error("rlseries: mixed ramification");
    const int big = rlseries::inf;
    int oa_z = a.z_order(), ob_z = b.z_order();
    int oa_w = a.w_order(), ob_w = b.w_order();
    long zt = std::min({a.ztr_ >= big ? (long)big : (long)a.ztr_ + ob_z,
                        b.ztr_ >= big ? (long)big : (long)b.ztr_ + oa_z,
                        (long)big});
    long wt = std::min({a.wtr_ >= big ? (long)big : (long)a.wtr_ + ob_w,
                        b.wtr_ >= big ? (long)big : (long)b.wtr_ + oa_w,
                        (long)big});
    rlseries r(a.ram_, (int)zt, (int)wt);
    for (const auto& [ea, la] : a.c_) {
        if (la.is_zero() && la.exact()) continue;
        for (const auto& [eb, lb] : b.c_) {
            int p = ea.first + eb.first, j = ea.second + eb.second;
            if (p > r.ztr_ || j > r.wtr_) continue;
            laurent prod = la * lb;
            auto it = r.c_.find({p, j});
            if (it == r.c_.end())
                r.c_[{p, j}] = prod;
            else
                it->second = it->second + prod;
        }
    }
    r.trim();
    return r;
}

rlseries rlseries::pow_binomial(long num, long den) const {
    rlseries u = *this;
    auto it = u.c_.find({0, 0});
    if (it == u.c_.end() || std::abs(it->second.at(0) - 1.0) > 1e-12 ||
        it->second.bottom() < 0 || it->second.top() > 0)
        throw error("rlseries::pow_binomial: series must be 1 + (positive z-order)");
    u.c_.erase(it);  // u := this - 1
    if (u.z_order() < 1) throw error("rlseries::pow_binomial: u has z-order 0");

    rlseries acc = term(ram_, 1.0, 0, 0, 0, u.ztr_, u.wtr_);
    rlseries pw = acc;
    double binom = 1.0;
    int kmax = u.ztr_ + 1;
    for (int k = 1; k <= kmax; ++k) {
        binom *= ((double)num / den - (k - 1)) / k;
        pw = pw * u;
        if (pw.is_zero() || binom == 0.0) break;
        acc += pw.scaled(binom);
    }
    return acc;
}

rlseries rlseries::log1p() const {
    if (z_order() < 1) throw error("rlseries::log1p: argument needs positive z-order");
    rlseries acc(ram_, ztr_, wtr_);
    rlseries pw = term(ram_, 1.0, 0, 0, 0, ztr_, wtr_);
    int kmax = ztr_ + 1;
    for (int k = 1; k <= kmax; ++k) {
        pw = pw * (*this);
        if (pw.is_zero()) break;
        acc += pw.scaled((k % 2 == 1 ? 1.0 : -1.0) / k);
    }
    return acc;
}

rlseries rlseries::subst_w_shift(const rlseries& s) const {
    if (s.w_degree() > 0) throw error("subst_w_shift: shift must not depend on w");
    int d = w_degree();
    // Powers of s.
    std::vector<rlseries> sp(d + 1, term(ram_, 1.0, 0, 0, 0, ztr_, wtr_));
    for (int k = 1; k <= d; ++k) sp[k] = sp[k - 1] * s;
    rlseries out(ram_, ztr_, wtr_);
    // Binomial coefficients.
    std::vector<std::vector<double>> C(d + 1, std::vector<double>(d + 1, 0.0));
    for (int i = 0; i <= d; ++i) {
        C[i][0] = 1.0;
        for (int k = 1; k <= i; ++k)
            C[i][k] = C[i - 1][k - 1] + (k <= i - 1 ? C[i - 1][k] : 0.0);
    }
    for (const auto& [e, l] : c_) {
        int j = e.second;
        for (int lpow = 0; lpow <= j; ++lpow) {
            // w^j -> sum_l C(j,l) s^{j-l} v^l
            rlseries contrib = sp[j - lpow].scaled_laurent(l).scaled(C[j][lpow]);
            contrib = contrib.shift_z(e.first);
            out += contrib.shift_w(lpow);
        }
    }
    return out;
}

rlseries rlseries::subst_w(const rlseries& s) const {
    int d = w_degree();
    rlseries out(ram_, ztr_, std::min(wtr_, s.wtr_));
    std::vector<rlseries> sp(d + 1, term(ram_, 1.0, 0, 0, 0, ztr_, s.wtr_));
    for (int k = 1; k <= d; ++k) sp[k] = sp[k - 1] * s;
    for (const auto& [e, l] : c_) {
        rlseries contrib = sp[e.second].scaled_laurent(l);
        out += contrib.shift_z(e.first);
    }
    return out;
}

rlseries rlseries::compose_z_shift(const rlseries& F, const rlseries& u) {
    if (F.w_degree() > 0)
        throw error("compose_z_shift: outer series must be one-variable");
    if (u.z_order() < 1)
        throw error("compose_z_shift: u needs positive z-order");
    const int n = F.ram_;
    if (u.ram_ != n) throw error("compose_z_shift: mixed ramification");
    int zt = std::min(F.ztr_, u.ztr_);
    int wt = u.wtr_;

    rlseries one = term(n, 1.0, 0, 0, 0, zt, wt);
    rlseries opu = one + u.with_ztrunc(zt);
    // sigma = (1+u)^{1/n};  tau = (1 + log1p(u) * t^{-n})^{1/n}.
    rlseries sigma = opu.pow_binomial(1, n);
    rlseries fold = u.with_ztrunc(zt).log1p().mul_t(-n);
    rlseries tau = (one + fold).pow_binomial(1, n);
    rlseries tau_inv = (one + fold).pow_binomial(-1, n);

    // Power tables.
    int pmax = 0, kmin = 0, kmax = 0;
    for (const auto& [e, l] : F.c_) {
        if (l.is_zero()) continue;
        pmax = std::max(pmax, e.first);
        kmin = std::min(kmin, l.bottom());
        kmax = std::max(kmax, l.top());
    }
    std::vector<rlseries> sig_p(pmax + 1, one);
    for (int p = 1; p <= pmax; ++p) sig_p[p] = sig_p[p - 1] * sigma;
    std::vector<rlseries> tau_pos(std::max(kmax, 0) + 1, one);
    for (int k = 1; k <= kmax; ++k) tau_pos[k] = tau_pos[k - 1] * tau;
    std::vector<rlseries> tau_neg(std::max(-kmin, 0) + 1, one);
    for (int k = 1; k <= -kmin; ++k) tau_neg[k] = tau_neg[k - 1] * tau_inv;

    rlseries out(n, zt, wt);
    for (const auto& [e, l] : F.c_) {
        if (l.is_zero()) continue;
        rlseries slice_acc(n, zt, wt);
        l.for_each([&](int k, cplx c) {
            // Validity of F's laurent window: coefficients below
            // l.lo_valid() are unknown; the composed result inherits the
            // window through the t^k factor.
            const rlseries& tp = k >= 0 ? tau_pos[k] : tau_neg[-k];
            slice_acc += tp.mul_t(k).scaled(c);
        });
        if (!l.exact()) {
            // Mark unknown t-depth: fold the validity into every slice of
            // the accumulated piece.
            rlseries marked(n, zt, wt);
            for (const auto& [ee, ll] : slice_acc.slices()) {
                laurent t = ll.truncated_below(l.lo_valid());
                marked.set_slice(ee.first, ee.second, t);
            }
            slice_acc = marked;
        }
        rlseries piece = sig_p[e.first] * slice_acc;
        out += piece.shift_z(e.first);
    }
    return out;
}

cplx rlseries::eval(const branch& br, cplx z) const { return eval(br, z, {0.0, 0.0}); }

cplx rlseries::eval(const branch& br, cplx z, cplx w) const {
    if (br.n != ram_) throw error("rlseries::eval: branch ramification mismatch");
    cplx t = br.tval(z);
    cplx zr = br.root_z(z);
    int pmax = 0, jmax = 0;
    for (const auto& [e, l] : c_) {
        pmax = std::max(pmax, e.first);
        jmax = std::max(jmax, e.second);
    }
    std::vector<cplx> zp(pmax + 1, 1.0), wp(jmax + 1, 1.0);
    for (int p = 1; p <= pmax; ++p) zp[p] = zp[p - 1] * zr;
    for (int j = 1; j <= jmax; ++j) wp[j] = wp[j - 1] * w;
    cplx s = 0.0;
    for (const auto& [e, l] : c_) s += zp[e.first] * wp[e.second] * l.eval(t);
    return s;
}

double rlseries::max_abs() const {
    double m = 0.0;
    for (const auto& [e, l] : c_) m = std::max(m, l.max_abs());
    return m;
}

std::string rlseries::str() const {
    std::ostringstream os;
    for (const auto& [e, l] : c_) {
        if (l.is_zero() && l.exact()) continue;
        os << "z^(" << e.first << "/" << ram_ << ")";
        if (e.second) os << " w^" << e.second;
        os << " * [" << l.str() << "]\n";
    }
    os << "(ztrunc " << ztr_ << "/" << ram_ << ", wtrunc " << wtr_ << ")";
    return os.str();
}

}  // namespace petals
