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

#include "petals/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace petals {

bool laurent::is_zero() const {
    for (const cplx& v : c_)
        if (v != cplx{0.0, 0.0}) return false;
    return true;
}

int laurent::top() const {
    for (int i = (int)c_.size() - 1; i >= 0; --i)
        if (c_[i] != cplx{0.0, 0.0}) return base_ + i;
    return 0;
}

int laurent::bottom() const {
    for (int i = 0; i < (int)c_.size(); ++i)
        if (c_[i] != cplx{0.0, 0.0}) return base_ + i;
    return 0;
}

cplx laurent::at(int k) const {
    if (k < base_ || k >= base_ + (int)c_.size()) return {0.0, 0.0};
    return c_[k - base_];
}

void laurent::set(int k, cplx v) {
    if (c_.empty()) {
        base_ = k;
        c_ = {v};
        return;
    }
    if (k < base_) {
        c_.insert(c_.begin(), base_ - k, cplx{0.0, 0.0});
        base_ = k;
    } else if (k >= base_ + (int)c_.size()) {
        c_.resize(k - base_ + 1, cplx{0.0, 0.0});
    }
    c_[k - base_] = v;
}

void laurent::trim() {
    // Drop stored coefficients below the validity marker and outer zeros.
    int cut = 0;
    while (cut < (int)c_.size() && base_ + cut < lo_) ++cut;
    if (cut) {
        c_.erase(c_.begin(), c_.begin() + cut);
        base_ += cut;
    }
    while (!c_.empty() && c_.front() == cplx{0.0, 0.0}) {
        c_.erase(c_.begin());
        ++base_;
    }
    while (!c_.empty() && c_.back() == cplx{0.0, 0.0}) c_.pop_back();
    if (c_.empty()) base_ = 0;
}

laurent laurent::truncated_below(int lo) const {
    laurent r = *this;
    r.lo_ = std::max(r.lo_, lo);
    r.trim();
    return r;
}

laurent laurent::clip_principal(int depth) const {
    laurent r;
    r.lo_ = exact_lo;
    for (int i = 0; i < (int)c_.size(); ++i) {
        int k = base_ + i;
        if (k >= -depth && k >= lo_ && c_[i] != cplx{0.0, 0.0}) r.set(k, c_[i]);
    }
    return r;
}

laurent laurent::shifted(int dk) const {
    laurent r = *this;
    r.base_ += dk;
    if (r.lo_ != exact_lo) r.lo_ += dk;
    return r;
}

laurent laurent::derivative() const {
    laurent r;
    r.lo_ = lo_ == exact_lo ? exact_lo : lo_ - 1;
    for (int i = 0; i < (int)c_.size(); ++i) {
        int k = base_ + i;
        if (k != 0 && c_[i] != cplx{0.0, 0.0}) r.set(k - 1, (double)k * c_[i]);
    }
    r.trim();
    return r;
}

laurent operator+(const laurent& a, const laurent& b) {
    laurent r;
    r.lo_ = std::max(a.lo_, b.lo_);
    if (a.c_.empty() && b.c_.empty()) return r;
    int lo = std::min(a.c_.empty() ? b.base_ : a.base_,
                      b.c_.empty() ? a.base_ : b.base_);
    int hi = std::max(a.base_ + (int)a.c_.size(), b.base_ + (int)b.c_.size());
    r.base_ = lo;
    r.c_.assign(hi - lo, cplx{0.0, 0.0});
    for (int i = 0; i < (int)a.c_.size(); ++i) r.c_[a.base_ + i - lo] += a.c_[i];
    for (int i = 0; i < (int)b.c_.size(); ++i) r.c_[b.base_ + i - lo] += b.c_[i];
    r.trim();
    return r;
}

laurent operator-(const laurent& a) {
    laurent r = a;
    for (cplx& v : r.c_) v = -v;
    return r;
}

laurent operator-(const laurent& a, const laurent& b) { return a + (-b); }

laurent operator*(const laurent& a, const laurent& b) {
    laurent r;
    const bool a0 = a.is_zero(), b0 = b.is_zero();
    // An exact zero annihilates everything, including unknown tails.
    if ((a0 && a.exact()) || (b0 && b.exact())) return r;
    // Bounds on the largest possibly-nonzero exponent of each factor; a
    // truncated window that stores only zeros can still hide terms below
    // its validity marker.
    long ta = a0 ? (long)a.lo_ - 1 : (long)a.top();
    long tb = b0 ? (long)b.lo_ - 1 : (long)b.top();
    long la = a.exact() ? (long)laurent::exact_lo : (long)a.lo_ + tb;
    long lb = b.exact() ? (long)laurent::exact_lo : (long)b.lo_ + ta;
    r.lo_ = (int)std::max({la, lb, (long)laurent::exact_lo});
    if (!a0 && !b0) {
        r.base_ = a.base_ + b.base_;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, cplx{0.0, 0.0});
        for (int i = 0; i < (int)a.c_.size(); ++i) {
            if (a.c_[i] == cplx{0.0, 0.0}) continue;
            for (int j = 0; j < (int)b.c_.size(); ++j)
                r.c_[i + j] += a.c_[i] * b.c_[j];
        }
    }
    r.trim();
    return r;
}

laurent laurent::scaled(cplx c) const {
    laurent r = *this;
    if (c == cplx{0.0, 0.0}) {
        r.c_.clear();
        r.base_ = 0;
        return r;
    }
    for (cplx& v : r.c_) v *= c;
    return r;
}

cplx laurent::eval(cplx t) const {
    if (c_.empty()) return {0.0, 0.0};
    // Horner over the stored span, then multiply by t^base_.
    cplx s = 0.0;
    for (int i = (int)c_.size() - 1; i >= 0; --i) s = s * t + c_[i];
    cplx tb = 1.0;
    int b = base_;
    cplx f = b >= 0 ? t : 1.0 / t;
    for (int i = 0; i < std::abs(b); ++i) tb *= f;
    return s * tb;
}

double laurent::max_abs() const {
    double m = 0.0;
    for (const cplx& v : c_) m = std::max(m, std::abs(v));
    return m;
}

std::string laurent::str() const {
    std::ostringstream os;
    os.precision(6);
    bool first = true;
    for (int i = 0; i < (int)c_.size(); ++i) {
        if (c_[i] == cplx{0.0, 0.0}) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << c_[i].real();
        if (c_[i].imag() != 0) os << (c_[i].imag() > 0 ? "+" : "") << c_[i].imag() << "i";
        os << ")";
        int k = base_ + i;
        if (k) os << "*t^" << k;
    }
    if (first) os << "0";
    if (lo_ != exact_lo) os << " [valid t^>=" << lo_ << "]";
    return os.str();
}

}  // namespace petals
