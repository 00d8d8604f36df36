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

#ifndef PETALS_COEFF_HPP
#define PETALS_COEFF_HPP

#include <complex>
#include <string>

#include <gmpxx.h>

#include "petals/errors.hpp"

namespace petals {

enum class mode { exact, floating };

using cplx = std::complex<double>;

// Exact complex scalar with rational real and imaginary parts.
struct exact_complex {
    mpq_class re, im;

    exact_complex() : re(0), im(0) {}
    exact_complex(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {
        re.canonicalize();
        im.canonicalize();
    }

    bool is_zero() const { return re == 0 && im == 0; }
    cplx to_cplx() const { return {re.get_d(), im.get_d()}; }

    friend exact_complex operator+(const exact_complex& a, const exact_complex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend exact_complex operator-(const exact_complex& a, const exact_complex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend exact_complex operator-(const exact_complex& a) { return {-a.re, -a.im}; }
    friend exact_complex operator*(const exact_complex& a, const exact_complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend exact_complex operator/(const exact_complex& a, const exact_complex& b) {
        mpq_class n = b.re * b.re + b.im * b.im;
        if (n == 0) throw error("exact division by zero");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    friend bool operator==(const exact_complex& a, const exact_complex& b) {
        return a.re == b.re && a.im == b.im;
    }
};

// Scalar coefficient in one of two modes.  Arithmetic never silently
// mixes modes; mixing throws mode_error.
class coeff {
  public:
    coeff() : mode_(mode::exact), f_(0.0, 0.0) {}
    explicit coeff(exact_complex v) : mode_(mode::exact), e_(std::move(v)), f_(0, 0) {}
    explicit coeff(cplx v) : mode_(mode::floating), f_(v) {}

    static coeff exact_int(long re, long im = 0) {
        return coeff(exact_complex{mpq_class(re), mpq_class(im)});
    }
    static coeff exact_rat(long num, long den, long inum = 0, long iden = 1) {
        return coeff(exact_complex{mpq_class(num, den), mpq_class(inum, iden)});
    }
    static coeff fl(double re, double im = 0.0) { return coeff(cplx{re, im}); }
    static coeff zero(mode m) {
        return m == mode::exact ? exact_int(0) : fl(0.0);
    }
    static coeff one(mode m) {
        return m == mode::exact ? exact_int(1) : fl(1.0);
    }

    mode coeff_mode() const { return mode_; }
    bool is_exact() const { return mode_ == mode::exact; }

    bool is_zero() const {
        return is_exact() ? e_.is_zero() : (f_ == cplx{0.0, 0.0});
    }

    const exact_complex& exact_value() const {
        require(mode::exact);
        return e_;
    }
    cplx to_cplx() const { return is_exact() ? e_.to_cplx() : f_; }

    // Lossy by design: used when handing exact classification data to the
    // floating hard-case pipeline.
    coeff to_float() const { return coeff(to_cplx()); }

    friend coeff operator+(const coeff& a, const coeff& b) {
        a.match(b);
        return a.is_exact() ? coeff(a.e_ + b.e_) : coeff(a.f_ + b.f_);
    }
    friend coeff operator-(const coeff& a, const coeff& b) {
        a.match(b);
        return a.is_exact() ? coeff(a.e_ - b.e_) : coeff(a.f_ - b.f_);
    }
    friend coeff operator-(const coeff& a) {
        return a.is_exact() ? coeff(-a.e_) : coeff(-a.f_);
    }
    friend coeff operator*(const coeff& a, const coeff& b) {
        a.match(b);
        return a.is_exact() ? coeff(a.e_ * b.e_) : coeff(a.f_ * b.f_);
    }
    friend coeff operator/(const coeff& a, const coeff& b) {
        a.match(b);
        if (a.is_exact()) return coeff(a.e_ / b.e_);
        if (b.f_ == cplx{0.0, 0.0}) throw error("float division by zero");
        return coeff(a.f_ / b.f_);
    }
    friend bool operator==(const coeff& a, const coeff& b) {
        a.match(b);
        return a.is_exact() ? a.e_ == b.e_ : a.f_ == b.f_;
    }

    coeff& operator+=(const coeff& b) { return *this = *this + b; }
    coeff& operator-=(const coeff& b) { return *this = *this - b; }
    coeff& operator*=(const coeff& b) { return *this = *this * b; }

    std::string str() const;

  private:
    void require(mode m) const {
        if (mode_ != m) throw mode_error("coefficient mode mismatch");
    }
    void match(const coeff& o) const {
        if (mode_ != o.mode_) throw mode_error("mixed exact/float arithmetic");
    }

    mode mode_;
    exact_complex e_;
    cplx f_;
};

}  // namespace petals

#endif
