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

#ifndef PETALS_LAURENT_HPP
#define PETALS_LAURENT_HPP

#include <string>
#include <vector>

#include "petals/coeff.hpp"
#include "petals/errors.hpp"

namespace petals {

// One-variable Laurent object in t with the star-property shape: an
// exact finite polynomial part and an infinite principal part truncated
// at some depth.  Coefficients above the stored top are exactly zero;
// coefficients below lo_valid() are UNDEFINED (lost to truncation).  A
// laurent with lo_valid() == exact_lo is fully exact (finitely many
// terms, nothing truncated); products then propagate validity by
//   lo(ab) = max(lo_a + ord-top_b, lo_b + ord-top_a)
// which reduces to "exact" when both factors are.
class laurent {
  public:
    static constexpr int exact_lo = -(1 << 26);

    laurent() : lo_(exact_lo), base_(0) {}

    static laurent zero() { return laurent(); }
    static laurent term(cplx c, int k) {
        laurent l;
        if (c != cplx{0.0, 0.0}) {
            l.base_ = k;
            l.c_ = {c};
        }
        return l;
    }
    static laurent constant(cplx c) { return term(c, 0); }

    bool is_zero() const;
    int lo_valid() const { return lo_; }
    bool exact() const { return lo_ == exact_lo; }
    int top() const;     // largest stored exponent (0 when empty)
    int bottom() const;  // smallest stored exponent

    cplx at(int k) const;
    void set(int k, cplx v);

    laurent truncated_below(int lo) const;  // declare validity >= lo
    // Discards coefficients below t^{-depth} and REDEFINES the result as
    // that exact Laurent polynomial (used to clip divergent principal
    // tails before numeric work).
    laurent clip_principal(int depth) const;
    laurent shifted(int dk) const;          // multiply by t^dk
    laurent derivative() const;             // d/dt

    friend laurent operator+(const laurent& a, const laurent& b);
    friend laurent operator-(const laurent& a, const laurent& b);
    friend laurent operator-(const laurent& a);
    friend laurent operator*(const laurent& a, const laurent& b);
    laurent& operator+=(const laurent& b) { return *this = *this + b; }
    laurent& operator-=(const laurent& b) { return *this = *this - b; }
    laurent scaled(cplx c) const;

    cplx eval(cplx t) const;
    double max_abs() const;
    std::string str() const;

    // Iteration over stored coefficients.
    template <typename F>
    void for_each(F&& f) const {
        for (int i = 0; i < (int)c_.size(); ++i)
            if (c_[i] != cplx{0.0, 0.0}) f(base_ + i, c_[i]);
    }

  private:
    void trim();

    int lo_;    // validity marker
    int base_;  // exponent of c_[0]
    std::vector<cplx> c_;
};

}  // namespace petals

#endif
