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

#ifndef PETALS_RAMLOG_HPP
#define PETALS_RAMLOG_HPP

#include <map>
#include <utility>
#include <vector>

#include "petals/branch.hpp"
#include "petals/laurent.hpp"

namespace petals {

// Finite sums  c * z^{p/n} * t^k * w^j  with t = (log z)^{1/n}, stored as
// laurent-in-t coefficients indexed by (p, j).  Slices with p > ztrunc()
// or j > wtrunc() are undefined, not zero; both markers shrink through
// multiplication exactly as for truncated polynomials.  1/log z factors
// fold into the t-structure as t^{-n}.
class rlseries {
  public:
    // Truncation sentinel: "valid to every degree" in that variable.
    static constexpr int inf = 1 << 26;

    rlseries() : ram_(2), ztr_(inf), wtr_(inf) {}
    rlseries(int ram, int ztrunc, int wtrunc)
        : ram_(ram), ztr_(ztrunc), wtr_(wtrunc) {}

    static rlseries term(int ram, cplx c, int p, int tk, int j, int ztrunc,
                         int wtrunc) {
        rlseries s(ram, ztrunc, wtrunc);
        if (p <= ztrunc && j <= wtrunc)
            s.c_[{p, j}] = laurent::term(c, tk);
        return s;
    }

    int ram() const { return ram_; }
    int ztrunc() const { return ztr_; }
    int wtrunc() const { return wtr_; }
    bool is_zero() const;

    // Least p (resp. j) carrying a nonzero slice; ztrunc()+1 if none.
    int z_order() const;
    int w_order() const;
    int w_degree() const;

    const std::map<std::pair<int, int>, laurent>& slices() const { return c_; }
    laurent slice(int p, int j) const;
    void set_slice(int p, int j, laurent l);

    rlseries with_ztrunc(int zt) const;
    rlseries with_wtrunc(int wt) const;
    // Discards slices with p < lead and divides by z^{lead/n}; the caller
    // asserts the discarded slices vanish (valuation extraction).
    rlseries drop_below_and_shift(int lead) const;
    rlseries shift_z(int dp) const;   // multiply by z^{dp/n} (dp may be < 0)
    rlseries shift_w(int dj) const;
    rlseries mul_t(int dk) const;     // multiply by t^dk
    rlseries scaled(cplx c) const;
    rlseries scaled_laurent(const laurent& l) const;
    rlseries w_slice(int j) const;    // the coefficient of w^j, as a j=0 series

    friend rlseries operator+(const rlseries& a, const rlseries& b);
    friend rlseries operator-(const rlseries& a, const rlseries& b);
    friend rlseries operator-(const rlseries& a);
    friend rlseries operator*(const rlseries& a, const rlseries& b);
    rlseries& operator+=(const rlseries& b) { return *this = *this + b; }
    rlseries& operator-=(const rlseries& b) { return *this = *this - b; }

    // (1 + u)^{num/den} for u = this - 1 of positive z-order.
    rlseries pow_binomial(long num, long den) const;
    // log(1 + u) for this = u of positive z-order.
    rlseries log1p() const;

    // Substitute w <- v + s(z) (s has no w-dependence): the shear and
    // ladder shifts.  The result's w-slot is v.
    rlseries subst_w_shift(const rlseries& s) const;
    // Substitute w <- s(z, w) fully (used with s carrying w-dependence 0
    // or more); this must be polynomial in w.
    rlseries subst_w(const rlseries& s) const;

    // F(z * (1 + u)) for a one-variable F (w-degree 0); u may carry
    // w-dependence.  Handles z^{p/n} and t-rebasing through the branch
    // fold log(z(1+u)) = t^n + log1p(u).
    static rlseries compose_z_shift(const rlseries& F, const rlseries& u);

    cplx eval(const branch& br, cplx z) const;              // w-degree 0
    cplx eval(const branch& br, cplx z, cplx w) const;      // general

    double max_abs() const;
    std::string str() const;

  private:
    void trim();

    int ram_, ztr_, wtr_;
    std::map<std::pair<int, int>, laurent> c_;
};

}  // namespace petals

#endif
