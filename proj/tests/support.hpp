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

#ifndef PETALS_TESTS_SUPPORT_HPP
#define PETALS_TESTS_SUPPORT_HPP

#include <random>

#include "petals/germ.hpp"

namespace petals::testing {

// Deterministic generator for exact coefficients with small numerators
// and denominators.
class rng {
  public:
    explicit rng(unsigned long seed) : eng_(seed) {}

    long integer(long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(eng_);
    }
    double real(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(eng_);
    }
    coeff small_rational(bool allow_zero = true, bool gaussian = true) {
        long num = integer(-4, 4);
        if (!allow_zero && num == 0) num = 1;
        long den = integer(1, 3);
        long inum = gaussian && integer(0, 2) == 0 ? integer(-2, 2) : 0;
        if (!allow_zero && num == 0 && inum == 0) num = 1;
        return coeff::exact_rat(num, den, inum);
    }

    // Random sparse entire exact polynomial with terms of total degree in
    // [lo_deg, hi_deg].
    poly2 sparse_poly(int lo_deg, int hi_deg, int terms) {
        poly2 p(mode::exact, poly2::entire);
        for (int t = 0; t < terms; ++t) {
            int d = (int)integer(lo_deg, hi_deg);
            int dz = (int)integer(0, d);
            p.insert_term(dz, d - dz, small_rational());
        }
        return p;
    }

    // Random germ tangent to the identity with nonlinear degrees in
    // [2, deg]; entire exact polynomials.
    germ2 tangent_germ(int deg, int terms = 6) {
        germ2 f;
        f.f1 = poly2::var_z(mode::exact) + sparse_poly(2, deg, terms);
        f.f2 = poly2::var_w(mode::exact) + sparse_poly(2, deg, terms);
        return f;
    }

  private:
    std::mt19937_64 eng_;
};

// Parameters for adapted-chart instances f1 = z + z^{r+1} A0,
// f2 = w + z^r B1 with the usual constraints (b10 != 0, a_{0,m} != 0,
// b_{0,n} != 0, a_{0,h} = 0 for h < m, b_{0,j} = 0 for j < n).
struct form_params {
    int r, m, n;
    coeff a0m, b0n, b10;
};

inline germ2 make_form_instance(rng& rg, const form_params& fp, int extra_terms = 3) {
    const mode md = mode::exact;
    poly2 A0(md, poly2::entire), B1(md, poly2::entire);
    A0.insert_term(0, fp.m, fp.a0m);
    B1.insert_term(0, fp.n, fp.b0n);
    B1.insert_term(1, 0, fp.b10);
    for (int t = 0; t < extra_terms; ++t) {
        // Extra terms must not disturb (m, n): keep dz >= 1, or dw > m / n.
        int dz = (int)rg.integer(1, 2), dw = (int)rg.integer(0, 2);
        A0.insert_term(dz, dw, rg.small_rational());
        B1.insert_term((int)rg.integer(1, 2), (int)rg.integer(0, 2), rg.small_rational());
        A0.insert_term(0, fp.m + 1 + (int)rg.integer(0, 1), rg.small_rational());
        B1.insert_term(0, fp.n + 1 + (int)rg.integer(0, 1), rg.small_rational());
    }
    poly2 zr = poly2::constant(coeff::exact_int(1));
    for (int k = 0; k < fp.r; ++k) zr *= poly2::var_z(md);
    germ2 f;
    f.f1 = poly2::var_z(md) + zr * poly2::var_z(md) * A0;
    f.f2 = poly2::var_w(md) + zr * B1;
    return f;
}

}  // namespace petals::testing

#endif
