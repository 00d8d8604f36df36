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

#ifndef PETALS_POLY2_HPP
#define PETALS_POLY2_HPP

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "petals/coeff.hpp"
#include "petals/errors.hpp"

namespace petals {

struct exp2 {
    int dz = 0, dw = 0;
    int total() const { return dz + dw; }
    friend auto operator<=>(const exp2&, const exp2&) = default;
};

// Sparse bivariate polynomial/power series in (z, w), truncated by total
// degree.  Terms of total degree > trunc() are *undefined*, not zero;
// every operation propagates the guaranteed-valid degree (min of the
// operands for products and compositions).  trunc() == entire means the
// value is an exact polynomial, valid to every degree.
class poly2 {
  public:
    static constexpr int entire = 1 << 28;

    poly2() : mode_(mode::exact), trunc_(entire) {}
    explicit poly2(mode m, int trunc = entire) : mode_(m), trunc_(trunc) {}

    static poly2 constant(const coeff& c, int trunc = entire);
    static poly2 var_z(mode m, int trunc = entire);
    static poly2 var_w(mode m, int trunc = entire);
    // c * z^dz * w^dw
    static poly2 monomial(const coeff& c, int dz, int dw, int trunc = entire);

    mode poly_mode() const { return mode_; }
    int trunc() const { return trunc_; }
    bool is_entire() const { return trunc_ == entire; }
    bool is_zero() const { return c_.empty(); }

    const std::map<exp2, coeff>& terms() const { return c_; }

    // Zero coefficient of the correct mode for absent exponents; never
    // answers beyond the truncation degree.
    coeff at(int dz, int dw) const;

    // Least total degree of a stored term; nullopt when no terms are
    // stored (zero to the guaranteed degree).
    std::optional<int> order() const;
    int degree() const;      // max stored total degree (0 for zero poly)
    int z_valuation() const; // min dz over stored terms; trunc()+1 if none
    int w_degree() const;    // max dw over stored terms

    poly2 with_trunc(int t) const;            // re-truncate (t <= trunc)
    poly2 homogeneous_part(int k) const;      // degree-k slice
    poly2 drop_below_z(int r) const;          // keep terms with dz >= r
    poly2 shift_z(int s) const;               // multiply by z^s (s may be < 0: asserts divisibility)
    poly2 shift_w(int s) const;
    poly2 dz() const;                         // d/dz
    poly2 dw() const;                         // d/dw
    poly2 swap_vars() const;                  // z <-> w

    cplx eval(cplx z, cplx w) const;          // numeric evaluation of stored terms
    coeff eval_exact(const coeff& z, const coeff& w) const;

    friend poly2 operator+(const poly2& a, const poly2& b);
    friend poly2 operator-(const poly2& a, const poly2& b);
    friend poly2 operator-(const poly2& a);
    friend poly2 operator*(const poly2& a, const poly2& b);
    poly2& operator+=(const poly2& b) { return *this = *this + b; }
    poly2& operator-=(const poly2& b) { return *this = *this - b; }
    poly2& operator*=(const poly2& b) { return *this = *this * b; }
    poly2 scaled(const coeff& c) const;

    bool equals(const poly2& o) const;  // identical terms up to min trunc

    // Multiplicative inverse to degree `out_trunc`; requires a nonzero
    // constant term.
    poly2 inverse(int out_trunc) const;

    // outer(g1, g2), truncated.  Requires zero constant terms on g1,g2
    // unless outer is entire (a genuine polynomial).
    static poly2 compose(const poly2& outer, const poly2& g1, const poly2& g2);

    // log(1+u) = u - u^2/2 + ... ; u must have positive order.
    static poly2 log1p(const poly2& u, int out_trunc);

    // (1+u)^(p/q) by binomial series; u must have positive order.
    static poly2 pow_binomial(const poly2& u, long p, long q, int out_trunc);

    // Exact-mode test that this and o define the same polynomial (entire
    // inputs only).
    std::string str() const;

    void insert_term(int dz, int dw, const coeff& c);  // adds, drops zeros

  private:
    void normalize();

    mode mode_;
    int trunc_;
    std::map<exp2, coeff> c_;
};

inline int min_trunc(int a, int b) { return a < b ? a : b; }

// gcd of two entire exact polynomials, normalized so the leading term
// (lex order on (dz,dw)) has coefficient 1.  Throws on float mode or
// truncated input.
poly2 poly_gcd(const poly2& a, const poly2& b);

// a / b when b divides a exactly (entire exact polynomials).
poly2 poly_divexact(const poly2& a, const poly2& b);
bool poly_divides(const poly2& b, const poly2& a);

// Square-free part of an entire exact polynomial.
poly2 squarefree_part(const poly2& a);

}  // namespace petals

#endif
