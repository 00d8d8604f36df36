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

#ifndef PETALS_NORMALIZER_HPP
#define PETALS_NORMALIZER_HPP

#include <vector>

#include "petals/classify.hpp"
#include "petals/ramlog.hpp"

namespace petals {

struct normalize_options {
    int z_degree = 0;        // extra z-degree budget (0: pick from r, n)
    int depth = 24;          // principal-part depth for the formal solutions
    // The formal solutions are divergent (Gevrey), so numeric work uses
    // shift functions clipped to this depth; at working radii the series
    // only carries information down to roughly |log z| terms anyway.
    int eval_depth = 6;
    double coeff_tol = 1e-9; // relative tolerance on the verified pattern
};

// The germ in the coordinates of the hard-case normal form, together
// with the ladder of shift functions and the H kernel of the fixed-point
// operator.
struct normalized_germ {
    int n = 2, r = 1;
    cplx a, alpha;
    branch br;

    rlseries fhat1, fhat2;   // normal form, w-polynomial
    rlseries psi1;           // remainder of fhat2 on w = 0
    double pattern_error = 0.0;  // worst relative defect of the 5 leading coefficients

    // Ladder state (filled by shift_ladder).
    std::vector<laurent> Q;        // Q_0 ... Q_{h_max}, full depth
    std::vector<rlseries> w_level; // w_1 ... w_{h_max+1}, full depth
    rlseries shifted1, shifted2;   // the level-(h_max) shifted form
    rlseries Hker;                 // H(Z,W) = W - (Z/z1)^{1/n} shifted2
    // Numeric model: same construction with the shift clipped to
    // eval_depth; exactly conjugate to fhat, safe to evaluate.
    rlseries num_w, num_shifted1, num_shifted2, num_Hker;
    double i_exponent = 1.0;       // max(1, I/n)
    double J = 0.0;                // log-exponent of the pure-z bound
    int h_max = 1;

    double rho() const { return r + (double)(n - 1) / n; }
};

// Unique formal solution of
//   t^{-(n-1)} Q' + (n-1)[(h+1) + t^{-n}] Q = -n t^{-(n-1)} R(t)
// of star shape (finite polynomial part, infinite principal part), to
// the requested principal depth.
laurent solve_formal_ode(int h, int n, const laurent& R, int depth);

// Residual of a candidate solution of the same equation, as a laurent
// (zero on its valid window for a true solution).
laurent formal_ode_residual(int h, int n, const laurent& R, const laurent& Q);

// Solves the (alpha, a) system for the hard case, applies Z = alpha z
// and the shear v = W - a Z^{1/n} (log Z)^{1/n}, and verifies the
// displayed leading coefficients.
normalized_germ normalize(const adapted_form& af, const index_data& idx,
                          const normalize_options& opts = {});

// Builds Q_0..Q_{h_max} (default 2n-3), the shifted form, the H kernel,
// and the exponents i and J.  Appends to / fills the ladder fields.
void shift_ladder(normalized_germ& ng, int h_max = -1,
                  const normalize_options& opts = {});

// Defect  fhat2(z, w(z)) - w(fhat1(z, w(z)))  of a candidate curve w.
rlseries invariance_defect(const normalized_germ& ng, const rlseries& w);

struct hfun_check {
    bool order_bounds_ok = false;
    double numeric_error = 0.0;  // worst relative error of the series vs
                                 // direct evaluation of W - (Z/z1)^{1/n} w1
};

// Verifies the order bounds of the H kernel and cross-checks it at
// sample points against the direct formula.
hfun_check check_h_function(const normalized_germ& ng, int samples = 20,
                            double radius = 1e-3);

}  // namespace petals

#endif
