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

#ifndef PETALS_ADAPTED_HPP
#define PETALS_ADAPTED_HPP

#include <map>
#include <optional>

#include "petals/blowup.hpp"

namespace petals {

constexpr int order_infinity = poly2::entire;

// Adapted-chart normalization f1 = z + z^{r+1} A0, f2 = w + z^r B1 with
// z not dividing B1.
struct adapted_form {
    int r = 0;
    poly2 A0, B1;
    int mu = order_infinity, nu = order_infinity;
    int nu_o = 0;                 // min(ord(z*A0), ord(B1))
    bool tangential = false;

    coeff a(int i, int j) const { return A0.at(i, j); }
    coeff b(int i, int j) const { return B1.at(i, j); }
};

// Laurent polynomial in one variable with exact-or-float coefficients,
// used for the index series k(w).
struct wlaurent {
    std::map<int, coeff> c;  // exponent -> coefficient
    int lo_valid = 0, hi_valid = -1;

    coeff at(int k, mode m) const {
        auto it = c.find(k);
        return it == c.end() ? coeff::zero(m) : it->second;
    }
};

struct index_data {
    int mu = order_infinity, nu = order_infinity;
    bool tangential = false;
    int m = order_infinity;  // min h with a_{0,h} != 0
    int n = order_infinity;  // min j with b_{0,j} != 0
    wlaurent k_series;
    coeff index;
};

// Extracts the adapted form of a lifted germ.  Throws hypothesis_error
// when the germ is degenerate along S (k == infinity) and
// truncation_error when the valid degree cannot decide.
adapted_form extract_adapted_form(const lifted_germ& f);

// Same, but reports non-tangential inputs through the `tangential` flag
// instead of throwing (classification wants the three-way split).
std::optional<adapted_form> try_adapted_form(const lifted_germ& f);

// Residue of A0(0,w)/B1(0,w) at w = 0, the Laurent series to depth
// n + extra_depth, and the invariants m, n.
index_data residual_index(const adapted_form& af, int extra_depth = 8);

// Numeric contour-integral oracle for the residue: trapezoid rule for
// (1/2 pi i) * integral of A0(0,w)/B1(0,w) on |w| = radius.
cplx residue_contour_oracle(const adapted_form& af, double radius = 1e-2,
                            int nodes = 2048);

}  // namespace petals

#endif
