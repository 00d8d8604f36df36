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

#ifndef PETALS_GERM_HPP
#define PETALS_GERM_HPP

#include <optional>
#include <vector>

#include "petals/poly2.hpp"

namespace petals {

// A self-map germ (f1, f2) of C^2 at the origin in coordinates (z, w).
// For maps tangent to the identity, f1 - z and f2 - w have order >= 2;
// lifted germs living on blow-up charts relax this, so tangency is a
// separate check rather than a constructor invariant.
struct germ2 {
    poly2 f1, f2;

    mode germ_mode() const { return f1.poly_mode(); }
    int trunc() const { return min_trunc(f1.trunc(), f2.trunc()); }
    bool is_entire() const { return f1.is_entire() && f2.is_entire(); }

    poly2 g() const;  // f1 - z
    poly2 h() const;  // f2 - w

    bool fixes_origin() const;
    bool tangent_to_identity() const;
    void require_tangent() const;
};

// A point of P^1 written [v1:v2] with the first nonzero entry normalized
// to 1, together with the eigenvalue lambda of the top homogeneous part.
struct direction {
    coeff v1, v2;
    coeff lambda;
    bool degenerate = false;
    int multiplicity = 1;

    static direction of(const coeff& v1, const coeff& v2);
    bool same_point(const direction& o) const;
    std::string str() const;
};

struct point_class {
    int pure_order = 0;
    bool singular = false;
    bool corner = false;
    bool dicritical = false;
};

// nu(f): least degree of a nonzero homogeneous part of f - id.
// Throws hypothesis_error when f == id to the valid degree.
int order(const germ2& f);

// z2*P1 == z1*P2 identically on the order-nu(f) parts.
bool is_dicritical(const germ2& f);

// All characteristic directions with multiplicities and eigenvalues.
// Exact mode factors the binary form exactly (rational roots); any
// irrational residual factor is reported through `residual_degree` in
// the result.  Float mode locates roots numerically.
struct char_dir_result {
    std::vector<direction> dirs;
    int residual_degree = 0;             // unresolved multiplicity (exact mode)
    std::vector<coeff> residual_factor;  // its coefficients in x = v1/v2
};
char_dir_result characteristic_directions(const germ2& f);

// Pure order, singularity and corner test at the origin of the chart.
// Exact entire input only.
point_class pure_order(const germ2& f);

}  // namespace petals

#endif
