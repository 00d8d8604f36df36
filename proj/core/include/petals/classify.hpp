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

#ifndef PETALS_CLASSIFY_HPP
#define PETALS_CLASSIFY_HPP

#include <optional>
#include <string>

#include "petals/adapted.hpp"

namespace petals {

// Decision tree over (m, n, Ind).  The easy cases carry a guaranteed
// curve count of r + m(r+1); the hard case guarantees at least one curve.
enum class germ_case {
    index_zero,
    easy_a,        // m < n-1
    easy_b,        // m = n-1, Ind != n
    easy_c,        // m = 0, n = 1, Ind = 1
    nondeg_direct, // n = 1, Ind not in {0,1}: nondegenerate direction exists
    hard,          // m = n-1, Ind = n
    not_tangential,
    not_singular,
};

std::string to_string(germ_case c);

struct classification {
    germ_case kind;
    long curve_count = 0;  // guaranteed lower bound
    int r = 0, m = 0, n = 0;
    coeff index;
    std::optional<coeff> z0;
    std::optional<coeff> lambda;
    std::optional<direction> target;
};

// Deterministic assignment; evaluation order: tangential gate, singular
// gate, index-zero gate, n = 1 branch, then the m vs n-1 split.
classification classify(const adapted_form& af, const index_data& idx);

// z0 and lambda of the easy-case chain target (m >= 1 branches).
std::pair<coeff, coeff> easy_case_target(const adapted_form& af, const index_data& idx);

struct chain_certificate {
    bool ok = false;
    int steps = 0;                  // chain length actually run (= m)
    long predicted_count = 0;       // r + m(r+1)
    int order_after = 0;            // nu(f^[m])
    coeff z0, lambda;
    bool target_found = false;
    bool target_nondegenerate = false;
    bool lambda_matches = false;
    // Hard case: the chain hits the degenerate point z0 = 0.
    bool degenerate_endpoint = false;
    int degenerate_at_step = -1;
    std::string detail;
};

// Runs the m-step chain from the adapted germ at p and certifies that
// [z0:1] is a nondegenerate characteristic direction of the result with
// the predicted eigenvalue, so the nondegenerate-direction theory applies
// there.  On hard-case input it instead certifies that the chain reaches
// the degenerate point z0 = 0 at step n.
chain_certificate certify_chain(const lifted_germ& at_p, const adapted_form& af,
                                const index_data& idx, const classification& cls);

chain_certificate certify_chain(const germ2& f, const direction& p,
                                const classification& cls, int work_trunc = 0);

// Easy-case (c): after Z = alpha z with alpha^r = -a00, the map has
// leading part z - z^{r+1} and w[1 - z^r ...]; verified in float mode.
struct rescale_certificate {
    bool ok = false;
    cplx alpha;
    double err_f1 = 0.0, err_f2 = 0.0;
};
rescale_certificate certify_easy_c(const adapted_form& af);

}  // namespace petals

#endif
