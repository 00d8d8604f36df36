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

#ifndef PETALS_BLOWUP_HPP
#define PETALS_BLOWUP_HPP

#include <utility>
#include <vector>

#include "petals/germ.hpp"

namespace petals {

// One recorded projection step.  In every chart the first coordinate cuts
// out the divisor of interest.
//   u1 at [1:c]:  (u,t) -> (u, u*(t+c))
//   u2 at [c:1]:  (u,t) -> (u*(t+c), u)
//   chain:        (z,w) -> (z*w, w)       (recentering at tau(p) = [0:1])
enum class chart_kind { u1, u2, chain };

struct blow_record {
    chart_kind kind;
    coeff center;  // the c above (unused for chain steps)
};

struct chart {
    std::vector<blow_record> history;

    // Composite projection back to the original coordinates.
    std::pair<cplx, cplx> push_forward(cplx u, cplx t) const;
    std::pair<coeff, coeff> push_forward_exact(const coeff& u, const coeff& t) const;
};

// f-tilde on a blow-up chart.  The exceptional divisor is S = {first
// coordinate = 0}; the germ satisfies f|_S = id_S and acts as the
// identity on the normal bundle of S.
struct lifted_germ {
    germ2 g;
    chart where;
};

// The lift of f in the chart centered at `center`, satisfying
// pi o f-tilde = f o pi to the recorded truncation degree (one degree is
// consumed by the exceptional division).  For entire germs `work_trunc`
// sets the working degree.
lifted_germ blow_up(const germ2& f, const direction& center,
                    int work_trunc = 0);

// Same map expressed in an explicitly chosen chart (used for the
// chart-independence checks); [1:c] lives in u1, [c:1] in u2.
lifted_germ blow_up_in_chart(const germ2& f, chart_kind k, const coeff& c,
                             int work_trunc = 0);

struct chain_step_info {
    bool singular = true;       // monomial-reduced bracket vanishes at O
    int valid_trunc = 0;
};

// One linear-chain step: recenter at the intersection of the new
// exceptional divisor with the proper transform of the previous one.
lifted_germ chain_step(const lifted_germ& f, chain_step_info* info = nullptr);

struct chain_result {
    lifted_germ g;
    int steps_done = 0;
    bool terminated_early = false;  // tau^j(p) stopped being singular
    int termination_step = -1;
};

// k chain steps starting from the lifted germ at p (k = 0 returns the
// input unchanged).  Stops early, with the offending step recorded, if a
// chain point fails the singularity test.
chain_result linear_chain(const lifted_germ& start, int k);

// Convenience: blow up f at the characteristic direction p, then run k
// chain steps.
chain_result linear_chain(const germ2& f, const direction& p, int k,
                          int work_trunc = 0);

// Blows up f at [v] and reports whether the pure order there is one.
// Exact entire germs only (delegates to pure_order).
bool is_regular_along(const germ2& f, const direction& v, int work_trunc = 0);

}  // namespace petals

#endif
