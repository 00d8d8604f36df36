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

#ifndef PETALS_BRANCH_HPP
#define PETALS_BRANCH_HPP

#include <cmath>
#include <complex>

#include "petals/coeff.hpp"

namespace petals {

// Branch data for the multivalued pieces z^{p/n} and t = (log z)^{1/n}.
//
// log z uses arg z in (theta0 - pi, theta0 + pi], so the cut sits on the
// ray theta0 + pi.  For t the n-th root needs arg(log z) CONTINUOUS on
// the cut plane; near z = 0 the values of log z fill the left half plane,
// so taking arg(log z) in [pi/2, 3pi/2) keeps t inside one sector of
// central angle pi/n (as the construction of the normal form requires).
// The principal n-th root of the principal log would split t across two
// sectors and tear the petal domains apart.
struct branch {
    int n = 2;            // ramification
    double theta0 = 0.0;  // cut direction minus pi

    cplx log(cplx z) const {
        double a = std::arg(z) - theta0;
        // reduce to (-pi, pi]
        while (a <= -M_PI) a += 2.0 * M_PI;
        while (a > M_PI) a -= 2.0 * M_PI;
        return {std::log(std::abs(z)), a + theta0};
    }

    bool on_cut(cplx z, double tol = 1e-12) const {
        double a = std::arg(z) - theta0;
        while (a <= -M_PI) a += 2.0 * M_PI;
        while (a > M_PI) a -= 2.0 * M_PI;
        return std::abs(a - M_PI) < tol;
    }

    // z^{1/n} through this log.
    cplx root_z(cplx z) const { return std::exp(log(z) / (double)n); }

    // z^{p/n}.
    cplx pow_zn(cplx z, int p) const {
        return std::exp(log(z) * ((double)p / (double)n));
    }

    // t = (log z)^{1/n} with the continuous-argument branch.
    cplx tval(cplx z) const {
        cplx lam = log(z);
        double m = std::abs(lam);
        double a = std::atan2(lam.imag(), lam.real());
        if (lam.imag() < 0.0) a += 2.0 * M_PI;
        return std::exp(cplx{std::log(m), a} / (double)n);
    }

    // q(z) = z^{r + (n-1)/n} (log z)^{(n-1)/n}: the petal-defining value.
    cplx petal_q(cplx z, int r) const {
        cplx t = tval(z);
        cplx tp = 1.0;
        for (int i = 0; i < n - 1; ++i) tp *= t;
        return std::exp(log(z) * ((double)(n * r + n - 1) / (double)n)) * tp;
    }
};

}  // namespace petals

#endif
