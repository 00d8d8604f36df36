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

#ifndef PETALS_ROOTS_HPP
#define PETALS_ROOTS_HPP

#include <optional>
#include <vector>

#include "petals/coeff.hpp"

namespace petals {

// All roots of a univariate complex polynomial (double coefficients,
// index = degree), by Aberth-Ehrlich iteration.  Multiple roots come out
// as clusters; callers that care group them with a tolerance.
std::vector<cplx> aberth_roots(const std::vector<cplx>& p);

// Nearest rational with denominator <= qmax if it reproduces x to within
// tol, via continued fractions.
std::optional<mpq_class> reconstruct_rational(double x, unsigned long qmax, double tol);

struct exact_root {
    exact_complex value;
    int multiplicity;
};

struct exact_root_result {
    std::vector<exact_root> roots;       // verified Gaussian-rational roots
    std::vector<coeff> residual;         // unfactored part (deg 0 if fully split)
};

// Finds all Gaussian-rational roots of an exact univariate polynomial,
// with multiplicities, by float approximation + rational reconstruction +
// exact verification and deflation.  Anything irrational survives in
// `residual` with its full multiplicity.
exact_root_result exact_rational_roots(const std::vector<coeff>& p);

}  // namespace petals

#endif
