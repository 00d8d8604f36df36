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

#ifndef PETALS_ERRORS_HPP
#define PETALS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace petals {

// Exit codes used by the CLI: 0 success, 1 usage/parse, 2 hypothesis not
// met, 3 truncation exhausted, 4 numeric non-convergence.
struct error : std::runtime_error {
    int exit_code;
    explicit error(const std::string& what, int code = 1)
        : std::runtime_error(what), exit_code(code) {}
};

// A precondition of the underlying theory fails for this input
// (dicritical origin, vanishing index, wrong pure order, ...).
struct hypothesis_error : error {
    explicit hypothesis_error(const std::string& what) : error(what, 2) {}
};

// Not enough valid series degrees left to answer the question.
struct truncation_error : error {
    explicit truncation_error(const std::string& what) : error(what, 3) {}
};

// An iteration failed to converge within its budget.
struct convergence_error : error {
    explicit convergence_error(const std::string& what) : error(what, 4) {}
};

struct parse_error : error {
    std::size_t position;  // byte offset into the source text
    parse_error(const std::string& what, std::size_t pos)
        : error(what, 1), position(pos) {}
};

// Mixing exact and floating coefficients is a programming error, not a
// data error.
struct mode_error : std::logic_error {
    explicit mode_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace petals

#endif
