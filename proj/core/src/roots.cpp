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

#include "petals/roots.hpp"

#include <algorithm>
#include <cmath>

namespace petals {

std::vector<cplx> aberth_roots(std::vector<cplx> const& poly) {
    std::vector<cplx> p = poly;
    while (!p.empty() && std::abs(p.back()) == 0.0) p.pop_back();
    int n = (int)p.size() - 1;
    std::vector<cplx> roots;
    if (n <= 0) return roots;
    // Strip roots at the origin first; they are exact.
    int zeros = 0;
    while (zeros < n && std::abs(p[zeros]) == 0.0) ++zeros;
    if (zeros) {
        p.erase(p.begin(), p.begin() + zeros);
        n -= zeros;
        roots.assign(zeros, cplx{0.0, 0.0});
        if (n == 0) return roots;
    }

    // Initial guesses on a circle sized by the coefficient ratio bound.
    double r = 0.0;
    for (int i = 0; i < n; ++i)
        r = std::max(r, std::pow(std::abs(p[i] / p[n]), 1.0 / (n - i)));
    r = 2.0 * std::max(r, 0.5);
    std::vector<cplx> x(n);
    for (int i = 0; i < n; ++i) {
        double th = 2.0 * M_PI * i / n + 0.4;
        x[i] = r * cplx{std::cos(th), std::sin(th)};
    }

    std::vector<cplx> dp(n);
    for (int i = 1; i <= n; ++i) dp[i - 1] = (double)i * p[i];

    auto horner = [](const std::vector<cplx>& q, cplx z) {
        cplx s = 0.0;
        for (int i = (int)q.size() - 1; i >= 0; --i) s = s * z + q[i];
        return s;
    };

    for (int iter = 0; iter < 400; ++iter) {
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            cplx pv = horner(p, x[i]);
            cplx dv = horner(dp, x[i]);
            cplx ratio = (dv == cplx{0.0, 0.0}) ? cplx{0.0, 0.0} : pv / dv;
            cplx s = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != i) s += 1.0 / (x[i] - x[j]);
            cplx d = ratio / (1.0 - ratio * s);
            x[i] -= d;
            worst = std::max(worst, std::abs(d) / (1.0 + std::abs(x[i])));
        }
        if (worst < 1e-15) break;
    }
    roots.insert(roots.end(), x.begin(), x.end());
    return roots;
}

std::optional<mpq_class> reconstruct_rational(double x, unsigned long qmax, double tol) {
    if (!std::isfinite(x)) return std::nullopt;
    double a = x;
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(a);
        if (fl > 9e17 || fl < -9e17) return std::nullopt;
        long long ai = (long long)fl;
        long long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 < 0 || (unsigned long long)q2 > qmax) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double frac = a - fl;
        if (q1 > 0 && std::abs(x - (double)p1 / (double)q1) <= tol) break;
        if (frac < 1e-12) break;
        a = 1.0 / frac;
    }
    if (q1 == 0) return std::nullopt;
    if (std::abs(x - (double)p1 / (double)q1) > tol) return std::nullopt;
    mpq_class q((long)p1, (long)q1);
    q.canonicalize();
    return q;
}

namespace {

// Evaluate an exact polynomial at a Gaussian rational.
exact_complex horner_exact(const std::vector<coeff>& p, const exact_complex& z) {
    exact_complex s;
    for (int i = (int)p.size() - 1; i >= 0; --i)
        s = s * z + p[i].exact_value();
    return s;
}

// Deflate p by (x - z); remainder must be zero (caller verified the root).
std::vector<coeff> deflate(const std::vector<coeff>& p, const exact_complex& z) {
    int n = (int)p.size() - 1;
    std::vector<coeff> q(n);
    exact_complex carry = p[n].exact_value();
    for (int i = n - 1; i >= 0; --i) {
        q[i] = coeff(carry);
        carry = p[i].exact_value() + carry * z;
    }
    return q;
}

}  // namespace

exact_root_result exact_rational_roots(const std::vector<coeff>& poly) {
    exact_root_result out;
    std::vector<coeff> cur = poly;
    while (!cur.empty() && cur.back().is_zero()) cur.pop_back();
    if (cur.size() <= 1) {
        out.residual = cur;
        return out;
    }

    // Roots at the origin.
    int zero_mult = 0;
    while ((int)cur.size() - 1 > 0 && cur.front().is_zero()) {
        cur.erase(cur.begin());
        ++zero_mult;
    }
    if (zero_mult) out.roots.push_back({exact_complex{}, zero_mult});

    bool progress = true;
    while (progress && (int)cur.size() - 1 > 0) {
        progress = false;
        std::vector<cplx> fp(cur.size());
        for (size_t i = 0; i < cur.size(); ++i) fp[i] = cur[i].to_cplx();
        for (cplx cand : aberth_roots(fp)) {
            auto re = reconstruct_rational(cand.real(), 1000000UL, 1e-7);
            auto im = reconstruct_rational(cand.imag(), 1000000UL, 1e-7);
            if (!re || !im) continue;
            exact_complex z{*re, *im};
            if (!horner_exact(cur, z).is_zero()) continue;
            int mult = 0;
            while (horner_exact(cur, z).is_zero() && (int)cur.size() > 1) {
                cur = deflate(cur, z);
                ++mult;
            }
            bool merged = false;
            for (auto& r : out.roots)
                if (r.value == z) {
                    r.multiplicity += mult;
                    merged = true;
                }
            if (!merged) out.roots.push_back({z, mult});
            progress = true;
            break;  // coefficients changed; restart the float solve
        }
    }
    out.residual = cur;
    return out;
}

}  // namespace petals
