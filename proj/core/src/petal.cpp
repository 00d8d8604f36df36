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

#include "petals/petal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>

namespace petals {

static double solve_outer_radius(const petal_domain& d) {
    // |z|^rho * |log z|^sigma = 2 delta, fixed point iteration on |z|.
    double rho = d.rho(), sig = (double)(d.n - 1) / d.n;
    double R = std::pow(2.0 * d.delta, 1.0 / rho);
    for (int i = 0; i < 60; ++i) {
        double L = std::abs(std::log(R));
        R = std::pow(2.0 * d.delta / std::pow(std::max(L, 1e-6), sig), 1.0 / rho);
    }
    return R;
}

component_count count_components(const petal_domain& d, const raster_spec& rs) {
    component_count out;
    const int NR = rs.nr, NT = rs.nt;
    out.outer_radius = solve_outer_radius(d) * 1.3;
    const double lr_lo = std::log(out.outer_radius * rs.rmin_scale);
    const double lr_hi = std::log(out.outer_radius);

    std::vector<uint8_t> member((size_t)NR * NT, 0);
    std::vector<double> thetas(NT);
    for (int j = 0; j < NT; ++j) {
        // Cells live strictly inside (theta0 - pi, theta0 + pi]; no wrap.
        thetas[j] = d.theta0 - M_PI + (j + 0.5) * (2.0 * M_PI / NT);
    }
    for (int i = 0; i < NR; ++i) {
        double lr = lr_lo + (lr_hi - lr_lo) * i / (NR - 1);
        double rr = std::exp(lr);
        for (int j = 0; j < NT; ++j) {
            cplx z = rr * cplx{std::cos(thetas[j]), std::sin(thetas[j])};
            member[(size_t)i * NT + j] = d.contains_nothrow(z) ? 1 : 0;
        }
    }

    std::vector<int> label((size_t)NR * NT, 0);
    int cur = 0;
    std::deque<std::pair<int, int>> dq;
    for (int i = 0; i < NR; ++i)
        for (int j = 0; j < NT; ++j) {
            if (!member[(size_t)i * NT + j] || label[(size_t)i * NT + j]) continue;
            ++cur;
            dq.push_back({i, j});
            label[(size_t)i * NT + j] = cur;
            while (!dq.empty()) {
                auto [a, b] = dq.front();
                dq.pop_front();
                const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
                for (int k = 0; k < 4; ++k) {
                    int c = a + di[k], e = b + dj[k];
                    if (c < 0 || c >= NR || e < 0 || e >= NT) continue;
                    size_t idx = (size_t)c * NT + e;
                    if (member[idx] && !label[idx]) {
                        label[idx] = cur;
                        dq.push_back({c, e});
                    }
                }
            }
        }
    out.total = cur;

    // Components touching the inner rows have the origin on the boundary.
    std::vector<int> touching;
    for (int i = 0; i < std::min(3, NR); ++i)
        for (int j = 0; j < NT; ++j) {
            int l = label[(size_t)i * NT + j];
            if (l && std::find(touching.begin(), touching.end(), l) == touching.end())
                touching.push_back(l);
        }
    out.touching_origin = (int)touching.size();

    for (int l : touching) {
        component_info ci;
        ci.touches_origin = true;
        double tlo = 1e9, thi = -1e9, rmax = 0;
        for (int i = 0; i < NR; ++i) {
            double rr = std::exp(lr_lo + (lr_hi - lr_lo) * i / (NR - 1));
            for (int j = 0; j < NT; ++j)
                if (label[(size_t)i * NT + j] == l) {
                    tlo = std::min(tlo, thetas[j]);
                    thi = std::max(thi, thetas[j]);
                    rmax = std::max(rmax, rr);
                }
        }
        ci.theta_lo = tlo;
        ci.theta_hi = thi;
        ci.rmax = rmax;
        out.components.push_back(ci);
    }
    std::sort(out.components.begin(), out.components.end(),
              [](const component_info& a, const component_info& b) {
                  return a.theta_lo < b.theta_lo;
              });
    return out;
}

void write_membership_csv(const petal_domain& d, const raster_spec& rs,
                          const std::string& path) {
    component_count cc = count_components(d, rs);
    FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw error("cannot open " + path);
    std::fprintf(f, "zeta_re,zeta_im,component_id\n");
    const double lr_lo = std::log(cc.outer_radius * rs.rmin_scale);
    const double lr_hi = std::log(cc.outer_radius);
    for (int i = 0; i < rs.nr; ++i) {
        double rr = std::exp(lr_lo + (lr_hi - lr_lo) * i / (rs.nr - 1));
        for (int j = 0; j < rs.nt; ++j) {
            double th = d.theta0 - M_PI + (j + 0.5) * (2.0 * M_PI / rs.nt);
            cplx z = rr * cplx{std::cos(th), std::sin(th)};
            if (!d.contains_nothrow(z)) continue;
            int id = 0;
            for (size_t c = 0; c < cc.components.size(); ++c)
                if (th >= cc.components[c].theta_lo - 1e-9 &&
                    th <= cc.components[c].theta_hi + 1e-9)
                    id = (int)c + 1;
            std::fprintf(f, "%.17g,%.17g,%d\n", z.real(), z.imag(), id);
        }
    }
    std::fclose(f);
}

void point_powers::prepare(const branch& br, cplx zz, int pmax, int kmin, int kmax) {
    z = zz;
    cplx lg = br.log(zz);
    lr = lg.real();
    th = lg.imag();
    if (br.n == 2 && br.theta0 == 0.0) {
        // Principal square roots match the branch data here; the t-sector
        // fix is a sign flip for Im(log z) < 0.
        zr = std::sqrt(zz);
        t = std::sqrt(lg);
        if (lg.imag() < 0.0) t = -t;
    } else {
        zr = std::exp(lg / (double)br.n);
        double m = std::abs(lg);
        double a = std::atan2(lg.imag(), lg.real());
        if (lg.imag() < 0.0) a += 2.0 * M_PI;
        t = std::exp(cplx{std::log(m), a} / (double)br.n);
    }
    zp.assign(pmax + 1, 1.0);
    for (int p = 1; p <= pmax; ++p) zp[p] = zp[p - 1] * zr;
    tp.assign(std::max(kmax, 0) + 1, 1.0);
    for (int k = 1; k <= kmax; ++k) tp[k] = tp[k - 1] * t;
    cplx tinv = 1.0 / t;
    tm.assign(std::max(-kmin, 0) + 1, 1.0);
    for (int k = 1; k <= -kmin; ++k) tm[k] = tm[k - 1] * tinv;
}

void point_powers::prepare_w(cplx w, int jmax) {
    wp.assign(jmax + 1, 1.0);
    for (int j = 1; j <= jmax; ++j) wp[j] = wp[j - 1] * w;
}

series_eval::series_eval(const rlseries& s, branch br, double prune_rel,
                         double rmax_hint, double wbound_hint) : br_(br) {
    const int n = br.n;
    double tmin = std::pow(std::max(std::abs(std::log(rmax_hint)), 1.1), 1.0 / n);
    double tmax = std::pow(30.0, 1.0 / n);  // |log z| stays modest at working radii
    double wb = wbound_hint > 0.0
                    ? wbound_hint
                    : rmax_hint * rmax_hint * std::pow(std::abs(std::log(rmax_hint)), 2.0);
    auto bound = [&](int p, int k, int j, cplx c) {
        double tb = k >= 0 ? std::pow(tmax, k) : std::pow(tmin, k);
        return std::abs(c) * std::pow(rmax_hint, (double)p / n) * tb * std::pow(wb, j);
    };
    double lead = 0.0;
    if (prune_rel > 0.0)
        for (const auto& [e, l] : s.slices())
            l.for_each([&](int k, cplx c) {
                lead = std::max(lead, bound(e.first, k, e.second, c));
            });
    for (const auto& [e, l] : s.slices()) {
        l.for_each([&](int k, cplx c) {
            if (prune_rel > 0.0 && bound(e.first, k, e.second, c) < prune_rel * lead)
                return;
            p_.push_back(e.first);
            k_.push_back(k);
            j_.push_back(e.second);
            c_.push_back(c);
            pmax_ = std::max(pmax_, e.first);
            kmin_ = std::min(kmin_, k);
            kmax_ = std::max(kmax_, k);
            jmax_ = std::max(jmax_, e.second);
        });
    }
}

cplx series_eval::eval_tables(const point_powers& pp) const {
    cplx s = 0.0;
    for (size_t i = 0; i < c_.size(); ++i) {
        cplx tk = k_[i] >= 0 ? pp.tp[k_[i]] : pp.tm[-k_[i]];
        s += c_[i] * pp.zp[p_[i]] * tk * pp.wp[j_[i]];
    }
    return s;
}

cplx series_eval::operator()(cplx z, cplx w) const {
    if (c_.empty()) return {0.0, 0.0};
    point_powers pp;
    pp.prepare(br_, z, pmax_, kmin_, kmax_);
    pp.prepare_w(w, jmax_);
    return eval_tables(pp);
}

orbit_record iterate_orbit(const std::function<cplx(cplx)>& map, cplx zeta0,
                           const petal_domain& d, const orbit_options& opts,
                           int window_lo, int window_hi) {
    orbit_record rec;
    const double rho = d.rho();
    cplx z = zeta0;
    cplx q0 = d.q(zeta0);
    rec.diag_lo = 1e300;
    rec.diag_hi = 0.0;
    if (opts.track_points) rec.z.push_back(z);
    for (int k = 1; k <= opts.kmax; ++k) {
        z = map(z);
        rec.steps = k;
        if (!std::isfinite(z.real()) || std::abs(z) > 10.0) {
            rec.escaped = true;
            rec.escape_index = k;
            break;
        }
        if (opts.track_points) rec.z.push_back(z);
        cplx qk = d.q(z);
        cplx dk = (double)k * rho * qk;
        rec.diag.push_back(dk);
        if (k >= window_lo && k <= window_hi) {
            rec.diag_lo = std::min(rec.diag_lo, std::abs(dk));
            rec.diag_hi = std::max(rec.diag_hi, std::abs(dk));
        }
        // Lemma-4.13 sandwich: |q_k| vs |q0| / |1 + k rho q0|.
        double mid = std::abs(q0) / std::abs(1.0 + (double)k * rho * q0);
        double ratio = std::abs(qk) / mid;
        rec.sandwich_lo = std::min(rec.sandwich_lo, ratio);
        rec.sandwich_hi = std::max(rec.sandwich_hi, ratio);
        if (ratio < 2.0 / 3.0 || ratio > 2.0) rec.sandwich_ok = false;
        if (opts.check_membership && !d.contains_nothrow(z)) {
            rec.escaped = true;
            rec.escape_index = k;
            break;
        }
        if (std::abs(z) < opts.floor_abs) break;
    }
    return rec;
}

cplx petal_center(const petal_domain& d, const component_info& comp) {
    // Newton on log|z| along the central angle for |q| = delta, then a
    // small angular polish toward arg q = 0.
    double th = 0.5 * (comp.theta_lo + comp.theta_hi);
    double rho = d.rho(), sig = (double)(d.n - 1) / d.n;
    double R = comp.rmax > 0 ? 0.5 * comp.rmax : std::pow(d.delta, 1.0 / rho);
    for (int i = 0; i < 80; ++i) {
        double L = std::abs(std::log(R));
        R = std::pow(d.delta / std::pow(std::max(L, 1e-6), sig), 1.0 / rho);
    }
    cplx best = R * cplx{std::cos(th), std::sin(th)};
    double bestd = std::abs(d.q(best) - d.delta);
    for (int i = -40; i <= 40; ++i) {
        double a = th + 0.4 * (comp.theta_hi - comp.theta_lo) * i / 40.0;
        for (int m = -20; m <= 20; ++m) {
            double rr = R * std::exp(0.15 * m / 20.0);
            cplx cand = rr * cplx{std::cos(a), std::sin(a)};
            double e = std::abs(d.q(cand) - d.delta);
            if (e < bestd) {
                bestd = e;
                best = cand;
            }
        }
    }
    return best;
}

tail_sum_report sum_tail_bound_check(const std::vector<cplx>& orbit, double s,
                                     double q, const petal_domain& d) {
    tail_sum_report rep;
    branch br = d.br();
    double half = 0.0, full = 0.0;
    size_t K = orbit.size();
    for (size_t k = 0; k < K; ++k) {
        cplx lg = br.log(orbit[k]);
        double term = std::pow(std::abs(orbit[k]), s) * std::pow(std::abs(lg), q);
        full += term;
        if (k < K / 2) half += term;
    }
    rep.partial = full;
    rep.growth = half > 0 ? full / half - 1.0 : 0.0;
    rep.converged = rep.growth < 0.01;
    cplx z0 = orbit.empty() ? cplx{1.0, 0.0} : orbit.front();
    double sig = (double)(d.n - 1) / d.n;
    double denom = std::pow(std::abs(z0), s - d.rho()) *
                   std::pow(std::abs(std::log(std::abs(z0))), q - sig);
    rep.c_empirical = denom > 0 ? full / denom : 0.0;
    return rep;
}

}  // namespace petals
