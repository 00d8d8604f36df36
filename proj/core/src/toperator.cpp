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

#include "petals/toperator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <thread>

namespace petals {

bool curve_approx::in_box(cplx z, double slack) const {
    double lr = std::log(std::abs(z));
    double th = std::arg(z);
    // Keep theta in the branch window around the box.
    while (th < th0 - M_PI) th += 2.0 * M_PI;
    while (th > th0 + M_PI) th -= 2.0 * M_PI;
    return lr >= lr0 - slack && lr <= lr0 + dlr * (nr - 1) + slack &&
           th >= th0 - slack && th <= th0 + dth * (nt - 1) + slack;
}

static double lagrange4(double x, int base, double* wts) {
    // Weights for 4-point Lagrange interpolation at offsets base..base+3,
    // evaluated at x (grid units).
    double tot = 0;
    for (int m = 0; m < 4; ++m) {
        double w = 1.0;
        for (int l = 0; l < 4; ++l)
            if (l != m) w *= (x - (base + l)) / ((double)(base + m) - (base + l));
        wts[m] = w;
        tot += w;
    }
    return tot;
}

cplx curve_approx::interp(cplx z) const {
    double lr = std::log(std::abs(z));
    double th = std::arg(z);
    return interp_lr(lr, th);
}

cplx curve_approx::interp_lr(double lr, double th) const {
    while (th < th0 - M_PI) th += 2.0 * M_PI;
    while (th > th0 + M_PI) th -= 2.0 * M_PI;
    double x = (lr - lr0) / dlr;
    double y = (th - th0) / dth;
    int bi = std::clamp((int)std::floor(x) - 1, 0, nr - 4);
    int bj = std::clamp((int)std::floor(y) - 1, 0, nt - 4);
    double wx[4], wy[4];
    lagrange4(x, bi, wx);
    lagrange4(y, bj, wy);
    cplx s = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            s += wx[a] * wy[b] * w[(size_t)(bi + a) * nt + (bj + b)];
    return s;
}

cplx curve_approx::weight(cplx z) const {
    branch br = dom.br();
    cplx lg = br.log(z);
    // (log z)^J with the continuous-argument branch used for t.
    double m = std::abs(lg);
    double a = std::atan2(lg.imag(), lg.real());
    if (lg.imag() < 0) a += 2.0 * M_PI;
    cplx lgJ = std::exp(J * cplx{std::log(m), a});
    return z * z * lgJ;
}

cplx curve_approx::below_grid(cplx z) const {
    // Continue h(theta) = w/weight along rays from the reference row.
    // Anchoring away from the inner edge keeps the closure's feedback
    // through the sweep strongly contracting ((rmin/r_ref)^{1+1/n}).
    double th = std::arg(z);
    while (th < th0 - M_PI) th += 2.0 * M_PI;
    while (th > th0 + M_PI) th -= 2.0 * M_PI;
    double y = std::clamp((th - th0) / dth, 0.0, (double)(nt - 1));
    int bj = std::clamp((int)std::floor(y) - 1, 0, nt - 4);
    double wy[4];
    lagrange4(y, bj, wy);
    cplx h = 0.0;
    for (int b = 0; b < 4; ++b) {
        cplx node_z = node(ref_row, bj + b);
        cplx hw = w[(size_t)ref_row * nt + (bj + b)] / weight(node_z);
        h += wy[b] * hw;
    }
    return weight(z) * h;
}

double curve_approx::weighted_norm() const {
    double m = 0.0;
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nt; ++j) {
            if (!member[(size_t)i * nt + j]) continue;
            cplx z = node(i, j);
            m = std::max(m, std::abs(w[(size_t)i * nt + j] / weight(z)));
        }
    return m;
}

namespace {

struct kernel {
    series_eval f1, f2, H;
    branch br;
    int n;
    int pmax = 0, kmin = 0, kmax = 0, jmax = 0;

    kernel(const normalized_germ& ng, double rmax_hint = 0.2,
           const branch* br_override = nullptr)
        : br(br_override ? *br_override : ng.br), n(ng.n) {
        double L = std::abs(std::log(std::max(1e-12, rmax_hint)));
        double wb = rmax_hint * rmax_hint * std::pow(L, std::abs(ng.J));
        f1 = series_eval(ng.num_shifted1, br, 1e-13, rmax_hint, wb);
        f2 = series_eval(ng.num_shifted2, br, 1e-13, rmax_hint, wb);
        H = series_eval(ng.num_Hker, br, 1e-13, rmax_hint, wb);
        pmax = std::max({f1.pmax(), f2.pmax(), H.pmax()});
        kmin = std::min({f1.kmin(), f2.kmin(), H.kmin()});
        kmax = std::max({f1.kmax(), f2.kmax(), H.kmax()});
        jmax = std::max({f1.jmax(), f2.jmax(), H.jmax()});
    }
    void prep(point_powers& pp, cplx z) const { pp.prepare(br, z, pmax, kmin, kmax); }
};

// One truncated T-sum from `zeta0`, reading w by interpolation and
// closing below the grid with the extrapolated curve model (the tail of
// the sum telescopes to w(eta)/eta^{1/n} at the exit point).
struct tsum_result {
    cplx value{0.0, 0.0};
    bool escaped = false;
    bool left_component = false;
    int steps = 0;
};

tsum_result t_sum(const kernel& ker, const curve_approx& grid, cplx zeta0,
                  const curve_options& opts) {
    tsum_result out;
    cplx SH = 0.0;
    cplx z = zeta0;
    const double rmin = grid.rmin();
    const bool started_member = grid.dom.contains_nothrow(zeta0);
    point_powers pp;
    for (int k = 0; k < opts.kmax; ++k) {
        out.steps = k;
        double az = std::abs(z);
        if (az < rmin || az < opts.floor_abs) {
            SH += grid.below_grid(z) / ker.br.root_z(z);
            break;
        }
        if (!grid.in_box(z, 0.05)) {
            out.escaped = true;
            break;
        }
        if (started_member && !grid.dom.contains_nothrow(z)) out.left_component = true;
        ker.prep(pp, z);
        cplx wv = grid.interp_lr(pp.lr, pp.th);
        pp.prepare_w(wv, ker.jmax);
        SH += ker.H.eval_tables(pp) / pp.zr;
        z = ker.f1.eval_tables(pp);
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            out.escaped = true;
            break;
        }
    }
    out.value = ker.br.root_z(zeta0) * SH;
    return out;
}

void make_grid(curve_approx& g, const petal_domain& dom, const component_info& comp,
               double J, const curve_options& opts) {
    g.dom = dom;
    g.comp = comp;
    g.J = J;
    g.nr = opts.nr;
    g.nt = opts.nt;
    double rmax = comp.rmax * 1.02;
    double rmin = rmax * opts.rmin_factor;
    g.lr0 = std::log(rmin);
    g.dlr = (std::log(rmax) - std::log(rmin)) / (g.nr - 1);
    double tlo = comp.theta_lo - opts.pad, thi = comp.theta_hi + opts.pad;
    // Stay strictly inside the branch window.
    tlo = std::max(tlo, dom.theta0 - M_PI + 1e-6);
    thi = std::min(thi, dom.theta0 + M_PI - 1e-6);
    g.th0 = tlo;
    g.dth = (thi - tlo) / (g.nt - 1);
    g.ref_row = g.nr / 2;
    g.w.assign((size_t)g.nr * g.nt, cplx{0.0, 0.0});
    g.member.assign((size_t)g.nr * g.nt, 0);
    for (int i = 0; i < g.nr; ++i)
        for (int j = 0; j < g.nt; ++j)
            g.member[(size_t)i * g.nt + j] =
                dom.contains_nothrow(g.node(i, j)) ? 1 : 0;
}

struct sweep_stats {
    double change = 0.0;      // weighted sup of the update
    int escapes = 0;
    int component_exits = 0;
};

sweep_stats run_sweep(const kernel& ker, const curve_approx& cur, curve_approx& next,
                      const curve_options& opts) {
    sweep_stats st;
    next = cur;
    const int nr = cur.nr, nt = cur.nt;
    std::vector<double> changes((size_t)nr * nt, 0.0);
    std::vector<int> escapes(opts.threads, 0), exits(opts.threads, 0);

    auto work = [&](unsigned tid) {
        for (int i = tid; i < nr; i += opts.threads) {
            for (int j = 0; j < nt; ++j) {
                size_t idx = (size_t)i * nt + j;
                cplx z = cur.node(i, j);
                tsum_result ts = t_sum(ker, cur, z, opts);
                if (ts.escaped) {
                    ++escapes[tid];
                    next.w[idx] = cur.w[idx];
                    continue;
                }
                if (ts.left_component) ++exits[tid];
                next.w[idx] = ts.value;
                changes[idx] = std::abs((ts.value - cur.w[idx]) / cur.weight(z));
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < opts.threads; ++t) pool.emplace_back(work, t);
    work(0);
    for (auto& th : pool) th.join();

    for (double c : changes) st.change = std::max(st.change, c);
    for (unsigned t = 0; t < opts.threads; ++t) {
        st.escapes += escapes[t];
        st.component_exits += exits[t];
    }
    return st;
}

double residual_pass(const kernel& ker, const curve_approx& g, const curve_options& opts) {
    double worst = 0.0;
    for (int i = 0; i < g.nr; ++i)
        for (int j = 0; j < g.nt; ++j) {
            size_t idx = (size_t)i * g.nt + j;
            if (!g.member[idx]) continue;
            cplx z = g.node(i, j);
            cplx wv = g.w[idx];
            cplx z1 = ker.f1(z, wv);
            cplx rhs = ker.f2(z, wv);
            tsum_result ts = t_sum(ker, g, z1, opts);
            if (ts.escaped) continue;
            worst = std::max(worst, std::abs(rhs - ts.value));
        }
    return worst;
}

void profile_pass(curve_approx& g) {
    double vb = 0.0, db = 0.0;
    for (int i = 0; i < g.nr; ++i)
        for (int j = 0; j < g.nt; ++j) {
            size_t idx = (size_t)i * g.nt + j;
            if (!g.member[idx]) continue;
            cplx z = g.node(i, j);
            double denom = std::norm(z) *
                           std::pow(std::abs(std::log(std::abs(z))), std::abs(g.J));
            vb = std::max(vb, std::abs(g.w[idx]) / denom);
            // radial finite difference for |w'|
            if (i + 1 < g.nr && g.member[idx + g.nt]) {
                cplx z2 = g.node(i + 1, j);
                double dwdz = std::abs(g.w[idx + g.nt] - g.w[idx]) / std::abs(z2 - z);
                double dden = std::abs(z) *
                              std::pow(std::abs(std::log(std::abs(z))), std::abs(g.J));
                db = std::max(db, dwdz / dden);
            }
        }
    g.bound_profile_max = vb;
    g.deriv_profile_max = db;
}

// Analytic error bar for the truncated tail: the deep part of the sum
// equals w(eta)/eta^{1/n} at the exit point; the model error there is
// bounded by the inner-row weighted norm times the exit weight.
double tail_error_bar(const curve_approx& g) {
    double rmin = g.rmin(), rmax = g.rmax();
    double wnorm = g.weighted_norm();
    double inner = rmin * rmin *
                   std::pow(std::abs(std::log(rmin)), std::abs(g.J)) * wnorm;
    return std::sqrt(rmax / rmin) * inner;  // (zeta0/eta)^{1/n} <= sqrt ratio, n>=2
}

}  // namespace

curve_approx apply_T(const curve_approx& win, const normalized_germ& ng,
                     const curve_options& opts) {
    branch wbr = win.dom.br();
    kernel ker(ng, win.nr > 0 ? win.rmax() : 0.2, win.nr > 0 ? &wbr : nullptr);
    curve_approx out;
    sweep_stats st = run_sweep(ker, win, out, opts);
    out.escape_count = st.escapes;
    profile_pass(out);
    return out;
}

cplx t_eval(const curve_approx& w, const normalized_germ& ng, cplx zeta,
            const curve_options& opts) {
    branch wbr = w.dom.br();
    kernel ker(ng, w.nr > 0 ? w.rmax() : 0.2, w.nr > 0 ? &wbr : nullptr);
    return t_sum(ker, w, zeta, opts).value;
}

parabolic_solution solve_parabolic_curve(const normalized_germ& ng,
                                         const curve_options& opts) {

    parabolic_solution sol;
    double delta = opts.delta0;
    for (int halving = 0; halving <= opts.max_halvings; ++halving, delta *= 0.5) {
        sol.delta = delta;
        sol.halvings = halving;
        sol.curves.clear();
        petal_domain dom{ng.r, ng.n, delta, ng.br.theta0, -1};
        raster_spec rs;
        rs.nr = 384;
        rs.nt = 768;
        sol.comps = count_components(dom, rs);
        if (sol.comps.touching_origin < 1) continue;

        bool all_ok = true;
        for (int c = 0; c < (int)sol.comps.components.size(); ++c) {
            // Each petal gets its own branch, centered so the cut lies
            // on the far side (orbits in a cut-hugging petal would
            // otherwise cross the cut while converging to its axis).
            const component_info& base_ci = sol.comps.components[c];
            double theta_c = 0.5 * (base_ci.theta_lo + base_ci.theta_hi);
            petal_domain cd = dom;
            cd.theta0 = theta_c;
            cd.component_id = c;
            component_count local = count_components(cd, rs);
            component_info ci = base_ci;
            for (const auto& cand : local.components) {
                double lo = cand.theta_lo, hi = cand.theta_hi;
                if (theta_c >= lo - 1e-9 && theta_c <= hi + 1e-9) ci = cand;
            }
            branch cb = cd.br();
            kernel kdelta(ng, sol.comps.outer_radius, &cb);
            curve_approx g;
            make_grid(g, cd, ci, ng.J, opts);

            bool ok = false;
            double contraction = 1.0, prev_change = 0.0;
            for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
                curve_approx next;
                sweep_stats st = run_sweep(kdelta, g, next, opts);
                g.w.swap(next.w);
                g.sweeps = sweep + 1;
                g.escape_count = st.escapes;
                if (st.component_exits > 0) break;  // delta too large
                if (sweep > 0 && prev_change > 0.0)
                    contraction = std::max(0.0, st.change / prev_change);
                prev_change = st.change;
                if (sweep > 1 && contraction > opts.contraction_cap) break;
                if (st.change < opts.conv_tol && sweep >= 2) {
                    ok = true;
                    break;
                }
            }
            if (!ok || contraction > opts.contraction_cap) {
                all_ok = false;
                break;
            }
            g.contraction = contraction;
            g.residual_max = residual_pass(kdelta, g, opts);
            profile_pass(g);
            g.tail_bound = tail_error_bar(g);
            sol.curves.push_back(std::move(g));
        }
        if (!all_ok || sol.curves.empty()) continue;

        // Attraction: 2D orbits started on each curve converge to O.
        bool attract = true;
        for (const auto& g : sol.curves) {
            branch gb = g.dom.br();
            kernel kg(ng, g.rmax(), &gb);
            cplx z = petal_center(g.dom, g.comp);
            cplx wv = t_sum(kg, g, z, opts).value;
            double start = std::abs(z);
            for (int k = 0; k < 4000; ++k) {
                cplx z1 = kg.f1(z, wv);
                cplx w1 = kg.f2(z, wv);
                z = z1;
                wv = w1;
                if (!std::isfinite(z.real()) || std::abs(z) > 5.0 * start) {
                    attract = false;
                    break;
                }
            }
            if (std::abs(z) > 0.5 * start) attract = false;
        }
        sol.attraction_ok = attract;

        // Pairwise sample separation (distinct as sets).
        sol.separation = 1e300;
        for (size_t a = 0; a + 1 < sol.curves.size(); ++a)
            for (size_t b = a + 1; b < sol.curves.size(); ++b) {
                const auto& ga = sol.curves[a];
                const auto& gb = sol.curves[b];
                for (int i = 0; i < ga.nr; i += 8)
                    for (int j = 0; j < ga.nt; j += 8) {
                        if (!ga.member[(size_t)i * ga.nt + j]) continue;
                        cplx pa = ga.node(i, j);
                        cplx wa = ga.w[(size_t)i * ga.nt + j];
                        for (int i2 = 0; i2 < gb.nr; i2 += 8)
                            for (int j2 = 0; j2 < gb.nt; j2 += 8) {
                                if (!gb.member[(size_t)i2 * gb.nt + j2]) continue;
                                cplx pb = gb.node(i2, j2);
                                cplx wb = gb.w[(size_t)i2 * gb.nt + j2];
                                double dist = std::abs(pa - pb) + std::abs(wa - wb);
                                sol.separation = std::min(sol.separation, dist);
                            }
                    }
            }
        if (sol.curves.size() < 2) sol.separation = 0.0;
        return sol;
    }
    throw convergence_error(
        "solve_parabolic_curve: no delta in the halving budget produced a contracting T");
}

static std::pair<cplx, cplx> pull_back_through(const chart& history, cplx x, cplx y) {
    // Inverse of the recorded projections, applied from the outermost
    // chart inward.
    cplx u = x, t = y;
    for (const auto& rec : history.history) {
        switch (rec.kind) {
            case chart_kind::u1: {
                cplx c = rec.center.to_cplx();
                t = t / u - c;
                break;
            }
            case chart_kind::u2: {
                cplx c = rec.center.to_cplx();
                cplx z = u;
                u = t;
                t = z / t - c;
                break;
            }
            case chart_kind::chain: u = u / t; break;
        }
    }
    return {u, t};
}

pushforward_report push_forward_curve(const curve_approx& c, const normalized_germ& ng,
                                      const chart& history, const germ2& f_original,
                                      int seeds, const curve_options& opts) {
    pushforward_report rep;
    branch br = c.dom.br();
    kernel ker(ng, c.rmax(), &br);
    series_eval wshift(ng.num_w, br);
    const cplx a = ng.a, alpha = ng.alpha;

    auto to_original = [&](cplx zeta, cplx wv) {
        cplx v = wv + wshift(zeta);                    // undo W = w - w_shift
        cplx W = v + a * br.root_z(zeta) * br.tval(zeta);  // undo the shear
        cplx z_form = zeta / alpha;                    // undo Z = alpha z
        auto [x, y] = history.push_forward(z_form, W);
        return std::pair<cplx, cplx>{x, y};
    };
    auto to_normalized = [&](cplx x, cplx y) {
        auto [z_form, W] = pull_back_through(history, x, y);
        cplx zeta = alpha * z_form;
        cplx v = W - a * br.root_z(zeta) * br.tval(zeta);
        cplx wv = v - wshift(zeta);
        return std::pair<cplx, cplx>{zeta, wv};
    };

    // Samples: member nodes in the inner half of the grid (where the
    // truncated normal form represents the original germ to well below
    // the target tolerance).
    double rcap = 0.5 * c.rmax();
    double worst = 0.0, worst_norm = 0.0;
    for (int i = 0; i < c.nr; i += 2)
        for (int j = 0; j < c.nt; j += 2) {
            size_t idx = (size_t)i * c.nt + j;
            if (!c.member[idx]) continue;
            cplx zeta = c.node(i, j);
            if (std::abs(zeta) > rcap) continue;
            cplx wv = c.w[idx];

            // Normalized-coordinates residual (for the per-stage report).
            cplx z1 = ker.f1(zeta, wv);
            cplx rhs = ker.f2(zeta, wv);
            tsum_result ts = t_sum(ker, c, z1, opts);
            if (!ts.escaped)
                worst_norm = std::max(worst_norm, std::abs(rhs - ts.value));

            auto [x, y] = to_original(zeta, wv);
            cplx fx = f_original.f1.eval(x, y);
            cplx fy = f_original.f2.eval(x, y);
            auto [zeta1, w1] = to_normalized(fx, fy);
            tsum_result curve_at = t_sum(ker, c, zeta1, opts);
            double res = curve_at.escaped ? 0.0 : std::abs(w1 - curve_at.value);
            if (!curve_at.escaped) worst = std::max(worst, res);
            rep.samples.push_back({zeta, x, y, res});
        }
    rep.residual_max = worst;
    rep.normalized_residual_max = worst_norm;

    // Orbit attraction under the original germ, seeded on the curve.
    int converged = 0, used = 0;
    double slope_drift = 0.0;
    for (int s = 0; s < seeds && used < seeds; ++s) {
        // Spread seeds over the inner region.
        int i = 2 + (s * 7) % std::max(1, c.nr / 2);
        int j = (s * 13) % c.nt;
        size_t idx = (size_t)i * c.nt + j;
        if (!c.member[idx]) continue;
        ++used;
        cplx zeta = c.node(i, j);
        auto [x, y] = to_original(zeta, c.w[idx]);
        double start = std::abs(x) + std::abs(y);
        bool ok = true;
        cplx cx = x, cy = y;
        double prev_norm = start;
        bool tail_decreasing = true;
        for (int k = 0; k < 30000; ++k) {
            cplx nx = f_original.f1.eval(cx, cy);
            cplx ny = f_original.f2.eval(cx, cy);
            cx = nx;
            cy = ny;
            double norm = std::abs(cx) + std::abs(cy);
            if (!std::isfinite(norm) || norm > 3.0 * start) {
                ok = false;
                break;
            }
            if (k > 20000 && norm > prev_norm * (1.0 + 1e-9)) tail_decreasing = false;
            prev_norm = norm;
        }
        double final_norm = std::abs(cx) + std::abs(cy);
        if (!(final_norm < 0.15 * start) || !tail_decreasing) ok = false;
        if (ok) ++converged;
        // Tangency diagnostic at the deep end of the orbit.
        if (std::abs(cx) > 0) slope_drift = std::max(slope_drift, std::abs(cy / cx));
    }
    rep.orbit_seeds = used;
    rep.orbits_converge = used > 0 && converged == used;
    rep.slope_drift = slope_drift;
    return rep;
}

estimate_report validate_estimates(const curve_approx& c, const normalized_germ& ng,
                                   const curve_options& opts) {
    estimate_report rep;
    branch br = c.dom.br();
    kernel ker(ng, c.rmax(), &br);
    const double rho = c.dom.rho();
    const double sig = (double)(ng.n - 1) / ng.n;
    const double absJ = std::abs(c.J);

    auto orbit_from = [&](cplx z0, int kcap, const curve_approx& grid) {
        std::vector<cplx> orb{z0};
        cplx z = z0;
        for (int k = 0; k < kcap && std::abs(z) > grid.rmin(); ++k) {
            z = ker.f1(z, grid.interp(z));
            orb.push_back(z);
        }
        return orb;
    };

    // Lemma-4.15 envelope via central differences of the orbit map.
    auto c15_for = [&](double hfac) {
        double cmax = 0.0;
        for (int s = 0; s < 8; ++s) {
            int i = c.nr / 2 + (s % 3), j = (s * 11) % c.nt;
            if (!c.member[(size_t)i * c.nt + j]) continue;
            cplx z0 = c.node(i, j);
            double h = hfac * std::abs(z0);
            auto op = orbit_from(z0 + h, 1500, c);
            auto om = orbit_from(z0 - h, 1500, c);
            auto o0 = orbit_from(z0, 1500, c);
            size_t K = std::min({op.size(), om.size(), o0.size()});
            for (size_t k = 1; k < K; ++k) {
                double dz = std::abs(op[k] - om[k]) / (2.0 * h);
                double envelope =
                    std::pow(std::abs(o0[k] / z0), rho + 1.0) *
                    std::pow(std::abs(br.log(o0[k]) / br.log(z0)), sig);
                if (envelope > 0) cmax = std::max(cmax, dz / envelope);
            }
        }
        return cmax;
    };
    rep.c15 = c15_for(1e-7);
    rep.c15_refined = c15_for(5e-8);

    // Lemma-4.16: derivative of Tw by central differences of the T-sum.
    auto c16_for = [&](double hfac) {
        double cmax = 0.0;
        for (int s = 0; s < 10; ++s) {
            int i = 4 + (s * 5) % (c.nr - 8), j = (s * 17) % c.nt;
            if (!c.member[(size_t)i * c.nt + j]) continue;
            cplx z0 = c.node(i, j);
            double h = hfac * std::abs(z0);
            cplx tp = t_sum(ker, c, z0 + h, opts).value;
            cplx tm = t_sum(ker, c, z0 - h, opts).value;
            double d = std::abs(tp - tm) / (2.0 * h);
            double bound = std::abs(z0) *
                           std::pow(std::abs(std::log(std::abs(z0))), absJ);
            cmax = std::max(cmax, d / bound);
        }
        return cmax;
    };
    rep.c16 = c16_for(1e-6);
    rep.c16_refined = c16_for(5e-7);

    // Lemma-4.17: orbit difference under a w-perturbation of norm eps.
    auto k17_for = [&](double eps) {
        curve_approx pert = c;
        for (int i = 0; i < c.nr; ++i)
            for (int j = 0; j < c.nt; ++j) {
                size_t idx = (size_t)i * c.nt + j;
                pert.w[idx] += eps * pert.weight(pert.node(i, j));
            }
        double kmax = 0.0;
        for (int s = 0; s < 6; ++s) {
            int i = c.nr / 2, j = (s * 19) % c.nt;
            if (!c.member[(size_t)i * c.nt + j]) continue;
            cplx z0 = c.node(i, j);
            auto oa = orbit_from(z0, 3000, c);
            auto ob = orbit_from(z0, 3000, pert);
            size_t K = std::min(oa.size(), ob.size());
            double shape = std::pow(std::abs(z0), 3.0 - 1.0 / ng.n) *
                           std::pow(std::abs(std::log(std::abs(z0))), absJ - 1.0 / ng.n);
            for (size_t k = 1; k < K; ++k)
                kmax = std::max(kmax, std::abs(ob[k] - oa[k]) / (shape * eps));
        }
        return kmax;
    };
    rep.K17 = k17_for(1e-4);
    rep.K17_half = k17_for(5e-5);

    auto stable = [](double a, double b) {
        return std::isfinite(a) && std::isfinite(b) && a > 0 && b > 0 &&
               a / b < 2.5 && b / a < 2.5;
    };
    rep.shapes_ok = stable(rep.c15, rep.c15_refined) &&
                    stable(rep.c16, rep.c16_refined) && stable(rep.K17, rep.K17_half);
    return rep;
}

void write_curve_csv(const curve_approx& c, const std::string& path) {
    FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw error("cannot open " + path);
    std::fprintf(f, "zeta_re,zeta_im,w_re,w_im,residual\n");
    for (int i = 0; i < c.nr; ++i)
        for (int j = 0; j < c.nt; ++j) {
            size_t idx = (size_t)i * c.nt + j;
            if (!c.member[idx]) continue;
            cplx z = c.node(i, j);
            std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.3g\n", z.real(), z.imag(),
                         c.w[idx].real(), c.w[idx].imag(), c.residual_max);
        }
    std::fclose(f);
}

void write_orbit_csv(const orbit_record& rec, const petal_domain& d,
                     const std::string& path) {
    (void)d;
    FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw error("cannot open " + path);
    std::fprintf(f, "k,zeta_re,zeta_im,diag_re,diag_im\n");
    for (size_t k = 0; k < rec.z.size(); ++k) {
        cplx dg = k > 0 && k - 1 < rec.diag.size() ? rec.diag[k - 1] : cplx{0.0, 0.0};
        std::fprintf(f, "%zu,%.17g,%.17g,%.17g,%.17g\n", k, rec.z[k].real(),
                     rec.z[k].imag(), dg.real(), dg.imag());
    }
    std::fclose(f);
}

}  // namespace petals
