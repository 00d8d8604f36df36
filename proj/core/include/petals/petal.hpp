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

#ifndef PETALS_PETAL_HPP
#define PETALS_PETAL_HPP

#include <functional>
#include <vector>

#include "petals/normalizer.hpp"

namespace petals {

// D_{r+(n-1)/n, delta} with a fixed branch.  Membership is evaluated in
// the cancellation-free form Re q > 0 and |q|^2 < 2 delta Re q, which
// stays decidable when |q| underflows the naive |q - delta| < delta.
struct petal_domain {
    int r = 1, n = 2;
    double delta = 1e-2;
    double theta0 = 0.0;
    int component_id = -1;

    branch br() const { return branch{n, theta0}; }
    double rho() const { return r + (double)(n - 1) / n; }
    cplx q(cplx z) const { return br().petal_q(z, r); }

    bool contains(cplx z) const {
        if (z == cplx{0.0, 0.0}) return false;
        if (br().on_cut(z))
            throw error("petal membership queried on the branch cut");
        return contains_nothrow(z);
    }
    bool contains_nothrow(cplx z) const {
        cplx v = q(z);
        return v.real() > 0.0 && std::norm(v) < 2.0 * delta * v.real();
    }
};

struct raster_spec {
    int nr = 512, nt = 512;
    double rmin_scale = 1e-6;  // inner radius relative to the outer bound
};

struct component_info {
    double theta_lo = 0, theta_hi = 0;  // angular hull near the origin
    double rmax = 0;                    // largest member radius seen
    bool touches_origin = false;
};

struct component_count {
    int touching_origin = 0;
    int total = 0;
    double outer_radius = 0;            // raster outer bound used
    std::vector<component_info> components;  // origin-touching ones first
};

// Flood-fill count of the connected components of the membership raster
// (log-polar, no wrap across the cut); components touching the inner
// ring are the ones with the origin on the boundary.
component_count count_components(const petal_domain& d, const raster_spec& rs);

// Writes "zeta_re,zeta_im,component_id" rows for the raster.
void write_membership_csv(const petal_domain& d, const raster_spec& rs,
                          const std::string& path);

// Shared per-point power tables for evaluating several series at the
// same z (one set of transcendentals per step).
struct point_powers {
    cplx z, zr, t;                 // z^{1/n}, (log z)^{1/n}
    double lr = 0, th = 0;         // log|z|, branch-window arg
    std::vector<cplx> zp, tp, tm, wp;

    void prepare(const branch& br, cplx z, int pmax, int kmin, int kmax);
    void prepare_w(cplx w, int jmax);
};

// Flattened numeric evaluator for an rlseries.  With a positive
// `prune_rel`, terms whose worst-case magnitude over |z| <= rmax_hint,
// |w| <= wbound_hint falls below prune_rel times the dominant term's are
// dropped (safe for all smaller radii: higher z-powers only lose ground
// as z -> 0).
class series_eval {
  public:
    series_eval() = default;
    series_eval(const rlseries& s, branch br, double prune_rel = 0.0,
                double rmax_hint = 0.2, double wbound_hint = 0.0);

    cplx operator()(cplx z, cplx w) const;
    cplx operator()(cplx z) const { return (*this)(z, {0.0, 0.0}); }
    cplx eval_tables(const point_powers& pp) const;  // prepare_w done by caller
    int term_count() const { return (int)c_.size(); }
    int pmax() const { return pmax_; }
    int kmin() const { return kmin_; }
    int kmax() const { return kmax_; }
    int jmax() const { return jmax_; }

  private:
    branch br_;
    int pmax_ = 0, kmin_ = 0, kmax_ = 0, jmax_ = 0;
    std::vector<int> p_, k_, j_;
    std::vector<cplx> c_;
};

struct orbit_options {
    int kmax = 10000;
    double floor_abs = 1e-12;
    bool track_points = true;
    int check_membership = 1;  // 0: skip, 1: same-component box test
};

struct orbit_record {
    std::vector<cplx> z;       // zeta_0 .. (when tracked)
    std::vector<cplx> diag;    // k * rho * q(zeta_k)
    double diag_lo = 0, diag_hi = 0;    // |diag| range over the tail window
    double sandwich_lo = 1e300, sandwich_hi = 0;  // vs the Lemma-4.13 middle
    bool sandwich_ok = true;            // within [2/3, 2] at every step
    bool escaped = false;
    int escape_index = -1;
    int steps = 0;
};

// Iterates zeta -> map(zeta) from zeta0, recording the asymptotic
// diagnostic and the sandwich ratios relative to the domain data.
orbit_record iterate_orbit(const std::function<cplx(cplx)>& map, cplx zeta0,
                           const petal_domain& d, const orbit_options& opts,
                           int window_lo = 5000, int window_hi = 10000);

// Point on the central ray of a component with q(zeta) ~ delta.
cplx petal_center(const petal_domain& d, const component_info& comp);

struct tail_sum_report {
    double partial = 0;        // S_K
    double c_empirical = 0;    // S_K / (|z|^{s-rho} |log|z||^{q-sigma})
    double growth = 0;         // S_K / S_{K/2} - 1
    bool converged = false;    // growth below 1%
};

// Partial sums of |zeta_k|^s |log zeta_k|^q along an orbit, with the
// implied constant of the comparison bound.
tail_sum_report sum_tail_bound_check(const std::vector<cplx>& orbit, double s,
                                     double q, const petal_domain& d);

}  // namespace petals

#endif
