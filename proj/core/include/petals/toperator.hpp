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

#ifndef PETALS_TOPERATOR_HPP
#define PETALS_TOPERATOR_HPP

#include <string>
#include <vector>

#include "petals/petal.hpp"

namespace petals {

struct curve_options {
    int nr = 64, nt = 64;          // log-polar grid per component
    double delta0 = 1e-2;          // starting delta; halved adaptively
    int max_halvings = 6;
    int max_sweeps = 60;
    double conv_tol = 1e-10;       // weighted sup-norm change between sweeps
    double contraction_cap = 0.9;
    int kmax = 100000;             // orbit cap inside a T-sum
    double floor_abs = 1e-12;      // orbit floor inside a T-sum
    double rmin_factor = 1.0 / 12; // grid inner radius over outer
    double pad = 0.10;             // angular padding around the component
    unsigned threads = 2;
};

// Sampled curve on a log-polar grid over one petal component.  The
// T-sum defines the curve off-grid as well (resummed through the grid
// data); `interp` is the cheap stand-in used along orbits.
class curve_approx {
  public:
    petal_domain dom;
    component_info comp;
    double J = 0.0;
    int nr = 0, nt = 0;
    int ref_row = 0;  // row anchoring the below-grid closure model
    double lr0 = 0, dlr = 0, th0 = 0, dth = 0;
    std::vector<cplx> w;
    std::vector<uint8_t> member;

    // diagnostics
    double residual_max = 0.0;       // invariance defect on member nodes
    double contraction = 0.0;        // last measured sweep ratio
    double bound_profile_max = 0.0;  // max |w| / (|z|^2 |log|z||^{|J|})
    double deriv_profile_max = 0.0;  // max |w'| / (|z| |log|z||^{|J|})
    double tail_bound = 0.0;         // truncated-tail error bar on the values
    int sweeps = 0;
    int escape_count = 0;

    cplx node(int i, int j) const {
        double lr = lr0 + dlr * i, th = th0 + dth * j;
        return std::exp(lr) * cplx{std::cos(th), std::sin(th)};
    }
    double rmin() const { return std::exp(lr0); }
    double rmax() const { return std::exp(lr0 + dlr * (nr - 1)); }
    bool in_box(cplx z, double slack = 0.0) const;
    cplx interp(cplx z) const;      // bicubic in (log r, theta)
    cplx interp_lr(double lr, double th) const;
    cplx weight(cplx z) const;      // z^2 (log z)^J with the fixed branch
    cplx below_grid(cplx z) const;  // inner-edge extrapolated model
    double weighted_norm() const;   // sup |w| / |weight| over member nodes
};

struct parabolic_solution {
    double delta = 0.0;
    int halvings = 0;
    component_count comps;
    std::vector<curve_approx> curves;
    bool attraction_ok = false;   // on-curve 2D orbits contract to O
    double separation = 0.0;      // min pairwise sample distance between curves
};

// One application of the truncated operator T to the grid data.
curve_approx apply_T(const curve_approx& win, const normalized_germ& ng,
                     const curve_options& opts = {});

// Evaluates (T w)(zeta) at one point through the grid data (the orbit
// reads w by interpolation and closes below the grid).
cplx t_eval(const curve_approx& w, const normalized_germ& ng, cplx zeta,
            const curve_options& opts = {});

// Fixed point of T on every origin-touching component.  delta starts at
// delta0 and is halved until orbits stay in their components and T
// contracts below the cap.
parabolic_solution solve_parabolic_curve(const normalized_germ& ng,
                                         const curve_options& opts = {});

struct pushed_sample {
    cplx zeta;        // normalized-coordinates parameter
    cplx x, y;        // original coordinates
    double residual;  // invariance defect under the original germ
};

struct pushforward_report {
    std::vector<pushed_sample> samples;
    double residual_max = 0.0;          // original-coordinates invariance
    double normalized_residual_max = 0.0;
    bool orbits_converge = false;       // original-germ orbits tend to O
    int orbit_seeds = 0;
    double slope_drift = 0.0;           // tangency diagnostic: [phi] vs target
};

// Maps curve samples back through the shift, shear, scaling and recorded
// blow-downs; verifies invariance under the original germ and that
// original-germ orbits started on the curve converge to the origin.
pushforward_report push_forward_curve(const curve_approx& c, const normalized_germ& ng,
                                      const chart& history, const germ2& f_original,
                                      int seeds = 50, const curve_options& opts = {});

struct estimate_report {
    double c15 = 0, c15_refined = 0;       // Lemma-4.15 envelope constant
    double c16 = 0, c16_refined = 0;       // |d(Tw)/dz| / (|z| |log|z||^{|J|})
    double K17 = 0, K17_half = 0;          // orbit-difference constant
    bool shapes_ok = false;                // constants finite and stable
};

// Finite-difference checks of the derivative and orbit-difference
// estimates behind the contraction proof.
estimate_report validate_estimates(const curve_approx& c, const normalized_germ& ng,
                                   const curve_options& opts = {});

void write_curve_csv(const curve_approx& c, const std::string& path);
void write_orbit_csv(const orbit_record& rec, const petal_domain& d,
                     const std::string& path);

}  // namespace petals

#endif
