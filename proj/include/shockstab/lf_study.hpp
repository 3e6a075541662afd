#pragma once

#include "shockstab/evans_engine.hpp"

#include <optional>
#include <vector>

namespace shockstab {

// Angle of the glancing point of the inviscid determinant, arctan √(c₊² − u₊²).
double glancing_angle(const ShockEndStates& ends);

// Estimate of |Ď(ř) − Ď(0)| / |Ď(ř)| from consecutive samples, with the s⁻¹ ≤ 2 factor.
double error_ratio(cplx d_j, cplx d_next, double r_j, double r_next);

// Geometric mesh from r_out down to r_in, both included.
std::vector<double> radial_mesh(double r_out, double r_in, int points);

// Outer radius of the angular initialization sweep: 0.1 monatomic, 0.12 diatomic-like (Γ < 1/2).
double default_lf_radius(const GasParams& g);

struct LfOptions {
    int spokes = 101;          // θ_k = kπ/(2(spokes−1)), k = 0..spokes−1
    double r_out = 0.1;
    double r_in = 0.001;
    int radial_points = 61;
    double threshold = 0.05;
    Coordinates coords = Coordinates::PseudoLagrangian;
    EngineOptions engine;
    int workers = 1;
};

struct SpokeResult {
    int k = 0;
    double theta = 0;
    cplx lambda_c, xi_c;      // balanced angle (λ̌, ξ̌)
    std::vector<double> r;    // strictly decreasing
    std::vector<cplx> D;
    double final_ratio = 0;   // ratio at the last pair, the stopping criterion
    double max_ratio = 0;
    double min_abs_D = 0;
    bool converged = false;   // final_ratio ≤ threshold
};

struct GlancingInfo {
    double theta_star = 0;
    int nearest = 0;
    double exponent = 0;  // slope of log|D(θ_k) − D(θ_near)| against log|θ_k − θ_near|
};

struct LfSummary {
    double u_plus = 0;
    double phi = 0;
    std::vector<SpokeResult> spokes;
    double max_final_ratio = 0;
    double max_ratio = 0;
    double min_abs_D = 0;
    // min over spokes of min|D| / (final_ratio·|D(r_in)|): how far the spoke stays from zero
    // in units of the estimated distance to its radial limit
    double margin = 0;
    bool all_converged = false;
    std::optional<GlancingInfo> glancing;
};

// Radial spokes at λ̌ = sin θ·e^{iφ}, ξ̌ = cos θ. φ = π/2 is the imaginary-axis study.
// Bases come from an angular Kato sweep at r_out starting from θ = 0, then are continued radially.
LfSummary rib_roast(const Profile& profile, const LfOptions& opts, double phi = 1.5707963267948966);

// Local exponent near θ* from the radial-limit values, using `each_side` spokes on each side.
std::optional<GlancingInfo> fit_glancing(const std::vector<SpokeResult>& spokes, double theta_star,
                                         int each_side = 5);

struct ExpandedResult {
    std::vector<LfSummary> per_phi;
    double max_final_ratio = 0;
    double min_abs_D = 0;
    bool all_converged = false;
};
// φ values evenly spaced on [0, π/2].
ExpandedResult expanded_study(const Profile& profile, int phi_values, const LfOptions& opts);

}  // namespace shockstab
