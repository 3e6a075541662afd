#pragma once

#include "shockstab/profile.hpp"
#include "shockstab/numerics.hpp"

#include <limits>
#include <optional>
#include <vector>

namespace shockstab {

// Parabolic coordinates restricted to λ̆ = iτ̆, τ̆ = 1 − ξ̆².
struct ParabolicPoint {
    double xi_breve = 0;
    double r_breve = 1;

    double tau() const { return 1.0 - xi_breve * xi_breve; }
    cplx lambda_breve() const { return {0.0, tau()}; }
    // Frequencies of the original problem: λ = i r̆ τ̆, ξ = r̆^{1/2} ξ̆.
    cplx lambda() const { return r_breve * lambda_breve(); }
    double xi() const { return std::sqrt(r_breve) * xi_breve; }
};

// The 6×6 block β(ξ̆, λ̆) at density ρ̂, and the column q at pressure p̂.
CMat beta_matrix(const GasParams& g, double rho, double xi_breve, cplx lambda_breve);
CVec q_vector(const GasParams& g, double p, double xi_breve);

// C = r̆^{1/2}C_{1/2} + C₀ + r̆^{−1/2}C_{−1/2} after the S and T transformations.
CMat c_half(const GasParams& g, const ProfilePoint& p, const ParabolicPoint& pt);
CMat c_zero(const GasParams& g, const ProfilePoint& p, double xi_breve);
CMat c_minus_half(const GasParams& g, const ProfilePoint& p);

// Full cascade at one point. r̆ = ∞ is accepted: ψ and ψ' vanish and the D_{1/2} center entry is left at 0.
struct Cascade {
    CMat c_half, c_zero, c_minus_half;
    CMat d_half, d_zero, d_minus_half;
    CVec psi, psi_x;
};
Cascade cascade(const GasParams& g, const ProfilePoint& p, const ParabolicPoint& pt);

// U = [[1, 0], [ψ, I₆]].
CMat u_matrix(const CVec& psi);

// Block diagonalization of D_{1/2} along x₁ with Kato-transported bases of the stable and unstable
// subspaces of β; the scalar center mode is the first column of the minus block.
struct BlockNode {
    double x = 0;
    CMat R, L, R_x;   // 7×7
    CMat n_minus;     // 4×4 at the requested r̆
    CMat n_plus;      // 3×3
};
struct BlockDiagonalization {
    double xi_breve = 0;
    double r_breve = 1;
    std::vector<BlockNode> nodes;
    double max_residual = 0;  // max ‖L D_{1/2} R − N‖ / ‖D_{1/2}‖
};
BlockDiagonalization block_diagonalize(const Profile& profile, const ParabolicPoint& pt, const std::vector<double>& x);

// x₁ samples for suprema: the profile nodes, thinned evenly by index to at most max_points.
std::vector<double> sample_grid(const Profile& profile, int max_points);

// Θ^{(0)} and Θ^{(−1/2)} at one node and r̆.
struct ThetaPair {
    CMat theta0, theta_mhalf;
};
ThetaPair theta_blocks(const GasParams& g, const ProfilePoint& p, const BlockNode& node, const ParabolicPoint& pt);

// Norms of the four sub-blocks (dimensions 4 and 3).
struct BlockNorms {
    double mm = 0, mp = 0, pm = 0, pp = 0;
};
BlockNorms block_norms(const CMat& theta);

// δ̆ = min σ(Re N₊) − max σ(Re N₋).
double numerical_gap(const CMat& n_minus, const CMat& n_plus);

// Roots of P(ζ) = ‖Θ₊₋‖ζ² + (‖Θ₋₋‖ + ‖Θ₊₊‖ − δ)ζ + ‖Θ₋₊‖; the tracking condition holds iff 0 < ζ₋ < ζ₊ are real.
// With ‖Θ₊₋‖ = 0 the polynomial is linear and ζ₊ = +∞.
struct ZetaRoots {
    bool condition = false;
    double zeta_minus = 0;
    double zeta_plus = 0;
};
ZetaRoots zeta_roots(double delta, double mm, double mp, double pm, double pp);
bool tracking_condition(double delta, double mm, double mp, double pm, double pp);

// Suprema over r̆ and x₁ of the Θ block norms:
// a = ‖Θ⁰₋₋‖+‖Θ⁰₊₊‖, b = same for Θ^{(−1/2)}, c = ‖Θ⁰₋₊‖, d = ‖Θ⁰₊₋‖, e = ‖Θ^{(−1/2)}₋₊‖, f = ‖Θ^{(−1/2)}₊₋‖.
struct TrackingCoeffs {
    double a = 0, b = 0, c = 0, d = 0, e = 0, f = 0;
};

// Coefficients (leading first) of the quartic obtained by squaring
// δ̆y = a + b/y + 2√((c + e/y)(d + f/y)), y = r̆^{1/2}.
std::vector<double> tracking_quartic(const TrackingCoeffs& k, double delta);
// Square of the largest real root; 0 when there is none.
double tracking_radius(const TrackingCoeffs& k, double delta);
// Right-hand side of the tracking inequality at r̆ with the uniform coefficients.
double tracking_rhs(const TrackingCoeffs& k, double delta, double r_breve);

struct HfOptions {
    double crude_r0 = 40000;
    double r_min = 1;         // lower end of the r̆ sweep for the coefficient suprema
    int r_points = 200;       // logarithmic, plus r̆ = ∞
    bool self_consistent = true;  // restrict the suprema to r̆ ≥ the bound itself
    int x_points = 400;       // cap on x₁ samples
    int s_points = 400;       // resolvent sweeps for M₀ and M₁
};

// Constants of the crude bound for one profile and ξ̆, and their combination.
struct CrudeConstants {
    double lr_cond = 0;      // sup ‖L‖‖R‖
    double lr_prime = 0;     // sup ‖LR'‖
    double c_zero = 0;       // sup ‖C₀‖
    double c_minus_half = 0; // sup ‖C_{−1/2}‖
    double inv_delta = 0;    // sup 1/δ̆
    double b = 0;            // sup ‖β‖⁻¹‖q‖ / ‖β⁻¹q‖
    double m0 = 0;
    double m1 = 0;
    double px_over_p = 0;    // sup |p̂_x/p̂|
    double rhox_over_rho = 0;
    // derived by finish_crude
    double u_norm_sq = 0;
    double psi_x = 0;
    double theta = 0;
    double r_crude = 0;
};
CrudeConstants crude_constants(const Profile& profile, double xi_breve, const HfOptions& opts = {});
CrudeConstants crude_constants(const Profile& profile, const BlockDiagonalization& bd, const HfOptions& opts);
// Elementwise supremum of the measured fields.
CrudeConstants combine(const std::vector<CrudeConstants>& parts);
// Fills ‖U‖², ‖ψ_x‖, ‖Θ‖ and r̆_crude = max{r̆₀, (4‖Θ‖/δ̆)²}.
void finish_crude(CrudeConstants& c, double r0);
double crude_radius(const Profile& profile, double xi_breve, const HfOptions& opts = {});

// ‖[[I, r̆^{−1/2}I], [0, I]]‖² in closed form.
double shear_norm_sq(double r_breve);
// ‖U‖² in terms of ‖ψ‖.
double u_norm_sq(double psi_norm);

struct TrackingBound {
    double u_plus = 0;
    double xi_breve = 0;
    double delta = 0;
    TrackingCoeffs coeffs;
    double r_breve_star = 0;
    double r_breve_crude = 0;
    double r_breve_lower = 0;  // lower end of the r̆ range the coefficients are taken over
    double r_star = 0;    // r̆*(1 − ξ̆²), the bound on |λ|
    double xi_slice = 0;  // √r̆*·ξ̆
    double block_residual = 0;
};

// Per-r̆ suprema over x₁ of the block norms on a logarithmic grid [r_lo, r_hi] followed by r̆ = ∞.
struct CoeffTable {
    std::vector<double> r;
    std::vector<TrackingCoeffs> sup_x;
    // Suprema over r[j], r[j+1], ..., ∞.
    TrackingCoeffs from(std::size_t j) const;
};
CoeffTable coeff_table(const Profile& profile, const BlockDiagonalization& bd, double r_lo, double r_hi, int r_points);
TrackingCoeffs uniform_coeffs(const Profile& profile, const BlockDiagonalization& bd, double r_lo, double r_hi,
                              int r_points);

// Smallest grid radius r[j] whose own coefficients (suprema over r̆ ≥ r[j]) give a quartic radius ≤ r[j].
// The tracking inequality then holds at every sampled r̆ ≥ r[j].
struct SelfConsistentRadius {
    std::size_t index = 0;
    double r_breve = 0;
    double quartic_radius = 0;
    TrackingCoeffs coeffs;
};
SelfConsistentRadius self_consistent_radius(const CoeffTable& table, double delta);
TrackingBound tracking_bound(const Profile& profile, double xi_breve, const HfOptions& opts = {});

// Table over a u₊ × ξ̆ grid; profiles are solved internally.
std::vector<TrackingBound> hf_surface(const GasParams& g, const std::vector<double>& u_plus,
                                      const std::vector<double>& xi_breve, const HfOptions& opts = {},
                                      int workers = 1);

// Hyperbolicity of β over densities, ξ̆ and the auxiliary ζ of the symbol argument.
struct BetaCheck {
    double min_abs_re = std::numeric_limits<double>::infinity();  // min |Re σ(β)|
    double min_margin = std::numeric_limits<double>::infinity();  // min λ_min(form) / ((ξ²+ζ²)min{μ,ν})
    int unstable_dim_min = 6, unstable_dim_max = 0;
};
BetaCheck beta_check(const GasParams& g, const std::vector<double>& rho, const std::vector<double>& xi_breve,
                     const std::vector<double>& zeta);

// Lyapunov symmetrization of the blocks so that Re(P₊^{1/2}N₊P₊^{−1/2}) ≥ c₊ > c₋ ≥ Re(P₋^{1/2}N₋P₋^{−1/2}).
struct Symmetrization {
    CMat p_plus, p_minus;
    CMat m_plus, m_minus;
    double c_minus = 0, c_plus = 0;
    double min_m_plus = 0, max_m_minus = 0;
    double residual = 0;
};
Symmetrization symmetrize(const CMat& n_minus, const CMat& n_plus, double c_minus, double c_plus);

}  // namespace shockstab
