#pragma once

#include "shockstab/gas.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace shockstab {

struct SolverFailure : std::runtime_error {
    SolverFailure(const std::string& what, double final_residual)
        : std::runtime_error(what), residual(final_residual) {}
    double residual;
};

struct ProfileState {
    double u;
    double e;
};

// Right-hand side of the rescaled traveling-wave ODE in (u, e).
ProfileState profile_rhs(const GasParams& params, double e_minus, ProfileState s);
// Jacobian [[∂u'/∂u, ∂u'/∂e], [∂e'/∂u, ∂e'/∂e]] in row-major order.
std::array<double, 4> profile_jacobian(const GasParams& params, double e_minus, ProfileState s);

enum class Side { Minus, Plus };

// Slowest approach rate of the profile to the endstate on the given side.
// Throws DomainError at the characteristic limit u_plus = 1.
double decay_rate(const GasParams& params, const ShockEndStates& ends, Side side);

struct ProfileOptions {
    double atol = 1e-8;
    double rtol = 1e-6;
    double boundary_tol = 1e-9;
    double residual_tol = 1e-6;
    std::optional<double> half_length;  // L; chosen from the decay rates when empty
    double initial_step = 0.1;
    int max_nodes = 200000;
    int max_newton = 50;
};

struct ProfileDiagnostics {
    double residual = 0;           // sup |interpolant' − rhs|
    double boundary_mismatch = 0;  // max distance of the end values from the endstates
    int nodes = 0;
    int newton_iterations = 0;
    int refinements = 0;
    bool monotone = false;
    std::string initial_guess;  // "tanh" or "shooting"
};

// Everything a coefficient matrix needs at one point of the profile.
struct ProfilePoint {
    double u, e;      // û, ê
    double ux, ex;    // first derivatives
    double uxx, exx;  // second derivatives
    double rho, p;    // ρ̂ = 1/û, p̂ = Γρ̂ê
    double rho_x, p_x;
};

class Profile {
public:
    GasParams params;
    ShockEndStates ends;
    double L = 0;
    std::vector<double> grid;  // x₁ nodes on [−L, L], includes 0
    std::vector<double> u_hat, e_hat, u_hat_x, e_hat_x;
    std::vector<double> y_grid;  // pseudo-Lagrangian coordinate at the nodes, y(0) = 0
    ProfileDiagnostics diagnostics;

    // Cubic Hermite interpolation; x outside [−L, L] is clamped.
    ProfilePoint at(double x) const;
    ProfileState state(double x) const;
    ProfilePoint endstate(Side side) const;

    // Pseudo-Lagrangian map y(x) = ∫₀ˣ ρ̂ and its inverse.
    double to_y(double x) const;
    double to_x(double y) const;
    double y_min() const { return y_grid.front(); }
    double y_max() const { return y_grid.back(); }

    // Rebuilds y_grid from the node data; needed after loading from file.
    void build_pseudo_lagrangian();

    // sup over sub-interval sample points of |Hermite derivative − rhs|.
    double ode_residual(int samples_per_interval = 4) const;
    // Strict decrease, except for ties where the decrement is below floating-point resolution.
    bool strictly_decreasing() const;

private:
    std::size_t interval(double x) const;
};

Profile solve_profile(const GasParams& params, const ShockEndStates& ends, const ProfileOptions& opts = {});

}  // namespace shockstab
