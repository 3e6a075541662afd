#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace shockstab {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct GasParams {
    double gruneisen = 2.0 / 3.0;  // Γ
    double mu = 1.0;
    double eta = -2.0 / 3.0;
    double nu = 2.5;

    double gamma() const { return gruneisen + 1.0; }
    double mu_tilde() const { return 2.0 * mu + eta; }
    double eta_tilde() const { return mu + eta; }

    // Throws DomainError when Γ ≤ 0, μ ≤ |η| or ν ≤ 0.
    void validate() const;
};

// ν/μ predicted by Eucken's formula.
double eucken_ratio(double gamma);

// Γ from the number of atoms per molecule: γ = (2n+3)/(2n+1).
double gruneisen_from_atoms(int atoms);

GasParams monatomic();
GasParams diatomic();
// Γ given, μ = 1, η = −2μ/3, ν from Eucken.
GasParams custom_gas(double gruneisen);
// Parses "monatomic", "diatomic" or "custom:<Γ>".
GasParams parse_gas_law(const std::string& spec);
std::string gas_label(const GasParams& g);

double u_star(double gruneisen);
double e_max(double gruneisen);

struct ShockEndStates {
    double gruneisen = 0;
    double u_plus = 0;
    double u_minus = 1.0;
    double rho_minus = 1.0;
    double rho_plus = 0;
    double e_plus = 0;
    double e_minus = 0;
    double u_star = 0;
    // Empty at u_plus = u_star (infinite Mach number).
    std::optional<double> mach;
    double c_minus = 0;
    double c_plus = 0;

    double p_plus() const { return gruneisen * rho_plus * e_plus; }
    double p_minus() const { return gruneisen * rho_minus * e_minus; }
};

ShockEndStates endstates(double gruneisen, double u_plus);

// Mach number; std::nullopt signals the infinite-amplitude boundary u_plus = u_star.
std::optional<double> mach(double gruneisen, double u_plus);

struct RHResiduals {
    double momentum = 0;
    double energy = 0;
};
RHResiduals rh_residuals(const ShockEndStates& s);

struct MachRow {
    double u_plus;
    std::optional<double> mach;
    double u_over_e_minus;
};
std::vector<MachRow> mach_table(double gruneisen, const std::vector<double>& u_plus_values);

const std::vector<double>& monatomic_u_grid();
const std::vector<double>& diatomic_u_grid();
// Parameter grid for the transverse parabolic frequency, as listed for the batch runs.
const std::vector<double>& xi_breve_grid();

}  // namespace shockstab
