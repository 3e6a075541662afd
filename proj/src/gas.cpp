#include "shockstab/gas.hpp"

#include <cmath>
#include <sstream>

namespace shockstab {

void GasParams::validate() const {
    if (!(gruneisen > 0)) throw DomainError("Gruneisen coefficient must be positive");
    if (!(mu > std::abs(eta))) throw DomainError("viscosities must satisfy mu > |eta|");
    if (!(nu > 0)) throw DomainError("heat conduction parameter must be positive");
}

double eucken_ratio(double gamma) {
    if (!(gamma > 1.0)) throw DomainError("Eucken ratio requires gamma > 1");
    return (9.0 * gamma - 5.0) / 4.0;
}

double gruneisen_from_atoms(int atoms) {
    if (atoms < 1) throw DomainError("number of atoms must be positive");
    return (2.0 * atoms + 3.0) / (2.0 * atoms + 1.0) - 1.0;
}

GasParams custom_gas(double gruneisen) {
    GasParams g;
    g.gruneisen = gruneisen;
    g.mu = 1.0;
    g.eta = -2.0 / 3.0 * g.mu;
    g.nu = g.mu * eucken_ratio(gruneisen + 1.0);
    g.validate();
    return g;
}

GasParams monatomic() { return custom_gas(2.0 / 3.0); }
GasParams diatomic() { return custom_gas(2.0 / 5.0); }

GasParams parse_gas_law(const std::string& spec) {
    if (spec == "monatomic") return monatomic();
    if (spec == "diatomic") return diatomic();
    const std::string prefix = "custom:";
    if (spec.rfind(prefix, 0) == 0) {
        std::string v = spec.substr(prefix.size());
        double g = 0;
        auto slash = v.find('/');
        if (slash != std::string::npos)
            g = std::stod(v.substr(0, slash)) / std::stod(v.substr(slash + 1));
        else
            g = std::stod(v);
        return custom_gas(g);
    }
    throw DomainError("unknown gas law '" + spec + "' (expected monatomic, diatomic or custom:<Gamma>)");
}

std::string gas_label(const GasParams& g) {
    if (std::abs(g.gruneisen - 2.0 / 3.0) < 1e-15) return "monatomic";
    if (std::abs(g.gruneisen - 0.4) < 1e-15) return "diatomic";
    std::ostringstream os;
    os.precision(17);
    os << "custom:" << g.gruneisen;
    return os.str();
}

double u_star(double G) { return G / (G + 2.0); }

double e_max(double G) {
    double r = G / (G + 1.0);
    return (1.0 + r * r) / (2.0 * (G + 1.0));
}

namespace {
// Grid values such as 0.25 should hit u* exactly even when Γ/(Γ+2) rounds.
double snap_to_u_star(double G, double u_plus) {
    double us = u_star(G);
    return std::abs(u_plus - us) <= 4e-16 ? us : u_plus;
}
}  // namespace

std::optional<double> mach(double G, double u_plus) {
    u_plus = snap_to_u_star(G, u_plus);
    double us = u_star(G);
    if (u_plus < us || u_plus > 1.0) throw DomainError("u_plus outside [u_star, 1]");
    if (u_plus == us) return std::nullopt;
    return std::sqrt(2.0) / std::sqrt((G + 2.0) * (u_plus - us));
}

ShockEndStates endstates(double G, double u_plus) {
    if (!(G > 0)) throw DomainError("Gruneisen coefficient must be positive");
    if (u_plus > 1.0) throw DomainError("u_plus must not exceed u_minus = 1");
    u_plus = snap_to_u_star(G, u_plus);
    double us = u_star(G);
    if (u_plus < us) throw DomainError("u_plus below u_star: unphysical state");
    ShockEndStates s;
    s.gruneisen = G;
    s.u_plus = u_plus;
    s.u_star = us;
    s.rho_plus = 1.0 / u_plus;
    double den = 2.0 * G * (G + 1.0);
    s.e_plus = u_plus * (G + 2.0 - G * u_plus) / den;
    // (Γ+2)(u₊−u*) written so that u₊ = u* gives an exact zero
    s.e_minus = u_plus == us ? 0.0 : ((G + 2.0) * u_plus - G) / den;
    s.mach = mach(G, u_plus);
    s.c_plus = std::sqrt(G * (G + 1.0) * s.e_plus);
    s.c_minus = std::sqrt(G * (G + 1.0) * s.e_minus);
    return s;
}

RHResiduals rh_residuals(const ShockEndStates& s) {
    // Mass flux is 1; momentum: u + p, energy: u(e + u²/2) + p u across the jump.
    double G = s.gruneisen;
    double pm = G * s.rho_minus * s.e_minus;
    double pp = G * s.rho_plus * s.e_plus;
    RHResiduals r;
    double mom = (s.u_plus + pp) - (s.u_minus + pm);
    double en = (s.e_plus + 0.5 * s.u_plus * s.u_plus + pp * s.u_plus) -
                (s.e_minus + 0.5 * s.u_minus * s.u_minus + pm * s.u_minus);
    double scale_m = std::abs(s.u_minus) + std::abs(pm) + std::abs(pp) + std::abs(s.u_plus);
    double scale_e = std::abs(s.e_plus) + std::abs(s.e_minus) + 0.5 + 0.5 * s.u_plus * s.u_plus +
                     std::abs(pp * s.u_plus) + std::abs(pm);
    r.momentum = std::abs(mom) / scale_m;
    r.energy = std::abs(en) / scale_e;
    return r;
}

std::vector<MachRow> mach_table(double G, const std::vector<double>& us) {
    std::vector<MachRow> rows;
    for (double u : us) {
        auto s = endstates(G, u);
        rows.push_back({u, s.mach, s.e_minus > 0 ? u / s.e_minus : INFINITY});
    }
    return rows;
}

const std::vector<double>& monatomic_u_grid() {
    static const std::vector<double> g{0.25, 0.26, 0.27, 0.28, 0.29, 0.30, 0.35, 0.40, 0.45, 0.50,
                                       0.55, 0.60, 0.65, 0.70, 0.75, 0.80, 0.85, 0.90, 0.95};
    return g;
}

const std::vector<double>& diatomic_u_grid() {
    static const std::vector<double> g{0.167, 0.17, 0.18, 0.19, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45,
                                       0.50,  0.55, 0.60, 0.65, 0.70, 0.75, 0.80, 0.85, 0.90, 0.95};
    return g;
}

const std::vector<double>& xi_breve_grid() {
    static const std::vector<double> g = [] {
        std::vector<double> v{0.005, 0.01, 0.15, 0.2};
        for (int k = 1; k <= 40; ++k) v.push_back(0.025 * k);
        return v;
    }();
    return g;
}

}  // namespace shockstab
