#pragma once

#include "shockstab/numerics.hpp"
#include "shockstab/profile.hpp"

#include <string>

namespace shockstab {

enum class Form { Standard, Balanced, Modified };
enum class Coordinates { Eulerian, PseudoLagrangian };

struct Formulation {
    Form form = Form::Balanced;
    bool radial = true;
    Coordinates coords = Coordinates::PseudoLagrangian;
};

std::string to_string(Form f);
Form parse_form(const std::string& s);
std::string describe(const Formulation& f);

// Frequency (ξ, λ) with its rescaled charts.
struct Frequency {
    double xi = 0;
    cplx lambda = 0;

    // balanced: ř = √(ξ²+|λ|²), ξ̌ = ξ/ř, λ̌ = λ/ř
    double r_check() const;
    double xi_check() const;
    cplx lambda_check() const;
    // modified: r₂ = |ξ| + λ
    cplx r_mod() const;
    cplx xi_sharp() const;
    cplx lambda_sharp() const;
    // parabolic: r̆ = ξ² + |λ|, ξ̆ = ξ/√r̆, λ̆ = λ/r̆
    double r_breve() const;
    double xi_breve() const;
    cplx lambda_breve() const;

    static Frequency from_balanced(double r, double xi_c, cplx lambda_c);
    // λ = i r̆ τ̆ with τ̆ = 1 − ξ̆², ξ = √r̆ ξ̆
    static Frequency from_parabolic(double r_breve, double xi_breve);
};

// Point in the rescaled chart (r, λ̌, ξ̌) accepted by the balanced generator; r and ξ̌ are complex for the modified form.
struct ChartPoint {
    cplx r;
    cplx lambda;
    cplx xi;
};
ChartPoint balanced_chart(const Frequency& f);
// Throws DomainError at (ξ, λ) = (0, 0).
ChartPoint modified_chart(const Frequency& f);

// f(Û, Û_x) = p̂ + (μ−η)û_x and g(Û, Û_x) = p̂ − μ̃û_x.
double coeff_f(const GasParams& g, const ProfilePoint& p);
double coeff_g(const GasParams& g, const ProfilePoint& p);

// Coefficient matrix A(x; λ, ξ) in variables (w, x̃, y, z̃, u, v, e).
CMat standard_matrix(const GasParams& g, const ProfilePoint& p, cplx lambda, cplx xi);
// Balanced-flux matrix Ǎ(x; λ̌, ξ̌, ř), equal to T⁻¹ A T with T = diag(ř,ř,ř,ř,1,1,1).
CMat balanced_matrix(const GasParams& g, const ProfilePoint& p, const ChartPoint& c);

// Generator of the eigenvalue ODE in a chosen formulation and independent variable.
class EvansSystem {
public:
    EvansSystem(const Profile& profile, const Formulation& form, const Frequency& freq);
    // Balanced generator at an explicit chart point (used where ř may vanish).
    EvansSystem(const Profile& profile, Coordinates coords, const ChartPoint& chart);

    CMat at(double s) const;     // s is x₁ or y₁ depending on the coordinates
    CMat limit(Side side) const; // generator at the exact endstate
    double s_begin() const;      // −L or y₁(−L)
    double s_end() const;        // +L or y₁(+L)
    const Profile& profile() const { return *profile_; }
    Coordinates coordinates() const { return coords_; }

private:
    CMat raw(const ProfilePoint& p) const;

    const Profile* profile_;
    Coordinates coords_;
    bool standard_;
    cplx lambda_, xi_;
    ChartPoint chart_;
};

// Basis of the stable subspace at +∞ (dim 4) or the unstable subspace at −∞ (dim 3), with its projector.
// At −∞ a center eigenvalue is grouped with the stable ones.
struct SplitSubspace {
    CMat projector;
    CMat basis;  // orthonormal columns spanning range(projector)
};
constexpr int kDimStablePlus = 4;
constexpr int kDimUnstableMinus = 3;
CMat splitting_projector(const CMat& limit, Side side);
SplitSubspace splitting_subspace(const CMat& limit, Side side);

// Derivative of the profile pushed through the flux variables, a solution of W' = A(x; 0, 0)W.
CVec translational_mode(const Profile& profile, double x);

// J = diag(1,1,−1,1,1,−1,1) satisfies J·conj(A(λ, ξ))·J = A(conj λ, ξ).
CMat conjugation_symmetry();

}  // namespace shockstab
