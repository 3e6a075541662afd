#pragma once

#include "shockstab/evans_engine.hpp"

#include <functional>
#include <string>
#include <vector>

namespace shockstab {

// Sum of principal argument increments / 2π around a closed sample list (first sample not repeated).
double winding_real(const std::vector<cplx>& closed);

struct WindingCount {
    int winding = 0;
    double residual = 0;  // distance of the argument sum from the nearest integer
    bool conclusive = false;
};
WindingCount winding_number(const std::vector<cplx>& closed, double integrality_tol = 0.1);

// Upper half of ∂{Re λ ≥ 0, notch ≤ |λ| ≤ R}: arc R → iR, axis iR → i·notch, then a quarter circle to notch.
// t ∈ [0, 1]; the arc and the axis each take a parameter share proportional to their base point counts.
struct ContourPath {
    double radius = 1;
    double notch = 0;
    int arc_points = 50;
    int axis_points = 50;
    int notch_points = 12;

    cplx at(double t) const;
    std::vector<double> base_parameters() const;
};

struct ContourOptions {
    double tolerance = 0.2;
    int budget = 4096;
    double integrality_tol = 0.1;
    int workers = 1;
};

struct ContourResult {
    std::vector<double> t;        // parameters of the upper-half samples
    std::vector<cplx> lambda;     // closed contour: upper half then its conjugate reflection
    std::vector<cplx> D;
    int winding = 0;
    double winding_residual = 0;
    bool conclusive = false;
    double max_jump = 0;          // max consecutive |ΔD|/min|D| over the closed contour
    double junction_jump = 0;     // the two real-axis junctions only
    int refinements = 0;
    bool budget_exhausted = false;
    std::string message;
};

// Evaluator on the upper half: receives the contour parameter and the Kato-continued bases there.
using HalfEvaluator = std::function<cplx(double t, const InitialBases& bases)>;

// Generic driver: samples the upper half, refines by bisection until every consecutive relative jump
// is ≤ tolerance, completes by conjugate reflection and counts the winding.
ContourResult run_contour(const ContourPath& path, const BasisPath& bases_path, const InitialBases& anchor,
                          const HalfEvaluator& eval, const ContourOptions& opts);

// Evans contour for one slice (fixed ξ) in one formulation.
ContourResult evans_contour(const Profile& profile, const Formulation& form, double xi, const ContourPath& path,
                            const ContourOptions& opts, const EngineOptions& engine = {});

// Default notch radius for a gas: 0.05 monatomic, 0.06 diatomic-like (Γ < 1/2).
double default_notch(const GasParams& g);
// The standard formulation vanishes at λ = 0 when ξ = 0; only then is a notch needed.
bool needs_notch(const Formulation& form, double xi);

// Slice plan entry: ξ = √r̆*·ξ̆ and R = safety·r̆*·(1 − ξ̆²).
struct Slice {
    double xi_breve;
    double xi;
    double radius;
};
Slice plan_slice(double xi_breve, double r_breve_star, double safety = 1.1);

}  // namespace shockstab
