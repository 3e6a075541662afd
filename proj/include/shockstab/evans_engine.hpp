#pragma once

#include "shockstab/evans_systems.hpp"

#include <functional>
#include <vector>

namespace shockstab {

struct EngineOptions {
    OdeOptions ode;
    double match_point = 0.0;  // in the system's independent variable
};

// Bases of U₋ (n×3) and S₊ (n×4) used to start the integration at ∓L.
struct InitialBases {
    CMat minus;
    CMat plus;
};

struct EvansValue {
    cplx D;           // with the radial factor γ₋γ₊
    cplx D_no_radial; // γ held at its initial value
    double drift = 0; // max ‖Ω*Ω − I‖ at the matching point
    long steps = 0;
};

struct EvansState {
    CMat omega;  // orthonormal columns
    cplx log_gamma;
    double s;
};

// Orthonormalize V = Ω T (polar factor); log γ = log det T.
EvansState initial_state(const CMat& v, double s);

// Integrates Ω' = (I − ΩΩ*)AΩ and (log γ)' = tr(Ω*AΩ) − tr(Π A_limit) from the state's s to s_target.
// The subtracted trace removes the growth predicted by the endstate, so D does not depend on L.
EvansState evolve(const EvansSystem& sys, Side side, const EvansState& start, double s_target,
                  const OdeOptions& opts, long* steps = nullptr);

EvansValue evans(const EvansSystem& sys, const InitialBases& bases, const EngineOptions& opts = {});

// Projector-valued path for Kato continuation of the splitting bases.
struct BasisPath {
    std::function<CMat(double)> limit_minus;
    std::function<CMat(double)> limit_plus;
};

// Kato-transports bases along a path parameter t from t0 to t1.
InitialBases transport_bases(const BasisPath& path, double t0, double t1, const InitialBases& start,
                             double max_jump = 0.1);

// Splitting-subspace bases from the limit matrices of a system, J-real when the system is.
InitialBases anchor_bases(const EvansSystem& sys);

// Applies the conjugation symmetry: bases at conj λ from bases at λ.
InitialBases reflect(const InitialBases& b);

// Evans values along a radial spoke ř ∈ grid (decreasing) at a fixed balanced angle (λ̌, ξ̌),
// with bases Kato-continued in ř starting from the given bases at grid[0].
struct SpokeSample {
    double r;
    cplx D;
};
std::vector<SpokeSample> radial_continue(const Profile& profile, Coordinates coords, cplx lambda_c, cplx xi_c,
                                         const std::vector<double>& r_grid, const InitialBases& start,
                                         const EngineOptions& opts = {});

}  // namespace shockstab
