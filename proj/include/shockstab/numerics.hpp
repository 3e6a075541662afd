#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace shockstab {

using cplx = std::complex<double>;
// All matrices in this library are at most 8×8; a fixed upper bound keeps them off the heap.
using CMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, 0, 8, 8>;
using CVec = Eigen::Matrix<cplx, Eigen::Dynamic, 1, 0, 8, 1>;
using StateVec = Eigen::VectorXcd;

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SpectralGapError : NumericError {
    using NumericError::NumericError;
};
struct StepSizeError : NumericError {
    using NumericError::NumericError;
};

struct EigenPairs {
    CVec values;
    CMat vectors;  // columns, unit 2-norm
};

EigenPairs eig(const CMat& m);
CVec eigenvalues(const CMat& m);

// Spectral (operator 2-) norm.
double norm2(const CMat& m);
double min_singular_value(const CMat& m);

// Projector onto the invariant subspace of the k eigenvalues with largest real part.
// Throws SpectralGapError if the k-th and (k+1)-th real parts are closer than min_gap.
CMat projector_largest_real(const CMat& m, int k, double min_gap = 1e-9);

// Projector onto the eigenvalues selected by the predicate, assembled from eigenvectors.
// Throws SpectralGapError if selected and unselected eigenvalues come within min_gap.
CMat spectral_projector(const CMat& m, const std::function<bool(cplx)>& select, double min_gap = 1e-9);

// One step of Kato transport between nearby projectors: R₁ = Π₁ (I − (Π₁−Π₀)²)^{−1/2} R₀.
// Throws StepSizeError if ‖Π₁ − Π₀‖ ≥ 1/2.
CMat kato_step(const CMat& p0, const CMat& p1, const CMat& r0);

// Transport basis r0 along a projector-valued path Π(t), t from t0 to t1.
// The step is halved until ‖ΔΠ‖ ≤ max_jump; projector evaluations are cached by the caller if needed.
struct KatoPathStats {
    int steps = 0;
    int halvings = 0;
};
CMat kato_transport(const std::function<CMat(double)>& projector, double t0, double t1, const CMat& r0,
                    double max_jump = 0.1, int initial_steps = 1, KatoPathStats* stats = nullptr);

// Adaptive Dormand–Prince 5(4) integration of y' = f(t, y) for complex state vectors.
struct OdeOptions {
    double atol = 1e-10;
    double rtol = 1e-8;
    double h_initial = 0;  // 0 picks a starting step automatically
    double h_max = 0;      // 0 means unbounded
    double h_min_rel = 1e-13;
    long max_steps = 5'000'000;
};
struct OdeStats {
    long steps = 0;
    long rejected = 0;
    long rhs_evals = 0;
};
using OdeRhs = std::function<void(double, const StateVec&, StateVec&)>;
using OdeObserver = std::function<void(double, const StateVec&)>;

StateVec integrate(const OdeRhs& f, const StateVec& y0, double t0, double t1, const OdeOptions& opts = {},
                   OdeStats* stats = nullptr, const OdeObserver& observer = nullptr);

// Matrix exponential by scaling and squaring with a Taylor core (test oracle and utility).
CMat expm(const CMat& a);

// Solves P N + N* P = −Q for Hermitian P. Requires Re σ(N) strictly one-signed.
// For an unstable N pass Q negative definite to get P positive.
CMat lyapunov_solve(const CMat& n, const CMat& q);

// Hermitian positive definite square root and inverse square root.
CMat hermitian_sqrt(const CMat& p);
CMat hermitian_inv_sqrt(const CMat& p);

// Largest real root of Σ c_i y^{deg−i} (coefficients leading first), or nullopt.
std::optional<double> largest_real_root(const std::vector<double>& coeffs_high_first);
std::vector<cplx> polynomial_roots(const std::vector<double>& coeffs_high_first);

inline CMat identity(int n) { return CMat::Identity(n, n); }

}  // namespace shockstab
