#include "shockstab/hf_bounds.hpp"
#include "shockstab/numerics.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace shockstab;

namespace {
CMat random_matrix(std::mt19937& rng, int n, double scale = 1.0) {
    std::normal_distribution<double> d(0.0, scale);
    CMat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = cplx(d(rng), d(rng));
    return m;
}
}  // namespace

TEST_CASE("norm2 and eigenvalues on a diagonal matrix") {
    CMat m = CMat::Zero(3, 3);
    m(0, 0) = 3;
    m(1, 1) = cplx(0, -5);
    m(2, 2) = 1;
    CHECK(norm2(m) == doctest::Approx(5));
    CHECK(min_singular_value(m) == doctest::Approx(1));
}

TEST_CASE("spectral projector is idempotent and commutes") {
    std::mt19937 rng(7);
    for (int t = 0; t < 20; ++t) {
        CMat a = random_matrix(rng, 7);
        CMat p;
        try {
            p = projector_largest_real(a, 3);
        } catch (const SpectralGapError&) {
            continue;
        }
        CHECK((p * p - p).norm() < 1e-9);
        CHECK((a * p - p * a).norm() < 1e-8 * a.norm());
        CHECK(std::abs(p.trace() - cplx(3)) < 1e-9);
    }
}

TEST_CASE("Kato transport with a constant projector leaves the basis fixed") {
    std::mt19937 rng(1);
    CMat a = random_matrix(rng, 5);
    CMat p = projector_largest_real(a, 2);
    CMat r0 = p * random_matrix(rng, 5).leftCols(2);
    CMat r1 = kato_transport([&](double) { return p; }, 0.0, 1.0, r0);
    CHECK((r1 - r0).norm() < 1e-7);
}

TEST_CASE("Kato transport along a rotation family is the rotation") {
    auto proj = [](double t) {
        CMat v = CMat::Zero(3, 1);
        v(0, 0) = std::cos(t);
        v(1, 0) = std::sin(t);
        return CMat(v * v.adjoint());
    };
    CMat r0 = CMat::Zero(3, 1);
    r0(0, 0) = 1;
    for (double t : {0.3, 1.0, 2.5}) {
        CMat r = kato_transport(proj, 0.0, t, r0, 0.01);
        CHECK(std::abs(r(0, 0) - std::cos(t)) < 1e-7);
        CHECK(std::abs(r(1, 0) - std::sin(t)) < 1e-7);
        CHECK(std::abs(r(2, 0)) < 1e-7);
    }
}

TEST_CASE("Lyapunov residuals") {
    std::mt19937 rng(3);
    double worst = 0;
    for (int t = 0; t < 200; ++t) {
        int n = 2 + t % 5;
        CMat n0 = random_matrix(rng, n);
        double shift = 0;
        for (cplx e : eigenvalues(n0).reshaped()) shift = std::max(shift, e.real());
        CMat nm = n0 - (shift + 0.1) * identity(n);
        CMat q = random_matrix(rng, n);
        q = q * q.adjoint() + identity(n);
        CMat p = lyapunov_solve(nm, q);
        worst = std::max(worst, (p * nm + nm.adjoint() * p + q).norm() / q.norm());
        CHECK((p - p.adjoint()).norm() < 1e-10 * p.norm());
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("closed-form shear and U norms agree with the SVD") {
    for (double r : {0.5, 1.0, 2.0, 40.0, 1e4}) {
        CMat m = identity(6);
        for (int i = 0; i < 3; ++i) m(i, 3 + i) = 1.0 / std::sqrt(r);
        double s = norm2(m);
        CHECK(std::abs(shear_norm_sq(r) - s * s) <= 1e-12 * s * s);
    }
    std::mt19937 rng(5);
    std::normal_distribution<double> d;
    for (int t = 0; t < 50; ++t) {
        CVec psi(6);
        for (int i = 0; i < 6; ++i) psi(i) = cplx(d(rng), d(rng)) * (0.1 * t);
        double s = norm2(u_matrix(psi));
        CHECK(std::abs(u_norm_sq(psi.norm()) - s * s) <= 1e-12 * s * s);
    }
}

TEST_CASE("matrix exponential and the ODE integrator agree on a linear system") {
    std::mt19937 rng(11);
    CMat a = random_matrix(rng, 4, 0.5);
    StateVec y0 = StateVec::Ones(4);
    StateVec y = integrate([&](double, const StateVec& y, StateVec& dy) { dy = a * y; }, y0, 0.0, 2.0);
    StateVec ref = expm(2.0 * a) * y0;
    CHECK((y - ref).norm() < 1e-7 * ref.norm());
}

TEST_CASE("Hermitian square roots") {
    std::mt19937 rng(13);
    CMat b = random_matrix(rng, 4);
    CMat p = b * b.adjoint() + identity(4);
    CMat s = hermitian_sqrt(p), si = hermitian_inv_sqrt(p);
    CHECK((s * s - p).norm() < 1e-10 * p.norm());
    CHECK((s * si - identity(4)).norm() < 1e-10);
}

TEST_CASE("polynomial roots") {
    // (y − 1)(y − 2)(y + 3)
    auto r = largest_real_root({1, 0, -7, 6});
    REQUIRE(r.has_value());
    CHECK(*r == doctest::Approx(2));
    CHECK_FALSE(largest_real_root({1, 0, 1}).has_value());
    CHECK(polynomial_roots({1, 0, -7, 6}).size() == 3);
}
