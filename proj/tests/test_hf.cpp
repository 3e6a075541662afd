#include "shockstab/evans_systems.hpp"
#include "shockstab/hf_bounds.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace shockstab;

TEST_CASE("tracking roots: closed-form example and Vieta identities") {
    // P(ζ) = ζ² − 8ζ + 1
    ZetaRoots z = zeta_roots(10, 1, 1, 1, 1);
    CHECK(z.condition);
    CHECK(z.zeta_minus == doctest::Approx(4 - std::sqrt(15.0)));
    CHECK(z.zeta_plus == doctest::Approx(4 + std::sqrt(15.0)));

    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    int real_cases = 0;
    for (int t = 0; t < 1000; ++t) {
        double mm = u(rng), mp = u(rng), pm = u(rng) + 1e-3, pp = u(rng), delta = 5 * u(rng);
        ZetaRoots r = zeta_roots(delta, mm, mp, pm, pp);
        double bcoef = mm + pp - delta;
        bool real = bcoef * bcoef - 4 * pm * mp >= 0;
        if (!real || !r.condition) continue;
        ++real_cases;
        CHECK(r.zeta_minus + r.zeta_plus == doctest::Approx(-bcoef / pm).epsilon(1e-10));
        CHECK(r.zeta_minus * r.zeta_plus == doctest::Approx(mp / pm).epsilon(1e-10));
    }
    CHECK(real_cases > 100);
    ZetaRoots lin = zeta_roots(3, 0.5, 0.5, 0.0, 0.5);
    CHECK(lin.condition);
    CHECK(std::isinf(lin.zeta_plus));
    CHECK_FALSE(tracking_condition(0.5, 1, 1, 1, 1));
}

TEST_CASE("tracking quartic root solves the unsquared inequality") {
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> u(0.01, 3.0);
    for (int t = 0; t < 200; ++t) {
        TrackingCoeffs k{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
        double delta = 0.2 + u(rng);
        double y = 1e3;
        for (int i = 0; i < 2000; ++i)
            y = (k.a + k.b / y + 2 * std::sqrt((k.c + k.e / y) * (k.d + k.f / y))) / delta;
        CHECK(tracking_radius(k, delta) == doctest::Approx(y * y).epsilon(1e-8));
    }
    // b = d = e = f = 0 collapses to y = a/δ̆
    TrackingCoeffs k{2.0, 0, 0.7, 0, 0, 0};
    CHECK(tracking_radius(k, 0.5) == doctest::Approx(16.0));
    CHECK_THROWS(tracking_radius(k, 0.0));
}

TEST_CASE("cascade reconstruction of the coefficient matrix") {
    GasParams g = monatomic();
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> uu(0.26, 0.95), ux(-4, 4), uxi(0, 1), ur(0, 4);
    std::vector<Profile> profiles;
    for (double u : {0.27, 0.45, 0.8}) profiles.push_back(solve_profile(g, endstates(g.gruneisen, u)));
    double worst = 0;
    for (int t = 0; t < 100; ++t) {
        const Profile& pr = profiles[t % 3];
        ProfilePoint p = pr.at(ux(rng));
        ParabolicPoint pt{uxi(rng), std::pow(10.0, ur(rng))};
        Cascade c = cascade(g, p, pt);
        double sr = std::sqrt(pt.r_breve);
        CMat d = sr * c.d_half + c.d_zero + c.d_minus_half / sr;
        CMat u = u_matrix(c.psi), up = CMat::Zero(7, 7);
        up.block(1, 0, 6, 1) = c.psi_x;
        CMat cm = u * d * u.inverse() + up * u.inverse();
        CMat tm = identity(7);
        for (int i = 4; i < 7; ++i) tm(i, i) = 1 / sr;
        CMat s = identity(7), sp = CMat::Zero(7, 7);
        s(0, 4) = -p.rho;
        sp(0, 4) = -p.rho_x;
        CMat a = s * (tm * cm * tm.inverse()) * s.inverse() + sp * s.inverse();
        CMat a0 = standard_matrix(g, p, pt.lambda(), pt.xi());
        worst = std::max(worst, (a - a0).cwiseAbs().maxCoeff() / a0.cwiseAbs().maxCoeff());
        CMat c_direct = sr * c.c_half + c.c_zero + c.c_minus_half / sr;
        worst = std::max(worst, (c_direct - cm).cwiseAbs().maxCoeff() / cm.cwiseAbs().maxCoeff());
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("beta is hyperbolic with a uniform margin, including the strong-shock limit") {
    GasParams g = monatomic();
    std::vector<double> rho, xi, zeta;
    const double rmax = 1.0 / u_star(g.gruneisen);  // e₋ = 0
    for (int i = 0; i < 50; ++i) rho.push_back(1 + (rmax - 1) * i / 49.0);
    for (int i = 0; i < 50; ++i) xi.push_back(i / 49.0);
    for (int i = 0; i < 20; ++i) zeta.push_back(-2 + 4 * i / 19.0);
    BetaCheck b = beta_check(g, rho, xi, zeta);
    CHECK(b.min_abs_re > 0);
    CHECK(b.min_margin > 0);
    CHECK(b.unstable_dim_min == 3);
    CHECK(b.unstable_dim_max == 3);
}

TEST_CASE("block diagonalization and the gap at xi_breve = 0") {
    GasParams g = monatomic();
    Profile p = solve_profile(g, endstates(g.gruneisen, 0.4));
    BlockDiagonalization bd = block_diagonalize(p, {0.0, 1.0}, sample_grid(p, 60));
    CHECK(bd.max_residual < 1e-10);
    double gap = 1e300;
    for (const BlockNode& n : bd.nodes) gap = std::min(gap, numerical_gap(n.n_minus, n.n_plus));
    CHECK(gap == doctest::Approx(1 / std::sqrt(2 * g.nu)).epsilon(1e-3));
}

TEST_CASE("symmetrization of non-normal blocks") {
    CMat np = CMat::Zero(3, 3), nm = CMat::Zero(4, 4);
    np << 1, 10, 0, 0, 1, 10, 0, 0, 1;  // Jordan-like, Re numerical range reaches below 0
    nm << -1, 8, 0, 0, 0, -1, 8, 0, 0, 0, -1, 0, 0, 0, 0, -2;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Eigen::MatrixXcd(0.5 * (np + np.adjoint())));
    REQUIRE(es.eigenvalues()(0) < 0);
    Symmetrization s = symmetrize(nm, np, -0.5, 0.5);
    CHECK(s.min_m_plus >= 0.5 - 1e-10);
    CHECK(s.max_m_minus <= -0.5 + 1e-10);
    CHECK(s.residual < 1e-10);
}

TEST_CASE("tracking bound is finite and consistent") {
    GasParams g = monatomic();
    Profile p = solve_profile(g, endstates(g.gruneisen, 0.6));
    HfOptions o;
    o.x_points = 80;
    o.s_points = 80;
    o.r_points = 40;
    TrackingBound b = tracking_bound(p, 0.5, o);
    CHECK(b.r_breve_star > 0);
    CHECK(b.r_breve_star <= b.r_breve_crude);
    CHECK(b.r_star == doctest::Approx(b.r_breve_star * 0.75));
    CHECK(b.xi_slice == doctest::Approx(std::sqrt(b.r_breve_star) * 0.5));
    CHECK(tracking_rhs(b.coeffs, b.delta, b.r_breve_star) <= std::sqrt(b.r_breve_star) * (1 + 1e-9));
}
