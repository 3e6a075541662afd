#include "shockstab/evans_systems.hpp"
#include "shockstab/io.hpp"
#include "shockstab/profile.hpp"

#include <doctest.h>

#include <cmath>

using namespace shockstab;

namespace {
// Classical RK4 on the profile ODE, independent of the collocation solver.
ProfileState rk4(const GasParams& g, double e_minus, ProfileState s, double length, int steps) {
    const double h = length / steps;
    auto add = [](ProfileState a, ProfileState b, double c) { return ProfileState{a.u + c * b.u, a.e + c * b.e}; };
    for (int i = 0; i < steps; ++i) {
        ProfileState k1 = profile_rhs(g, e_minus, s);
        ProfileState k2 = profile_rhs(g, e_minus, add(s, k1, h / 2));
        ProfileState k3 = profile_rhs(g, e_minus, add(s, k2, h / 2));
        ProfileState k4 = profile_rhs(g, e_minus, add(s, k3, h));
        s.u += h / 6 * (k1.u + 2 * k2.u + 2 * k3.u + k4.u);
        s.e += h / 6 * (k1.e + 2 * k2.e + 2 * k3.e + k4.e);
    }
    return s;
}
}  // namespace

TEST_CASE("profile at u+ = 0.6 matches an independent integration") {
    GasParams g = monatomic();
    ShockEndStates ends = endstates(g.gruneisen, 0.6);
    Profile p = solve_profile(g, ends);
    CHECK(p.diagnostics.residual < 1e-6);
    CHECK(p.diagnostics.boundary_mismatch < 1e-8);
    CHECK(p.strictly_decreasing());
    CHECK(p.state(-p.L).u == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(p.state(p.L).u == doctest::Approx(0.6).epsilon(1e-6));
    for (double x0 : {-4.0, 0.0, 3.0}) {
        ProfileState s = rk4(g, ends.e_minus, p.state(x0), 2.0, 2000);
        ProfileState ref = p.state(x0 + 2.0);
        CHECK(std::abs(s.u - ref.u) < 1e-5);
        CHECK(std::abs(s.e - ref.e) < 1e-5);
    }
}

TEST_CASE("profile JSON round trip") {
    Profile p = solve_profile(monatomic(), endstates(2.0 / 3.0, 0.7));
    Profile q = profile_from_json(json::parse(to_json(p).dump()));
    CHECK(q.grid == p.grid);
    CHECK(q.u_hat == p.u_hat);
    CHECK(q.to_y(1.3) == doctest::Approx(p.to_y(1.3)));
    CHECK(q.ends.e_minus == doctest::Approx(p.ends.e_minus));
}

TEST_CASE("translational mode solves the zero-frequency system") {
    Profile p = solve_profile(monatomic(), endstates(2.0 / 3.0, 0.4));
    const double h = 1e-2;
    auto tm = [&](double x) { return translational_mode(p, x); };
    for (double x : {-2.0, 0.0, 1.5}) {
        CVec w = tm(x);
        CVec dw = (8.0 * (tm(x + h) - tm(x - h)) - (tm(x + 2 * h) - tm(x - 2 * h))) / (12 * h);
        CVec res = dw - standard_matrix(p.params, p.at(x), 0.0, 0.0) * w;
        CHECK(res.norm() / dw.norm() < 1e-6);
    }
}
