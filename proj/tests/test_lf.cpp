#include "shockstab/lf_study.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace shockstab;

TEST_CASE("glancing angle") {
    ShockEndStates e = endstates(2.0 / 3.0, 0.3);
    double t = glancing_angle(e);
    CHECK(t == doctest::Approx(std::atan(std::sqrt(0.28))).epsilon(1e-6));
    CHECK(std::abs(t - 0.4867) < 1e-4);
    // 1001 spokes: θ_k = kπ/2000
    int k = static_cast<int>(std::lround(t / (std::numbers::pi / 2000)));
    CHECK(k == 310);
    CHECK(std::abs(k * std::numbers::pi / 2000 - 0.4869) < 1e-4);
    e.c_plus = e.u_plus;
    CHECK(glancing_angle(e) == doctest::Approx(0.0));
    e.c_plus = 0.5 * e.u_plus;
    CHECK_THROWS_AS(glancing_angle(e), DomainError);
}

TEST_CASE("error ratio") {
    CHECK(error_ratio(2.0, 2.0, 0.1, 0.09) == 0.0);
    // D = D₀(1 + ř): ratio → 2ř/(1+ř) as the step shrinks
    for (double r : {0.1, 0.01, 0.001}) {
        double r2 = r * (1 - 1e-6);
        CHECK(error_ratio(1 + r, 1 + r2, r, r2) == doctest::Approx(2 * r / (1 + r)).epsilon(1e-5));
        // D = D₀(1 + √ř): the true distance √ř/(1+√ř) is covered by the factor 2
        double q = error_ratio(1 + std::sqrt(r), 1 + std::sqrt(r2), r, r2);
        CHECK(q == doctest::Approx(std::sqrt(r) / (1 + std::sqrt(r))).epsilon(1e-5));
    }
    CHECK_THROWS_AS(error_ratio(0.0, 1.0, 0.1, 0.09), NumericError);
}

TEST_CASE("radial mesh") {
    auto m = radial_mesh(0.1, 0.001, 61);
    CHECK(m.size() == 61);
    CHECK(m.front() == 0.1);
    CHECK(m.back() == 0.001);
    for (std::size_t i = 1; i < m.size(); ++i) CHECK(m[i] < m[i - 1]);
    CHECK(m[1] / m[0] == doctest::Approx(m[60] / m[59]));
    CHECK_THROWS(radial_mesh(0.001, 0.1, 10));
}

TEST_CASE("glancing fit recovers a square-root singularity") {
    std::vector<SpokeResult> s(41);
    const double star = 16 * std::numbers::pi / 80;
    for (int k = 0; k < 41; ++k) {
        s[k].theta = k * std::numbers::pi / 80;
        s[k].D = {cplx(1.0 + std::sqrt(std::abs(s[k].theta - star)), 0.2)};
    }
    auto g = fit_glancing(s, star);
    REQUIRE(g.has_value());
    CHECK(g->nearest == 16);
    CHECK(g->exponent == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("single spoke and the phi = pi/2 slice of the expanded study") {
    GasParams g = monatomic();
    Profile p = solve_profile(g, endstates(g.gruneisen, 0.6));
    LfOptions o;
    o.spokes = 1;
    o.radial_points = 11;
    LfSummary one = rib_roast(p, o);
    REQUIRE(one.spokes.size() == 1);
    CHECK(one.spokes[0].theta == 0.0);
    CHECK(one.spokes[0].xi_c == cplx(1.0));
    CHECK(one.min_abs_D > 0);

    o.spokes = 5;
    LfSummary rr = rib_roast(p, o);
    ExpandedResult ex = expanded_study(p, 3, o);
    REQUIRE(ex.per_phi.size() == 3);
    CHECK(ex.per_phi[2].phi == doctest::Approx(std::numbers::pi / 2));
    for (int k = 0; k < 5; ++k)
        CHECK(std::abs(ex.per_phi[2].spokes[k].D.back() - rr.spokes[k].D.back()) <=
              1e-12 * std::abs(rr.spokes[k].D.back()));
}
