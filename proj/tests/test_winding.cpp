#include "shockstab/winding.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace shockstab;

namespace {
std::vector<cplx> circle(const std::function<cplx(cplx)>& f, cplx c, double r, int n) {
    std::vector<cplx> out;
    for (int i = 0; i < n; ++i) out.push_back(f(c + r * std::polar(1.0, 2 * std::numbers::pi * i / n)));
    return out;
}

// Contour driver with a trivial (constant) basis path, for scalar oracle functions.
ContourResult oracle_contour(const std::function<cplx(cplx)>& f, const ContourPath& path, double tol = 0.2) {
    CMat lim = CMat::Zero(7, 7);
    for (int i = 0; i < 7; ++i) lim(i, i) = 3.0 - i;
    BasisPath bp{[&](double) { return lim; }, [&](double) { return lim; }};
    InitialBases b{identity(7).leftCols(3), identity(7).rightCols(4)};
    ContourOptions o;
    o.tolerance = tol;
    return run_contour(path, bp, b, [&](double t, const InitialBases&) { return f(path.at(t)); }, o);
}
}  // namespace

TEST_CASE("argument principle on a single root") {
    cplx z0(0.2, 0.1);
    auto f = [&](cplx l) { return l - z0; };
    CHECK(winding_number(circle(f, 0, 1, 200)).winding == 1);
    CHECK(winding_number(circle(f, 2.0, 1, 200)).winding == 0);
    std::vector<cplx> with_zero{1.0, 0.0, cplx(0, 1)};
    CHECK_FALSE(winding_number(with_zero).conclusive);
}

TEST_CASE("winding of random rational functions matches the root count") {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> u(-1.6, 1.6);
    int checked = 0;
    for (int t = 0; t < 100; ++t) {
        std::vector<cplx> zeros, poles;
        int nz = 1 + t % 4;
        for (int i = 0; i < nz; ++i) zeros.emplace_back(u(rng), u(rng));
        for (int i = 0; i < 2; ++i) poles.push_back(std::polar(1.8 + std::abs(u(rng)), 3 * u(rng)));
        int inside = 0;
        bool near = false;
        for (cplx z : zeros) {
            inside += std::abs(z) < 1.0;
            near = near || std::abs(std::abs(z) - 1.0) < 0.02;
        }
        if (near) continue;
        auto f = [&](cplx l) {
            cplx v = 1;
            for (cplx z : zeros) v *= l - z;
            for (cplx p : poles) v /= l - p;
            return v;
        };
        WindingCount w = winding_number(circle(f, 0, 1, 4000));
        CHECK(w.conclusive);
        CHECK(w.winding == inside);
        ++checked;
    }
    CHECK(checked > 80);
}

TEST_CASE("contour driver: reflection, refinement and notch") {
    ContourPath path;
    path.radius = 3;
    // real coefficients, roots at 1 ± i (inside) and 5 (outside)
    auto f = [](cplx l) { return (l - cplx(1, 1)) * (l - cplx(1, -1)) * (l - 5.0); };
    ContourResult r = oracle_contour(f, path);
    CHECK(r.conclusive);
    CHECK(r.winding == 2);
    CHECK(r.max_jump <= 0.2);
    CHECK(r.junction_jump < 1e-12);
    // direct evaluation on the whole closed contour
    std::vector<cplx> direct;
    for (cplx l : r.lambda) direct.push_back(f(l));
    CHECK(winding_number(direct).winding == r.winding);
    // tighter tolerance refines more but keeps the count
    ContourResult fine = oracle_contour(f, path, 0.05);
    CHECK(fine.D.size() > r.D.size());
    CHECK(fine.winding == r.winding);
    // smooth function needing no refinement
    ContourResult smooth = oracle_contour([](cplx l) { return l + 10.0; }, path);
    CHECK(smooth.refinements == 0);
    CHECK(smooth.winding == 0);
    // a notch excludes a root at the origin
    path.notch = 0.05;
    ContourResult notched = oracle_contour([](cplx l) { return l * (l + 10.0); }, path);
    CHECK(notched.conclusive);
    CHECK(notched.winding == 0);
    for (cplx l : notched.lambda) CHECK(std::abs(l) >= 0.05 - 1e-12);
}

TEST_CASE("refinement budget") {
    ContourPath path;
    path.radius = 3;
    path.arc_points = 4;
    path.axis_points = 4;
    CMat lim = CMat::Zero(7, 7);
    for (int i = 0; i < 7; ++i) lim(i, i) = 3.0 - i;
    BasisPath bp{[&](double) { return lim; }, [&](double) { return lim; }};
    InitialBases b{identity(7).leftCols(3), identity(7).rightCols(4)};
    ContourOptions o;
    o.budget = 20;
    auto f = [&](double t, const InitialBases&) { return std::pow(path.at(t) + 0.1, 40); };
    ContourResult r = run_contour(path, bp, b, f, o);
    CHECK(r.budget_exhausted);
    CHECK_FALSE(r.conclusive);
}

TEST_CASE("slice plan") {
    Slice s = plan_slice(1.0, 100.0);
    CHECK(s.radius == 0.0);
    // r* = 16.3 at ξ̆ = 0.95 corresponds to r̆* = r*/(1 − ξ̆²); r* is given to 3 digits, so ξ to ≈ 0.02
    Slice a = plan_slice(0.95, 16.3 / (1 - 0.95 * 0.95));
    CHECK(std::abs(a.xi - 12.2778) < 0.02);
    CHECK(a.radius == doctest::Approx(1.1 * 16.3));
    Slice b = plan_slice(0.025, 250.8 / (1 - 0.025 * 0.025));
    CHECK(std::abs(b.xi - 0.3960) < 1e-3);
    CHECK(needs_notch(Formulation{Form::Standard}, 0.0));
    CHECK_FALSE(needs_notch(Formulation{Form::Modified}, 0.0));
    CHECK_FALSE(needs_notch(Formulation{Form::Standard}, 0.3));
    CHECK(default_notch(monatomic()) == 0.05);
    CHECK(default_notch(diatomic()) == 0.06);
}

TEST_CASE("Evans contours agree across formulations on a slice") {
    Profile p = solve_profile(monatomic(), endstates(2.0 / 3.0, 0.6));
    ContourPath path;
    path.radius = 3;
    std::vector<int> w;
    for (Formulation f : {Formulation{Form::Standard}, Formulation{Form::Balanced}, Formulation{Form::Modified},
                          Formulation{Form::Balanced, false}}) {
        ContourResult r = evans_contour(p, f, 0.4, path, {});
        CHECK(r.conclusive);
        w.push_back(r.winding);
    }
    for (int v : w) CHECK(v == 0);
}
