#include "shockstab/batch.hpp"
#include "shockstab/parallel.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

using namespace shockstab;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) pass = false;
        detail << (ok ? "" : "[x] ") << what << "; ";
    }
};

std::string f(const char* fmt, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, fmt, a, b, c);
    return buf;
}

bool within(double v, double target, double rel) { return std::abs(v - target) <= rel * std::abs(target); }

// 1. Mach tables
void mach_tables(Outcome& o) {
    const std::vector<std::pair<double, double>> mono{
        {0.26, 8.58}, {0.27, 6.10}, {0.28, 4.98}, {0.29, 4.32}, {0.30, 3.87}, {0.35, 2.74},
        {0.40, 2.23}, {0.45, 1.94}, {0.50, 1.73}, {0.55, 1.58}, {0.60, 1.46}, {0.65, 1.37},
        {0.70, 1.29}, {0.75, 1.22}, {0.80, 1.17}, {0.85, 1.12}, {0.90, 1.07}, {0.95, 1.03}};
    const std::vector<std::pair<double, double>> di{
        {0.167, 50.00}, {0.17, 15.81}, {0.18, 7.91}, {0.19, 5.98}, {0.20, 5.00}, {0.25, 3.16}, {0.30, 2.50},
        {0.35, 2.13},   {0.40, 1.89},  {0.45, 1.71}, {0.50, 1.58}, {0.55, 1.47}, {0.60, 1.39}, {0.65, 1.31},
        {0.70, 1.25},   {0.75, 1.20},  {0.80, 1.15}, {0.85, 1.10}, {0.90, 1.07}, {0.95, 1.03}};
    auto check = [&](double G, const std::vector<std::pair<double, double>>& table, const char* name) {
        int bad = 0;
        double worst = 0;
        std::string where;
        for (auto [u, m] : table) {
            double err = std::abs(*mach(G, u) - m);
            worst = std::max(worst, err);
            if (err > 0.01) {
                ++bad;
                where += f(" u=%.2f:%.3f", u, *mach(G, u));
            }
        }
        o.require(bad == 0, std::string(name) + f(" max |dM| %.3f, %g entries off", worst, bad) + where);
    };
    check(2.0 / 3.0, mono, "monatomic");
    check(0.4, di, "diatomic");
    // diagnostic only: the truncated value Γ = 0.666
    double worst = 0;
    for (auto [u, m] : mono) worst = std::max(worst, std::abs(*mach(0.666, u) - m));
    o.detail << f("(diagnostic: Gamma=0.666 gives max |dM| %.3f)", worst) << "; ";
}

// 2. Endstates
void endstate_values(Outcome& o) {
    ShockEndStates s = endstates(2.0 / 3.0, 0.3);
    o.require(std::abs(s.e_plus - 0.333) <= 1e-3, f("e+ = %.6f", s.e_plus));
    o.require(std::abs(s.c_plus - std::sqrt(0.37)) <= 1e-6, f("c+ - sqrt(0.37) = %.2e", s.c_plus - std::sqrt(0.37)));
    double worst = 0;
    for (double u : monatomic_u_grid()) {
        RHResiduals r = rh_residuals(endstates(2.0 / 3.0, u));
        worst = std::max({worst, std::abs(r.momentum), std::abs(r.energy)});
    }
    for (double u : diatomic_u_grid()) {
        RHResiduals r = rh_residuals(endstates(0.4, u));
        worst = std::max({worst, std::abs(r.momentum), std::abs(r.energy)});
    }
    o.require(worst < 1e-13, f("max RH residual %.2e", worst));
}

// 3. Profiles
void profiles(Outcome& o) {
    GasParams g = monatomic();
    double res = 0, bnd = 0, defect = 0;
    bool mono = true;
    for (double u : monatomic_u_grid()) {
        Profile p = solve_profile(g, endstates(g.gruneisen, u));
        res = std::max(res, p.ode_residual());
        bnd = std::max(bnd, p.diagnostics.boundary_mismatch);
        mono = mono && p.strictly_decreasing();
        // fourth-order stencil; a small step loses the weak-shock derivative to cancellation
        const double h = 1e-2;
        auto tm = [&](double x) { return translational_mode(p, x); };
        for (double x : {-1.5, -0.5, 0.0, 0.5, 1.5}) {
            CVec w = tm(x);
            CVec dw = (8.0 * (tm(x + h) - tm(x - h)) - (tm(x + 2 * h) - tm(x - 2 * h))) / (12 * h);
            if (dw.norm() < 1e-8) continue;
            CVec r = dw - standard_matrix(g, p.at(x), 0.0, 0.0) * w;
            defect = std::max(defect, r.norm() / dw.norm());
        }
    }
    o.require(res < 1e-6, f("max ODE residual %.2e", res));
    o.require(bnd < 1e-8, f("max boundary mismatch %.2e", bnd));
    o.require(mono, mono ? "u strictly decreasing" : "monotonicity violated");
    o.require(defect < 1e-6, f("translational-mode defect %.2e", defect));
}

// 4. Low-frequency study
void low_frequency(Outcome& o) {
    GasParams g = monatomic();
    LfOptions opts;
    opts.workers = default_workers();
    for (double u : {0.27, 0.6, 0.95}) {
        LfSummary s = rib_roast(solve_profile(g, endstates(g.gruneisen, u)), opts);
        int over = 0;
        for (const SpokeResult& sp : s.spokes) over += !sp.converged;
        o.require(s.all_converged, f("u+=%.2f max final ratio %.4f (%g spokes > 0.05)", u, s.max_final_ratio, over));
        o.require(s.min_abs_D > 0 && s.margin >= 10, f("u+=%.2f min|D| %.3e margin %.1f", u, s.min_abs_D, s.margin));
    }
    LfSummary s = rib_roast(solve_profile(g, endstates(g.gruneisen, 0.3)), opts);
    double e = s.glancing ? s.glancing->exponent : NAN;
    o.require(std::abs(e - 0.5) <= 0.15,
              f("u+=0.30 glancing exponent %.3f at theta=%.4f (theta*=%.4f)", e,
                s.spokes[static_cast<std::size_t>(s.glancing->nearest)].theta, s.glancing->theta_star));
}

// 5. Expanded study
void expanded(Outcome& o) {
    GasParams g = monatomic();
    LfOptions opts;
    opts.workers = default_workers();
    ExpandedResult r = expanded_study(solve_profile(g, endstates(g.gruneisen, 0.6)), 11, opts);
    o.require(r.min_abs_D > 0, f("min|D| %.3e over 11 phi values", r.min_abs_D));
    double worst_phi = 0, off_axis = 0;
    for (const LfSummary& s : r.per_phi) {
        if (s.max_final_ratio == r.max_final_ratio) worst_phi = s.phi;
        if (s.phi < 0.5 * std::numbers::pi - 1e-9) off_axis = std::max(off_axis, s.max_final_ratio);
    }
    o.require(r.max_final_ratio <= 0.005, f("max final ratio %.4f (at phi=%.3f)", r.max_final_ratio, worst_phi));
    o.detail << f("(diagnostic: max over phi < pi/2 is %.4f)", off_axis) << "; ";
}

// 6. Crude constants
void crude(Outcome& o) {
    GasParams g = monatomic();
    HfOptions opts;
    opts.x_points = 200;
    opts.s_points = 200;
    std::vector<double> xb{0.0};
    for (double x : xi_breve_grid()) xb.push_back(x);
    const std::vector<double>& us = monatomic_u_grid();
    std::vector<Profile> prof(us.size());
    parallel_for(us.size(), default_workers(), [&](std::size_t i) { prof[i] = solve_profile(g, endstates(g.gruneisen, us[i])); });
    std::vector<CrudeConstants> parts(us.size() * xb.size());
    parallel_for(parts.size(), default_workers(), [&](std::size_t k) {
        parts[k] = crude_constants(prof[k / xb.size()], xb[k % xb.size()], opts);
    });
    CrudeConstants c = combine(parts);
    finish_crude(c, opts.crude_r0);
    o.require(within(c.m0, 0.8130, 0.05), f("M0 %.4f (0.8130)", c.m0));
    o.require(within(c.m1, 2.0057, 0.05), f("M1 %.4f (2.0057)", c.m1));
    o.require(c.u_norm_sq <= 2.21 * 1.05, f("|U|^2 %.4f (<= 2.3205)", c.u_norm_sq));
    o.require(c.inv_delta <= 1.72 * 1.05, f("sup 1/delta %.4f (<= 1.806)", c.inv_delta));
    o.require(within(c.theta, 29.23, 0.10), f("|Theta| %.2f (29.23)", c.theta));
    o.require(within(c.r_crude, 40446, 0.10), f("r_crude %.0f (40446)", c.r_crude));
}

// 7. HF surface endpoints
void hf_endpoints(Outcome& o) {
    struct Case {
        GasParams g;
        double u, target;
        const char* name;
    };
    std::vector<Case> cases{{monatomic(), 0.25, 280, "monatomic strong"},
                            {monatomic(), 0.95, 32, "monatomic weak"},
                            {diatomic(), 0.167, 500, "diatomic strong"}};
    std::vector<double> r(cases.size());
    parallel_for(cases.size(), default_workers(), [&](std::size_t i) {
        const Case& c = cases[i];
        r[i] = tracking_bound(solve_profile(c.g, endstates(c.g.gruneisen, c.u)), 0.0).r_star;
    });
    for (std::size_t i = 0; i < cases.size(); ++i)
        o.require(within(r[i], cases[i].target, 0.2),
                  std::string(cases[i].name) + f(" r* %.1f (%.0f +-20%%)", r[i], cases[i].target));
}

// 8. Winding sample
void winding_sample(Outcome& o) {
    GasParams g = monatomic();
    std::vector<Formulation> forms{Formulation{Form::Balanced}, Formulation{Form::Standard},
                                   Formulation{Form::Modified}, Formulation{Form::Balanced, false}};
    const std::vector<double> us{0.27, 0.6, 0.75}, xbs{0.025, 0.5, 0.95};
    std::vector<Profile> prof(us.size());
    for (std::size_t i = 0; i < us.size(); ++i) prof[i] = solve_profile(g, endstates(g.gruneisen, us[i]));
    struct Job {
        std::size_t i;
        double xb;
        Formulation form;
        Slice s;
        ContourResult r;
    };
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < us.size(); ++i)
        for (double xb : xbs) {
            Slice s = plan_slice(xb, tracking_bound(prof[i], xb).r_breve_star);
            for (const Formulation& f : forms) jobs.push_back({i, xb, f, s, {}});
        }
    parallel_for(jobs.size(), default_workers(), [&](std::size_t k) {
        Job& j = jobs[k];
        ContourPath path;
        path.radius = j.s.radius;
        path.notch = needs_notch(j.form, j.s.xi) ? default_notch(g) : 0.0;
        j.r = evans_contour(prof[j.i], j.form, j.s.xi, path, {});
    });
    int max_points = 0;
    for (std::size_t k = 0; k < jobs.size(); k += forms.size()) {
        bool agree = true, zero = true, conclusive = true;
        std::string ws;
        for (std::size_t m = 0; m < forms.size(); ++m) {
            const ContourResult& r = jobs[k + m].r;
            agree = agree && r.winding == jobs[k].r.winding;
            zero = zero && r.winding == 0;
            conclusive = conclusive && r.conclusive;
            max_points = std::max(max_points, static_cast<int>(r.D.size()));
            ws += std::to_string(r.winding) + (r.conclusive ? "" : "?");
        }
        o.require(agree && zero && conclusive,
                  f("u+=%.2f xi_b=%.3f R=%.1f", us[jobs[k].i], jobs[k].xb, jobs[k].s.radius) + " windings " + ws);
    }
    o.detail << "max points per contour " << max_points << "; ";
}

// 9. Property suites
void properties(Outcome& o) {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> u01(0, 1);
    std::normal_distribution<double> nd;
    auto rmat = [&](int n) {
        CMat m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = cplx(nd(rng), nd(rng));
        return m;
    };

    // Vieta
    double vieta = 0;
    int vieta_cases = 0;
    for (int t = 0; t < 1000; ++t) {
        double mm = 2 * u01(rng), mp = 2 * u01(rng), pm = 2 * u01(rng) + 1e-3, pp = 2 * u01(rng), d = 10 * u01(rng);
        ZetaRoots z = zeta_roots(d, mm, mp, pm, pp);
        if (!z.condition) continue;
        ++vieta_cases;
        vieta = std::max({vieta, std::abs(z.zeta_minus + z.zeta_plus + (mm + pp - d) / pm) / std::abs((mm + pp - d) / pm),
                          std::abs(z.zeta_minus * z.zeta_plus - mp / pm) / (mp / pm)});
    }
    o.require(vieta < 1e-10, f("Vieta max rel err %.1e over %g real-root cases", vieta, vieta_cases));

    // winding oracle
    int wrong = 0;
    for (int t = 0; t < 100; ++t) {
        std::vector<cplx> zs;
        int inside = 0;
        for (int i = 0; i < 1 + t % 4; ++i) {
            cplx z;
            do z = cplx(3.2 * u01(rng) - 1.6, 3.2 * u01(rng) - 1.6);
            while (std::abs(std::abs(z) - 1) < 0.02);
            zs.push_back(z);
            inside += std::abs(z) < 1;
        }
        cplx pole = std::polar(2.0 + u01(rng), 6.3 * u01(rng));
        std::vector<cplx> d;
        for (int i = 0; i < 4000; ++i) {
            cplx l = std::polar(1.0, 2 * std::numbers::pi * i / 4000);
            cplx v = 1.0 / (l - pole);
            for (cplx z : zs) v *= l - z;
            d.push_back(v);
        }
        WindingCount w = winding_number(d);
        wrong += !(w.conclusive && w.winding == inside);
    }
    o.require(wrong == 0, f("winding oracle %g/100 mismatches", wrong));

    // Kato
    CMat lim = rmat(5);
    CMat p = projector_largest_real(lim, 2);
    CMat r0 = p * rmat(5).leftCols(2);
    double kato = (kato_transport([&](double) { return p; }, 0, 1, r0) - r0).norm();
    auto rot = [](double t) {
        CMat v = CMat::Zero(3, 1);
        v(0, 0) = std::cos(t);
        v(1, 0) = std::sin(t);
        return CMat(v * v.adjoint());
    };
    CMat e1 = CMat::Zero(3, 1);
    e1(0, 0) = 1;
    CMat rr = kato_transport(rot, 0, 1.2, e1, 0.01);
    kato = std::max({kato, std::abs(rr(0, 0) - std::cos(1.2)), std::abs(rr(1, 0) - std::sin(1.2))});
    o.require(kato <= 1e-7, f("Kato constant/rotation error %.1e", kato));

    // Lyapunov
    double lyap = 0;
    for (int t = 0; t < 100; ++t) {
        int n = 2 + t % 5;
        CMat n0 = rmat(n);
        CVec ev = eigenvalues(n0);
        double s = -1e300;
        for (int i = 0; i < n; ++i) s = std::max(s, ev(i).real());
        CMat nm = n0 - (s + 0.1) * identity(n);
        CMat q = rmat(n);
        q = q * q.adjoint() + identity(n);
        CMat pl = lyapunov_solve(nm, q);
        lyap = std::max(lyap, (pl * nm + nm.adjoint() * pl + q).norm() / q.norm());
    }
    o.require(lyap <= 1e-10, f("Lyapunov residual %.1e", lyap));

    // cascade reconstruction
    GasParams g = monatomic();
    std::vector<Profile> prof;
    for (double u : {0.25, 0.5, 0.9}) prof.push_back(solve_profile(g, endstates(g.gruneisen, u)));
    double rec = 0;
    for (int t = 0; t < 100; ++t) {
        const Profile& pr = prof[t % 3];
        ProfilePoint pp = pr.at(8 * u01(rng) - 4);
        ParabolicPoint pt{u01(rng), std::pow(10.0, 4 * u01(rng))};
        Cascade c = cascade(g, pp, pt);
        double sr = std::sqrt(pt.r_breve);
        CMat d = sr * c.d_half + c.d_zero + c.d_minus_half / sr;
        CMat um = u_matrix(c.psi), up = CMat::Zero(7, 7);
        up.block(1, 0, 6, 1) = c.psi_x;
        CMat cm = um * d * um.inverse() + up * um.inverse();
        CMat tm = identity(7);
        for (int i = 4; i < 7; ++i) tm(i, i) = 1 / sr;
        CMat s = identity(7), sp = CMat::Zero(7, 7);
        s(0, 4) = -pp.rho;
        sp(0, 4) = -pp.rho_x;
        CMat a = s * (tm * cm * tm.inverse()) * s.inverse() + sp * s.inverse();
        CMat a0 = standard_matrix(g, pp, pt.lambda(), pt.xi());
        rec = std::max(rec, (a - a0).cwiseAbs().maxCoeff() / a0.cwiseAbs().maxCoeff());
    }
    o.require(rec <= 1e-10, f("cascade reconstruction %.1e", rec));

    // β hyperbolicity
    std::vector<double> rho, xi, zeta;
    const double rmax = 1 / u_star(g.gruneisen);
    for (int i = 0; i < 50; ++i) rho.push_back(1 + (rmax - 1) * i / 49.0);
    for (int i = 0; i < 50; ++i) xi.push_back(i / 49.0);
    for (int i = 0; i < 20; ++i) zeta.push_back(-2 + 4 * i / 19.0);
    BetaCheck b = beta_check(g, rho, xi, zeta);
    o.require(b.min_abs_re > 0 && b.min_margin > 0,
              f("beta min|Re| %.3e, form margin %.3e (50x50x20, e-=0 included)", b.min_abs_re, b.min_margin));

    // matrix-norm closed form
    double mn = 0;
    for (double r : {0.3, 1.0, 7.0, 1e3, 1e5}) {
        CMat m = identity(6);
        for (int i = 0; i < 3; ++i) m(i, 3 + i) = 1 / std::sqrt(r);
        double s = norm2(m);
        mn = std::max(mn, std::abs(shear_norm_sq(r) - s * s) / (s * s));
    }
    for (int t = 0; t < 50; ++t) {
        CVec psi(6);
        for (int i = 0; i < 6; ++i) psi(i) = cplx(nd(rng), nd(rng)) * (0.2 * t);
        double s = norm2(u_matrix(psi));
        mn = std::max(mn, std::abs(u_norm_sq(psi.norm()) - s * s) / (s * s));
    }
    o.require(mn <= 1e-12, f("matrix-norm closed form vs SVD %.1e", mn));
}

// 10. Full-grid enumeration without evaluation
void full_grid_plan(Outcome& o) {
    auto dir = std::filesystem::temp_directory_path() / "shockstab-acceptance-dry";
    std::filesystem::remove_all(dir);
    for (const char* gas : {"monatomic", "diatomic"}) {
        BatchConfig c = preset_config(gas);
        c.output_dir = dir;
        std::vector<SliceTask> t = dry_run(c);
        RunRecord r = collect(c);
        bool untouched = !std::filesystem::exists(run_directory(c) / "slices") && r.missing.size() == t.size() &&
                         r.verdict == Verdict::Inconclusive;
        std::size_t per = t.size() / c.formulations.size();
        o.require(untouched && std::filesystem::exists(run_directory(c) / "plan.json"),
                  std::string(gas) + f(" planned %g slices (%g per formulation, %g formulations), none evaluated",
                                       double(t.size()), double(per), double(c.formulations.size())));
    }
    std::filesystem::remove_all(dir);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance checks"};
    int only = 0;
    app.add_option("--criterion", only, "run a single criterion (1-10)");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> all{
        {"Mach tables", mach_tables},
        {"endstate spot values", endstate_values},
        {"profile quality", profiles},
        {"low-frequency study", low_frequency},
        {"expanded u+=0.6 study", expanded},
        {"HF crude constants", crude},
        {"HF surface endpoints", hf_endpoints},
        {"winding sample", winding_sample},
        {"property suites", properties},
        {"full-grid dry run", full_grid_plan}};
    bool ok = true;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (only && static_cast<int>(i) + 1 != only) continue;
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            all[i].second(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("AC%zu %s  %s: %s(%.1f s)\n", i + 1, o.pass ? "PASS" : "FAIL", all[i].first,
                    o.detail.str().c_str(), secs);
        std::fflush(stdout);
        ok = ok && o.pass;
    }
    return ok ? 0 : 1;
}
