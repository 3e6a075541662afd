#include "shockstab/winding.hpp"

#include "shockstab/parallel.hpp"

#include <cmath>
#include <numbers>

namespace shockstab {

double winding_real(const std::vector<cplx>& closed) {
    double total = 0;
    for (std::size_t i = 0; i < closed.size(); ++i) {
        cplx a = closed[i], b = closed[(i + 1) % closed.size()];
        total += std::arg(b / a);
    }
    return total / (2 * std::numbers::pi);
}

WindingCount winding_number(const std::vector<cplx>& closed, double integrality_tol) {
    WindingCount w;
    for (cplx z : closed)
        if (z == cplx(0.0) || !std::isfinite(z.real()) || !std::isfinite(z.imag())) return w;
    double x = winding_real(closed);
    w.winding = static_cast<int>(std::lround(x));
    w.residual = std::abs(x - w.winding);
    w.conclusive = w.residual < integrality_tol;
    return w;
}

namespace {
struct Shares {
    double arc, axis, notch;
};
Shares shares(const ContourPath& p) {
    double na = p.arc_points, nx = p.axis_points, nn = p.notch > 0 ? p.notch_points : 0;
    double tot = na + nx + nn;
    return {na / tot, nx / tot, nn / tot};
}
}  // namespace

cplx ContourPath::at(double t) const {
    const double half_pi = std::numbers::pi / 2;
    Shares s = shares(*this);
    if (t <= s.arc) return radius * std::polar(1.0, half_pi * t / s.arc);
    if (t <= s.arc + s.axis || notch <= 0) {
        double w = std::min(1.0, (t - s.arc) / s.axis);
        return {0.0, radius - (radius - notch) * w};
    }
    double w = std::min(1.0, (t - s.arc - s.axis) / s.notch);
    if (w >= 1.0) return notch;
    return notch * std::polar(1.0, half_pi * (1.0 - w));
}

std::vector<double> ContourPath::base_parameters() const {
    int total = arc_points + axis_points + (notch > 0 ? notch_points : 0);
    std::vector<double> t(static_cast<std::size_t>(total) + 1);
    for (int i = 0; i <= total; ++i) t[static_cast<std::size_t>(i)] = static_cast<double>(i) / total;
    return t;
}

ContourResult run_contour(const ContourPath& path, const BasisPath& bases_path, const InitialBases& anchor,
                          const HalfEvaluator& eval, const ContourOptions& opts) {
    ContourResult res;
    std::vector<double> t = path.base_parameters();
    std::vector<InitialBases> bases(t.size());
    bases[0] = anchor;
    for (std::size_t i = 1; i < t.size(); ++i) bases[i] = transport_bases(bases_path, t[i - 1], t[i], bases[i - 1]);
    std::vector<cplx> d(t.size());
    parallel_for(t.size(), opts.workers, [&](std::size_t i) { d[i] = eval(t[i], bases[i]); });

    auto jump = [](cplx a, cplx b) { return std::abs(b - a) / std::min(std::abs(a), std::abs(b)); };
    while (true) {
        std::vector<std::size_t> bad;
        for (std::size_t i = 0; i + 1 < t.size(); ++i)
            if (!(jump(d[i], d[i + 1]) <= opts.tolerance)) bad.push_back(i);
        if (bad.empty()) break;
        if (2 * (t.size() + bad.size()) > static_cast<std::size_t>(opts.budget)) {
            res.budget_exhausted = true;
            res.message = "refinement budget exhausted";
            break;
        }
        std::vector<double> nt;
        std::vector<InitialBases> nb;
        std::vector<cplx> nd;
        std::vector<std::size_t> fresh;
        std::size_t k = 0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            nt.push_back(t[i]);
            nb.push_back(bases[i]);
            nd.push_back(d[i]);
            if (k < bad.size() && bad[k] == i) {
                double tm = 0.5 * (t[i] + t[i + 1]);
                nt.push_back(tm);
                nb.push_back(transport_bases(bases_path, t[i], tm, bases[i]));
                nd.push_back(0.0);
                fresh.push_back(nt.size() - 1);
                ++k;
            }
        }
        parallel_for(fresh.size(), opts.workers, [&](std::size_t j) { nd[fresh[j]] = eval(nt[fresh[j]], nb[fresh[j]]); });
        t.swap(nt);
        bases.swap(nb);
        d.swap(nd);
        ++res.refinements;
    }

    res.t = t;
    for (std::size_t i = 0; i < t.size(); ++i) {
        res.lambda.push_back(path.at(t[i]));
        res.D.push_back(d[i]);
    }
    for (std::size_t i = t.size(); i-- > 0;) {
        res.lambda.push_back(std::conj(path.at(t[i])));
        res.D.push_back(std::conj(d[i]));
    }
    const std::size_t m = res.D.size();
    for (std::size_t i = 0; i < m; ++i) res.max_jump = std::max(res.max_jump, jump(res.D[i], res.D[(i + 1) % m]));
    res.junction_jump = std::max(jump(res.D[t.size() - 1], res.D[t.size()]), jump(res.D[m - 1], res.D[0]));
    WindingCount w = winding_number(res.D, opts.integrality_tol);
    res.winding = w.winding;
    res.winding_residual = w.residual;
    res.conclusive = w.conclusive && !res.budget_exhausted && res.max_jump <= opts.tolerance;
    if (!w.conclusive && res.message.empty()) res.message = "winding sum not close to an integer";
    if (w.conclusive && res.max_jump > opts.tolerance && res.message.empty())
        res.message = "junction jump above tolerance";
    return res;
}

namespace {
EvansSystem slice_system(const Profile& profile, const Formulation& form, double xi, cplx lambda) {
    if (lambda == cplx(0.0) && xi == 0.0) {
        // the modified chart extends continuously to the origin along ξ = 0
        if (form.form == Form::Modified) return EvansSystem(profile, form.coords, ChartPoint{0.0, 1.0, 0.0});
        throw DomainError("formulation is singular at the origin; use a notch");
    }
    return EvansSystem(profile, form, Frequency{xi, lambda});
}
}  // namespace

ContourResult evans_contour(const Profile& profile, const Formulation& form, double xi, const ContourPath& path,
                            const ContourOptions& opts, const EngineOptions& engine) {
    // Balanced bases are the standard ones pushed through T⁻¹ = diag(ř⁻¹ I₄, I₃); transporting the
    // balanced projectors directly picks up holonomy since ř is not analytic in λ.
    const bool mapped = form.form == Form::Balanced;
    Formulation transport_form = form;
    if (mapped) transport_form.form = Form::Standard;
    BasisPath bp{[&](double t) { return slice_system(profile, transport_form, xi, path.at(t)).limit(Side::Minus); },
                 [&](double t) { return slice_system(profile, transport_form, xi, path.at(t)).limit(Side::Plus); }};
    InitialBases anchor = anchor_bases(slice_system(profile, transport_form, xi, path.at(0.0)));
    HalfEvaluator ev = [&](double t, const InitialBases& b) {
        InitialBases use = b;
        if (mapped) {
            const double r = Frequency{xi, path.at(t)}.r_check();
            use.minus.topRows(4) /= r;
            use.plus.topRows(4) /= r;
        }
        EvansValue v = evans(slice_system(profile, form, xi, path.at(t)), use, engine);
        return form.radial ? v.D : v.D_no_radial;
    };
    return run_contour(path, bp, anchor, ev, opts);
}

double default_notch(const GasParams& g) { return g.gruneisen < 0.5 ? 0.06 : 0.05; }

bool needs_notch(const Formulation& form, double xi) { return xi == 0.0 && form.form != Form::Modified; }

Slice plan_slice(double xi_breve, double r_breve_star, double safety) {
    return {xi_breve, std::sqrt(r_breve_star) * xi_breve, safety * r_breve_star * (1.0 - xi_breve * xi_breve)};
}

}  // namespace shockstab
