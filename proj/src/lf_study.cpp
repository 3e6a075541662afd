#include "shockstab/lf_study.hpp"

#include "shockstab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace shockstab {

double glancing_angle(const ShockEndStates& ends) {
    const double d = ends.c_plus * ends.c_plus - ends.u_plus * ends.u_plus;
    if (d < 0) throw DomainError("downstream state is supersonic; no glancing angle");
    return std::atan(std::sqrt(d));
}

double error_ratio(cplx d_j, cplx d_next, double r_j, double r_next) {
    const double a = std::abs(d_j);
    if (!(a > 1e-300)) throw NumericError("error ratio undefined at a vanishing Evans value");
    return 2.0 * (std::abs(d_next - d_j) / a) / (std::abs(r_next - r_j) / r_j);
}

std::vector<double> radial_mesh(double r_out, double r_in, int points) {
    if (!(r_out > r_in && r_in > 0) || points < 2) throw DomainError("radial mesh needs r_out > r_in > 0");
    std::vector<double> r(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) r[static_cast<std::size_t>(i)] = r_out * std::pow(r_in / r_out, double(i) / (points - 1));
    r.back() = r_in;
    return r;
}

double default_lf_radius(const GasParams& g) { return g.gruneisen < 0.5 ? 0.12 : 0.1; }

std::optional<GlancingInfo> fit_glancing(const std::vector<SpokeResult>& spokes, double theta_star, int each_side) {
    if (spokes.size() < 3) return std::nullopt;
    GlancingInfo gi;
    gi.theta_star = theta_star;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < spokes.size(); ++i)
        if (std::abs(spokes[i].theta - theta_star) < best) {
            best = std::abs(spokes[i].theta - theta_star);
            gi.nearest = static_cast<int>(i);
        }
    const SpokeResult& c = spokes[static_cast<std::size_t>(gi.nearest)];
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (int off = -each_side; off <= each_side; ++off) {
        int j = gi.nearest + off;
        if (off == 0 || j < 0 || j >= static_cast<int>(spokes.size())) continue;
        const SpokeResult& s = spokes[static_cast<std::size_t>(j)];
        double x = std::log(std::abs(s.theta - c.theta));
        double y = std::log(std::abs(s.D.back() - c.D.back()));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) return std::nullopt;
    gi.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return gi;
}

LfSummary rib_roast(const Profile& profile, const LfOptions& opts, double phi) {
    if (opts.spokes < 1) throw DomainError("need at least one spoke");
    LfSummary out;
    out.u_plus = profile.ends.u_plus;
    out.phi = phi;
    const cplx rot = std::polar(1.0, phi);
    const int n = opts.spokes;
    auto theta_of = [&](int k) { return n == 1 ? 0.0 : k * std::numbers::pi / (2.0 * (n - 1)); };
    auto system_at = [&](double t) {
        return EvansSystem(profile, opts.coords, ChartPoint{opts.r_out, std::sin(t) * rot, std::cos(t)});
    };

    // angular sweep at r_out
    BasisPath path{[&](double t) { return system_at(t).limit(Side::Minus); },
                   [&](double t) { return system_at(t).limit(Side::Plus); }};
    std::vector<InitialBases> start(static_cast<std::size_t>(n));
    start[0] = anchor_bases(system_at(0.0));
    for (int k = 1; k < n; ++k)
        start[static_cast<std::size_t>(k)] =
            transport_bases(path, theta_of(k - 1), theta_of(k), start[static_cast<std::size_t>(k - 1)]);

    const std::vector<double> mesh = radial_mesh(opts.r_out, opts.r_in, opts.radial_points);
    out.spokes.resize(static_cast<std::size_t>(n));
    parallel_for(static_cast<std::size_t>(n), opts.workers, [&](std::size_t k) {
        SpokeResult& s = out.spokes[k];
        s.k = static_cast<int>(k);
        s.theta = theta_of(static_cast<int>(k));
        s.lambda_c = std::sin(s.theta) * rot;
        s.xi_c = std::cos(s.theta);
        auto samples = radial_continue(profile, opts.coords, s.lambda_c, s.xi_c, mesh, start[k], opts.engine);
        s.min_abs_D = std::numeric_limits<double>::infinity();
        for (const auto& p : samples) {
            s.r.push_back(p.r);
            s.D.push_back(p.D);
            s.min_abs_D = std::min(s.min_abs_D, std::abs(p.D));
        }
        for (std::size_t j = 0; j + 1 < s.D.size(); ++j) {
            double q = error_ratio(s.D[j], s.D[j + 1], s.r[j], s.r[j + 1]);
            s.max_ratio = std::max(s.max_ratio, q);
            s.final_ratio = q;
        }
        s.converged = s.final_ratio <= opts.threshold;
    });

    out.min_abs_D = std::numeric_limits<double>::infinity();
    out.margin = std::numeric_limits<double>::infinity();
    out.all_converged = true;
    for (const SpokeResult& s : out.spokes) {
        out.max_final_ratio = std::max(out.max_final_ratio, s.final_ratio);
        out.max_ratio = std::max(out.max_ratio, s.max_ratio);
        out.min_abs_D = std::min(out.min_abs_D, s.min_abs_D);
        out.all_converged = out.all_converged && s.converged;
        double dist = s.final_ratio * std::abs(s.D.back());
        out.margin = std::min(out.margin, dist > 0 ? s.min_abs_D / dist : std::numeric_limits<double>::infinity());
    }
    const ShockEndStates& e = profile.ends;
    if (e.c_plus > e.u_plus) out.glancing = fit_glancing(out.spokes, glancing_angle(e));
    return out;
}

ExpandedResult expanded_study(const Profile& profile, int phi_values, const LfOptions& opts) {
    if (phi_values < 2) throw DomainError("expanded study needs at least two phi values");
    ExpandedResult r;
    r.min_abs_D = std::numeric_limits<double>::infinity();
    r.all_converged = true;
    for (int i = 0; i < phi_values; ++i) {
        double phi = 0.5 * std::numbers::pi * i / (phi_values - 1);
        LfSummary s = rib_roast(profile, opts, phi);
        r.max_final_ratio = std::max(r.max_final_ratio, s.max_final_ratio);
        r.min_abs_D = std::min(r.min_abs_D, s.min_abs_D);
        r.all_converged = r.all_converged && s.all_converged;
        r.per_phi.push_back(std::move(s));
    }
    return r;
}

}  // namespace shockstab
