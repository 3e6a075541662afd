#include "shockstab/io.hpp"

#include <fstream>
#include <sstream>

namespace shockstab {

namespace {
json complex_list(const std::vector<cplx>& z) {
    json re = json::array(), im = json::array();
    for (cplx v : z) {
        re.push_back(v.real());
        im.push_back(v.imag());
    }
    return {{"re", re}, {"im", im}};
}
}  // namespace

json to_json(const GasParams& g) {
    return {{"gruneisen", g.gruneisen}, {"mu", g.mu}, {"eta", g.eta}, {"nu", g.nu}};
}

GasParams gas_from_json(const json& j) {
    GasParams g;
    g.gruneisen = j.at("gruneisen").get<double>();
    g.mu = j.at("mu").get<double>();
    g.eta = j.at("eta").get<double>();
    g.nu = j.at("nu").get<double>();
    g.validate();
    return g;
}

json to_json(const Profile& p) {
    const ProfileDiagnostics& d = p.diagnostics;
    return {{"gas", to_json(p.params)},
            {"u_plus", p.ends.u_plus},
            {"L", p.L},
            {"x", p.grid},
            {"u", p.u_hat},
            {"e", p.e_hat},
            {"u_x", p.u_hat_x},
            {"e_x", p.e_hat_x},
            {"diagnostics",
             {{"residual", d.residual},
              {"boundary_mismatch", d.boundary_mismatch},
              {"nodes", d.nodes},
              {"newton_iterations", d.newton_iterations},
              {"refinements", d.refinements},
              {"monotone", d.monotone},
              {"initial_guess", d.initial_guess}}}};
}

Profile profile_from_json(const json& j) {
    Profile p;
    p.params = gas_from_json(j.at("gas"));
    p.ends = endstates(p.params.gruneisen, j.at("u_plus").get<double>());
    p.L = j.at("L").get<double>();
    p.grid = j.at("x").get<std::vector<double>>();
    p.u_hat = j.at("u").get<std::vector<double>>();
    p.e_hat = j.at("e").get<std::vector<double>>();
    p.u_hat_x = j.at("u_x").get<std::vector<double>>();
    p.e_hat_x = j.at("e_x").get<std::vector<double>>();
    const std::size_t n = p.grid.size();
    if (n < 2 || p.u_hat.size() != n || p.e_hat.size() != n || p.u_hat_x.size() != n || p.e_hat_x.size() != n)
        throw DomainError("profile file has inconsistent node arrays");
    if (j.contains("diagnostics")) {
        const json& d = j["diagnostics"];
        p.diagnostics.residual = d.value("residual", 0.0);
        p.diagnostics.boundary_mismatch = d.value("boundary_mismatch", 0.0);
        p.diagnostics.nodes = d.value("nodes", static_cast<int>(n));
        p.diagnostics.newton_iterations = d.value("newton_iterations", 0);
        p.diagnostics.refinements = d.value("refinements", 0);
        p.diagnostics.monotone = d.value("monotone", false);
        p.diagnostics.initial_guess = d.value("initial_guess", std::string());
    }
    p.build_pseudo_lagrangian();
    return p;
}

void save_profile(const Profile& p, const std::filesystem::path& file) { write_atomic(file, to_json(p).dump()); }

Profile load_profile(const std::filesystem::path& file) { return profile_from_json(read_json(file)); }

json to_json(const Formulation& f) {
    return {{"form", to_string(f.form)},
            {"radial", f.radial},
            {"coords", f.coords == Coordinates::PseudoLagrangian ? "pseudo-lagrangian" : "eulerian"}};
}

Formulation formulation_from_json(const json& j) {
    Formulation f;
    f.form = parse_form(j.at("form").get<std::string>());
    f.radial = j.value("radial", true);
    std::string c = j.value("coords", std::string("pseudo-lagrangian"));
    if (c == "eulerian")
        f.coords = Coordinates::Eulerian;
    else if (c == "pseudo-lagrangian")
        f.coords = Coordinates::PseudoLagrangian;
    else
        throw DomainError("unknown coordinates '" + c + "'");
    return f;
}

json to_json(const TrackingBound& b) {
    const TrackingCoeffs& k = b.coeffs;
    return {{"u_plus", b.u_plus},
            {"xi_breve", b.xi_breve},
            {"delta", b.delta},
            {"a", k.a},
            {"b", k.b},
            {"c", k.c},
            {"d", k.d},
            {"e", k.e},
            {"f", k.f},
            {"r_breve_crude", b.r_breve_crude},
            {"r_breve_lower", b.r_breve_lower},
            {"r_breve_star", b.r_breve_star},
            {"r_star", b.r_star},
            {"xi_slice", b.xi_slice},
            {"block_residual", b.block_residual}};
}

json to_json(const LfSummary& s, bool with_samples) {
    json spokes = json::array();
    for (const SpokeResult& sp : s.spokes) {
        json o{{"k", sp.k},
               {"theta", sp.theta},
               {"final_ratio", sp.final_ratio},
               {"max_ratio", sp.max_ratio},
               {"min_abs_D", sp.min_abs_D},
               {"converged", sp.converged},
               {"D_re", sp.D.back().real()},
               {"D_im", sp.D.back().imag()}};
        if (with_samples) {
            o["r"] = sp.r;
            o["D"] = complex_list(sp.D);
        }
        spokes.push_back(std::move(o));
    }
    json out{{"u_plus", s.u_plus},
             {"phi", s.phi},
             {"max_final_ratio", s.max_final_ratio},
             {"max_ratio", s.max_ratio},
             {"min_abs_D", s.min_abs_D},
             {"margin", s.margin},
             {"all_converged", s.all_converged},
             {"spokes", spokes}};
    if (s.glancing)
        out["glancing"] = {{"theta_star", s.glancing->theta_star},
                           {"nearest", s.glancing->nearest},
                           {"exponent", s.glancing->exponent}};
    return out;
}

json to_json(const ContourResult& r, bool with_samples) {
    json out{{"winding", r.winding},
             {"winding_residual", r.winding_residual},
             {"conclusive", r.conclusive},
             {"points", r.D.size()},
             {"max_jump", r.max_jump},
             {"junction_jump", r.junction_jump},
             {"refinements", r.refinements},
             {"budget_exhausted", r.budget_exhausted},
             {"message", r.message}};
    if (with_samples) {
        out["lambda"] = complex_list(r.lambda);
        out["D"] = complex_list(r.D);
    }
    return out;
}

void write_atomic(const std::filesystem::path& file, const std::string& text) {
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    std::filesystem::path tmp = file;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot write " + tmp.string());
        os << text << '\n';
        if (!os) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, file);
}

json read_json(const std::filesystem::path& file) {
    std::ifstream is(file);
    if (!is) throw std::runtime_error("cannot open " + file.string());
    std::stringstream ss;
    ss << is.rdbuf();
    return json::parse(ss.str());
}

}  // namespace shockstab
