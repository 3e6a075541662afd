#include "shockstab/batch.hpp"
#include "shockstab/parallel.hpp"
#include "shockstab/svg.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace shockstab;
namespace fs = std::filesystem;

namespace {

cplx parse_complex(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) return {std::stod(s), 0.0};
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

Coordinates parse_coords(const std::string& s) {
    if (s == "eulerian") return Coordinates::Eulerian;
    if (s == "pseudo-lagrangian") return Coordinates::PseudoLagrangian;
    throw DomainError("unknown coordinates '" + s + "'");
}

void write_text(const fs::path& file, const std::string& text) {
    if (file.has_parent_path()) fs::create_directories(file.parent_path());
    std::ofstream os(file);
    if (!os) throw std::runtime_error("cannot write " + file.string());
    os << text;
}

std::string mach_text(std::optional<double> m) {
    if (!m) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", *m);
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral stability of planar viscous shock profiles by Evans-function computation"};
    app.require_subcommand(1);

    // endstates
    auto* c_end = app.add_subcommand("endstates", "Rankine-Hugoniot endstates and residuals");
    std::string gas = "monatomic";
    double u_plus = 0.6;
    c_end->add_option("--gas", gas, "monatomic | diatomic | custom:<Gamma>");
    c_end->add_option("--u-plus", u_plus, "downstream velocity")->required();

    // mach-table
    auto* c_mach = app.add_subcommand("mach-table", "Mach number over a u+ grid");
    std::vector<double> u_list;
    c_mach->add_option("--gas", gas);
    c_mach->add_option("--u-plus", u_list, "defaults to the preset grid");

    // profile
    auto* c_prof = app.add_subcommand("profile", "Solve a viscous profile and write it as JSON");
    std::string out_file;
    c_prof->add_option("--gas", gas);
    c_prof->add_option("--u-plus", u_plus)->required();
    c_prof->add_option("--out", out_file, "profile JSON")->required();

    // evans
    auto* c_ev = app.add_subcommand("evans", "Evans function at one frequency");
    std::string profile_file, form_name = "balanced", coords_name = "eulerian", lambda_text = "1,0";
    bool no_radial = false, pl_flag = false;
    double xi = 0;
    c_ev->add_option("--profile", profile_file)->required()->check(CLI::ExistingFile);
    c_ev->add_option("--formulation", form_name, "standard | balanced | modified");
    c_ev->add_flag("--no-radial", no_radial);
    c_ev->add_flag("--pseudo-lagrangian", pl_flag);
    c_ev->add_option("--coords", coords_name, "eulerian | pseudo-lagrangian");
    c_ev->add_option("--xi", xi);
    c_ev->add_option("--lambda", lambda_text, "re,im");

    // hf-bounds
    auto* c_hf = app.add_subcommand("hf-bounds", "High-frequency tracking bounds over a u+ x xi_breve grid");
    std::vector<double> xb_list;
    HfOptions hf;
    bool crude = false;
    int workers = default_workers();
    c_hf->add_option("--gas", gas);
    c_hf->add_option("--u-plus", u_list)->required();
    c_hf->add_option("--xi-breve", xb_list)->required();
    c_hf->add_option("--x-points", hf.x_points);
    c_hf->add_option("--s-points", hf.s_points);
    c_hf->add_option("--r-points", hf.r_points);
    c_hf->add_option("--r-min", hf.r_min);
    c_hf->add_flag("--crude", crude, "print the crude-bound constants instead");
    c_hf->add_option("--workers", workers);
    c_hf->add_option("--out", out_file, "CSV file (stdout when omitted)");

    // lf-study
    auto* c_lf = app.add_subcommand("lf-study", "Low-frequency radial limits along spokes");
    LfOptions lf;
    bool expanded = false;
    int phi_values = 11;
    std::string out_dir = ".";
    double r_out = 0;
    c_lf->add_option("--profile", profile_file)->required()->check(CLI::ExistingFile);
    c_lf->add_option("--spokes", lf.spokes);
    c_lf->add_option("--r-out", r_out, "defaults to 0.1, or 0.12 for Gamma < 1/2");
    c_lf->add_option("--r-in", lf.r_in);
    c_lf->add_option("--radial-points", lf.radial_points);
    c_lf->add_flag("--expanded", expanded, "sweep phi over [0, pi/2]");
    c_lf->add_option("--phi-values", phi_values);
    c_lf->add_option("--workers", workers);
    c_lf->add_option("--out-dir", out_dir);

    // winding
    auto* c_w = app.add_subcommand("winding", "Winding number of one Evans contour");
    double radius = 1, tol = 0.2, notch = -1;
    int arc_points = 50, axis_points = 50;
    std::string wcoords = "pseudo-lagrangian";
    c_w->add_option("--profile", profile_file)->required()->check(CLI::ExistingFile);
    c_w->add_option("--formulation", form_name);
    c_w->add_flag("--no-radial", no_radial);
    c_w->add_option("--coords", wcoords, "eulerian | pseudo-lagrangian");
    c_w->add_option("--xi", xi);
    c_w->add_option("--radius", radius)->required();
    c_w->add_option("--tol", tol);
    c_w->add_option("--notch", notch, "defaults to the gas value when the formulation vanishes at 0");
    c_w->add_option("--arc-points", arc_points);
    c_w->add_option("--axis-points", axis_points);
    c_w->add_option("--workers", workers);
    c_w->add_option("--out-dir", out_dir);

    // batch
    auto* c_b = app.add_subcommand("batch", "Checkpointed stability pipeline over parameter grids");
    std::string config_file, preset = "desk-monatomic", output_dir;
    bool dry = false;
    int max_slices = -1, b_workers = 0;
    c_b->add_option("--config", config_file, "JSON config; keys override the preset")->check(CLI::ExistingFile);
    c_b->add_option("--preset", preset, "monatomic | diatomic | desk-monatomic | desk-diatomic");
    c_b->add_option("--output-dir", output_dir);
    c_b->add_option("--workers", b_workers);
    c_b->add_option("--max-slices", max_slices, "stop after this many new contours");
    c_b->add_flag("--dry-run", dry, "plan all slices without evaluating them");

    // report
    auto* c_r = app.add_subcommand("report", "Summary and SVG figures of a batch run");
    std::string run_dir;
    c_r->add_option("--run-dir", run_dir, "directory holding record.json")->required()->check(CLI::ExistingDirectory);
    c_r->add_option("--out-dir", out_dir);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*c_end) {
            GasParams g = parse_gas_law(gas);
            ShockEndStates s = endstates(g.gruneisen, u_plus);
            RHResiduals res = rh_residuals(s);
            json j{{"gruneisen", s.gruneisen}, {"u_plus", s.u_plus}, {"u_minus", s.u_minus},
                   {"rho_minus", s.rho_minus}, {"rho_plus", s.rho_plus}, {"e_minus", s.e_minus},
                   {"e_plus", s.e_plus},       {"c_minus", s.c_minus},   {"c_plus", s.c_plus},
                   {"u_star", s.u_star},       {"rh_momentum", res.momentum}, {"rh_energy", res.energy}};
            j["mach"] = s.mach ? json(*s.mach) : json(nullptr);
            std::cout << j.dump(2) << "\n";
        } else if (*c_mach) {
            GasParams g = parse_gas_law(gas);
            if (u_list.empty()) u_list = g.gruneisen < 0.5 ? diatomic_u_grid() : monatomic_u_grid();
            std::cout << "u_plus,M,u_plus/e_minus\n";
            for (const MachRow& r : mach_table(g.gruneisen, u_list)) {
                char buf[96];
                std::snprintf(buf, sizeof buf, "%.3f,%s,%.3f\n", r.u_plus, mach_text(r.mach).c_str(), r.u_over_e_minus);
                std::cout << buf;
            }
        } else if (*c_prof) {
            GasParams g = parse_gas_law(gas);
            Profile p = solve_profile(g, endstates(g.gruneisen, u_plus));
            save_profile(p, out_file);
            std::cout << to_json(p)["diagnostics"].dump(2) << "\n";
        } else if (*c_ev) {
            Profile p = load_profile(profile_file);
            Formulation f{parse_form(form_name), !no_radial, pl_flag ? Coordinates::PseudoLagrangian : parse_coords(coords_name)};
            EvansSystem sys(p, f, Frequency{xi, parse_complex(lambda_text)});
            EvansValue v = evans(sys, anchor_bases(sys));
            cplx d = f.radial ? v.D : v.D_no_radial;
            json j{{"D_re", d.real()},
                   {"D_im", d.imag()},
                   {"diagnostics", {{"formulation", describe(f)}, {"orthonormality_drift", v.drift}, {"steps", v.steps}}}};
            std::cout << j.dump(2) << "\n";
        } else if (*c_hf) {
            GasParams g = parse_gas_law(gas);
            std::ostringstream o;
            if (crude) {
                std::vector<CrudeConstants> parts;
                for (double u : u_list) {
                    Profile p = solve_profile(g, endstates(g.gruneisen, u));
                    for (double x : xb_list) parts.push_back(crude_constants(p, x, hf));
                }
                CrudeConstants c = combine(parts);
                finish_crude(c, hf.crude_r0);
                json j{{"M0", c.m0},         {"M1", c.m1},          {"U_norm_sq", c.u_norm_sq},
                       {"inv_delta", c.inv_delta}, {"C0", c.c_zero}, {"C_minus_half", c.c_minus_half},
                       {"LR", c.lr_cond},    {"LR_prime", c.lr_prime}, {"px_over_p", c.px_over_p},
                       {"rhox_over_rho", c.rhox_over_rho}, {"theta", c.theta}, {"r_breve_crude", c.r_crude}};
                o << j.dump(2) << "\n";
            } else {
                o << "u_plus,xi_breve,delta,a,b,c,d,e,f,r_breve_crude,r_breve_star,r_star,xi_slice\n";
                for (const TrackingBound& b : hf_surface(g, u_list, xb_list, hf, workers)) {
                    char buf[512];
                    const TrackingCoeffs& k = b.coeffs;
                    std::snprintf(buf, sizeof buf, "%.4f,%.4f,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g\n",
                                  b.u_plus, b.xi_breve, b.delta, k.a, k.b, k.c, k.d, k.e, k.f, b.r_breve_crude,
                                  b.r_breve_star, b.r_star, b.xi_slice);
                    o << buf;
                }
            }
            if (out_file.empty()) std::cout << o.str();
            else write_text(out_file, o.str());
        } else if (*c_lf) {
            Profile p = load_profile(profile_file);
            lf.r_out = r_out > 0 ? r_out : default_lf_radius(p.params);
            lf.workers = workers;
            std::vector<LfSummary> runs;
            if (expanded) runs = expanded_study(p, phi_values, lf).per_phi;
            else runs.push_back(rib_roast(p, lf));
            std::ostringstream csv;
            csv << "phi,k,theta,D_re,D_im,final_ratio,max_ratio,min_abs_D,converged\n";
            Plot plot{"radial limits", "theta", "|D(r_in)|"};
            double worst = 0, min_d = 1e300;
            bool all = true;
            for (const LfSummary& s : runs) {
                Series se{"phi = " + std::to_string(s.phi).substr(0, 5)};
                for (const SpokeResult& sp : s.spokes) {
                    char buf[256];
                    std::snprintf(buf, sizeof buf, "%.6f,%d,%.6f,%.10g,%.10g,%.6g,%.6g,%.6g,%d\n", s.phi, sp.k, sp.theta,
                                  sp.D.back().real(), sp.D.back().imag(), sp.final_ratio, sp.max_ratio, sp.min_abs_D,
                                  sp.converged ? 1 : 0);
                    csv << buf;
                    se.x.push_back(sp.theta);
                    se.y.push_back(std::abs(sp.D.back()));
                }
                plot.series.push_back(se);
                worst = std::max(worst, s.max_final_ratio);
                min_d = std::min(min_d, s.min_abs_D);
                all = all && s.all_converged;
            }
            write_text(fs::path(out_dir) / "lf_spokes.csv", csv.str());
            write_text(fs::path(out_dir) / "rib_roast.svg", render_svg(plot));
            json j{{"max_final_ratio", worst}, {"min_abs_D", min_d}, {"all_converged", all}};
            if (!expanded) {
                j["margin"] = runs[0].margin;
                if (runs[0].glancing)
                    j["glancing"] = {{"theta_star", runs[0].glancing->theta_star},
                                     {"nearest", runs[0].glancing->nearest},
                                     {"exponent", runs[0].glancing->exponent}};
            }
            std::cout << j.dump(2) << "\n";
            return all ? 0 : 3;
        } else if (*c_w) {
            Profile p = load_profile(profile_file);
            Formulation f{parse_form(form_name), !no_radial, parse_coords(wcoords)};
            ContourPath path;
            path.radius = radius;
            path.notch = notch >= 0 ? notch : (needs_notch(f, xi) ? default_notch(p.params) : 0.0);
            path.arc_points = arc_points;
            path.axis_points = axis_points;
            ContourOptions co;
            co.tolerance = tol;
            co.workers = workers;
            ContourResult r = evans_contour(p, f, xi, path, co);
            std::ostringstream csv;
            csv << "re_lambda,im_lambda,re_D,im_D\n";
            Series img{"D"};
            for (std::size_t i = 0; i < r.D.size(); ++i) {
                char buf[160];
                std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%.10g\n", r.lambda[i].real(), r.lambda[i].imag(),
                              r.D[i].real(), r.D[i].imag());
                csv << buf;
                img.x.push_back(r.D[i].real());
                img.y.push_back(r.D[i].imag());
            }
            img.x.push_back(img.x.front());
            img.y.push_back(img.y.front());
            write_text(fs::path(out_dir) / "contour.csv", csv.str());
            Plot plot{"Evans image, winding " + std::to_string(r.winding), "Re D", "Im D", {img}};
            plot.equal_aspect = true;
            write_text(fs::path(out_dir) / "contour.svg", render_svg(plot));
            json j{{"winding", r.winding},      {"points", r.D.size()},        {"max_jump", r.max_jump},
                   {"conclusive", r.conclusive}, {"refinements", r.refinements}, {"message", r.message}};
            std::cout << j.dump(2) << "\n";
            return r.conclusive ? (r.winding == 0 ? 0 : 2) : 3;
        } else if (*c_b) {
            bool desk = preset.rfind("desk-", 0) == 0;
            std::string g = desk ? preset.substr(5) : preset;
            BatchConfig c = desk ? desk_config(g) : preset_config(g);
            if (!config_file.empty()) c = config_from_json(read_json(config_file), c);
            if (!output_dir.empty()) c.output_dir = output_dir;
            if (b_workers > 0) c.workers = b_workers;
            if (dry) {
                std::vector<SliceTask> tasks = dry_run(c);
                std::cout << "planned " << tasks.size() << " slices in " << run_directory(c).string() << "\n";
                return 0;
            }
            RunRecord r = run_batch(c, max_slices);
            std::cout << "verdict: " << to_string(r.verdict) << "\nrecord: " << (run_directory(c) / "record.json").string()
                      << "\n";
            return exit_code(r.verdict);
        } else if (*c_r) {
            RunRecord r = record_from_json(read_json(fs::path(run_dir) / "record.json"));
            ReportFiles f = report(r, run_dir, out_dir == "." ? fs::path(run_dir) / "report" : fs::path(out_dir));
            std::cout << f.summary;
            for (const fs::path& p : f.figures) std::cout << "figure: " << p.string() << "\n";
            return exit_code(r.verdict);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
