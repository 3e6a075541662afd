#include "shockstab/batch.hpp"

#include "shockstab/parallel.hpp"
#include "shockstab/svg.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace shockstab {

namespace fs = std::filesystem;

namespace {
std::string num_tag(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string form_tag(const Formulation& f) {
    std::string s = describe(f);
    for (char& c : s)
        if (c == '+') c = '_';
    return s;
}

std::string profile_key(double u) { return "u" + num_tag(u); }
std::string hf_key(double u, double xb) { return "u" + num_tag(u) + "_xb" + num_tag(xb); }

json formulation_list(const std::vector<Formulation>& fs) {
    json a = json::array();
    for (const Formulation& f : fs) a.push_back(to_json(f));
    return a;
}

json load_checkpoint(const fs::path& file) {
    try {
        return read_json(file);
    } catch (const json::exception& e) {
        throw ResumeError("corrupted checkpoint " + file.string() + " (" + e.what() +
                          "); delete it, or the whole run directory, and rerun");
    }
}

GasParams gas_of(const BatchConfig& c) { return parse_gas_law(c.gas); }

double notch_of(const BatchConfig& c) { return c.notch > 0 ? c.notch : default_notch(gas_of(c)); }
double lf_r_out(const BatchConfig& c) { return c.lf_r_out > 0 ? c.lf_r_out : default_lf_radius(gas_of(c)); }
}  // namespace

BatchConfig preset_config(const std::string& gas) {
    BatchConfig c;
    c.gas = gas;
    GasParams g = parse_gas_law(gas);
    c.u_plus = g.gruneisen < 0.5 ? diatomic_u_grid() : monatomic_u_grid();
    c.xi_breve = xi_breve_grid();
    Formulation balanced, standard, modified;
    standard.form = Form::Standard;
    modified.form = Form::Modified;
    c.formulations = {balanced, standard, modified};
    c.workers = default_workers();
    return c;
}

BatchConfig desk_config(const std::string& gas) {
    BatchConfig c = preset_config(gas);
    c.u_plus = {c.u_plus[2], 0.6, 0.75};
    c.xi_breve = {0.025, 0.5, 0.95};
    c.xi_zero_slice = false;
    c.formulations = {Formulation{}};
    c.hf.x_points = 100;
    c.hf.s_points = 100;
    c.hf.r_points = 60;
    c.lf_spokes = 21;
    return c;
}

json to_json(const BatchConfig& c) {
    return {{"gas", c.gas},
            {"u_plus", c.u_plus},
            {"xi_breve", c.xi_breve},
            {"xi_zero_slice", c.xi_zero_slice},
            {"formulations", formulation_list(c.formulations)},
            {"contour",
             {{"arc_points", c.arc_points},
              {"axis_points", c.axis_points},
              {"tolerance", c.tolerance},
              {"budget", c.budget},
              {"safety", c.safety},
              {"notch", c.notch}}},
            {"hf",
             {{"crude_r0", c.hf.crude_r0},
              {"r_min", c.hf.r_min},
              {"r_points", c.hf.r_points},
              {"self_consistent", c.hf.self_consistent},
              {"x_points", c.hf.x_points},
              {"s_points", c.hf.s_points}}},
            {"lf", {{"run", c.run_lf}, {"spokes", c.lf_spokes}, {"r_out", c.lf_r_out}, {"r_in", c.lf_r_in}}},
            {"workers", c.workers},
            {"output_dir", c.output_dir.string()}};
}

BatchConfig config_from_json(const json& j, const BatchConfig& base) {
    BatchConfig c = base;
    c.gas = j.value("gas", c.gas);
    if (j.contains("u_plus")) c.u_plus = j["u_plus"].get<std::vector<double>>();
    if (j.contains("xi_breve")) c.xi_breve = j["xi_breve"].get<std::vector<double>>();
    c.xi_zero_slice = j.value("xi_zero_slice", c.xi_zero_slice);
    if (j.contains("formulations")) {
        c.formulations.clear();
        for (const json& f : j["formulations"])
            c.formulations.push_back(f.is_string() ? Formulation{parse_form(f.get<std::string>())}
                                                   : formulation_from_json(f));
    }
    if (j.contains("contour")) {
        const json& k = j["contour"];
        c.arc_points = k.value("arc_points", c.arc_points);
        c.axis_points = k.value("axis_points", c.axis_points);
        c.tolerance = k.value("tolerance", c.tolerance);
        c.budget = k.value("budget", c.budget);
        c.safety = k.value("safety", c.safety);
        c.notch = k.value("notch", c.notch);
    }
    if (j.contains("hf")) {
        const json& k = j["hf"];
        c.hf.crude_r0 = k.value("crude_r0", c.hf.crude_r0);
        c.hf.r_min = k.value("r_min", c.hf.r_min);
        c.hf.r_points = k.value("r_points", c.hf.r_points);
        c.hf.self_consistent = k.value("self_consistent", c.hf.self_consistent);
        c.hf.x_points = k.value("x_points", c.hf.x_points);
        c.hf.s_points = k.value("s_points", c.hf.s_points);
    }
    if (j.contains("lf")) {
        const json& k = j["lf"];
        c.run_lf = k.value("run", c.run_lf);
        c.lf_spokes = k.value("spokes", c.lf_spokes);
        c.lf_r_out = k.value("r_out", c.lf_r_out);
        c.lf_r_in = k.value("r_in", c.lf_r_in);
    }
    c.workers = j.value("workers", c.workers);
    if (j.contains("output_dir")) c.output_dir = j["output_dir"].get<std::string>();
    return c;
}

void validate(const BatchConfig& c) {
    GasParams g = gas_of(c);
    if (c.u_plus.empty() || c.xi_breve.empty() || c.formulations.empty())
        throw DomainError("batch grids and formulation list must be nonempty");
    const double us = u_star(g.gruneisen);
    for (double u : c.u_plus)
        if (!(u >= us - 1e-12 && u < 1)) throw DomainError("u_plus " + num_tag(u) + " outside [u*, 1)");
    for (double x : c.xi_breve)
        if (!(x > 0 && x <= 1)) throw DomainError("xi_breve values must lie in (0, 1]");
    if (!(c.tolerance > 0 && c.tolerance < 1)) throw DomainError("refinement tolerance must lie in (0, 1)");
    if (c.arc_points < 2 || c.axis_points < 2 || c.budget < 4) throw DomainError("contour point counts too small");
    if (!(c.safety >= 1)) throw DomainError("safety factor must be at least 1");
    if (!(notch_of(c) < lf_r_out(c)))
        throw DomainError("notch radius must stay inside the ball covered by the low-frequency study");
    if (c.run_lf && (c.lf_spokes < 1 || !(c.lf_r_in > 0 && c.lf_r_in < lf_r_out(c))))
        throw DomainError("low-frequency study needs spokes ≥ 1 and 0 < r_in < r_out");
}

std::string config_hash(const BatchConfig& c) {
    json j = to_json(c);
    j.erase("workers");
    j.erase("output_dir");
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : j.dump()) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::vector<SliceTask> plan(const BatchConfig& c) {
    std::vector<double> xb;
    if (c.xi_zero_slice) xb.push_back(0.0);
    xb.insert(xb.end(), c.xi_breve.begin(), c.xi_breve.end());
    std::vector<SliceTask> out;
    for (double u : c.u_plus)
        for (double x : xb)
            for (const Formulation& f : c.formulations)
                out.push_back({u, x, f, hf_key(u, x) + "_" + form_tag(f)});
    return out;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Stable: return "stable";
        case Verdict::InstabilityDetected: return "instability-detected";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

int exit_code(Verdict v) {
    switch (v) {
        case Verdict::Stable: return 0;
        case Verdict::InstabilityDetected: return 2;
        case Verdict::Inconclusive: return 3;
    }
    return 1;
}

Verdict decide(const RunRecord& r) {
    bool clean = r.missing.empty();
    for (const SliceRecord& s : r.slices) {
        if (s.done && !s.failed && s.conclusive && s.winding != 0) return Verdict::InstabilityDetected;
        clean = clean && s.done && !s.failed && s.conclusive && s.winding == 0;
    }
    for (const HfRecord& h : r.hf) clean = clean && h.done && !h.failed;
    for (const LfRecord& l : r.lf) clean = clean && l.done && !l.failed && l.all_converged;
    return clean ? Verdict::Stable : Verdict::Inconclusive;
}

json to_json(const RunRecord& r) {
    json slices = json::array(), hf = json::array(), lf = json::array();
    for (const SliceRecord& s : r.slices)
        slices.push_back({{"key", s.task.key},
                          {"u_plus", s.task.u_plus},
                          {"xi_breve", s.task.xi_breve},
                          {"formulation", to_json(s.task.form)},
                          {"xi", s.xi},
                          {"radius", s.radius},
                          {"notch", s.notch},
                          {"done", s.done},
                          {"failed", s.failed},
                          {"error", s.error},
                          {"winding", s.winding},
                          {"conclusive", s.conclusive},
                          {"points", s.points},
                          {"max_jump", s.max_jump},
                          {"refinements", s.refinements}});
    for (const HfRecord& h : r.hf)
        hf.push_back({{"u_plus", h.u_plus},
                      {"xi_breve", h.xi_breve},
                      {"done", h.done},
                      {"failed", h.failed},
                      {"error", h.error},
                      {"r_breve_star", h.r_breve_star},
                      {"r_star", h.r_star}});
    for (const LfRecord& l : r.lf)
        lf.push_back({{"u_plus", l.u_plus},
                      {"done", l.done},
                      {"failed", l.failed},
                      {"error", l.error},
                      {"max_final_ratio", l.max_final_ratio},
                      {"min_abs_D", l.min_abs_D},
                      {"margin", l.margin},
                      {"all_converged", l.all_converged}});
    return {{"config_hash", r.config_hash}, {"config", r.config}, {"verdict", to_string(r.verdict)},
            {"missing", r.missing},         {"slices", slices},   {"hf", hf},
            {"lf", lf}};
}

RunRecord record_from_json(const json& j) {
    RunRecord r;
    r.config_hash = j.at("config_hash").get<std::string>();
    r.config = j.at("config");
    r.missing = j.at("missing").get<std::vector<std::string>>();
    for (const json& s : j.at("slices")) {
        SliceRecord x;
        x.task = {s.at("u_plus").get<double>(), s.at("xi_breve").get<double>(), formulation_from_json(s.at("formulation")),
                  s.at("key").get<std::string>()};
        x.xi = s.at("xi");
        x.radius = s.at("radius");
        x.notch = s.at("notch");
        x.done = s.at("done");
        x.failed = s.at("failed");
        x.error = s.at("error");
        x.winding = s.at("winding");
        x.conclusive = s.at("conclusive");
        x.points = s.at("points");
        x.max_jump = s.at("max_jump");
        x.refinements = s.at("refinements");
        r.slices.push_back(x);
    }
    for (const json& h : j.at("hf"))
        r.hf.push_back({h.at("u_plus"), h.at("xi_breve"), h.at("done"), h.at("failed"), h.at("error"),
                        h.at("r_breve_star"), h.at("r_star")});
    for (const json& l : j.at("lf"))
        r.lf.push_back({l.at("u_plus"), l.at("done"), l.at("failed"), l.at("error"), l.at("max_final_ratio"),
                        l.at("min_abs_D"), l.at("margin"), l.at("all_converged")});
    r.verdict = decide(r);
    return r;
}

fs::path run_directory(const BatchConfig& c) { return c.output_dir / config_hash(c); }

namespace {
struct RunPaths {
    fs::path root;
    fs::path profile(double u) const { return root / "profiles" / (profile_key(u) + ".json"); }
    fs::path hf(double u, double xb) const { return root / "hf" / (hf_key(u, xb) + ".json"); }
    fs::path lf(double u) const { return root / "lf" / (profile_key(u) + ".json"); }
    fs::path slice(const SliceTask& t) const { return root / "slices" / (t.key + ".json"); }
};

void write_config(const BatchConfig& c, const RunPaths& p) {
    fs::path f = p.root / "config.json";
    if (fs::exists(f)) {
        json old = load_checkpoint(f);
        if (old.value("hash", std::string()) != config_hash(c))
            throw ResumeError("run directory " + p.root.string() + " belongs to another configuration; clear it");
        return;
    }
    write_atomic(f, json{{"hash", config_hash(c)}, {"config", to_json(c)}}.dump(2));
}

std::vector<double> hf_xi_values(const BatchConfig& c) {
    std::vector<double> xb;
    if (c.xi_zero_slice) xb.push_back(0.0);
    xb.insert(xb.end(), c.xi_breve.begin(), c.xi_breve.end());
    return xb;
}

json error_record(const std::string& what) { return {{"failed", true}, {"error", what}}; }
}  // namespace

std::vector<SliceTask> dry_run(const BatchConfig& c) {
    validate(c);
    std::vector<SliceTask> tasks = plan(c);
    RunPaths p{run_directory(c)};
    write_config(c, p);
    json a = json::array();
    for (const SliceTask& t : tasks)
        a.push_back({{"key", t.key}, {"u_plus", t.u_plus}, {"xi_breve", t.xi_breve}, {"formulation", to_json(t.form)}});
    write_atomic(p.root / "plan.json", json{{"hash", config_hash(c)}, {"slices", a}}.dump(1));
    return tasks;
}

RunRecord run_batch(const BatchConfig& c, int max_slices) {
    validate(c);
    const GasParams g = gas_of(c);
    RunPaths p{run_directory(c)};
    write_config(c, p);

    // profiles
    std::vector<Profile> profiles(c.u_plus.size());
    std::vector<std::string> profile_error(c.u_plus.size());
    parallel_for(c.u_plus.size(), c.workers, [&](std::size_t i) {
        fs::path f = p.profile(c.u_plus[i]);
        try {
            if (fs::exists(f)) {
                json j = load_checkpoint(f);
                if (j.value("failed", false)) {
                    profile_error[i] = j.value("error", std::string("profile failed"));
                    return;
                }
                profiles[i] = profile_from_json(j);
                return;
            }
            profiles[i] = solve_profile(g, endstates(g.gruneisen, c.u_plus[i]));
            save_profile(profiles[i], f);
        } catch (const ResumeError&) {
            throw;
        } catch (const std::exception& e) {
            profile_error[i] = e.what();
            write_atomic(f, error_record(e.what()).dump());
        }
    });

    // high-frequency bounds
    const std::vector<double> xb = hf_xi_values(c);
    std::vector<std::optional<double>> r_breve_star(c.u_plus.size() * xb.size());
    parallel_for(r_breve_star.size(), c.workers, [&](std::size_t k) {
        std::size_t i = k / xb.size();
        fs::path f = p.hf(c.u_plus[i], xb[k % xb.size()]);
        if (fs::exists(f)) {
            json j = load_checkpoint(f);
            if (!j.value("failed", false)) r_breve_star[k] = j.at("r_breve_star").get<double>();
            return;
        }
        if (!profile_error[i].empty()) {
            write_atomic(f, error_record("no profile: " + profile_error[i]).dump());
            return;
        }
        try {
            TrackingBound b = tracking_bound(profiles[i], xb[k % xb.size()], c.hf);
            write_atomic(f, to_json(b).dump(1));
            r_breve_star[k] = b.r_breve_star;
        } catch (const std::exception& e) {
            write_atomic(f, error_record(e.what()).dump());
        }
    });

    // low-frequency studies
    if (c.run_lf)
        for (std::size_t i = 0; i < c.u_plus.size(); ++i) {
            fs::path f = p.lf(c.u_plus[i]);
            if (fs::exists(f)) {
                load_checkpoint(f);
                continue;
            }
            if (!profile_error[i].empty()) {
                write_atomic(f, error_record("no profile: " + profile_error[i]).dump());
                continue;
            }
            try {
                LfOptions o;
                o.spokes = c.lf_spokes;
                o.r_out = lf_r_out(c);
                o.r_in = c.lf_r_in;
                o.workers = c.workers;
                write_atomic(f, to_json(rib_roast(profiles[i], o), false).dump(1));
            } catch (const std::exception& e) {
                write_atomic(f, error_record(e.what()).dump());
            }
        }

    // contours
    const std::vector<SliceTask> tasks = plan(c);
    std::vector<std::size_t> todo;
    for (std::size_t t = 0; t < tasks.size(); ++t)
        if (!fs::exists(p.slice(tasks[t]))) todo.push_back(t);
        else load_checkpoint(p.slice(tasks[t]));
    if (max_slices >= 0 && todo.size() > static_cast<std::size_t>(max_slices)) todo.resize(static_cast<std::size_t>(max_slices));
    const std::size_t per_u = xb.size() * c.formulations.size();
    parallel_for(todo.size(), c.workers, [&](std::size_t n) {
        const SliceTask& t = tasks[todo[n]];
        const std::size_t i = todo[n] / per_u;
        const std::size_t k = i * xb.size() + (todo[n] % per_u) / c.formulations.size();
        json j{{"key", t.key}, {"u_plus", t.u_plus}, {"xi_breve", t.xi_breve}, {"formulation", to_json(t.form)}};
        if (!r_breve_star[k]) {
            j.update(error_record("no high-frequency bound"));
            write_atomic(p.slice(t), j.dump());
            return;
        }
        Slice s = plan_slice(t.xi_breve, *r_breve_star[k], c.safety);
        const double notch = needs_notch(t.form, s.xi) ? notch_of(c) : 0.0;
        j["xi"] = s.xi;
        j["radius"] = s.radius;
        j["notch"] = notch;
        if (s.radius <= 0) {
            j["result"] = {{"winding", 0}, {"conclusive", true}, {"points", 0}, {"max_jump", 0.0},
                           {"refinements", 0}, {"message", "empty slice"}};
            write_atomic(p.slice(t), j.dump());
            return;
        }
        try {
            ContourPath path;
            path.radius = s.radius;
            path.notch = notch;
            path.arc_points = c.arc_points;
            path.axis_points = c.axis_points;
            ContourOptions co;
            co.tolerance = c.tolerance;
            co.budget = c.budget;
            j["result"] = to_json(evans_contour(profiles[i], t.form, s.xi, path, co), true);
        } catch (const std::exception& e) {
            j.update(error_record(e.what()));
        }
        write_atomic(p.slice(t), j.dump());
    });
    RunRecord r = collect(c);
    write_atomic(p.root / "record.json", to_json(r).dump(1));
    return r;
}

RunRecord collect(const BatchConfig& c) {
    RunPaths p{run_directory(c)};
    RunRecord r;
    r.config_hash = config_hash(c);
    r.config = to_json(c);
    r.config.erase("workers");
    r.config.erase("output_dir");
    for (const SliceTask& t : plan(c)) {
        SliceRecord s;
        s.task = t;
        fs::path f = p.slice(t);
        if (!fs::exists(f)) {
            r.missing.push_back(t.key);
            r.slices.push_back(s);
            continue;
        }
        json j = load_checkpoint(f);
        s.done = true;
        s.xi = j.value("xi", 0.0);
        s.radius = j.value("radius", 0.0);
        s.notch = j.value("notch", 0.0);
        s.failed = j.value("failed", false);
        s.error = j.value("error", std::string());
        if (j.contains("result")) {
            const json& res = j["result"];
            s.winding = res.at("winding");
            s.conclusive = res.at("conclusive");
            s.points = res.at("points");
            s.max_jump = res.at("max_jump");
            s.refinements = res.at("refinements");
        }
        r.slices.push_back(s);
    }
    for (double u : c.u_plus)
        for (double x : hf_xi_values(c)) {
            HfRecord h;
            h.u_plus = u;
            h.xi_breve = x;
            fs::path f = p.hf(u, x);
            if (fs::exists(f)) {
                json j = load_checkpoint(f);
                h.done = true;
                h.failed = j.value("failed", false);
                h.error = j.value("error", std::string());
                h.r_breve_star = j.value("r_breve_star", 0.0);
                h.r_star = j.value("r_star", 0.0);
            }
            r.hf.push_back(h);
        }
    if (c.run_lf)
        for (double u : c.u_plus) {
            LfRecord l;
            l.u_plus = u;
            fs::path f = p.lf(u);
            if (fs::exists(f)) {
                json j = load_checkpoint(f);
                l.done = true;
                l.failed = j.value("failed", false);
                l.error = j.value("error", std::string());
                l.max_final_ratio = j.value("max_final_ratio", 0.0);
                l.min_abs_D = j.value("min_abs_D", 0.0);
                l.margin = j.value("margin", 0.0);
                l.all_converged = j.value("all_converged", false);
            }
            r.lf.push_back(l);
        }
    r.verdict = decide(r);
    return r;
}

namespace {
std::vector<cplx> complex_from(const json& j) {
    std::vector<double> re = j.at("re"), im = j.at("im");
    std::vector<cplx> z;
    for (std::size_t i = 0; i < re.size(); ++i) z.emplace_back(re[i], im[i]);
    return z;
}
}  // namespace

ReportFiles report(const RunRecord& r, const fs::path& run_dir, const fs::path& dir) {
    ReportFiles out;
    std::ostringstream o;
    char line[256];
    o << "verdict: " << to_string(r.verdict) << "\n";
    o << "config " << r.config_hash << ", gas " << r.config.value("gas", std::string("?")) << "\n";
    std::size_t done = 0, zero = 0, nonzero = 0, inconclusive = 0, failed = 0;
    for (const SliceRecord& s : r.slices) {
        if (!s.done) continue;
        ++done;
        if (s.failed) ++failed;
        else if (!s.conclusive) ++inconclusive;
        else if (s.winding == 0) ++zero;
        else ++nonzero;
    }
    std::snprintf(line, sizeof line, "slices: %zu planned, %zu done, %zu winding 0, %zu nonzero, %zu inconclusive, %zu failed\n",
                  r.slices.size(), done, zero, nonzero, inconclusive, failed);
    o << line;
    for (const SliceRecord& s : r.slices)
        if (s.done && (s.failed || !s.conclusive || s.winding != 0)) {
            std::snprintf(line, sizeof line, "  %s: winding %d, conclusive %s, max jump %.3g %s\n", s.task.key.c_str(),
                          s.winding, s.conclusive ? "yes" : "no", s.max_jump, s.error.c_str());
            o << line;
        }
    o << "high-frequency bounds (u+, xi_breve, r_breve*, r*):\n";
    for (const HfRecord& h : r.hf) {
        if (!h.done) std::snprintf(line, sizeof line, "  %.4f %.4f missing\n", h.u_plus, h.xi_breve);
        else if (h.failed) std::snprintf(line, sizeof line, "  %.4f %.4f failed: %s\n", h.u_plus, h.xi_breve, h.error.c_str());
        else std::snprintf(line, sizeof line, "  %.4f %.4f %.2f %.2f\n", h.u_plus, h.xi_breve, h.r_breve_star, h.r_star);
        o << line;
    }
    if (!r.lf.empty()) o << "low-frequency studies (u+, max final ratio, min |D|, margin, converged):\n";
    for (const LfRecord& l : r.lf) {
        if (!l.done) std::snprintf(line, sizeof line, "  %.4f missing\n", l.u_plus);
        else if (l.failed) std::snprintf(line, sizeof line, "  %.4f failed: %s\n", l.u_plus, l.error.c_str());
        else std::snprintf(line, sizeof line, "  %.4f %.4f %.4g %.3g %s\n", l.u_plus, l.max_final_ratio, l.min_abs_D,
                           l.margin, l.all_converged ? "yes" : "no");
        o << line;
    }
    if (!r.missing.empty()) {
        o << "missing slices (" << r.missing.size() << "):\n";
        for (const std::string& k : r.missing) o << "  " << k << "\n";
    }
    out.summary = o.str();

    fs::create_directories(dir);
    auto emit = [&](const std::string& name, const Plot& plot) {
        fs::path f = dir / name;
        write_atomic(f, render_svg(plot));
        out.figures.push_back(f);
    };

    Plot hf{"high-frequency bound", "xi_breve", "r*", {}, false, true};
    std::vector<double> us;
    for (const HfRecord& h : r.hf)
        if (us.empty() || us.back() != h.u_plus) us.push_back(h.u_plus);
    for (double u : us) {
        Series s{"u+ = " + num_tag(u), {}, {}, true};
        for (const HfRecord& h : r.hf)
            if (h.u_plus == u && h.done && !h.failed) {
                s.x.push_back(h.xi_breve);
                s.y.push_back(h.r_star);
            }
        if (!s.x.empty()) hf.series.push_back(s);
    }
    if (!hf.series.empty()) emit("hf_surface.svg", hf);

    int shown = 0;
    for (const SliceRecord& s : r.slices) {
        if (shown >= 3 || !s.done || s.failed || s.points == 0) continue;
        json j = load_checkpoint(run_dir / "slices" / (s.task.key + ".json"));
        if (!j.contains("result") || !j["result"].contains("D")) continue;
        std::vector<cplx> d = complex_from(j["result"]["D"]);
        d.push_back(d.front());
        Series img{"D", {}, {}, false};
        for (cplx z : d) {
            img.x.push_back(z.real());
            img.y.push_back(z.imag());
        }
        Plot p{"Evans image " + s.task.key + " (winding " + std::to_string(s.winding) + ")", "Re D", "Im D", {img}};
        p.equal_aspect = true;
        emit("contour_" + s.task.key + ".svg", p);
        ++shown;
    }

    for (const LfRecord& l : r.lf) {
        if (!l.done || l.failed) continue;
        json j = load_checkpoint(run_dir / "lf" / (profile_key(l.u_plus) + ".json"));
        Series re{"Re D(r_in)", {}, {}, false}, im{"Im D(r_in)", {}, {}, false};
        for (const json& sp : j.at("spokes")) {
            re.x.push_back(sp.at("theta"));
            re.y.push_back(sp.at("D_re"));
            im.x.push_back(sp.at("theta"));
            im.y.push_back(sp.at("D_im"));
        }
        emit("rib_roast_" + profile_key(l.u_plus) + ".svg",
             Plot{"radial limits, u+ = " + num_tag(l.u_plus), "theta", "D", {re, im}});
    }
    return out;
}

}  // namespace shockstab
