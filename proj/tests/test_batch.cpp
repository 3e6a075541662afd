#include "shockstab/batch.hpp"

#include <doctest.h>

#include <fstream>

using namespace shockstab;
namespace fs = std::filesystem;

namespace {
fs::path scratch(const std::string& name) {
    fs::path d = fs::temp_directory_path() / ("shockstab-test-" + name);
    fs::remove_all(d);
    return d;
}

BatchConfig tiny(const fs::path& dir) {
    BatchConfig c = desk_config("monatomic");
    c.u_plus = {0.6};
    c.xi_breve = {0.95, 1.0};
    c.run_lf = false;
    c.hf.x_points = 40;
    c.hf.s_points = 40;
    c.hf.r_points = 30;
    c.workers = 1;
    c.output_dir = dir;
    return c;
}

SliceRecord slice(int winding, bool conclusive = true) {
    SliceRecord s;
    s.done = true;
    s.conclusive = conclusive;
    s.winding = winding;
    return s;
}
}  // namespace

TEST_CASE("full grids enumerate every slice") {
    BatchConfig m = preset_config("monatomic");
    m.formulations.resize(1);
    CHECK(plan(m).size() == 19 * 45);
    m.xi_zero_slice = false;
    CHECK(plan(m).size() == 19 * 44);
    BatchConfig d = preset_config("diatomic");
    d.formulations.resize(1);
    CHECK(plan(d).size() == 900);
    CHECK(plan(preset_config("monatomic")).size() == 3 * 855);
}

TEST_CASE("config hash and JSON round trip") {
    BatchConfig a = preset_config("monatomic");
    BatchConfig b = config_from_json(json::parse(to_json(a).dump()));
    CHECK(config_hash(a) == config_hash(b));
    b.workers = 7;
    b.output_dir = "elsewhere";
    CHECK(config_hash(a) == config_hash(b));
    b.u_plus.pop_back();
    CHECK(config_hash(a) != config_hash(b));
    BatchConfig c = config_from_json(json{{"formulations", {"standard"}}, {"lf", {{"spokes", 7}}}}, a);
    CHECK(c.formulations.size() == 1);
    CHECK(c.formulations[0].form == Form::Standard);
    CHECK(c.lf_spokes == 7);
    CHECK(c.u_plus == a.u_plus);
}

TEST_CASE("config validation") {
    BatchConfig c = desk_config("monatomic");
    c.u_plus = {0.1};
    CHECK_THROWS_AS(validate(c), DomainError);
    c = desk_config("monatomic");
    c.notch = 0.5;
    CHECK_THROWS_AS(validate(c), DomainError);
    c = desk_config("monatomic");
    c.xi_breve.clear();
    CHECK_THROWS_AS(validate(c), DomainError);
}

TEST_CASE("verdict logic") {
    RunRecord r;
    r.slices = {slice(0), slice(0)};
    CHECK(decide(r) == Verdict::Stable);
    CHECK(exit_code(decide(r)) == 0);
    r.slices.push_back(slice(1));
    CHECK(decide(r) == Verdict::InstabilityDetected);
    CHECK(exit_code(decide(r)) == 2);
    // adding slices never turns an instability back into stability
    r.slices.push_back(slice(0));
    CHECK(decide(r) == Verdict::InstabilityDetected);
    RunRecord p;
    p.slices = {slice(0), SliceRecord{}};
    p.missing = {"k"};
    CHECK(decide(p) == Verdict::Inconclusive);
    CHECK(exit_code(decide(p)) == 3);
    RunRecord q;
    q.slices = {slice(0)};
    q.lf = {LfRecord{0.6, true, false, "", 0.1, 1, 1, false}};
    CHECK(decide(q) == Verdict::Inconclusive);
    CHECK(record_from_json(to_json(r)).verdict == Verdict::InstabilityDetected);
}

TEST_CASE("dry run plans without evaluating") {
    BatchConfig c = preset_config("diatomic");
    c.output_dir = scratch("dry");
    auto tasks = dry_run(c);
    CHECK(tasks.size() == 3 * 900);
    CHECK(fs::exists(run_directory(c) / "plan.json"));
    CHECK_FALSE(fs::exists(run_directory(c) / "slices"));
    CHECK(read_json(run_directory(c) / "plan.json")["slices"].size() == 2700);
}

TEST_CASE("interrupted and resumed batch equals an uninterrupted one") {
    BatchConfig a = tiny(scratch("whole"));
    BatchConfig b = tiny(scratch("parts"));
    RunRecord whole = run_batch(a);
    CHECK(whole.missing.empty());
    RunRecord part = run_batch(b, 1);
    CHECK(part.missing.size() == 1);
    CHECK(part.verdict == Verdict::Inconclusive);
    RunRecord resumed = run_batch(b);
    CHECK(to_json(resumed).dump() == to_json(whole).dump());
    // rerun is a no-op with bit-identical output
    CHECK(to_json(run_batch(a)).dump() == to_json(whole).dump());
    ReportFiles rep = report(whole, run_directory(a), run_directory(a) / "report");
    CHECK(rep.summary.rfind("verdict: ", 0) == 0);
    CHECK_FALSE(rep.figures.empty());

    std::ofstream(run_directory(b) / "slices" / (plan(b)[0].key + ".json")) << "{ not json";
    CHECK_THROWS_AS(run_batch(b), ResumeError);
}
