#pragma once

#include "shockstab/io.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace shockstab {

struct BatchConfig {
    std::string gas = "monatomic";  // monatomic | diatomic | custom:<Γ>
    std::vector<double> u_plus;
    std::vector<double> xi_breve;
    bool xi_zero_slice = true;  // the extra ξ = 0 contour per u₊
    std::vector<Formulation> formulations;
    // contour
    int arc_points = 50;
    int axis_points = 50;
    double tolerance = 0.2;
    int budget = 4096;
    double safety = 1.1;
    double notch = 0;  // 0 → gas default
    // high and low frequency stages
    HfOptions hf;
    bool run_lf = true;
    int lf_spokes = 101;
    double lf_r_out = 0;  // 0 → gas default
    double lf_r_in = 0.001;
    int workers = 1;
    std::filesystem::path output_dir = "shockstab-run";
};

// Full default grids for a preset, with the three pseudo-Lagrangian formulations.
BatchConfig preset_config(const std::string& gas);
// 3 u₊ × 3 ξ̆, balanced only, coarse high-frequency grids.
BatchConfig desk_config(const std::string& gas);

json to_json(const BatchConfig& c);
// Missing keys keep the values of `base`.
BatchConfig config_from_json(const json& j, const BatchConfig& base = {});
// Throws DomainError on empty grids, bad ranges or an unknown gas.
void validate(const BatchConfig& c);
// 16 hex digits of FNV-1a over the canonical JSON of the fields that affect results.
std::string config_hash(const BatchConfig& c);

struct SliceTask {
    double u_plus = 0;
    double xi_breve = 0;
    Formulation form;
    std::string key;  // file stem, unique within a run
};
// u₊-major, then ξ̆ (with the ξ = 0 slice first), then formulation.
std::vector<SliceTask> plan(const BatchConfig& c);

struct SliceRecord {
    SliceTask task;
    double xi = 0;
    double radius = 0;
    double notch = 0;
    bool done = false;
    bool failed = false;
    std::string error;
    int winding = 0;
    bool conclusive = false;
    int points = 0;
    double max_jump = 0;
    int refinements = 0;
};

struct HfRecord {
    double u_plus = 0;
    double xi_breve = 0;
    bool done = false;
    bool failed = false;
    std::string error;
    double r_breve_star = 0;
    double r_star = 0;
};

struct LfRecord {
    double u_plus = 0;
    bool done = false;
    bool failed = false;
    std::string error;
    double max_final_ratio = 0;
    double min_abs_D = 0;
    double margin = 0;
    bool all_converged = false;
};

enum class Verdict { Stable, InstabilityDetected, Inconclusive };
std::string to_string(Verdict v);
// 0 stable, 2 instability detected, 3 inconclusive.
int exit_code(Verdict v);

struct RunRecord {
    std::string config_hash;
    json config;
    std::vector<SliceRecord> slices;
    std::vector<HfRecord> hf;
    std::vector<LfRecord> lf;
    Verdict verdict = Verdict::Inconclusive;
    std::vector<std::string> missing;  // keys of slices not yet evaluated
};

// Stable iff every slice is done with a conclusive zero winding, every HF bound succeeded and
// every LF study converged; any conclusive nonzero winding is an instability.
Verdict decide(const RunRecord& r);

json to_json(const RunRecord& r);
RunRecord record_from_json(const json& j);

struct ResumeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Layout: <output_dir>/<hash>/{config.json, profiles/, hf/, lf/, slices/, record.json}.
std::filesystem::path run_directory(const BatchConfig& c);

// Evaluates whatever is not yet persisted, then assembles the record from the persisted files.
// max_slices < 0 means no limit; a positive value stops early (used to exercise resumption).
RunRecord run_batch(const BatchConfig& c, int max_slices = -1);
// Plans and writes plan.json without evaluating anything.
std::vector<SliceTask> dry_run(const BatchConfig& c);
// Record from the persisted files alone.
RunRecord collect(const BatchConfig& c);

struct ReportFiles {
    std::string summary;
    std::vector<std::filesystem::path> figures;
};
// Verdict line and tables; SVG figures go to `dir` (HF surface, up to three contours, rib roasts).
ReportFiles report(const RunRecord& r, const std::filesystem::path& run_dir, const std::filesystem::path& dir);

}  // namespace shockstab
