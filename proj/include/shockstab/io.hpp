#pragma once

#include "shockstab/hf_bounds.hpp"
#include "shockstab/lf_study.hpp"
#include "shockstab/winding.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace shockstab {

using json = nlohmann::json;

json to_json(const GasParams& g);
GasParams gas_from_json(const json& j);

// Node data, gas and diagnostics; endstates and the pseudo-Lagrangian grid are rebuilt on load.
json to_json(const Profile& p);
Profile profile_from_json(const json& j);
void save_profile(const Profile& p, const std::filesystem::path& file);
Profile load_profile(const std::filesystem::path& file);

json to_json(const Formulation& f);
Formulation formulation_from_json(const json& j);

json to_json(const TrackingBound& b);
json to_json(const LfSummary& s, bool with_samples);
json to_json(const ContourResult& r, bool with_samples);

// Writes to a sibling temporary file, then renames over the target.
void write_atomic(const std::filesystem::path& file, const std::string& text);
json read_json(const std::filesystem::path& file);

}  // namespace shockstab
