#pragma once

#include <json.hpp>
#include <string>

#include "flist/direct_scattering.hpp"
#include "flist/ensemble.hpp"
#include "flist/field_core.hpp"

namespace flist {

using json = nlohmann::ordered_json;

// Provenance block attached to every artifact: command, parameters,
// toolkit version and hashes of input files.
json provenance(const std::string& command, const json& parameters, const json& input_hashes);
// Hex digest of a file's bytes (std::hash over the contents).
std::string file_hash(const std::string& path);

// Field CSV: first line "# <json header>", then "x,re_u,im_u" rows.
void write_potential_csv(const std::string& path, const SampledPotential& u, const json& prov);
std::string potential_csv(const SampledPotential& u, const json& prov);
SampledPotential read_potential_csv(const std::string& path);

json ensemble_to_json(const SolitonEnsemble& ens);
SolitonEnsemble ensemble_from_json(const json& j);

json scattering_to_json(const ScatteringData& sd);
ScatteringData scattering_from_json(const json& j);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Shortest round-trip decimal representation.
std::string fmt_double(double v);

}  // namespace flist
