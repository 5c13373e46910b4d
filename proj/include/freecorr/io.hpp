#pragma once

// JSON and CSV serialization. Every float is written with 17 significant digits.

#include <json.hpp>
#include <string>
#include <vector>

#include "freecorr/measures.hpp"
#include "freecorr/momentengine.hpp"
#include "freecorr/rmtmc.hpp"
#include "freecorr/verify.hpp"

namespace freecorr {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "freecorr/1";

// %.17g; non-finite values become "null" in JSON and "nan"/"inf" in CSV.
std::string format_number(double v);
std::string dump_json(const Json& j, int indent = 2);

// {"schema": ..., "command": ..., body fields...}
Json envelope(const std::string& command, const Json& body);

Json to_json(const ExpansionResult& r);
Json to_json(const CumulantTable& t);
Json to_json(const SpectralMeasure& m);
Json to_json(const CheckReport& r);
Json to_json(const MCReport& r);
Json to_json(const GenusRow& r);
Json to_json(const EnsembleSpec& spec);

std::string expansion_csv(const ExpansionResult& r);
std::string cumulants_csv(const CumulantTable& t);
// Rows "density,x,value" then "atom,x,weight".
std::string measure_csv(const SpectralMeasure& m);
std::string check_csv(const std::vector<CheckReport>& rs);
// One row per k.
std::string mc_csv(const std::vector<MCReport>& rs);
std::string genus_csv(const std::vector<GenusRow>& rows);

// {"center": c, "coeffs": [...]} or a bare coefficient array about the default center.
Series series_from_json(const Json& j, double default_center);
// {"side": "hc"|"schur", "epsilon": e, "series": [...]}
AsymptoticInput input_from_json(const Json& j);
// {"components": [{"kind": ..., "sigma", "ratio", "thetas", "spectrum", "scale", "conjugate"}]}
EnsembleSpec ensemble_from_json(const Json& j);

Json parse_json_text(const std::string& text);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace freecorr
