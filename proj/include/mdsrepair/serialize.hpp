#pragma once

// JSON documents exchanged by the command-line tool. Every document carries
// "v": 1; node indices are 1-based.

#include <string>
#include <vector>

#include <json.hpp>

#include "mdsrepair/codes.hpp"
#include "mdsrepair/nrc.hpp"
#include "mdsrepair/repair.hpp"
#include "mdsrepair/simulate.hpp"

namespace mdsrepair {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kLibraryVersion = "1.0.0";

Json tower_to_json(const FieldTower& t);
/// Throws MalformedInput, or the tower's own validation errors.
TowerPtr tower_from_json(const Json& j);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json rational_to_json(const Rational& x);

Json code_to_json(const Realization& re, const std::vector<std::string>& labels);

struct LoadedCode {
  Realization realization;
  std::vector<std::string> labels;
};

/// Rebuilds and re-validates a realization. Does not require MDS.
LoadedCode code_from_json(const Json& j);

Json scheme_to_json(const RepairScheme& scheme);
/// Validates shapes and that every M_i repairs node i.
RepairScheme scheme_from_json(const Json& j, const Realization& re);

Json provenance_to_json(const NrcBundle& bundle);

Json bounds_to_json(const BoundsReport& b);
Json metrics_to_json(const NodeMetrics& m, const BoundsReport* bounds = nullptr);
Json bruteforce_to_json(const BruteForceResult& r, const char* objective);
Json campaign_to_json(const CampaignReport& c);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

/// Parses text, mapping syntax errors to MalformedInput.
Json parse_json(const std::string& text);

}  // namespace mdsrepair
