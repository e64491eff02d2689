#pragma once

// JSON jet files, schema "lipjet-jet/1":
//   {"schema": "lipjet-jet/1", "dim": d, "codim": m, "gamma": g,
//    "points": [[x_1, ..., x_d], ...],
//    "jets": [[level_0, ..., level_k], ...]}
// where level l is the row-major d^l x m coefficient block, flattened.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "lipjet/jets.hpp"

namespace lipjet {

inline constexpr const char* kJetSchema = "lipjet-jet/1";

/// Asymmetry accepted on load, relative to the largest coefficient.
inline constexpr double kLoadSymmetryTolerance = 1e-9;

LipFunction jet_from_json(const nlohmann::json& doc, const std::string& origin = "<json>");
nlohmann::json jet_to_json(const LipFunction& f);

LipFunction load_jet_file(const std::filesystem::path& path);
void save_jet_file(const LipFunction& f, const std::filesystem::path& path);

/// Reads a whole file as JSON, reporting parse errors with line and column.
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const nlohmann::json& doc, const std::filesystem::path& path);

/// Centers file: either a bare array of site indices or {"centers": [...]}.
std::vector<std::size_t> load_indices(const std::filesystem::path& path);

}  // namespace lipjet
