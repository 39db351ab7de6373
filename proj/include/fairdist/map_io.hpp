#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fairdist/model.hpp"

namespace fairdist {

/// Raised when a map, division or configuration file is malformed or
/// violates an invariant. what() lists every problem found, one per line.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// Accepts a JSON number or a string ("3/5", "0.6").
Rational rational_from_json(const nlohmann::json& value);

/// Parses a map document. Duplicate ids, self-loops and edges naming unknown
/// parcels are rejected here, as is anything validate_map() reports.
ParcelMap map_from_json(const nlohmann::json& doc);
nlohmann::ordered_json map_to_json(const ParcelMap& map);
ParcelMap load_map(const std::filesystem::path& path);

/// `{"assignment": [0, 1, ...]}` in map order, or `{"assignment": {"id": 0, ...}}`.
Division division_from_json(const ParcelMap& map, const nlohmann::json& doc);
nlohmann::ordered_json division_to_json(const ParcelMap& map, const Division& division);

nlohmann::json read_json_file(const std::filesystem::path& path);
/// Writes `doc` indented by two spaces with a trailing newline.
void write_json_file(const std::filesystem::path& path, const nlohmann::ordered_json& doc);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Regular grid of unit-square parcels named "r{row}c{col}", 4-neighbour
/// adjacency, with the given row-major A shares.
ParcelMap make_grid_map(int rows, int cols, int n_districts, const std::vector<Rational>& shares_a);
/// Every pair of parcels adjacent, no geometry.
ParcelMap make_complete_map(int parcels, int n_districts, const std::vector<Rational>& shares_a);

}  // namespace fairdist
