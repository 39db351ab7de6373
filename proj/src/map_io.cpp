#include "fairdist/map_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace fairdist {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string join_lines(const std::vector<std::string>& problems) {
  std::string out;
  for (std::size_t i = 0; i < problems.size(); ++i) {
    if (i) out += '\n';
    out += problems[i];
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> problems)
    : std::runtime_error(join_lines(problems)), problems_(std::move(problems)) {}

Rational rational_from_json(const json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  // The shortest round-trip text of a double is what the author typed, so
  // 0.55 becomes exactly 11/20.
  if (value.is_number()) return parse_rational(value.dump());
  throw ValidationError({"expected a number or rational string, got " + value.dump()});
}

ParcelMap map_from_json(const json& doc) {
  std::vector<std::string> problems;
  if (!doc.is_object()) throw ValidationError({"map document must be a JSON object"});
  if (!doc.contains("parcels") || !doc["parcels"].is_array()) problems.push_back("map needs a 'parcels' array");
  if (!doc.contains("adjacency") || !doc["adjacency"].is_array()) problems.push_back("map needs an 'adjacency' array");
  if (!doc.contains("n_districts") || !doc["n_districts"].is_number_integer()) {
    problems.push_back("map needs an integer 'n_districts'");
  }
  if (!problems.empty()) throw ValidationError(problems);

  std::vector<Parcel> parcels;
  std::set<std::string> ids;
  for (const auto& entry : doc["parcels"]) {
    Parcel p;
    try {
      p.id = entry.at("id").get<std::string>();
      p.population = entry.contains("population") ? entry["population"].get<std::int64_t>() : 1;
      p.vote_share_a = rational_from_json(entry.at("vote_share_A"));
      if (entry.contains("rect") && !entry["rect"].is_null()) {
        const auto& r = entry["rect"];
        if (!r.is_array() || r.size() != 4) throw ValidationError({"rect must be [x, y, w, h]"});
        p.rect = Rect{r[0].get<double>(), r[1].get<double>(), r[2].get<double>(), r[3].get<double>()};
      }
    } catch (const ValidationError& e) {
      problems.push_back("parcel " + entry.dump() + ": " + e.what());
      continue;
    } catch (const std::exception& e) {
      problems.push_back("parcel " + entry.dump() + ": " + e.what());
      continue;
    }
    if (!ids.insert(p.id).second) problems.push_back("duplicate parcel id '" + p.id + "'");
    parcels.push_back(std::move(p));
  }

  std::vector<std::pair<std::string, std::string>> adjacency;
  for (const auto& edge : doc["adjacency"]) {
    if (!edge.is_array() || edge.size() != 2 || !edge[0].is_string() || !edge[1].is_string()) {
      problems.push_back("adjacency entry " + edge.dump() + " must be a pair of parcel ids");
      continue;
    }
    std::string a = edge[0].get<std::string>();
    std::string b = edge[1].get<std::string>();
    if (a == b) problems.push_back("self-loop on parcel '" + a + "'");
    for (const auto& id : {a, b}) {
      if (!ids.count(id)) problems.push_back("unknown parcel id '" + id + "' in adjacency");
    }
    adjacency.emplace_back(std::move(a), std::move(b));
  }
  if (!problems.empty()) throw ValidationError(problems);

  ParcelMap map(std::move(parcels), std::move(adjacency), doc["n_districts"].get<int>());
  if (auto violations = validate_map(map); !violations.empty()) throw ValidationError(violations);
  return map;
}

ordered_json map_to_json(const ParcelMap& map) {
  ordered_json doc;
  ordered_json parcels = ordered_json::array();
  for (const auto& p : map.parcels()) {
    ordered_json entry;
    entry["id"] = p.id;
    entry["population"] = p.population;
    entry["vote_share_A"] = to_string(p.vote_share_a);
    if (p.rect) entry["rect"] = {p.rect->x, p.rect->y, p.rect->w, p.rect->h};
    parcels.push_back(std::move(entry));
  }
  doc["parcels"] = std::move(parcels);
  ordered_json adjacency = ordered_json::array();
  for (const auto& [a, b] : map.adjacency()) adjacency.push_back({a, b});
  doc["adjacency"] = std::move(adjacency);
  doc["n_districts"] = map.n_districts();
  return doc;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError({"cannot open '" + path.string() + "'"});
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError({"'" + path.string() + "' is not valid JSON: " + e.what()});
  }
}

void write_json_file(const std::filesystem::path& path, const ordered_json& doc) {
  write_text_file(path, doc.dump(2) + "\n");
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

ParcelMap load_map(const std::filesystem::path& path) { return map_from_json(read_json_file(path)); }

Division division_from_json(const ParcelMap& map, const json& doc) {
  const json& a = doc.is_object() && doc.contains("assignment") ? doc["assignment"] : doc;
  std::vector<int> assignment(static_cast<std::size_t>(map.parcel_count()), -1);
  std::vector<std::string> problems;
  if (a.is_array()) {
    if (static_cast<int>(a.size()) != map.parcel_count()) {
      problems.push_back("assignment has " + std::to_string(a.size()) + " entries but the map has " +
                         std::to_string(map.parcel_count()) + " parcels");
    } else {
      for (std::size_t i = 0; i < a.size(); ++i) assignment[i] = a[i].get<int>();
    }
  } else if (a.is_object()) {
    for (const auto& [id, district] : a.items()) {
      auto idx = map.index_of(id);
      if (!idx) {
        problems.push_back("unknown parcel id '" + id + "' in assignment");
        continue;
      }
      assignment[static_cast<std::size_t>(*idx)] = district.get<int>();
    }
    for (int i = 0; i < map.parcel_count(); ++i) {
      if (assignment[static_cast<std::size_t>(i)] < 0) {
        problems.push_back("parcel '" + map.parcels()[static_cast<std::size_t>(i)].id + "' is not assigned");
      }
    }
  } else {
    problems.push_back("division must be an assignment array or an id-to-district object");
  }
  if (!problems.empty()) throw ValidationError(problems);
  Division d(std::move(assignment));
  if (auto violations = validate_division(map, d); !violations.empty()) throw ValidationError(violations);
  return d;
}

ordered_json division_to_json(const ParcelMap& map, const Division& division) {
  ordered_json doc;
  doc["assignment"] = division.assignment();
  ordered_json districts = ordered_json::array();
  for (ParcelSet d : division.districts()) districts.push_back(map.set_to_ids(d));
  doc["districts"] = std::move(districts);
  return doc;
}

ParcelMap make_grid_map(int rows, int cols, int n_districts, const std::vector<Rational>& shares_a) {
  std::vector<Parcel> parcels;
  std::vector<std::pair<std::string, std::string>> adjacency;
  auto name = [](int r, int c) { return "r" + std::to_string(r) + "c" + std::to_string(c); };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const auto i = static_cast<std::size_t>(r * cols + c);
      Parcel p;
      p.id = name(r, c);
      p.vote_share_a = i < shares_a.size() ? shares_a[i] : Rational(1, 2);
      p.rect = Rect{static_cast<double>(c), static_cast<double>(r), 1, 1};
      parcels.push_back(std::move(p));
      if (c + 1 < cols) adjacency.emplace_back(name(r, c), name(r, c + 1));
      if (r + 1 < rows) adjacency.emplace_back(name(r, c), name(r + 1, c));
    }
  }
  return ParcelMap(std::move(parcels), std::move(adjacency), n_districts);
}

ParcelMap make_complete_map(int count, int n_districts, const std::vector<Rational>& shares_a) {
  std::vector<Parcel> parcels;
  std::vector<std::pair<std::string, std::string>> adjacency;
  for (int i = 0; i < count; ++i) {
    Parcel p;
    p.id = "p" + std::to_string(i);
    p.vote_share_a = static_cast<std::size_t>(i) < shares_a.size() ? shares_a[static_cast<std::size_t>(i)]
                                                                    : Rational(1, 2);
    parcels.push_back(std::move(p));
  }
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) adjacency.emplace_back("p" + std::to_string(i), "p" + std::to_string(j));
  }
  return ParcelMap(std::move(parcels), std::move(adjacency), n_districts);
}

}  // namespace fairdist
