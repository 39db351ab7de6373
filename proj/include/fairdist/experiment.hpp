#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fairdist/protocol.hpp"

namespace fairdist {

/// One entry of an experiment's sequence list: a generated strategy or a
/// sequence file.
struct SequenceSource {
  std::optional<SequenceStrategy> strategy;
  /// Generation seed; derived from the master seed when absent.
  std::optional<std::uint64_t> seed;
  std::uint64_t step_budget = 200000;
  std::optional<std::filesystem::path> file;

  std::string label() const;
};

struct ExperimentConfig {
  std::filesystem::path map_path;
  std::vector<SequenceSource> strategies;
  std::uint64_t seed = 0;
  PartyAgent agent_a = PartyAgent::win_maximizer(Party::A);
  PartyAgent agent_b = PartyAgent::win_maximizer(Party::B);
  std::filesystem::path output_dir;
};

/// `{"kind": "win", "threshold": "1/2"}` or `{"kind": "weighted", "win_value": 1,
/// "parcel_bonus": {"id": "1/4"}, "threshold": "1/2"}`.
RatingSpec rating_from_json(Party party, const nlohmann::json& doc);
/// `{"overrides": {"id": "3/5"}, "fall_back_to_map": true}`; null means the
/// voting outcome.
VotingModel voting_model_from_json(const nlohmann::json& doc);
PartyAgent agent_from_json(Party party, const nlohmann::json& doc);

/// Relative paths (map, sequence files, output) resolve against `base_dir`.
/// Throws ValidationError listing every problem.
ExperimentConfig experiment_config_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

nlohmann::ordered_json target_report_to_json(const ParcelMap& map, const TargetReport& report);

struct ExperimentOutput {
  AugmentedResult augmented;
  /// Districts A wins in the final division under the voting outcome.
  Rational final_wins_a;
  /// Relative path to file contents, sorted by path.
  std::map<std::string, std::string> files;
};

/// Generates the sequences, runs the augmented protocol and renders every
/// report in memory. Sequence generation errors carry the sequence index.
ExperimentOutput run_experiment(const ExperimentConfig& config);
void write_experiment(const ExperimentOutput& output, const std::filesystem::path& dir);

}  // namespace fairdist
