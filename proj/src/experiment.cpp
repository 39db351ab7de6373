#include "fairdist/experiment.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

#include "fairdist/map_io.hpp"
#include "fairdist/render.hpp"

namespace fairdist {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::map<std::string, Rational> rational_map(const json& doc, const char* what) {
  if (!doc.is_object()) throw ValidationError({std::string(what) + " must be an object keyed by parcel id"});
  std::map<std::string, Rational> out;
  for (const auto& [id, value] : doc.items()) out.emplace(id, rational_from_json(value));
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::string file_stem(std::size_t index, const std::string& label) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02zu_", index);
  std::string stem = buf;
  for (char c : label) stem += (std::isalnum(static_cast<unsigned char>(c)) || c == '-') ? c : '_';
  return stem;
}

}  // namespace

std::string SequenceSource::label() const {
  if (file) return "file:" + file->filename().string();
  return strategy->label();
}

RatingSpec rating_from_json(Party party, const json& doc) {
  if (doc.is_null()) return RatingSpec::win(party);
  if (!doc.is_object()) throw ValidationError({"rating must be an object"});
  const std::string kind = doc.value("kind", "win");
  const Rational threshold = doc.contains("threshold") ? rational_from_json(doc["threshold"]) : Rational(1, 2);
  if (kind == "win") return RatingSpec::win(party, threshold);
  if (kind == "weighted") {
    const Rational win_value = doc.contains("win_value") ? rational_from_json(doc["win_value"]) : Rational(1);
    std::map<std::string, Rational> bonus;
    if (doc.contains("parcel_bonus")) bonus = rational_map(doc["parcel_bonus"], "parcel_bonus");
    return RatingSpec::weighted(party, win_value, std::move(bonus), threshold);
  }
  throw ValidationError({"unknown rating kind '" + kind + "'"});
}

VotingModel voting_model_from_json(const json& doc) {
  if (doc.is_null()) return VotingModel::outcome();
  if (!doc.is_object()) throw ValidationError({"voting_model must be an object"});
  std::map<std::string, Rational> overrides;
  if (doc.contains("overrides")) overrides = rational_map(doc["overrides"], "overrides");
  return VotingModel::with_overrides(std::move(overrides), doc.value("fall_back_to_map", true));
}

PartyAgent agent_from_json(Party party, const json& doc) {
  PartyAgent agent = PartyAgent::win_maximizer(party);
  if (doc.is_null()) return agent;
  if (!doc.is_object()) throw ValidationError({"agent must be an object"});
  agent.rating = rating_from_json(party, doc.value("rating", json()));
  agent.voting_model = voting_model_from_json(doc.value("voting_model", json()));
  if (doc.contains("opponent_model")) {
    try {
      agent.opponent_model = opponent_model_from_string(doc["opponent_model"].get<std::string>());
    } catch (const std::exception& e) {
      throw ValidationError({std::string("bad opponent_model: ") + e.what()});
    }
  }
  if (doc.contains("predicted_opponent_rating")) {
    agent.predicted_opponent_rating = rating_from_json(other(party), doc["predicted_opponent_rating"]);
  }
  return agent;
}

ExperimentConfig experiment_config_from_json(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw ValidationError({"config must be a JSON object"});
  std::vector<std::string> problems;
  ExperimentConfig config;
  if (doc.contains("map") && doc["map"].is_string()) {
    config.map_path = resolve(base_dir, doc["map"].get<std::string>());
  } else {
    problems.push_back("config needs a 'map' path");
  }
  if (doc.contains("seed") && (doc["seed"].is_number_unsigned() ||
                             (doc["seed"].is_number_integer() && doc["seed"].get<std::int64_t>() >= 0))) {
    config.seed = doc["seed"].get<std::uint64_t>();
  } else {
    problems.push_back("config needs a nonnegative integer 'seed'");
  }
  config.output_dir = resolve(base_dir, doc.value("output", std::string("out")));

  if (!doc.contains("strategies") || !doc["strategies"].is_array()) {
    problems.push_back("config needs a 'strategies' array");
  } else {
    const auto& list = doc["strategies"];
    if (list.empty()) problems.push_back("config lists zero strategies");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto& entry = list[i];
      SequenceSource src;
      try {
        if (entry.is_string()) {
          src.strategy = SequenceStrategy::parse(entry.get<std::string>());
        } else if (entry.is_object() && entry.contains("file")) {
          src.file = resolve(base_dir, entry["file"].get<std::string>());
        } else if (entry.is_object() && entry.contains("strategy")) {
          src.strategy = SequenceStrategy::parse(entry["strategy"].get<std::string>());
          if (entry.contains("seed")) src.seed = entry["seed"].get<std::uint64_t>();
          if (entry.contains("step_budget")) src.step_budget = entry["step_budget"].get<std::uint64_t>();
        } else {
          throw std::invalid_argument("expected a strategy label or an object with 'strategy' or 'file'");
        }
        config.strategies.push_back(std::move(src));
      } catch (const std::exception& e) {
        problems.push_back("strategy " + std::to_string(i) + ": " + e.what());
      }
    }
  }

  const json agents = doc.value("agents", json::object());
  try {
    config.agent_a = agent_from_json(Party::A, agents.value("A", json()));
    config.agent_b = agent_from_json(Party::B, agents.value("B", json()));
  } catch (const ValidationError& e) {
    problems.insert(problems.end(), e.problems().begin(), e.problems().end());
  } catch (const std::exception& e) {
    problems.push_back(std::string("bad agents: ") + e.what());
  }
  if (!problems.empty()) throw ValidationError(problems);
  return config;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  return experiment_config_from_json(read_json_file(path), path.parent_path());
}

ordered_json target_report_to_json(const ParcelMap& map, const TargetReport& report) {
  ordered_json j;
  j["best"] = to_string(report.best);
  j["worst"] = to_string(report.worst);
  j["target"] = to_string(report.target);
  j["best_witness"] = division_to_json(map, report.best_witness);
  j["worst_witness"] = division_to_json(map, report.worst_witness);
  return j;
}

ExperimentOutput run_experiment(const ExperimentConfig& config) {
  if (config.strategies.empty()) throw ValidationError({"config lists zero strategies"});
  const ParcelMap map = load_map(config.map_path);

  std::vector<SplitSequence> sequences;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < config.strategies.size(); ++i) {
    const SequenceSource& src = config.strategies[i];
    std::string label = src.label();
    const std::string tag = "sequence " + std::to_string(i) + " (" + label + "): ";
    try {
      if (src.file) {
        const json doc = read_json_file(*src.file);
        sequences.push_back(split_sequence_from_json(map, doc));
        if (doc.contains("label") && doc["label"].is_string()) label = doc["label"].get<std::string>();
      } else {
        // Generation streams are kept apart from the protocol-run streams.
        const std::uint64_t seed = src.seed ? *src.seed : derive_seed(~config.seed, i);
        sequences.push_back(generate_split_sequence(map, *src.strategy, seed, src.step_budget));
      }
    } catch (const ValidationError& e) {
      std::vector<std::string> problems;
      for (const auto& p : e.problems()) problems.push_back(tag + p);
      throw ValidationError(problems);
    } catch (const SequenceError& e) {
      throw SequenceError(tag + e.what());
    } catch (const InfeasibleError& e) {
      throw InfeasibleError(tag + e.what());
    }
    labels.push_back(label);
  }

  ExperimentOutput out;
  out.augmented = run_augmented(map, sequences, config.agent_a, config.agent_b, config.seed, labels);
  const AugmentedResult& aug = out.augmented;
  out.final_wins_a = rate_division(map, aug.final_division, RatingSpec::win(Party::A), VotingModel::outcome());

  auto& files = out.files;
  ordered_json targets;
  targets["absolute"]["A"] = target_report_to_json(map, geometric_target(map, RatingSpec::win(Party::A), VotingModel::outcome()));
  targets["absolute"]["B"] = target_report_to_json(map, geometric_target(map, RatingSpec::win(Party::B), VotingModel::outcome()));
  targets["agents"]["A"] = target_report_to_json(map, geometric_target(map, config.agent_a.rating, config.agent_a.voting_model));
  targets["agents"]["B"] = target_report_to_json(map, geometric_target(map, config.agent_b.rating, config.agent_b.voting_model));
  files["targets.json"] = targets.dump(2) + "\n";

  std::ostringstream summary;
  summary << "seed " << config.seed << "\n";
  ordered_json final_doc;
  final_doc["seed"] = config.seed;
  auto candidates = ordered_json::array();
  for (std::size_t t = 0; t < aug.transcripts.size(); ++t) {
    const Transcript& tr = aug.transcripts[t];
    const std::size_t index = aug.sequence_indices[t];
    const std::string stem = file_stem(index, labels[index]);
    files["transcripts/" + stem + ".json"] = transcript_to_json(map, tr).dump(2) + "\n";
    const std::string table = summary_table(tr);
    files["tables/" + stem + ".txt"] = table;
    files["renders/" + stem + ".txt"] = render_ascii(map, tr.division);
    files["renders/" + stem + ".svg"] = render_svg(map, tr.division);
    summary << "\n== " << stem << "\n" << table;

    ordered_json c;
    c["sequence"] = index;
    c["label"] = labels[index];
    c["outcome_wins_A"] = to_string(tr.outcome_wins_a);
    c["rank_A"] = aug.ranking.rank_a[t];
    c["rank_B"] = aug.ranking.rank_b[t];
    candidates.push_back(std::move(c));
  }
  auto dropped = ordered_json::array();
  for (const auto& d : aug.dropped) {
    dropped.push_back(ordered_json{{"sequence", d.index}, {"label", labels[d.index]}, {"reason", d.reason}});
    summary << "\n== " << file_stem(d.index, labels[d.index]) << "\ndropped: " << d.reason << "\n";
  }
  const std::size_t chosen = aug.sequence_indices[aug.ranking.chosen];
  final_doc["candidates"] = std::move(candidates);
  final_doc["dropped"] = std::move(dropped);
  final_doc["ranking"] = ordered_json{{"chosen_sequence", chosen}, {"tie", aug.ranking.tie}};
  final_doc["outcome_wins_A"] = to_string(out.final_wins_a);
  final_doc["division"] = division_to_json(map, aug.final_division);
  files["final.json"] = final_doc.dump(2) + "\n";
  files["final.txt"] = render_ascii(map, aug.final_division);
  files["final.svg"] = render_svg(map, aug.final_division);

  summary << "\nranking: sequence " << chosen << (aug.ranking.tie ? " (coin toss)" : "") << "\n";
  summary << "final: A wins " << to_string(out.final_wins_a) << "\n";
  files["summary.txt"] = summary.str();
  return out;
}

void write_experiment(const ExperimentOutput& output, const std::filesystem::path& dir) {
  for (const auto& [name, text] : output.files) write_text_file(dir / name, text);
}

}  // namespace fairdist
