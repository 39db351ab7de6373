// fairdist command-line tool. Exit codes: 0 success, 1 invalid input,
// 2 protocol infeasibility. FAIRDIST_LOG=info|debug turns on progress lines
// on stderr; nothing else reads the environment.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>

#include "fairdist/experiment.hpp"
#include "fairdist/fairdiv.hpp"
#include "fairdist/map_io.hpp"
#include "fairdist/render.hpp"

using namespace fairdist;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

enum class LogLevel { Quiet, Info, Debug };

LogLevel log_level() {
  const char* env = std::getenv("FAIRDIST_LOG");
  if (!env) return LogLevel::Quiet;
  const std::string v = env;
  if (v == "debug") return LogLevel::Debug;
  if (v == "info") return LogLevel::Info;
  return LogLevel::Quiet;
}

void log(LogLevel level, const std::string& message) {
  if (level <= log_level()) std::cerr << "fairdist: " << message << "\n";
}

Party party_from_string(const std::string& text) {
  if (text == "A") return Party::A;
  if (text == "B") return Party::B;
  throw ValidationError({"party must be A or B, got '" + text + "'"});
}

ParcelSet piece_from_ids(const ParcelMap& map, const std::vector<std::string>& ids) {
  ParcelSet piece;
  std::vector<std::string> problems;
  for (const auto& id : ids) {
    const auto index = map.index_of(id);
    if (!index) {
      problems.push_back("unknown parcel id '" + id + "'");
    } else {
      piece.insert(*index);
    }
  }
  if (!problems.empty()) throw ValidationError(problems);
  return piece;
}

int cmd_validate(const std::string& path) {
  const ParcelMap map = load_map(path);
  std::cout << "valid: " << map.parcel_count() << " parcels, " << map.n_districts() << " districts, statewide A share "
            << to_string(map.statewide_share_a()) << "\n";
  return 0;
}

int cmd_enumerate(const std::string& path, bool count_only) {
  const ParcelMap map = load_map(path);
  if (count_only) {
    std::cout << count_divisions(map) << "\n";
    return 0;
  }
  for_each_division(map, [&](const Division& d) {
    std::cout << json(d.assignment()).dump() << "\n";
    return true;
  });
  return 0;
}

int cmd_target(const std::string& path, const std::string& party_text, std::optional<int> k,
               const std::vector<std::string>& piece_ids) {
  const ParcelMap map = load_map(path);
  const Party party = party_from_string(party_text);
  const RatingSpec spec = RatingSpec::win(party);
  ordered_json out;
  out["party"] = to_string(party);
  if (k) {
    const Split split{*k, piece_from_ids(map, piece_ids)};
    if (auto v = validate_split(map, split); !v.empty()) throw ValidationError(v);
    out["k"] = *k;
    out["report"] = target_report_to_json(map, ksplit_geometric_target(map, split, spec, VotingModel::outcome()));
  } else {
    if (!piece_ids.empty()) throw ValidationError({"--piece1 needs --split"});
    out["report"] = target_report_to_json(map, geometric_target(map, spec, VotingModel::outcome()));
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_protocol(const std::string& path, const std::string& strategy_text, std::uint64_t seed,
                 std::optional<std::uint64_t> sequence_seed, const std::string& sequence_file, bool summary) {
  const ParcelMap map = load_map(path);
  SplitSequence seq;
  std::string label;
  if (!sequence_file.empty()) {
    seq = split_sequence_from_json(map, read_json_file(sequence_file));
    label = "file:" + std::filesystem::path(sequence_file).filename().string();
  } else {
    SequenceStrategy strategy;
    try {
      strategy = SequenceStrategy::parse(strategy_text);
    } catch (const std::invalid_argument& e) {
      throw ValidationError({e.what()});
    }
    seq = generate_split_sequence(map, strategy, sequence_seed ? *sequence_seed : derive_seed(~seed, 0));
    label = strategy.label();
  }
  log(LogLevel::Info, "running protocol on " + label);
  const Transcript t = run_protocol(map, seq, PartyAgent::win_maximizer(Party::A), PartyAgent::win_maximizer(Party::B),
                                    seed, label);
  if (summary) {
    std::cout << summary_table(t);
  } else {
    std::cout << transcript_to_json(map, t).dump(2) << "\n";
  }
  return 0;
}

int cmd_augment(const std::string& config_path, const std::string& out_override) {
  ExperimentConfig config = load_experiment_config(config_path);
  if (!out_override.empty()) config.output_dir = out_override;
  log(LogLevel::Info, "running " + std::to_string(config.strategies.size()) + " sequences");
  const ExperimentOutput out = run_experiment(config);
  write_experiment(out, config.output_dir);
  for (const auto& [name, text] : out.files) log(LogLevel::Debug, "wrote " + name);
  std::cout << out.files.at("summary.txt");
  return 0;
}

int cmd_render(const std::string& map_path, const std::string& division_path, const std::string& format) {
  const ParcelMap map = load_map(map_path);
  const Division d = division_from_json(map, read_json_file(division_path));
  RenderFormat f;
  try {
    f = render_format_from_string(format);
  } catch (const std::invalid_argument& e) {
    throw ValidationError({e.what()});
  }
  std::cout << render_division(map, d, f);
  return 0;
}

int cmd_adjusted_winner(const std::string& path) {
  const PointAllocation points = point_allocation_from_json(read_json_file(path));
  std::cout << to_json(points, adjusted_winner(points)).dump(2) << "\n";
  return 0;
}

int cmd_cut_choose(const std::string& path) {
  const json doc = read_json_file(path);
  const auto a = valuation_from_json(doc.at("A"));
  const auto b = valuation_from_json(doc.at("B"));
  std::cout << to_json(cut_and_choose(a, b)).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fair-division redistricting engine"};
  app.require_subcommand(1);

  std::string map_path, second_path, party, strategy = "sweep:vertical", format = "ascii", sequence_file, out_dir;
  bool count_only = false, summary = false;
  std::optional<int> split_k;
  std::vector<std::string> piece1;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> sequence_seed;

  auto* validate = app.add_subcommand("validate", "Check a map file");
  validate->add_option("map", map_path)->required();

  auto* enumerate = app.add_subcommand("enumerate", "List every viable division, one JSON array per line");
  enumerate->add_option("map", map_path)->required();
  enumerate->add_flag("--count-only", count_only, "print only the number of divisions");

  auto* target = app.add_subcommand("target", "Best, worst and target district wins for a party");
  target->add_option("map", map_path)->required();
  target->add_option("--party", party, "A or B")->required();
  auto* split_opt = target->add_option("--split", split_k, "restrict to divisions respecting a k-split");
  target->add_option("--piece1", piece1, "parcel ids of piece 1, comma separated")->delimiter(',')->needs(split_opt);

  auto* protocol = app.add_subcommand("protocol", "Run the protocol on one split sequence and print the transcript");
  protocol->add_option("map", map_path)->required();
  protocol->add_option("--strategy", strategy, "sweep:<direction>[:reverse] or random_growth");
  protocol->add_option("--seed", seed, "protocol seed")->required();
  protocol->add_option("--sequence-seed", sequence_seed, "seed for sequence generation (derived from --seed if absent)");
  protocol->add_option("--sequence", sequence_file, "read the split sequence from a file instead");
  protocol->add_flag("--summary", summary, "print the summary table instead of the transcript");

  auto* augment = app.add_subcommand("augment", "Run an experiment config and write its reports");
  augment->add_option("config", map_path)->required();
  augment->add_option("--out", out_dir, "output directory (overrides the config)");

  auto* render = app.add_subcommand("render", "Draw a division");
  render->add_option("map", map_path)->required();
  render->add_option("division", second_path)->required();
  render->add_option("--format", format, "ascii or svg");

  auto* fairdiv = app.add_subcommand("fairdiv", "Classic two-party fair division");
  fairdiv->require_subcommand(1);
  auto* aw = fairdiv->add_subcommand("adjusted-winner", "Adjusted Winner on a bids file");
  aw->add_option("bids", map_path)->required();
  auto* cc = fairdiv->add_subcommand("cut-choose", "Cut-and-choose on two piecewise valuations");
  cc->add_option("valuations", map_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*validate) return cmd_validate(map_path);
    if (*enumerate) return cmd_enumerate(map_path, count_only);
    if (*target) return cmd_target(map_path, party, split_k, piece1);
    if (*protocol) return cmd_protocol(map_path, strategy, seed, sequence_seed, sequence_file, summary);
    if (*augment) return cmd_augment(map_path, out_dir);
    if (*render) return cmd_render(map_path, second_path, format);
    if (*aw) return cmd_adjusted_winner(map_path);
    if (*cc) return cmd_cut_choose(map_path);
  } catch (const ValidationError& e) {
    std::cerr << "invalid input:\n" << e.what() << "\n";
    return 1;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const NoSwitchPointError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const SequenceError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
