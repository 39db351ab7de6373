#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fairdist/enumerate.hpp"
#include "fairdist/model.hpp"
#include "fairdist/rng.hpp"

namespace fairdist {

/// How an agent predicts the other party will cut the other party's piece.
enum class OpponentModel {
  /// The opponent's piece is cut to minimise the evaluating agent's rating.
  Pessimistic,
  /// The opponent maximises its own rating; ties go against the evaluator.
  SelfInterested,
};

/// The two ways a split can be filled in.
enum class Option {
  ADividesPiece1,  // option (1): A cuts piece 1, B cuts piece 2
  BDividesPiece1,  // option (2): B cuts piece 1, A cuts piece 2
};

enum class Preference { ADividesPiece1, BDividesPiece1, Indifferent };

const char* to_string(Option option);
const char* to_string(Preference preference);
const char* to_string(OpponentModel model);
Option option_from_string(const std::string& text);
Preference preference_from_string(const std::string& text);
OpponentModel opponent_model_from_string(const std::string& text);

struct PartyAgent {
  Party party = Party::A;
  VotingModel voting_model;
  RatingSpec rating = RatingSpec::win(Party::A);
  OpponentModel opponent_model = OpponentModel::Pessimistic;
  /// Used by the self-interested model; defaults to Win for the other party
  /// under this agent's voting model.
  std::optional<RatingSpec> predicted_opponent_rating;

  /// Agent that counts the districts it wins under `model`.
  static PartyAgent win_maximizer(Party party, VotingModel model = VotingModel::outcome());
};

/// Rating an agent expects from one option, split by piece.
struct OptionOutcome {
  Rational piece1;
  Rational piece2;
  Rational total() const { return piece1 + piece2; }
  bool operator==(const OptionOutcome&) const = default;
};

/// One agent's expectations for both options of one split.
struct SplitEvaluation {
  int k = 0;
  OptionOutcome a_divides;
  OptionOutcome b_divides;
  bool operator==(const SplitEvaluation&) const = default;
};

struct PreferenceDeclaration {
  std::vector<Preference> per_split;  // index k-1
  bool operator==(const PreferenceDeclaration&) const = default;
};

enum class Branch { Agreement, SingleIndifference, DoubleIndifference, SwitchPoint };
const char* to_string(Branch branch);

struct Resolution {
  Branch branch = Branch::Agreement;
  int k = 0;  // split whose option is used
  Option option = Option::ADividesPiece1;
  std::optional<int> i0;            // switch point, SwitchPoint branch only
  std::optional<int> prescription;  // 1..4 = i..iv, SwitchPoint branch only
  bool operator==(const Resolution&) const = default;
};

/// No split where A's preference flips from option (2) to option (1).
class NoSwitchPointError : public std::runtime_error {
 public:
  NoSwitchPointError() : std::runtime_error("no switch point") {}
  explicit NoSwitchPointError(const std::string& message) : std::runtime_error(message) {}
};

/// Could not build a nested split sequence within the backtracking budget.
class SequenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SweepDirection { Vertical, Horizontal, Diagonal, AntiDiagonal };

struct SequenceStrategy {
  enum class Kind { Sweep, RandomGrowth };
  Kind kind = Kind::Sweep;
  SweepDirection direction = SweepDirection::Vertical;
  /// Sweep from the opposite side.
  bool reverse = false;

  static SequenceStrategy sweep(SweepDirection direction, bool reverse = false) {
    return SequenceStrategy{Kind::Sweep, direction, reverse};
  }
  static SequenceStrategy random_growth() { return SequenceStrategy{Kind::RandomGrowth, SweepDirection::Vertical, false}; }

  /// "sweep:vertical", "sweep:diagonal:reverse", "random_growth".
  std::string label() const;
  static SequenceStrategy parse(const std::string& label);
};

/// Independent agent's split sequence. Sweeps accrete parcels in order of
/// the direction key (parcel centres; map order without geometry); random
/// growth accretes a uniformly random frontier parcel. Both keep both pieces
/// connected and every split divisible, backtracking on dead ends.
SplitSequence generate_split_sequence(const ParcelMap& map, const SequenceStrategy& strategy, std::uint64_t seed,
                                      std::uint64_t step_budget = 200000);

OptionOutcome evaluate_option_detail(const PartyAgent& agent, const ParcelMap& map, const Split& split, Option option);
Rational evaluate_option(const PartyAgent& agent, const ParcelMap& map, const Split& split, Option option);
SplitEvaluation evaluate_split(const PartyAgent& agent, const ParcelMap& map, const Split& split);

/// Strict preference on exact rational comparison of the two totals.
Preference preference_of(const SplitEvaluation& evaluation);
PreferenceDeclaration declare_preferences(const PartyAgent& agent, const ParcelMap& map, const SplitSequence& sequence);

/// Agreement, then single indifference, then double indifference, then the
/// switch point; lowest k within a branch. Randomness is drawn only for the
/// double-indifference option and the switch-point prescription.
Resolution resolve(const PreferenceDeclaration& prefs_a, const PreferenceDeclaration& prefs_b, Rng& rng);

/// Each party cuts its own piece to maximise its own rating.
Division realize_division(const ParcelMap& map, const Split& split, Option option, const PartyAgent& agent_a,
                          const PartyAgent& agent_b);

/// Record of one protocol run.
struct Transcript {
  std::uint64_t seed = 0;
  std::string sequence_label;
  SplitSequence sequence;
  std::vector<SplitEvaluation> evaluations_a;
  std::vector<SplitEvaluation> evaluations_b;
  PreferenceDeclaration prefs_a;
  PreferenceDeclaration prefs_b;
  Resolution resolution;
  Division division;
  /// Each party's rating of the division under its own model.
  Rational rating_a;
  Rational rating_b;
  /// Districts A wins under the voting outcome.
  Rational outcome_wins_a;

  bool operator==(const Transcript&) const = default;
};

Transcript run_protocol(const ParcelMap& map, const SplitSequence& sequence, const PartyAgent& agent_a,
                        const PartyAgent& agent_b, std::uint64_t seed, std::string sequence_label = "");

struct RankingResult {
  std::size_t chosen = 0;
  std::vector<int> rank_a;  // 1 = best
  std::vector<int> rank_b;
  /// Whether two candidates shared the best worse-rank and a coin was tossed.
  bool tie = false;
};

/// Rawlsian selection: minimise the worse of the two ranks, coin toss between
/// the (at most two) candidates that tie. Rankings order by rating, then
/// canonical division order, then candidate position.
RankingResult ranking_protocol(const ParcelMap& map, const std::vector<Division>& candidates, const PartyAgent& agent_a,
                               const PartyAgent& agent_b, Rng& rng);

struct DroppedSequence {
  std::size_t index = 0;
  std::string reason;
};

struct AugmentedResult {
  std::vector<Transcript> transcripts;
  /// Index into the input sequences for each transcript.
  std::vector<std::size_t> sequence_indices;
  std::vector<DroppedSequence> dropped;
  RankingResult ranking;
  Division final_division;
};

/// Runs the protocol once per sequence (sequence i seeded with
/// derive_seed(seed, i)), then ranks the outcomes with a generator seeded by
/// derive_seed(seed, sequences.size()). Sequences without a switch point are
/// dropped; if all are dropped a NoSwitchPointError listing them is thrown.
/// Other errors are rethrown with the sequence index prefixed.
AugmentedResult run_augmented(const ParcelMap& map, const std::vector<SplitSequence>& sequences,
                              const PartyAgent& agent_a, const PartyAgent& agent_b, std::uint64_t seed,
                              const std::vector<std::string>& labels = {});

/// `{"label": ..., "splits": [{"k": 1, "piece1": [ids]}, ...]}`; the label
/// is optional on input.
nlohmann::ordered_json split_sequence_to_json(const ParcelMap& map, const SplitSequence& sequence,
                                              const std::string& label = "");
/// Parses and validates a sequence; throws ValidationError on problems.
SplitSequence split_sequence_from_json(const ParcelMap& map, const nlohmann::json& doc);

nlohmann::ordered_json transcript_to_json(const ParcelMap& map, const Transcript& transcript);
Transcript transcript_from_json(const ParcelMap& map, const nlohmann::json& doc);

/// Party A's option outcomes per split ("left/right=total"), declarations and
/// the resolution, as plain text.
std::string summary_table(const Transcript& transcript);

}  // namespace fairdist
