#include "fairdist/protocol.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>
#include <unordered_set>

#include "fairdist/map_io.hpp"

namespace fairdist {

namespace {

const char* const kPrescriptionNames[] = {"i", "ii", "iii", "iv"};

void require_valid_map(const ParcelMap& map) {
  if (auto v = validate_map(map); !v.empty()) throw std::invalid_argument("invalid map: " + v.front());
}

const char* direction_name(SweepDirection d) {
  switch (d) {
    case SweepDirection::Vertical: return "vertical";
    case SweepDirection::Horizontal: return "horizontal";
    case SweepDirection::Diagonal: return "diagonal";
    case SweepDirection::AntiDiagonal: return "antidiagonal";
  }
  return "?";
}

/// Parcels in sweep order: ascending direction key, map order on ties.
std::vector<int> sweep_order(const ParcelMap& map, const SequenceStrategy& strategy) {
  const int count = map.parcel_count();
  std::vector<std::tuple<double, double, int>> keys;
  keys.reserve(static_cast<std::size_t>(count));
  const bool geometry = map.has_geometry();
  for (int i = 0; i < count; ++i) {
    double a = i, b = 0;
    if (geometry) {
      const Rect& r = *map.parcels()[static_cast<std::size_t>(i)].rect;
      const double cx = r.x + r.w / 2, cy = r.y + r.h / 2;
      switch (strategy.direction) {
        case SweepDirection::Vertical: a = cx, b = cy; break;
        case SweepDirection::Horizontal: a = cy, b = cx; break;
        case SweepDirection::Diagonal: a = cx + cy, b = cy; break;
        case SweepDirection::AntiDiagonal: a = cx - cy, b = -cy; break;
      }
    }
    if (strategy.reverse) a = -a, b = -b;
    keys.emplace_back(a, b, i);
  }
  std::sort(keys.begin(), keys.end());
  std::vector<int> order;
  for (const auto& k : keys) order.push_back(std::get<2>(k));
  return order;
}

class SequenceSearch {
 public:
  SequenceSearch(const ParcelMap& map, const SequenceStrategy& strategy, std::uint64_t seed, std::uint64_t budget)
      : map_(map), strategy_(strategy), rng_(seed), budget_(budget), size_(map.district_size()) {
    if (strategy.kind == SequenceStrategy::Kind::Sweep) order_ = sweep_order(map, strategy);
  }

  SplitSequence run() {
    if (map_.n_districts() < 2) return {};
    if (!grow(ParcelSet{})) throw SequenceError("no valid sequence");
    SplitSequence seq;
    for (std::size_t k = 0; k < pieces_.size(); ++k) seq.splits.push_back(Split{static_cast<int>(k) + 1, pieces_[k]});
    return seq;
  }

 private:
  bool grow(ParcelSet piece) {
    if (++steps_ > budget_) throw SequenceError("no valid sequence: backtracking budget exhausted");
    if (dead_.count(piece) != 0) return false;
    const int n = map_.n_districts();
    bool checkpoint = false;
    if (!piece.empty() && piece.size() % size_ == 0) {
      const int k = piece.size() / size_;
      if (!piece_feasible(map_, piece, k) || !piece_feasible(map_, map_.all() - piece, n - k)) {
        dead_.insert(piece);
        return false;
      }
      pieces_.push_back(piece);
      if (k == n - 1) return true;
      checkpoint = true;
    }
    for (int next : candidates(piece)) {
      if (grow(piece | ParcelSet::single(next))) return true;
    }
    dead_.insert(piece);
    if (checkpoint) pieces_.pop_back();
    return false;
  }

  std::vector<int> candidates(ParcelSet piece) {
    ParcelSet frontier;
    if (piece.empty()) {
      frontier = map_.all();
    } else {
      piece.for_each([&](int i) { frontier |= map_.neighbors(i); });
      frontier = frontier - piece;
    }
    std::vector<int> out;
    auto consider = [&](int i) {
      if (!frontier.contains(i)) return;
      const ParcelSet rest = map_.all() - piece - ParcelSet::single(i);
      if (rest.empty() || map_.is_connected(rest)) out.push_back(i);
    };
    if (strategy_.kind == SequenceStrategy::Kind::Sweep) {
      for (int i : order_) consider(i);
    } else {
      frontier.for_each(consider);
      rng_.shuffle(out);
    }
    return out;
  }

  const ParcelMap& map_;
  SequenceStrategy strategy_;
  Rng rng_;
  std::uint64_t budget_;
  std::uint64_t steps_ = 0;
  int size_;
  std::vector<int> order_;
  std::vector<ParcelSet> pieces_;
  std::unordered_set<ParcelSet, ParcelSetHash> dead_;
};

RatingSpec predicted_opponent(const PartyAgent& agent) {
  return agent.predicted_opponent_rating ? *agent.predicted_opponent_rating : RatingSpec::win(other(agent.party));
}

nlohmann::ordered_json rational_json(const Rational& r) { return to_string(r); }

nlohmann::ordered_json outcome_json(const OptionOutcome& o) {
  nlohmann::ordered_json j;
  j["piece1"] = rational_json(o.piece1);
  j["piece2"] = rational_json(o.piece2);
  j["total"] = rational_json(o.total());
  return j;
}

OptionOutcome outcome_from_json(const nlohmann::json& j) {
  return OptionOutcome{rational_from_json(j.at("piece1")), rational_from_json(j.at("piece2"))};
}

nlohmann::ordered_json evaluations_json(const std::vector<SplitEvaluation>& evals) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& e : evals) {
    nlohmann::ordered_json j;
    j["k"] = e.k;
    j["A-divides-piece1"] = outcome_json(e.a_divides);
    j["B-divides-piece1"] = outcome_json(e.b_divides);
    arr.push_back(std::move(j));
  }
  return arr;
}

std::vector<SplitEvaluation> evaluations_from_json(const nlohmann::json& arr) {
  std::vector<SplitEvaluation> out;
  for (const auto& j : arr) {
    out.push_back(SplitEvaluation{j.at("k").get<int>(), outcome_from_json(j.at("A-divides-piece1")),
                                  outcome_from_json(j.at("B-divides-piece1"))});
  }
  return out;
}

nlohmann::ordered_json declaration_json(const PreferenceDeclaration& d) {
  auto arr = nlohmann::ordered_json::array();
  for (Preference p : d.per_split) arr.push_back(to_string(p));
  return arr;
}

PreferenceDeclaration declaration_from_json(const nlohmann::json& arr) {
  PreferenceDeclaration d;
  for (const auto& p : arr) d.per_split.push_back(preference_from_string(p.get<std::string>()));
  return d;
}

Branch branch_from_string(const std::string& text) {
  for (Branch b : {Branch::Agreement, Branch::SingleIndifference, Branch::DoubleIndifference, Branch::SwitchPoint}) {
    if (text == to_string(b)) return b;
  }
  throw std::invalid_argument("unknown resolution branch '" + text + "'");
}

nlohmann::ordered_json splits_json(const ParcelMap& map, const SplitSequence& seq) {
  auto arr = nlohmann::ordered_json::array();
  for (const Split& s : seq.splits) {
    nlohmann::ordered_json j;
    j["k"] = s.k;
    j["piece1"] = map.set_to_ids(s.piece1);
    arr.push_back(std::move(j));
  }
  return arr;
}

SplitSequence splits_from_json(const ParcelMap& map, const nlohmann::json& arr) {
  SplitSequence seq;
  for (const auto& j : arr) {
    ParcelSet piece1;
    for (const auto& id : j.at("piece1")) piece1.insert(map.require_index(id.get<std::string>()));
    seq.splits.push_back(Split{j.at("k").get<int>(), piece1});
  }
  return seq;
}

std::string outcome_cell(const OptionOutcome& o) {
  return to_string(o.piece1) + "/" + to_string(o.piece2) + "=" + to_string(o.total());
}

}  // namespace

const char* to_string(Option option) {
  return option == Option::ADividesPiece1 ? "A-divides-piece1" : "B-divides-piece1";
}

const char* to_string(Preference preference) {
  switch (preference) {
    case Preference::ADividesPiece1: return "A-divides-piece1";
    case Preference::BDividesPiece1: return "B-divides-piece1";
    case Preference::Indifferent: return "indifferent";
  }
  return "?";
}

const char* to_string(OpponentModel model) {
  return model == OpponentModel::Pessimistic ? "pessimistic" : "self-interested";
}

const char* to_string(Branch branch) {
  switch (branch) {
    case Branch::Agreement: return "agreement";
    case Branch::SingleIndifference: return "single-indifference";
    case Branch::DoubleIndifference: return "double-indifference";
    case Branch::SwitchPoint: return "switch-point";
  }
  return "?";
}

Option option_from_string(const std::string& text) {
  if (text == "A-divides-piece1") return Option::ADividesPiece1;
  if (text == "B-divides-piece1") return Option::BDividesPiece1;
  throw std::invalid_argument("unknown option '" + text + "'");
}

Preference preference_from_string(const std::string& text) {
  if (text == "indifferent") return Preference::Indifferent;
  return option_from_string(text) == Option::ADividesPiece1 ? Preference::ADividesPiece1
                                                              : Preference::BDividesPiece1;
}

OpponentModel opponent_model_from_string(const std::string& text) {
  if (text == "pessimistic") return OpponentModel::Pessimistic;
  if (text == "self-interested") return OpponentModel::SelfInterested;
  throw std::invalid_argument("unknown opponent model '" + text + "'");
}

PartyAgent PartyAgent::win_maximizer(Party party, VotingModel model) {
  PartyAgent agent;
  agent.party = party;
  agent.voting_model = std::move(model);
  agent.rating = RatingSpec::win(party);
  return agent;
}

std::string SequenceStrategy::label() const {
  if (kind == Kind::RandomGrowth) return "random_growth";
  std::string s = std::string("sweep:") + direction_name(direction);
  if (reverse) s += ":reverse";
  return s;
}

SequenceStrategy SequenceStrategy::parse(const std::string& label) {
  if (label == "random_growth") return random_growth();
  std::vector<std::string> parts;
  std::stringstream in(label);
  for (std::string part; std::getline(in, part, ':');) parts.push_back(part);
  const bool shape_ok = (parts.size() == 2 || (parts.size() == 3 && parts[2] == "reverse")) && parts[0] == "sweep";
  if (shape_ok) {
    for (SweepDirection d :
         {SweepDirection::Vertical, SweepDirection::Horizontal, SweepDirection::Diagonal, SweepDirection::AntiDiagonal}) {
      if (parts[1] == direction_name(d)) return sweep(d, parts.size() == 3);
    }
  }
  throw std::invalid_argument("unknown sequence strategy '" + label + "'");
}

SplitSequence generate_split_sequence(const ParcelMap& map, const SequenceStrategy& strategy, std::uint64_t seed,
                                      std::uint64_t step_budget) {
  require_valid_map(map);
  return SequenceSearch(map, strategy, seed, step_budget).run();
}

OptionOutcome evaluate_option_detail(const PartyAgent& agent, const ParcelMap& map, const Split& split, Option option) {
  if (auto v = validate_split(map, split); !v.empty()) throw std::invalid_argument("invalid split: " + v.front());
  const int n = map.n_districts();
  const bool own_is_piece1 = (agent.party == Party::A) == (option == Option::ADividesPiece1);
  const ParcelSet own = own_is_piece1 ? split.piece1 : split.piece2(map);
  const ParcelSet theirs = own_is_piece1 ? split.piece2(map) : split.piece1;
  const int own_count = own_is_piece1 ? split.k : n - split.k;

  Rational own_value =
      optimize_piece(map, own, own_count, {Objective{agent.rating, agent.voting_model, Sense::Maximize}})
          .ratings.front();
  Rational their_value;
  if (agent.opponent_model == OpponentModel::Pessimistic) {
    their_value =
        optimize_piece(map, theirs, n - own_count, {Objective{agent.rating, agent.voting_model, Sense::Minimize}})
            .ratings.front();
  } else {
    their_value = optimize_piece(map, theirs, n - own_count,
                                 {Objective{predicted_opponent(agent), agent.voting_model, Sense::Maximize},
                                  Objective{agent.rating, agent.voting_model, Sense::Minimize}})
                      .ratings.back();
  }
  return own_is_piece1 ? OptionOutcome{own_value, their_value} : OptionOutcome{their_value, own_value};
}

Rational evaluate_option(const PartyAgent& agent, const ParcelMap& map, const Split& split, Option option) {
  return evaluate_option_detail(agent, map, split, option).total();
}

SplitEvaluation evaluate_split(const PartyAgent& agent, const ParcelMap& map, const Split& split) {
  return SplitEvaluation{split.k, evaluate_option_detail(agent, map, split, Option::ADividesPiece1),
                         evaluate_option_detail(agent, map, split, Option::BDividesPiece1)};
}

Preference preference_of(const SplitEvaluation& evaluation) {
  const Rational a = evaluation.a_divides.total();
  const Rational b = evaluation.b_divides.total();
  if (a > b) return Preference::ADividesPiece1;
  if (b > a) return Preference::BDividesPiece1;
  return Preference::Indifferent;
}

PreferenceDeclaration declare_preferences(const PartyAgent& agent, const ParcelMap& map,
                                          const SplitSequence& sequence) {
  PreferenceDeclaration d;
  for (const Split& s : sequence.splits) d.per_split.push_back(preference_of(evaluate_split(agent, map, s)));
  return d;
}

Resolution resolve(const PreferenceDeclaration& prefs_a, const PreferenceDeclaration& prefs_b, Rng& rng) {
  const auto& a = prefs_a.per_split;
  const auto& b = prefs_b.per_split;
  if (a.size() != b.size()) {
    throw std::invalid_argument("declarations cover " + std::to_string(a.size()) + " and " +
                                std::to_string(b.size()) + " splits");
  }
  auto as_option = [](Preference p) {
    return p == Preference::ADividesPiece1 ? Option::ADividesPiece1 : Option::BDividesPiece1;
  };
  const int m = static_cast<int>(a.size());
  for (int i = 0; i < m; ++i) {
    if (a[i] == b[i] && a[i] != Preference::Indifferent) return Resolution{Branch::Agreement, i + 1, as_option(a[i]), std::nullopt, std::nullopt};
  }
  for (int i = 0; i < m; ++i) {
    const bool ia = a[i] == Preference::Indifferent, ib = b[i] == Preference::Indifferent;
    if (ia != ib) return Resolution{Branch::SingleIndifference, i + 1, as_option(ia ? b[i] : a[i]), std::nullopt, std::nullopt};
  }
  for (int i = 0; i < m; ++i) {
    if (a[i] == Preference::Indifferent) {
      const Option o = rng.uniform(2) == 0 ? Option::ADividesPiece1 : Option::BDividesPiece1;
      return Resolution{Branch::DoubleIndifference, i + 1, o, std::nullopt, std::nullopt};
    }
  }
  for (int i = 0; i + 1 < m; ++i) {
    if (a[i] == Preference::BDividesPiece1 && a[i + 1] == Preference::ADividesPiece1) {
      const int i0 = i + 1;
      const int p = static_cast<int>(rng.uniform(4)) + 1;
      const Option o = (p % 2 == 1) ? Option::ADividesPiece1 : Option::BDividesPiece1;
      return Resolution{Branch::SwitchPoint, p <= 2 ? i0 : i0 + 1, o, i0, p};
    }
  }
  throw NoSwitchPointError();
}

Division realize_division(const ParcelMap& map, const Split& split, Option option, const PartyAgent& agent_a,
                          const PartyAgent& agent_b) {
  if (map.n_districts() < 2) throw InfeasibleError("no splits exist");
  if (auto v = validate_split(map, split); !v.empty()) throw std::invalid_argument("invalid split: " + v.front());
  const PartyAgent& first = option == Option::ADividesPiece1 ? agent_a : agent_b;
  const PartyAgent& second = option == Option::ADividesPiece1 ? agent_b : agent_a;
  auto cut = [&](const PartyAgent& agent, ParcelSet piece, int count) {
    return optimize_piece(map, piece, count, {Objective{agent.rating, agent.voting_model, Sense::Maximize}}).districts;
  };
  auto districts = cut(first, split.piece1, split.k);
  auto rest = cut(second, split.piece2(map), map.n_districts() - split.k);
  districts.insert(districts.end(), rest.begin(), rest.end());
  return Division::from_districts(map.parcel_count(), districts);
}

Transcript run_protocol(const ParcelMap& map, const SplitSequence& sequence, const PartyAgent& agent_a,
                        const PartyAgent& agent_b, std::uint64_t seed, std::string sequence_label) {
  require_valid_map(map);
  if (map.n_districts() < 2) throw InfeasibleError("no splits exist");
  if (auto v = validate_split_sequence(map, sequence); !v.empty()) {
    throw std::invalid_argument("invalid split sequence: " + v.front());
  }
  Transcript t;
  t.seed = seed;
  t.sequence_label = std::move(sequence_label);
  t.sequence = sequence;
  for (const Split& s : sequence.splits) {
    t.evaluations_a.push_back(evaluate_split(agent_a, map, s));
    t.evaluations_b.push_back(evaluate_split(agent_b, map, s));
    t.prefs_a.per_split.push_back(preference_of(t.evaluations_a.back()));
    t.prefs_b.per_split.push_back(preference_of(t.evaluations_b.back()));
  }
  Rng rng(seed);
  t.resolution = resolve(t.prefs_a, t.prefs_b, rng);
  const Split& chosen = sequence.splits[static_cast<std::size_t>(t.resolution.k - 1)];
  t.division = realize_division(map, chosen, t.resolution.option, agent_a, agent_b);
  t.rating_a = rate_division(map, t.division, agent_a.rating, agent_a.voting_model);
  t.rating_b = rate_division(map, t.division, agent_b.rating, agent_b.voting_model);
  t.outcome_wins_a = rate_division(map, t.division, RatingSpec::win(Party::A), VotingModel::outcome());
  return t;
}

RankingResult ranking_protocol(const ParcelMap& map, const std::vector<Division>& candidates, const PartyAgent& agent_a,
                               const PartyAgent& agent_b, Rng& rng) {
  if (candidates.empty()) throw std::invalid_argument("ranking needs at least one candidate");
  const std::size_t m = candidates.size();
  auto ranks = [&](const PartyAgent& agent) {
    std::vector<Rational> rating;
    for (const auto& d : candidates) rating.push_back(rate_division(map, d, agent.rating, agent.voting_model));
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      if (rating[x] != rating[y]) return rating[x] > rating[y];
      if (candidates[x] != candidates[y]) return candidates[x] < candidates[y];
      return x < y;
    });
    std::vector<int> rank(m);
    for (std::size_t pos = 0; pos < m; ++pos) rank[order[pos]] = static_cast<int>(pos) + 1;
    return rank;
  };
  RankingResult result;
  result.rank_a = ranks(agent_a);
  result.rank_b = ranks(agent_b);
  int best = static_cast<int>(m) + 1;
  std::vector<std::size_t> tied;
  for (std::size_t i = 0; i < m; ++i) {
    const int worse = std::max(result.rank_a[i], result.rank_b[i]);
    if (worse < best) {
      best = worse;
      tied.assign(1, i);
    } else if (worse == best) {
      tied.push_back(i);
    }
  }
  result.tie = tied.size() > 1;
  result.chosen = result.tie ? tied[static_cast<std::size_t>(rng.uniform(tied.size()))] : tied.front();
  return result;
}

namespace {

std::string sequence_tag(std::size_t index, const std::string& label) {
  std::string tag = "sequence " + std::to_string(index);
  if (!label.empty()) tag += " (" + label + ")";
  return tag;
}

}  // namespace

AugmentedResult run_augmented(const ParcelMap& map, const std::vector<SplitSequence>& sequences,
                              const PartyAgent& agent_a, const PartyAgent& agent_b, std::uint64_t seed,
                              const std::vector<std::string>& labels) {
  if (sequences.empty()) throw std::invalid_argument("augmentation needs at least one split sequence");
  AugmentedResult result;
  for (std::size_t i = 0; i < sequences.size(); ++i) {
    const std::string label = i < labels.size() ? labels[i] : "";
    try {
      result.transcripts.push_back(run_protocol(map, sequences[i], agent_a, agent_b, derive_seed(seed, i), label));
      result.sequence_indices.push_back(i);
    } catch (const NoSwitchPointError& e) {
      result.dropped.push_back(DroppedSequence{i, e.what()});
    } catch (const ValidationError& e) {
      std::vector<std::string> problems;
      for (const auto& p : e.problems()) problems.push_back(sequence_tag(i, label) + ": " + p);
      throw ValidationError(problems);
    } catch (const InfeasibleError& e) {
      throw InfeasibleError(sequence_tag(i, label) + ": " + e.what());
    }
  }
  if (result.transcripts.empty()) {
    std::string message = "no switch point in any sequence";
    for (const auto& d : result.dropped) {
      message += "; " + sequence_tag(d.index, d.index < labels.size() ? labels[d.index] : "") + ": " + d.reason;
    }
    throw NoSwitchPointError(message);
  }
  std::vector<Division> candidates;
  for (const auto& t : result.transcripts) candidates.push_back(t.division);
  Rng rng(derive_seed(seed, sequences.size()));
  result.ranking = ranking_protocol(map, candidates, agent_a, agent_b, rng);
  result.final_division = candidates[result.ranking.chosen];
  return result;
}

nlohmann::ordered_json split_sequence_to_json(const ParcelMap& map, const SplitSequence& sequence,
                                              const std::string& label) {
  nlohmann::ordered_json j;
  if (!label.empty()) j["label"] = label;
  j["splits"] = splits_json(map, sequence);
  return j;
}

SplitSequence split_sequence_from_json(const ParcelMap& map, const nlohmann::json& doc) {
  SplitSequence seq;
  try {
    seq = splits_from_json(map, doc.at("splits"));
  } catch (const std::exception& e) {
    throw ValidationError({std::string("malformed split sequence: ") + e.what()});
  }
  if (auto v = validate_split_sequence(map, seq); !v.empty()) throw ValidationError(v);
  return seq;
}

nlohmann::ordered_json transcript_to_json(const ParcelMap& map, const Transcript& t) {
  nlohmann::ordered_json j;
  j["seed"] = t.seed;
  j["sequence_label"] = t.sequence_label;
  j["sequence"] = splits_json(map, t.sequence);
  j["evaluations"]["A"] = evaluations_json(t.evaluations_a);
  j["evaluations"]["B"] = evaluations_json(t.evaluations_b);
  j["declarations"]["A"] = declaration_json(t.prefs_a);
  j["declarations"]["B"] = declaration_json(t.prefs_b);
  auto& r = j["resolution"];
  r["branch"] = to_string(t.resolution.branch);
  r["k"] = t.resolution.k;
  r["option"] = to_string(t.resolution.option);
  if (t.resolution.i0) r["i0"] = *t.resolution.i0;
  if (t.resolution.prescription) {
    r["prescription"] = kPrescriptionNames[static_cast<std::size_t>(*t.resolution.prescription - 1)];
  }
  j["division"] = division_to_json(map, t.division);
  j["ratings"]["A"] = rational_json(t.rating_a);
  j["ratings"]["B"] = rational_json(t.rating_b);
  j["ratings"]["outcome_wins_A"] = rational_json(t.outcome_wins_a);
  return j;
}

Transcript transcript_from_json(const ParcelMap& map, const nlohmann::json& j) {
  Transcript t;
  t.seed = j.at("seed").get<std::uint64_t>();
  t.sequence_label = j.value("sequence_label", "");
  t.sequence = splits_from_json(map, j.at("sequence"));
  t.evaluations_a = evaluations_from_json(j.at("evaluations").at("A"));
  t.evaluations_b = evaluations_from_json(j.at("evaluations").at("B"));
  t.prefs_a = declaration_from_json(j.at("declarations").at("A"));
  t.prefs_b = declaration_from_json(j.at("declarations").at("B"));
  const auto& r = j.at("resolution");
  t.resolution.branch = branch_from_string(r.at("branch").get<std::string>());
  t.resolution.k = r.at("k").get<int>();
  t.resolution.option = option_from_string(r.at("option").get<std::string>());
  if (r.contains("i0")) t.resolution.i0 = r.at("i0").get<int>();
  if (r.contains("prescription")) {
    const auto name = r.at("prescription").get<std::string>();
    const auto* it = std::find(std::begin(kPrescriptionNames), std::end(kPrescriptionNames), name);
    if (it == std::end(kPrescriptionNames)) throw std::invalid_argument("unknown prescription '" + name + "'");
    t.resolution.prescription = static_cast<int>(it - std::begin(kPrescriptionNames)) + 1;
  }
  t.division = division_from_json(map, j.at("division"));
  t.rating_a = rational_from_json(j.at("ratings").at("A"));
  t.rating_b = rational_from_json(j.at("ratings").at("B"));
  t.outcome_wins_a = rational_from_json(j.at("ratings").at("outcome_wins_A"));
  return t;
}

std::string summary_table(const Transcript& t) {
  std::ostringstream out;
  out << "sequence: " << (t.sequence_label.empty() ? "-" : t.sequence_label) << "  seed: " << t.seed << "\n";
  out << "split | option (1): pc.1/pc.2=total | option (2): pc.1/pc.2=total | A prefers | B prefers\n";
  for (std::size_t i = 0; i < t.evaluations_a.size(); ++i) {
    const auto& e = t.evaluations_a[i];
    out << e.k << "-split | " << outcome_cell(e.a_divides) << " | " << outcome_cell(e.b_divides) << " | "
        << to_string(t.prefs_a.per_split[i]) << " | " << to_string(t.prefs_b.per_split[i]) << "\n";
  }
  out << "resolution: " << to_string(t.resolution.branch);
  if (t.resolution.i0) out << " i0=" << *t.resolution.i0;
  if (t.resolution.prescription) {
    out << " prescription " << kPrescriptionNames[static_cast<std::size_t>(*t.resolution.prescription - 1)];
  }
  out << ", " << t.resolution.k << "-split " << to_string(t.resolution.option) << "\n";
  out << "A wins " << to_string(t.outcome_wins_a) << "; rating A " << to_string(t.rating_a) << ", rating B "
      << to_string(t.rating_b) << "\n";
  return out.str();
}

}  // namespace fairdist
