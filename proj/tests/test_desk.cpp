#include <doctest.h>

#include <array>

#include "cover_oracle.hpp"
#include "fairdist/experiment.hpp"
#include "fairdist/map_io.hpp"

using namespace fairdist;

namespace {

const std::string kData = FAIRDIST_TEST_DATA;

ParcelMap desk() { return load_map(kData + "/desk_map.json"); }

SplitSequence worked(const ParcelMap& map) {
  return split_sequence_from_json(map, read_json_file(kData + "/desk_worked_sequence.json"));
}

using Row = std::array<int, 4>;  // option 1 pc.1, pc.2; option 2 pc.1, pc.2

/// A's pessimistic table from the cover oracle: refining divisions split into
/// the wins inside each piece.
std::vector<Row> oracle_table(const ParcelMap& map, const SplitSequence& seq) {
  const auto all = cover_oracle::divisions(map);
  std::vector<Row> rows;
  for (const Split& s : seq.splits) {
    const std::uint64_t p1 = s.piece1.bits();
    int max1 = -1, min1 = 99, max2 = -1, min2 = 99;
    for (const auto& d : all) {
      int w1 = 0, w2 = 0;
      bool refines = true;
      for (std::uint64_t district : d) {
        const bool inside = (district & p1) == district;
        if (!inside && (district & p1)) {
          refines = false;
          break;
        }
        (inside ? w1 : w2) += cover_oracle::a_wins(map, district) ? 1 : 0;
      }
      if (!refines) continue;
      max1 = std::max(max1, w1);
      min1 = std::min(min1, w1);
      max2 = std::max(max2, w2);
      min2 = std::min(min2, w2);
    }
    rows.push_back({max1, min2, min1, max2});
  }
  return rows;
}

Row row_of(const SplitEvaluation& e) {
  auto i = [](const Rational& r) { return static_cast<int>(boost::multiprecision::numerator(r)); };
  return {i(e.a_divides.piece1), i(e.a_divides.piece2), i(e.b_divides.piece1), i(e.b_divides.piece2)};
}

std::vector<Row> table_for(const ParcelMap& map, const SplitSequence& seq) {
  std::vector<Row> rows;
  const auto agent = PartyAgent::win_maximizer(Party::A);
  for (const Split& s : seq.splits) rows.push_back(row_of(evaluate_split(agent, map, s)));
  return rows;
}

}  // namespace

TEST_CASE("desk map: 25 parcels, five districts, best 4 and worst 1 for both parties") {
  const ParcelMap map = desk();
  CHECK(map.parcel_count() == 25);
  CHECK(map.n_districts() == 5);
  CHECK(map.statewide_share_a() == Rational(1253, 2500));

  int best = 0, worst = 5;
  const auto all = cover_oracle::divisions(map);
  for (const auto& d : all) {
    int w = 0;
    for (auto district : d) w += cover_oracle::a_wins(map, district) ? 1 : 0;
    best = std::max(best, w);
    worst = std::min(worst, w);
  }
  CHECK(count_divisions(map) == all.size());
  CHECK(best == 4);
  CHECK(worst == 1);

  for (Party p : {Party::A, Party::B}) {
    const auto report = geometric_target(map, RatingSpec::win(p), VotingModel::outcome());
    CHECK(report.best == 4);
    CHECK(report.worst == 1);
    CHECK(report.target == Rational(5, 2));
  }
}

TEST_CASE("desk map: worked sequence reproduces the first outcome table") {
  const ParcelMap map = desk();
  const SplitSequence seq = worked(map);
  const std::vector<Row> expected = {{1, 1, 1, 3}, {1, 1, 1, 2}, {3, 0, 1, 1}, {4, 0, 1, 0}};
  CHECK(table_for(map, seq) == expected);
  CHECK(oracle_table(map, seq) == expected);

  const auto a = declare_preferences(PartyAgent::win_maximizer(Party::A), map, seq);
  const auto b = declare_preferences(PartyAgent::win_maximizer(Party::B), map, seq);
  using P = Preference;
  CHECK(a.per_split == std::vector<P>{P::BDividesPiece1, P::BDividesPiece1, P::ADividesPiece1, P::ADividesPiece1});
  CHECK(b.per_split == std::vector<P>{P::ADividesPiece1, P::ADividesPiece1, P::BDividesPiece1, P::BDividesPiece1});

  Rng rng(1);
  const Resolution r = resolve(a, b, rng);
  CHECK(r.branch == Branch::SwitchPoint);
  CHECK(r.i0 == 2);

  // Option (2) on the 1-split leaves A's own piece 2 worth 3 districts.
  const auto [rating, districts] = optimal_piece_division(map, seq.splits[0].piece2(map), 4, RatingSpec::win(Party::A),
                                                          VotingModel::outcome(), Sense::Maximize);
  CHECK(rating == 3);
  CHECK(districts.size() == 4);
}

TEST_CASE("desk map: the four prescriptions give A 2, 3, 3 and 2 districts") {
  const ParcelMap map = desk();
  const SplitSequence seq = worked(map);
  const auto a = PartyAgent::win_maximizer(Party::A);
  const auto b = PartyAgent::win_maximizer(Party::B);
  const std::pair<int, Option> plan[] = {{2, Option::ADividesPiece1},
                                         {2, Option::BDividesPiece1},
                                         {3, Option::ADividesPiece1},
                                         {3, Option::BDividesPiece1}};
  const int expected[] = {2, 3, 3, 2};
  for (int i = 0; i < 4; ++i) {
    const Division d = realize_division(map, seq.splits[static_cast<std::size_t>(plan[i].first - 1)], plan[i].second, a, b);
    CHECK(rate_division(map, d, RatingSpec::win(Party::A), VotingModel::outcome()) == expected[i]);
    CHECK(rate_division(map, d, RatingSpec::win(Party::B), VotingModel::outcome()) == 5 - expected[i]);
  }
}

TEST_CASE("desk map: sweep sequences reproduce the second outcome table") {
  const ParcelMap map = desk();
  struct Case {
    SweepDirection dir;
    std::vector<Row> rows;
  };
  const Case cases[] = {
      {SweepDirection::Vertical, {{1, 1, 1, 3}, {1, 1, 1, 2}, {2, 0, 1, 1}, {4, 0, 1, 0}}},
      {SweepDirection::Horizontal, {{0, 1, 0, 4}, {0, 2, 0, 3}, {2, 1, 1, 2}, {3, 0, 1, 0}}},
      {SweepDirection::Diagonal, {{0, 1, 0, 3}, {1, 1, 0, 3}, {2, 1, 1, 2}, {3, 0, 1, 0}}},
      {SweepDirection::AntiDiagonal, {{1, 1, 1, 3}, {2, 0, 2, 2}, {3, 0, 2, 1}, {4, 0, 1, 0}}},
  };
  for (const auto& c : cases) {
    const auto seq = generate_split_sequence(map, SequenceStrategy::sweep(c.dir), 0);
    CAPTURE(SequenceStrategy::sweep(c.dir).label());
    CHECK(table_for(map, seq) == c.rows);
    CHECK(oracle_table(map, seq) == c.rows);
    const auto t = run_protocol(map, seq, PartyAgent::win_maximizer(Party::A), PartyAgent::win_maximizer(Party::B), 5);
    CHECK(t.resolution.branch == Branch::DoubleIndifference);
    CHECK(t.resolution.k == 3);
  }
}

TEST_CASE("desk experiment ends with A winning 3 districts") {
  const ExperimentConfig config = load_experiment_config(kData + "/desk_experiment.json");
  REQUIRE(config.strategies.size() == 5);
  const ExperimentOutput out = run_experiment(config);
  CHECK(out.final_wins_a == 3);
  CHECK(out.augmented.transcripts.size() == 5);
  CHECK(out.augmented.transcripts[0].sequence_label == "worked");
}
