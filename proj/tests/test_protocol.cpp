#include <doctest.h>

#include <map>
#include <set>

#include "fairdist/map_io.hpp"
#include "fairdist/protocol.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace fairdist;

namespace {

using P = Preference;
constexpr P kA = P::ADividesPiece1;
constexpr P kB = P::BDividesPiece1;
constexpr P kI = P::Indifferent;

PreferenceDeclaration decl(std::vector<P> p) { return PreferenceDeclaration{std::move(p)}; }

std::vector<SequenceStrategy> all_strategies() {
  std::vector<SequenceStrategy> out;
  for (auto d : {SweepDirection::Vertical, SweepDirection::Horizontal, SweepDirection::Diagonal,
                 SweepDirection::AntiDiagonal}) {
    out.push_back(SequenceStrategy::sweep(d));
    out.push_back(SequenceStrategy::sweep(d, true));
  }
  out.push_back(SequenceStrategy::random_growth());
  return out;
}

/// Ratings of every way to cut `piece` into districts, from the oracle's
/// full-map enumeration: each refining division contributes its districts
/// inside the piece.
std::set<std::vector<int>> oracle_piece_cuts(const ParcelMap& map, const Split& split, bool piece1) {
  std::vector<bool> in1;
  for (int i = 0; i < map.parcel_count(); ++i) in1.push_back(split.piece1.contains(i));
  std::set<std::vector<int>> cuts;
  for (const auto& d : oracle::refining(oracle::divisions(map), in1)) {
    std::vector<int> cut(d.size(), -1);
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (in1[i] == piece1) cut[i] = d[i];
    }
    cuts.insert(cut);
  }
  return cuts;
}

Rational rate_cut(const ParcelMap& map, const std::vector<int>& cut, const RatingSpec& spec) {
  std::map<int, ParcelSet> districts;
  for (std::size_t i = 0; i < cut.size(); ++i) {
    if (cut[i] >= 0) districts[cut[i]].insert(static_cast<int>(i));
  }
  auto shares = VotingModel::outcome().shares(map);
  Rational total = 0;
  for (auto& [label, set] : districts) total += spec.rate_district(DistrictContext{map, set, shares});
  return total;
}

}  // namespace

TEST_CASE("vertical sweep on a 5x5 grid takes whole columns") {
  auto map = make_grid_map(5, 5, 5, {});
  auto seq = generate_split_sequence(map, SequenceStrategy::sweep(SweepDirection::Vertical), 0);
  REQUIRE(seq.splits.size() == 4);
  for (int k = 1; k <= 4; ++k) {
    std::vector<std::string> ids;
    for (int c = 0; c < k; ++c) {
      for (int r = 0; r < 5; ++r) ids.push_back("r" + std::to_string(r) + "c" + std::to_string(c));
    }
    CHECK(seq.splits[static_cast<std::size_t>(k - 1)].k == k);
    CHECK(seq.splits[static_cast<std::size_t>(k - 1)].piece1 == map.ids_to_set(ids));
  }
  auto rows = generate_split_sequence(map, SequenceStrategy::sweep(SweepDirection::Horizontal), 0);
  CHECK(rows.splits[0].piece1 == map.ids_to_set({"r0c0", "r0c1", "r0c2", "r0c3", "r0c4"}));
}

TEST_CASE("every strategy yields a valid nested sequence on every fixture") {
  for (const auto& f : fixtures::small_maps()) {
    CAPTURE(f.name);
    for (const auto& strategy : all_strategies()) {
      CAPTURE(strategy.label());
      for (std::uint64_t seed : {1u, 2u, 3u}) {
        auto seq = generate_split_sequence(f.map, strategy, seed);
        CHECK(validate_split_sequence(f.map, seq).empty());
        for (const auto& s : seq.splits) CHECK(count_divisions_refining(f.map, s) > 0);
      }
    }
  }
}

TEST_CASE("a path only admits prefix or suffix splits") {
  auto path = make_grid_map(1, 6, 3, {});
  auto prefixes = generate_split_sequence(path, SequenceStrategy::sweep(SweepDirection::Vertical), 0);
  CHECK(prefixes.splits[0].piece1 == path.ids_to_set({"r0c0", "r0c1"}));
  CHECK(prefixes.splits[1].piece1 == path.ids_to_set({"r0c0", "r0c1", "r0c2", "r0c3"}));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto seq = generate_split_sequence(path, SequenceStrategy::random_growth(), seed);
    REQUIRE(seq.splits.size() == 2);
    const bool left = seq.splits[0].piece1.contains(0);
    CHECK(seq.splits[0].piece1 == (left ? ParcelSet::first(2) : ParcelSet::first(6) - ParcelSet::first(4)));
    CHECK(seq.splits[1].piece1 == (left ? ParcelSet::first(4) : ParcelSet::first(6) - ParcelSet::first(2)));
  }
}

TEST_CASE("random growth is reproducible from its seed") {
  auto map = make_grid_map(5, 5, 5, {});
  std::set<std::vector<std::uint64_t>> distinct;
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto a = generate_split_sequence(map, SequenceStrategy::random_growth(), seed);
    auto b = generate_split_sequence(map, SequenceStrategy::random_growth(), seed);
    CHECK(a == b);
    std::vector<std::uint64_t> bits;
    for (const auto& s : a.splits) bits.push_back(s.piece1.bits());
    distinct.insert(bits);
  }
  CHECK(distinct.size() > 1);
}

TEST_CASE("strategy labels round-trip") {
  for (const auto& s : all_strategies()) CHECK(SequenceStrategy::parse(s.label()).label() == s.label());
  CHECK_THROWS_AS(SequenceStrategy::parse("sweep:sideways"), std::invalid_argument);
  CHECK_THROWS_AS(SequenceStrategy::parse("zigzag"), std::invalid_argument);
}

TEST_CASE("resolve follows branch precedence") {
  Rng rng(1);
  auto r = resolve(decl({kB, kA, kA}), decl({kA, kA, kB}), rng);
  CHECK(r.branch == Branch::Agreement);
  CHECK(r.k == 2);
  CHECK(r.option == Option::ADividesPiece1);
  CHECK(rng.draws() == 0);

  r = resolve(decl({kB, kI, kA, kA}), decl({kA, kA, kB, kB}), rng);
  CHECK(r.branch == Branch::SingleIndifference);
  CHECK(r.k == 2);
  CHECK(r.option == Option::ADividesPiece1);

  r = resolve(decl({kB, kB, kI, kA}), decl({kA, kA, kI, kB}), rng);
  CHECK(r.branch == Branch::DoubleIndifference);
  CHECK(r.k == 3);

  // Single indifference outranks an earlier double indifference.
  r = resolve(decl({kI, kB, kA}), decl({kI, kI, kB}), rng);
  CHECK(r.branch == Branch::SingleIndifference);
  CHECK(r.k == 2);
  CHECK(r.option == Option::BDividesPiece1);

  CHECK_THROWS_AS(resolve(decl({kA, kB}), decl({kB, kA}), rng), NoSwitchPointError);
  CHECK_THROWS_AS(resolve(decl({kA}), decl({kB, kA}), rng), std::invalid_argument);
}

TEST_CASE("switch point prescriptions are uniform over the four choices") {
  std::map<std::pair<int, Option>, int> seen;
  std::map<int, int> by_prescription;
  for (std::uint64_t seed = 0; seed < 4000; ++seed) {
    Rng rng(seed);
    auto r = resolve(decl({kB, kB, kA, kA}), decl({kA, kA, kB, kB}), rng);
    REQUIRE(r.branch == Branch::SwitchPoint);
    CHECK(r.i0 == 2);
    ++seen[{r.k, r.option}];
    ++by_prescription[*r.prescription];
    const bool first = *r.prescription <= 2;
    CHECK(r.k == (first ? 2 : 3));
    CHECK((r.option == Option::ADividesPiece1) == (*r.prescription % 2 == 1));
  }
  CHECK(seen.size() == 4);
  for (auto& [p, count] : by_prescription) CHECK((count > 900 && count < 1100));

  int a = 0;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    Rng rng(seed);
    auto r = resolve(decl({kB, kI, kA}), decl({kA, kI, kB}), rng);
    CHECK(r.branch == Branch::DoubleIndifference);
    CHECK(r.k == 2);
    a += r.option == Option::ADividesPiece1;
  }
  CHECK((a > 900 && a < 1100));
}

TEST_CASE("good choice property and midpoint identity on every split of every fixture") {
  std::uint64_t seed = 100;
  for (const auto& f : fixtures::small_maps()) {
    CAPTURE(f.name);
    auto splits = fixtures::all_splits(f.map);
    std::vector<PartyAgent> agents;
    for (Party p : {Party::A, Party::B}) {
      agents.push_back(PartyAgent::win_maximizer(p));
      PartyAgent hopeful = PartyAgent::win_maximizer(p);
      std::map<std::string, Rational> belief;
      auto shares = fixtures::random_shares(f.map.parcel_count(), ++seed);
      for (int i = 0; i < f.map.parcel_count(); ++i) belief[f.map.parcels()[i].id] = shares[static_cast<std::size_t>(i)];
      hopeful.voting_model = VotingModel::with_overrides(belief);
      agents.push_back(hopeful);
      PartyAgent table;
      table.party = p;
      table.rating = fixtures::random_table(++seed);
      agents.push_back(table);
    }
    for (const auto& split : splits) {
      for (const auto& agent : agents) {
        auto eval = evaluate_split(agent, f.map, split);
        auto target = ksplit_geometric_target(f.map, split, agent.rating, agent.voting_model);
        CHECK(std::max(eval.a_divides.total(), eval.b_divides.total()) >= target.target);
        CHECK(eval.a_divides.total() + eval.b_divides.total() == target.best + target.worst);
      }
    }
  }
}

TEST_CASE("evaluate_option against brute force over piece cuts") {
  const auto fixtures = fixtures::small_maps();
  for (std::size_t idx : {3u, 5u, 9u, 14u, 18u}) {
    const auto& map = fixtures[idx].map;
    CAPTURE(fixtures[idx].name);
    auto splits = fixtures::all_splits(map);
    for (std::size_t si = 0; si < splits.size(); si += 3) {
      const Split& split = splits[si];
      for (Party p : {Party::A, Party::B}) {
        PartyAgent pess = PartyAgent::win_maximizer(p);
        PartyAgent selfish = pess;
        selfish.opponent_model = OpponentModel::SelfInterested;
        const RatingSpec mine = RatingSpec::win(p);
        const RatingSpec theirs = RatingSpec::win(other(p));
        for (Option option : {Option::ADividesPiece1, Option::BDividesPiece1}) {
          const bool own_is_1 = (p == Party::A) == (option == Option::ADividesPiece1);
          Rational own_best = -1;
          for (const auto& cut : oracle_piece_cuts(map, split, own_is_1)) own_best = std::max(own_best, rate_cut(map, cut, mine));
          Rational their_worst = 1000;
          std::pair<Rational, Rational> selfish_pick{-1, 0};  // (their rating, -my rating)
          for (const auto& cut : oracle_piece_cuts(map, split, !own_is_1)) {
            const Rational m = rate_cut(map, cut, mine);
            their_worst = std::min(their_worst, m);
            selfish_pick = std::max(selfish_pick, std::make_pair(rate_cut(map, cut, theirs), Rational(-m)));
          }
          CHECK(evaluate_option(pess, map, split, option) == own_best + their_worst);
          CHECK(evaluate_option(selfish, map, split, option) == own_best - selfish_pick.second);
          auto detail = evaluate_option_detail(pess, map, split, option);
          CHECK((own_is_1 ? detail.piece1 : detail.piece2) == own_best);
        }
      }
    }
  }
}

TEST_CASE("declarations follow exact comparison of totals") {
  auto map = make_grid_map(3, 4, 4, fixtures::random_shares(12, 5));
  auto seq = generate_split_sequence(map, SequenceStrategy::sweep(SweepDirection::Vertical), 0);
  PartyAgent constant;
  constant.rating = RatingSpec::table([](const DistrictContext&) { return Rational(1); });
  CHECK(declare_preferences(constant, map, seq).per_split == std::vector<P>(seq.splits.size(), kI));

  auto agent = PartyAgent::win_maximizer(Party::A);
  auto prefs = declare_preferences(agent, map, seq);
  for (std::size_t i = 0; i < seq.splits.size(); ++i) {
    Rational a = evaluate_option(agent, map, seq.splits[i], Option::ADividesPiece1);
    Rational b = evaluate_option(agent, map, seq.splits[i], Option::BDividesPiece1);
    CHECK(prefs.per_split[i] == (a > b ? kA : b > a ? kB : kI));
  }
}

TEST_CASE("realize_division") {
  auto single = make_grid_map(1, 3, 1, {});
  auto a = PartyAgent::win_maximizer(Party::A);
  auto b = PartyAgent::win_maximizer(Party::B);
  CHECK_THROWS_WITH_AS(realize_division(single, Split{1, ParcelSet::first(3)}, Option::ADividesPiece1, a, b),
                       "no splits exist", InfeasibleError);

  // Mirror-symmetric 2x4 grid: column c and column 3-c carry equal shares.
  std::vector<Rational> shares = {Rational(3, 5), Rational(1, 5), Rational(1, 5), Rational(3, 5),
                                  Rational(9, 10), Rational(2, 5), Rational(2, 5), Rational(9, 10)};
  auto map = make_grid_map(2, 4, 4, shares);
  Split left{2, map.ids_to_set({"r0c0", "r1c0", "r0c1", "r1c1"})};
  auto d1 = realize_division(map, left, Option::ADividesPiece1, a, b);
  auto d2 = realize_division(map, left, Option::BDividesPiece1, a, b);
  CHECK(validate_division(map, d1).empty());
  CHECK(validate_division(map, d2).empty());
  for (const auto& agent : {a, b}) {
    CHECK(rate_division(map, d1, agent.rating, agent.voting_model) ==
          rate_division(map, d2, agent.rating, agent.voting_model));
  }
  // Each party's piece attains its oracle optimum.
  Rational best_a = -1;
  for (const auto& cut : oracle_piece_cuts(map, left, true)) best_a = std::max(best_a, rate_cut(map, cut, a.rating));
  Rational a_in_piece1 = 0;
  auto shares_v = VotingModel::outcome().shares(map);
  for (ParcelSet d : d1.districts()) {
    if (d.is_subset_of(left.piece1)) a_in_piece1 += a.rating.rate_district(DistrictContext{map, d, shares_v});
  }
  CHECK(a_in_piece1 == best_a);
}

TEST_CASE("run_protocol is deterministic and its transcript round-trips") {
  auto map = make_grid_map(3, 4, 4, fixtures::random_shares(12, 77));
  auto a = PartyAgent::win_maximizer(Party::A);
  auto b = PartyAgent::win_maximizer(Party::B);
  for (const auto& strategy : all_strategies()) {
    auto seq = generate_split_sequence(map, strategy, 3);
    auto t1 = run_protocol(map, seq, a, b, 42, strategy.label());
    auto t2 = run_protocol(map, seq, a, b, 42, strategy.label());
    CHECK(t1 == t2);
    CHECK(validate_division(map, t1.division).empty());
    CHECK(t1.prefs_a.per_split.size() == seq.splits.size());
    const auto json = transcript_to_json(map, t1);
    CHECK(json.dump() == transcript_to_json(map, t2).dump());
    auto back = transcript_from_json(map, nlohmann::json::parse(json.dump()));
    CHECK(back == t1);
    CHECK(summary_table(back) == summary_table(t1));
    // Replaying the resolution reproduces the division.
    const Split& chosen = seq.splits[static_cast<std::size_t>(back.resolution.k - 1)];
    CHECK(realize_division(map, chosen, back.resolution.option, a, b) == back.division);
  }
}

TEST_CASE("agreement and single indifference ignore the seed") {
  auto a = PartyAgent::win_maximizer(Party::A);
  auto b = PartyAgent::win_maximizer(Party::B);
  std::set<Branch> seen;
  for (const auto& f : fixtures::small_maps()) {
    if (f.map.n_districts() < 3) continue;
    for (const auto& strategy : all_strategies()) {
      auto seq = generate_split_sequence(f.map, strategy, 4);
      auto t = run_protocol(f.map, seq, a, b, 1);
      seen.insert(t.resolution.branch);
      if (t.resolution.branch != Branch::Agreement && t.resolution.branch != Branch::SingleIndifference) continue;
      auto other_seed = run_protocol(f.map, seq, a, b, 12345);
      CHECK(other_seed.resolution == t.resolution);
      CHECK(other_seed.division == t.division);
    }
  }
  CHECK(seen.count(Branch::SwitchPoint) == 1);
  CHECK(seen.size() >= 3);
}

TEST_CASE("ranking protocol") {
  auto a = PartyAgent::win_maximizer(Party::A);
  auto b = PartyAgent::win_maximizer(Party::B);
  Rng rng(3);

  // Find a tie-free 2x5 map with three 3-win and two 2-win divisions for A.
  bool found = false;
  for (std::uint64_t seed = 0; seed < 200 && !found; ++seed) {
    auto map = make_grid_map(2, 5, 5, fixtures::random_shares(10, seed));
    std::vector<Division> threes, twos;
    for (const auto& d : enumerate_divisions(map)) {
      Rational wa = rate_division(map, d, a.rating, a.voting_model);
      Rational wb = rate_division(map, d, b.rating, b.voting_model);
      if (wa + wb != 5) continue;
      if (wa == 3 && threes.size() < 3) threes.push_back(d);
      if (wa == 2 && twos.size() < 2) twos.push_back(d);
    }
    if (threes.size() < 3 || twos.size() < 2) continue;
    found = true;
    std::vector<Division> candidates = {twos[0], threes[0], twos[1], threes[1], threes[2]};
    auto r = ranking_protocol(map, candidates, a, b, rng);
    CHECK(rate_division(map, candidates[r.chosen], a.rating, a.voting_model) == 3);
    CHECK(!r.tie);
    CHECK(std::max(r.rank_a[r.chosen], r.rank_b[r.chosen]) == 3);

    auto single = ranking_protocol(map, {twos[0]}, a, b, rng);
    CHECK(single.chosen == 0);

    // Both rank the same candidate first when it is identical to another.
    const auto before = rng.draws();
    auto same = ranking_protocol(map, {threes[0], threes[0]}, a, a, rng);
    CHECK(same.chosen == 0);
    CHECK(rng.draws() == before);
  }
  CHECK(found);
  CHECK_THROWS_AS(ranking_protocol(make_grid_map(2, 2, 2, {}), {}, a, b, rng), std::invalid_argument);
}

TEST_CASE("ranking guarantee on random candidate lists") {
  const auto fixtures = fixtures::small_maps();
  const auto& map = fixtures[12].map;  // 2x6, n=3
  auto all = enumerate_divisions(map);
  REQUIRE(all.size() >= 9);
  Rng pick(11);
  for (std::uint64_t trial = 0; trial < 300; ++trial) {
    const std::size_t m = 2 + static_cast<std::size_t>(pick.uniform(8));
    std::vector<Division> candidates;
    for (std::size_t i = 0; i < m; ++i) candidates.push_back(all[static_cast<std::size_t>(pick.uniform(all.size()))]);
    PartyAgent a, b;
    a.rating = fixtures::random_table(trial * 2);
    b.party = Party::B;
    b.rating = fixtures::random_table(trial * 2 + 1);
    Rng rng(trial);
    auto r = ranking_protocol(map, candidates, a, b, rng);
    const int bound = static_cast<int>(m / 2) + 1;
    CHECK(r.rank_a[r.chosen] <= bound);
    CHECK(r.rank_b[r.chosen] <= bound);
    std::set<int> ra(r.rank_a.begin(), r.rank_a.end());
    CHECK(ra.size() == m);
  }
}

TEST_CASE("run_augmented") {
  auto map = make_grid_map(3, 4, 4, fixtures::random_shares(12, 21));
  auto a = PartyAgent::win_maximizer(Party::A);
  auto b = PartyAgent::win_maximizer(Party::B);
  std::vector<SplitSequence> seqs;
  for (const auto& s : all_strategies()) seqs.push_back(generate_split_sequence(map, s, 8));

  auto one = run_augmented(map, {seqs[0]}, a, b, 99);
  auto direct = run_protocol(map, seqs[0], a, b, derive_seed(99, 0));
  CHECK(one.final_division == direct.division);
  CHECK(one.transcripts.front() == direct);

  auto r1 = run_augmented(map, seqs, a, b, 7);
  auto r2 = run_augmented(map, seqs, a, b, 7);
  CHECK(r1.final_division == r2.final_division);
  CHECK(r1.transcripts == r2.transcripts);
  CHECK(r1.transcripts.size() + r1.dropped.size() == seqs.size());
  CHECK(validate_division(map, r1.final_division).empty());

  CHECK_THROWS_AS(run_augmented(map, {}, a, b, 1), std::invalid_argument);
}
