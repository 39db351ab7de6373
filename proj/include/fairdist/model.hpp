#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fairdist/parcel_set.hpp"
#include "fairdist/rational.hpp"

namespace fairdist {

enum class Party { A, B };

inline Party other(Party p) { return p == Party::A ? Party::B : Party::A; }
inline const char* to_string(Party p) { return p == Party::A ? "A" : "B"; }

struct Rect {
  double x = 0;
  double y = 0;
  double w = 1;
  double h = 1;
};

struct Parcel {
  std::string id;
  std::int64_t population = 1;
  Rational vote_share_a;
  std::optional<Rect> rect;
};

class ParcelMap;

/// Extra validity rule a district must satisfy on top of size and contiguity.
/// Stands in for legal constraints; a division is viable only if every one of
/// its districts passes.
using DistrictPredicate = std::function<bool(const ParcelMap&, ParcelSet)>;

/// The state: equal-population parcels, their adjacency and the number of
/// districts to draw. Construction never throws; use validate_map() to check
/// the invariants before handing a map to enumeration or the protocol.
class ParcelMap {
 public:
  ParcelMap() = default;
  ParcelMap(std::vector<Parcel> parcels, std::vector<std::pair<std::string, std::string>> adjacency,
            int n_districts);

  const std::vector<Parcel>& parcels() const { return parcels_; }
  const std::vector<std::pair<std::string, std::string>>& adjacency() const { return adjacency_; }
  int n_districts() const { return n_districts_; }
  int parcel_count() const { return static_cast<int>(parcels_.size()); }

  /// Parcels per district under the equal-population model.
  int district_size() const;
  ParcelSet all() const { return ParcelSet::first(parcel_count()); }
  /// Neighbours of a parcel; edges naming unknown ids or self-loops are ignored.
  ParcelSet neighbors(int index) const { return neighbors_.at(static_cast<std::size_t>(index)); }
  std::optional<int> index_of(const std::string& id) const;
  /// Throws std::out_of_range naming the id when it is not a parcel.
  int require_index(const std::string& id) const;

  std::int64_t total_population() const;
  /// Population-weighted mean of vote_share_a.
  Rational statewide_share_a() const;
  bool has_geometry() const;

  const DistrictPredicate& district_predicate() const { return predicate_; }
  const std::string& predicate_name() const { return predicate_name_; }
  /// Copy of this map with an extra district validity rule attached.
  ParcelMap with_district_predicate(DistrictPredicate predicate, std::string name) const;

  /// True when the induced subgraph on `set` is connected (the empty set is not).
  bool is_connected(ParcelSet set) const;
  /// Connected components of the induced subgraph on `set`.
  std::vector<ParcelSet> components(ParcelSet set) const;
  ParcelSet ids_to_set(const std::vector<std::string>& ids) const;
  std::vector<std::string> set_to_ids(ParcelSet set) const;

 private:
  std::vector<Parcel> parcels_;
  std::vector<std::pair<std::string, std::string>> adjacency_;
  int n_districts_ = 1;
  std::vector<ParcelSet> neighbors_;
  std::map<std::string, int> index_;
  DistrictPredicate predicate_;
  std::string predicate_name_;
};

/// Every violated invariant, or empty when the map is valid.
std::vector<std::string> validate_map(const ParcelMap& map);

/// A party's prediction of how every parcel votes. The default model reads
/// the map's own shares, which makes it the voting outcome V_out.
class VotingModel {
 public:
  VotingModel() = default;

  static VotingModel outcome() { return VotingModel(); }
  /// Overrides keyed by parcel id. Parcels without an entry fall back to the
  /// map's shares unless `fall_back_to_map` is false.
  static VotingModel with_overrides(std::map<std::string, Rational> overrides, bool fall_back_to_map = true);

  const std::map<std::string, Rational>& overrides() const { return overrides_; }
  bool falls_back_to_map() const { return fall_back_; }
  bool is_outcome() const { return overrides_.empty() && fall_back_; }

  /// Per-parcel share for party A in map order. Throws std::invalid_argument
  /// when a parcel has no entry and there is no fallback.
  std::vector<Rational> shares(const ParcelMap& map) const;

  bool operator==(const VotingModel&) const = default;

 private:
  std::map<std::string, Rational> overrides_;
  bool fall_back_ = true;
};

std::vector<std::string> validate_voting_model(const ParcelMap& map, const VotingModel& model);

/// Assignment of every parcel (in map order) to a district index.
class Division {
 public:
  Division() = default;
  explicit Division(std::vector<int> assignment) : assignment_(std::move(assignment)) {}
  /// Builds the canonical division whose districts are the given sets.
  static Division from_districts(int parcel_count, const std::vector<ParcelSet>& districts);

  const std::vector<int>& assignment() const { return assignment_; }
  int parcel_count() const { return static_cast<int>(assignment_.size()); }
  /// Highest label plus one.
  int label_count() const;
  /// Parcel sets indexed by district label.
  std::vector<ParcelSet> districts() const;

  /// Relabels so that districts are numbered in order of their lowest parcel.
  Division canonical() const;
  bool is_canonical() const { return canonical() == *this; }

  bool operator==(const Division&) const = default;
  /// Canonical order: districts taken by lowest parcel, each compared by its
  /// sorted parcel list. This is the order enumeration emits.
  std::strong_ordering operator<=>(const Division& other) const;

 private:
  std::vector<int> assignment_;
};

std::vector<std::string> validate_division(const ParcelMap& map, const Division& division);

/// Everything a district rater may look at.
struct DistrictContext {
  const ParcelMap& map;
  ParcelSet district;
  std::span<const Rational> shares_a;

  /// Population-weighted vote share of party A inside the district.
  Rational share_a() const;
  Rational share(Party party) const { return party == Party::A ? share_a() : Rational(1 - share_a()); }
};

using DistrictRater = std::function<Rational(const DistrictContext&)>;

/// Additive district rater. A division's rating is the sum of its district
/// ratings.
class RatingSpec {
 public:
  enum class Kind { Win, Weighted, Table };

  /// 1 for every district where the party's share strictly exceeds threshold.
  static RatingSpec win(Party party, Rational threshold = Rational(1, 2));
  /// win_value for a won district plus the bonuses of the parcels it holds.
  static RatingSpec weighted(Party party, Rational win_value, std::map<std::string, Rational> parcel_bonus,
                             Rational threshold = Rational(1, 2));
  /// Arbitrary district scoring rule. Ratings built this way get no symmetry
  /// reduction during enumeration.
  static RatingSpec table(DistrictRater rater, std::string name = "table");
  /// The Win rule written as a Table instance.
  static RatingSpec win_as_table(Party party, Rational threshold = Rational(1, 2));

  Kind kind() const { return kind_; }
  Party party() const { return party_; }
  const Rational& threshold() const { return threshold_; }
  const Rational& win_value() const { return win_value_; }
  const std::map<std::string, Rational>& parcel_bonus() const { return bonus_; }
  const std::string& name() const { return name_; }

  Rational rate_district(const DistrictContext& ctx) const;

  /// Parcels whose signatures match are interchangeable for this rater.
  /// std::nullopt means the rater may distinguish every parcel.
  std::optional<std::string> parcel_signature(const ParcelMap& map, int index,
                                              std::span<const Rational> shares_a) const;

 private:
  Kind kind_ = Kind::Win;
  Party party_ = Party::A;
  Rational threshold_{1, 2};
  Rational win_value_{1};
  std::map<std::string, Rational> bonus_;
  DistrictRater table_;
  std::string name_ = "win";
};

/// Sum of district ratings. Throws std::invalid_argument when the voting
/// model cannot supply a share for some parcel.
Rational rate_division(const ParcelMap& map, const Division& division, const RatingSpec& spec,
                       const VotingModel& model);

/// A k-split: piece 1 holds exactly k districts' worth of parcels, piece 2
/// the rest.
struct Split {
  int k = 1;
  ParcelSet piece1;

  ParcelSet piece2(const ParcelMap& map) const { return map.all() - piece1; }
  bool operator==(const Split&) const = default;
};

std::vector<std::string> validate_split(const ParcelMap& map, const Split& split);

/// Nested 1..n-1 splits.
struct SplitSequence {
  std::vector<Split> splits;

  bool operator==(const SplitSequence&) const = default;
};

std::vector<std::string> validate_split_sequence(const ParcelMap& map, const SplitSequence& sequence);

}  // namespace fairdist
