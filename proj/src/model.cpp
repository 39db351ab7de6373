#include "fairdist/model.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace fairdist {

ParcelMap::ParcelMap(std::vector<Parcel> parcels, std::vector<std::pair<std::string, std::string>> adjacency,
                     int n_districts)
    : parcels_(std::move(parcels)), adjacency_(std::move(adjacency)), n_districts_(n_districts) {
  for (std::size_t i = 0; i < parcels_.size(); ++i) index_.emplace(parcels_[i].id, static_cast<int>(i));
  neighbors_.assign(parcels_.size(), ParcelSet{});
  if (parcels_.size() > static_cast<std::size_t>(kMaxParcels)) return;
  for (const auto& [a, b] : adjacency_) {
    auto ia = index_of(a);
    auto ib = index_of(b);
    if (!ia || !ib || *ia == *ib) continue;
    neighbors_[static_cast<std::size_t>(*ia)].insert(*ib);
    neighbors_[static_cast<std::size_t>(*ib)].insert(*ia);
  }
}

int ParcelMap::district_size() const {
  if (n_districts_ <= 0) return 0;
  return parcel_count() / n_districts_;
}

std::optional<int> ParcelMap::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int ParcelMap::require_index(const std::string& id) const {
  auto idx = index_of(id);
  if (!idx) throw std::out_of_range("unknown parcel id '" + id + "'");
  return *idx;
}

std::int64_t ParcelMap::total_population() const {
  std::int64_t total = 0;
  for (const auto& p : parcels_) total += p.population;
  return total;
}

Rational ParcelMap::statewide_share_a() const {
  Rational weighted = 0;
  std::int64_t total = 0;
  for (const auto& p : parcels_) {
    weighted += p.vote_share_a * p.population;
    total += p.population;
  }
  if (total == 0) return 0;
  return weighted / total;
}

bool ParcelMap::has_geometry() const {
  return !parcels_.empty() &&
         std::all_of(parcels_.begin(), parcels_.end(), [](const Parcel& p) { return p.rect.has_value(); });
}

ParcelMap ParcelMap::with_district_predicate(DistrictPredicate predicate, std::string name) const {
  ParcelMap copy = *this;
  copy.predicate_ = std::move(predicate);
  copy.predicate_name_ = std::move(name);
  return copy;
}

bool ParcelMap::is_connected(ParcelSet set) const {
  if (set.empty()) return false;
  ParcelSet seen = ParcelSet::single(set.min());
  ParcelSet frontier = seen;
  while (!frontier.empty()) {
    ParcelSet next;
    frontier.for_each([&](int i) { next |= neighbors_[static_cast<std::size_t>(i)]; });
    next = (next & set) - seen;
    seen |= next;
    frontier = next;
  }
  return seen == set;
}

std::vector<ParcelSet> ParcelMap::components(ParcelSet set) const {
  std::vector<ParcelSet> out;
  ParcelSet left = set;
  while (!left.empty()) {
    ParcelSet seen = ParcelSet::single(left.min());
    ParcelSet frontier = seen;
    while (!frontier.empty()) {
      ParcelSet next;
      frontier.for_each([&](int i) { next |= neighbors_[static_cast<std::size_t>(i)]; });
      next = (next & left) - seen;
      seen |= next;
      frontier = next;
    }
    out.push_back(seen);
    left -= seen;
  }
  return out;
}

ParcelSet ParcelMap::ids_to_set(const std::vector<std::string>& ids) const {
  ParcelSet s;
  for (const auto& id : ids) s.insert(require_index(id));
  return s;
}

std::vector<std::string> ParcelMap::set_to_ids(ParcelSet set) const {
  std::vector<std::string> ids;
  set.for_each([&](int i) { ids.push_back(parcels_[static_cast<std::size_t>(i)].id); });
  return ids;
}

std::vector<std::string> validate_map(const ParcelMap& map) {
  std::vector<std::string> v;
  const auto& parcels = map.parcels();
  if (parcels.empty()) v.push_back("map has no parcels");
  if (map.parcel_count() > kMaxParcels) {
    v.push_back("map has " + std::to_string(map.parcel_count()) + " parcels; at most " +
                std::to_string(kMaxParcels) + " are supported");
  }
  if (map.n_districts() <= 0) v.push_back("n_districts must be positive");

  std::set<std::string> seen;
  for (const auto& p : parcels) {
    if (!seen.insert(p.id).second) v.push_back("duplicate parcel id '" + p.id + "'");
    if (p.population <= 0) v.push_back("population of parcel '" + p.id + "' must be positive");
    if (p.vote_share_a < 0 || p.vote_share_a > 1) {
      v.push_back("vote share of parcel '" + p.id + "' outside [0,1]");
    }
  }
  for (const auto& [a, b] : map.adjacency()) {
    for (const auto& id : {a, b}) {
      if (!map.index_of(id)) v.push_back("unknown parcel id '" + id + "' in adjacency");
    }
    if (a == b) v.push_back("self-loop on parcel '" + a + "'");
  }
  if (!parcels.empty()) {
    const auto pop = parcels.front().population;
    if (std::any_of(parcels.begin(), parcels.end(), [&](const Parcel& p) { return p.population != pop; })) {
      v.push_back("parcels have unequal populations");
    }
    if (map.n_districts() > 0 && map.total_population() % map.n_districts() != 0) {
      v.push_back("total population " + std::to_string(map.total_population()) + " not divisible by " +
                  std::to_string(map.n_districts()) + " districts");
    }
    if (map.n_districts() > 0 && map.parcel_count() % map.n_districts() != 0) {
      v.push_back("parcel count " + std::to_string(map.parcel_count()) + " not divisible by " +
                  std::to_string(map.n_districts()) + " districts");
    }
    if (map.parcel_count() <= kMaxParcels && !map.is_connected(map.all())) {
      v.push_back("parcel graph is not connected");
    }
  }
  return v;
}

VotingModel VotingModel::with_overrides(std::map<std::string, Rational> overrides, bool fall_back_to_map) {
  VotingModel m;
  m.overrides_ = std::move(overrides);
  m.fall_back_ = fall_back_to_map;
  return m;
}

std::vector<Rational> VotingModel::shares(const ParcelMap& map) const {
  std::vector<Rational> out;
  out.reserve(map.parcels().size());
  for (const auto& p : map.parcels()) {
    auto it = overrides_.find(p.id);
    if (it != overrides_.end()) {
      out.push_back(it->second);
    } else if (fall_back_) {
      out.push_back(p.vote_share_a);
    } else {
      throw std::invalid_argument("voting model has no share for parcel '" + p.id + "'");
    }
  }
  return out;
}

std::vector<std::string> validate_voting_model(const ParcelMap& map, const VotingModel& model) {
  std::vector<std::string> v;
  for (const auto& [id, share] : model.overrides()) {
    if (!map.index_of(id)) v.push_back("voting model names unknown parcel id '" + id + "'");
    if (share < 0 || share > 1) v.push_back("voting model share for '" + id + "' outside [0,1]");
  }
  if (!model.falls_back_to_map()) {
    for (const auto& p : map.parcels()) {
      if (!model.overrides().count(p.id)) v.push_back("voting model has no share for parcel '" + p.id + "'");
    }
  }
  return v;
}

Division Division::from_districts(int parcel_count, const std::vector<ParcelSet>& districts) {
  std::vector<int> assignment(static_cast<std::size_t>(parcel_count), -1);
  for (std::size_t d = 0; d < districts.size(); ++d) {
    districts[d].for_each([&](int i) { assignment[static_cast<std::size_t>(i)] = static_cast<int>(d); });
  }
  return Division(std::move(assignment)).canonical();
}

int Division::label_count() const {
  int hi = -1;
  for (int a : assignment_) hi = std::max(hi, a);
  return hi + 1;
}

std::vector<ParcelSet> Division::districts() const {
  std::vector<ParcelSet> out(static_cast<std::size_t>(std::max(label_count(), 0)));
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    if (assignment_[i] >= 0) out[static_cast<std::size_t>(assignment_[i])].insert(static_cast<int>(i));
  }
  return out;
}

Division Division::canonical() const {
  std::map<int, int> relabel;
  std::vector<int> out;
  out.reserve(assignment_.size());
  for (int a : assignment_) {
    if (a < 0) {
      out.push_back(a);
      continue;
    }
    auto [it, inserted] = relabel.emplace(a, static_cast<int>(relabel.size()));
    out.push_back(it->second);
  }
  return Division(std::move(out));
}

std::strong_ordering Division::operator<=>(const Division& other) const {
  auto mine = canonical().districts();
  auto theirs = other.canonical().districts();
  const std::size_t common = std::min(mine.size(), theirs.size());
  for (std::size_t d = 0; d < common; ++d) {
    if (mine[d] == theirs[d]) continue;
    if (mine[d].size() != theirs[d].size()) return mine[d].size() <=> theirs[d].size();
    return ParcelSet::lex_less(mine[d], theirs[d]) ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (mine.size() != theirs.size()) return mine.size() <=> theirs.size();
  return assignment_ <=> other.assignment_;
}

std::vector<std::string> validate_division(const ParcelMap& map, const Division& division) {
  std::vector<std::string> v;
  const int n = map.n_districts();
  if (division.parcel_count() != map.parcel_count()) {
    v.push_back("assignment covers " + std::to_string(division.parcel_count()) + " parcels but the map has " +
                std::to_string(map.parcel_count()));
    return v;
  }
  std::vector<ParcelSet> districts(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 0; i < division.parcel_count(); ++i) {
    int d = division.assignment()[static_cast<std::size_t>(i)];
    if (d < 0 || d >= n) {
      v.push_back("parcel '" + map.parcels()[static_cast<std::size_t>(i)].id + "' has district index " +
                  std::to_string(d) + " outside 0.." + std::to_string(n - 1));
      continue;
    }
    districts[static_cast<std::size_t>(d)].insert(i);
  }
  const int size = map.district_size();
  for (int d = 0; d < n; ++d) {
    ParcelSet district = districts[static_cast<std::size_t>(d)];
    const std::string label = "district " + std::to_string(d) + ":";
    if (district.empty()) {
      v.push_back("missing district " + std::to_string(d));
      continue;
    }
    if (district.size() != size) {
      v.push_back(label + " has " + std::to_string(district.size()) + " parcels, expected " + std::to_string(size));
    }
    if (!map.is_connected(district)) v.push_back(label + " district not connected");
    if (map.district_predicate() && !map.district_predicate()(map, district)) {
      v.push_back(label + " fails validity rule '" + map.predicate_name() + "'");
    }
  }
  return v;
}

Rational DistrictContext::share_a() const {
  Rational weighted = 0;
  std::int64_t total = 0;
  district.for_each([&](int i) {
    const auto pop = map.parcels()[static_cast<std::size_t>(i)].population;
    weighted += shares_a[static_cast<std::size_t>(i)] * pop;
    total += pop;
  });
  if (total == 0) return 0;
  return weighted / total;
}

RatingSpec RatingSpec::win(Party party, Rational threshold) {
  RatingSpec s;
  s.kind_ = Kind::Win;
  s.party_ = party;
  s.threshold_ = std::move(threshold);
  s.name_ = std::string("win(") + to_string(party) + ")";
  return s;
}

RatingSpec RatingSpec::weighted(Party party, Rational win_value, std::map<std::string, Rational> parcel_bonus,
                                Rational threshold) {
  RatingSpec s;
  s.kind_ = Kind::Weighted;
  s.party_ = party;
  s.threshold_ = std::move(threshold);
  s.win_value_ = std::move(win_value);
  s.bonus_ = std::move(parcel_bonus);
  s.name_ = std::string("weighted(") + to_string(party) + ")";
  return s;
}

RatingSpec RatingSpec::table(DistrictRater rater, std::string name) {
  RatingSpec s;
  s.kind_ = Kind::Table;
  s.table_ = std::move(rater);
  s.name_ = std::move(name);
  return s;
}

RatingSpec RatingSpec::win_as_table(Party party, Rational threshold) {
  RatingSpec s = table(
      [party, threshold](const DistrictContext& ctx) { return Rational(ctx.share(party) > threshold ? 1 : 0); },
      std::string("win-table(") + to_string(party) + ")");
  s.party_ = party;
  return s;
}

Rational RatingSpec::rate_district(const DistrictContext& ctx) const {
  switch (kind_) {
    case Kind::Win:
      return ctx.share(party_) > threshold_ ? Rational(1) : Rational(0);
    case Kind::Weighted: {
      Rational r = ctx.share(party_) > threshold_ ? win_value_ : Rational(0);
      ctx.district.for_each([&](int i) {
        auto it = bonus_.find(ctx.map.parcels()[static_cast<std::size_t>(i)].id);
        if (it != bonus_.end()) r += it->second;
      });
      return r;
    }
    case Kind::Table:
      return table_(ctx);
  }
  return 0;
}

std::optional<std::string> RatingSpec::parcel_signature(const ParcelMap& map, int index,
                                                        std::span<const Rational> shares_a) const {
  const auto& share = shares_a[static_cast<std::size_t>(index)];
  switch (kind_) {
    case Kind::Win:
      return fairdist::to_string(share);
    case Kind::Weighted: {
      auto it = bonus_.find(map.parcels()[static_cast<std::size_t>(index)].id);
      return fairdist::to_string(share) + "|" + (it == bonus_.end() ? std::string("0") : fairdist::to_string(it->second));
    }
    case Kind::Table:
      return std::nullopt;
  }
  return std::nullopt;
}

Rational rate_division(const ParcelMap& map, const Division& division, const RatingSpec& spec,
                       const VotingModel& model) {
  const auto shares = model.shares(map);
  Rational total = 0;
  for (ParcelSet district : division.districts()) {
    if (district.empty()) continue;
    total += spec.rate_district(DistrictContext{map, district, shares});
  }
  return total;
}

std::vector<std::string> validate_split(const ParcelMap& map, const Split& split) {
  std::vector<std::string> v;
  const int n = map.n_districts();
  if (split.k < 1 || split.k > n - 1) {
    v.push_back("split k=" + std::to_string(split.k) + " outside 1.." + std::to_string(n - 1));
  }
  if (!split.piece1.is_subset_of(map.all())) v.push_back("piece 1 names parcels outside the map");
  const std::int64_t district_pop = n > 0 ? map.total_population() / n : 0;
  std::int64_t pop1 = 0;
  (split.piece1 & map.all()).for_each([&](int i) { pop1 += map.parcels()[static_cast<std::size_t>(i)].population; });
  if (pop1 != district_pop * split.k) {
    v.push_back("piece 1 population " + std::to_string(pop1) + " differs from " + std::to_string(split.k) +
                " districts (" + std::to_string(district_pop * split.k) + ")");
  }
  if (!map.is_connected(split.piece1 & map.all())) v.push_back("piece 1 not connected");
  if (!map.is_connected(split.piece2(map))) v.push_back("piece 2 not connected");
  return v;
}

std::vector<std::string> validate_split_sequence(const ParcelMap& map, const SplitSequence& sequence) {
  std::vector<std::string> v;
  const int n = map.n_districts();
  if (static_cast<int>(sequence.splits.size()) != n - 1) {
    v.push_back("sequence has " + std::to_string(sequence.splits.size()) + " splits, expected " +
                std::to_string(n - 1));
  }
  for (std::size_t j = 0; j < sequence.splits.size(); ++j) {
    const Split& s = sequence.splits[j];
    if (s.k != static_cast<int>(j) + 1) {
      v.push_back("split " + std::to_string(j) + " has k=" + std::to_string(s.k) + ", expected " +
                  std::to_string(j + 1));
    }
    for (auto& msg : validate_split(map, s)) v.push_back("split k=" + std::to_string(s.k) + ": " + msg);
    if (j > 0) {
      const Split& prev = sequence.splits[j - 1];
      if (!prev.piece1.is_subset_of(s.piece1) || prev.piece1 == s.piece1) {
        v.push_back("piece 1 of split k=" + std::to_string(s.k) + " does not strictly contain piece 1 of split k=" +
                    std::to_string(prev.k));
      }
    }
  }
  return v;
}

}  // namespace fairdist
