#include "fairdist/enumerate.hpp"

#include <memory>

#include "partition_search.hpp"

namespace fairdist {

using boost::multiprecision::cpp_int;
using detail::Optimizer;
using detail::PartitionEngine;
using detail::Score;

namespace {

void require_valid_map(const ParcelMap& map) {
  if (auto v = validate_map(map); !v.empty()) throw std::invalid_argument("invalid map: " + v.front());
}

void require_valid_split(const ParcelMap& map, const Split& split) {
  if (auto v = validate_split(map, split); !v.empty()) throw std::invalid_argument("invalid split: " + v.front());
}

/// Depth-first walk over divisions whose districts each stay inside one block.
class BlockWalker {
 public:
  BlockWalker(const ParcelMap& map, const std::vector<ParcelSet>& blocks) : map_(map) {
    for (ParcelSet b : blocks) {
      engines_.push_back(std::make_unique<PartitionEngine>(map, b, detail::twin_classes(map, b, {})));
    }
  }

  bool feasible() {
    for (auto& e : engines_) {
      if (!e->feasible(e->domain())) return false;
    }
    return true;
  }

  cpp_int count() {
    cpp_int total = 1;
    for (auto& e : engines_) total *= e->count(e->domain());
    return total;
  }

  void walk(const std::function<bool(const Division&)>& visit) {
    if (!feasible()) return;
    std::vector<ParcelSet> remaining;
    for (auto& e : engines_) remaining.push_back(e->domain());
    std::vector<int> assignment(static_cast<std::size_t>(map_.parcel_count()), -1);
    step(remaining, assignment, 0, visit);
  }

 private:
  bool step(std::vector<ParcelSet>& remaining, std::vector<int>& assignment, int label,
            const std::function<bool(const Division&)>& visit) {
    ParcelSet all;
    for (ParcelSet r : remaining) all |= r;
    if (all.empty()) return visit(Division(assignment));
    const int root = all.min();
    std::size_t b = 0;
    while (!remaining[b].contains(root)) ++b;
    const ParcelSet before = remaining[b];
    for (ParcelSet d : engines_[b]->candidates(before)) {
      d.for_each([&](int i) { assignment[static_cast<std::size_t>(i)] = label; });
      remaining[b] = before - d;
      const bool go_on = step(remaining, assignment, label + 1, visit);
      remaining[b] = before;
      if (!go_on) return false;
    }
    return true;
  }

  const ParcelMap& map_;
  std::vector<std::unique_ptr<PartitionEngine>> engines_;
};

struct BlockOptimum {
  Score total;
  std::vector<ParcelSet> districts;
};

/// Lexicographic optimum over divisions that keep every district inside one
/// block, with the canonically first witness.
BlockOptimum optimize_blocks(const ParcelMap& map, const std::vector<ParcelSet>& blocks,
                             const std::vector<Objective>& objectives, const std::string& infeasible_message) {
  std::vector<std::vector<Rational>> shares;
  shares.reserve(objectives.size());
  for (const auto& o : objectives) shares.push_back(o.model.shares(map));

  // Parcels are interchangeable only if every objective agrees they are.
  std::vector<std::string> signatures(static_cast<std::size_t>(map.parcel_count()));
  bool symmetric = true;
  for (int i = 0; i < map.parcel_count() && symmetric; ++i) {
    for (std::size_t j = 0; j < objectives.size(); ++j) {
      auto sig = objectives[j].spec.parcel_signature(map, i, shares[j]);
      if (!sig) {
        symmetric = false;
        break;
      }
      signatures[static_cast<std::size_t>(i)] += *sig + ";";
    }
  }

  std::vector<Optimizer::Scorer> scorers;
  for (std::size_t j = 0; j < objectives.size(); ++j) {
    const Objective* o = &objectives[j];
    const std::vector<Rational>* s = &shares[j];
    scorers.emplace_back([&map, o, s](ParcelSet d) {
      Rational r = o->spec.rate_district(DistrictContext{map, d, *s});
      return o->sense == Sense::Maximize ? r : Rational(-r);
    });
  }

  std::vector<std::unique_ptr<PartitionEngine>> engines;
  std::vector<std::unique_ptr<Optimizer>> optimizers;
  for (ParcelSet b : blocks) {
    auto classes = symmetric ? detail::twin_classes(map, b, signatures) : detail::singleton_classes(map, b);
    engines.push_back(std::make_unique<PartitionEngine>(map, b, std::move(classes)));
    if (!engines.back()->feasible(b)) throw InfeasibleError(infeasible_message);
    optimizers.push_back(std::make_unique<Optimizer>(*engines.back(), scorers));
  }

  BlockOptimum result;
  result.total.assign(objectives.size(), Rational(0));
  std::vector<ParcelSet> remaining = blocks;
  std::vector<Score> needed;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    needed.push_back(optimizers[b]->value(blocks[b]));
    result.total = detail::score_add(result.total, needed.back());
  }

  for (;;) {
    ParcelSet all;
    for (ParcelSet r : remaining) all |= r;
    if (all.empty()) break;
    const int root = all.min();
    std::size_t b = 0;
    while (!remaining[b].contains(root)) ++b;
    bool found = false;
    for (ParcelSet d : engines[b]->candidates(remaining[b])) {
      const Score& ds = optimizers[b]->score(d);
      if (detail::score_add(ds, optimizers[b]->value(remaining[b] - d)) == needed[b]) {
        Score rest(ds.size());
        for (std::size_t j = 0; j < ds.size(); ++j) rest[j] = needed[b][j] - ds[j];
        needed[b] = std::move(rest);
        remaining[b] -= d;
        result.districts.push_back(d);
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("optimum witness reconstruction failed");
  }

  for (std::size_t j = 0; j < objectives.size(); ++j) {
    if (objectives[j].sense == Sense::Minimize) result.total[j] = -result.total[j];
  }
  return result;
}

TargetReport target_over_blocks(const ParcelMap& map, const std::vector<ParcelSet>& blocks, const RatingSpec& spec,
                                const VotingModel& model, const std::string& infeasible_message) {
  auto best = optimize_blocks(map, blocks, {Objective{spec, model, Sense::Maximize}}, infeasible_message);
  auto worst = optimize_blocks(map, blocks, {Objective{spec, model, Sense::Minimize}}, infeasible_message);
  TargetReport r;
  r.best = best.total.front();
  r.worst = worst.total.front();
  r.target = (r.best + r.worst) / 2;
  r.best_witness = Division::from_districts(map.parcel_count(), best.districts);
  r.worst_witness = Division::from_districts(map.parcel_count(), worst.districts);
  return r;
}

}  // namespace

void for_each_division(const ParcelMap& map, const std::function<bool(const Division&)>& visit) {
  require_valid_map(map);
  BlockWalker(map, {map.all()}).walk(visit);
}

std::vector<Division> enumerate_divisions(const ParcelMap& map) {
  std::vector<Division> out;
  for_each_division(map, [&](const Division& d) {
    out.push_back(d);
    return true;
  });
  return out;
}

cpp_int count_divisions(const ParcelMap& map) {
  require_valid_map(map);
  return BlockWalker(map, {map.all()}).count();
}

void for_each_refining_division(const ParcelMap& map, const Split& split,
                                const std::function<bool(const Division&)>& visit) {
  require_valid_map(map);
  require_valid_split(map, split);
  BlockWalker(map, {split.piece1, split.piece2(map)}).walk(visit);
}

std::vector<Division> enumerate_divisions_refining(const ParcelMap& map, const Split& split) {
  std::vector<Division> out;
  for_each_refining_division(map, split, [&](const Division& d) {
    out.push_back(d);
    return true;
  });
  return out;
}

cpp_int count_divisions_refining(const ParcelMap& map, const Split& split) {
  require_valid_map(map);
  require_valid_split(map, split);
  return BlockWalker(map, {split.piece1, split.piece2(map)}).count();
}

cpp_int count_piece_divisions(const ParcelMap& map, ParcelSet piece, int count) {
  require_valid_map(map);
  if (piece.size() != count * map.district_size() || !piece.is_subset_of(map.all())) return 0;
  return BlockWalker(map, {piece}).count();
}

bool piece_feasible(const ParcelMap& map, ParcelSet piece, int count) {
  if (piece.size() != count * map.district_size() || !piece.is_subset_of(map.all())) return false;
  return BlockWalker(map, {piece}).feasible();
}

std::pair<Rational, Division> extremal_rating(const ParcelMap& map, const std::vector<Division>& divisions,
                                              const RatingSpec& spec, const VotingModel& model, Sense sense) {
  if (divisions.empty()) throw InfeasibleError("no viable divisions");
  std::optional<std::pair<Rational, Division>> best;
  for (const auto& d : divisions) {
    Rational r = rate_division(map, d, spec, model);
    const bool better = !best || (sense == Sense::Maximize ? r > best->first : r < best->first);
    if (better) best.emplace(std::move(r), d);
  }
  return *best;
}

TargetReport geometric_target(const ParcelMap& map, const RatingSpec& spec, const VotingModel& model) {
  require_valid_map(map);
  return target_over_blocks(map, {map.all()}, spec, model, "no viable divisions");
}

TargetReport ksplit_geometric_target(const ParcelMap& map, const Split& split, const RatingSpec& spec,
                                     const VotingModel& model) {
  require_valid_map(map);
  require_valid_split(map, split);
  return target_over_blocks(map, {split.piece1, split.piece2(map)}, spec, model, "infeasible split");
}

PieceDivision optimize_piece(const ParcelMap& map, ParcelSet piece, int count,
                             const std::vector<Objective>& objectives) {
  require_valid_map(map);
  if (!piece.is_subset_of(map.all()) || piece.size() != count * map.district_size() || count < 1) {
    throw InfeasibleError("infeasible piece: " + std::to_string(piece.size()) + " parcels cannot form " +
                          std::to_string(count) + " districts of " + std::to_string(map.district_size()));
  }
  auto opt = optimize_blocks(map, {piece}, objectives, "infeasible piece: no division into " +
                                                           std::to_string(count) + " viable districts");
  return PieceDivision{std::move(opt.total), std::move(opt.districts)};
}

std::pair<Rational, std::vector<ParcelSet>> optimal_piece_division(const ParcelMap& map, ParcelSet piece, int count,
                                                                   const RatingSpec& spec, const VotingModel& model,
                                                                   Sense sense) {
  auto r = optimize_piece(map, piece, count, {Objective{spec, model, sense}});
  return {r.ratings.front(), std::move(r.districts)};
}

}  // namespace fairdist
