#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fairdist/model.hpp"

namespace fairdist {

/// Raised when a map, split or piece admits no viable division.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Sense { Maximize, Minimize };

/// Best and worst rating over a set of viable divisions, with the first
/// division (in canonical order) attaining each.
struct TargetReport {
  Rational best;
  Rational worst;
  Rational target;
  Division best_witness;
  Division worst_witness;
};

/// Visits every viable division exactly once, canonically labelled, in
/// canonical order (see Division::operator<=>). Stops early when `visit`
/// returns false. The map must be valid.
void for_each_division(const ParcelMap& map, const std::function<bool(const Division&)>& visit);
std::vector<Division> enumerate_divisions(const ParcelMap& map);
/// Number of viable divisions, computed without materialising them.
boost::multiprecision::cpp_int count_divisions(const ParcelMap& map);

/// Viable divisions whose districts each lie inside one piece of the split,
/// in the same canonical order.
void for_each_refining_division(const ParcelMap& map, const Split& split,
                                const std::function<bool(const Division&)>& visit);
std::vector<Division> enumerate_divisions_refining(const ParcelMap& map, const Split& split);
boost::multiprecision::cpp_int count_divisions_refining(const ParcelMap& map, const Split& split);
/// Number of ways to cut `piece` into `count` viable districts.
boost::multiprecision::cpp_int count_piece_divisions(const ParcelMap& map, ParcelSet piece, int count);
/// Whether `piece` can be cut into `count` viable districts at all.
bool piece_feasible(const ParcelMap& map, ParcelSet piece, int count);

/// Optimum over an explicit list of divisions and the first one attaining it.
/// Throws InfeasibleError("no viable divisions") on an empty list.
std::pair<Rational, Division> extremal_rating(const ParcelMap& map, const std::vector<Division>& divisions,
                                              const RatingSpec& spec, const VotingModel& model, Sense sense);

/// Best/worst/midpoint over all viable divisions. With the voting outcome and
/// a Win rating this is the absolute geometric target.
TargetReport geometric_target(const ParcelMap& map, const RatingSpec& spec, const VotingModel& model);

/// The same, restricted to divisions that respect the split boundary.
/// Throws InfeasibleError("infeasible split") when no such division exists.
TargetReport ksplit_geometric_target(const ParcelMap& map, const Split& split, const RatingSpec& spec,
                                     const VotingModel& model);

/// One additive criterion of a lexicographic piece optimisation.
struct Objective {
  RatingSpec spec;
  VotingModel model;
  Sense sense = Sense::Maximize;
};

struct PieceDivision {
  /// Achieved rating for each objective, in the order given.
  std::vector<Rational> ratings;
  /// Districts in canonical order.
  std::vector<ParcelSet> districts;
};

/// Cuts `piece` into `count` viable districts, optimising the objectives
/// lexicographically; ties go to the first division in canonical order.
/// Throws InfeasibleError when the piece cannot be cut that way.
PieceDivision optimize_piece(const ParcelMap& map, ParcelSet piece, int count,
                             const std::vector<Objective>& objectives);

/// Single-objective form of optimize_piece().
std::pair<Rational, std::vector<ParcelSet>> optimal_piece_division(const ParcelMap& map, ParcelSet piece, int count,
                                                                   const RatingSpec& spec, const VotingModel& model,
                                                                   Sense sense);

}  // namespace fairdist
