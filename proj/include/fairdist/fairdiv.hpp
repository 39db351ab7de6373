#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fairdist/model.hpp"
#include "fairdist/rational.hpp"

namespace fairdist {

/// Piecewise-constant density on [0, 1] with total mass 1.
class PiecewiseValuation {
 public:
  /// `breakpoints` runs from 0 to 1 strictly increasing; one density per
  /// interval. Densities are rescaled so the total mass is 1. Throws
  /// std::invalid_argument on malformed input or zero mass.
  PiecewiseValuation(std::vector<Rational> breakpoints, std::vector<Rational> densities);

  static PiecewiseValuation uniform();

  const std::vector<Rational>& breakpoints() const { return breakpoints_; }
  const std::vector<Rational>& densities() const { return densities_; }

  /// Mass of [a, b], 0 <= a <= b <= 1.
  Rational mass(const Rational& a, const Rational& b) const;
  /// Leftmost x with mass([0, x]) = 1/2.
  Rational median() const;

 private:
  std::vector<Rational> breakpoints_;
  std::vector<Rational> densities_;
};

enum class Side { Left, Right };

struct CutChooseResult {
  Rational cut;
  /// Piece taken by B, the chooser.
  Side chooser_piece = Side::Left;
  /// Each party's value of its own piece.
  Rational share_a;
  Rational share_b;
};

/// A cuts at its median, B takes the piece it values more (left on ties).
CutChooseResult cut_and_choose(const PiecewiseValuation& a, const PiecewiseValuation& b);

/// Both parties spread 100 points over the goods.
struct PointAllocation {
  std::vector<std::string> goods;
  std::vector<Rational> a;
  std::vector<Rational> b;

  /// Rescales each party's bids to sum to 100. Throws std::invalid_argument
  /// for negative bids, length mismatches, no goods or an all-zero party.
  static PointAllocation normalized(std::vector<std::string> goods, std::vector<Rational> a, std::vector<Rational> b);
};

std::vector<std::string> validate_point_allocation(const PointAllocation& points);

/// Fraction of each good that goes to A.
struct GoodsSplit {
  std::vector<Rational> share_a;
};

struct AdjustedWinnerResult {
  GoodsSplit split;
  /// Each party's points for its own bundle; equal on success.
  Rational value_a;
  Rational value_b;
  /// Good divided between the parties, if any.
  std::optional<std::size_t> divided_good;
  /// Goods moved from the initial winner, in transfer order.
  std::vector<std::size_t> transfers;
};

/// Higher bidder takes each good (A on ties, A also takes goods both bid 0
/// on), then goods move from the richer party in nondecreasing order of
/// winner/loser points (index on ties) until the values meet, splitting the
/// last one.
AdjustedWinnerResult adjusted_winner(const PointAllocation& points);

/// (value for A, value for B) of an arbitrary split.
std::pair<Rational, Rational> split_values(const PointAllocation& points, const GoodsSplit& split);

PiecewiseValuation valuation_from_json(const nlohmann::json& doc);
PointAllocation point_allocation_from_json(const nlohmann::json& doc);
nlohmann::ordered_json to_json(const CutChooseResult& result);
nlohmann::ordered_json to_json(const PointAllocation& points, const AdjustedWinnerResult& result);

}  // namespace fairdist
