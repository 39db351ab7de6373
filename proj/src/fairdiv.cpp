#include "fairdist/fairdiv.hpp"

#include <algorithm>
#include <stdexcept>

#include "fairdist/map_io.hpp"

namespace fairdist {

PiecewiseValuation::PiecewiseValuation(std::vector<Rational> breakpoints, std::vector<Rational> densities)
    : breakpoints_(std::move(breakpoints)), densities_(std::move(densities)) {
  if (breakpoints_.size() < 2 || densities_.size() + 1 != breakpoints_.size()) {
    throw std::invalid_argument("valuation needs n+1 breakpoints for n densities");
  }
  if (breakpoints_.front() != 0 || breakpoints_.back() != 1) {
    throw std::invalid_argument("valuation breakpoints must run from 0 to 1");
  }
  Rational total = 0;
  for (std::size_t i = 0; i < densities_.size(); ++i) {
    if (breakpoints_[i + 1] <= breakpoints_[i]) throw std::invalid_argument("valuation breakpoints must increase");
    if (densities_[i] < 0) throw std::invalid_argument("valuation densities must be nonnegative");
    total += densities_[i] * (breakpoints_[i + 1] - breakpoints_[i]);
  }
  if (total == 0) throw std::invalid_argument("degenerate valuation: zero mass");
  for (auto& d : densities_) d /= total;
}

PiecewiseValuation PiecewiseValuation::uniform() { return PiecewiseValuation({0, 1}, {1}); }

Rational PiecewiseValuation::mass(const Rational& a, const Rational& b) const {
  Rational total = 0;
  for (std::size_t i = 0; i < densities_.size(); ++i) {
    const Rational lo = std::max(a, breakpoints_[i]);
    const Rational hi = std::min(b, breakpoints_[i + 1]);
    if (hi > lo) total += densities_[i] * (hi - lo);
  }
  return total;
}

Rational PiecewiseValuation::median() const {
  const Rational half(1, 2);
  Rational cum = 0;
  for (std::size_t i = 0; i < densities_.size(); ++i) {
    if (cum == half) return breakpoints_[i];
    const Rational piece = densities_[i] * (breakpoints_[i + 1] - breakpoints_[i]);
    if (cum + piece >= half) return breakpoints_[i] + (half - cum) / densities_[i];
    cum += piece;
  }
  return breakpoints_.back();
}

CutChooseResult cut_and_choose(const PiecewiseValuation& a, const PiecewiseValuation& b) {
  CutChooseResult r;
  r.cut = a.median();
  const Rational left_b = b.mass(0, r.cut);
  const Rational right_b = b.mass(r.cut, 1);
  r.chooser_piece = left_b >= right_b ? Side::Left : Side::Right;
  r.share_b = r.chooser_piece == Side::Left ? left_b : right_b;
  r.share_a = r.chooser_piece == Side::Left ? a.mass(r.cut, 1) : a.mass(0, r.cut);
  return r;
}

PointAllocation PointAllocation::normalized(std::vector<std::string> goods, std::vector<Rational> a,
                                            std::vector<Rational> b) {
  if (goods.empty()) throw std::invalid_argument("no goods");
  if (a.size() != goods.size() || b.size() != goods.size()) {
    throw std::invalid_argument("bid lists must have one entry per good");
  }
  auto scale = [](std::vector<Rational>& bids, const char* party) {
    Rational total = 0;
    for (const auto& x : bids) {
      if (x < 0) throw std::invalid_argument(std::string("party ") + party + " has a negative bid");
      total += x;
    }
    if (total == 0) throw std::invalid_argument(std::string("party ") + party + " bids nothing");
    for (auto& x : bids) x = x * 100 / total;
  };
  scale(a, "A");
  scale(b, "B");
  return PointAllocation{std::move(goods), std::move(a), std::move(b)};
}

std::vector<std::string> validate_point_allocation(const PointAllocation& p) {
  std::vector<std::string> problems;
  if (p.goods.empty()) problems.push_back("no goods");
  if (p.a.size() != p.goods.size() || p.b.size() != p.goods.size()) {
    problems.push_back("bid lists must have one entry per good");
    return problems;
  }
  for (const auto* bids : {&p.a, &p.b}) {
    const char* party = bids == &p.a ? "A" : "B";
    Rational total = 0;
    for (const auto& x : *bids) {
      if (x < 0) problems.push_back(std::string("party ") + party + " has a negative bid");
      total += x;
    }
    if (total != 100) problems.push_back(std::string("party ") + party + " bids sum to " + to_string(total) + ", not 100");
  }
  return problems;
}

AdjustedWinnerResult adjusted_winner(const PointAllocation& points) {
  if (auto v = validate_point_allocation(points); !v.empty()) throw std::invalid_argument(v.front());
  const std::size_t m = points.goods.size();
  AdjustedWinnerResult r;
  r.split.share_a.assign(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (points.a[i] >= points.b[i]) {
      r.split.share_a[i] = 1;
      r.value_a += points.a[i];
    } else {
      r.value_b += points.b[i];
    }
  }
  if (r.value_a == r.value_b) return r;

  const bool a_rich = r.value_a > r.value_b;
  const auto& rich = a_rich ? points.a : points.b;
  const auto& poor = a_rich ? points.b : points.a;
  Rational& rich_value = a_rich ? r.value_a : r.value_b;
  Rational& poor_value = a_rich ? r.value_b : r.value_a;

  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < m; ++i) {
    const bool held = a_rich ? r.split.share_a[i] == 1 : r.split.share_a[i] == 0;
    if (held && !(points.a[i] == 0 && points.b[i] == 0)) order.push_back(i);
  }
  // rich_i / poor_i ascending; cross-multiplied so poor_i = 0 sorts last.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return rich[x] * poor[y] < rich[y] * poor[x];
  });

  for (std::size_t i : order) {
    r.transfers.push_back(i);
    const Rational after_rich = rich_value - rich[i];
    const Rational after_poor = poor_value + poor[i];
    if (after_rich > after_poor) {
      rich_value = after_rich;
      poor_value = after_poor;
      r.split.share_a[i] = a_rich ? 0 : 1;
      continue;
    }
    // Fraction t moved to the poorer party: rich - t*rich_i = poor + t*poor_i.
    const Rational t = (rich_value - poor_value) / (rich[i] + poor[i]);
    rich_value -= t * rich[i];
    poor_value += t * poor[i];
    r.split.share_a[i] = a_rich ? Rational(1 - t) : t;
    if (t != 0 && t != 1) r.divided_good = i;
    break;
  }
  return r;
}

std::pair<Rational, Rational> split_values(const PointAllocation& points, const GoodsSplit& split) {
  Rational va = 0, vb = 0;
  for (std::size_t i = 0; i < points.goods.size(); ++i) {
    va += points.a[i] * split.share_a[i];
    vb += points.b[i] * (1 - split.share_a[i]);
  }
  return {va, vb};
}

PiecewiseValuation valuation_from_json(const nlohmann::json& doc) {
  std::vector<Rational> breakpoints, densities;
  for (const auto& x : doc.at("breakpoints")) breakpoints.push_back(rational_from_json(x));
  for (const auto& x : doc.at("densities")) densities.push_back(rational_from_json(x));
  return PiecewiseValuation(std::move(breakpoints), std::move(densities));
}

PointAllocation point_allocation_from_json(const nlohmann::json& doc) {
  std::vector<Rational> a, b;
  for (const auto& x : doc.at("A")) a.push_back(rational_from_json(x));
  for (const auto& x : doc.at("B")) b.push_back(rational_from_json(x));
  std::vector<std::string> goods;
  if (doc.contains("goods")) {
    goods = doc.at("goods").get<std::vector<std::string>>();
  } else {
    for (std::size_t i = 0; i < a.size(); ++i) goods.push_back("good" + std::to_string(i + 1));
  }
  return PointAllocation::normalized(std::move(goods), std::move(a), std::move(b));
}

nlohmann::ordered_json to_json(const CutChooseResult& r) {
  nlohmann::ordered_json j;
  j["cut"] = to_string(r.cut);
  j["chooser_piece"] = r.chooser_piece == Side::Left ? "left" : "right";
  j["share_A"] = to_string(r.share_a);
  j["share_B"] = to_string(r.share_b);
  return j;
}

nlohmann::ordered_json to_json(const PointAllocation& points, const AdjustedWinnerResult& r) {
  nlohmann::ordered_json j;
  auto goods = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < points.goods.size(); ++i) {
    nlohmann::ordered_json g;
    g["good"] = points.goods[i];
    g["points_A"] = to_string(points.a[i]);
    g["points_B"] = to_string(points.b[i]);
    g["share_A"] = to_string(r.split.share_a[i]);
    goods.push_back(std::move(g));
  }
  j["goods"] = std::move(goods);
  j["value_A"] = to_string(r.value_a);
  j["value_B"] = to_string(r.value_b);
  if (r.divided_good) {
    j["divided_good"] = points.goods[*r.divided_good];
  } else {
    j["divided_good"] = nullptr;
  }
  return j;
}

}  // namespace fairdist
