#pragma once

// Memoised search over "remaining parcel" states shared by enumeration,
// counting and optimisation.
//
// A state is the set of parcels still to be assigned. The next district is
// always the one holding the lowest remaining parcel, and candidate districts
// are visited in the lexicographic order of their sorted parcel lists, so a
// depth-first walk emits divisions in lexicographic order of their canonical
// district sequences.
//
// Parcels that are twins (same open or closed neighbourhood inside the
// domain, same rating signature) can be swapped by a graph automorphism that
// preserves every district score. Memo keys replace each twin class by its
// lowest members, which collapses e.g. a complete graph of one-voter parcels
// to a handful of states.

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <unordered_map>
#include <vector>

#include "fairdist/model.hpp"

namespace fairdist::detail {

using BigCount = boost::multiprecision::cpp_int;

/// Twin classes of `domain`. Parcels with equal signature strings may share a
/// class; `signatures` empty means every parcel carries the same signature.
/// Returns one class id per parcel of the map (-1 outside the domain).
std::vector<int> twin_classes(const ParcelMap& map, ParcelSet domain, const std::vector<std::string>& signatures);

/// Every parcel in its own class.
std::vector<int> singleton_classes(const ParcelMap& map, ParcelSet domain);

class PartitionEngine {
 public:
  PartitionEngine(const ParcelMap& map, ParcelSet domain, std::vector<int> class_of);

  const ParcelMap& map() const { return *map_; }
  ParcelSet domain() const { return domain_; }
  int district_size() const { return size_; }

  /// Representative of the automorphism orbit of `remaining`.
  ParcelSet canon(ParcelSet remaining) const;

  bool feasible(ParcelSet remaining);
  const BigCount& count(ParcelSet remaining);
  /// Districts holding min(remaining) whose removal leaves a feasible rest,
  /// in lexicographic order.
  std::vector<ParcelSet> candidates(ParcelSet remaining);

 private:
  struct State {
    BigCount count;
    std::vector<ParcelSet> candidates;
  };

  const State& state(ParcelSet canonical);
  std::vector<ParcelSet> compute_candidates(ParcelSet remaining);
  bool rest_ok(ParcelSet rest);
  void grow(ParcelSet remaining, ParcelSet current, ParcelSet extension, ParcelSet banned,
            std::vector<ParcelSet>& out) const;

  const ParcelMap* map_;
  ParcelSet domain_;
  int size_;
  ParcelSet singleton_mask_;
  std::vector<std::vector<int>> classes_;  // nontrivial twin classes, ascending members
  std::vector<ParcelSet> class_masks_;
  std::unordered_map<ParcelSet, State, ParcelSetHash> states_;
};

using Score = std::vector<Rational>;

/// Lexicographic comparison of equal-length score vectors.
bool score_less(const Score& a, const Score& b);
Score score_add(const Score& a, const Score& b);

/// Maximises a lexicographic vector of additive district scores over all
/// divisions of a state. Scores must be invariant under the engine's twin
/// swaps.
class Optimizer {
 public:
  using Scorer = std::function<Rational(ParcelSet)>;

  Optimizer(PartitionEngine& engine, std::vector<Scorer> scorers);

  /// Best total over all divisions of `remaining` (which must be feasible).
  const Score& value(ParcelSet remaining);
  const Score& score(ParcelSet district);
  PartitionEngine& engine() { return *engine_; }

 private:
  PartitionEngine* engine_;
  std::vector<Scorer> scorers_;
  std::unordered_map<ParcelSet, Score, ParcelSetHash> values_;
  std::unordered_map<ParcelSet, Score, ParcelSetHash> scores_;
};

}  // namespace fairdist::detail
