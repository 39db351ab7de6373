#include "partition_search.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace fairdist::detail {

std::vector<int> singleton_classes(const ParcelMap& map, ParcelSet domain) {
  std::vector<int> class_of(static_cast<std::size_t>(map.parcel_count()), -1);
  int next = 0;
  domain.for_each([&](int i) { class_of[static_cast<std::size_t>(i)] = next++; });
  return class_of;
}

std::vector<int> twin_classes(const ParcelMap& map, ParcelSet domain, const std::vector<std::string>& signatures) {
  if (map.district_predicate()) return singleton_classes(map, domain);
  auto sig = [&](int i) -> const std::string& {
    static const std::string none;
    return signatures.empty() ? none : signatures[static_cast<std::size_t>(i)];
  };

  // Closed twins are adjacent and open twins are not, so a parcel with a
  // closed twin never has an open one and the two groupings do not overlap.
  std::map<std::tuple<std::uint64_t, std::string>, std::vector<int>> closed;
  std::map<std::tuple<std::uint64_t, std::string>, std::vector<int>> open;
  domain.for_each([&](int i) {
    ParcelSet nbr = map.neighbors(i) & domain;
    closed[{(nbr | ParcelSet::single(i)).bits(), sig(i)}].push_back(i);
    open[{nbr.bits(), sig(i)}].push_back(i);
  });

  std::vector<int> class_of(static_cast<std::size_t>(map.parcel_count()), -1);
  int next = 0;
  for (const auto& [key, members] : closed) {
    if (members.size() < 2) continue;
    for (int i : members) class_of[static_cast<std::size_t>(i)] = next;
    ++next;
  }
  for (const auto& [key, members] : open) {
    std::vector<int> free;
    for (int i : members) {
      if (class_of[static_cast<std::size_t>(i)] < 0) free.push_back(i);
    }
    if (free.empty()) continue;
    for (int i : free) class_of[static_cast<std::size_t>(i)] = next;
    ++next;
  }
  return class_of;
}

PartitionEngine::PartitionEngine(const ParcelMap& map, ParcelSet domain, std::vector<int> class_of)
    : map_(&map), domain_(domain), size_(map.district_size()) {
  std::map<int, std::vector<int>> groups;
  domain.for_each([&](int i) { groups[class_of[static_cast<std::size_t>(i)]].push_back(i); });
  for (auto& [id, members] : groups) {
    if (members.size() == 1) {
      singleton_mask_.insert(members.front());
      continue;
    }
    std::sort(members.begin(), members.end());
    class_masks_.push_back(ParcelSet::of(members));
    classes_.push_back(std::move(members));
  }
}

ParcelSet PartitionEngine::canon(ParcelSet remaining) const {
  ParcelSet out = remaining & singleton_mask_;
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    const int count = (remaining & class_masks_[c]).size();
    for (int j = 0; j < count; ++j) out.insert(classes_[c][static_cast<std::size_t>(j)]);
  }
  return out;
}

bool PartitionEngine::feasible(ParcelSet remaining) {
  if (remaining.empty()) return true;
  return count(remaining) > 0;
}

const BigCount& PartitionEngine::count(ParcelSet remaining) {
  static const BigCount one = 1;
  if (remaining.empty()) return one;
  return state(canon(remaining)).count;
}

std::vector<ParcelSet> PartitionEngine::candidates(ParcelSet remaining) {
  if (remaining.empty()) return {};
  ParcelSet c = canon(remaining);
  if (c == remaining) return state(c).candidates;
  return compute_candidates(remaining);
}

const PartitionEngine::State& PartitionEngine::state(ParcelSet canonical) {
  if (auto it = states_.find(canonical); it != states_.end()) return it->second;
  State s;
  s.candidates = compute_candidates(canonical);
  for (ParcelSet d : s.candidates) s.count += count(canonical - d);
  return states_.emplace(canonical, std::move(s)).first->second;
}

bool PartitionEngine::rest_ok(ParcelSet rest) {
  if (rest.empty()) return true;
  if (rest.size() % size_ != 0) return false;
  for (ParcelSet comp : map_->components(rest)) {
    if (comp.size() % size_ != 0) return false;
  }
  return count(rest) > 0;
}

std::vector<ParcelSet> PartitionEngine::compute_candidates(ParcelSet remaining) {
  std::vector<ParcelSet> raw;
  if (size_ <= 0 || remaining.size() < size_) return raw;
  const int root = remaining.min();
  grow(remaining, ParcelSet::single(root), map_->neighbors(root) & remaining, ParcelSet{}, raw);
  std::vector<ParcelSet> out;
  out.reserve(raw.size());
  const auto& predicate = map_->district_predicate();
  for (ParcelSet d : raw) {
    if (predicate && !predicate(*map_, d)) continue;
    if (rest_ok(remaining - d)) out.push_back(d);
  }
  std::sort(out.begin(), out.end(), ParcelSet::lex_less);
  return out;
}

void PartitionEngine::grow(ParcelSet remaining, ParcelSet current, ParcelSet extension, ParcelSet banned,
                           std::vector<ParcelSet>& out) const {
  if (current.size() == size_) {
    out.push_back(current);
    return;
  }
  while (!extension.empty()) {
    const int v = extension.min();
    extension.erase(v);
    ParcelSet added = (map_->neighbors(v) & remaining) - current - banned - extension;
    added.erase(v);
    ParcelSet with_v = current;
    with_v.insert(v);
    grow(remaining, with_v, extension | added, banned, out);
    banned.insert(v);
  }
}

bool score_less(const Score& a, const Score& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return false;
}

Score score_add(const Score& a, const Score& b) {
  Score out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Optimizer::Optimizer(PartitionEngine& engine, std::vector<Scorer> scorers)
    : engine_(&engine), scorers_(std::move(scorers)) {}

const Score& Optimizer::score(ParcelSet district) {
  if (auto it = scores_.find(district); it != scores_.end()) return it->second;
  Score s;
  s.reserve(scorers_.size());
  for (const auto& f : scorers_) s.push_back(f(district));
  return scores_.emplace(district, std::move(s)).first->second;
}

const Score& Optimizer::value(ParcelSet remaining) {
  ParcelSet key = engine_->canon(remaining);
  if (auto it = values_.find(key); it != values_.end()) return it->second;
  Score best;
  bool have = false;
  if (key.empty()) {
    best.assign(scorers_.size(), Rational(0));
    have = true;
  }
  for (ParcelSet d : engine_->candidates(key)) {
    Score total = score_add(score(d), value(key - d));
    if (!have || score_less(best, total)) {
      best = std::move(total);
      have = true;
    }
  }
  return values_.emplace(key, std::move(best)).first->second;
}

}  // namespace fairdist::detail
