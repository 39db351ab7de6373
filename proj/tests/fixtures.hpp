#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fairdist/map_io.hpp"

namespace fixtures {

using fairdist::ParcelMap;
using fairdist::Rational;

/// Shares in multiples of 1/20, drawn from a fixed-seed generator.
inline std::vector<Rational> random_shares(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Rational> out;
  for (int i = 0; i < count; ++i) out.emplace_back(static_cast<long>(rng() % 21), 20);
  return out;
}

/// Ring of `count` parcels plus a chord between 0 and count/2.
inline ParcelMap ring_with_chord(int count, int n_districts, const std::vector<Rational>& shares) {
  std::vector<fairdist::Parcel> parcels;
  std::vector<std::pair<std::string, std::string>> adjacency;
  for (int i = 0; i < count; ++i) {
    parcels.push_back({"q" + std::to_string(i), 1, shares[static_cast<std::size_t>(i)], std::nullopt});
    adjacency.emplace_back("q" + std::to_string(i), "q" + std::to_string((i + 1) % count));
  }
  adjacency.emplace_back("q0", "q" + std::to_string(count / 2));
  return ParcelMap(std::move(parcels), std::move(adjacency), n_districts);
}

/// Grid with one extra diagonal per cell (triangulated grid).
inline ParcelMap triangulated_grid(int rows, int cols, int n_districts, const std::vector<Rational>& shares) {
  ParcelMap base = fairdist::make_grid_map(rows, cols, n_districts, shares);
  auto parcels = base.parcels();
  auto adjacency = base.adjacency();
  for (int r = 0; r + 1 < rows; ++r) {
    for (int c = 0; c + 1 < cols; ++c) {
      adjacency.emplace_back("r" + std::to_string(r) + "c" + std::to_string(c),
                             "r" + std::to_string(r + 1) + "c" + std::to_string(c + 1));
    }
  }
  return ParcelMap(std::move(parcels), std::move(adjacency), n_districts);
}

struct Fixture {
  std::string name;
  ParcelMap map;
};

/// Every fixture has at most 12 parcels.
inline std::vector<Fixture> small_maps() {
  using fairdist::make_complete_map;
  using fairdist::make_grid_map;
  std::vector<Fixture> f;
  auto grid = [&](int r, int c, int n, std::uint64_t seed) {
    f.push_back({std::to_string(r) + "x" + std::to_string(c) + "/n=" + std::to_string(n),
                 make_grid_map(r, c, n, random_shares(r * c, seed))});
  };
  grid(2, 2, 2, 11);
  grid(1, 6, 3, 12);
  grid(1, 6, 2, 13);
  grid(2, 3, 2, 14);
  grid(2, 3, 3, 15);
  grid(3, 3, 3, 16);
  grid(2, 4, 2, 17);
  grid(2, 4, 4, 18);
  grid(3, 4, 2, 19);
  grid(3, 4, 3, 20);
  grid(3, 4, 4, 21);
  grid(2, 6, 2, 22);
  grid(2, 6, 3, 23);
  grid(2, 6, 4, 24);
  f.push_back({"K6/n=3", make_complete_map(6, 3, random_shares(6, 31))});
  f.push_back({"K8/n=4", make_complete_map(8, 4, random_shares(8, 32))});
  f.push_back({"K8/n=2", make_complete_map(8, 2, random_shares(8, 33))});
  f.push_back({"K9/n=3", make_complete_map(9, 3, random_shares(9, 34))});
  f.push_back({"ring8/n=4", ring_with_chord(8, 4, random_shares(8, 41))});
  f.push_back({"ring12/n=3", ring_with_chord(12, 3, random_shares(12, 42))});
  f.push_back({"tri3x4/n=3", triangulated_grid(3, 4, 3, random_shares(12, 43))});
  f.push_back({"tri3x4/n=4", triangulated_grid(3, 4, 4, random_shares(12, 44))});
  return f;
}

/// Hash of a district's parcel set, reduced to a rational in [0, 5].
inline fairdist::RatingSpec random_table(std::uint64_t seed) {
  return fairdist::RatingSpec::table(
      [seed](const fairdist::DistrictContext& ctx) {
        std::uint64_t x = ctx.district.bits() ^ (seed * 0x9e3779b97f4a7c15ULL);
        x = (x ^ (x >> 31)) * 0xbf58476d1ce4e5b9ULL;
        x ^= x >> 29;
        return Rational(static_cast<long>(x % 51), 10);
      },
      "hash-table");
}

/// Every valid k-split of a small map, k ascending.
inline std::vector<fairdist::Split> all_splits(const ParcelMap& map) {
  std::vector<fairdist::Split> out;
  const int s = map.district_size();
  for (int k = 1; k < map.n_districts(); ++k) {
    for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << map.parcel_count()); ++bits) {
      fairdist::ParcelSet piece1(bits);
      if (piece1.size() != k * s) continue;
      fairdist::Split split{k, piece1};
      if (fairdist::validate_split(map, split).empty()) out.push_back(split);
    }
  }
  return out;
}

/// Complete-adjacency map with `minority` one-voter parcels for party B
/// (share 0) and the rest for party A, ordered so twins are not contiguous.
inline ParcelMap free_case_map(int parcels, int n_districts, int minority) {
  std::vector<Rational> shares(static_cast<std::size_t>(parcels), Rational(1));
  // Spread the minority voters over the index range.
  for (int j = 0; j < minority; ++j) shares[static_cast<std::size_t>((j * 7) % parcels)] = Rational(0);
  return fairdist::make_complete_map(parcels, n_districts, shares);
}

}  // namespace fixtures
