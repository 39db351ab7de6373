#include "fairdist/render.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace fairdist {

namespace {

constexpr const char* kPalette[] = {"#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
                                    "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f"};
constexpr int kPaletteSize = static_cast<int>(sizeof(kPalette) / sizeof(kPalette[0]));
constexpr int kCell = 40;

char label_char(int d) {
  if (d < 10) return static_cast<char>('0' + d);
  if (d < 36) return static_cast<char>('a' + d - 10);
  return '?';
}

std::vector<int> bfs_order(const ParcelMap& map) {
  std::vector<int> order;
  ParcelSet seen;
  for (int start = 0; start < map.parcel_count(); ++start) {
    if (seen.contains(start)) continue;
    std::deque<int> queue{start};
    seen.insert(start);
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      order.push_back(v);
      (map.neighbors(v) - seen).for_each([&](int u) {
        seen.insert(u);
        queue.push_back(u);
      });
    }
  }
  return order;
}

/// Parcel rectangles; without geometry, BFS order laid out row by row.
std::vector<Rect> layout(const ParcelMap& map) {
  std::vector<Rect> rects(static_cast<std::size_t>(map.parcel_count()));
  if (map.has_geometry()) {
    for (int i = 0; i < map.parcel_count(); ++i) rects[static_cast<std::size_t>(i)] = *map.parcels()[static_cast<std::size_t>(i)].rect;
    return rects;
  }
  const int width = std::max(1, static_cast<int>(std::ceil(std::sqrt(map.parcel_count()))));
  const auto order = bfs_order(map);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    rects[static_cast<std::size_t>(order[pos])] =
        Rect{static_cast<double>(static_cast<int>(pos) % width), static_cast<double>(static_cast<int>(pos) / width), 1, 1};
  }
  return rects;
}

std::string num(double x) {
  std::ostringstream out;
  out << x;
  return out.str();
}

}  // namespace

RenderFormat render_format_from_string(const std::string& text) {
  if (text == "ascii") return RenderFormat::Ascii;
  if (text == "svg") return RenderFormat::Svg;
  throw std::invalid_argument("unknown render format '" + text + "'");
}

std::string render_ascii(const ParcelMap& map, const Division& division) {
  const auto& labels = division.assignment();
  if (!map.has_geometry()) {
    std::string line;
    for (int i : bfs_order(map)) line += label_char(labels[static_cast<std::size_t>(i)]);
    return line + "\n";
  }
  int cols = 0, rows = 0;
  for (const auto& p : map.parcels()) {
    cols = std::max(cols, static_cast<int>(std::ceil(p.rect->x + p.rect->w)));
    rows = std::max(rows, static_cast<int>(std::ceil(p.rect->y + p.rect->h)));
  }
  std::vector<std::string> grid(static_cast<std::size_t>(rows), std::string(static_cast<std::size_t>(cols), ' '));
  for (int i = 0; i < map.parcel_count(); ++i) {
    const Rect& r = *map.parcels()[static_cast<std::size_t>(i)].rect;
    for (int y = static_cast<int>(std::floor(r.y)); y < static_cast<int>(std::ceil(r.y + r.h)); ++y) {
      for (int x = static_cast<int>(std::floor(r.x)); x < static_cast<int>(std::ceil(r.x + r.w)); ++x) {
        if (x >= 0 && y >= 0) grid[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] = label_char(labels[static_cast<std::size_t>(i)]);
      }
    }
  }
  std::string out;
  for (auto& row : grid) {
    while (!row.empty() && row.back() == ' ') row.pop_back();
    out += row + "\n";
  }
  return out;
}

std::string render_svg(const ParcelMap& map, const Division& division) {
  const auto rects = layout(map);
  double width = 0, height = 0;
  for (const auto& r : rects) {
    width = std::max(width, r.x + r.w);
    height = std::max(height, r.y + r.h);
  }
  const auto districts = division.districts();
  const auto shares = VotingModel::outcome().shares(map);
  const auto win_a = RatingSpec::win(Party::A);

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width * kCell) << "\" height=\""
      << num(height * kCell) << "\" viewBox=\"0 0 " << num(width * kCell) << " " << num(height * kCell) << "\">\n";
  svg << "  <defs>\n"
      << "    <pattern id=\"hatch\" width=\"8\" height=\"8\" patternUnits=\"userSpaceOnUse\" "
         "patternTransform=\"rotate(45)\">\n"
      << "      <line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"8\" stroke=\"black\" stroke-width=\"2\"/>\n"
      << "    </pattern>\n"
      << "  </defs>\n";
  for (std::size_t d = 0; d < districts.size(); ++d) {
    const bool won = win_a.rate_district(DistrictContext{map, districts[d], shares}) > 0;
    svg << "  <g class=\"district\" data-district=\"" << d << "\" data-winner=\"" << (won ? "A" : "-") << "\">\n";
    districts[d].for_each([&](int i) {
      const Rect& r = rects[static_cast<std::size_t>(i)];
      svg << "    <rect data-parcel=\"" << map.parcels()[static_cast<std::size_t>(i)].id << "\" x=\""
          << num(r.x * kCell) << "\" y=\"" << num(r.y * kCell) << "\" width=\"" << num(r.w * kCell)
          << "\" height=\"" << num(r.h * kCell) << "\" fill=\"" << kPalette[static_cast<int>(d) % kPaletteSize]
          << "\" stroke=\"white\" stroke-width=\"1\"/>\n";
      if (won) {
        svg << "    <rect x=\"" << num(r.x * kCell) << "\" y=\"" << num(r.y * kCell) << "\" width=\""
            << num(r.w * kCell) << "\" height=\"" << num(r.h * kCell) << "\" fill=\"url(#hatch)\"/>\n";
      }
    });
    svg << "  </g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string render_division(const ParcelMap& map, const Division& division, RenderFormat format) {
  if (auto v = validate_division(map, division); !v.empty()) {
    throw std::invalid_argument("division does not fit the map: " + v.front());
  }
  return format == RenderFormat::Ascii ? render_ascii(map, division) : render_svg(map, division);
}

}  // namespace fairdist
