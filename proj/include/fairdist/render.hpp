#pragma once

#include <string>

#include "fairdist/model.hpp"

namespace fairdist {

enum class RenderFormat { Ascii, Svg };

RenderFormat render_format_from_string(const std::string& text);

/// Grid of district labels (0-9, then a-z) placed by parcel rectangles, one
/// row per line. Maps without geometry print one line of labels in
/// breadth-first order from the first parcel.
std::string render_ascii(const ParcelMap& map, const Division& division);

/// One rect per parcel filled from a fixed palette by district, with a hatch
/// overlay on districts A wins under the voting outcome.
std::string render_svg(const ParcelMap& map, const Division& division);

/// Validates the division against the map first; throws std::invalid_argument
/// on a mismatch.
std::string render_division(const ParcelMap& map, const Division& division, RenderFormat format);

}  // namespace fairdist
