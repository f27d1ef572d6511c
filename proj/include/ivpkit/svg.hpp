#pragma once

#include <optional>
#include <string>

#include "ivpkit/plgraph.hpp"
#include "ivpkit/ssets.hpp"

namespace ivpkit {

struct RenderOptions {
  int size = 400;                  // side of the unit square in pixels
  std::optional<Interval> strip;   // shaded vertical strip [a,b] x [0,1]
  std::optional<Frame> frame;      // Z, Z(eps) and the four side regions
};

/// Static SVG of the graph. The same graph and options always give the same bytes.
std::string render_svg(const PLGraph& g, const RenderOptions& opts = {});

}  // namespace ivpkit
