#pragma once

// Deterministic SVG plots: the graph of a slope function and the
// half-space intervals as half-discs over the boundary line.

#include "netmap/arith.hpp"

#include <string>
#include <utility>
#include <vector>

namespace netmap {

/// Scatter plot of (s, μ(s)) for finite s and μ(s) inside [-window, window]².
std::string slope_graph_svg(const std::vector<std::pair<ExtRational, Slope>>& points, double window = 4.0);

/// One half-disc per interval over [-window, window].  Intervals through ∞
/// are drawn as the dashed boundary of their complement.
std::string halfspace_svg(const std::vector<BoundaryInterval>& intervals, double window = 3.0);

}  // namespace netmap
