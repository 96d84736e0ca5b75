#pragma once

// Pulling back simple closed curves: the invariants c, d, μ and δ of a slope,
// computed by lifting straight lines through the presentation.

#include "netmap/arith.hpp"
#include "netmap/presentation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace netmap {

/// The affine map x -> epsilon·x + tau.
struct DeckElement {
    int epsilon = 1;
    Vec2 tau;
    friend bool operator==(const DeckElement&, const DeckElement&) = default;
};

enum class ComponentKind { Inessential, Peripheral, Essential };
std::string to_string(ComponentKind k);

struct ComponentReport {
    ComponentKind kind = ComponentKind::Inessential;
    std::int64_t degree = 1;
    std::optional<ExtRational> slope;  ///< essential only
    DeckElement deck;
    Rational level;  ///< value of the line functional on this component
    int crossings = 0;
};

struct PullbackResult {
    std::int64_t c = 0;
    std::int64_t d = 1;
    Slope image;
    Rational delta;
    std::string json() const;
    friend bool operator==(const PullbackResult&, const PullbackResult&) = default;
};

struct PullbackOptions {
    /// Position of the image line between consecutive lattice lines, in (0, 1).
    Rational offset{1, 2};
};

std::vector<ComponentReport> preimage_components(const Presentation& P, const ExtRational& s,
                                                 const PullbackOptions& opt = {});
PullbackResult slope_invariants(const Presentation& P, const ExtRational& s, const PullbackOptions& opt = {});

/// Strict slope reader: rejects unreduced input such as "2/4".
ExtRational parse_slope(const std::string& text);

/// Slope p/q -> boundary point -q/p.  The map is its own inverse.
ExtRational boundary_point(const ExtRational& slope);
ExtRational slope_from_boundary(const ExtRational& t);
/// ⊙ has no boundary point.
std::optional<ExtRational> boundary_point(const Slope& s);

}  // namespace netmap
