#pragma once

// Iteration of the slope function: orbits, cycles and attractor scans.

#include "netmap/arith.hpp"
#include "netmap/presentation.hpp"

#include <string>
#include <vector>

namespace netmap {

enum class OrbitEnd { Absorbed, Cycle, CapReached };
std::string to_string(OrbitEnd e);

struct OrbitReport {
    ExtRational seed;
    std::vector<Slope> orbit;  ///< starts with the seed; ends at ⊙, before the first repeat, or at the cap
    OrbitEnd end = OrbitEnd::CapReached;
    int period = 0;
    int phase = 0;  ///< index of the first cycle element in `orbit`
    std::string json() const;
};

/// Iterates μ from s for at most `cap` applications.
OrbitReport orbit(const Presentation& P, const ExtRational& s, int cap);

struct CycleReport {
    std::vector<ExtRational> slopes;  ///< rotated to start at the least slope
    std::vector<std::int64_t> degrees;   ///< d at each slope
    std::int64_t degree_product = 1;
};

struct AttractorReport {
    std::vector<CycleReport> cycles;  ///< sorted by their slope lists
    std::size_t seeds_scanned = 0;
    std::size_t absorbed = 0;
    std::vector<ExtRational> unresolved;  ///< wandering candidates, sorted
    std::string json() const;
};

/// Orbits of all reduced p/q with |p|, |q| <= height.  cap <= 0 means
/// 10 * height; threads == 0 means thread_count().
AttractorReport attractor_scan(const Presentation& P, int height, int cap = 0, unsigned threads = 0);

}  // namespace netmap
