#pragma once

// The curve of the correspondence on moduli space, as the quotient of the
// upper half plane by the group of liftable matrices.

#include "netmap/lattice.hpp"
#include "netmap/presentation.hpp"

#include <string>
#include <vector>

namespace netmap {

/// Right action of PSL(2, Z) on the cosets of the liftable group.  Coset 0
/// is the group itself.
struct CosetAction {
    std::int64_t modulus = 2;  ///< 2m
    std::int64_t index = 0;
    std::vector<int> s;  ///< [[0, -1], [1, 0]], order 2
    std::vector<int> u;  ///< [[0, -1], [1, 1]], order 3
    std::vector<int> t;  ///< [[1, 1], [0, 1]]
};

/// M stabilizes diag(m, n)Z^2, is the identity mod 2 and fixes every
/// ±class of H.  Entries are read mod 2m.
bool liftable(const HurwitzStructureSet& H, const IntMat2& M);

CosetAction liftable_cosets(const HurwitzStructureSet& H);
CosetAction liftable_cosets(const Presentation& P);

struct CurveInvariants {
    std::int64_t index = 0;
    std::int64_t e2 = 0;
    std::int64_t e3 = 0;
    std::int64_t cusps = 0;
    std::int64_t genus = 0;
    std::int64_t degY = 0;  ///< degree onto the moduli space, index / 6
    std::string json() const;
};

/// Throws EngineError if the counts are inconsistent.
CurveInvariants curve_invariants(const CosetAction& C);
CurveInvariants curve_invariants(const Presentation& P);

}  // namespace netmap
