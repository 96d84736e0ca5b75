#pragma once

// Excluded intervals for obstructions: half-space intervals, extended
// neighborhoods of fixed and absorbed slopes, and the rationality decider.

#include "netmap/arith.hpp"
#include "netmap/presentation.hpp"
#include "netmap/pullback.hpp"

#include <optional>
#include <string>
#include <vector>

namespace netmap {

/// Largest rational 2^-bits-grid value not above sqrt(x), x >= 0.
Rational sqrt_lower_bound(const Rational& x, int bits = 20);

/// Open arc {x : |det(x, t1)| < rho |det(x, t1p)|} of boundary points,
/// where points are taken as primitive integer vectors (num, den).  This is
/// the set |x - t1| / |x - t1p| < rho (den(t1p) / den(t1)) in any chart.
/// Contains t1, never t1p.  Throws for t1 == t1p or rho <= 0.
BoundaryInterval excluded_interval_rho(const ExtRational& t1, const ExtRational& t1p, const Rational& rho);

/// Half-space interval for a boundary point t1 with image t1p and
/// multiplier delta, using a rational lower bound for sqrt(delta).
BoundaryInterval excluded_interval(const ExtRational& t1, const ExtRational& t1p, const Rational& delta);

enum class CertificateKind { HalfSpace, Extended };

struct ExclusionCertificate {
    ExtRational seed;  ///< seed slope
    Slope image;
    Rational delta;
    BoundaryInterval interval;
    CertificateKind kind = CertificateKind::HalfSpace;
};

struct ExtendedNeighborhood {
    BoundaryInterval left;   ///< ends at t
    BoundaryInterval right;  ///< starts at t
    std::vector<ExclusionCertificate> certificates;
};

/// Deleted neighborhood of the boundary point t of a slope s with μ(s) = s
/// and δ(s) < 1, or μ(s) = ⊙.  Returns nullopt if no seed within `depth`
/// translates produces overlapping intervals.  Throws DomainError when
/// μ(s) = s with δ(s) >= 1.
std::optional<ExtendedNeighborhood> extended_excluded_neighborhood(const Presentation& P, const ExtRational& t,
                                                                   int depth);

enum class Verdict { Rational, Obstructed, EuclideanUnsupported, Undecided };
std::string to_string(Verdict v);

struct Decision {
    Verdict verdict = Verdict::Undecided;
    std::optional<ExtRational> obstruction;  ///< slope
    Rational obstruction_delta;
    std::vector<ExclusionCertificate> certificates;
    std::vector<ExtRational> cleared_points;  ///< boundary points checked one by one
    std::vector<ClosedArc> uncovered;
    int depth_reached = 0;
    std::string json() const;
};

struct DecideOptions {
    int farey_depth = 10;
    int extension_depth = 40;
    bool use_extended = true;
};

Decision decide_rationality(const Presentation& P, const DecideOptions& opt = {});

/// Slopes p/q with |p|, |q| <= bound, μ(p/q) = p/q and δ >= 1.
std::vector<ExtRational> obstruction_slopes(const Presentation& P, long bound);
/// Boundary points of obstruction slopes found inside J.
std::vector<ExtRational> oracle_violations(const std::vector<ExtRational>& obstructions, const BoundaryInterval& J);

/// Slopes of the circle in Stern–Brocot order: 1/0 and 0/1 first, then the
/// mediants level by level.
std::vector<ExtRational> stern_brocot_slopes(int depth);

}  // namespace netmap
