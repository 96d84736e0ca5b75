#pragma once

// Presentations of NET maps by a lattice, a translation and four green arcs,
// together with validation, Hurwitz structure sets and portraits.

#include "netmap/arith.hpp"
#include "netmap/lattice.hpp"

#include <array>
#include <istream>
#include <string>
#include <vector>

namespace netmap {

/// Classes of Λ1 / 2Λ1, written 0, λ1, λ2, λ1+λ2.  The value is the bit
/// pattern of the λ-coordinates mod 2.
enum class LatticeClass : int { Zero = 0, L1 = 1, L2 = 2, L1L2 = 3 };

std::string to_string(LatticeClass c);
LatticeClass parse_lattice_class(const std::string& token);

/// A green arc from a point of Λ1 to a point of Λ2 = Z^2: a straight
/// segment, or a polyline through half-integer bend points.
struct GreenArc {
    LatticeClass start = LatticeClass::Zero;
    Vec2 end;
    std::vector<Vec2> via2;  ///< bend points, coordinates doubled
    friend bool operator==(const GreenArc&, const GreenArc&) = default;
};

struct Presentation {
    Vec2 lambda1{2, 0};
    Vec2 lambda2{0, 1};
    LatticeClass translation = LatticeClass::Zero;
    /// Virtual presentations leave the translation undetermined.
    bool is_virtual = false;
    /// Indexed by LatticeClass.
    std::array<GreenArc, 4> arcs;

    IntMat2 lattice() const { return IntMat2::from_columns(lambda1, lambda2); }
    std::int64_t degree() const { return lattice().det(); }
    /// λ-combination of a class: 0, λ1, λ2 or λ1+λ2.
    Vec2 class_point(LatticeClass c) const;
    Vec2 translation_vector() const { return class_point(translation); }
    const GreenArc& arc(LatticeClass c) const { return arcs[static_cast<int>(c)]; }
    bool arc_trivial(LatticeClass c) const { return arc(c).end == class_point(c) && arc(c).via2.empty(); }
    /// Vertices of the arc in doubled coordinates, start first.
    std::vector<Vec2> path2(LatticeClass c) const;

    /// Text form accepted by parse().
    std::string str() const;
    friend bool operator==(const Presentation&, const Presentation&) = default;
};

/// Reads the presentation text format:
///   lambda1 <x> <y>
///   lambda2 <x> <y>
///   translation <0|l1|l2|l1+l2|virtual>
///   arc <0|l1|l2|l1+l2> -> <x> <y> [via <x> <y> ...]   (four times)
/// Bend points after 'via' may be half-integers written k/2.
/// '#' starts a comment.  Syntax errors throw DomainError with the line number.
Presentation parse_presentation(std::istream& in);
Presentation parse_presentation(const std::string& text);
Presentation load_presentation(const std::string& path);

struct ValidationReport {
    bool valid = false;
    /// The arcs present a branched cover; only the postcritical count may fail.
    bool branched_cover = false;
    std::vector<std::string> errors;
    std::int64_t degree = 0;
    bool euclidean = false;
    /// Translations that make a virtual presentation a NET map.
    std::vector<LatticeClass> admissible_translations;
    std::string json() const;
};

ValidationReport validate(const Presentation& P);
/// Throws DomainError with the first error if P is not valid.
void require_valid(const Presentation& P);

/// The four endpoint classes of the green arcs in Z^2 / 2Λ1.
HurwitzStructureSet hurwitz_structure_set(const Presentation& P);

/// Conjugate presentation M·P for M in SL(2, Z).
Presentation transform(const Presentation& P, const IntMat2& M);

/// Same lattice Λ1 and arcs, new basis (λ1, λ2)·M for M in SL(2, Z).  This
/// presents the postcomposition of the map by the modular group element
/// acting on λ-coordinates through M.
Presentation change_basis(const Presentation& P, const IntMat2& M);

/// Every postcritical class satisfies 2h = 0.
bool is_euclidean(const Presentation& P);

// ---------------------------------------------------------------------------
// Portraits.

struct PortraitVertex {
    Residue cls;  ///< ± canonical class in Smith coordinates
    bool postcritical = false;
    bool critical = false;
    std::string label;
};

struct PortraitEdge {
    int from = 0;
    int to = 0;
    int local_degree = 1;
};

struct Portrait {
    std::vector<PortraitVertex> vertices;
    std::vector<PortraitEdge> edges;
    /// e.g. "a ->2 b -> c -> a; d ->2 d"
    std::string str() const;
};

/// Bipartite graph from all ±classes of Z^2 / 2Λ1 (the preimage of the
/// marked set) to the four marked points.
struct StaticPortrait {
    std::vector<PortraitVertex> domain;
    std::vector<PortraitVertex> codomain;
    std::vector<PortraitEdge> edges;
};

struct Portraits {
    Portrait dynamic;
    StaticPortrait static_portrait;
    /// Branch partition over each postcritical point, descending, the list
    /// sorted descending.
    std::vector<std::vector<int>> branch_data;
};

Portraits portraits(const Presentation& P);

/// The image class f(v) of a point v in Z^2 (a lift of a marked point).
Residue image_class(const Presentation& P, const LatticeQuotient& Q, Vec2 v);

}  // namespace netmap
