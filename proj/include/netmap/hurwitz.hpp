#pragma once

// Impure Hurwitz invariants: elementary divisors, structure-set
// equivalence, the multiplier image, deck group order and catalogs.

#include "netmap/lattice.hpp"
#include "netmap/presentation.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace netmap {

/// Reads a structure set over diag(m, n):
///   divisors <m> <n>
///   class <x> <y>      (four times, residues mod 2m and 2n)
/// '#' starts a comment.
HurwitzStructureSet parse_structure_set(const std::string& text);
HurwitzStructureSet load_structure_set(const std::string& path);

/// (m, n) with n | m and mn = degree.
std::pair<std::int64_t, std::int64_t> elementary_divisors(const Presentation& P);

/// Matrices [[a, b], [c, d]] with entries in [0, 2m), ad - bc = 1 mod 2m and
/// b = 0 mod m/n: the image of the stabilizer of diag(m, n)Z^2 in SL(2, Z)
/// acting on Z_{2m} ⊕ Z_{2n}.
const std::vector<IntMat2>& lattice_stabilizer(std::int64_t m, std::int64_t n);

/// Image of H under x -> Mx + t, with t of order at most 2.
HurwitzStructureSet apply_affine(const HurwitzStructureSet& H, const IntMat2& M, Residue t);

/// Least image of H over the affine group; equal for equivalent sets.
std::array<Residue, 4> canonical_form(const HurwitzStructureSet& H);

bool hs_equivalent(const HurwitzStructureSet& H1, const HurwitzStructureSet& H2);

struct ResidueEntry {
    Residue cls;
    std::optional<ExtRational> witness;  ///< a slope p/q with (q, p) in the class
    std::int64_t c = 0;
    std::int64_t d = 0;
};

struct MultiplierImage {
    std::vector<Rational> deltas;  ///< sorted, distinct
    bool constant_sigma = false;
    bool completely_unobstructed = false;
    bool infinitely_many_classes = false;
    std::vector<ResidueEntry> table;  ///< every class of Z^2/2Λ1
    std::int64_t scan_bound = 0;
    std::string json() const;
};

/// Scans primitive (q, p) with |p|, |q| <= 8mn, one pullback per class.
MultiplierImage multiplier_image(const Presentation& P);

/// Translations in 2Z^2 modulo 2Λ1 that stabilize the structure set.
std::int64_t deck_group_order(const Presentation& P);

/// A virtual presentation over diag(m, n) with straight arcs realizing H,
/// searched among short arcs; nullopt when none validates.
std::optional<Presentation> realize(const HurwitzStructureSet& H, int candidates = 4);

struct CatalogEntry {
    std::string name;  ///< mnHClassK
    HurwitzStructureSet hs;
    int critical = 0;
    std::optional<Presentation> presentation;
    bool valid = false;  ///< realized by a valid presentation
};

/// One entry per equivalence class of structure sets over diag(m, n);
/// valid classes first, then by critical count.
std::vector<CatalogEntry> catalog(std::int64_t m, std::int64_t n);

}  // namespace netmap
