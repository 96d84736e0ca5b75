#pragma once

// The finite group Z^2 / 2Λ1 in Smith coordinates and Hurwitz structure sets.

#include "netmap/arith.hpp"

#include <array>
#include <string>
#include <vector>

namespace netmap {

/// Element of Z_{2m} ⊕ Z_{2n}.
struct Residue {
    std::int64_t x = 0;
    std::int64_t y = 0;
    friend constexpr bool operator==(const Residue&, const Residue&) = default;
    friend constexpr auto operator<=>(const Residue&, const Residue&) = default;
};

/// Z^2 / 2Λ1 identified with Z_{2m} ⊕ Z_{2n} through v -> P v, where
/// P A Q = diag(m, n) is the Smith form of the lattice matrix A = [λ1 λ2].
class LatticeQuotient {
public:
    explicit LatticeQuotient(const IntMat2& lattice);
    /// Quotient of Z^2 by 2·diag(m, n)Z^2 with identity coordinates.
    static LatticeQuotient diagonal(std::int64_t m, std::int64_t n);

    std::int64_t m() const { return m_; }
    std::int64_t n() const { return n_; }
    std::int64_t order() const { return 4 * m_ * n_; }
    const IntMat2& to_smith() const { return P_; }

    Residue reduce(Vec2 v) const;
    Residue reduce(Residue r) const;
    Residue neg(Residue r) const;
    Residue add(Residue a, Residue b) const;
    /// Canonical representative of {±r}: the smaller of r and -r.
    Residue pm(Residue r) const;
    bool two_torsion(Residue r) const { return neg(r) == r; }
    /// Image of r under a matrix acting on Smith coordinates.  The caller
    /// guarantees M stabilizes diag(m, n)Z^2.
    Residue apply(const IntMat2& M, Residue r) const;
    /// All elements, ordered.
    std::vector<Residue> elements() const;

private:
    LatticeQuotient(std::int64_t m, std::int64_t n, IntMat2 P) : m_(m), n_(n), P_(P) {}
    std::int64_t m_;
    std::int64_t n_;
    IntMat2 P_;
};

/// Four pairwise disjoint ±classes in Z^2 / 2Λ1, stored as canonical
/// representatives in Smith coordinates, sorted.
struct HurwitzStructureSet {
    Vec2 lambda1;
    Vec2 lambda2;
    std::int64_t m = 1;
    std::int64_t n = 1;
    std::array<Residue, 4> classes;

    /// Builds a set over diag(m, n), canonicalizing and sorting; throws
    /// DomainError if the four ±classes are not pairwise distinct.
    static HurwitzStructureSet over_diagonal(std::int64_t m, std::int64_t n, std::array<Residue, 4> cls);

    /// Number of classes h with 2h != 0 (critical postcritical points).
    int critical_count() const;
    std::string str() const;

    friend bool operator==(const HurwitzStructureSet& a, const HurwitzStructureSet& b)
    {
        return a.m == b.m && a.n == b.n && a.classes == b.classes;
    }
};

}  // namespace netmap
