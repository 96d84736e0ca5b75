#pragma once

// Exact arithmetic foundations: extended rationals on the circle R ∪ {∞},
// 2x2 integer matrices, Smith normal form, the boundary Möbius action and
// bookkeeping of open arcs on the circle.

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace netmap {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised when an operation's precondition on its arguments fails.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an internal consistency check fails. Never valid output.
class EngineError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// ---------------------------------------------------------------------------
// Lattice vectors and matrices.  Entries are 64-bit with overflow checking;
// every lattice computation in this library stays far below that range.

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t pos_mod(std::int64_t a, std::int64_t m);

struct Vec2 {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
    friend constexpr auto operator<=>(const Vec2&, const Vec2&) = default;
};

Vec2 operator+(Vec2 a, Vec2 b);
Vec2 operator-(Vec2 a, Vec2 b);
Vec2 operator-(Vec2 a);
Vec2 operator*(std::int64_t k, Vec2 a);
/// det[a b] with a, b as columns.
std::int64_t cross(Vec2 a, Vec2 b);

/// Row-major [[a, b], [c, d]].
struct IntMat2 {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    static constexpr IntMat2 identity() { return {1, 0, 0, 1}; }
    /// Matrix whose columns are u and v.
    static IntMat2 from_columns(Vec2 u, Vec2 v) { return {u.x, v.x, u.y, v.y}; }

    std::int64_t det() const;
    Vec2 col(int j) const { return j == 0 ? Vec2{a, c} : Vec2{b, d}; }
    /// Adjugate; equals the inverse when det = 1.
    IntMat2 adjugate() const { return {d, -b, -c, a}; }

    friend constexpr bool operator==(const IntMat2&, const IntMat2&) = default;
};

IntMat2 operator*(const IntMat2& m, const IntMat2& n);
Vec2 operator*(const IntMat2& m, Vec2 v);

std::int64_t gcd64(std::int64_t a, std::int64_t b);

struct SmithForm {
    std::int64_t m = 1;  ///< first elementary divisor (the larger one)
    std::int64_t n = 1;  ///< second elementary divisor, n | m
    IntMat2 P;           ///< det P = 1
    IntMat2 Q;           ///< det Q = 1, P A Q = diag(m, n)
};

/// Smith normal form of a nonsingular 2x2 integer matrix with P, Q in SL(2,Z).
/// Throws DomainError on singular input.
SmithForm smith_normal_form(const IntMat2& A);

// ---------------------------------------------------------------------------
// Extended rationals.

/// Reduced p/q with q >= 0; 1/0 is the single point at infinity.
class ExtRational {
public:
    ExtRational() : num_(0), den_(1) {}
    /// Reduces (p, q); throws DomainError for (0, 0).
    ExtRational(Integer p, Integer q);
    static ExtRational infinity() { return ExtRational(1, 0); }
    static ExtRational from_rational(const Rational& r);

    const Integer& num() const { return num_; }
    const Integer& den() const { return den_; }
    bool is_infinite() const { return den_ == 0; }
    /// Finite value; throws DomainError at infinity.
    Rational value() const;

    /// "p/q" or "∞".
    std::string str() const;
    /// Accepts "p/q", "p", "inf", "∞", "1/0", "-1/0".
    static ExtRational parse(const std::string& text);

    friend bool operator==(const ExtRational&, const ExtRational&) = default;
    /// Total order used for containers: finite values ascending, ∞ last.
    friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b);

private:
    Integer num_;
    Integer den_;
};

/// Normal form of the slope p/q.
ExtRational reduce_slope(const Integer& p, const Integer& q);

/// The absorbing symbol for inessential and peripheral preimages.
struct Odot {
    friend constexpr bool operator==(Odot, Odot) = default;
};

/// A slope value: an extended rational or ⊙.
class Slope {
public:
    Slope() : v_(Odot{}) {}
    Slope(ExtRational r) : v_(std::move(r)) {}
    Slope(Odot) : v_(Odot{}) {}
    static Slope odot() { return Slope(Odot{}); }

    bool is_odot() const { return std::holds_alternative<Odot>(v_); }
    const ExtRational& value() const;
    std::string str() const;

    friend bool operator==(const Slope&, const Slope&) = default;

private:
    std::variant<ExtRational, Odot> v_;
};

/// Boundary action x -> (d x + b) / (c x + a) of M = [[a, b], [c, d]].
/// Requires |det M| = 1.  With this convention
///   moebius_boundary(M1 * M2, x) == moebius_boundary(M2, moebius_boundary(M1, x)).
ExtRational moebius_boundary(const IntMat2& M, const ExtRational& x);

/// Standard fractional-linear action x -> (a x + b) / (c x + d), any det != 0.
ExtRational moebius_standard(const IntMat2& M, const ExtRational& x);

// ---------------------------------------------------------------------------
// Arcs on the circle R ∪ {∞}.

/// Open arc traversed in the increasing direction from `from` to `to`,
/// passing through ∞ when from > to.
class BoundaryInterval {
public:
    BoundaryInterval(ExtRational from, ExtRational to);

    const ExtRational& from() const { return from_; }
    const ExtRational& to() const { return to_; }
    bool contains(const ExtRational& x) const;
    bool contains_infinity() const;
    /// Bounded as a set of reals, i.e. closure avoids ∞.
    bool bounded() const;
    std::string str() const;

    friend bool operator==(const BoundaryInterval&, const BoundaryInterval&) = default;

private:
    ExtRational from_;
    ExtRational to_;
};

/// Closed arc [from, to] in the increasing direction; from == to is a point.
struct ClosedArc {
    ExtRational from;
    ExtRational to;
    bool full_circle = false;

    bool is_point() const { return !full_circle && from == to; }
    bool contains(const ExtRational& x) const;
    std::string str() const;
    friend bool operator==(const ClosedArc&, const ClosedArc&) = default;
};

/// The part of the circle not yet covered by subtracted open arcs.
class IntervalCover {
public:
    IntervalCover();  // nothing covered

    /// Removes J from the uncovered set.
    void subtract(const BoundaryInterval& J);
    /// Normalized uncovered set: disjoint closed arcs in circular order
    /// starting from the smallest finite point; an arc through ∞ comes last.
    std::vector<ClosedArc> complement() const;
    bool covers(const ExtRational& x) const;
    /// True if the uncovered set is finite (possibly empty).
    bool only_points_left() const;
    bool empty() const;

private:
    // Linearized points: -∞ and +∞ both stand for the circle point ∞.
    struct Pt {
        int kind;  // 0: -inf, 1: finite, 2: +inf
        Rational q;
        friend bool operator==(const Pt&, const Pt&) = default;
    };
    static bool less(const Pt& a, const Pt& b);
    static ExtRational to_ext(const Pt& p);
    struct Seg {
        Pt lo, hi;
    };
    void remove_open(const Pt& lo, bool lo_inclusive_neg_inf, const Pt& hi, bool hi_inclusive_pos_inf);
    std::vector<Seg> segs_;
};

/// cover_subtract as a pure function.
IntervalCover cover_subtract(IntervalCover cover, const BoundaryInterval& J);

}  // namespace netmap
