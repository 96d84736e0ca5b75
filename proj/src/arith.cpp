#include "netmap/arith.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <sstream>

namespace netmap {

std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw EngineError("integer overflow in lattice arithmetic");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw EngineError("integer overflow in lattice arithmetic");
    return r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t pos_mod(std::int64_t a, std::int64_t m)
{
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

Vec2 operator+(Vec2 a, Vec2 b) { return {checked_add(a.x, b.x), checked_add(a.y, b.y)}; }
Vec2 operator-(Vec2 a, Vec2 b) { return {checked_add(a.x, -b.x), checked_add(a.y, -b.y)}; }
Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
Vec2 operator*(std::int64_t k, Vec2 a) { return {checked_mul(k, a.x), checked_mul(k, a.y)}; }
std::int64_t cross(Vec2 a, Vec2 b) { return checked_add(checked_mul(a.x, b.y), -checked_mul(a.y, b.x)); }

std::int64_t IntMat2::det() const { return checked_add(checked_mul(a, d), -checked_mul(b, c)); }

IntMat2 operator*(const IntMat2& m, const IntMat2& n)
{
    return {checked_add(checked_mul(m.a, n.a), checked_mul(m.b, n.c)),
            checked_add(checked_mul(m.a, n.b), checked_mul(m.b, n.d)),
            checked_add(checked_mul(m.c, n.a), checked_mul(m.d, n.c)),
            checked_add(checked_mul(m.c, n.b), checked_mul(m.d, n.d))};
}

Vec2 operator*(const IntMat2& m, Vec2 v)
{
    return {checked_add(checked_mul(m.a, v.x), checked_mul(m.b, v.y)),
            checked_add(checked_mul(m.c, v.x), checked_mul(m.d, v.y))};
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

// ---------------------------------------------------------------------------

SmithForm smith_normal_form(const IntMat2& input)
{
    if (input.det() == 0) throw DomainError("smith_normal_form: singular matrix");

    IntMat2 A = input;
    IntMat2 P = IntMat2::identity();
    IntMat2 Q = IntMat2::identity();
    auto left = [&](const IntMat2& E) { A = E * A; P = E * P; };
    auto right = [&](const IntMat2& E) { A = A * E; Q = Q * E; };
    const IntMat2 row_swap{0, 1, -1, 0};  // (r0, r1) -> (r1, -r0)
    const IntMat2 col_swap{0, -1, 1, 0};  // (c0, c1) -> (c1, -c0)

    for (;;) {
        if (A.b == 0 && A.c == 0) {
            if (A.a % A.d == 0) break;
            if (A.d % A.a == 0) {
                left(row_swap);
                right(col_swap);
                continue;
            }
            left({1, 1, 0, 1});  // row0 += row1 brings d into the first row
            continue;
        }
        // Move a smallest nonzero entry to the corner.
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        int where = 0;
        const std::int64_t e[4] = {A.a, A.b, A.c, A.d};
        for (int i = 0; i < 4; ++i)
            if (e[i] != 0 && std::llabs(e[i]) < best) best = std::llabs(e[i]), where = i;
        if (where == 1 || where == 3) right(col_swap);
        if (where == 2 || where == 3) left(row_swap);

        const std::int64_t qc = A.c / A.a;
        left({1, 0, -qc, 1});
        const std::int64_t qb = A.b / A.a;
        right({1, -qb, 0, 1});
    }

    // Here A = diag(x, y) with y | x.  Normalize to the smaller entry last and
    // positive signs.
    if (A.d < 0 && A.a < 0) { left({-1, 0, 0, -1}); }
    if (A.a < 0) { left({-1, 0, 0, 1}); }  // det A < 0 forces one unimodular det -1 factor
    if (A.d < 0) { left({1, 0, 0, -1}); }
    if (std::llabs(A.a) < std::llabs(A.d)) {
        // Only possible when |a| == |d| after the divisibility loop.
        throw EngineError("smith_normal_form: ordering invariant violated");
    }
    if (P * input * Q != A) throw EngineError("smith_normal_form: PAQ mismatch");
    return {A.a, A.d, P, Q};
}

// ---------------------------------------------------------------------------

ExtRational::ExtRational(Integer p, Integer q)
{
    if (p == 0 && q == 0) throw DomainError("zero vector has no slope");
    if (q < 0 || (q == 0 && p < 0)) {
        p = -p;
        q = -q;
    }
    if (q == 0) {
        num_ = 1;
        den_ = 0;
        return;
    }
    Integer g = boost::multiprecision::gcd(p, q);
    num_ = p / g;
    den_ = q / g;
}

ExtRational ExtRational::from_rational(const Rational& r)
{
    return ExtRational(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

Rational ExtRational::value() const
{
    if (is_infinite()) throw DomainError("value(): point at infinity");
    return Rational(num_, den_);
}

std::string ExtRational::str() const
{
    if (is_infinite()) return "∞";
    return num_.str() + "/" + den_.str();
}

ExtRational ExtRational::parse(const std::string& text)
{
    if (text == "inf" || text == "∞" || text == "infinity") return infinity();
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return ExtRational(Integer(text), 1);
        return ExtRational(Integer(text.substr(0, slash)), Integer(text.substr(slash + 1)));
    } catch (const DomainError&) {
        throw;
    } catch (const std::exception&) {
        throw DomainError("cannot parse extended rational '" + text + "'");
    }
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b)
{
    if (a.is_infinite() || b.is_infinite()) {
        if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
        return a.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    Integer l = a.num() * b.den();
    Integer r = b.num() * a.den();
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

ExtRational reduce_slope(const Integer& p, const Integer& q) { return ExtRational(p, q); }

const ExtRational& Slope::value() const
{
    if (is_odot()) throw DomainError("slope is ⊙");
    return std::get<ExtRational>(v_);
}

std::string Slope::str() const { return is_odot() ? "⊙" : std::get<ExtRational>(v_).str(); }

ExtRational moebius_standard(const IntMat2& M, const ExtRational& x)
{
    if (M.det() == 0) throw DomainError("moebius: singular matrix");
    const Integer a = M.a, b = M.b, c = M.c, d = M.d;
    return ExtRational(a * x.num() + b * x.den(), c * x.num() + d * x.den());
}

ExtRational moebius_boundary(const IntMat2& M, const ExtRational& x)
{
    const std::int64_t det = M.det();
    if (det != 1 && det != -1) throw DomainError("moebius_boundary: matrix is not unimodular");
    return moebius_standard(IntMat2{M.d, M.b, M.c, M.a}, x);
}

// ---------------------------------------------------------------------------

BoundaryInterval::BoundaryInterval(ExtRational from, ExtRational to) : from_(std::move(from)), to_(std::move(to))
{
    if (from_ == to_) throw DomainError("boundary interval endpoints must differ");
}

bool BoundaryInterval::contains(const ExtRational& x) const
{
    if (x == from_ || x == to_) return false;
    if (from_ < to_) {
        // Increasing from `from` to `to`; passes ∞ only if `to` is ∞.
        return from_ < x && x < to_;
    }
    // Wraps through ∞ (from > to in the container order, ∞ counted last).
    return x > from_ || x < to_;
}

bool BoundaryInterval::contains_infinity() const { return contains(ExtRational::infinity()); }

bool BoundaryInterval::bounded() const
{
    return !from_.is_infinite() && !to_.is_infinite() && from_ < to_;
}

std::string BoundaryInterval::str() const { return "(" + from_.str() + ", " + to_.str() + ")"; }

bool ClosedArc::contains(const ExtRational& x) const
{
    if (full_circle) return true;
    if (x == from || x == to) return true;
    if (from < to) return from < x && x < to;
    if (from == to) return false;
    return x > from || x < to;
}

std::string ClosedArc::str() const
{
    if (full_circle) return "[circle]";
    if (from == to) return "{" + from.str() + "}";
    return "[" + from.str() + ", " + to.str() + "]";
}

// ---------------------------------------------------------------------------

IntervalCover::IntervalCover() { segs_.push_back({{0, {}}, {2, {}}}); }

bool IntervalCover::less(const Pt& a, const Pt& b)
{
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.kind != 1) return false;
    return a.q < b.q;
}

ExtRational IntervalCover::to_ext(const Pt& p)
{
    if (p.kind != 1) return ExtRational::infinity();
    return ExtRational::from_rational(p.q);
}

// Removes the linear open interval (lo, hi).  The flags extend the removal to
// include the -∞ / +∞ endpoint itself, which is how arcs through ∞ are split.
void IntervalCover::remove_open(const Pt& lo, bool incl_lo, const Pt& hi, bool incl_hi)
{
    auto removes = [&](const Pt& p) {
        bool above_lo = less(lo, p) || (incl_lo && p == lo);
        bool below_hi = less(p, hi) || (incl_hi && p == hi);
        return above_lo && below_hi;
    };
    std::vector<Seg> out;
    for (const Seg& s : segs_) {
        // Left remainder: [s.lo, min(s.hi, lo)] unless lo itself is removed.
        if (less(s.lo, lo) || (s.lo == lo && !incl_lo)) {
            Pt top = less(s.hi, lo) ? s.hi : lo;
            if (!removes(top) && !removes(s.lo)) out.push_back({s.lo, top});
        }
        // Right remainder: [max(s.lo, hi), s.hi].
        if (less(hi, s.hi) || (s.hi == hi && !incl_hi)) {
            Pt bottom = less(hi, s.lo) ? s.lo : hi;
            if (!removes(bottom) && !removes(s.hi)) out.push_back({bottom, s.hi});
        }
    }
    // Segments entirely outside (lo, hi) are handled by the two remainders
    // above; collapse duplicates created when a segment lies wholly on one side.
    std::vector<Seg> dedup;
    for (const Seg& s : out) {
        bool dup = false;
        for (const Seg& t : dedup)
            if (t.lo == s.lo && t.hi == s.hi) dup = true;
        if (!dup) dedup.push_back(s);
    }
    std::sort(dedup.begin(), dedup.end(), [](const Seg& a, const Seg& b) { return less(a.lo, b.lo); });
    segs_ = std::move(dedup);
}

void IntervalCover::subtract(const BoundaryInterval& J)
{
    const ExtRational& a = J.from();
    const ExtRational& b = J.to();
    auto pt = [](const ExtRational& x, int inf_kind) { return x.is_infinite() ? Pt{inf_kind, {}} : Pt{1, x.value()}; };
    if (a.is_infinite()) {
        remove_open(Pt{0, {}}, false, pt(b, 2), false);
    } else if (b.is_infinite()) {
        remove_open(pt(a, 0), false, Pt{2, {}}, false);
    } else if (a < b) {
        remove_open(pt(a, 0), false, pt(b, 2), false);
    } else {
        remove_open(pt(a, 0), false, Pt{2, {}}, true);
        remove_open(Pt{0, {}}, true, pt(b, 2), false);
    }
}

std::vector<ClosedArc> IntervalCover::complement() const
{
    std::vector<ClosedArc> arcs;
    if (segs_.empty()) return arcs;
    bool starts_neg = segs_.front().lo.kind == 0;
    bool ends_pos = segs_.back().hi.kind == 2;
    if (segs_.size() == 1 && starts_neg && ends_pos) {
        ClosedArc full{ExtRational::infinity(), ExtRational::infinity(), true};
        return {full};
    }
    std::size_t first = 0, last = segs_.size();
    std::optional<ExtRational> wrap_to;
    std::optional<ExtRational> wrap_from;
    if (starts_neg) {
        wrap_to = to_ext(segs_.front().hi);
        first = 1;
    }
    if (ends_pos && last > first) {
        wrap_from = to_ext(segs_.back().lo);
        last -= 1;
    }
    for (std::size_t i = first; i < last; ++i) arcs.push_back({to_ext(segs_[i].lo), to_ext(segs_[i].hi)});
    if (wrap_to || wrap_from) {
        ExtRational f = wrap_from ? *wrap_from : ExtRational::infinity();
        ExtRational t = wrap_to ? *wrap_to : ExtRational::infinity();
        arcs.push_back({f, t});
    }
    return arcs;
}

bool IntervalCover::covers(const ExtRational& x) const
{
    for (const ClosedArc& a : complement())
        if (a.contains(x)) return false;
    return true;
}

bool IntervalCover::only_points_left() const
{
    for (const ClosedArc& a : complement())
        if (!a.is_point()) return false;
    return true;
}

bool IntervalCover::empty() const { return segs_.empty(); }

IntervalCover cover_subtract(IntervalCover cover, const BoundaryInterval& J)
{
    cover.subtract(J);
    return cover;
}

}  // namespace netmap
