#include "netmap/pullback.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <limits>
#include <sstream>

namespace netmap {

namespace {

std::int64_t to_i64(const Integer& v)
{
    if (v > std::numeric_limits<std::int64_t>::max() / 4 || v < std::numeric_limits<std::int64_t>::min() / 4)
        throw DomainError("slope too large for lattice arithmetic");
    return static_cast<std::int64_t>(v);
}

// x, y with a x + b y = gcd(a, b) >= 0.
std::array<std::int64_t, 3> ext_gcd(std::int64_t a, std::int64_t b)
{
    std::int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        std::int64_t k = floor_div(a, b);
        std::int64_t r = a - k * b;
        a = b;
        b = r;
        std::int64_t t = x0 - k * x1;
        x0 = x1;
        x1 = t;
        t = y0 - k * y1;
        y0 = y1;
        y1 = t;
    }
    if (a < 0) return {-a, -x0, -y0};
    return {a, x0, y0};
}

Rational frac(const Rational& t)
{
    Integer fl = boost::multiprecision::numerator(t) / boost::multiprecision::denominator(t);
    if (fl * boost::multiprecision::denominator(t) > boost::multiprecision::numerator(t)) fl -= 1;
    return t - Rational(fl);
}

Integer floor_of(const Rational& t)
{
    Integer n = boost::multiprecision::numerator(t), d = boost::multiprecision::denominator(t);
    Integer fl = n / d;
    if (fl * d > n) fl -= 1;
    return fl;
}

DeckElement compose(const DeckElement& f, const DeckElement& g)
{
    return {f.epsilon * g.epsilon, f.epsilon * g.tau + f.tau};
}

struct Crossing {
    Rational t;
    Vec2 center;
};

}  // namespace

std::string to_string(ComponentKind k)
{
    switch (k) {
    case ComponentKind::Inessential: return "inessential";
    case ComponentKind::Peripheral: return "peripheral";
    case ComponentKind::Essential: return "essential";
    }
    return "?";
}

std::vector<ComponentReport> preimage_components(const Presentation& P, const ExtRational& s, const PullbackOptions& opt)
{
    if (opt.offset <= 0 || opt.offset >= 1) throw DomainError("offset must lie strictly between 0 and 1");
    const std::int64_t p = to_i64(s.num()), q = to_i64(s.den());
    const Vec2 v{q, p};
    auto nu = [&](Vec2 x) { return checked_add(checked_mul(-p, x.x), checked_mul(q, x.y)); };
    const IntMat2 A = P.lattice();
    const std::int64_t D = A.det();
    if (D < 2) throw DomainError("presentation degree must be at least 2");

    const std::int64_t n1 = nu(P.lambda1), n2 = nu(P.lambda2);
    const std::int64_t g = gcd64(std::llabs(n1), std::llabs(n2));
    // Primitive vector ell of Λ1 along v, and a Λ1 vector mu1 with ν(mu1) = g.
    Vec2 ell = (n2 / g) * P.lambda1 + (-n1 / g) * P.lambda2;
    if (ell.x * v.x + ell.y * v.y < 0) ell = -ell;
    auto [one, z1, z2] = ext_gcd(n1 / g, n2 / g);
    if (one != 1) throw EngineError("line functional gcd");
    const Vec2 mu1 = z1 * P.lambda1 + z2 * P.lambda2;
    const Vec2 u2 = 2 * ell;

    // Degree: A·ell = d·(A v).
    const std::int64_t d = v.x != 0 ? ell.x / v.x : ell.y / v.y;
    if (d * v.x != ell.x || d * v.y != ell.y || d <= 0) throw EngineError("period is not a multiple of the direction");
    if (checked_mul(g, d) != D) throw EngineError("component degrees do not sum to the degree");

    // Level of the image line: ν(A^-1 y0) = k·offset / D where k is the
    // content of the direction A v.
    const Vec2 w = A * v;
    const std::int64_t k = gcd64(std::llabs(w.x), std::llabs(w.y));
    // Bend points sit at half-integer levels; keep the traced lines off them.
    Rational offset = opt.offset;
    while (denominator(Rational(2 * k) * offset / Rational(D)) == 1) offset = offset * 2 / 3;
    const Rational c0 = Rational(k) * offset / Rational(D);
    const Vec2 bb{static_cast<int>(P.translation) & 1, (static_cast<int>(P.translation) >> 1) & 1};
    const std::int64_t beta = nu(bb);

    auto [unit, e1, e2] = ext_gcd(-p, q);
    if (unit != 1) throw DomainError("slope " + s.str() + " is not reduced");
    const Vec2 nvec{e1, e2};  // ν(nvec) = 1
    const Rational uu = Rational(u2.x) * u2.x + Rational(u2.y) * u2.y;

    std::vector<ComponentReport> out;
    for (std::int64_t j = 0; j < g; ++j) {
        ComponentReport R;
        R.degree = d;
        R.level = c0 - Rational(beta) + Rational(2 * j);
        const Rational& c = R.level;
        const Rational x0x = c * nvec.x, x0y = c * nvec.y;

        std::vector<Crossing> cr;
        for (int ci = 0; ci < 4; ++ci) {
            const auto cls = static_cast<LatticeClass>(ci);
            if (P.arc_trivial(cls)) continue;
            const Vec2 st = P.class_point(cls);
            const std::vector<Vec2> path = P.path2(cls);
            for (int sign : {1, -1})
                for (std::size_t i = 0; i + 1 < path.size(); ++i) {
                    // Segment endpoints, undoubled.
                    const Rational ax = Rational(sign * path[i].x, 2), ay = Rational(sign * path[i].y, 2);
                    const Rational bx = Rational(sign * path[i + 1].x, 2), by = Rational(sign * path[i + 1].y, 2);
                    const Rational na = Rational(-p) * ax + Rational(q) * ay, nb = Rational(-p) * bx + Rational(q) * by;
                    if (na == nb) continue;
                    const Rational lo = std::min(na, nb), hi = std::max(na, nb);
                    // Need lo + 2gm < c < hi + 2gm.
                    Integer mlo = floor_of((c - hi) / Rational(2 * g)) + 1;
                    Integer mhi = floor_of((c - lo) / Rational(2 * g));
                    for (Integer mm = mlo; mm <= mhi; ++mm) {
                        std::int64_t m = to_i64(mm);
                        Vec2 shift = (2 * m) * mu1;
                        Rational sh = Rational(2 * m * g);
                        Rational sa = (c - na - sh) / (nb - na);
                        if (sa <= 0 || sa >= 1) continue;
                        Rational Xx = ax + shift.x + sa * (bx - ax), Xy = ay + shift.y + sa * (by - ay);
                        Rational t = ((Xx - x0x) * u2.x + (Xy - x0y) * u2.y) / uu;
                        std::int64_t shift_periods = to_i64(floor_of(t));
                        Vec2 center = sign * st + shift - shift_periods * u2;
                        cr.push_back({frac(t), center});
                    }
                }
        }
        std::sort(cr.begin(), cr.end(), [](const Crossing& x, const Crossing& y) { return x.t < y.t; });
        for (std::size_t i = 1; i < cr.size(); ++i)
            if (cr[i].t == cr[i - 1].t) throw EngineError("two green arcs cross the traced line at one point");

        DeckElement deck{1, {0, 0}};
        for (const Crossing& x : cr) deck = compose(deck, DeckElement{-1, 2 * x.center});
        deck = compose(deck, DeckElement{1, u2});
        R.deck = deck;
        R.crossings = static_cast<int>(cr.size());

        if (deck.epsilon == -1) {
            R.kind = ComponentKind::Peripheral;
        } else if (deck.tau == Vec2{}) {
            R.kind = ComponentKind::Inessential;
        } else {
            R.kind = ComponentKind::Essential;
            if (deck.tau.x % 2 != 0 || deck.tau.y % 2 != 0) throw EngineError("deck translation not in 2Λ1");
            Vec2 half{deck.tau.x / 2, deck.tau.y / 2};
            Vec2 coords = A.adjugate() * half;
            if (coords.x % D != 0 || coords.y % D != 0) throw EngineError("deck translation not in 2Λ1");
            std::int64_t a1 = coords.x / D, a2 = coords.y / D;
            if (gcd64(std::llabs(a1), std::llabs(a2)) != 1) throw EngineError("essential preimage is not simple");
            R.slope = reduce_slope(a2, a1);
        }
        out.push_back(std::move(R));
    }
    return out;
}

PullbackResult slope_invariants(const Presentation& P, const ExtRational& s, const PullbackOptions& opt)
{
    auto comps = preimage_components(P, s, opt);
    PullbackResult r;
    r.d = comps.front().degree;
    std::optional<ExtRational> slope;
    for (const auto& c : comps) {
        if (c.degree != r.d) throw EngineError("components disagree on degree");
        if (c.kind != ComponentKind::Essential) continue;
        ++r.c;
        if (slope && *slope != *c.slope) throw EngineError("essential components disagree on slope");
        slope = c.slope;
    }
    r.image = slope ? Slope(*slope) : Slope::odot();
    r.delta = Rational(r.c) / Rational(r.d);
    return r;
}

std::string PullbackResult::json() const
{
    nlohmann::ordered_json j;
    j["c"] = c;
    j["d"] = d;
    j["image"] = image.str();
    std::ostringstream ds;
    ds << delta;
    j["delta"] = ds.str();
    return j.dump();
}

ExtRational parse_slope(const std::string& text)
{
    ExtRational r = ExtRational::parse(text);
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        try {
            Integer a(text.substr(0, slash)), b(text.substr(slash + 1));
            if (boost::multiprecision::gcd(a, b) != 1) throw DomainError("slope " + text + " is not reduced");
        } catch (const std::runtime_error&) {
            throw DomainError("cannot read slope '" + text + "'");
        }
    }
    return r;
}

ExtRational boundary_point(const ExtRational& slope)
{
    // p/q -> -q/p
    return ExtRational(-slope.den(), slope.num());
}

ExtRational slope_from_boundary(const ExtRational& t) { return boundary_point(t); }

std::optional<ExtRational> boundary_point(const Slope& s)
{
    if (s.is_odot()) return std::nullopt;
    return boundary_point(s.value());
}

}  // namespace netmap
