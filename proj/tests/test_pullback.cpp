#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "netmap/pullback.hpp"
#include "support.hpp"

using namespace netmap;
using testsupport::corpus;

namespace {

ExtRational q(long a, long b) { return ExtRational(a, b); }
const ExtRational kInf = ExtRational::infinity();

// (a s - c) / (-b s + d)
ExtRational phi(const IntMat2& M, const ExtRational& s)
{
    return ExtRational(M.a * s.num() - M.c * s.den(), -M.b * s.num() + M.d * s.den());
}

Slope phi(const IntMat2& M, const Slope& s) { return s.is_odot() ? s : Slope(phi(M, s.value())); }

}  // namespace

TEST_CASE("f0 slope values")
{
    Presentation f0 = corpus("f0.net");
    CHECK(slope_invariants(f0, q(-1, 2)).image == Slope(q(1, 1)));
    CHECK(slope_invariants(f0, q(-1, 1)).image == Slope(q(0, 1)));
    CHECK(slope_invariants(f0, q(1, 1)).image == Slope(q(2, 1)));
    PullbackResult inf = slope_invariants(f0, kInf);
    CHECK(inf.image == Slope(kInf));
    CHECK(inf.delta == 1);

    auto comps = preimage_components(f0, q(-1, 2));
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].kind == ComponentKind::Peripheral);
    CHECK(comps[1].kind == ComponentKind::Essential);
    CHECK(*comps[1].slope == q(1, 1));
    PullbackResult half = slope_invariants(f0, q(-1, 2));
    CHECK(half.c == 1);
    CHECK(half.d == 1);
    CHECK(half.delta == 1);
}

TEST_CASE("rabbit slope values")
{
    Presentation r = corpus("rabbit.net");
    PullbackResult a = slope_invariants(r, q(0, 1)), b = slope_invariants(r, q(1, 1)), c = slope_invariants(r, kInf);
    CHECK(a.image == Slope(q(1, 1)));
    CHECK(b.image == Slope(kInf));
    CHECK(c.image == Slope(q(0, 1)));
    CHECK(a.d * b.d * c.d == 4);
    auto comps = preimage_components(r, q(0, 1));
    CHECK(std::count_if(comps.begin(), comps.end(), [](const auto& x) { return x.kind == ComponentKind::Essential; }) == 1);
}

TEST_CASE("Lattès map fixes every slope")
{
    Presentation L = corpus("lattes22.net");
    for (const auto& s : testsupport::small_slopes(6)) {
        PullbackResult r = slope_invariants(L, s);
        CHECK(r.image == Slope(s));
        CHECK(r.delta == 1);
    }
}

TEST_CASE("slope input")
{
    CHECK(parse_slope("-1/2") == q(-1, 2));
    CHECK(parse_slope("inf").is_infinite());
    CHECK_THROWS_WITH_AS(parse_slope("2/4"), doctest::Contains("not reduced"), DomainError);
    CHECK_THROWS_AS(parse_slope("1/x"), DomainError);
}

TEST_CASE("boundary dictionary")
{
    CHECK(boundary_point(q(1, 2)) == q(-2, 1));
    CHECK(boundary_point(kInf) == q(0, 1));
    CHECK(boundary_point(q(0, 1)).is_infinite());
    CHECK_FALSE(boundary_point(Slope::odot()).has_value());
    for (const auto& s : testsupport::small_slopes(7)) CHECK(slope_from_boundary(boundary_point(s)) == s);
    // μ(-1) = 0 for f0 reads σ(1) = ∞ on the boundary.
    Presentation f0 = corpus("f0.net");
    CHECK(boundary_point(q(-1, 1)) == q(1, 1));
    CHECK(boundary_point(slope_invariants(f0, q(-1, 1)).image)->is_infinite());
}

TEST_CASE("component degrees sum to the degree")
{
    std::mt19937_64 rng(101);
    int cases = 0;
    for (int i = 0; i < 40; ++i) {
        Presentation P = testsupport::random_presentation(rng);
        for (const auto& s : testsupport::small_slopes(3)) {
            auto comps = preimage_components(P, s);
            std::int64_t sum = 0;
            for (const auto& c : comps) sum += c.degree;
            CHECK(sum == P.degree());
            PullbackResult r = slope_invariants(P, s);
            CHECK((r.image.is_odot() ? r.c == 0 && r.delta == 0 : r.c > 0));
            ++cases;
        }
    }
    CHECK(cases >= 100);
}

TEST_CASE("c and d depend only on the residue mod 2Λ1")
{
    std::mt19937_64 rng(103);
    std::uniform_int_distribution<long> e(-12, 12), k(-3, 3);
    for (const char* name : {"rabbit.net", "f0.net"}) {
        Presentation P = corpus(name);
        int done = 0;
        while (done < 200) {
            long qq = e(rng), pp = e(rng);
            if (std::gcd(qq, pp) != 1) continue;
            Vec2 shift = 2 * (k(rng) * P.lambda1 + k(rng) * P.lambda2);
            long q2 = qq + shift.x, p2 = pp + shift.y;
            if (std::gcd(q2, p2) != 1) continue;
            PullbackResult a = slope_invariants(P, ExtRational(pp, qq)), b = slope_invariants(P, ExtRational(p2, q2));
            CAPTURE(name);
            CAPTURE(pp);
            CAPTURE(qq);
            CHECK(a.c == b.c);
            CHECK(a.d == b.d);
            ++done;
        }
    }
}

TEST_CASE("translation term does not matter")
{
    std::mt19937_64 rng(107);
    int cases = 0;
    for (int i = 0; i < 12; ++i) {
        Presentation P = testsupport::random_presentation(rng);
        for (const auto& s : testsupport::small_slopes(3)) {
            PullbackResult base = slope_invariants(P, s);
            for (int t = 0; t < 4; ++t) {
                Presentation Q = P;
                Q.translation = static_cast<LatticeClass>(t);
                CHECK(slope_invariants(Q, s) == base);
            }
            ++cases;
        }
    }
    CHECK(cases >= 100);
}

TEST_CASE("offset does not matter")
{
    std::mt19937_64 rng(109);
    for (int i = 0; i < 10; ++i) {
        Presentation P = testsupport::random_presentation(rng);
        for (const auto& s : testsupport::small_slopes(3)) {
            PullbackResult base = slope_invariants(P, s);
            for (Rational off : {Rational(1, 3), Rational(1, 7), Rational(2, 3), Rational(5, 6), Rational(99, 100)})
                CHECK(slope_invariants(P, s, {off}) == base);
        }
    }
    CHECK_THROWS_AS(slope_invariants(corpus("f0.net"), kInf, {Rational(1)}), DomainError);
}

TEST_CASE("postcomposition equivariance")
{
    std::mt19937_64 rng(113);
    int cases = 0;
    for (int i = 0; i < 20; ++i) {
        Presentation P = i < 2 ? corpus(i == 0 ? "rabbit.net" : "f0.net") : testsupport::random_presentation(rng);
        IntMat2 M = testsupport::random_sl2(rng);
        Presentation Q = change_basis(P, M);
        for (const auto& s : testsupport::small_slopes(2)) {
            PullbackResult a = slope_invariants(P, s), b = slope_invariants(Q, s);
            CHECK(b.image == phi(M, a.image));
            CHECK(b.c == a.c);
            CHECK(b.d == a.d);
            ++cases;
        }
    }
    CHECK(cases >= 100);
}

TEST_CASE("transforming the diagram precomposes the slope map")
{
    std::mt19937_64 rng(127);
    for (int i = 0; i < 10; ++i) {
        Presentation P = i == 0 ? corpus("rabbit.net") : testsupport::random_presentation(rng);
        IntMat2 M = testsupport::random_sl2(rng);
        Presentation T = transform(P, M);
        for (const auto& s : testsupport::small_slopes(2)) {
            PullbackResult a = slope_invariants(P, s), b = slope_invariants(T, phi(M.adjugate(), s));
            CHECK(b == a);
        }
    }
}

TEST_CASE("a bent arc homotopic to a straight one gives the same slope function")
{
    // Each bend stays inside a lattice-free triangle next to the straight arc.
    for (const char* name : {"rabbit.net", "f0.net"}) {
        Presentation P = corpus(name);
        Presentation B = P;
        int bent = 0;
        for (auto& a : B.arcs) {
            Vec2 s = P.class_point(a.start), d = a.end - s;
            if (d == Vec2{}) continue;
            // Bend at the midpoint of s and e + u: the triangle s, e, e + u is unimodular.
            Vec2 u = std::llabs(d.x) == 1 ? Vec2{0, 1} : Vec2{1, 0};
            if (std::llabs(d.x * u.y - d.y * u.x) != 1) continue;
            a.via2 = {2 * s + d + u};
            ++bent;
        }
        CHECK(bent > 0);
        CAPTURE(B.str());
        REQUIRE(validate(B).valid);
        CHECK(parse_presentation(B.str()) == B);
        for (const auto& s : testsupport::small_slopes(6)) CHECK(slope_invariants(B, s) == slope_invariants(P, s));
    }
}
