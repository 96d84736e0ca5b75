#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "netmap/halfspace.hpp"
#include "support.hpp"

#include <random>

using namespace netmap;
using testsupport::corpus;

namespace {

ExtRational q(long a, long b) { return ExtRational(a, b); }
const ExtRational kInf = ExtRational::infinity();

}  // namespace

TEST_CASE("square root lower bound")
{
    CHECK(sqrt_lower_bound(Rational(1, 4)) == Rational(1, 2));
    CHECK(sqrt_lower_bound(Rational(0)) == 0);
    Rational r = sqrt_lower_bound(Rational(1, 2));
    CHECK(r * r <= Rational(1, 2));
    Rational step = Rational(1, 1 << 20);
    CHECK((r + step) * (r + step) > Rational(1, 2));
    CHECK_THROWS_AS(sqrt_lower_bound(Rational(-1)), DomainError);
}

TEST_CASE("half-space interval examples")
{
    CHECK(excluded_interval_rho(q(2, 1), q(0, 1), 1) == BoundaryInterval(q(1, 1), kInf));
    CHECK(excluded_interval_rho(q(1, 1), q(0, 1), Rational(1, 2)) == BoundaryInterval(q(2, 3), q(2, 1)));
    CHECK(excluded_interval(q(1, 1), q(0, 1), Rational(1, 4)) == BoundaryInterval(q(2, 3), q(2, 1)));
    // rho > 1 wraps through ∞ and still avoids the image.
    BoundaryInterval J = excluded_interval_rho(q(1, 1), q(0, 1), 2);
    CHECK(J.contains(kInf));
    CHECK_FALSE(J.contains(q(0, 1)));
    CHECK_THROWS_AS(excluded_interval_rho(q(1, 1), q(1, 1), Rational(1, 2)), DomainError);
    CHECK_THROWS_AS(excluded_interval_rho(q(1, 1), q(0, 1), 0), DomainError);
}

TEST_CASE("half-space intervals are chart independent and monotone")
{
    std::mt19937_64 rng(5);
    auto slopes = testsupport::small_slopes(5);
    std::uniform_int_distribution<std::size_t> pick(0, slopes.size() - 1);
    for (int i = 0; i < 200; ++i) {
        ExtRational a = slopes[pick(rng)], b = slopes[pick(rng)];
        if (a == b) continue;
        Rational rho(1 + static_cast<int>(rng() % 7), 4);
        IntMat2 M = testsupport::random_sl2(rng);
        BoundaryInterval J = excluded_interval_rho(a, b, rho);
        BoundaryInterval JM = excluded_interval_rho(moebius_standard(M, a), moebius_standard(M, b), rho);
        CHECK(JM == BoundaryInterval(moebius_standard(M, J.from()), moebius_standard(M, J.to())));
        BoundaryInterval Jsmall = excluded_interval_rho(a, b, rho / 2);
        CHECK(J.contains(Jsmall.from()));
        CHECK(J.contains(Jsmall.to()));
    }
}

TEST_CASE("Stern-Brocot enumeration")
{
    auto s = stern_brocot_slopes(2);
    CHECK(s == std::vector<ExtRational>{kInf, q(0, 1), q(-1, 1), q(1, 1), q(-2, 1), q(-1, 2), q(1, 2), q(2, 1)});
    CHECK(stern_brocot_slopes(10).size() == 2 + 2046);
}

TEST_CASE("half-space intervals contain no obstruction")
{
    for (const char* name : {"f0.net", "rabbit.net"}) {
        CAPTURE(name);
        Presentation P = corpus(name);
        auto obs = obstruction_slopes(P, 50);
        for (const auto& s : testsupport::small_slopes(8)) {
            PullbackResult r = slope_invariants(P, s);
            if (r.image.is_odot() || r.image.value() == s) continue;
            BoundaryInterval J = excluded_interval(boundary_point(s), boundary_point(r.image.value()), r.delta);
            CHECK(J.contains(boundary_point(s)));
            CHECK(oracle_violations(obs, J).empty());
        }
    }
}

TEST_CASE("f0 is obstructed by the slope at infinity")
{
    Presentation f0 = corpus("f0.net");
    auto obs = obstruction_slopes(f0, 10);
    CHECK(std::find(obs.begin(), obs.end(), kInf) != obs.end());
    Decision D = decide_rationality(f0);
    CHECK(D.verdict == Verdict::Obstructed);
    REQUIRE(D.obstruction);
    CHECK(*D.obstruction == kInf);
    CHECK(D.obstruction_delta == 1);
    CHECK_THROWS_AS(extended_excluded_neighborhood(f0, boundary_point(kInf), 10), DomainError);
}

TEST_CASE("rabbit is rational with a short certificate")
{
    Presentation r = corpus("rabbit.net");
    Decision D = decide_rationality(r);
    CHECK(D.verdict == Verdict::Rational);
    CHECK(D.certificates.size() <= 10);
    IntervalCover cover;
    for (const auto& c : D.certificates) cover.subtract(c.interval);
    CHECK(cover.only_points_left());
    auto obs = obstruction_slopes(r, 50);
    CHECK(obs.empty());
    for (const auto& a : cover.complement()) {
        PullbackResult pr = slope_invariants(r, slope_from_boundary(a.from));
        CHECK_FALSE((!pr.image.is_odot() && pr.image.value() == slope_from_boundary(a.from) && pr.delta >= 1));
    }
    CHECK(D.json().find("\"verdict\": \"Rational\"") != std::string::npos);
}

TEST_CASE("decider is stable under more depth")
{
    Presentation r = corpus("rabbit.net");
    Decision a = decide_rationality(r, {6, 40, true});
    Decision b = decide_rationality(r, {9, 40, true});
    if (a.verdict == Verdict::Rational) CHECK(b.verdict == Verdict::Rational);
}

TEST_CASE("Euclidean maps are refused")
{
    CHECK(decide_rationality(corpus("lattes22.net")).verdict == Verdict::EuclideanUnsupported);
}

TEST_CASE("extended neighborhoods predict the translated seeds")
{
    std::mt19937_64 rng(11);
    int checked = 0;
    for (int i = 0; i < 60 && checked < 10; ++i) {
        Presentation P = testsupport::random_presentation(rng, 3);
        for (const auto& s : testsupport::small_slopes(2)) {
            PullbackResult r = slope_invariants(P, s);
            bool fixed = !r.image.is_odot() && r.image.value() == s;
            if (fixed && r.delta >= 1) continue;
            if (!fixed && !r.image.is_odot()) continue;
            auto nb = extended_excluded_neighborhood(P, boundary_point(s), 20);
            if (!nb) continue;
            ++checked;
            CHECK(nb->left.to() == boundary_point(s));
            CHECK(nb->right.from() == boundary_point(s));
            for (const auto& c : nb->certificates) {
                CAPTURE(P.str());
                CAPTURE(s.str());
                CAPTURE(c.seed.str());
                PullbackResult cr = slope_invariants(P, c.seed);
                CHECK(cr.image == c.image);
                CHECK(cr.delta == c.delta);
                CHECK(c.interval.contains(boundary_point(c.seed)));
                CHECK(oracle_violations(obstruction_slopes(P, 12), c.interval).empty());
            }
        }
    }
    CHECK(checked > 0);
}
