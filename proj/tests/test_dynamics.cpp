#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "netmap/dynamics.hpp"
#include "netmap/pullback.hpp"
#include "support.hpp"

using namespace netmap;
using testsupport::corpus;

namespace {

ExtRational q(long a, long b) { return ExtRational(a, b); }
const ExtRational kInf = ExtRational::infinity();

}  // namespace

TEST_CASE("rabbit orbit of 0")
{
    OrbitReport R = orbit(corpus("rabbit.net"), q(0, 1), 20);
    CHECK(R.end == OrbitEnd::Cycle);
    CHECK(R.period == 3);
    CHECK(R.phase == 0);
    CHECK(R.orbit == std::vector<Slope>{Slope(q(0, 1)), Slope(q(1, 1)), Slope(kInf)});
}

TEST_CASE("f0 fixes infinity")
{
    OrbitReport R = orbit(corpus("f0.net"), kInf, 5);
    CHECK(R.end == OrbitEnd::Cycle);
    CHECK(R.period == 1);
    CHECK(R.orbit.size() == 1);
}

TEST_CASE("absorbed orbits end at odot")
{
    Presentation r = corpus("rabbit.net");
    int seen = 0;
    for (const auto& s : testsupport::small_slopes(6)) {
        if (!slope_invariants(r, s).image.is_odot()) continue;
        OrbitReport R = orbit(r, s, 10);
        CHECK(R.end == OrbitEnd::Absorbed);
        CHECK(R.orbit.size() == 2);
        CHECK(R.orbit.back().is_odot());
        ++seen;
    }
    CHECK(seen > 0);
}

TEST_CASE("cap is honoured")
{
    OrbitReport R = orbit(corpus("rabbit.net"), q(0, 1), 1);
    CHECK(R.end == OrbitEnd::CapReached);
    CHECK(R.orbit.size() == 2);
    CHECK(orbit(corpus("rabbit.net"), q(0, 1), 0).orbit.size() == 1);
}

TEST_CASE("rabbit attractor at height 20")
{
    AttractorReport A = attractor_scan(corpus("rabbit.net"), 20);
    REQUIRE(A.cycles.size() == 1);
    CHECK(A.cycles[0].slopes == std::vector<ExtRational>{q(0, 1), q(1, 1), kInf});
    CHECK(A.cycles[0].degree_product == 4);
    CHECK(A.unresolved.empty());
}

TEST_CASE("f0 attractor at height 20")
{
    AttractorReport A = attractor_scan(corpus("f0.net"), 20);
    REQUIRE(A.cycles.size() == 1);
    CHECK(A.cycles[0].slopes == std::vector<ExtRational>{kInf});
    CHECK(A.unresolved.empty());
}

TEST_CASE("cycle members return their cycle")
{
    Presentation r = corpus("rabbit.net");
    for (const auto& c : attractor_scan(r, 8).cycles)
        for (const auto& s : c.slopes) {
            OrbitReport R = orbit(r, s, 20);
            CHECK(R.end == OrbitEnd::Cycle);
            CHECK(R.phase == 0);
            CHECK(static_cast<std::size_t>(R.period) == c.slopes.size());
        }
}

TEST_CASE("scans grow with height and ignore thread count")
{
    Presentation P = corpus("extended.net");
    AttractorReport small = attractor_scan(P, 6, 0, 1);
    AttractorReport big = attractor_scan(P, 12, 0, 1);
    for (const auto& c : small.cycles) {
        bool found = false;
        for (const auto& d : big.cycles) found = found || d.slopes == c.slopes;
        CHECK(found);
    }
    CHECK(attractor_scan(P, 12, 0, 4).json() == big.json());
    CHECK(attractor_scan(corpus("rabbit.net"), 10, 0, 3).json() == attractor_scan(corpus("rabbit.net"), 10, 0, 1).json());
}

TEST_CASE("one critical postcritical point gives a small attractor")
{
    Presentation P = corpus("onecrit.net");
    CHECK(P.degree() == 2);
    CHECK(hurwitz_structure_set(P).critical_count() == 1);
    AttractorReport A = attractor_scan(P, 20);
    std::size_t total = 0;
    for (const auto& c : A.cycles) total += c.slopes.size();
    CHECK(total <= 4);
    CHECK(A.unresolved.empty());
}
