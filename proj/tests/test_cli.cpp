#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "netmap/cli.hpp"
#include "netmap/svg.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace netmap;
using nlohmann::json;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
    json j() const { return json::parse(out); }
};

Run run(std::vector<std::string> args)
{
    std::ostringstream o, e;
    Run r;
    r.code = run_cli(args, o, e);
    r.out = o.str();
    r.err = e.str();
    return r;
}

std::string corpus(const std::string& name) { return std::string(NETMAP_CORPUS_DIR) + "/" + name; }

std::filesystem::path scratch(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / "netmap_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("slope subcommand")
{
    Run r = run({"slope", corpus("rabbit.net"), "0/1"});
    CHECK(r.code == kOk);
    CHECK(r.j()["image"] == "1/1");
    CHECK(run({"slope", corpus("f0.net"), "inf"}).j()["image"] == "∞");
    CHECK(run({"slope", corpus("f0.net"), "-1/2"}).j()["image"] == "1/1");
}

TEST_CASE("decide exit codes")
{
    Run rabbit = run({"decide", corpus("rabbit.net")});
    CHECK(rabbit.code == kOk);
    CHECK(rabbit.j()["verdict"] == "Rational");
    Run f0 = run({"decide", corpus("f0.net")});
    CHECK(f0.code == kOk);
    CHECK(f0.j()["verdict"] == "Obstructed");
    CHECK(f0.j()["obstruction"] == "∞");
    Run ext = run({"decide", corpus("extended.net"), "--no-extended", "--depth", "8"});
    CHECK(ext.code == kUndecided);
    CHECK(ext.j()["verdict"] == "Undecided");
    CHECK(run({"decide", corpus("extended.net"), "--depth", "8"}).code == kOk);
    CHECK(run({"decide", corpus("lattes22.net")}).j()["verdict"] == "Euclidean-unsupported");
}

TEST_CASE("usage and domain errors")
{
    CHECK(run({}).code == kUsage);
    CHECK(run({"frobnicate"}).code == kUsage);
    CHECK(run({"slope", corpus("rabbit.net")}).code == kUsage);
    CHECK(run({"decide", corpus("rabbit.net"), "--bogus"}).code == kUsage);
    CHECK(run({"slopes", corpus("rabbit.net"), "--format", "xml"}).code == kUsage);
    CHECK(run({"--help"}).code == kOk);
    CHECK(run({"slope", corpus("rabbit.net"), "2/4"}).code == kDomainError);
    CHECK(run({"slope", corpus("missing.net"), "1"}).code == kDomainError);
    CHECK(run({"catalog", "2", "3"}).code == kDomainError);

    auto bad = scratch("bad.net");
    std::ofstream(bad) << "lambda1 2 0\nlambda2 0 1\ntranslation 0\narc 0 -> 1 1\narc l1 -> 1 0\narc l2 -> 0 1\narc l1+l2 -> 2 1\n";
    Run v = run({"validate", bad.string()});
    CHECK(v.code == kDomainError);
    CHECK(v.j()["valid"] == false);
    CHECK(run({"validate", corpus("rabbit.net")}).code == kOk);
}

TEST_CASE("out option writes the report to a file")
{
    auto path = scratch("slope.json");
    std::filesystem::remove(path);
    Run r = run({"slope", corpus("rabbit.net"), "1/1", "--out", path.string()});
    CHECK(r.code == kOk);
    CHECK(r.out.empty());
    CHECK(json::parse(slurp(path))["image"] == "∞");
}

TEST_CASE("info, delta, hs-equal and modular-curve")
{
    json info = run({"info", corpus("rabbit.net")}).j();
    CHECK(info["degree"] == 2);
    CHECK(info["dynamic_portrait"] == "a ->2 b -> c -> a; d ->2 d");
    CHECK(info["deck_group_order"] == 1);
    CHECK(info["euclidean"] == false);

    json d = run({"delta", corpus("f0.net")}).j();
    CHECK(d["deltas"] == json::array({"0", "1/2", "1"}));
    CHECK(run({"delta", corpus("constant/deg9a.hs")}).j()["deltas"] == json::array({"0"}));

    CHECK(run({"hs-equal", corpus("f0.net"), corpus("onecrit.net")}).j()["equivalent"] == true);
    CHECK(run({"hs-equal", corpus("f0.net"), corpus("rabbit.net")}).j()["equivalent"] == false);

    json c = run({"modular-curve", corpus("lattes22.net")}).j();
    CHECK(c["genus"] == 0);
    CHECK(c["cusps"] == 3);
    CHECK(c["degY"] == 1);
}

TEST_CASE("orbit and attractor")
{
    json o = run({"orbit", corpus("rabbit.net"), "0"}).j();
    CHECK(o["terminal"] == "cycle");
    CHECK(o["period"] == 3);
    json a = run({"attractor", corpus("f0.net"), "--height", "5"}).j();
    CHECK(a["cycles"].size() == 1);
}

TEST_CASE("catalog writes one file per class")
{
    auto dir = scratch("cat21");
    std::filesystem::remove_all(dir);
    Run r = run({"catalog", "2", "1", "--out", dir.string()});
    CHECK(r.code == kOk);
    json j = r.j();
    REQUIRE(j["classes"].size() == 4);
    int files = 0;
    for (const auto& e : j["classes"]) {
        bool exists = std::filesystem::exists(dir / (e["name"].get<std::string>() + ".net"));
        CHECK(exists == !e["presentation_pending"].get<bool>());
        files += exists;
    }
    CHECK(files == 3);
    CHECK(run({"validate", (dir / "21HClass2.net").string()}).code == kOk);
}

TEST_CASE("reports do not depend on the thread count")
{
    setenv("NETMAP_THREADS", "1", 1);
    Run one = run({"slopes", corpus("rabbit.net"), "--bound", "6"});
    Run att1 = run({"attractor", corpus("rabbit.net"), "--height", "6"});
    setenv("NETMAP_THREADS", "4", 1);
    Run four = run({"slopes", corpus("rabbit.net"), "--bound", "6"});
    Run att4 = run({"attractor", corpus("rabbit.net"), "--height", "6"});
    unsetenv("NETMAP_THREADS");
    CHECK(one.out == four.out);
    CHECK(att1.out == att4.out);
}

TEST_CASE("svg output")
{
    Run g = run({"slopes", corpus("rabbit.net"), "--bound", "8", "--format", "svg"});
    CHECK(g.code == kOk);
    CHECK(g.out.rfind("<svg", 0) == 0);
    CHECK(g.out.find("<circle") != std::string::npos);
    CHECK(g.out == run({"slopes", corpus("rabbit.net"), "--bound", "8", "--format", "svg"}).out);

    Run h = run({"halfspaces", corpus("rabbit.net"), "--bound", "5", "--format", "svg"});
    CHECK(h.code == kOk);
    CHECK(h.out.find("<path") != std::string::npos);
    json hj = run({"halfspaces", corpus("rabbit.net"), "--bound", "5"}).j();
    CHECK_FALSE(hj["halfspaces"].empty());

    std::string empty = slope_graph_svg({});
    CHECK(empty.find("<line") != std::string::npos);
    CHECK(empty.find("<circle") == std::string::npos);
    CHECK(empty.find("</svg>") != std::string::npos);
    CHECK(halfspace_svg({}).find("<path") == std::string::npos);
}
