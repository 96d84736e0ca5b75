#include "netmap/cli.hpp"

#include "netmap/dynamics.hpp"
#include "netmap/halfspace.hpp"
#include "netmap/hurwitz.hpp"
#include "netmap/modcurve.hpp"
#include "netmap/parallel.hpp"
#include "netmap/pullback.hpp"
#include "netmap/svg.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

namespace netmap {

namespace {

using Json = nlohmann::ordered_json;

std::string rat_str(const Rational& r)
{
    std::ostringstream s;
    s << r;
    return s.str();
}

bool ends_with(const std::string& s, const std::string& tail)
{
    return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

// A .hs file is realized by a virtual presentation.
Presentation load_any(const std::string& path)
{
    if (!ends_with(path, ".hs")) return load_presentation(path);
    HurwitzStructureSet H = load_structure_set(path);
    auto P = realize(H);
    if (!P) throw DomainError("no presentation found for the structure set in " + path);
    return *P;
}

Presentation load_valid(const std::string& path)
{
    Presentation P = load_presentation(path);
    require_valid(P);
    return P;
}

std::vector<ExtRational> slope_box(long bound)
{
    std::vector<ExtRational> out;
    for (long q = 0; q <= bound; ++q)
        for (long p = -bound; p <= bound; ++p) {
            if (std::gcd(p, q) != 1 || (q == 0 && p != 1)) continue;
            out.emplace_back(p, q);
        }
    return out;
}

Json hs_json(const HurwitzStructureSet& H)
{
    Json j;
    j["divisors"] = {H.m, H.n};
    j["set"] = H.str();
    Json cls = Json::array();
    for (const Residue& r : H.classes) cls.push_back({r.x, r.y});
    j["classes"] = cls;
    j["critical"] = H.critical_count();
    return j;
}

struct Emitter {
    std::ostream& out;
    std::string path;

    void operator()(const std::string& text) const
    {
        if (path.empty()) {
            out << text;
            if (text.empty() || text.back() != '\n') out << '\n';
            return;
        }
        std::ofstream f(path);
        if (!f) throw DomainError("cannot write " + path);
        f << text;
        if (text.empty() || text.back() != '\n') f << '\n';
    }
    void operator()(const Json& j) const { (*this)(j.dump(2)); }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Invariants of NET map presentations", "netmap"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string out_path;
    app.add_option("--out", out_path, "Write the report to this file (a directory for catalog)");

    std::string file, file2, slope_text, format = "json";
    long bound = 10, height = 20;
    int cap = 0, depth = 10, ext_depth = 40;
    bool no_extended = false;
    std::int64_t m = 0, n = 0;

    auto* validate_cmd = app.add_subcommand("validate", "Check a presentation");
    validate_cmd->add_option("file", file)->required();

    auto* info_cmd = app.add_subcommand("info", "Degree, divisors, structure set, portraits, deck group");
    info_cmd->add_option("file", file)->required();

    auto* slope_cmd = app.add_subcommand("slope", "c, d, image and multiplier of one slope");
    slope_cmd->add_option("file", file)->required();
    slope_cmd->add_option("slope", slope_text, "p/q, or inf")->required();

    auto* slopes_cmd = app.add_subcommand("slopes", "Slope table for |p| <= bound, 0 <= q <= bound");
    slopes_cmd->add_option("file", file)->required();
    slopes_cmd->add_option("--bound", bound)->check(CLI::PositiveNumber);
    slopes_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "svg"}));

    auto* orbit_cmd = app.add_subcommand("orbit", "Orbit of a slope under the slope function");
    orbit_cmd->add_option("file", file)->required();
    orbit_cmd->add_option("slope", slope_text)->required();
    orbit_cmd->add_option("--cap", cap, "Maximum orbit length (default 100)")->check(CLI::PositiveNumber);

    auto* attractor_cmd = app.add_subcommand("attractor", "Cycles reached from seeds with |p|, |q| <= height");
    attractor_cmd->add_option("file", file)->required();
    attractor_cmd->add_option("--height", height)->check(CLI::PositiveNumber);
    attractor_cmd->add_option("--cap", cap, "Orbit cap (default 10 height)")->check(CLI::PositiveNumber);

    auto* decide_cmd = app.add_subcommand("decide", "Rationality decision");
    decide_cmd->add_option("file", file)->required();
    decide_cmd->add_option("--depth", depth, "Stern-Brocot depth")->check(CLI::PositiveNumber);
    decide_cmd->add_option("--extension-depth", ext_depth)->check(CLI::PositiveNumber);
    decide_cmd->add_flag("--no-extended", no_extended, "Half-space intervals only");

    auto* hs_cmd = app.add_subcommand("halfspaces", "Half-space intervals for |p|, |q| <= bound");
    hs_cmd->add_option("file", file)->required();
    hs_cmd->add_option("--bound", bound)->check(CLI::PositiveNumber);
    hs_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "svg"}));

    auto* delta_cmd = app.add_subcommand("delta", "Multiplier image of the impure class");
    delta_cmd->add_option("file", file, ".net presentation or .hs structure set")->required();

    auto* eq_cmd = app.add_subcommand("hs-equal", "Compare structure sets");
    eq_cmd->add_option("file1", file)->required();
    eq_cmd->add_option("file2", file2)->required();

    auto* catalog_cmd = app.add_subcommand("catalog", "One virtual presentation per impure class");
    catalog_cmd->add_option("m", m)->required()->check(CLI::PositiveNumber);
    catalog_cmd->add_option("n", n)->required()->check(CLI::PositiveNumber);

    auto* curve_cmd = app.add_subcommand("modular-curve", "Index, elliptic points, cusps, genus, deg Y");
    curve_cmd->add_option("file", file, ".net presentation or .hs structure set")->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "netmap: " << e.what() << "\n" << app.help();
        return kUsage;
    }

    const Emitter emit{out, catalog_cmd->parsed() ? std::string() : out_path};
    try {
        if (validate_cmd->parsed()) {
            ValidationReport R = validate(load_presentation(file));
            emit(R.json());
            return R.valid ? kOk : kDomainError;
        }
        if (info_cmd->parsed()) {
            Presentation P = load_valid(file);
            auto [dm, dn] = elementary_divisors(P);
            Portraits pt = portraits(P);
            Json j;
            j["degree"] = P.degree();
            j["divisors"] = {dm, dn};
            j["hurwitz_structure_set"] = hs_json(hurwitz_structure_set(P));
            j["euclidean"] = is_euclidean(P);
            j["dynamic_portrait"] = pt.dynamic.str();
            Json stat = Json::array();
            for (const auto& e : pt.static_portrait.edges)
                stat.push_back(pt.static_portrait.domain[e.from].label + (e.local_degree == 2 ? " ->2 " : " -> ") +
                               pt.static_portrait.codomain[e.to].label);
            j["static_portrait"] = stat;
            j["branch_data"] = pt.branch_data;
            j["deck_group_order"] = deck_group_order(P);
            emit(j);
            return kOk;
        }
        if (slope_cmd->parsed()) {
            Presentation P = load_valid(file);
            ExtRational s = parse_slope(slope_text);
            PullbackResult r = slope_invariants(P, s);
            Json j;
            j["slope"] = s.str();
            j["image"] = r.image.str();
            j["c"] = r.c;
            j["d"] = r.d;
            j["delta"] = rat_str(r.delta);
            j["boundary_point"] = boundary_point(s).str();
            emit(j);
            return kOk;
        }
        if (slopes_cmd->parsed() || hs_cmd->parsed()) {
            Presentation P = load_valid(file);
            const std::vector<ExtRational> S = slope_box(bound);
            std::vector<PullbackResult> R(S.size());
            parallel_for(S.size(), thread_count(), [&](std::size_t i) { R[i] = slope_invariants(P, S[i]); });
            if (slopes_cmd->parsed()) {
                if (format == "svg") {
                    std::vector<std::pair<ExtRational, Slope>> pts;
                    for (std::size_t i = 0; i < S.size(); ++i) pts.push_back({S[i], R[i].image});
                    emit(slope_graph_svg(pts));
                    return kOk;
                }
                Json rows = Json::array();
                for (std::size_t i = 0; i < S.size(); ++i)
                    rows.push_back({{"slope", S[i].str()}, {"image", R[i].image.str()}, {"c", R[i].c}, {"d", R[i].d}, {"delta", rat_str(R[i].delta)}});
                emit(Json{{"bound", bound}, {"slopes", rows}});
                return kOk;
            }
            std::vector<BoundaryInterval> Js;
            Json rows = Json::array();
            for (std::size_t i = 0; i < S.size(); ++i) {
                if (R[i].image.is_odot() || R[i].c == 0 || R[i].image.value() == S[i]) continue;
                BoundaryInterval J = excluded_interval(boundary_point(S[i]), boundary_point(R[i].image.value()), R[i].delta);
                Js.push_back(J);
                rows.push_back({{"seed", S[i].str()}, {"image", R[i].image.str()}, {"delta", rat_str(R[i].delta)}, {"interval", {J.from().str(), J.to().str()}}});
            }
            if (format == "svg") {
                emit(halfspace_svg(Js));
                return kOk;
            }
            emit(Json{{"bound", bound}, {"halfspaces", rows}});
            return kOk;
        }
        if (orbit_cmd->parsed()) {
            Presentation P = load_valid(file);
            emit(orbit(P, parse_slope(slope_text), cap ? cap : 100).json());
            return kOk;
        }
        if (attractor_cmd->parsed()) {
            Presentation P = load_valid(file);
            emit(attractor_scan(P, static_cast<int>(height), cap).json());
            return kOk;
        }
        if (decide_cmd->parsed()) {
            Presentation P = load_valid(file);
            DecideOptions opt;
            opt.farey_depth = depth;
            opt.extension_depth = ext_depth;
            opt.use_extended = !no_extended;
            Decision D = decide_rationality(P, opt);
            emit(D.json());
            return D.verdict == Verdict::Undecided ? kUndecided : kOk;
        }
        if (delta_cmd->parsed()) {
            emit(multiplier_image(load_any(file)).json());
            return kOk;
        }
        if (eq_cmd->parsed()) {
            auto hs_of = [](const std::string& path) {
                return ends_with(path, ".hs") ? load_structure_set(path) : hurwitz_structure_set(load_valid(path));
            };
            HurwitzStructureSet A = hs_of(file), B = hs_of(file2);
            emit(Json{{"equivalent", hs_equivalent(A, B)}, {"first", hs_json(A)}, {"second", hs_json(B)}});
            return kOk;
        }
        if (catalog_cmd->parsed()) {
            auto C = catalog(m, n);
            if (!out_path.empty()) std::filesystem::create_directories(out_path);
            Json rows = Json::array();
            for (const auto& e : C) {
                Json r = {{"name", e.name}, {"structure_set", hs_json(e.hs)}, {"valid", e.valid}, {"presentation_pending", !e.presentation}};
                if (e.presentation) {
                    r["presentation"] = e.presentation->str();
                    if (!out_path.empty()) {
                        std::ofstream f(std::filesystem::path(out_path) / (e.name + ".net"));
                        if (!f) throw DomainError("cannot write into " + out_path);
                        f << "# " << e.hs.str() << "\n" << e.presentation->str();
                    }
                }
                rows.push_back(r);
            }
            out << Json{{"divisors", {m, n}}, {"classes", rows}}.dump(2) << "\n";
            return kOk;
        }
        if (curve_cmd->parsed()) {
            CurveInvariants c = ends_with(file, ".hs") ? curve_invariants(liftable_cosets(load_structure_set(file)))
                                                       : curve_invariants(load_presentation(file));
            emit(Json::parse(c.json()));
            return kOk;
        }
    } catch (const DomainError& e) {
        err << "netmap: " << e.what() << "\n";
        return kDomainError;
    } catch (const std::exception& e) {
        err << "netmap: internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kUsage;
}

}  // namespace netmap
