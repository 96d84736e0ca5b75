#include "netmap/dynamics.hpp"

#include "netmap/parallel.hpp"
#include "netmap/pullback.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace netmap {

std::string to_string(OrbitEnd e)
{
    switch (e) {
    case OrbitEnd::Absorbed: return "absorbed";
    case OrbitEnd::Cycle: return "cycle";
    case OrbitEnd::CapReached: return "cap-reached";
    }
    return "?";
}

OrbitReport orbit(const Presentation& P, const ExtRational& s, int cap)
{
    OrbitReport R;
    R.seed = s;
    R.orbit.push_back(Slope(s));
    std::map<ExtRational, int> seen{{s, 0}};
    ExtRational cur = s;
    for (int step = 0; step < cap; ++step) {
        Slope next = slope_invariants(P, cur).image;
        if (next.is_odot()) {
            R.orbit.push_back(next);
            R.end = OrbitEnd::Absorbed;
            return R;
        }
        cur = next.value();
        auto [it, fresh] = seen.emplace(cur, static_cast<int>(R.orbit.size()));
        if (!fresh) {
            R.end = OrbitEnd::Cycle;
            R.phase = it->second;
            R.period = static_cast<int>(R.orbit.size()) - it->second;
            return R;
        }
        R.orbit.push_back(next);
    }
    R.end = OrbitEnd::CapReached;
    return R;
}

std::string OrbitReport::json() const
{
    nlohmann::ordered_json j;
    j["seed"] = seed.str();
    std::vector<std::string> o;
    for (const auto& s : orbit) o.push_back(s.str());
    j["orbit"] = o;
    j["terminal"] = to_string(end);
    if (end == OrbitEnd::Cycle) {
        j["period"] = period;
        j["phase"] = phase;
    }
    return j.dump(2);
}

AttractorReport attractor_scan(const Presentation& P, int height, int cap, unsigned threads)
{
    if (cap <= 0) cap = 10 * height;
    if (threads == 0) threads = thread_count();
    std::vector<ExtRational> seeds;
    for (long q = 0; q <= height; ++q)
        for (long p = -height; p <= height; ++p)
            if (std::gcd(p, q) == 1 && !(q == 0 && p != 1)) seeds.emplace_back(p, q);

    std::vector<OrbitReport> reports(seeds.size());
    parallel_for(seeds.size(), threads, [&](std::size_t i) { reports[i] = orbit(P, seeds[i], cap); });

    AttractorReport A;
    A.seeds_scanned = seeds.size();
    std::set<std::vector<ExtRational>> cycles;
    for (const auto& r : reports) {
        switch (r.end) {
        case OrbitEnd::Absorbed: ++A.absorbed; break;
        case OrbitEnd::CapReached: A.unresolved.push_back(r.seed); break;
        case OrbitEnd::Cycle: {
            std::vector<ExtRational> c;
            for (std::size_t i = static_cast<std::size_t>(r.phase); i < r.orbit.size(); ++i) c.push_back(r.orbit[i].value());
            std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
            cycles.insert(c);
            break;
        }
        }
    }
    std::sort(A.unresolved.begin(), A.unresolved.end());
    for (const auto& c : cycles) {
        CycleReport cr{c, {}, 1};
        for (const auto& s : c) {
            cr.degrees.push_back(slope_invariants(P, s).d);
            cr.degree_product *= cr.degrees.back();
        }
        A.cycles.push_back(cr);
    }
    return A;
}

std::string AttractorReport::json() const
{
    nlohmann::ordered_json j;
    nlohmann::ordered_json cs = nlohmann::ordered_json::array();
    for (const auto& c : cycles) {
        nlohmann::ordered_json x;
        std::vector<std::string> s;
        for (const auto& v : c.slopes) s.push_back(v.str());
        x["slopes"] = s;
        x["degrees"] = c.degrees;
        x["degree_product"] = c.degree_product;
        cs.push_back(x);
    }
    j["cycles"] = cs;
    j["seeds_scanned"] = seeds_scanned;
    j["absorbed"] = absorbed;
    std::vector<std::string> u;
    for (const auto& s : unresolved) u.push_back(s.str());
    j["unresolved"] = u;
    return j.dump(2);
}

}  // namespace netmap
