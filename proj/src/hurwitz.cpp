#include "netmap/hurwitz.hpp"

#include "netmap/parallel.hpp"
#include "netmap/pullback.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <fstream>
#include <sstream>

namespace netmap {

namespace {

std::array<Residue, 4> two_torsion(std::int64_t m, std::int64_t n) { return {Residue{0, 0}, {m, 0}, {0, n}, {m, n}}; }

std::array<Residue, 4> image(const LatticeQuotient& Q, const std::array<Residue, 4>& cls, const IntMat2& M, Residue t)
{
    std::array<Residue, 4> out;
    for (std::size_t i = 0; i < 4; ++i) out[i] = Q.pm(Q.add(Q.apply(M, cls[i]), t));
    std::sort(out.begin(), out.end());
    return out;
}

std::set<Residue> full_set(const LatticeQuotient& Q, const std::array<Residue, 4>& cls)
{
    std::set<Residue> s;
    for (const auto& r : cls) {
        s.insert(Q.reduce(r));
        s.insert(Q.neg(r));
    }
    return s;
}

std::string rat_str(const Rational& r)
{
    std::ostringstream os;
    os << r;
    return os.str();
}

}  // namespace

HurwitzStructureSet parse_structure_set(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    std::int64_t m = 0, n = 0;
    std::vector<Residue> cls;
    for (int no = 1; std::getline(in, line); ++no) {
        line = line.substr(0, line.find('#'));
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        std::int64_t a = 0, b = 0;
        std::string extra;
        if (!(ls >> a >> b) || (ls >> extra) || (key != "divisors" && key != "class"))
            throw DomainError("line " + std::to_string(no) + ": expected 'divisors <m> <n>' or 'class <x> <y>'");
        if (key == "divisors") {
            m = a;
            n = b;
        } else {
            cls.push_back({a, b});
        }
    }
    if (m <= 0 || n <= 0 || m % n != 0) throw DomainError("structure set needs 'divisors m n' with n | m");
    if (cls.size() != 4) throw DomainError("structure set needs exactly four classes");
    return HurwitzStructureSet::over_diagonal(m, n, {cls[0], cls[1], cls[2], cls[3]});
}

HurwitzStructureSet load_structure_set(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_structure_set(ss.str());
}

std::pair<std::int64_t, std::int64_t> elementary_divisors(const Presentation& P)
{
    LatticeQuotient Q(P.lattice());
    return {Q.m(), Q.n()};
}

const std::vector<IntMat2>& lattice_stabilizer(std::int64_t m, std::int64_t n)
{
    static std::mutex mu;
    static std::map<std::pair<std::int64_t, std::int64_t>, std::vector<IntMat2>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(m, n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    if (n <= 0 || m % n != 0) throw DomainError("elementary divisors need n | m");
    const std::int64_t N = 2 * m, k = m / n;
    std::vector<IntMat2> out;
    for (std::int64_t a = 0; a < N; ++a)
        for (std::int64_t b = 0; b < N; b += k)
            for (std::int64_t c = 0; c < N; ++c)
                for (std::int64_t d = 0; d < N; ++d)
                    if (pos_mod(a * d - b * c, N) == 1 % N) out.push_back({a, b, c, d});
    return cache.emplace(key, std::move(out)).first->second;
}

HurwitzStructureSet apply_affine(const HurwitzStructureSet& H, const IntMat2& M, Residue t)
{
    auto Q = LatticeQuotient::diagonal(H.m, H.n);
    if (Q.add(t, t) != Residue{0, 0}) throw DomainError("translation must have order at most 2");
    HurwitzStructureSet out = H;
    out.classes = image(Q, H.classes, M, t);
    return out;
}

std::array<Residue, 4> canonical_form(const HurwitzStructureSet& H)
{
    auto Q = LatticeQuotient::diagonal(H.m, H.n);
    std::array<Residue, 4> best = H.classes;
    for (const auto& M : lattice_stabilizer(H.m, H.n))
        for (const auto& t : two_torsion(H.m, H.n)) best = std::min(best, image(Q, H.classes, M, t));
    return best;
}

bool hs_equivalent(const HurwitzStructureSet& H1, const HurwitzStructureSet& H2)
{
    if (H1.m != H2.m || H1.n != H2.n) return false;
    if (H1.critical_count() != H2.critical_count()) return false;
    return canonical_form(H1) == canonical_form(H2);
}

MultiplierImage multiplier_image(const Presentation& P)
{
    LatticeQuotient Q(P.lattice());
    MultiplierImage out;
    out.scan_bound = 8 * Q.m() * Q.n();
    std::map<Residue, ResidueEntry> table;
    for (const auto& r : Q.elements()) table[r] = ResidueEntry{r, std::nullopt, 0, 0};
    const std::int64_t B = out.scan_bound;
    for (std::int64_t q = -B; q <= B; ++q)
        for (std::int64_t p = -B; p <= B; ++p) {
            if (std::gcd(p, q) != 1) continue;
            ResidueEntry& e = table[Q.reduce(Vec2{q, p})];
            if (e.witness) continue;
            ExtRational s = reduce_slope(p, q);
            PullbackResult r = slope_invariants(P, s);
            e.witness = s;
            e.c = r.c;
            e.d = r.d;
            out.deltas.push_back(r.delta);
        }
    std::sort(out.deltas.begin(), out.deltas.end());
    out.deltas.erase(std::unique(out.deltas.begin(), out.deltas.end()), out.deltas.end());
    for (auto& [r, e] : table) out.table.push_back(e);
    out.constant_sigma = out.deltas == std::vector<Rational>{Rational(0)};
    out.completely_unobstructed = !out.deltas.empty() && out.deltas.back() < 1;
    out.infinitely_many_classes = std::find(out.deltas.begin(), out.deltas.end(), Rational(1)) != out.deltas.end();
    return out;
}

std::string MultiplierImage::json() const
{
    nlohmann::ordered_json j;
    std::vector<std::string> ds;
    for (const auto& d : deltas) ds.push_back(rat_str(d));
    j["deltas"] = ds;
    j["constant_sigma"] = constant_sigma;
    j["completely_unobstructed"] = completely_unobstructed;
    j["infinitely_many_classes"] = infinitely_many_classes;
    j["scan_bound"] = scan_bound;
    nlohmann::ordered_json t = nlohmann::ordered_json::array();
    for (const auto& e : table) {
        nlohmann::ordered_json x;
        x["class"] = {e.cls.x, e.cls.y};
        if (e.witness) {
            x["slope"] = e.witness->str();
            x["c"] = e.c;
            x["d"] = e.d;
        } else {
            x["slope"] = nullptr;
        }
        t.push_back(x);
    }
    j["residues"] = t;
    return j.dump(2);
}

std::int64_t deck_group_order(const Presentation& P)
{
    LatticeQuotient Q(P.lattice());
    HurwitzStructureSet H = hurwitz_structure_set(P);
    auto D = LatticeQuotient::diagonal(Q.m(), Q.n());
    std::set<Residue> S = full_set(D, H.classes);
    std::int64_t count = 0;
    for (std::int64_t x = 0; x < Q.m(); ++x)
        for (std::int64_t y = 0; y < Q.n(); ++y) {
            Residue t{2 * x, 2 * y};
            std::set<Residue> T;
            for (const auto& s : S) T.insert(D.add(s, t));
            count += T == S;
        }
    return count;
}

namespace {

std::optional<Presentation> realize_exact(const HurwitzStructureSet& H, int candidates)
{
    const std::int64_t m = H.m, n = H.n;
    auto Q = LatticeQuotient::diagonal(m, n);
    Presentation base;
    base.lambda1 = {m, 0};
    base.lambda2 = {0, n};
    base.translation = LatticeClass::Zero;
    base.is_virtual = true;

    // arcs[c][h]: short arcs from the start of slot c into ±classes[h];
    // straight when the offset is primitive, else bent once beside the midpoint.
    std::array<std::array<std::vector<GreenArc>, 4>, 4> ends;
    for (int c = 0; c < 4; ++c) {
        const auto cls = static_cast<LatticeClass>(c);
        Vec2 s = base.class_point(cls);
        for (int h = 0; h < 4; ++h) {
            std::vector<std::pair<std::int64_t, GreenArc>> all;
            for (Residue r : {H.classes[h], Q.neg(H.classes[h])})
                for (std::int64_t i = -2; i <= 2; ++i)
                    for (std::int64_t j = -2; j <= 2; ++j) {
                        Vec2 e{r.x + 2 * m * i, r.y + 2 * n * j}, d = e - s;
                        std::int64_t len = d.x * d.x + d.y * d.y;
                        if (e == s || std::gcd(d.x, d.y) == 1) {
                            all.push_back({4 * len, GreenArc{cls, e, {}}});
                            continue;
                        }
                        for (Vec2 u : {Vec2{1, 0}, Vec2{0, 1}, Vec2{-1, 0}, Vec2{0, -1}}) {
                            Vec2 w = 2 * s + d + u;
                            all.push_back({4 * len + 1, GreenArc{cls, e, {w}}});
                        }
                    }
            std::stable_sort(all.begin(), all.end(), [](const auto& x, const auto& y) {
                return std::tie(x.first, x.second.end.x, x.second.end.y) < std::tie(y.first, y.second.end.x, y.second.end.y);
            });
            std::vector<GreenArc> keep;
            for (const auto& [len, arc] : all)
                if (std::find(keep.begin(), keep.end(), arc) == keep.end()) keep.push_back(arc);
            if (static_cast<int>(keep.size()) > candidates) keep.resize(static_cast<std::size_t>(candidates));
            ends[c][h] = keep;
        }
    }

    std::array<int, 4> perm{0, 1, 2, 3};
    std::vector<std::array<int, 4>> perms;
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    for (int total = 0; total <= 4 * (candidates - 1); ++total)
        for (const auto& pm : perms)
            for (int r0 = 0; r0 < candidates; ++r0)
                for (int r1 = 0; r1 < candidates; ++r1)
                    for (int r2 = 0; r2 < candidates; ++r2) {
                        int r3 = total - r0 - r1 - r2;
                        if (r3 < 0 || r3 >= candidates) continue;
                        std::array<int, 4> rank{r0, r1, r2, r3};
                        Presentation P = base;
                        bool ok = true;
                        for (int c = 0; c < 4 && ok; ++c) {
                            const auto& opts = ends[c][pm[c]];
                            if (rank[c] >= static_cast<int>(opts.size())) {
                                ok = false;
                                break;
                            }
                            P.arcs[c] = opts[rank[c]];
                        }
                        if (!ok) continue;
                        try {
                            if (validate(P).valid) return P;
                        } catch (const DomainError&) {
                        }
                    }
    return std::nullopt;
}

}  // namespace

std::optional<Presentation> realize(const HurwitzStructureSet& H, int candidates)
{
    if (auto P = realize_exact(H, candidates)) return P;
    auto Q = LatticeQuotient::diagonal(H.m, H.n);
    std::set<std::array<Residue, 4>> orbit{H.classes};
    for (const auto& M : lattice_stabilizer(H.m, H.n))
        for (const auto& t : two_torsion(H.m, H.n)) orbit.insert(image(Q, H.classes, M, t));
    for (const auto& cls : orbit) {
        if (cls == H.classes) continue;
        HurwitzStructureSet G = H;
        G.classes = cls;
        if (auto P = realize_exact(G, candidates)) return P;
    }
    return std::nullopt;
}

std::vector<CatalogEntry> catalog(std::int64_t m, std::int64_t n)
{
    if (n <= 0 || m % n != 0) throw DomainError("catalog needs n | m");
    if (m * n < 2) throw DomainError("catalog needs degree at least 2");
    auto Q = LatticeQuotient::diagonal(m, n);
    std::set<Residue> pmset;
    for (const auto& r : Q.elements()) pmset.insert(Q.pm(r));
    std::vector<Residue> pms(pmset.begin(), pmset.end());

    std::map<std::array<Residue, 4>, HurwitzStructureSet> classes;
    const std::size_t N = pms.size();
    for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = a + 1; b < N; ++b)
            for (std::size_t c = b + 1; c < N; ++c)
                for (std::size_t d = c + 1; d < N; ++d) {
                    auto H = HurwitzStructureSet::over_diagonal(m, n, {pms[a], pms[b], pms[c], pms[d]});
                    classes.emplace(canonical_form(H), H);
                }

    std::vector<CatalogEntry> out;
    for (auto& [key, H] : classes) {
        CatalogEntry e;
        e.hs = H;
        e.hs.classes = key;
        e.critical = H.critical_count();
        out.push_back(e);
    }
    parallel_for(out.size(), thread_count(), [&](std::size_t i) {
        out[i].presentation = realize(out[i].hs);
        out[i].valid = out[i].presentation.has_value();
    });
    std::stable_sort(out.begin(), out.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
        return std::make_tuple(!a.valid, a.critical) < std::make_tuple(!b.valid, b.critical);
    });
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i].name = std::to_string(m) + std::to_string(n) + "HClass" + std::to_string(i + 1);
    return out;
}

}  // namespace netmap
