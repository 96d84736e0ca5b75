#include "netmap/presentation.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace netmap {

namespace {

constexpr std::array<LatticeClass, 4> kClasses{LatticeClass::Zero, LatticeClass::L1, LatticeClass::L2, LatticeClass::L1L2};

[[noreturn]] void syntax(int line, const std::string& msg)
{
    throw DomainError("line " + std::to_string(line) + ": " + msg);
}

std::int64_t parse_int(const std::string& tok, int line)
{
    try {
        std::size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) syntax(line, "expected an integer, got '" + tok + "'");
        return v;
    } catch (const std::logic_error&) {
        syntax(line, "expected an integer, got '" + tok + "'");
    }
}

std::string point_str(Vec2 v) { return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")"; }

// Doubled coordinate from "k" or "k/2".
std::int64_t parse_half(const std::string& tok, int line)
{
    if (auto slash = tok.find('/'); slash != std::string::npos) {
        if (tok.substr(slash + 1) != "2") syntax(line, "bend coordinates must be integers or halves, got '" + tok + "'");
        return parse_int(tok.substr(0, slash), line);
    }
    return 2 * parse_int(tok, line);
}

std::string half_str(std::int64_t v2) { return v2 % 2 == 0 ? std::to_string(v2 / 2) : std::to_string(v2) + "/2"; }

std::string half_point_str(Vec2 v2) { return "(" + half_str(v2.x) + "," + half_str(v2.y) + ")"; }

// Integer point of the lattice spanned by the columns of A?
bool in_lattice(const IntMat2& A, Vec2 v)
{
    Vec2 w = A.adjugate() * v;
    std::int64_t D = A.det();
    return w.x % D == 0 && w.y % D == 0;
}

// Segments in doubled coordinates.
struct Segment {
    Vec2 p, q;
    int arc;
    int index = 0;  ///< position along the arc
};

int orient(Vec2 a, Vec2 b, Vec2 c)
{
    __int128 v = static_cast<__int128>(b.x - a.x) * (c.y - a.y) - static_cast<__int128>(b.y - a.y) * (c.x - a.x);
    return (v > 0) - (v < 0);
}

bool on_segment(Vec2 a, Vec2 b, Vec2 c)
{
    return orient(a, b, c) == 0 && std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= c.y && c.y <= std::max(a.y, b.y);
}

bool intersects(const Segment& s, const Segment& t)
{
    int o1 = orient(s.p, s.q, t.p), o2 = orient(s.p, s.q, t.q);
    int o3 = orient(t.p, t.q, s.p), o4 = orient(t.p, t.q, s.q);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    return on_segment(s.p, s.q, t.p) || on_segment(s.p, s.q, t.q) || on_segment(t.p, t.q, s.p) ||
           on_segment(t.p, t.q, s.q);
}

// The only permitted contact: two lifts of one arc rotated about their
// common start point.
bool permitted_contact(const Segment& s, const Segment& t, const IntMat2& A)
{
    if (s.arc != t.arc) return false;
    for (Vec2 a : {s.p, s.q})
        for (Vec2 b : {t.p, t.q})
            if (a == b && a.x % 2 == 0 && a.y % 2 == 0 && in_lattice(A, Vec2{a.x / 2, a.y / 2})) {
                Vec2 so = a == s.p ? s.q : s.p, to = b == t.p ? t.q : t.p;
                // Meeting only at a: the far ends are not on the other segment
                // and the segments are not collinear on the same side.
                if (on_segment(s.p, s.q, to) || on_segment(t.p, t.q, so)) return false;
                return true;
            }
    return false;
}

Vec2 class_bits(LatticeClass c)
{
    int k = static_cast<int>(c);
    return {k & 1, (k >> 1) & 1};
}

LatticeClass class_of_bits(std::int64_t x, std::int64_t y)
{
    return static_cast<LatticeClass>(pos_mod(x, 2) + 2 * pos_mod(y, 2));
}

Vec2 lift(const LatticeQuotient& Q, Residue r) { return Q.to_smith().adjugate() * Vec2{r.x, r.y}; }

// f on Z^2 / 2Λ1 mod ± for a given translation term.
Residue image_under(const Presentation& P, const LatticeQuotient& Q, Vec2 v, LatticeClass translation)
{
    Vec2 b = class_bits(translation);
    LatticeClass s = class_of_bits(v.x + b.x, v.y + b.y);
    return Q.pm(Q.reduce(P.arc(s).end));
}

bool postcritical_ok(const Presentation& P, const LatticeQuotient& Q, LatticeClass translation)
{
    std::set<Residue> marked;
    for (auto c : kClasses) marked.insert(Q.pm(Q.reduce(P.arc(c).end)));
    std::set<Residue> seen;
    std::vector<Residue> todo;
    for (Residue r : Q.elements()) {
        if (Q.two_torsion(r) || Q.pm(r) != r) continue;
        Residue y = image_under(P, Q, lift(Q, r), translation);
        if (seen.insert(y).second) todo.push_back(y);
    }
    while (!todo.empty()) {
        Residue r = todo.back();
        todo.pop_back();
        Residue y = image_under(P, Q, lift(Q, r), translation);
        if (seen.insert(y).second) todo.push_back(y);
    }
    return seen == marked;
}

}  // namespace

std::string to_string(LatticeClass c)
{
    switch (c) {
    case LatticeClass::Zero: return "0";
    case LatticeClass::L1: return "l1";
    case LatticeClass::L2: return "l2";
    case LatticeClass::L1L2: return "l1+l2";
    }
    return "?";
}

LatticeClass parse_lattice_class(const std::string& token)
{
    if (token == "0") return LatticeClass::Zero;
    if (token == "l1") return LatticeClass::L1;
    if (token == "l2") return LatticeClass::L2;
    if (token == "l1+l2" || token == "l2+l1") return LatticeClass::L1L2;
    throw DomainError("'" + token + "' is not one of 0, l1, l2, l1+l2");
}

Vec2 Presentation::class_point(LatticeClass c) const
{
    Vec2 b = class_bits(c);
    return b.x * lambda1 + b.y * lambda2;
}

std::vector<Vec2> Presentation::path2(LatticeClass c) const
{
    std::vector<Vec2> out{2 * class_point(c)};
    out.insert(out.end(), arc(c).via2.begin(), arc(c).via2.end());
    out.push_back(2 * arc(c).end);
    return out;
}

std::string Presentation::str() const
{
    std::ostringstream os;
    os << "lambda1 " << lambda1.x << ' ' << lambda1.y << '\n';
    os << "lambda2 " << lambda2.x << ' ' << lambda2.y << '\n';
    os << "translation " << (is_virtual ? std::string("virtual") : to_string(translation)) << '\n';
    for (auto c : kClasses) {
        os << "arc " << to_string(c) << " -> " << arc(c).end.x << ' ' << arc(c).end.y;
        if (!arc(c).via2.empty()) {
            os << " via";
            for (Vec2 v : arc(c).via2) os << ' ' << half_str(v.x) << ' ' << half_str(v.y);
        }
        os << '\n';
    }
    return os.str();
}

Presentation parse_presentation(std::istream& in)
{
    Presentation P;
    std::string raw;
    int line = 0, stage = 0;
    std::array<bool, 4> have{};
    std::string translation_tok;
    int translation_line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        const std::string& key = tok[0];
        if (stage == 0 || stage == 1) {
            const char* want = stage == 0 ? "lambda1" : "lambda2";
            if (key != want) syntax(line, std::string("expected '") + want + "'");
            if (tok.size() != 3) syntax(line, std::string(want) + " takes two integers");
            Vec2 v{parse_int(tok[1], line), parse_int(tok[2], line)};
            (stage == 0 ? P.lambda1 : P.lambda2) = v;
            ++stage;
        } else if (stage == 2) {
            if (key != "translation" || tok.size() != 2) syntax(line, "expected 'translation <0|l1|l2|l1+l2|virtual>'");
            translation_tok = tok[1];
            translation_line = line;
            ++stage;
        } else {
            if (key != "arc") syntax(line, "expected 'arc <class> -> <x> <y>'");
            bool bent = tok.size() > 5 && tok[5] == "via";
            if (tok.size() < 5 || tok[2] != "->" || (tok.size() > 5 && !bent))
                syntax(line, "expected 'arc <class> -> <x> <y> [via <x> <y> ...]'");
            if (bent && (tok.size() == 6 || (tok.size() - 6) % 2 != 0)) syntax(line, "'via' takes pairs of coordinates");
            LatticeClass c;
            try {
                c = parse_lattice_class(tok[1]);
            } catch (const DomainError& e) {
                syntax(line, e.what());
            }
            int k = static_cast<int>(c);
            if (have[k]) syntax(line, "duplicate arc for class " + tok[1]);
            have[k] = true;
            P.arcs[k] = {c, {parse_int(tok[3], line), parse_int(tok[4], line)}, {}};
            for (std::size_t i = 6; i + 1 < tok.size(); i += 2)
                P.arcs[k].via2.push_back({parse_half(tok[i], line), parse_half(tok[i + 1], line)});
            ++stage;
            if (stage > 7) syntax(line, "more than four arcs");
        }
    }
    if (stage < 7) syntax(line, "unexpected end of input: need lambda1, lambda2, translation and four arcs");
    if (P.lattice().det() <= 0) throw DomainError("lambda1, lambda2 must be positively oriented with nonzero determinant");
    if (translation_tok == "virtual") {
        P.is_virtual = true;
        P.translation = LatticeClass::Zero;
    } else {
        try {
            P.translation = parse_lattice_class(translation_tok);
        } catch (const DomainError&) {
            syntax(translation_line, "translation '" + translation_tok + "' is not one of 0, l1, l2, l1+l2, virtual");
        }
    }
    return P;
}

Presentation parse_presentation(const std::string& text)
{
    std::istringstream in(text);
    return parse_presentation(in);
}

Presentation load_presentation(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open " + path);
    return parse_presentation(in);
}

ValidationReport validate(const Presentation& P)
{
    ValidationReport R;
    IntMat2 A = P.lattice();
    R.degree = A.det();
    auto fail = [&](std::string msg) { R.errors.push_back(std::move(msg)); };
    if (R.degree < 2) {
        fail("degree " + std::to_string(R.degree) + " < 2: lambda1, lambda2 must span a proper positively oriented sublattice");
        return R;
    }
    for (auto c : kClasses)
        if (P.arc(c).start != c) fail("arc slot " + to_string(c) + " holds start class " + to_string(P.arc(c).start));
    if (!R.errors.empty()) return R;

    LatticeQuotient Q(A);
    std::map<Residue, LatticeClass> owner;
    for (auto c : kClasses) {
        Residue r = Q.pm(Q.reduce(P.arc(c).end));
        auto [it, fresh] = owner.emplace(r, c);
        if (!fresh)
            fail("arcs " + to_string(it->second) + " and " + to_string(c) + " end in the same class " +
                 point_str(P.arc(c).end) + ": marked points collide");
    }

    std::vector<Segment> base;
    std::int64_t reach = 0;
    for (auto c : kClasses) {
        std::vector<Vec2> path = P.path2(c);
        for (std::size_t i = 1; i + 1 < path.size(); ++i)
            if (path[i].x % 2 == 0 && path[i].y % 2 == 0)
                fail("arc " + to_string(c) + " bends at the lattice point " + half_point_str(path[i]));
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            Vec2 a = path[i], b = path[i + 1], d = b - a;
            if (d == Vec2{} && path.size() > 2) {
                fail("arc " + to_string(c) + " repeats the point " + half_point_str(a));
                continue;
            }
            // Interior points of the doubled grid on the segment; even ones are in Z^2.
            std::int64_t g = gcd64(std::llabs(d.x), std::llabs(d.y));
            for (std::int64_t k = 1; k < g; ++k) {
                Vec2 x = a + k * Vec2{d.x / g, d.y / g};
                if (x.x % 2 == 0 && x.y % 2 == 0) {
                    fail("arc " + to_string(c) + " from " + half_point_str(a) + " to " + half_point_str(b) +
                         " passes through a lattice point");
                    break;
                }
            }
            base.push_back({a, b, static_cast<int>(c), static_cast<int>(i)});
        }
        for (Vec2 v : path) reach = std::max<std::int64_t>({reach, std::llabs(v.x), std::llabs(v.y)});
    }
    // Translates 2μ ± seg that can meet the base segments; in doubled
    // coordinates the translate is 4μ ± seg.
    // A translate meets the box |x| <= reach only if |4μ| <= 2 reach.
    IntMat2 adj = A.adjugate();
    std::int64_t K1 = (std::llabs(adj.a) + std::llabs(adj.b)) * reach / (2 * R.degree) + 1;
    std::int64_t K2 = (std::llabs(adj.c) + std::llabs(adj.d)) * reach / (2 * R.degree) + 1;
    std::set<std::pair<int, int>> reported;
    for (const Segment& s : base)
        for (std::int64_t k1 = -K1; k1 <= K1; ++k1)
            for (std::int64_t k2 = -K2; k2 <= K2; ++k2) {
                Vec2 mu4 = 4 * (k1 * P.lambda1 + k2 * P.lambda2);
                if (std::llabs(mu4.x) > 2 * reach || std::llabs(mu4.y) > 2 * reach) continue;
                for (int sign : {1, -1})
                    for (const Segment& t0 : base) {
                        Segment t{mu4 + sign * t0.p, mu4 + sign * t0.q, t0.arc, t0.index};
                        bool identity = sign == 1 && mu4 == Vec2{};
                        bool same = (t.p == s.p && t.q == s.q) || (t.p == s.q && t.q == s.p);
                        if (same && t.arc == s.arc) continue;
                        if (!intersects(s, t)) continue;
                        // Consecutive pieces of one arc share their bend point.
                        if (identity && t.arc == s.arc && std::abs(t.index - s.index) == 1) {
                            Vec2 joint = t.index > s.index ? s.q : s.p;
                            Vec2 so = joint == s.p ? s.q : s.p, to = joint == t.p ? t.q : t.p;
                            if (!on_segment(s.p, s.q, to) && !on_segment(t.p, t.q, so)) continue;
                        }
                        if (permitted_contact(s, t, A)) continue;
                        auto key = std::minmax(s.arc, t.arc);
                        if (!reported.insert(key).second) continue;
                        fail("arcs " + to_string(static_cast<LatticeClass>(s.arc)) + " and " +
                             to_string(static_cast<LatticeClass>(t.arc)) + " intersect (at the translate " +
                             half_point_str(t.p) + "-" + half_point_str(t.q) + ")");
                    }
            }
    if (!R.errors.empty()) return R;
    R.branched_cover = true;

    R.euclidean = std::all_of(owner.begin(), owner.end(), [&](const auto& kv) { return Q.two_torsion(kv.first); });
    if (P.is_virtual) {
        for (auto t : kClasses)
            if (postcritical_ok(P, Q, t)) R.admissible_translations.push_back(t);
    } else if (postcritical_ok(P, Q, P.translation)) {
        R.admissible_translations.push_back(P.translation);
    }
    if (R.admissible_translations.empty()) fail("not NET: fewer than four postcritical points");
    R.valid = R.errors.empty();
    return R;
}

void require_valid(const Presentation& P)
{
    ValidationReport R = validate(P);
    if (!R.valid) throw DomainError("invalid presentation: " + R.errors.front());
}

std::string ValidationReport::json() const
{
    nlohmann::ordered_json j;
    j["valid"] = valid;
    j["degree"] = degree;
    j["euclidean"] = euclidean;
    std::vector<std::string> ts;
    for (auto t : admissible_translations) ts.push_back(to_string(t));
    j["admissible_translations"] = ts;
    j["errors"] = errors;
    return j.dump(2);
}

HurwitzStructureSet hurwitz_structure_set(const Presentation& P)
{
    LatticeQuotient Q(P.lattice());
    std::array<Residue, 4> cls;
    for (auto c : kClasses) cls[static_cast<int>(c)] = Q.reduce(P.arc(c).end);
    HurwitzStructureSet hs = HurwitzStructureSet::over_diagonal(Q.m(), Q.n(), cls);
    hs.lambda1 = P.lambda1;
    hs.lambda2 = P.lambda2;
    return hs;
}

Presentation transform(const Presentation& P, const IntMat2& M)
{
    if (M.det() != 1) throw DomainError("transform needs det M = 1");
    Presentation R = P;
    R.lambda1 = M * P.lambda1;
    R.lambda2 = M * P.lambda2;
    for (auto& a : R.arcs) {
        a.end = M * a.end;
        for (auto& v : a.via2) v = M * v;
    }
    return R;
}

Presentation change_basis(const Presentation& P, const IntMat2& M)
{
    if (M.det() != 1) throw DomainError("change of basis needs det M = 1");
    IntMat2 A = P.lattice() * M;
    IntMat2 Minv = M.adjugate();
    Presentation R = P;
    R.lambda1 = A.col(0);
    R.lambda2 = A.col(1);
    auto rebits = [&](LatticeClass c) {
        Vec2 b = Minv * class_bits(c);
        return class_of_bits(b.x, b.y);
    };
    for (auto c : kClasses) {
        LatticeClass nc = rebits(c);
        // The start moves within its class mod 2Λ1, the arc with it.
        Vec2 shift = R.class_point(nc) - P.class_point(c);
        GreenArc moved{nc, P.arc(c).end + shift, P.arc(c).via2};
        for (auto& v : moved.via2) v = v + 2 * shift;
        R.arcs[static_cast<int>(nc)] = moved;
    }
    return R;
}

bool is_euclidean(const Presentation& P)
{
    LatticeQuotient Q(P.lattice());
    return std::all_of(P.arcs.begin(), P.arcs.end(), [&](const GreenArc& a) { return Q.two_torsion(Q.reduce(a.end)); });
}

Residue image_class(const Presentation& P, const LatticeQuotient& Q, Vec2 v)
{
    return image_under(P, Q, v, P.translation);
}

namespace {

// Rotation of a cycle's weight sequence starting at each position; the
// lexicographically largest one picks the starting vertex.
std::size_t best_rotation(const std::vector<int>& w)
{
    std::size_t best = 0;
    auto rot = [&](std::size_t k) {
        std::vector<int> r(w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
        r.insert(r.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
        return r;
    };
    for (std::size_t k = 1; k < w.size(); ++k)
        if (rot(k) > rot(best)) best = k;
    return best;
}

}  // namespace

Portraits portraits(const Presentation& P)
{
    LatticeQuotient Q(P.lattice());
    std::vector<Residue> classes;
    for (Residue r : Q.elements())
        if (Q.pm(r) == r) classes.push_back(r);
    std::set<Residue> marked;
    for (const auto& a : P.arcs) marked.insert(Q.pm(Q.reduce(a.end)));
    auto f = [&](Residue r) { return image_class(P, Q, lift(Q, r)); };
    auto weight = [&](Residue r) { return Q.two_torsion(r) ? 1 : 2; };

    Portraits out;

    // Static portrait: every class lies over a marked point.
    // Labels: q for marked targets, p for marked sources, c for unmarked
    // critical points, x for the rest.
    std::map<Residue, int> cod_index;
    for (Residue y : marked) {
        cod_index[y] = static_cast<int>(out.static_portrait.codomain.size());
        out.static_portrait.codomain.push_back({y, true, false, "q" + std::to_string(cod_index[y] + 1)});
    }
    std::vector<std::vector<int>> partitions(marked.size());
    std::map<char, int> used;
    for (Residue r : classes) {
        int i = static_cast<int>(out.static_portrait.domain.size());
        bool mk = marked.count(r) > 0, crit = !Q.two_torsion(r);
        char kind = mk ? 'p' : crit ? 'c' : 'x';
        out.static_portrait.domain.push_back({r, mk, crit, kind + std::to_string(++used[kind])});
        int j = cod_index.at(f(r));
        out.static_portrait.edges.push_back({i, j, weight(r)});
        partitions[static_cast<std::size_t>(j)].push_back(weight(r));
    }
    for (auto& p : partitions) std::sort(p.rbegin(), p.rend());
    std::sort(partitions.rbegin(), partitions.rend());
    out.branch_data = partitions;

    // Dynamic portrait on marked points, canonically labelled: cycles by
    // decreasing length, each started at its heaviest weight rotation.
    std::vector<std::vector<Residue>> cycles;
    std::set<Residue> on_cycle;
    for (Residue start : marked) {
        Residue x = start;
        for (std::size_t i = 0; i < marked.size(); ++i) x = f(x);
        if (on_cycle.count(x)) continue;
        std::vector<Residue> cyc;
        Residue y = x;
        do {
            cyc.push_back(y);
            on_cycle.insert(y);
            y = f(y);
        } while (y != x);
        std::vector<int> w;
        for (Residue r : cyc) w.push_back(weight(r));
        std::rotate(cyc.begin(), cyc.begin() + static_cast<std::ptrdiff_t>(best_rotation(w)), cyc.end());
        cycles.push_back(cyc);
    }
    auto key = [&](const std::vector<Residue>& c) {
        std::vector<int> w;
        for (Residue r : c) w.push_back(weight(r));
        return std::make_pair(c.size(), w);
    };
    std::stable_sort(cycles.begin(), cycles.end(), [&](const auto& a, const auto& b) { return key(a) > key(b); });

    Portrait& D = out.dynamic;
    std::map<Residue, int> index;
    auto add = [&](Residue r, std::string label) {
        index[r] = static_cast<int>(D.vertices.size());
        D.vertices.push_back({r, marked.count(r) > 0, !Q.two_torsion(r), std::move(label)});
    };
    char next = 'a';
    for (const auto& c : cycles)
        for (Residue r : c) add(r, std::string(1, next++));
    // Marked points off the cycles, in order of distance to them.
    for (bool grew = true; grew;) {
        grew = false;
        for (Residue r : marked)
            if (!index.count(r) && index.count(f(r))) {
                add(r, std::string(1, next++));
                grew = true;
            }
    }
    int u = 0;
    for (Residue r : classes)
        if (!index.count(r) && !Q.two_torsion(r)) add(r, "u" + std::to_string(++u));
    for (std::size_t i = 0; i < D.vertices.size(); ++i) {
        Residue r = D.vertices[i].cls;
        D.edges.push_back({static_cast<int>(i), index.at(f(r)), weight(r)});
    }
    return out;
}

std::string Portrait::str() const
{
    std::string s;
    std::vector<bool> done(vertices.size(), false);
    auto arrow = [&](int w) { return w == 2 ? std::string(" ->2 ") : std::string(" -> "); };
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (done[i]) continue;
        if (!s.empty()) s += "; ";
        std::size_t v = i;
        s += vertices[v].label;
        while (!done[v]) {
            done[v] = true;
            const PortraitEdge& e = edges[v];
            s += arrow(e.local_degree) + vertices[static_cast<std::size_t>(e.to)].label;
            v = static_cast<std::size_t>(e.to);
        }
    }
    return s;
}

}  // namespace netmap
