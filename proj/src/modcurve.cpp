#include "netmap/modcurve.hpp"

#include "netmap/hurwitz.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <numeric>

namespace netmap {

namespace {

using Key = std::array<std::int64_t, 4>;

Key reduce(const IntMat2& M, std::int64_t N)
{
    return {pos_mod(M.a, N), pos_mod(M.b, N), pos_mod(M.c, N), pos_mod(M.d, N)};
}

IntMat2 mul(const Key& x, const Key& y, std::int64_t N)
{
    return {pos_mod(x[0] * y[0] + x[1] * y[2], N), pos_mod(x[0] * y[1] + x[1] * y[3], N),
            pos_mod(x[2] * y[0] + x[3] * y[2], N), pos_mod(x[2] * y[1] + x[3] * y[3], N)};
}

Residue pm(Residue r, std::int64_t m, std::int64_t n)
{
    Residue a{pos_mod(r.x, 2 * m), pos_mod(r.y, 2 * n)};
    Residue b{pos_mod(-r.x, 2 * m), pos_mod(-r.y, 2 * n)};
    return std::min(a, b);
}

// Elements of SL(2, Z/2m) in the liftable group.
std::vector<Key> liftable_elements(const HurwitzStructureSet& H)
{
    const std::int64_t N = 2 * H.m;
    std::vector<Key> out;
    for (std::int64_t a = 1; a < N; a += 2)
        for (std::int64_t b = 0; b < N; b += 2)
            for (std::int64_t c = 0; c < N; c += 2)
                for (std::int64_t d = 1; d < N; d += 2) {
                    if (pos_mod(a * d - b * c, N) != 1) continue;
                    IntMat2 M{a, b, c, d};
                    if (liftable(H, M)) out.push_back({a, b, c, d});
                }
    return out;
}

}  // namespace

bool liftable(const HurwitzStructureSet& H, const IntMat2& M)
{
    const std::int64_t m = H.m, n = H.n;
    if (pos_mod(M.a - 1, 2) || pos_mod(M.b, 2) || pos_mod(M.c, 2) || pos_mod(M.d - 1, 2)) return false;
    if (pos_mod(M.b, m / n) != 0) return false;
    for (Residue h : H.classes) {
        Residue img{M.a * h.x + M.b * h.y, M.c * h.x + M.d * h.y};
        if (pm(img, m, n) != pm(h, m, n)) return false;
    }
    return true;
}

CosetAction liftable_cosets(const HurwitzStructureSet& H)
{
    const std::int64_t N = 2 * H.m;
    const std::vector<Key> G = liftable_elements(H);
    if (std::find(G.begin(), G.end(), Key{N - 1, 0, 0, N - 1}) == G.end() && N > 2)
        throw EngineError("-I is not liftable");

    auto coset_key = [&](const Key& g) {
        Key best{N, N, N, N};
        for (const Key& h : G) best = std::min(best, reduce(mul(h, g, N), N));
        return best;
    };
    const Key S = reduce(IntMat2{0, -1, 1, 0}, N), U = reduce(IntMat2{0, -1, 1, 1}, N), T = reduce(IntMat2{1, 1, 0, 1}, N);

    CosetAction C;
    C.modulus = N;
    std::map<Key, int> id;
    std::vector<Key> reps;
    auto visit = [&](const Key& g) {
        Key k = coset_key(g);
        auto [it, fresh] = id.emplace(k, static_cast<int>(reps.size()));
        if (fresh) reps.push_back(g);
        return it->second;
    };
    visit(reduce(IntMat2::identity(), N));
    for (std::size_t i = 0; i < reps.size(); ++i) {
        Key g = reps[i];
        C.s.push_back(visit(reduce(mul(g, S, N), N)));
        C.u.push_back(visit(reduce(mul(g, U, N), N)));
        C.t.push_back(visit(reduce(mul(g, T, N), N)));
    }
    C.index = static_cast<std::int64_t>(reps.size());
    return C;
}

CosetAction liftable_cosets(const Presentation& P)
{
    ValidationReport R = validate(P);
    if (!R.branched_cover) throw DomainError("invalid presentation: " + R.errors.front());
    return liftable_cosets(hurwitz_structure_set(P));
}

CurveInvariants curve_invariants(const CosetAction& C)
{
    CurveInvariants r;
    r.index = C.index;
    for (std::int64_t i = 0; i < C.index; ++i) {
        r.e2 += C.s[i] == i;
        r.e3 += C.u[i] == i;
    }
    std::vector<bool> seen(static_cast<std::size_t>(C.index));
    for (std::int64_t i = 0; i < C.index; ++i) {
        if (seen[i]) continue;
        ++r.cusps;
        for (int j = static_cast<int>(i); !seen[j]; j = C.t[j]) seen[j] = true;
    }
    // 12 (g - 1) = index - 3 e2 - 4 e3 - 6 cusps
    std::int64_t twelve = C.index - 3 * r.e2 - 4 * r.e3 - 6 * r.cusps;
    if (twelve % 12 != 0 || twelve / 12 + 1 < 0) throw EngineError("coset action gives a non-integral genus");
    r.genus = twelve / 12 + 1;
    if (C.index % 6 != 0) throw EngineError("liftable group is not inside the level 2 group");
    r.degY = C.index / 6;
    if (r.degY != 2 * (r.genus - 1) + r.cusps) throw EngineError("degree of Y disagrees with 2(g - 1) + n");
    return r;
}

CurveInvariants curve_invariants(const Presentation& P) { return curve_invariants(liftable_cosets(P)); }

std::string CurveInvariants::json() const
{
    nlohmann::ordered_json j;
    j["index"] = index;
    j["e2"] = e2;
    j["e3"] = e3;
    j["cusps"] = cusps;
    j["genus"] = genus;
    j["degY"] = degY;
    return j.dump();
}

}  // namespace netmap
