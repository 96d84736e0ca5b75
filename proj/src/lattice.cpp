#include "netmap/lattice.hpp"

#include <algorithm>

namespace netmap {

namespace {

// Column Hermite form [[a, 0], [b, c]] with a, c > 0 and 0 <= b < c.  It
// depends only on the lattice, so the Smith coordinates below do too.
IntMat2 hermite(const IntMat2& A)
{
    Vec2 u = A.col(0), v = A.col(1);
    while (v.x != 0) {
        std::int64_t k = floor_div(u.x, v.x);
        Vec2 r = u - k * v;
        u = v;
        v = -r;  // keeps det[u v] fixed
    }
    if (u.x < 0) {
        u = -u;
        v = -v;
    }
    std::int64_t b = pos_mod(u.y, v.y);
    u = u - ((u.y - b) / v.y) * v;
    return IntMat2::from_columns(u, v);
}

}  // namespace

LatticeQuotient::LatticeQuotient(const IntMat2& lattice)
{
    if (lattice.det() <= 0) throw DomainError("lattice basis must be positively oriented");
    SmithForm s = smith_normal_form(hermite(lattice));
    m_ = s.m;
    n_ = s.n;
    P_ = s.P;
}

LatticeQuotient LatticeQuotient::diagonal(std::int64_t m, std::int64_t n)
{
    if (m <= 0 || n <= 0 || m % n != 0) throw DomainError("diagonal quotient needs n | m");
    return LatticeQuotient(m, n, IntMat2::identity());
}

Residue LatticeQuotient::reduce(Residue r) const { return {pos_mod(r.x, 2 * m_), pos_mod(r.y, 2 * n_)}; }

Residue LatticeQuotient::reduce(Vec2 v) const
{
    Vec2 w = P_ * v;
    return reduce(Residue{w.x, w.y});
}

Residue LatticeQuotient::neg(Residue r) const { return reduce(Residue{-r.x, -r.y}); }

Residue LatticeQuotient::add(Residue a, Residue b) const { return reduce(Residue{a.x + b.x, a.y + b.y}); }

Residue LatticeQuotient::pm(Residue r) const
{
    r = reduce(r);
    return std::min(r, neg(r));
}

Residue LatticeQuotient::apply(const IntMat2& M, Residue r) const
{
    Vec2 w = M * Vec2{r.x, r.y};
    return reduce(Residue{w.x, w.y});
}

std::vector<Residue> LatticeQuotient::elements() const
{
    std::vector<Residue> out;
    out.reserve(static_cast<std::size_t>(order()));
    for (std::int64_t x = 0; x < 2 * m_; ++x)
        for (std::int64_t y = 0; y < 2 * n_; ++y) out.push_back({x, y});
    return out;
}

HurwitzStructureSet HurwitzStructureSet::over_diagonal(std::int64_t m, std::int64_t n, std::array<Residue, 4> cls)
{
    auto Q = LatticeQuotient::diagonal(m, n);
    HurwitzStructureSet hs;
    hs.lambda1 = {m, 0};
    hs.lambda2 = {0, n};
    hs.m = m;
    hs.n = n;
    for (auto& c : cls) c = Q.pm(c);
    std::sort(cls.begin(), cls.end());
    if (std::adjacent_find(cls.begin(), cls.end()) != cls.end())
        throw DomainError("Hurwitz structure set classes are not disjoint");
    hs.classes = cls;
    return hs;
}

int HurwitzStructureSet::critical_count() const
{
    auto Q = LatticeQuotient::diagonal(m, n);
    return static_cast<int>(std::count_if(classes.begin(), classes.end(), [&](Residue r) { return !Q.two_torsion(r); }));
}

std::string HurwitzStructureSet::str() const
{
    auto Q = LatticeQuotient::diagonal(m, n);
    std::string s = "{";
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (i) s += ", ";
        const Residue& r = classes[i];
        if (!Q.two_torsion(r)) s += "±";
        s += "(" + std::to_string(r.x) + "," + std::to_string(r.y) + ")";
    }
    s += "} ⊆ Z" + std::to_string(2 * m) + "⊕Z" + std::to_string(2 * n);
    return s;
}

}  // namespace netmap
