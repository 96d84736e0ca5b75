#include "netmap/halfspace.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <numeric>
#include <map>
#include <set>
#include <sstream>

namespace netmap {

namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

std::string rat_str(const Rational& r)
{
    std::ostringstream os;
    os << r;
    return os.str();
}

std::int64_t small(const Integer& v)
{
    if (boost::multiprecision::abs(v) > Integer(1) << 40) throw DomainError("boundary point too large for a chart");
    return static_cast<std::int64_t>(v);
}

// SL(2, Z) chart M with M(t) = ∞ for the standard action.
IntMat2 chart_to_infinity(const ExtRational& t)
{
    std::int64_t a = small(t.num()), b = small(t.den());
    // x a + y b = 1
    std::int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1, r0 = a, r1 = b;
    while (r1 != 0) {
        std::int64_t k = floor_div(r0, r1);
        std::int64_t r = r0 - k * r1;
        r0 = r1;
        r1 = r;
        std::int64_t tx = x0 - k * x1;
        x0 = x1;
        x1 = tx;
        std::int64_t ty = y0 - k * y1;
        y0 = y1;
        y1 = ty;
    }
    if (r0 < 0) {
        x0 = -x0;
        y0 = -y0;
    }
    return {-x0, -y0, b, -a};
}

ExtRational shift(const ExtRational& u, const Integer& k)
{
    if (u.is_infinite()) return u;
    return ExtRational(u.num() + k * u.den(), u.den());
}

}  // namespace

Rational sqrt_lower_bound(const Rational& x, int bits)
{
    if (x < 0) throw DomainError("square root of a negative number");
    Integer n = numerator(x), d = denominator(x);
    Integer rn = boost::multiprecision::sqrt(n), rd = boost::multiprecision::sqrt(d);
    if (rn * rn == n && rd * rd == d) return Rational(rn, rd);
    Integer N = Integer(1) << bits;
    Integer scaled = n * N * N / d;
    Integer root = boost::multiprecision::sqrt(scaled);
    return Rational(root, N);
}

BoundaryInterval excluded_interval_rho(const ExtRational& t1, const ExtRational& t1p, const Rational& rho)
{
    if (t1 == t1p) throw DomainError("seed equals its image: use the extended construction");
    if (rho <= 0) throw DomainError("multiplier 0 excludes nothing");
    Integer a = numerator(rho), b = denominator(rho);
    ExtRational e1(b * t1.num() - a * t1p.num(), b * t1.den() - a * t1p.den());
    ExtRational e2(b * t1.num() + a * t1p.num(), b * t1.den() + a * t1p.den());
    BoundaryInterval J(e1, e2);
    if (J.contains(t1)) return J;
    return BoundaryInterval(e2, e1);
}

BoundaryInterval excluded_interval(const ExtRational& t1, const ExtRational& t1p, const Rational& delta)
{
    return excluded_interval_rho(t1, t1p, sqrt_lower_bound(delta));
}

std::optional<ExtendedNeighborhood> extended_excluded_neighborhood(const Presentation& P, const ExtRational& t, int depth)
{
    const ExtRational s = slope_from_boundary(t);
    const PullbackResult base = slope_invariants(P, s);
    if (!base.image.is_odot()) {
        if (base.image.value() != s) throw DomainError("slope " + s.str() + " is neither fixed nor absorbed");
        if (base.delta >= 1) throw DomainError("slope " + s.str() + " is fixed with multiplier >= 1");
    }
    const Integer c = base.c, d = base.d;
    const IntMat2 M = chart_to_infinity(t);
    const IntMat2 Minv = M.adjugate();
    const ExtRational inf = ExtRational::infinity();

    // Chart arcs ending at ∞ (right) and starting at ∞ (left), with the
    // chart intervals that certify them.
    std::optional<ExtRational> right_from, left_to;
    std::vector<std::pair<ExclusionCertificate, BoundaryInterval>> certs;

    for (int i = 0; i < 2 * depth + 1 && !(right_from && left_to); ++i) {
        Integer u0 = (i % 2 == 1) ? Integer((i + 1) / 2) : Integer(-(i / 2));
        ExtRational seed = slope_from_boundary(moebius_standard(Minv, ExtRational(u0, 1)));
        PullbackResult r = slope_invariants(P, seed);
        if (r.image.is_odot() || r.image.value() == s) continue;
        ExtRational up = moebius_standard(M, boundary_point(r.image.value()));
        if (up.is_infinite()) continue;
        Rational rho = sqrt_lower_bound(r.delta);
        if (rho == 0) continue;

        auto tk = [&](const Integer& k) { return ExtRational(u0 + 2 * d * k, 1); };
        auto tpk = [&](const Integer& k) { return shift(up, 2 * c * k); };
        auto J = [&](const Integer& k) -> std::optional<BoundaryInterval> {
            if (tk(k) == tpk(k)) return std::nullopt;
            return excluded_interval_rho(tk(k), tpk(k), rho);
        };
        auto cert = [&](const Integer& k, const BoundaryInterval& chart) {
            ExclusionCertificate e{slope_from_boundary(moebius_standard(Minv, tk(k))),
                                   Slope(slope_from_boundary(moebius_standard(Minv, tpk(k)))), r.delta, chart,
                                   CertificateKind::Extended};
            certs.emplace_back(e, chart);
        };

        for (int k = 0; k <= depth && !right_from; ++k) {
            auto Jk = J(k);
            if (!Jk) continue;
            if (Jk->contains(inf) || Jk->to() == inf) {
                right_from = Jk->from();
                if (Jk->contains(inf) && !left_to) left_to = Jk->to();
                cert(k, *Jk);
            } else if (d > c && Jk->bounded() && tk(k).value() > tpk(k).value()) {
                auto Jn = J(k + 1);
                if (Jn && Jn->bounded() && Jk->from().value() < Jn->from().value() &&
                    Jn->from().value() < Jk->to().value()) {
                    right_from = Jk->from();
                    cert(k, BoundaryInterval(Jk->from(), inf));
                }
            }
        }
        for (int k = 0; k >= -depth && !left_to; --k) {
            auto Jk = J(k);
            if (!Jk) continue;
            if (Jk->contains(inf) || Jk->from() == inf) {
                left_to = Jk->to();
                if (Jk->contains(inf) && !right_from) right_from = Jk->from();
                cert(k, *Jk);
            } else if (d > c && Jk->bounded() && tk(k).value() < tpk(k).value()) {
                auto Jp = J(k - 1);
                if (Jp && Jp->bounded() && Jk->from().value() < Jp->to().value() &&
                    Jp->to().value() < Jk->to().value()) {
                    left_to = Jk->to();
                    cert(k, BoundaryInterval(inf, Jk->to()));
                }
            }
        }
    }
    if (!right_from || !left_to) return std::nullopt;

    // Back to the original coordinates; the chart's right side ends at t.
    auto back = [&](const BoundaryInterval& J) {
        return BoundaryInterval(moebius_standard(Minv, J.from()), moebius_standard(Minv, J.to()));
    };
    ExtendedNeighborhood out{back(BoundaryInterval(*right_from, inf)), back(BoundaryInterval(inf, *left_to)), {}};
    for (auto& [e, chart] : certs) {
        e.interval = back(chart);
        out.certificates.push_back(e);
    }
    return out;
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Rational: return "Rational";
    case Verdict::Obstructed: return "Obstructed";
    case Verdict::EuclideanUnsupported: return "Euclidean-unsupported";
    case Verdict::Undecided: return "Undecided";
    }
    return "?";
}

std::vector<ExtRational> stern_brocot_slopes(int depth)
{
    // Two halves of the circle as vector chains: [0/1 .. 1/0] and [-1/0 .. 0/1].
    std::vector<std::pair<Integer, Integer>> pos{{0, 1}, {1, 0}}, neg{{-1, 0}, {0, 1}};
    std::vector<ExtRational> out{ExtRational::infinity(), ExtRational(0, 1)};
    for (int level = 1; level <= depth; ++level) {
        std::vector<ExtRational> fresh;
        auto refine = [&](std::vector<std::pair<Integer, Integer>>& chain) {
            std::vector<std::pair<Integer, Integer>> next;
            for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
                next.push_back(chain[i]);
                std::pair<Integer, Integer> m{chain[i].first + chain[i + 1].first, chain[i].second + chain[i + 1].second};
                next.push_back(m);
                fresh.emplace_back(m.first, m.second);
            }
            next.push_back(chain.back());
            chain = std::move(next);
        };
        refine(neg);
        refine(pos);
        out.insert(out.end(), fresh.begin(), fresh.end());
    }
    return out;
}

namespace {

class Decider {
public:
    Decider(const Presentation& P, const DecideOptions& opt) : P_(P), opt_(opt) {}

    const PullbackResult& eval(const ExtRational& s)
    {
        auto it = memo_.find(s);
        if (it == memo_.end()) it = memo_.emplace(s, slope_invariants(P_, s)).first;
        return it->second;
    }

    // Processes one slope; returns true if it is an obstruction.
    bool process(const ExtRational& s, Decision& D)
    {
        ExtRational t = boundary_point(s);
        if (done_.count(s)) return false;
        done_.insert(s);
        const PullbackResult& r = eval(s);
        bool fixed = !r.image.is_odot() && r.image.value() == s;
        if (fixed && r.delta >= 1) {
            D.verdict = Verdict::Obstructed;
            D.obstruction = s;
            D.obstruction_delta = r.delta;
            return true;
        }
        cleared_.insert(t);
        if (fixed || r.image.is_odot()) {
            if (!opt_.use_extended) return false;
            auto nb = extended_excluded_neighborhood(P_, t, opt_.extension_depth);
            if (!nb) return false;
            for (auto& c : nb->certificates) add(c);
        } else {
            add({s, r.image, r.delta, excluded_interval(t, boundary_point(r.image.value()), r.delta), CertificateKind::HalfSpace});
        }
        return false;
    }

    void add(const ExclusionCertificate& c)
    {
        certs_.push_back(c);
        cover_.subtract(c.interval);
    }

    // Uncovered set is finite and made of cleared points.
    static bool finished(const IntervalCover& cover, const std::set<ExtRational>& cleared)
    {
        if (!cover.only_points_left()) return false;
        for (const auto& a : cover.complement())
            if (!cleared.count(a.from)) return false;
        return true;
    }

    Decision run()
    {
        Decision D;
        if (is_euclidean(P_)) {
            D.verdict = Verdict::EuclideanUnsupported;
            return D;
        }
        std::vector<ExtRational> slopes = stern_brocot_slopes(opt_.farey_depth);
        std::size_t idx = 0;
        for (int level = 0; level <= opt_.farey_depth; ++level) {
            std::size_t level_end = level == 0 ? 2 : idx + (std::size_t(1) << level);
            for (; idx < level_end && idx < slopes.size(); ++idx)
                if (process(slopes[idx], D)) {
                    D.depth_reached = level;
                    return D;
                }
            D.depth_reached = level;
            // Isolated leftover points are settled one by one.
            for (bool again = true; again && cover_.only_points_left();) {
                again = false;
                for (const auto& a : cover_.complement()) {
                    if (cleared_.count(a.from)) continue;
                    if (process(slope_from_boundary(a.from), D)) return D;
                    again = true;
                }
            }
            if (finished(cover_, cleared_)) {
                D.verdict = Verdict::Rational;
                D.certificates = prune();
                for (const auto& a : cover_of(D.certificates).complement()) D.cleared_points.push_back(a.from);
                return D;
            }
        }
        D.uncovered = cover_.complement();
        D.certificates = certs_;
        return D;
    }

private:
    static IntervalCover cover_of(const std::vector<ExclusionCertificate>& cs)
    {
        IntervalCover c;
        for (const auto& x : cs) c.subtract(x.interval);
        return c;
    }

    // Drops certificates that the others make redundant, latest first.
    std::vector<ExclusionCertificate> prune() const
    {
        std::vector<ExclusionCertificate> keep = certs_;
        for (std::size_t i = keep.size(); i-- > 0;) {
            std::vector<ExclusionCertificate> trial = keep;
            trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
            if (finished(cover_of(trial), cleared_)) keep = std::move(trial);
        }
        return keep;
    }

    const Presentation& P_;
    DecideOptions opt_;
    std::map<ExtRational, PullbackResult> memo_;
    std::set<ExtRational> done_;
    std::set<ExtRational> cleared_;
    std::vector<ExclusionCertificate> certs_;
    IntervalCover cover_;
};

nlohmann::ordered_json cert_json(const ExclusionCertificate& c)
{
    nlohmann::ordered_json j;
    j["seed"] = c.seed.str();
    j["image"] = c.image.str();
    j["delta"] = rat_str(c.delta);
    j["interval"] = {c.interval.from().str(), c.interval.to().str()};
    j["kind"] = c.kind == CertificateKind::HalfSpace ? "halfspace" : "extended";
    return j;
}

}  // namespace

Decision decide_rationality(const Presentation& P, const DecideOptions& opt)
{
    Decider d(P, opt);
    return d.run();
}

std::string Decision::json() const
{
    nlohmann::ordered_json j;
    j["verdict"] = to_string(verdict);
    if (obstruction) {
        j["obstruction"] = obstruction->str();
        j["delta"] = rat_str(obstruction_delta);
    }
    j["depth_reached"] = depth_reached;
    nlohmann::ordered_json cs = nlohmann::ordered_json::array();
    for (const auto& c : certificates) cs.push_back(cert_json(c));
    j["certificates"] = cs;
    std::vector<std::string> pts;
    for (const auto& p : cleared_points) pts.push_back(p.str());
    j["cleared_points"] = pts;
    std::vector<std::string> un;
    for (const auto& a : uncovered) un.push_back(a.str());
    j["uncovered"] = un;
    return j.dump(2);
}

std::vector<ExtRational> obstruction_slopes(const Presentation& P, long bound)
{
    std::vector<ExtRational> out;
    for (long q = 0; q <= bound; ++q)
        for (long p = -bound; p <= bound; ++p) {
            if (std::gcd(p, q) != 1 || (q == 0 && p != 1)) continue;
            ExtRational s(p, q);
            PullbackResult r = slope_invariants(P, s);
            if (!r.image.is_odot() && r.image.value() == s && r.delta >= 1) out.push_back(s);
        }
    return out;
}

std::vector<ExtRational> oracle_violations(const std::vector<ExtRational>& obstructions, const BoundaryInterval& J)
{
    std::vector<ExtRational> bad;
    for (const auto& s : obstructions)
        if (J.contains(boundary_point(s))) bad.push_back(s);
    return bad;
}

}  // namespace netmap
