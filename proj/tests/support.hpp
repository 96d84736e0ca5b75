#pragma once

#include "netmap/presentation.hpp"

#include <numeric>
#include <random>
#include <string>

namespace testsupport {

inline netmap::Presentation corpus(const std::string& name)
{
    return netmap::load_presentation(std::string(NETMAP_CORPUS_DIR) + "/" + name);
}

inline netmap::IntMat2 random_sl2(std::mt19937_64& rng, int steps = 4)
{
    std::uniform_int_distribution<int> pick(0, 2), k(-2, 2);
    netmap::IntMat2 M = netmap::IntMat2::identity();
    for (int i = 0; i < steps; ++i) {
        int e = k(rng);
        switch (pick(rng)) {
        case 0: M = M * netmap::IntMat2{1, e, 0, 1}; break;
        case 1: M = M * netmap::IntMat2{1, 0, e, 1}; break;
        default: M = M * netmap::IntMat2{0, -1, 1, 0}; break;
        }
    }
    return M;
}

/// A valid non-Euclidean presentation of degree 2..max_degree with short arcs.
inline netmap::Presentation random_presentation(std::mt19937_64& rng, int max_degree = 4)
{
    using namespace netmap;
    std::uniform_int_distribution<int> ent(-2, 2), off(-2, 2), tr(0, 3);
    for (;;) {
        Presentation P;
        P.lambda1 = {ent(rng), ent(rng)};
        P.lambda2 = {ent(rng), ent(rng)};
        std::int64_t D = P.lattice().det();
        if (D < 2 || D > max_degree) continue;
        P.translation = static_cast<LatticeClass>(tr(rng));
        for (int k = 0; k < 4; ++k) {
            auto c = static_cast<LatticeClass>(k);
            P.arcs[k] = {c, P.class_point(c) + Vec2{off(rng), off(rng)}};
        }
        try {
            if (validate(P).valid && !is_euclidean(P)) return P;
        } catch (const DomainError&) {
        }
    }
}

/// Reduced slopes p/q with |p| <= n, 0 <= q <= n, ∞ included once.
inline std::vector<netmap::ExtRational> small_slopes(long n)
{
    std::vector<netmap::ExtRational> out;
    for (long q = 0; q <= n; ++q)
        for (long p = -n; p <= n; ++p) {
            if (std::gcd(p, q) != 1) continue;
            if (q == 0 && p != 1) continue;
            out.emplace_back(p, q);
        }
    return out;
}

}  // namespace testsupport
