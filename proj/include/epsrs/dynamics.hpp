#pragma once

// The map tau_{r,eps}(z) = (z_2,...,z_d, -floor(r.z + eps)) on Z^d, orbit
// iteration with exact cycle extraction, canonical necklace representatives,
// and the cutout polyhedron realized by a cycle (d = 2).

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "geometry.hpp"
#include "rational.hpp"

namespace epsrs {

struct SrsParameter {
    RationalVec r;
    Rational eps;

    SrsParameter(RationalVec r_, Rational eps_) : r(std::move(r_)), eps(std::move(eps_)) {
        if (r.empty()) throw std::invalid_argument("SrsParameter: empty r");
        if (eps < Rational(0) || eps >= Rational(1))
            throw std::invalid_argument("SrsParameter: eps must lie in [0,1)");
    }
    std::size_t dim() const { return r.size(); }
};

// A primitive necklace (z_1,...,z_l): not a power of a shorter word and
// lexicographically minimal among its rotations.
struct Cycle {
    std::vector<Int> word;

    bool trivial() const { return word.size() == 1 && word[0] == 0; }
    friend bool operator==(const Cycle& a, const Cycle& b) { return a.word == b.word; }
    friend bool operator<(const Cycle& a, const Cycle& b) { return a.word < b.word; }
};

inline Cycle canonical_cycle(std::vector<Int> entries) {
    if (entries.empty()) throw std::invalid_argument("canonical_cycle: empty word");
    std::size_t l = entries.size();
    for (std::size_t p = 1; p < l; ++p) {
        if (l % p != 0) continue;
        bool periodic = true;
        for (std::size_t i = p; i < l && periodic; ++i) periodic = entries[i] == entries[i - p];
        if (periodic) {
            entries.resize(p);
            l = p;
            break;
        }
    }
    std::vector<Int> best = entries;
    std::vector<Int> rot = entries;
    for (std::size_t s = 1; s < l; ++s) {
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        if (rot < best) best = rot;
    }
    return Cycle{best};
}

inline LatticeVector tau_step(const SrsParameter& p, const LatticeVector& z) {
    if (z.size() != p.dim()) throw std::invalid_argument("tau_step: dimension mismatch");
    LatticeVector next(z.begin() + 1, z.end());
    next.push_back(-floor_affine(p.r, z, p.eps));
    return next;
}

struct OrbitOutcome {
    enum class Kind { reaches_zero, periodic, cap_exceeded };
    Kind kind;
    long steps = 0;      // steps taken (reaches_zero / cap_exceeded)
    long preperiod = 0;  // periodic only
    Cycle cycle;         // periodic only
};

inline bool is_zero(const LatticeVector& z) {
    for (const auto& e : z)
        if (e != 0) return false;
    return true;
}

inline OrbitOutcome orbit(const SrsParameter& p, const LatticeVector& z0, long step_cap) {
    if (step_cap <= 0) throw std::invalid_argument("orbit: step_cap must be positive");
    static const Int norm_guard = [] {
        Int g;
        mpz_ui_pow_ui(g.get_mpz_t(), 10, 30);
        return g;
    }();
    std::map<LatticeVector, long> seen;
    std::vector<LatticeVector> trail;
    LatticeVector z = z0;
    for (long step = 0; step <= step_cap; ++step) {
        if (is_zero(z)) return {OrbitOutcome::Kind::reaches_zero, step, 0, {}};
        // An orbit that escaped this far can never be certified by finite
        // iteration; report the cap instead of grinding on huge integers.
        for (const auto& e : z)
            if (abs(e) > norm_guard) return {OrbitOutcome::Kind::cap_exceeded, step, 0, {}};
        auto it = seen.find(z);
        if (it != seen.end()) {
            long start = it->second;
            std::vector<Int> word;
            for (std::size_t i = (std::size_t)start; i < trail.size(); ++i)
                word.push_back(trail[i][0]);
            return {OrbitOutcome::Kind::periodic, step, start, canonical_cycle(word)};
        }
        seen.emplace(z, step);
        trail.push_back(z);
        z = tau_step(p, z);
    }
    return {OrbitOutcome::Kind::cap_exceeded, step_cap, 0, {}};
}

// Cutout polyhedron P_eps(pi) for d = 2: for every rotation i, the pair
//   0 <= x z_{1+i} + y z_{2+i} + z_{3+i} + eps   (closed)
//        x z_{1+i} + y z_{2+i} + z_{3+i} + eps < 1   (strict),
// indices mod l.
inline RegionCell cycle_realized_region(const Cycle& cycle, const Rational& eps, int d = 2) {
    if (d != 2) throw std::invalid_argument("cycle_realized_region: only d = 2 is supported");
    if (cycle.word.empty()) throw std::invalid_argument("cycle_realized_region: empty cycle");
    const auto& w = cycle.word;
    std::size_t l = w.size();
    std::vector<HalfPlane> hs;
    for (std::size_t i = 0; i < l; ++i) {
        Rational a(w[i % l]), b(w[(i + 1) % l]);
        Rational c0 = Rational(w[(i + 2) % l]) + eps;
        hs.push_back({a, b, c0, false});                    // f >= 0
        hs.push_back({-a, -b, Rational(1) - c0, true});     // f < 1
    }
    return cell_from_halfplanes(hs);
}

}  // namespace epsrs
