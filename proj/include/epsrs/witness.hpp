#pragma once

// Witness-set certification: build the set of witnesses V(H) for a convex hull
// H inside E_d, the directed graph G_eps(H) over it, enumerate its primitive
// cycles, and decide membership in the zero-attractor region D0 by cutting the
// realized cycle regions out of H. Hulls whose witness closure blows past the
// size cap are bisected along their longest edge and certified piecewise.

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dynamics.hpp"
#include "geometry.hpp"
#include "stability.hpp"

namespace epsrs {

struct Caps {
    std::size_t witness_size_cap = 10000;
    int subdivision_depth_cap = 12;
    std::size_t cycle_length_cap = 64;
    std::size_t cycle_step_budget = 4000000;
    long orbit_step_cap = 1000000;
    long expand_step_cap = 20000;
    long box_radius = 25;            // brute-force residue box (digit expansions)
    long refutation_box = 8;         // orbit-search box for boundary parameters
    long refutation_step_cap = 20000;  // per-start step budget in that search
};

struct Hull {
    std::vector<RationalVec> vertices;
    RegionCell cell;  // closed hull cell, populated for d = 2

    std::size_t dim() const { return vertices.at(0).size(); }
};

inline Hull make_hull(std::vector<RationalVec> pts) {
    if (pts.empty()) throw std::invalid_argument("make_hull: no vertices");
    std::size_t d = pts[0].size();
    for (const auto& p : pts) {
        if (p.size() != d) throw std::invalid_argument("make_hull: mixed dimensions");
        if (!strictly_inside_E(p))
            throw std::invalid_argument("make_hull: vertex outside the open region E_d");
    }
    Hull h;
    h.vertices = std::move(pts);
    if (d == 2) {
        std::vector<Point> q;
        for (const auto& p : h.vertices) q.push_back({p[0], p[1]});
        h.cell = cell_from_points(q);
    }
    return h;
}

inline Hull make_hull2(const std::vector<Point>& pts) {
    std::vector<RationalVec> v;
    for (const auto& p : pts) v.push_back({p.x, p.y});
    return make_hull(std::move(v));
}

struct WitnessSetResult {
    std::set<LatticeVector> verts;
    bool capped = false;
};

// Closure of {+-e_1,...,+-e_d} under the successor rule
//   z -> (z_2,...,z_d,t),  t in [min_i floor(-r_i.z), -min_i floor(r_i.z)].
// The rule never reads eps.
inline WitnessSetResult witness_set(const Hull& hull, std::size_t size_cap) {
    if (size_cap == 0) throw std::invalid_argument("witness_set: size_cap must be positive");
    std::size_t d = hull.dim();
    WitnessSetResult out;
    std::deque<LatticeVector> queue;
    auto push = [&](const LatticeVector& z) {
        if (out.verts.insert(z).second) queue.push_back(z);
    };
    for (std::size_t i = 0; i < d; ++i) {
        LatticeVector e(d, Int(0));
        e[i] = 1;
        push(e);
        e[i] = -1;
        push(e);
    }
    while (!queue.empty()) {
        if (out.verts.size() > size_cap) {
            out.capped = true;
            return out;
        }
        LatticeVector z = queue.front();
        queue.pop_front();
        std::optional<Int> lo, hi;
        for (const auto& r : hull.vertices) {
            Rational v = dot(r, z);
            Int fneg = (-v).floor();
            Int f = v.floor();
            if (!lo || fneg < *lo) lo = fneg;
            if (!hi || f < *hi) hi = f;
        }
        LatticeVector succ(z.begin() + 1, z.end());
        succ.push_back(Int(0));
        for (Int t = *lo; t <= -*hi; ++t) {
            succ[d - 1] = t;
            push(succ);
        }
    }
    return out;
}

struct WitnessGraph {
    std::vector<LatticeVector> verts;  // sorted ascending
    std::vector<std::vector<int>> adj;
    Rational eps;

    std::size_t edge_count() const {
        std::size_t n = 0;
        for (const auto& a : adj) n += a.size();
        return n;
    }
    int index_of(const LatticeVector& z) const {
        auto it = std::lower_bound(verts.begin(), verts.end(), z);
        if (it == verts.end() || *it != z) return -1;
        return (int)(it - verts.begin());
    }
};

// Edges z -> (z_2,...,z_d,t) for t in [-max_i floor(r_i.z+eps), -min_i floor(r_i.z+eps)],
// kept only when the target is a witness.
inline WitnessGraph build_graph(const std::set<LatticeVector>& V, const Hull& hull,
                                const Rational& eps) {
    WitnessGraph g;
    g.eps = eps;
    g.verts.assign(V.begin(), V.end());
    g.adj.resize(g.verts.size());
    std::size_t d = hull.dim();
    for (std::size_t vi = 0; vi < g.verts.size(); ++vi) {
        const LatticeVector& z = g.verts[vi];
        std::optional<Int> fmin, fmax;
        for (const auto& r : hull.vertices) {
            Int f = (dot(r, z) + eps).floor();
            if (!fmin || f < *fmin) fmin = f;
            if (!fmax || f > *fmax) fmax = f;
        }
        LatticeVector succ(z.begin() + 1, z.end());
        succ.push_back(Int(0));
        for (Int t = -*fmax; t <= -*fmin; ++t) {
            succ[d - 1] = t;
            int ti = g.index_of(succ);
            if (ti >= 0) g.adj[vi].push_back(ti);
        }
    }
    return g;
}

struct CycleEnumeration {
    std::set<Cycle> cycles;
    bool capped = false;
};

// All elementary directed cycles, as canonical first-entry necklaces. Rooted
// DFS restricted to indices >= root yields each cycle exactly once.
inline CycleEnumeration primitive_cycles(const WitnessGraph& g, std::size_t length_cap = 64,
                                         std::size_t step_budget = 4000000) {
    CycleEnumeration out;
    std::size_t n = g.verts.size();
    std::vector<int> path;
    std::vector<bool> onpath(n, false);
    std::size_t steps = 0;

    std::function<void(int, int)> dfs = [&](int root, int v) {
        if (++steps > step_budget) {
            out.capped = true;
            return;
        }
        for (int w : g.adj[v]) {
            if (w < root || out.capped) continue;
            if (w == root) {
                std::vector<Int> word;
                for (int u : path) word.push_back(g.verts[(std::size_t)u][0]);
                out.cycles.insert(canonical_cycle(word));
            } else if (!onpath[(std::size_t)w]) {
                if (path.size() >= length_cap) {
                    out.capped = true;
                    continue;
                }
                onpath[(std::size_t)w] = true;
                path.push_back(w);
                dfs(root, w);
                path.pop_back();
                onpath[(std::size_t)w] = false;
            }
        }
    };

    for (int root = 0; root < (int)n && !out.capped; ++root) {
        onpath[(std::size_t)root] = true;
        path.assign(1, root);
        dfs(root, root);
        onpath[(std::size_t)root] = false;
    }
    return out;
}

struct Certificate {
    enum class Verdict { subset_of_D0, cut_out, point_in_D0, point_not_in_D0, inconclusive };

    struct CutPiece {
        Cycle cycle;
        RegionCell residual;
    };
    struct Stats {
        std::size_t vertices = 0, edges = 0, subdivisions = 0;
    };

    Verdict verdict = Verdict::inconclusive;
    std::vector<CutPiece> pieces;        // nonempty intersections H cap P_eps(pi)
    std::vector<Cycle> cycles;           // all nontrivial graph cycles found
    std::optional<Cycle> witness_cycle;  // refuting cycle (point refutations)
    std::string reason;
    Stats stats;

    std::vector<RegionCell> residual_cells() const {
        std::vector<RegionCell> out;
        for (const auto& p : pieces) out.push_back(p.residual);
        return out;
    }
};

inline const char* to_string(Certificate::Verdict v) {
    switch (v) {
        case Certificate::Verdict::subset_of_D0: return "subset_of_D0";
        case Certificate::Verdict::cut_out: return "cut_out";
        case Certificate::Verdict::point_in_D0: return "point_in_D0";
        case Certificate::Verdict::point_not_in_D0: return "point_not_in_D0";
        case Certificate::Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

// Longest-edge bisection. The two children cover the hull and have disjoint
// interiors. Zero-diameter hulls cannot be split.
inline std::vector<Hull> subdivide(const Hull& hull) {
    if (hull.dim() != 2) throw std::invalid_argument("subdivide: only d = 2 is supported");
    const RegionCell& cell = hull.cell;
    auto mid = [](const Point& a, const Point& b) {
        return Point{(a.x + b.x) / Rational(2), (a.y + b.y) / Rational(2)};
    };
    if (cell.kind == CellKind::point)
        throw std::invalid_argument("subdivide: zero-diameter hull");
    if (cell.kind == CellKind::segment) {
        Point m = mid(cell.verts[0], cell.verts[1]);
        return {make_hull2({cell.verts[0], m}), make_hull2({m, cell.verts[1]})};
    }
    const auto& v = cell.verts;
    std::size_t n = v.size();
    std::size_t longest = 0;
    Rational best(-1);
    for (std::size_t i = 0; i < n; ++i) {
        const Point &a = v[i], &b = v[(i + 1) % n];
        Rational len2 = (b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y);
        if (len2 > best) {
            best = len2;
            longest = i;
        }
    }
    const Point &ea = v[longest], &eb = v[(longest + 1) % n];
    Point m = mid(ea, eb);
    // Split toward the vertex farthest from the longest edge's line.
    Rational la = eb.y - ea.y, lb = ea.x - eb.x;
    Rational lc = -(la * ea.x + lb * ea.y);
    std::size_t far = (longest + 2) % n;
    Rational fbest(-1);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == longest || i == (longest + 1) % n) continue;
        Rational dist = la * v[i].x + lb * v[i].y + lc;
        if (dist < Rational(0)) dist = -dist;
        if (dist > fbest) {
            fbest = dist;
            far = i;
        }
    }
    std::vector<Point> left{m}, right{m};
    for (std::size_t i = (longest + 1) % n;; i = (i + 1) % n) {
        left.push_back(v[i]);
        if (i == far) break;
    }
    for (std::size_t i = far;; i = (i + 1) % n) {
        right.push_back(v[i]);
        if (i == longest) break;
    }
    return {make_hull2(left), make_hull2(right)};
}

namespace detail {

inline Certificate certify_hull_rec(const Hull& hull, const Rational& eps, const Caps& caps,
                                    int depth) {
    Certificate cert;
    WitnessSetResult vs = witness_set(hull, caps.witness_size_cap);
    if (vs.capped) {
        if (depth >= caps.subdivision_depth_cap) {
            cert.verdict = Certificate::Verdict::inconclusive;
            cert.reason = "witness size cap and subdivision depth exhausted";
            return cert;
        }
        std::vector<Hull> parts;
        try {
            parts = subdivide(hull);
        } catch (const std::invalid_argument&) {
            cert.verdict = Certificate::Verdict::inconclusive;
            cert.reason = "witness size cap on an unsplittable hull";
            return cert;
        }
        cert.stats.subdivisions = 1;
        bool any_cut = false;
        for (const Hull& part : parts) {
            Certificate sub = certify_hull_rec(part, eps, caps, depth + 1);
            cert.stats.vertices += sub.stats.vertices;
            cert.stats.edges += sub.stats.edges;
            cert.stats.subdivisions += sub.stats.subdivisions;
            if (sub.verdict == Certificate::Verdict::inconclusive) {
                cert.verdict = Certificate::Verdict::inconclusive;
                cert.reason = sub.reason;
                return cert;
            }
            if (sub.verdict == Certificate::Verdict::cut_out) any_cut = true;
            for (auto& piece : sub.pieces) cert.pieces.push_back(std::move(piece));
            for (auto& c : sub.cycles)
                if (std::find(cert.cycles.begin(), cert.cycles.end(), c) == cert.cycles.end())
                    cert.cycles.push_back(c);
        }
        cert.verdict = any_cut ? Certificate::Verdict::cut_out
                               : Certificate::Verdict::subset_of_D0;
        return cert;
    }

    WitnessGraph g = build_graph(vs.verts, hull, eps);
    cert.stats.vertices = g.verts.size();
    cert.stats.edges = g.edge_count();
    CycleEnumeration ce = primitive_cycles(g, caps.cycle_length_cap, caps.cycle_step_budget);
    if (ce.capped) {
        cert.verdict = Certificate::Verdict::inconclusive;
        cert.reason = "cycle enumeration cap reached";
        return cert;
    }
    for (const Cycle& c : ce.cycles) {
        if (c.trivial()) continue;
        cert.cycles.push_back(c);
        RegionCell cut = cell_meet(hull.cell, cycle_realized_region(c, eps));
        if (!cut.is_empty()) cert.pieces.push_back({c, cut});
    }
    cert.verdict = cert.pieces.empty() ? Certificate::Verdict::subset_of_D0
                                       : Certificate::Verdict::cut_out;
    return cert;
}

}  // namespace detail

// Certify H cap D0 for a closed convex hull H strictly inside E_2.
inline Certificate certify_hull(const Hull& hull, const Rational& eps, const Caps& caps = {}) {
    if (hull.dim() != 2)
        throw std::invalid_argument("certify_hull: only d = 2 carries exact cutout geometry");
    if (eps < Rational(0) || eps >= Rational(1))
        throw std::invalid_argument("certify_hull: eps must lie in [0,1)");
    return detail::certify_hull_rec(hull, eps, caps, 0);
}

// Decide whether a single parameter lies in D0. Parameters strictly inside E_d
// get the witness certificate; parameters strictly outside the closure of E_d
// are refuted outright (every orbit escapes to infinity there); parameters on
// the boundary get an orbit search for a periodic counterexample.
inline Certificate decide_point(const SrsParameter& p, const Caps& caps = {}) {
    Certificate cert;
    std::size_t d = p.dim();
    if (strictly_inside_E(p.r)) {
        Hull hull = make_hull({p.r});
        WitnessSetResult vs = witness_set(hull, caps.witness_size_cap);
        if (!vs.capped) {
            WitnessGraph g = build_graph(vs.verts, hull, p.eps);
            cert.stats.vertices = g.verts.size();
            cert.stats.edges = g.edge_count();
            CycleEnumeration ce = primitive_cycles(g, caps.cycle_length_cap,
                                                   caps.cycle_step_budget);
            if (!ce.capped) {
                for (const Cycle& c : ce.cycles)
                    if (!c.trivial()) cert.cycles.push_back(c);
                if (cert.cycles.empty()) {
                    cert.verdict = Certificate::Verdict::point_in_D0;
                } else {
                    cert.verdict = Certificate::Verdict::point_not_in_D0;
                    cert.witness_cycle = cert.cycles.front();
                    cert.reason = "nontrivial witness-graph cycle";
                }
                return cert;
            }
        }
        cert.verdict = Certificate::Verdict::inconclusive;
        cert.reason = "witness cap reached on a point parameter";
        return cert;
    }
    if (strictly_outside_closed_E(p.r)) {
        cert.verdict = Certificate::Verdict::point_not_in_D0;
        cert.reason = "parameter outside the closed region carrying bounded orbits";
        return cert;
    }
    // Boundary of E_d: orbit search only.
    std::vector<Int> probe(d, Int(0));
    for (long radius = 1; radius <= caps.refutation_box; ++radius) {
        std::vector<long> idx(d, -radius);
        while (true) {
            bool on_shell = false;
            for (std::size_t i = 0; i < d; ++i)
                if (idx[i] == radius || idx[i] == -radius) on_shell = true;
            if (on_shell) {
                for (std::size_t i = 0; i < d; ++i) probe[i] = idx[i];
                OrbitOutcome out = orbit(p, probe, caps.refutation_step_cap);
                if (out.kind == OrbitOutcome::Kind::periodic) {
                    cert.verdict = Certificate::Verdict::point_not_in_D0;
                    cert.witness_cycle = out.cycle;
                    cert.cycles = {out.cycle};
                    cert.reason = "periodic orbit found by box search";
                    return cert;
                }
            }
            std::size_t k = 0;
            while (k < d && idx[k] == radius) idx[k++] = -radius;
            if (k == d) break;
            ++idx[k];
        }
    }
    cert.verdict = Certificate::Verdict::inconclusive;
    cert.reason = "boundary parameter, no periodic orbit found within the search box";
    return cert;
}

}  // namespace epsrs
