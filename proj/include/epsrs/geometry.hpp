#pragma once

// Exact 2-D convex cells cut out by half-planes with per-constraint open/closed
// strictness. A cell is the point set {p : a_i p.x + b_i p.y + c_i >= 0 (or > 0)}.
// Cells may be unbounded (strips, half-planes); vertex data is populated for
// bounded cells and the constraint list always decides membership exactly.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace epsrs {

struct Point {
    Rational x, y;

    friend bool operator==(const Point& p, const Point& q) { return p.x == q.x && p.y == q.y; }
    friend bool operator!=(const Point& p, const Point& q) { return !(p == q); }
    friend bool operator<(const Point& p, const Point& q) {
        if (p.x != q.x) return p.x < q.x;
        return p.y < q.y;
    }
};

inline Rational cross(const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Half-plane {a x + b y + c >= 0}, or with strict=true the open version {... > 0}.
struct HalfPlane {
    Rational a, b, c;
    bool strict = false;

    Rational eval(const Point& p) const { return a * p.x + b * p.y + c; }
    bool admits(const Point& p) const {
        Rational v = eval(p);
        return strict ? v > Rational(0) : v >= Rational(0);
    }
    HalfPlane closed() const { return {a, b, c, false}; }
    HalfPlane opened() const { return {a, b, c, true}; }
};

enum class CellKind { empty, point, segment, polygon };

inline const char* to_string(CellKind k) {
    switch (k) {
        case CellKind::empty: return "empty";
        case CellKind::point: return "point";
        case CellKind::segment: return "segment";
        case CellKind::polygon: return "polygon";
    }
    return "?";
}

struct RegionCell {
    CellKind kind = CellKind::empty;
    bool bounded = true;
    std::vector<HalfPlane> constraints;  // normalized and deduplicated
    // Canonical geometry (bounded cells): polygon vertices CCW starting from the
    // lexicographically smallest; segment endpoints in lexicographic order.
    std::vector<Point> verts;
    std::vector<bool> vert_in;  // vertex i belongs to the cell
    std::vector<bool> edge_in;  // polygon edge verts[i] -> verts[i+1 mod n]

    bool is_empty() const { return kind == CellKind::empty; }
};

namespace detail {

// Scale (a,b,c) to coprime integers, preserving orientation.
inline HalfPlane normalize(const HalfPlane& h) {
    Int l = lcm(lcm(h.a.den(), h.b.den()), h.c.den());
    Int A = h.a.num() * (l / h.a.den());
    Int B = h.b.num() * (l / h.b.den());
    Int C = h.c.num() * (l / h.c.den());
    Int g = gcd(gcd(abs(A), abs(B)), abs(C));
    if (g > 1) { A /= g; B /= g; C /= g; }
    return {Rational(A), Rational(B), Rational(C), h.strict};
}

inline std::vector<HalfPlane> normalize_set(const std::vector<HalfPlane>& hs) {
    std::map<std::tuple<Int, Int, Int>, bool> seen;  // (a,b,c) -> strict
    std::vector<HalfPlane> kept;
    for (const auto& h0 : hs) {
        if (h0.a == Rational(0) && h0.b == Rational(0)) {
            // Degenerate constraint: constant truth value.
            if (h0.admits(Point{Rational(0), Rational(0)})) continue;
            return {HalfPlane{Rational(0), Rational(1), Rational(-1)},
                    HalfPlane{Rational(0), Rational(-1), Rational(-1)}};  // unsatisfiable pair
        }
        HalfPlane h = normalize(h0);
        auto key = std::make_tuple(h.a.num(), h.b.num(), h.c.num());
        auto it = seen.find(key);
        if (it == seen.end()) {
            seen.emplace(key, h.strict);
            kept.push_back(h);
        } else if (h.strict && !it->second) {
            it->second = true;
        }
    }
    std::vector<HalfPlane> out;
    out.reserve(kept.size());
    for (auto& h : kept) {
        h.strict = seen[std::make_tuple(h.a.num(), h.b.num(), h.c.num())];
        out.push_back(h);
    }
    return out;
}

struct Bound {
    Rational value;
    bool strict;
};

// One-dimensional system: alpha t + beta >= 0 (or > 0). Returns the feasible
// interval as optional lower/upper bounds, or nullopt if infeasible.
struct Interval1D {
    std::optional<Bound> lo, hi;
    bool infeasible = false;

    void add(const Rational& alpha, const Rational& beta, bool strict) {
        if (infeasible) return;
        if (alpha == Rational(0)) {
            bool ok = strict ? beta > Rational(0) : beta >= Rational(0);
            if (!ok) infeasible = true;
            return;
        }
        Rational t = -beta / alpha;
        if (alpha > Rational(0)) {
            if (!lo || t > lo->value || (t == lo->value && strict)) lo = Bound{t, strict};
        } else {
            if (!hi || t < hi->value || (t == hi->value && strict)) hi = Bound{t, strict};
        }
    }

    bool feasible() const {
        if (infeasible) return false;
        if (lo && hi) {
            if (lo->value > hi->value) return false;
            if (lo->value == hi->value && (lo->strict || hi->strict)) return false;
        }
        return true;
    }

    // A point of the feasible set (requires feasible()).
    Rational pick() const {
        if (lo && hi) {
            if (lo->value == hi->value) return lo->value;
            return (lo->value + hi->value) / Rational(2);
        }
        if (lo) return lo->value + Rational(1);
        if (hi) return hi->value - Rational(1);
        return Rational(0);
    }
};

// Exact feasibility of a 2-D system via Fourier-Motzkin elimination of x.
// Returns a witness point when feasible.
inline std::optional<Point> feasible_point(const std::vector<HalfPlane>& hs) {
    struct XBound {
        Rational alpha, beta;  // x >= alpha y + beta (lower) or x <= ... (upper)
        bool strict;
    };
    std::vector<XBound> lowers, uppers;
    Interval1D ysys;
    for (const auto& h : hs) {
        if (h.a == Rational(0)) {
            ysys.add(h.b, h.c, h.strict);
        } else if (h.a > Rational(0)) {
            lowers.push_back({-h.b / h.a, -h.c / h.a, h.strict});
        } else {
            uppers.push_back({-h.b / h.a, -h.c / h.a, h.strict});
        }
    }
    for (const auto& l : lowers)
        for (const auto& u : uppers)
            ysys.add(u.alpha - l.alpha, u.beta - l.beta, l.strict || u.strict);
    if (!ysys.feasible()) return std::nullopt;
    Rational y = ysys.pick();
    Interval1D xsys;
    for (const auto& l : lowers) xsys.add(Rational(1), -(l.alpha * y + l.beta), l.strict);
    for (const auto& u : uppers) xsys.add(Rational(-1), u.alpha * y + u.beta, u.strict);
    if (!xsys.feasible()) return std::nullopt;  // not reachable for exact FM
    return Point{xsys.pick(), y};
}

inline std::vector<HalfPlane> with_all(std::vector<HalfPlane> hs, bool strict) {
    for (auto& h : hs) h.strict = strict;
    return hs;
}

// Unboundedness of the closed region: some direction w with grad.w >= 0 for all
// constraints. Candidate extreme directions are the constraint-line directions.
inline bool closed_region_unbounded(const std::vector<HalfPlane>& hs) {
    if (hs.empty()) return true;
    auto admits_dir = [&](const Rational& u, const Rational& v) {
        for (const auto& h : hs)
            if (h.a * u + h.b * v < Rational(0)) return false;
        return true;
    };
    for (const auto& h : hs) {
        if (admits_dir(-h.b, h.a)) return true;
        if (admits_dir(h.b, -h.a)) return true;
    }
    return false;
}

inline Point line_base_point(const HalfPlane& h) {
    if (h.b != Rational(0)) return {Rational(0), -h.c / h.b};
    return {-h.c / h.a, Rational(0)};
}

}  // namespace detail

inline bool cell_contains(const RegionCell& cell, const Point& q) {
    if (cell.kind == CellKind::empty) return false;
    for (const auto& h : cell.constraints)
        if (!h.admits(q)) return false;
    return true;
}

inline bool cell_contains(const RegionCell& cell, const Rational& x, const Rational& y) {
    return cell_contains(cell, Point{x, y});
}

// Exact intersection of half-planes, classified with strictness bookkeeping.
inline RegionCell cell_from_halfplanes(const std::vector<HalfPlane>& input) {
    RegionCell cell;
    cell.constraints = detail::normalize_set(input);
    const auto& hs = cell.constraints;

    if (!detail::feasible_point(hs)) {
        cell.kind = CellKind::empty;
        return cell;
    }
    if (detail::feasible_point(detail::with_all(hs, true))) {
        // Full-dimensional: enumerate corners of the closed polygon.
        cell.kind = CellKind::polygon;
        cell.bounded = !detail::closed_region_unbounded(hs);
        std::vector<Point> pts;
        for (std::size_t i = 0; i < hs.size(); ++i) {
            for (std::size_t j = i + 1; j < hs.size(); ++j) {
                Rational det = hs[i].a * hs[j].b - hs[j].a * hs[i].b;
                if (det == Rational(0)) continue;
                Point p{(hs[i].b * hs[j].c - hs[j].b * hs[i].c) / det,
                        (hs[j].a * hs[i].c - hs[i].a * hs[j].c) / det};
                bool ok = true;
                for (const auto& h : hs)
                    if (h.eval(p) < Rational(0)) { ok = false; break; }
                if (ok) pts.push_back(p);
            }
        }
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        if (!cell.bounded) {
            cell.verts = pts;  // corner points only; membership comes from constraints
            return cell;
        }
        // CCW angular order around the centroid, then rotate to the lex-min vertex.
        Point c{Rational(0), Rational(0)};
        for (const auto& p : pts) { c.x += p.x; c.y += p.y; }
        c.x /= Rational((long)pts.size());
        c.y /= Rational((long)pts.size());
        auto upper = [&](const Point& p) {
            if (p.y != c.y) return p.y > c.y;
            return p.x > c.x;
        };
        std::sort(pts.begin(), pts.end(), [&](const Point& p, const Point& q) {
            bool up = upper(p), uq = upper(q);
            if (up != uq) return up;
            return cross(c, p, q) > Rational(0);
        });
        std::size_t start = 0;
        for (std::size_t i = 1; i < pts.size(); ++i)
            if (pts[i] < pts[start]) start = i;
        std::rotate(pts.begin(), pts.begin() + (long)start, pts.end());
        cell.verts = pts;
        std::size_t n = pts.size();
        cell.vert_in.assign(n, true);
        cell.edge_in.assign(n, true);
        for (const auto& h : hs) {
            if (!h.strict) continue;
            std::vector<bool> tight(n);
            for (std::size_t i = 0; i < n; ++i) tight[i] = h.eval(pts[i]) == Rational(0);
            for (std::size_t i = 0; i < n; ++i) {
                if (tight[i]) cell.vert_in[i] = false;
                if (tight[i] && tight[(i + 1) % n]) cell.edge_in[i] = false;
            }
        }
        return cell;
    }

    // Lower-dimensional: the set lies on a constraint line.
    std::size_t li = hs.size();
    for (std::size_t i = 0; i < hs.size(); ++i) {
        auto probe = detail::with_all(hs, false);
        probe.push_back(hs[i].opened());
        if (!detail::feasible_point(probe)) { li = i; break; }
    }
    if (li == hs.size()) throw std::logic_error("cell_from_halfplanes: no carrier line");
    Point p0 = detail::line_base_point(hs[li]);
    Rational dx = -hs[li].b, dy = hs[li].a;
    detail::Interval1D t;
    for (const auto& h : hs)
        t.add(h.a * dx + h.b * dy, h.eval(p0), h.strict);
    if (!t.feasible()) { cell.kind = CellKind::empty; return cell; }
    auto at = [&](const Rational& s) { return Point{p0.x + dx * s, p0.y + dy * s}; };
    if (t.lo && t.hi && t.lo->value == t.hi->value) {
        cell.kind = CellKind::point;
        cell.verts = {at(t.lo->value)};
        cell.vert_in = {true};
        return cell;
    }
    cell.kind = CellKind::segment;
    if (t.lo && t.hi) {
        Point a = at(t.lo->value), b = at(t.hi->value);
        bool ain = !t.lo->strict, bin = !t.hi->strict;
        if (b < a) { std::swap(a, b); std::swap(ain, bin); }
        cell.verts = {a, b};
        cell.vert_in = {ain, bin};
        cell.edge_in = {true};
    } else {
        cell.bounded = false;
        if (t.lo) {
            cell.verts = {at(t.lo->value)};
            cell.vert_in = {!t.lo->strict};
        } else if (t.hi) {
            cell.verts = {at(t.hi->value)};
            cell.vert_in = {!t.hi->strict};
        }
    }
    return cell;
}

inline RegionCell cell_meet(const RegionCell& a, const RegionCell& b) {
    std::vector<HalfPlane> hs = a.constraints;
    hs.insert(hs.end(), b.constraints.begin(), b.constraints.end());
    if (a.kind == CellKind::empty || b.kind == CellKind::empty) {
        RegionCell e;
        e.kind = CellKind::empty;
        e.constraints = detail::normalize_set(hs);
        return e;
    }
    return cell_from_halfplanes(hs);
}

inline RegionCell cell_meet(const RegionCell& a, const std::vector<HalfPlane>& hs) {
    std::vector<HalfPlane> all = a.constraints;
    all.insert(all.end(), hs.begin(), hs.end());
    return cell_from_halfplanes(all);
}

// Closed convex hull of a point set as a cell.
inline RegionCell cell_from_points(std::vector<Point> pts) {
    if (pts.empty()) throw std::invalid_argument("cell_from_points: no points");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<HalfPlane> hs;
    if (pts.size() == 1) {
        const Point& p = pts[0];
        hs = {{Rational(1), Rational(0), -p.x}, {Rational(-1), Rational(0), p.x},
              {Rational(0), Rational(1), -p.y}, {Rational(0), Rational(-1), p.y}};
        return cell_from_halfplanes(hs);
    }
    // Monotone chain; collinear inputs collapse to a segment.
    std::vector<Point> hull;
    auto build = [&](bool lower) {
        std::vector<Point> chain;
        auto scan = [&](const Point& p) {
            while (chain.size() >= 2 &&
                   cross(chain[chain.size() - 2], chain[chain.size() - 1], p) <= Rational(0))
                chain.pop_back();
            chain.push_back(p);
        };
        if (lower)
            for (const auto& p : pts) scan(p);
        else
            for (auto it = pts.rbegin(); it != pts.rend(); ++it) scan(*it);
        chain.pop_back();
        hull.insert(hull.end(), chain.begin(), chain.end());
    };
    build(true);
    build(false);
    if (hull.size() < 3) {
        const Point& p = pts.front();
        const Point& q = pts.back();
        Rational a = q.y - p.y, b = p.x - q.x;  // line through p,q
        Rational c = -(a * p.x + b * p.y);
        Rational dx = q.x - p.x, dy = q.y - p.y;
        hs = {{a, b, c}, {-a, -b, -c},
              {dx, dy, -(dx * p.x + dy * p.y)},
              {-dx, -dy, dx * q.x + dy * q.y}};
        return cell_from_halfplanes(hs);
    }
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Point& p = hull[i];
        const Point& q = hull[(i + 1) % hull.size()];
        Rational a = -(q.y - p.y), b = q.x - p.x;  // inward normal for CCW hull
        hs.push_back({a, b, -(a * p.x + b * p.y)});
    }
    return cell_from_halfplanes(hs);
}

// Structural equality of canonical geometry. Meaningful for bounded cells.
inline bool cell_equal(const RegionCell& a, const RegionCell& b) {
    return a.kind == b.kind && a.bounded == b.bounded && a.verts == b.verts &&
           a.vert_in == b.vert_in && a.edge_in == b.edge_in;
}

// Closure / interior act on the defining constraints, so a half-open cell that
// happens to be empty still has a meaningful (possibly nonempty) closure.
inline RegionCell cell_closure(const RegionCell& c) {
    if (c.constraints.empty() && c.kind == CellKind::empty) return c;
    return cell_from_halfplanes(detail::with_all(c.constraints, false));
}

inline RegionCell cell_interior(const RegionCell& c) {
    if (c.constraints.empty() && c.kind == CellKind::empty) return c;
    return cell_from_halfplanes(detail::with_all(c.constraints, true));
}

// Twice the signed area of the (bounded, full-dimensional) cell.
inline Rational cell_double_area(const RegionCell& c) {
    if (c.kind != CellKind::polygon || !c.bounded) return Rational(0);
    Rational s;
    for (std::size_t i = 0; i < c.verts.size(); ++i) {
        const Point& p = c.verts[i];
        const Point& q = c.verts[(i + 1) % c.verts.size()];
        s += p.x * q.y - q.x * p.y;
    }
    return s;
}

// A point of the cell, when one exists.
inline std::optional<Point> cell_sample(const RegionCell& c) {
    if (c.kind == CellKind::empty) return std::nullopt;
    return detail::feasible_point(c.constraints);
}

// Membership decided from the stored geometry alone (bounded cells); used as an
// independent cross-check of the constraint-based predicate.
inline bool cell_contains_geometric(const RegionCell& c, const Point& q) {
    switch (c.kind) {
        case CellKind::empty:
            return false;
        case CellKind::point:
            return c.verts[0] == q && c.vert_in[0];
        case CellKind::segment: {
            if (!c.bounded) throw std::logic_error("geometric membership needs bounded cell");
            const Point &a = c.verts[0], &b = c.verts[1];
            if (cross(a, b, q) != Rational(0)) return false;
            if (q == a) return c.vert_in[0];
            if (q == b) return c.vert_in[1];
            Rational t = (b.x != a.x) ? (q.x - a.x) / (b.x - a.x) : (q.y - a.y) / (b.y - a.y);
            return t > Rational(0) && t < Rational(1);
        }
        case CellKind::polygon: {
            if (!c.bounded) throw std::logic_error("geometric membership needs bounded cell");
            std::size_t n = c.verts.size();
            for (std::size_t i = 0; i < n; ++i) {
                if (q == c.verts[i]) return c.vert_in[i];
            }
            for (std::size_t i = 0; i < n; ++i) {
                const Point& p = c.verts[i];
                const Point& r = c.verts[(i + 1) % n];
                Rational cr = cross(p, r, q);
                if (cr < Rational(0)) return false;
                if (cr == Rational(0)) {
                    // Strictly between p and r on a CCW edge.
                    Rational t = (r.x != p.x) ? (q.x - p.x) / (r.x - p.x) : (q.y - p.y) / (r.y - p.y);
                    if (t > Rational(0) && t < Rational(1)) return c.edge_in[i];
                    return false;  // on the edge's line but outside the edge
                }
            }
            return true;
        }
    }
    return false;
}

}  // namespace epsrs
