#pragma once

// The named parameter regions (E2, D*, L, R, S, D, B, T), the Delta triangle
// family with its appendix extension, the integer characterizations of the
// lattice points (1/p0, p1/p0), and the lemma-reproduction harness that reruns
// the witness certification behind each classification lemma.

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cns.hpp"
#include "witness.hpp"

namespace epsrs {

enum class RegionId { E2, Dstar, L, R, S, D, B, T };

inline const char* to_string(RegionId id) {
    switch (id) {
        case RegionId::E2: return "E2";
        case RegionId::Dstar: return "Dstar";
        case RegionId::L: return "L";
        case RegionId::R: return "R";
        case RegionId::S: return "S";
        case RegionId::D: return "D";
        case RegionId::B: return "B";
        case RegionId::T: return "T";
    }
    return "?";
}

inline RegionId region_id_from_string(const std::string& s) {
    if (s == "E2") return RegionId::E2;
    if (s == "Dstar" || s == "D*") return RegionId::Dstar;
    if (s == "L") return RegionId::L;
    if (s == "R") return RegionId::R;
    if (s == "S") return RegionId::S;
    if (s == "D") return RegionId::D;
    if (s == "B") return RegionId::B;
    if (s == "T") return RegionId::T;
    throw std::invalid_argument("unknown region id: '" + s + "'");
}

struct RegionSpec {
    RegionId id;
    Rational eps;
    std::vector<HalfPlane> halfplanes;
    RegionCell cell;

    bool contains(const Point& p) const { return cell_contains(cell, p); }
    bool contains(const Rational& x, const Rational& y) const { return contains(Point{x, y}); }
};

// Exact defining half-planes, with the eps < 1/2 and eps >= 1/2 branches.
inline RegionSpec region(RegionId id, const Rational& eps) {
    if (eps < Rational(0) || eps >= Rational(1))
        throw std::invalid_argument("region: eps must lie in [0,1)");
    const Rational one(1), half(1, 2), two3(2, 3);
    const bool lo = eps < half;
    std::vector<HalfPlane> hs;
    auto dstar = [&]() -> std::vector<HalfPlane> {
        if (lo)
            return {{Rational(1), Rational(1), eps, false},        // y >= -x-eps
                    {Rational(1), Rational(-1), one - eps, true},  // y < x+1-eps
                    {Rational(-1), Rational(0), one - eps, true}}; // x < 1-eps
        return {{Rational(1), Rational(1), one - eps, true},       // y > -x-1+eps
                {Rational(1), Rational(-1), eps, false},           // y <= x+eps
                {Rational(-1), Rational(0), eps, false}};          // x <= eps
    };
    auto lhalf = [&]() -> HalfPlane {
        if (lo) return {Rational(1), Rational(0), eps, false};      // x >= -eps
        return {Rational(1), Rational(0), one - eps, true};         // x > -(1-eps)
    };
    auto rhalf = [&]() -> HalfPlane {
        if (lo) return {Rational(-1), Rational(0), two3 - eps, false};  // x <= 2/3-eps
        return {Rational(-1), Rational(0), two3 - (one - eps), false};  // x <= 2/3-(1-eps)
    };
    switch (id) {
        case RegionId::E2:
            hs = {{Rational(-1), Rational(0), one, true},
                  {Rational(1), Rational(0), one, true},
                  {Rational(1), Rational(-1), one, true},
                  {Rational(1), Rational(1), one, true}};
            break;
        case RegionId::Dstar:
            hs = dstar();
            break;
        case RegionId::L:
            hs = {lhalf()};
            break;
        case RegionId::R:
            hs = {rhalf()};
            break;
        case RegionId::S:
            hs = {lhalf(), rhalf()};
            break;
        case RegionId::D:
            hs = dstar();
            hs.push_back(lhalf());
            break;
        case RegionId::B:
            hs = dstar();
            hs.push_back(lhalf());
            hs.push_back(rhalf());
            break;
        case RegionId::T:
            hs = dstar();
            hs.push_back({Rational(1), Rational(0), half, false});  // x >= -1/2
            if (lo)
                hs.push_back({Rational(-1), Rational(0), -eps, true});          // x < -eps
            else
                hs.push_back({Rational(-1), Rational(0), -(one - eps), false}); // x <= -(1-eps)
            break;
    }
    return RegionSpec{id, eps, hs, cell_from_halfplanes(hs)};
}

// The Delta triangles of the classification, evaluated at the base parameter
// e = min(eps, 1-eps); for eps > 1/2 this realizes the mirrored family
// Delta~_i(eps) = Delta_i(1-eps).
struct DeltaFamily {
    Rational eps;   // as queried
    Rational base;  // coordinates are evaluated here
    bool tilde = false;
    std::map<char, Point> pt;  // 'A'..'Z' (without Q,V,X,Y), plus 'W' and 'T'
    std::optional<long> n;
    long l = 0;
    std::vector<Point> V;  // V_0..V_l (appendix), V_0 = Z

    const Point& at(char c) const { return pt.at(c); }

    std::vector<Point> delta_points(int i) const {
        static const std::map<int, std::string> defs = {
            {1, "ABC"}, {2, "BCD"}, {3, "BDFE"}, {4, "EFG"}, {5, "GFH"},
            {6, "DIK"}, {7, "IKU"}, {8, "IJU"}, {9, "JKL"}, {10, "CKL"},
            {11, "JNO"}, {12, "MNOPR"}, {13, "PRS"}, {14, "CMSZ"},
            {15, "CMSW"}, {16, "WTS"}, {17, "WSZ"}, {18, "WTZ"}};
        auto it = defs.find(i);
        if (it == defs.end()) {
            if (i == 19) {
                if (!n) throw std::invalid_argument("delta 19 needs the appendix parameter n");
                return {at('W'), at('Z'), V.at(2)};
            }
            throw std::invalid_argument("unknown delta index");
        }
        std::vector<Point> out;
        for (char c : it->second) out.push_back(at(c));
        return out;
    }
    std::vector<Point> delta18s_points(long s) const {
        if (!n) throw std::invalid_argument("delta 18^(s) needs the appendix parameter n");
        if (s < 0 || s + 1 > l) throw std::invalid_argument("delta 18^(s): s out of range");
        return {at('W'), V.at((std::size_t)s), V.at((std::size_t)s + 1)};
    }
    RegionCell delta(int i) const { return cell_from_points(delta_points(i)); }
    RegionCell delta18s(long s) const { return cell_from_points(delta18s_points(s)); }
    Hull delta_hull(int i) const { return make_hull2(delta_points(i)); }
    Hull delta18s_hull(long s) const { return make_hull2(delta18s_points(s)); }
};

inline DeltaFamily delta_family(const Rational& eps, std::optional<long> n = std::nullopt) {
    DeltaFamily f;
    f.eps = eps;
    f.tilde = eps > Rational(1, 2);
    f.base = f.tilde ? Rational(1) - eps : eps;
    const Rational& e = f.base;
    if (!(e > Rational(0) && e < Rational(1, 2)))
        throw std::invalid_argument("delta_family: base parameter must lie in (0,1/2)");
    const Rational one(1), half(1, 2), third(1, 3), two3(2, 3);
    auto P = [](Rational x, Rational y) { return Point{x, y}; };
    f.pt['A'] = P(-half, half - e);
    f.pt['B'] = P(-e, Rational(0));
    f.pt['C'] = P(-e, one - Rational(2) * e);
    f.pt['D'] = P(two3 - e, Rational(0));
    f.pt['E'] = P(third - e, -third);
    f.pt['F'] = P(two3 - e, -third);
    f.pt['G'] = P(half - e, -half);
    f.pt['H'] = P(two3 - e, -two3);
    f.pt['I'] = P(two3 - e, half - e);
    f.pt['K'] = P(third - e, half - e);
    f.pt['U'] = P(half - e, Rational(3, 4) - Rational(3, 2) * e);
    f.pt['J'] = P(two3 - e, one - Rational(2) * e);
    f.pt['L'] = P(third - e, one - Rational(2) * e);
    f.pt['N'] = P(half - e, one - Rational(2) * e);
    f.pt['O'] = P(two3 - e, Rational(7, 6) - Rational(2) * e);
    f.pt['M'] = P(Rational(1, 6) - e, one - Rational(2) * e);
    f.pt['P'] = P(two3 - e, Rational(4, 3) - Rational(2) * e);
    f.pt['R'] = P(half - e, Rational(4, 3) - Rational(2) * e);
    f.pt['S'] = P(two3 - e, Rational(3, 2) - Rational(2) * e);
    f.pt['Z'] = P(two3 - e, Rational(5, 3) - Rational(2) * e);
    f.pt['W'] = P(e, one);
    f.pt['T'] = P(two3 - e, Rational(3, 2) - e);
    if (n) {
        if (*n < 4) throw std::invalid_argument("delta_family: appendix requires n >= 4");
        Rational lo(2, 3 * (2 * *n + 1)), hi(2, 3 * (2 * *n - 1));
        if (!(e >= lo && e < hi))
            throw std::invalid_argument(
                "delta_family: eps outside [2/(3(2n+1)), 2/(3(2n-1))) for this n");
        f.n = n;
        f.l = (2 * *n * *n - 3 * *n) / 4 + 1;
        for (long k = 0; k <= f.l; ++k)
            f.V.push_back(P(two3 - e, Rational(5, 3) - Rational(2) * e - Rational(k, *n) * e));
    }
    return f;
}

// Integer conditions for (1/p0, p1/p0) in D(eps); by the quadratic
// characterization these coincide with the eps-CNS conditions.
inline bool lattice_in_D(const Int& p0, const Int& p1, const Rational& eps) {
    return is_eps_cns_closed_form(p0, p1, eps);
}

struct LatticeBResult {
    bool in_B_epsk = false;       // (1/p0, p1/p0) in B(eps_k)
    bool lem5_exception = false;  // p0 in {2,4}, eps in [1/2, 1/2 + 1/|p0|)
    bool db_window = false;       // p0 in {2,3,4,5} inside the D\B window for eps itself
};

inline LatticeBResult lattice_in_B(const Int& p0, const Int& p1, const Rational& eps) {
    Int m = abs(p0);
    if (m < 2) throw std::invalid_argument("lattice_in_B: |p_0| >= 2 required");
    LatticeBResult out;
    Rational epsk = reduce_eps(p0, eps);
    out.in_B_epsk = region(RegionId::B, epsk).contains(Rational(Int(1), p0), Rational(p1, p0));
    out.lem5_exception = (p0 == 2 || p0 == 4) && eps >= Rational(1, 2) &&
                         eps < Rational(1, 2) + Rational(Int(1), m);
    if (p0 == 2) out.db_window = eps > Rational(1, 6) && eps < Rational(5, 6);
    if (p0 == 3) out.db_window = eps > Rational(1, 3) && eps < Rational(2, 3);
    if (p0 == 4) out.db_window = eps > Rational(5, 12) && eps < Rational(7, 12);
    if (p0 == 5) out.db_window = eps > Rational(7, 15) && eps < Rational(8, 15);
    return out;
}

// --- 1-D coverage of a closed segment by point/segment cells -----------------

namespace detail {

struct ParamInterval {
    Rational lo, hi;
    bool lo_in, hi_in;
};

inline std::optional<Rational> segment_param(const Point& a, const Point& b, const Point& p) {
    if (cross(a, b, p) != Rational(0)) return std::nullopt;
    Rational dx = b.x - a.x, dy = b.y - a.y;
    if (dx != Rational(0)) return (p.x - a.x) / dx;
    return (p.y - a.y) / dy;
}

}  // namespace detail

// Whether the union of the given cells is exactly the closed segment [a,b]
// (a point target when a == b). Cells must be points or bounded segments lying
// on the carrier line.
inline bool cells_cover_segment_exactly(const std::vector<RegionCell>& cells, const Point& a,
                                        const Point& b) {
    if (a == b) {
        bool covered = false;
        for (const auto& c : cells) {
            if (c.kind == CellKind::empty) continue;
            if (c.kind != CellKind::point || c.verts[0] != a) return false;
            covered = covered || c.vert_in[0];
        }
        return covered;
    }
    std::vector<detail::ParamInterval> iv;
    for (const auto& c : cells) {
        if (c.kind == CellKind::empty) continue;
        if (c.kind == CellKind::point) {
            if (!c.vert_in[0]) continue;
            auto t = detail::segment_param(a, b, c.verts[0]);
            if (!t || *t < Rational(0) || *t > Rational(1)) return false;
            iv.push_back({*t, *t, true, true});
            continue;
        }
        if (c.kind != CellKind::segment || !c.bounded) return false;
        auto t0 = detail::segment_param(a, b, c.verts[0]);
        auto t1 = detail::segment_param(a, b, c.verts[1]);
        if (!t0 || !t1) return false;
        detail::ParamInterval in{*t0, *t1, c.vert_in[0], c.vert_in[1]};
        if (in.lo > in.hi) {
            std::swap(in.lo, in.hi);
            std::swap(in.lo_in, in.hi_in);
        }
        if (in.lo < Rational(0) || in.hi > Rational(1)) return false;
        iv.push_back(in);
    }
    std::sort(iv.begin(), iv.end(), [](const auto& x, const auto& y) {
        if (x.lo != y.lo) return x.lo < y.lo;
        return x.lo_in && !y.lo_in;
    });
    Rational cov(0);
    bool cov_in = false;  // is the point cov itself covered?
    for (const auto& i : iv) {
        if (i.lo > cov) return false;
        if (i.lo == cov && !cov_in && !i.lo_in) return false;
        if (i.hi > cov) {
            cov = i.hi;
            cov_in = i.hi_in;
        } else if (i.hi == cov) {
            cov_in = cov_in || i.hi_in;
        }
    }
    return cov == Rational(1) && cov_in;
}

// --- Lemma reproduction harness ----------------------------------------------

struct LemmaReport {
    std::string lemma;
    Rational eps;
    int i = 0;
    long n = 0, s = 0;
    std::size_t vertices = 0, edges = 0;
    bool subdivided = false;
    std::set<Cycle> nontrivial_cycles;
    Certificate certificate;
    std::optional<std::size_t> expected_vertices;
    std::optional<std::size_t> expected_edges;
    bool expected_edges_exact = false;
    std::optional<std::size_t> formula_vertices;
    std::optional<std::size_t> formula_edges;
    bool formula_bracket_consistent = false;
    std::vector<std::string> findings;

    bool ok() const { return findings.empty(); }
};

namespace detail {

struct GraphExpectation {
    std::size_t vertices;
    std::size_t edges;
    bool edges_exact;
};

// Per-subinterval graph sizes stated alongside the Delta lemmas. Only the
// Delta_1 lemma lists its edge set explicitly per eps, so only there is the
// edge count exact; elsewhere the stated sizes describe the interval-union
// graph G' and bound the per-eps graph from above. Vertex counts are compared
// exactly and any drift inside a subinterval is surfaced as a finding.
inline std::optional<GraphExpectation> delta_graph_expectation(int i, const Rational& e) {
    auto in = [&](long an, long ad, long bn, long bd) {
        return e >= Rational(an, ad) && e < Rational(bn, bd);
    };
    switch (i) {
        case 1:
            if (in(0, 1, 1, 3)) return GraphExpectation{7, 11, true};
            return GraphExpectation{7, 10, true};
        case 3:
            return GraphExpectation{9, 16, false};
        case 4:
            if (in(1, 3, 1, 2)) return GraphExpectation{7, 8, false};
            return GraphExpectation{9, 12, false};
        case 5:
            if (in(1, 3, 1, 2)) return GraphExpectation{7, 9, false};
            if (in(1, 6, 1, 3)) return GraphExpectation{15, 21, false};
            return GraphExpectation{21, 30, false};
        case 6:
            if (in(1, 12, 1, 2)) return GraphExpectation{9, 15, false};
            return GraphExpectation{39, 79, false};
        case 7:
            if (in(1, 10, 1, 2)) return GraphExpectation{9, 15, false};
            return GraphExpectation{21, 33, false};
        case 8:
            if (in(2, 9, 1, 2)) return GraphExpectation{9, 13, false};
            if (in(1, 9, 2, 9)) return GraphExpectation{21, 36, false};
            return GraphExpectation{37, 66, false};
        case 9:
            if (e > Rational(1, 3)) return GraphExpectation{9, 10, false};
            return GraphExpectation{7, 10, false};  // eps in (0,1/3]
        case 11:
            if (in(1, 3, 1, 2)) return GraphExpectation{9, 12, false};
            if (in(1, 12, 1, 3)) return GraphExpectation{7, 10, false};
            return GraphExpectation{33, 49, false};
        case 12:
            if (in(1, 6, 1, 2)) return GraphExpectation{7, 11, false};
            return GraphExpectation{27, 53, false};
        case 13:
            if (in(1, 4, 1, 2)) return GraphExpectation{7, 9, false};
            if (in(1, 9, 1, 4)) return GraphExpectation{15, 19, false};
            return GraphExpectation{37, 57, false};
        case 2:
            return GraphExpectation{9, 15, false};
        case 10:
            return GraphExpectation{7, 11, false};
        default:
            return std::nullopt;
    }
}

inline std::set<Cycle> allowed_nontrivial_cycles(int i) {
    auto c = [](std::initializer_list<long> xs) {
        std::vector<Int> w;
        for (long x : xs) w.emplace_back(x);
        return canonical_cycle(w);
    };
    switch (i) {
        case 1:
            return {c({1, 0}), c({-1, 1})};
        case 6:
        case 7:
            return {c({1, 1, -1})};
        case 8:
            return {c({1, 1, -1}), c({1, -2, 2}), c({-1, 3, -2})};
        case 12:
            return {c({-1, 0, 1}), c({0, -1, 2, -2, 2})};
        case 2:
        case 10:
            return {c({-1, 1})};
        default:
            return {};
    }
}

inline void run_graph(LemmaReport& rep, const Hull& hull, const Rational& e, const Caps& caps) {
    WitnessSetResult vs = witness_set(hull, caps.witness_size_cap);
    if (vs.capped) {
        rep.subdivided = true;
        return;
    }
    WitnessGraph g = build_graph(vs.verts, hull, e);
    rep.vertices = g.verts.size();
    rep.edges = g.edge_count();
    CycleEnumeration ce = primitive_cycles(g, caps.cycle_length_cap, caps.cycle_step_budget);
    for (const auto& c : ce.cycles)
        if (!c.trivial()) rep.nontrivial_cycles.insert(c);
}

}  // namespace detail

// Rerun the witness certification behind one of the classification lemmas and
// compare against the counts, cycles, and residuals stated there. Mismatches
// are recorded as findings, never silently dropped.
inline LemmaReport reproduce_lemma(const std::string& lemma_id, const Rational& eps,
                                   std::optional<int> which = std::nullopt,
                                   std::optional<long> n = std::nullopt,
                                   std::optional<long> s = std::nullopt,
                                   const Caps& caps = {}) {
    LemmaReport rep;
    rep.lemma = lemma_id;
    rep.eps = eps;
    auto note = [&](const std::string& msg) { rep.findings.push_back(msg); };

    if (lemma_id == "delta1" || lemma_id == "delta0" || lemma_id == "deltaC" ||
        lemma_id == "deltaCZ") {
        if (!(eps > Rational(0) && eps < Rational(1, 2)))
            throw std::invalid_argument(lemma_id + ": eps must lie in (0,1/2)");
        DeltaFamily fam = delta_family(eps);
        int idx;
        if (lemma_id == "delta1") {
            idx = 1;
        } else if (lemma_id == "deltaCZ") {
            idx = 14;
        } else {
            if (!which) throw std::invalid_argument(lemma_id + ": missing delta index");
            idx = *which;
            if (lemma_id == "delta0") {
                static const std::set<int> ok{3, 4, 5, 6, 7, 8, 9, 11, 12, 13};
                if (!ok.count(idx)) throw std::invalid_argument("delta0: index not covered");
            } else if (idx != 2 && idx != 10) {
                throw std::invalid_argument("deltaC: index must be 2 or 10");
            }
        }
        rep.i = idx;
        Hull hull = fam.delta_hull(idx);
        detail::run_graph(rep, hull, eps, caps);
        rep.certificate = certify_hull(hull, eps, caps);

        if (!rep.subdivided) {
            if (auto exp = detail::delta_graph_expectation(idx, eps)) {
                rep.expected_vertices = exp->vertices;
                rep.expected_edges = exp->edges;
                rep.expected_edges_exact = exp->edges_exact;
                if (rep.vertices != exp->vertices)
                    note("vertex count " + std::to_string(rep.vertices) + " != stated " +
                         std::to_string(exp->vertices));
                if (exp->edges_exact ? rep.edges != exp->edges : rep.edges > exp->edges)
                    note("edge count " + std::to_string(rep.edges) +
                         (exp->edges_exact ? " != stated " : " exceeds stated bound ") +
                         std::to_string(exp->edges));
            }
            auto allowed = detail::allowed_nontrivial_cycles(idx);
            for (const auto& c : rep.nontrivial_cycles)
                if (!allowed.count(c)) note("unexpected nontrivial cycle");
        }

        if (lemma_id == "delta0") {
            if (rep.certificate.verdict != Certificate::Verdict::subset_of_D0)
                note("expected subset_of_D0");
        } else if (lemma_id == "deltaC") {
            bool good = rep.certificate.verdict == Certificate::Verdict::cut_out &&
                        rep.certificate.pieces.size() == 1 &&
                        cell_equal(rep.certificate.pieces[0].residual,
                                   cell_from_points({fam.at('C')}));
            if (!good) note("expected residual {C}");
        } else if (lemma_id == "delta1") {
            bool good = rep.certificate.verdict == Certificate::Verdict::cut_out &&
                        rep.certificate.pieces.size() == 2;
            if (good) {
                std::vector<HalfPlane> cut = fam.delta(1).constraints;
                cut.push_back({Rational(-1), Rational(0), -eps, true});  // x < -eps
                RegionCell tri_minus_bc = cell_from_halfplanes(cut);
                RegionCell ac = cell_from_points({fam.at('A'), fam.at('C')});
                const auto& pieces = rep.certificate.pieces;
                good = cell_equal(pieces[0].residual, ac) &&
                       cell_equal(pieces[1].residual, tri_minus_bc);
            }
            if (!good) note("expected residual pieces AC and Delta1 minus closed BC");
        } else {  // deltaCZ
            bool good = rep.certificate.verdict == Certificate::Verdict::cut_out &&
                        cells_cover_segment_exactly(rep.certificate.residual_cells(),
                                                    fam.at('C'), fam.at('Z'));
            if (!good) note("expected residual union = closed segment CZ");
        }
        return rep;
    }

    if (lemma_id == "delta19" || lemma_id == "delta18s") {
        if (!n) throw std::invalid_argument(lemma_id + ": missing n");
        DeltaFamily fam = delta_family(eps, n);  // validates the eps interval
        rep.n = *n;
        Hull hull;
        if (lemma_id == "delta19") {
            hull = fam.delta_hull(19);
            rep.expected_vertices = (std::size_t)(18 * *n - 3);
            rep.expected_edges = (std::size_t)(32 * *n - 12);
            rep.expected_edges_exact = false;
        } else {
            if (!s) throw std::invalid_argument("delta18s: missing s");
            if (*s < 2 || *s > fam.l - 1)
                throw std::invalid_argument("delta18s: s must lie in [2, l-1]");
            rep.s = *s;
            hull = fam.delta18s_hull(*s);
            auto ceil_div = [](long num, long den) { return (num + den - 1) / den; };
            long a0 = ceil_div(2 * *n * *n, *n + *s);
            long a1 = ceil_div(*n * *n, *n + *s);
            rep.formula_vertices = (std::size_t)(8 * a0 + 2 * a1 - 1);
            rep.formula_edges = (std::size_t)(14 * a0 + 4 * a1 - 6);
            // The count formulas come bracketed by endpoint identities
            // (a0 at s=2 equals 2n-3, a0 at s=l-1 equals 4, likewise a1). The
            // formulas and the endpoints disagree for some n, so the counts are
            // asserted only when the bracketing checks out for this n.
            bool bracket = ceil_div(2 * *n * *n, *n + 2) == 2 * *n - 3 &&
                           ceil_div(2 * *n * *n, *n + fam.l - 1) == 4 &&
                           ceil_div(*n * *n, *n + 2) == *n - 1 &&
                           ceil_div(*n * *n, *n + fam.l - 1) == 2 &&
                           4 <= a0 && a0 <= 2 * *n - 3 && 2 <= a1 && a1 <= *n - 1;
            rep.formula_bracket_consistent = bracket;
            if (bracket) {
                rep.expected_vertices = rep.formula_vertices;
                rep.expected_edges = rep.formula_edges;
                rep.expected_edges_exact = false;
            }
        }
        detail::run_graph(rep, hull, eps, caps);
        rep.certificate = certify_hull(hull, eps, caps);
        if (rep.subdivided) {
            note("witness cap forced subdivision; counts not comparable");
            return rep;
        }
        if (rep.expected_vertices && rep.vertices != *rep.expected_vertices)
            note("vertex count " + std::to_string(rep.vertices) + " != stated " +
                 std::to_string(*rep.expected_vertices));
        if (rep.expected_edges && rep.edges > *rep.expected_edges)
            note("edge count " + std::to_string(rep.edges) + " exceeds stated bound " +
                 std::to_string(*rep.expected_edges));
        Cycle pi2 = canonical_cycle({Int(-1), Int(1)});
        for (const auto& c : rep.nontrivial_cycles)
            if (!(c == pi2)) note("unexpected nontrivial cycle");
        if (lemma_id == "delta19") {
            bool good = rep.certificate.verdict == Certificate::Verdict::cut_out &&
                        cells_cover_segment_exactly(rep.certificate.residual_cells(),
                                                    fam.at('W'), fam.at('Z'));
            if (!good) note("expected residual = closed segment WZ");
        } else {
            bool good = rep.certificate.verdict == Certificate::Verdict::cut_out &&
                        rep.certificate.pieces.size() == 1 &&
                        cell_equal(rep.certificate.pieces[0].residual,
                                   cell_from_points({fam.at('W')}));
            if (!good) note("expected residual {W}");
        }
        return rep;
    }

    throw std::invalid_argument("unknown lemma id: '" + lemma_id + "'");
}

// --- Deterministic region sampling -------------------------------------------

struct SamplePoint {
    Rational x, y;
    Certificate::Verdict verdict;
};

struct SampleMap {
    Rational eps;
    long grid;
    std::vector<SamplePoint> rows;  // (i/q, j/q) ascending in i, then j
};

inline SampleMap region_sample(const Rational& eps, long grid, const Caps& caps = {}) {
    if (grid < 2) throw std::invalid_argument("region_sample: grid denominator must be >= 2");
    SampleMap out;
    out.eps = eps;
    out.grid = grid;
    for (long i = -2 * grid; i <= 2 * grid; ++i) {
        for (long j = -2 * grid; j <= 2 * grid; ++j) {
            Rational x(i, grid), y(j, grid);
            if (!strictly_inside_E({x, y})) continue;
            Certificate c = decide_point({{x, y}, eps}, caps);
            out.rows.push_back({x, y, c.verdict});
        }
    }
    return out;
}

// Deterministic rational points inside a bounded cell, honoring its open and
// closed boundary pieces: grid scan with increasing denominator.
inline std::vector<Point> sample_points_in_cell(const RegionCell& cell, std::size_t count) {
    std::vector<Point> out;
    if (cell.kind == CellKind::empty || !cell.bounded) return out;
    Rational xlo = cell.verts[0].x, xhi = xlo, ylo = cell.verts[0].y, yhi = ylo;
    for (const auto& v : cell.verts) {
        xlo = std::min(xlo, v.x);
        xhi = std::max(xhi, v.x);
        ylo = std::min(ylo, v.y);
        yhi = std::max(yhi, v.y);
    }
    std::set<Point> seen;
    for (long q = 1; out.size() < count && q <= 4096; q *= 2) {
        Int ilo = (xlo * Rational(q)).ceil(), ihi = (xhi * Rational(q)).floor();
        Int jlo = (ylo * Rational(q)).ceil(), jhi = (yhi * Rational(q)).floor();
        for (Int i = ilo; i <= ihi && out.size() < count; ++i) {
            for (Int j = jlo; j <= jhi && out.size() < count; ++j) {
                Point p{Rational(i, Int(q)), Rational(j, Int(q))};
                if (!seen.insert(p).second) continue;
                if (cell_contains(cell, p)) out.push_back(p);
            }
        }
    }
    return out;
}

}  // namespace epsrs
