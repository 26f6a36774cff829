#include <gtest/gtest.h>

#include <random>

#include "epsrs/witness.hpp"

using namespace epsrs;

namespace {

Point pt(long xn, long xd, long yn, long yd) { return {Rational(xn, xd), Rational(yn, yd)}; }

LatticeVector lv(long a, long b) { return {Int(a), Int(b)}; }

// Delta_1(eps) = triangle A(-1/2,1/2-eps), B(-eps,0), C(-eps,1-2eps).
Hull delta1(const Rational& eps) {
    return make_hull2({{Rational(-1, 2), Rational(1, 2) - eps},
                       {-eps, Rational(0)},
                       {-eps, Rational(1) - Rational(2) * eps}});
}

std::set<Cycle> nontrivial(const CycleEnumeration& ce) {
    std::set<Cycle> out;
    for (const auto& c : ce.cycles)
        if (!c.trivial()) out.insert(c);
    return out;
}

Cycle cyc(std::initializer_list<long> xs) {
    std::vector<Int> w;
    for (long x : xs) w.emplace_back(x);
    return canonical_cycle(w);
}

}  // namespace

TEST(WitnessSet, Delta1HasSevenWitnesses) {
    auto vs = witness_set(delta1(Rational(1, 4)), 10000);
    ASSERT_FALSE(vs.capped);
    std::set<LatticeVector> expect = {lv(0, 0),  lv(1, 0),  lv(-1, 0), lv(0, 1),
                                      lv(0, -1), lv(1, -1), lv(-1, 1)};
    EXPECT_EQ(vs.verts, expect);
}

TEST(WitnessSet, SingletonOriginClosure) {
    Hull h = make_hull({{Rational(0), Rational(0)}});
    auto vs = witness_set(h, 100);
    std::set<LatticeVector> expect = {lv(0, 0), lv(1, 0), lv(-1, 0), lv(0, 1), lv(0, -1)};
    EXPECT_EQ(vs.verts, expect);
}

TEST(WitnessSet, SeedsAndSymmetryOnRandomHulls) {
    std::mt19937 rng(17);
    std::uniform_int_distribution<long> num(-6, 6), den(9, 14);
    int built = 0;
    while (built < 25) {
        std::vector<RationalVec> pts;
        int k = 1 + (int)(rng() % 3);
        for (int i = 0; i < k; ++i)
            pts.push_back({Rational(num(rng), den(rng)), Rational(num(rng), den(rng))});
        bool inside = true;
        for (const auto& p : pts) inside = inside && strictly_inside_E(p);
        if (!inside) continue;
        ++built;
        auto vs = witness_set(make_hull(pts), 10000);
        ASSERT_FALSE(vs.capped);
        EXPECT_TRUE(vs.verts.count(lv(1, 0)));
        EXPECT_TRUE(vs.verts.count(lv(-1, 0)));
        EXPECT_TRUE(vs.verts.count(lv(0, 1)));
        EXPECT_TRUE(vs.verts.count(lv(0, -1)));
        for (const auto& z : vs.verts) {
            LatticeVector neg;
            for (const auto& e : z) neg.push_back(-e);
            EXPECT_TRUE(vs.verts.count(neg)) << "missing mirror witness";
        }
    }
}

TEST(WitnessSet, CapSignalsSubdivision) {
    auto vs = witness_set(delta1(Rational(1, 4)), 3);
    EXPECT_TRUE(vs.capped);
}

TEST(BuildGraph, Delta1EdgeCounts) {
    // 10 edges for eps in [1/3,1/2), 11 for eps in (0,1/3).
    {
        Hull h = delta1(Rational(2, 5));
        auto vs = witness_set(h, 10000);
        WitnessGraph g = build_graph(vs.verts, h, Rational(2, 5));
        EXPECT_EQ(g.verts.size(), 7u);
        EXPECT_EQ(g.edge_count(), 10u);
    }
    {
        Hull h = delta1(Rational(1, 4));
        auto vs = witness_set(h, 10000);
        WitnessGraph g = build_graph(vs.verts, h, Rational(1, 4));
        EXPECT_EQ(g.verts.size(), 7u);
        EXPECT_EQ(g.edge_count(), 11u);
        int from = g.index_of(lv(0, -1));
        int to = g.index_of(lv(-1, 1));
        ASSERT_GE(from, 0);
        ASSERT_GE(to, 0);
        bool found = false;
        for (int w : g.adj[(std::size_t)from]) found = found || w == to;
        EXPECT_TRUE(found) << "(0,-1) -> (-1,1) expected for eps < 1/3";
    }
}

TEST(BuildGraph, SingletonZeroParameterSuccessorsEndInZero) {
    Hull h = make_hull({{Rational(0), Rational(0)}});
    auto vs = witness_set(h, 100);
    for (long num = 0; num < 5; ++num) {
        WitnessGraph g = build_graph(vs.verts, h, Rational(num, 5));
        for (std::size_t vi = 0; vi < g.verts.size(); ++vi) {
            ASSERT_EQ(g.adj[vi].size(), 1u);
            EXPECT_EQ(g.verts[(std::size_t)g.adj[vi][0]].back(), 0);
        }
    }
}

TEST(PrimitiveCycles, Delta1Cycles) {
    Hull h = delta1(Rational(1, 4));
    auto vs = witness_set(h, 10000);
    WitnessGraph g = build_graph(vs.verts, h, Rational(1, 4));
    auto ce = primitive_cycles(g);
    ASSERT_FALSE(ce.capped);
    EXPECT_TRUE(ce.cycles.count(cyc({0})));
    std::set<Cycle> expect = {cyc({1, 0}), cyc({-1, 1})};
    EXPECT_EQ(nontrivial(ce), expect);
}

TEST(PrimitiveCycles, Delta3OnlyTrivial) {
    // Delta_3 = square(B, D, F, E) at eps = 1/4.
    Rational e(1, 4);
    Hull h = make_hull2({{-e, Rational(0)},
                         {Rational(2, 3) - e, Rational(0)},
                         {Rational(2, 3) - e, Rational(-1, 3)},
                         {Rational(1, 3) - e, Rational(-1, 3)}});
    auto vs = witness_set(h, 10000);
    ASSERT_FALSE(vs.capped);
    EXPECT_EQ(vs.verts.size(), 9u);
    WitnessGraph g = build_graph(vs.verts, h, e);
    auto ce = primitive_cycles(g);
    EXPECT_TRUE(nontrivial(ce).empty());
}

TEST(PrimitiveCycles, Delta19AppendixGraph) {
    // n = 4, eps = 2/25: 18n-3 = 69 witnesses, at most 32n-12 = 116 edges,
    // and (-1,1) as the only nontrivial cycle.
    Rational e(2, 25);
    Point W{e, Rational(1)};
    Point Z{Rational(2, 3) - e, Rational(5, 3) - Rational(2) * e};
    Point V2{Z.x, Z.y - Rational(2, 4) * e};
    Hull h = make_hull2({W, Z, V2});
    auto vs = witness_set(h, 10000);
    ASSERT_FALSE(vs.capped);
    EXPECT_EQ(vs.verts.size(), 69u);
    WitnessGraph g = build_graph(vs.verts, h, e);
    EXPECT_LE(g.edge_count(), 116u);
    auto ce = primitive_cycles(g);
    ASSERT_FALSE(ce.capped);
    std::set<Cycle> expect = {cyc({-1, 1})};
    EXPECT_EQ(nontrivial(ce), expect);
}

TEST(CertifyHull, Delta3InsideD0) {
    Rational e(1, 4);
    Hull h = make_hull2({{-e, Rational(0)},
                         {Rational(2, 3) - e, Rational(0)},
                         {Rational(2, 3) - e, Rational(-1, 3)},
                         {Rational(1, 3) - e, Rational(-1, 3)}});
    Certificate c = certify_hull(h, e);
    EXPECT_EQ(c.verdict, Certificate::Verdict::subset_of_D0);
    EXPECT_TRUE(c.pieces.empty());
}

TEST(CertifyHull, Delta2CutsToPointC) {
    Rational e(1, 4);
    Hull h = make_hull2({{-e, Rational(0)},
                         {-e, Rational(1) - Rational(2) * e},
                         {Rational(2, 3) - e, Rational(0)}});
    Certificate c = certify_hull(h, e);
    ASSERT_EQ(c.verdict, Certificate::Verdict::cut_out);
    ASSERT_EQ(c.pieces.size(), 1u);
    EXPECT_EQ(c.pieces[0].cycle, cyc({-1, 1}));
    const RegionCell& res = c.pieces[0].residual;
    ASSERT_EQ(res.kind, CellKind::point);
    EXPECT_EQ(res.verts[0], pt(-1, 4, 1, 2));
    EXPECT_TRUE(res.vert_in[0]);
}

TEST(CertifyHull, Delta1ResidualPieces) {
    Rational e(1, 4);
    Certificate c = certify_hull(delta1(e), e);
    ASSERT_EQ(c.verdict, Certificate::Verdict::cut_out);
    ASSERT_EQ(c.pieces.size(), 2u);
    // Pieces arrive in canonical cycle order: (-1,1) before (0,1).
    EXPECT_EQ(c.pieces[0].cycle, cyc({-1, 1}));
    EXPECT_EQ(c.pieces[0].residual.kind, CellKind::segment);  // closed segment AC
    EXPECT_EQ(c.pieces[1].cycle, cyc({1, 0}));
    ASSERT_EQ(c.pieces[1].residual.kind, CellKind::polygon);  // Delta_1 minus closed BC
    EXPECT_EQ(c.pieces[1].residual.edge_in, (std::vector<bool>{true, false, true}));
    EXPECT_EQ(c.stats.vertices, 7u);
    EXPECT_EQ(c.stats.edges, 11u);
}

// Refutation soundness: any rational point sampled from a reported residual
// cell realizes the piece's cycle under the actual dynamics.
TEST(CertifyHull, ResidualSamplesRealizeTheirCycles) {
    Rational e(1, 4);
    std::vector<Hull> hulls = {
        delta1(e),
        make_hull2({{-e, Rational(0)}, {-e, Rational(1, 2)}, {Rational(5, 12), Rational(0)}}),
        make_hull2({{-e, Rational(1, 2)}, {Rational(-1, 12), Rational(1, 2)},
                    {Rational(5, 12), Rational(1)}, {Rational(5, 12), Rational(7, 6)}})};
    int sampled = 0;
    for (const Hull& h : hulls) {
        Certificate cert = certify_hull(h, e);
        for (const auto& piece : cert.pieces) {
            auto q = cell_sample(piece.residual);
            ASSERT_TRUE(q.has_value());
            ++sampled;
            OrbitOutcome out = orbit({{q->x, q->y}, e},
                                     {piece.cycle.word[0],
                                      piece.cycle.word[1 % piece.cycle.word.size()]},
                                     100000);
            ASSERT_EQ(out.kind, OrbitOutcome::Kind::periodic);
            EXPECT_EQ(out.cycle, piece.cycle);
            EXPECT_EQ(out.preperiod, 0);
        }
    }
    EXPECT_GE(sampled, 4);
}

TEST(DecidePoint, SpecExamples) {
    // (1/2, 1) at eps = 1/2 lies in D0 (the y = 1 spike of the symmetric case).
    Certificate a = decide_point({{Rational(1, 2), Rational(1)}, Rational(1, 2)});
    EXPECT_EQ(a.verdict, Certificate::Verdict::point_in_D0);

    Certificate b = decide_point({{Rational(1, 2), Rational(-1)}, Rational(1, 2)});
    ASSERT_EQ(b.verdict, Certificate::Verdict::point_not_in_D0);
    ASSERT_TRUE(b.witness_cycle.has_value());
    // The reported cycle is realized at the parameter itself.
    RegionCell cut = cycle_realized_region(*b.witness_cycle, Rational(1, 2));
    EXPECT_TRUE(cell_contains(cut, Rational(1, 2), Rational(-1)));

    Certificate c = decide_point({{Rational(0), Rational(0)}, Rational(1, 4)});
    EXPECT_EQ(c.verdict, Certificate::Verdict::point_in_D0);
}

TEST(DecidePoint, OutsideClosedRegionRefuted) {
    Certificate c = decide_point({{Rational(3), Rational(3)}, Rational(0)});
    EXPECT_EQ(c.verdict, Certificate::Verdict::point_not_in_D0);
    EXPECT_FALSE(c.witness_cycle.has_value());
}

TEST(DecidePoint, BoundaryLinesRefutedByOrbitSearch) {
    // On y = x+1 the cycle (-1,1) is realized, so a refutation must exist; the
    // search may legitimately return any cycle whose cutout contains r.
    Certificate a = decide_point({{Rational(1, 2), Rational(3, 2)}, Rational(1, 4)});
    ASSERT_EQ(a.verdict, Certificate::Verdict::point_not_in_D0);
    ASSERT_TRUE(a.witness_cycle.has_value());
    RegionCell acut = cycle_realized_region(*a.witness_cycle, Rational(1, 4));
    EXPECT_TRUE(cell_contains(acut, Rational(1, 2), Rational(3, 2)));

    // On y = -x-1 every diagonal state is fixed.
    Certificate b = decide_point({{Rational(1, 3), Rational(-4, 3)}, Rational(1, 4)});
    ASSERT_EQ(b.verdict, Certificate::Verdict::point_not_in_D0);
    ASSERT_TRUE(b.witness_cycle.has_value());
}

TEST(DecidePoint, AcceptanceSoundness) {
    // Whenever the certificate says point_in_D0, every start in a box reaches 0.
    std::mt19937 rng(23);
    std::uniform_int_distribution<long> num(-5, 5), den(6, 9);
    int decided = 0;
    while (decided < 10) {
        RationalVec r{Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
        if (!strictly_inside_E(r)) continue;
        SrsParameter p{r, Rational((long)(rng() % 7), 7)};
        Certificate c = decide_point(p);
        if (c.verdict != Certificate::Verdict::point_in_D0) continue;
        ++decided;
        for (long a = -15; a <= 15; ++a)
            for (long b = -15; b <= 15; ++b) {
                auto out = orbit(p, {Int(a), Int(b)}, 1000000);
                ASSERT_EQ(out.kind, OrbitOutcome::Kind::reaches_zero);
            }
    }
}

TEST(DecidePoint, CapsYieldInconclusive) {
    Caps caps;
    caps.refutation_box = 0;
    Certificate c = decide_point({{Rational(1), Rational(0)}, Rational(0)}, caps);
    EXPECT_EQ(c.verdict, Certificate::Verdict::inconclusive);
}

TEST(Subdivide, TriangleLongestEdgeBisection) {
    Hull h = make_hull2({pt(0, 1, 0, 1), pt(1, 2, 0, 1), pt(0, 1, 1, 2)});
    auto parts = subdivide(h);
    ASSERT_EQ(parts.size(), 2u);
    Rational total = cell_double_area(parts[0].cell) + cell_double_area(parts[1].cell);
    EXPECT_EQ(total, cell_double_area(h.cell));
    // The split vertex is the midpoint of the hypotenuse.
    bool found = false;
    for (const auto& part : parts)
        for (const auto& v : part.cell.verts) found = found || v == pt(1, 4, 1, 4);
    EXPECT_TRUE(found);
    RegionCell overlap = cell_meet(parts[0].cell, parts[1].cell);
    EXPECT_NE(overlap.kind, CellKind::polygon);
}

TEST(Subdivide, SegmentAndPoint) {
    Hull seg = make_hull2({pt(0, 1, 0, 1), pt(1, 2, 1, 2)});
    auto parts = subdivide(seg);
    ASSERT_EQ(parts.size(), 2u);
    EXPECT_EQ(parts[0].cell.kind, CellKind::segment);
    EXPECT_EQ(parts[1].cell.kind, CellKind::segment);

    Hull point = make_hull2({pt(1, 4, 1, 4)});
    EXPECT_THROW(subdivide(point), std::invalid_argument);
}

TEST(Hull, RejectsVerticesOutsideE2) {
    EXPECT_THROW(make_hull2({pt(1, 1, 0, 1)}), std::invalid_argument);   // on the boundary
    EXPECT_THROW(make_hull2({pt(0, 1, 3, 2)}), std::invalid_argument);   // above the roof
    EXPECT_NO_THROW(make_hull2({pt(9, 10, 0, 1)}));
}

TEST(Stability, SchurMatchesExplicitTriangleForD2) {
    std::mt19937 rng(31);
    std::uniform_int_distribution<long> num(-30, 30), den(1, 20);
    for (int it = 0; it < 2000; ++it) {
        Rational x(num(rng), den(rng)), y(num(rng), den(rng));
        bool tri = x < Rational(1) && -x < Rational(1) && y < x + Rational(1) &&
                   -y < x + Rational(1);
        std::vector<Rational> c{x, y, Rational(1)};
        EXPECT_EQ(detail::schur_stable(c), tri);
    }
}

TEST(Stability, HigherDimensionSamples) {
    // t^3 stable iff all roots inside the disk; r = (r1,r2,r3) gives
    // t^3 + r3 t^2 + r2 t + r1.
    EXPECT_TRUE(strictly_inside_E({Rational(1, 10), Rational(1, 10), Rational(1, 10)}));
    EXPECT_FALSE(strictly_inside_E({Rational(2), Rational(0), Rational(0)}));
    EXPECT_FALSE(strictly_inside_E({Rational(1), Rational(0), Rational(0)}));   // |roots| = 1
    EXPECT_TRUE(strictly_inside_E({Rational(0), Rational(0), Rational(0)}));
    EXPECT_TRUE(strictly_inside_E({Rational(-1, 2)}));
    EXPECT_FALSE(strictly_inside_E({Rational(-1)}));
}
