#include <gtest/gtest.h>

#include "epsrs/regions.hpp"

using namespace epsrs;

namespace {

Point pt(long xn, long xd, long yn, long yd) { return {Rational(xn, xd), Rational(yn, yd)}; }

Cycle cyc(std::initializer_list<long> xs) {
    std::vector<Int> w;
    for (long x : xs) w.emplace_back(x);
    return canonical_cycle(w);
}

const std::vector<Rational> kEpsGrid = {Rational(1, 8),  Rational(1, 4), Rational(1, 3),
                                        Rational(5, 12), Rational(1, 2), Rational(3, 5),
                                        Rational(3, 4),  Rational(7, 8)};

}  // namespace

TEST(Region, SpecMembershipExamples) {
    EXPECT_TRUE(region(RegionId::Dstar, Rational(1, 4)).contains(Rational(0), Rational(0)));
    EXPECT_TRUE(region(RegionId::T, Rational(1, 4)).contains(Rational(-3, 8), Rational(1, 8)));
    // B(1/2): right boundary x <= 1/6 is closed.
    RegionSpec b = region(RegionId::B, Rational(1, 2));
    EXPECT_TRUE(b.contains(Rational(1, 6), Rational(0)));
    EXPECT_TRUE(b.contains(Rational(1, 6), Rational(2, 3)));
    EXPECT_FALSE(b.contains(Rational(7, 40), Rational(0)));
    // D*(1/2): y <= x + 1/2 closed, lower bound open.
    RegionSpec ds = region(RegionId::Dstar, Rational(1, 2));
    EXPECT_TRUE(ds.contains(Rational(0), Rational(1, 2)));
    EXPECT_FALSE(ds.contains(Rational(0), Rational(-1, 2)));
}

TEST(Region, BranchConsistency) {
    for (const Rational& e : kEpsGrid) {
        RegionSpec dstar = region(RegionId::Dstar, e);
        RegionSpec sreg = region(RegionId::S, e);
        RegionSpec lreg = region(RegionId::L, e);
        EXPECT_TRUE(cell_equal(region(RegionId::B, e).cell,
                               cell_meet(dstar.cell, sreg.halfplanes)));
        EXPECT_TRUE(cell_equal(region(RegionId::D, e).cell,
                               cell_meet(dstar.cell, lreg.halfplanes)));
    }
}

TEST(Region, TIsComplementOfLInsideDstar) {
    for (const Rational& e : kEpsGrid) {
        RegionSpec dstar = region(RegionId::Dstar, e);
        HalfPlane comp_l = e < Rational(1, 2)
                               ? HalfPlane{Rational(-1), Rational(0), -e, true}
                               : HalfPlane{Rational(-1), Rational(0), -(Rational(1) - e), false};
        RegionCell t2 = cell_meet(dstar.cell, std::vector<HalfPlane>{comp_l});
        EXPECT_TRUE(cell_equal(region(RegionId::T, e).cell, t2)) << "eps=" << e.str();
    }
}

TEST(Region, DstarSymmetricUpToBoundary) {
    for (const Rational& e : kEpsGrid) {
        RegionCell a = cell_closure(region(RegionId::Dstar, e).cell);
        RegionCell b = cell_closure(region(RegionId::Dstar, Rational(1) - e).cell);
        EXPECT_TRUE(cell_equal(a, b)) << "eps=" << e.str();
    }
}

TEST(Region, EmptyTriangleAtHalf) {
    EXPECT_EQ(region(RegionId::T, Rational(1, 2)).cell.kind, CellKind::empty);
}

// lattice_in_D agrees with exact membership of (1/p0, p1/p0) in D(eps) over the
// spec grid eps = j/(4|p0|).
TEST(Region, LatticeMatchesGeometryOnGrid) {
    for (long p0 = -12; p0 <= 12; ++p0) {
        if (std::abs(p0) < 2) continue;
        long m = std::abs(p0);
        for (long j = 0; j < 4 * m; ++j) {
            Rational eps(j, 4 * m);
            RegionSpec d = region(RegionId::D, eps);
            for (long p1 = -m - 3; p1 <= m + 3; ++p1) {
                bool lattice = lattice_in_D(Int(p0), Int(p1), eps);
                bool geo = d.contains(Rational(1, p0), Rational(p1, p0));
                ASSERT_EQ(lattice, geo) << "p0=" << p0 << " p1=" << p1 << " eps=" << eps.str();
            }
        }
    }
}

TEST(Region, LatticeInBExamples) {
    // In D implies in B(eps_k) away from the small-p0 windows.
    EXPECT_TRUE(lattice_in_D(Int(7), Int(1), Rational(1, 3)));
    LatticeBResult a = lattice_in_B(Int(7), Int(1), Rational(1, 3));
    EXPECT_TRUE(a.in_B_epsk);
    EXPECT_FALSE(a.lem5_exception);
    EXPECT_FALSE(a.db_window);

    EXPECT_TRUE(lattice_in_D(Int(2), Int(1), Rational(1, 2)));
    LatticeBResult b = lattice_in_B(Int(2), Int(1), Rational(1, 2));
    EXPECT_FALSE(b.in_B_epsk);
    EXPECT_TRUE(b.lem5_exception);

    EXPECT_TRUE(lattice_in_D(Int(3), Int(1), Rational(1, 2)));
    LatticeBResult c = lattice_in_B(Int(3), Int(1), Rational(1, 2));
    EXPECT_TRUE(c.in_B_epsk);
    EXPECT_FALSE(c.lem5_exception);
}

// Lem2 i): for p0 not in {2,3,4,5}, membership in D implies membership in
// B(eps_k) with no exception needed.
TEST(Region, Lem2OutsideSmallP0) {
    for (long p0 = -10; p0 <= 10; ++p0) {
        if (std::abs(p0) < 2 || p0 == 2 || p0 == 3 || p0 == 4 || p0 == 5) continue;
        long m = std::abs(p0);
        for (long j = 0; j < 2 * m; ++j) {
            Rational eps(j, 2 * m);
            for (long p1 = -m - 2; p1 <= m + 2; ++p1) {
                if (!lattice_in_D(Int(p0), Int(p1), eps)) continue;
                LatticeBResult r = lattice_in_B(Int(p0), Int(p1), eps);
                ASSERT_TRUE(r.in_B_epsk)
                    << "p0=" << p0 << " p1=" << p1 << " eps=" << eps.str();
            }
        }
    }
}

TEST(DeltaFamily, SpecCoordinates) {
    DeltaFamily f = delta_family(Rational(1, 4));
    RegionCell d1 = f.delta(1);
    RegionCell expect = cell_from_points({pt(-1, 2, 1, 4), pt(-1, 4, 0, 1), pt(-1, 4, 1, 2)});
    EXPECT_TRUE(cell_equal(d1, expect));

    DeltaFamily g = delta_family(Rational(2, 25), 4);
    EXPECT_EQ(g.l, 6);
    EXPECT_EQ(g.V[2], pt(44, 75, 22, 15));

    // Tilde family: coordinates at 1 - eps.
    DeltaFamily t = delta_family(Rational(3, 4));
    EXPECT_TRUE(t.tilde);
    EXPECT_TRUE(cell_equal(t.delta(1), d1));

    EXPECT_THROW(delta_family(Rational(1, 2)), std::invalid_argument);
    EXPECT_THROW(delta_family(Rational(1, 4), 4), std::invalid_argument);  // eps not in interval
    EXPECT_THROW(delta_family(Rational(2, 25), 3), std::invalid_argument); // n too small
}

TEST(DeltaFamily, Delta1IsClosureOfT) {
    for (Rational e : {Rational(1, 4), Rational(1, 3), Rational(2, 5)}) {
        DeltaFamily f = delta_family(e);
        RegionCell tbar = cell_closure(region(RegionId::T, e).cell);
        EXPECT_TRUE(cell_equal(f.delta(1), tbar)) << "eps=" << e.str();
    }
}

// The thirteen triangles tile the closure of B(eps): each lies inside, their
// pairwise overlaps carry no area, and the areas add up.
TEST(DeltaFamily, Delta2To14TileClosureOfB) {
    for (Rational e : {Rational(1, 4), Rational(1, 3), Rational(2, 5)}) {
        DeltaFamily f = delta_family(e);
        RegionCell bbar = cell_closure(region(RegionId::B, e).cell);
        Rational total(0);
        for (int i = 2; i <= 14; ++i) {
            RegionCell di = f.delta(i);
            EXPECT_TRUE(cell_equal(cell_meet(di, bbar), di))
                << "Delta_" << i << " not inside closure(B), eps=" << e.str();
            total += cell_double_area(di);
            for (int j = i + 1; j <= 14; ++j) {
                RegionCell overlap = cell_meet(di, f.delta(j));
                EXPECT_NE(overlap.kind, CellKind::polygon)
                    << "Delta_" << i << " and Delta_" << j << " overlap, eps=" << e.str();
            }
        }
        EXPECT_EQ(total, cell_double_area(bbar)) << "eps=" << e.str();
    }
}

// Appendix fan decomposition: Delta_17 = union of Delta(W,V_s,V_{s+1}) and
// Delta_16. All pieces share the apex W, so this reduces to exact 1-D coverage
// of the segment SZ by the base segments.
TEST(DeltaFamily, AppendixFanCoversDelta17) {
    for (auto [n, e] : std::vector<std::pair<long, Rational>>{{4, Rational(2, 25)},
                                                              {4, Rational(16, 189)},
                                                              {5, Rational(20, 297)}}) {
        DeltaFamily f = delta_family(e, n);
        std::vector<RegionCell> bases;
        for (long s = 0; s <= f.l - 1; ++s)
            bases.push_back(cell_from_points({f.V[(std::size_t)s], f.V[(std::size_t)s + 1]}));
        bases.push_back(cell_from_points({f.at('S'), f.at('T')}));
        EXPECT_TRUE(cells_cover_segment_exactly(bases, f.at('S'), f.at('Z')))
            << "n=" << n << " eps=" << e.str();
    }
}

TEST(SegmentCover, ExactnessOfTheChecker) {
    Point a = pt(0, 1, 0, 1), b = pt(1, 1, 1, 1);
    auto seg = [&](long n1, long d1, long n2, long d2) {
        return cell_from_points({pt(n1, d1, n1, d1), pt(n2, d2, n2, d2)});
    };
    EXPECT_TRUE(cells_cover_segment_exactly({seg(0, 1, 1, 2), seg(1, 2, 1, 1)}, a, b));
    EXPECT_TRUE(cells_cover_segment_exactly({seg(0, 1, 2, 3), seg(1, 3, 1, 1)}, a, b));
    EXPECT_FALSE(cells_cover_segment_exactly({seg(0, 1, 1, 3), seg(2, 3, 1, 1)}, a, b));
    // Two half-open pieces missing the single join point break coverage.
    std::vector<HalfPlane> open_right = seg(0, 1, 1, 2).constraints;
    open_right.push_back({Rational(-1), Rational(0), Rational(1, 2), true});  // x < 1/2
    std::vector<HalfPlane> open_left = seg(1, 2, 1, 1).constraints;
    open_left.push_back({Rational(1), Rational(0), Rational(-1, 2), true});  // x > 1/2
    EXPECT_FALSE(cells_cover_segment_exactly(
        {cell_from_halfplanes(open_right), cell_from_halfplanes(open_left)}, a, b));
    // A closed piece on the far side heals the open join.
    EXPECT_TRUE(cells_cover_segment_exactly(
        {cell_from_halfplanes(open_right), seg(1, 2, 1, 1)}, a, b));
    EXPECT_TRUE(cells_cover_segment_exactly(
        {cell_from_halfplanes(open_right), seg(1, 3, 1, 1)}, a, b));
    // Point target.
    EXPECT_TRUE(cells_cover_segment_exactly({cell_from_points({a})}, a, a));
    EXPECT_FALSE(cells_cover_segment_exactly({}, a, a));
}

TEST(ReproduceLemma, Delta1) {
    LemmaReport r = reproduce_lemma("delta1", Rational(2, 5));
    EXPECT_TRUE(r.ok()) << (r.findings.empty() ? "" : r.findings[0]);
    EXPECT_EQ(r.vertices, 7u);
    EXPECT_EQ(r.edges, 10u);
    EXPECT_EQ(r.nontrivial_cycles, (std::set<Cycle>{cyc({1, 0}), cyc({-1, 1})}));

    LemmaReport q = reproduce_lemma("delta1", Rational(1, 4));
    EXPECT_TRUE(q.ok()) << (q.findings.empty() ? "" : q.findings[0]);
    EXPECT_EQ(q.edges, 11u);
}

TEST(ReproduceLemma, DeltaZeroFamilyCertifies) {
    for (int i : {3, 4, 5, 6, 7, 8, 9, 11, 12, 13}) {
        for (Rational e : {Rational(1, 4), Rational(2, 5)}) {
            LemmaReport r = reproduce_lemma("delta0", e, i);
            EXPECT_EQ(r.certificate.verdict, Certificate::Verdict::subset_of_D0)
                << "i=" << i << " eps=" << e.str();
        }
    }
}

TEST(ReproduceLemma, DeltaCAndCZ) {
    for (int i : {2, 10}) {
        LemmaReport r = reproduce_lemma("deltaC", Rational(1, 3), i);
        EXPECT_TRUE(r.ok()) << (r.findings.empty() ? "" : r.findings[0]);
    }
    for (Rational e : {Rational(1, 4), Rational(1, 3), Rational(2, 5)}) {
        LemmaReport r = reproduce_lemma("deltaCZ", e);
        EXPECT_EQ(r.certificate.verdict, Certificate::Verdict::cut_out);
        EXPECT_TRUE(cells_cover_segment_exactly(r.certificate.residual_cells(),
                                                delta_family(e).at('C'),
                                                delta_family(e).at('Z')))
            << "eps=" << e.str();
    }
}

TEST(ReproduceLemma, Delta14SubdividesUnderTightCap) {
    // Force the subdivision path and check the merged residual is still CZ.
    // |V(Delta14(1/8))| = 43, while the corner witness sets need up to 37.
    Caps caps;
    caps.witness_size_cap = 42;
    LemmaReport r = reproduce_lemma("deltaCZ", Rational(1, 8), std::nullopt, std::nullopt,
                                    std::nullopt, caps);
    EXPECT_TRUE(r.subdivided);
    EXPECT_GE(r.certificate.stats.subdivisions, 1u);
    EXPECT_EQ(r.certificate.verdict, Certificate::Verdict::cut_out);
    EXPECT_TRUE(r.ok()) << (r.findings.empty() ? "" : r.findings[0]);

    // A cap below the corner witness floor can never converge: the hull is
    // bisected until the depth cap and the result is an honest inconclusive.
    Caps tight;
    tight.witness_size_cap = 30;
    tight.subdivision_depth_cap = 6;
    LemmaReport q = reproduce_lemma("deltaCZ", Rational(1, 8), std::nullopt, std::nullopt,
                                    std::nullopt, tight);
    EXPECT_EQ(q.certificate.verdict, Certificate::Verdict::inconclusive);
}

TEST(ReproduceLemma, AppendixGraphsAtIntervalStart) {
    // At the left endpoint of the appendix interval the per-eps graph realizes
    // the full interval-union counts.
    for (long n : {4L, 5L}) {
        Rational e(2, 3 * (2 * n + 1));
        LemmaReport r = reproduce_lemma("delta19", e, std::nullopt, n);
        EXPECT_TRUE(r.ok()) << (r.findings.empty() ? "" : r.findings[0]);
        EXPECT_EQ(r.vertices, (std::size_t)(18 * n - 3));
        EXPECT_EQ(r.nontrivial_cycles, (std::set<Cycle>{cyc({-1, 1})}));
        long l = (2 * n * n - 3 * n) / 4 + 1;
        for (long s = 2; s <= l - 1; ++s) {
            LemmaReport rs = reproduce_lemma("delta18s", e, std::nullopt, n, s);
            EXPECT_EQ(rs.certificate.verdict, Certificate::Verdict::cut_out);
            EXPECT_TRUE(rs.ok()) << "s=" << s
                                 << (rs.findings.empty() ? "" : ": " + rs.findings[0]);
            EXPECT_FALSE(rs.formula_bracket_consistent);  // fails for n = 4, 5
        }
    }
}

TEST(ReproduceLemma, MidpointVertexDriftIsSurfaced) {
    // Inside the interval the hull moves and the witness set shrinks below the
    // stated count; the harness reports the discrepancy instead of hiding it.
    LemmaReport r = reproduce_lemma("delta19", Rational(16, 189), std::nullopt, 4);
    EXPECT_EQ(r.vertices, 59u);
    EXPECT_FALSE(r.ok());
    EXPECT_EQ(r.nontrivial_cycles, (std::set<Cycle>{cyc({-1, 1})}));
    EXPECT_EQ(r.certificate.verdict, Certificate::Verdict::cut_out);
}

TEST(ReproduceLemma, RejectsOutOfRangeParameters) {
    EXPECT_THROW(reproduce_lemma("delta1", Rational(3, 5)), std::invalid_argument);
    EXPECT_THROW(reproduce_lemma("delta0", Rational(1, 4), 2), std::invalid_argument);
    EXPECT_THROW(reproduce_lemma("delta19", Rational(1, 4), std::nullopt, 4),
                 std::invalid_argument);
    EXPECT_THROW(reproduce_lemma("delta18s", Rational(2, 25), std::nullopt, 4, 99),
                 std::invalid_argument);
    EXPECT_THROW(reproduce_lemma("nope", Rational(1, 4)), std::invalid_argument);
}

// The first bisection of Delta_14(1/10) covers the hull exactly, matching the
// hand decomposition in coverage though not in shape.
TEST(Subdivide, Delta14CoverageAtOneTenth) {
    DeltaFamily fam = delta_family(Rational(1, 10));
    Hull h = fam.delta_hull(14);
    auto parts = subdivide(h);
    ASSERT_EQ(parts.size(), 2u);
    Rational total(0);
    for (const auto& part : parts) {
        EXPECT_TRUE(cell_equal(cell_meet(part.cell, h.cell), part.cell));
        total += cell_double_area(part.cell);
    }
    EXPECT_EQ(total, cell_double_area(h.cell));
    EXPECT_NE(cell_meet(parts[0].cell, parts[1].cell).kind, CellKind::polygon);
}

TEST(RegionSample, AgreesWithSymmetricClosedFormWhereConclusive) {
    SampleMap m = region_sample(Rational(1, 2), 4);
    ASSERT_FALSE(m.rows.empty());
    auto srspola = [](const Rational& x, const Rational& y) {
        Rational half(1, 2);
        if (x < half && -x < half && y > -x - half && y <= x + half) return true;
        return x == half && ((y > Rational(-1) && y <= half) || y == Rational(1));
    };
    for (const auto& row : m.rows) {
        if (row.verdict == Certificate::Verdict::point_in_D0)
            EXPECT_TRUE(srspola(row.x, row.y)) << row.x.str() << "," << row.y.str();
        else if (row.verdict == Certificate::Verdict::point_not_in_D0)
            EXPECT_FALSE(srspola(row.x, row.y)) << row.x.str() << "," << row.y.str();
    }
    // Determinism.
    SampleMap m2 = region_sample(Rational(1, 2), 4);
    ASSERT_EQ(m.rows.size(), m2.rows.size());
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
        EXPECT_EQ(m.rows[i].x, m2.rows[i].x);
        EXPECT_EQ(m.rows[i].verdict, m2.rows[i].verdict);
    }
}

TEST(SamplePoints, RespectsOpenBoundaries) {
    RegionSpec t = region(RegionId::T, Rational(1, 4));
    auto pts = sample_points_in_cell(t.cell, 50);
    EXPECT_EQ(pts.size(), 50u);
    for (const auto& p : pts) {
        EXPECT_TRUE(cell_contains(t.cell, p));
        EXPECT_TRUE(p.x < Rational(-1, 4));  // the x < -eps face is open
    }
}
