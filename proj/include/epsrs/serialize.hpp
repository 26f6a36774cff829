#pragma once

// JSON, CSV, and SVG emission. Decisions never flow through this file; it only
// renders values the exact modules produced. Every JSON artifact carries a
// "schema" tag so downstream consumers can pin formats.

#include <string>
#include <vector>

#include <json.hpp>

#include "cns.hpp"
#include "dynamics.hpp"
#include "geometry.hpp"
#include "regions.hpp"
#include "witness.hpp"

namespace epsrs {

using nlohmann::json;

inline constexpr const char* kSchema = "epsrs/1";
inline constexpr const char* kSvgGenerator = "epsrs-svg 1";

inline json to_json(const Rational& q) { return q.str(); }

inline json to_json(const Point& p) { return json::array({p.x.str(), p.y.str()}); }

inline json to_json(const Int& n) {
    if (n.fits_slong_p()) return (long)n.get_si();
    return n.get_str();
}

inline json to_json(const Cycle& c) {
    json a = json::array();
    for (const auto& e : c.word) a.push_back(to_json(e));
    return a;
}

inline json to_json(const LatticeVector& z) {
    json a = json::array();
    for (const auto& e : z) a.push_back(to_json(e));
    return a;
}

inline json to_json(const HalfPlane& h) {
    return json{{"a", h.a.str()}, {"b", h.b.str()}, {"c", h.c.str()}, {"strict", h.strict}};
}

inline json to_json(const RegionCell& c) {
    json j;
    j["kind"] = to_string(c.kind);
    j["bounded"] = c.bounded;
    json verts = json::array(), vin = json::array(), ein = json::array();
    for (const auto& v : c.verts) verts.push_back(to_json(v));
    for (bool b : c.vert_in) vin.push_back(b);
    for (bool b : c.edge_in) ein.push_back(b);
    j["vertices"] = verts;
    j["vertex_included"] = vin;
    j["edge_included"] = ein;
    json cons = json::array();
    for (const auto& h : c.constraints) cons.push_back(to_json(h));
    j["constraints"] = cons;
    return j;
}

inline json to_json(const OrbitOutcome& o) {
    json j;
    j["schema"] = kSchema;
    switch (o.kind) {
        case OrbitOutcome::Kind::reaches_zero:
            j["outcome"] = "reaches_zero";
            j["steps"] = o.steps;
            break;
        case OrbitOutcome::Kind::periodic:
            j["outcome"] = "periodic";
            j["preperiod"] = o.preperiod;
            j["cycle"] = to_json(o.cycle);
            break;
        case OrbitOutcome::Kind::cap_exceeded:
            j["outcome"] = "cap_exceeded";
            j["steps"] = o.steps;
            break;
    }
    return j;
}

inline json to_json(const Certificate& c) {
    json j;
    j["schema"] = kSchema;
    j["verdict"] = to_string(c.verdict);
    json cycles = json::array();
    for (const auto& cy : c.cycles) cycles.push_back(to_json(cy));
    j["cycles"] = cycles;
    json residual = json::array();
    for (const auto& piece : c.pieces)
        residual.push_back(json{{"cycle", to_json(piece.cycle)},
                                {"cell", to_json(piece.residual)}});
    j["residual"] = residual;
    if (c.witness_cycle) j["witness_cycle"] = to_json(*c.witness_cycle);
    if (!c.reason.empty()) j["reason"] = c.reason;
    j["stats"] = json{{"vertices", c.stats.vertices},
                      {"edges", c.stats.edges},
                      {"subdivisions", c.stats.subdivisions}};
    return j;
}

inline json to_json(const Expansion& e) {
    json j;
    j["schema"] = kSchema;
    switch (e.state) {
        case Expansion::State::success: {
            json d = json::array();
            for (const auto& x : e.digits) d.push_back(to_json(x));
            j["digits"] = d;
            break;
        }
        case Expansion::State::failure: {
            json cyc = json::array();
            for (const auto& r : e.failure_cycle) cyc.push_back(to_json(r));
            j["failure"] = json{{"cycle", cyc}};
            break;
        }
        case Expansion::State::cap_exceeded:
            j["cap_exceeded"] = true;
            break;
    }
    return j;
}

inline json to_json(const CnsVerdict& v) {
    json j;
    j["schema"] = kSchema;
    switch (v.state) {
        case CnsVerdict::State::cns: j["is_cns"] = true; break;
        case CnsVerdict::State::not_cns: j["is_cns"] = false; break;
        case CnsVerdict::State::inconclusive: j["is_cns"] = nullptr; break;
        case CnsVerdict::State::internal_error:
            j["is_cns"] = nullptr;
            j["internal_error"] = true;
            break;
    }
    switch (v.route) {
        case CnsVerdict::Route::closed_form: j["route"] = "closed_form"; break;
        case CnsVerdict::Route::witness_certificate: j["route"] = "witness_certificate"; break;
        case CnsVerdict::Route::brute_force: j["route"] = "brute_force"; break;
    }
    j["certificate"] = to_json(v.certificate);
    if (v.failing_residue) {
        j["failing_residue"] = to_json(*v.failing_residue);
        json cyc = json::array();
        for (const auto& r : v.residue_cycle) cyc.push_back(to_json(r));
        j["residue_cycle"] = cyc;
    }
    if (v.expansions_capped > 0) j["expansions_capped"] = v.expansions_capped;
    return j;
}

inline json to_json(const LemmaReport& r) {
    json j;
    j["schema"] = kSchema;
    j["lemma"] = r.lemma;
    j["eps"] = r.eps.str();
    if (r.i) j["i"] = r.i;
    if (r.n) j["n"] = r.n;
    if (r.s) j["s"] = r.s;
    j["vertices"] = r.vertices;
    j["edges"] = r.edges;
    j["subdivided"] = r.subdivided;
    json cyc = json::array();
    for (const auto& c : r.nontrivial_cycles) cyc.push_back(to_json(c));
    j["nontrivial_cycles"] = cyc;
    j["certificate"] = to_json(r.certificate);
    if (r.expected_vertices) j["expected_vertices"] = *r.expected_vertices;
    if (r.expected_edges) {
        j["expected_edges"] = *r.expected_edges;
        j["expected_edges_exact"] = r.expected_edges_exact;
    }
    if (r.formula_vertices) {
        j["formula_vertices"] = *r.formula_vertices;
        j["formula_edges"] = *r.formula_edges;
        j["formula_bracket_consistent"] = r.formula_bracket_consistent;
    }
    j["findings"] = r.findings;
    j["ok"] = r.ok();
    return j;
}

inline const char* verdict_short(Certificate::Verdict v) {
    switch (v) {
        case Certificate::Verdict::point_in_D0: return "in";
        case Certificate::Verdict::point_not_in_D0: return "out";
        default: return "inconclusive";
    }
}

inline std::string to_csv(const SampleMap& m) {
    std::string out = "x,y,verdict\n";
    for (const auto& row : m.rows) {
        out += row.x.str();
        out += ",";
        out += row.y.str();
        out += ",";
        out += verdict_short(row.verdict);
        out += "\n";
    }
    return out;
}

namespace detail {

// Pixel mapping for the plots: exact rational -> integer pixel coordinates.
// The viewport covers [-9/8, 9/8] x [-9/4, 9/4], scaled to 480 x 960.
inline long px(const Rational& x) {
    return ((x + Rational(9, 8)) * Rational(480 * 8, 18)).floor().get_si();
}
inline long py(const Rational& y) {
    return ((Rational(9, 4) - y) * Rational(960 * 4, 18)).floor().get_si();
}

inline std::string svg_poly(const RegionCell& cell, const char* stroke, const char* fill) {
    if (cell.kind != CellKind::polygon || !cell.bounded) return {};
    std::string pts;
    for (const auto& v : cell.verts) {
        if (!pts.empty()) pts += " ";
        pts += std::to_string(px(v.x)) + "," + std::to_string(py(v.y));
    }
    return "<polygon points=\"" + pts + "\" fill=\"" + fill + "\" stroke=\"" + stroke +
           "\" stroke-width=\"2\"/>\n";
}

}  // namespace detail

// Static plot: sample verdicts plus the B / D / T outlines at the same eps.
inline std::string to_svg(const SampleMap& m) {
    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"960\" "
         "viewBox=\"0 0 480 960\">\n";
    s += std::string("<!-- ") + kSvgGenerator + " eps=" + m.eps.str() + " grid=" +
         std::to_string(m.grid) + " -->\n";
    s += "<rect width=\"480\" height=\"960\" fill=\"white\"/>\n";
    s += detail::svg_poly(region(RegionId::B, m.eps).cell, "#2b6cb0", "#bee3f8");
    s += detail::svg_poly(region(RegionId::T, m.eps).cell, "#6b46c1", "#e9d8fd");
    for (const auto& row : m.rows) {
        const char* color = "#999999";
        if (row.verdict == Certificate::Verdict::point_in_D0) color = "#1a7f37";
        if (row.verdict == Certificate::Verdict::point_not_in_D0) color = "#c0392b";
        s += "<circle cx=\"" + std::to_string(detail::px(row.x)) + "\" cy=\"" +
             std::to_string(detail::py(row.y)) + "\" r=\"3\" fill=\"" + color + "\"/>\n";
    }
    s += detail::svg_poly(region(RegionId::B, m.eps).cell, "#2b6cb0", "none");
    s += detail::svg_poly(region(RegionId::D, m.eps).cell, "#b7791f", "none");
    s += detail::svg_poly(region(RegionId::T, m.eps).cell, "#6b46c1", "none");
    s += "</svg>\n";
    return s;
}

inline json to_json(const SampleMap& m) {
    json j;
    j["schema"] = kSchema;
    j["eps"] = m.eps.str();
    j["grid"] = m.grid;
    json rows = json::array();
    for (const auto& row : m.rows)
        rows.push_back(json::array({row.x.str(), row.y.str(), verdict_short(row.verdict)}));
    j["rows"] = rows;
    return j;
}

}  // namespace epsrs
