// Command-line front end: exact eps-SRS / eps-CNS computations with JSON, CSV,
// and SVG artifacts.
//
// Exit codes: 0 success; 2 cross-validation mismatch or internal
// inconsistency; 3 only inconclusive results; 64 usage / malformed input.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "epsrs/epsrs.hpp"
#include "epsrs/serialize.hpp"

namespace fs = std::filesystem;
using namespace epsrs;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitUsage = 64;

struct RunConfig {
    Caps caps;
    unsigned jobs = 1;
    std::string out_dir;
    bool inject_mismatch = false;  // testing hook for the exit-code contract
};

void write_file(const RunConfig& cfg, const std::string& name, const std::string& body) {
    if (cfg.out_dir.empty()) return;
    fs::create_directories(cfg.out_dir);
    std::ofstream f(fs::path(cfg.out_dir) / name, std::ios::binary);
    f << body;
}

// Deterministic parallel map: results land by index regardless of scheduling.
template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
    if (jobs <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

int run_srs_orbit(const RunConfig& cfg, const std::string& rs, const std::string& es,
                  const std::string& zs) {
    SrsParameter p{parse_rational_vec(rs), Rational::parse(es)};
    LatticeVector z = parse_lattice_vec(zs);
    OrbitOutcome out = orbit(p, z, cfg.caps.orbit_step_cap);
    std::cout << to_json(out).dump(2) << "\n";
    return out.kind == OrbitOutcome::Kind::cap_exceeded ? kExitInconclusive : kExitOk;
}

int run_srs_decide(const RunConfig& cfg, const std::string& rs, const std::string& es) {
    SrsParameter p{parse_rational_vec(rs), Rational::parse(es)};
    Certificate cert = decide_point(p, cfg.caps);
    std::cout << to_json(cert).dump(2) << "\n";
    write_file(cfg, "decide.json", to_json(cert).dump(2) + "\n");
    return cert.verdict == Certificate::Verdict::inconclusive ? kExitInconclusive : kExitOk;
}

int run_cns_expand(const RunConfig& cfg, const std::string& poly, const std::string& es,
                   const std::string& value) {
    MonicPolynomial P = MonicPolynomial::parse(poly);
    Residue a = parse_lattice_vec(value);
    if (a.size() != P.degree())
        throw std::invalid_argument("value dimension must equal the polynomial degree");
    Expansion e = expand(P, Rational::parse(es), a, cfg.caps.expand_step_cap);
    std::cout << to_json(e).dump(2) << "\n";
    return e.state == Expansion::State::cap_exceeded ? kExitInconclusive : kExitOk;
}

int run_cns_check(const RunConfig& cfg, const std::string& poly, const std::string& es,
                  bool algorithmic) {
    MonicPolynomial P = MonicPolynomial::parse(poly);
    Rational eps = Rational::parse(es);
    json j;
    j["schema"] = kSchema;
    j["polynomial"] = P.str();
    j["eps"] = eps.str();
    std::optional<bool> closed;
    if (P.degree() == 2) {
        closed = is_eps_cns_closed_form(P.p0(), P.coeffs[1], eps);
        j["is_cns"] = *closed;
        j["route"] = "closed_form";
    } else if (!algorithmic) {
        throw std::invalid_argument(
            "no closed form for degree != 2; rerun with --algorithmic");
    }
    int rc = kExitOk;
    if (algorithmic) {
        CnsVerdict v = is_eps_cns_algorithmic(P, eps, cfg.caps.box_radius, cfg.caps);
        j["algorithmic"] = to_json(v);
        if (!closed) {
            if (v.state == CnsVerdict::State::cns) j["is_cns"] = true;
            else if (v.state == CnsVerdict::State::not_cns) j["is_cns"] = false;
            else j["is_cns"] = nullptr;
            j["route"] = "algorithmic";
            if (v.state == CnsVerdict::State::inconclusive) rc = kExitInconclusive;
        } else if (v.state == CnsVerdict::State::cns || v.state == CnsVerdict::State::not_cns) {
            bool agree = (v.state == CnsVerdict::State::cns) == *closed;
            j["agree"] = agree;
            if (!agree) rc = kExitMismatch;
        } else {
            j["agree"] = nullptr;
        }
        if (v.state == CnsVerdict::State::internal_error) rc = kExitMismatch;
    }
    std::cout << j.dump(2) << "\n";
    return rc;
}

int run_region_sample(const RunConfig& cfg, const std::string& es, long grid) {
    Rational eps = Rational::parse(es);
    SampleMap m = region_sample(eps, grid, cfg.caps);
    write_file(cfg, "sample.csv", to_csv(m));
    write_file(cfg, "sample.svg", to_svg(m));
    write_file(cfg, "sample.json", to_json(m).dump(2) + "\n");
    std::size_t in = 0, out = 0, inc = 0;
    for (const auto& row : m.rows) {
        if (row.verdict == Certificate::Verdict::point_in_D0) ++in;
        else if (row.verdict == Certificate::Verdict::point_not_in_D0) ++out;
        else ++inc;
    }
    json j{{"schema", kSchema}, {"eps", eps.str()},     {"grid", grid},
           {"points", m.rows.size()}, {"in", in},       {"out", out},
           {"inconclusive", inc}};
    std::cout << j.dump(2) << "\n";
    return (in + out == 0 && inc > 0) ? kExitInconclusive : kExitOk;
}

int run_harness_lemmas(const RunConfig& cfg, const std::string& which, const std::string& es,
                       std::optional<int> idx, std::optional<long> n, std::optional<long> s) {
    Rational eps = Rational::parse(es);
    LemmaReport rep = reproduce_lemma(which, eps, idx, n, s, cfg.caps);
    json j = to_json(rep);
    std::cout << j.dump(2) << "\n";
    std::string name = "lemma_" + which;
    if (idx) name += "_i" + std::to_string(*idx);
    if (n) name += "_n" + std::to_string(*n);
    if (s) name += "_s" + std::to_string(*s);
    write_file(cfg, name + ".json", j.dump(2) + "\n");
    return rep.ok() ? kExitOk : kExitMismatch;
}

int run_harness_characterize(const RunConfig& cfg, long p0_max) {
    if (p0_max < 2) throw std::invalid_argument("--p0-max must be at least 2");
    struct Row {
        long p0, p1;
        Rational eps;
        int closed = 0;       // 0/1
        int algorithmic = -1; // -1 inconclusive
    };
    std::vector<Row> rows;
    for (long m = 2; m <= p0_max; ++m)
        for (long sign : {1L, -1L})
            for (long p1 = -m - 3; p1 <= m + 3; ++p1)
                for (long jj = 0; jj < 4 * m; ++jj)
                    rows.push_back({sign * m, p1, Rational(jj, 4 * m)});

    parallel_for(rows.size(), cfg.jobs, [&](std::size_t i) {
        Row& row = rows[i];
        row.closed = is_eps_cns_closed_form(Int(row.p0), Int(row.p1), row.eps) ? 1 : 0;
        MonicPolynomial P({Int(row.p0), Int(row.p1)});
        Certificate cert = decide_point({srs_parameter(P), row.eps}, cfg.caps);
        if (cert.verdict == Certificate::Verdict::point_in_D0) {
            row.algorithmic = 1;
        } else if (cert.verdict == Certificate::Verdict::point_not_in_D0) {
            row.algorithmic = 0;
        } else {
            // Tie-breaker: exhaustive expansion over the residue box.
            CnsVerdict v = is_eps_cns_algorithmic(P, row.eps, cfg.caps.box_radius, cfg.caps);
            if (v.state == CnsVerdict::State::cns) row.algorithmic = 1;
            else if (v.state == CnsVerdict::State::not_cns) row.algorithmic = 0;
        }
    });
    if (cfg.inject_mismatch && !rows.empty()) rows.front().closed ^= 1;

    std::string csv = "p0,p1,eps,closed_form,algorithmic,agree\n";
    std::size_t mismatches = 0, inconclusive = 0, conclusive = 0;
    for (const auto& row : rows) {
        std::string alg = row.algorithmic < 0 ? "inconclusive" : (row.algorithmic ? "1" : "0");
        std::string agree = "n/a";
        if (row.algorithmic >= 0) {
            ++conclusive;
            bool ok = row.algorithmic == row.closed;
            agree = ok ? "1" : "0";
            if (!ok) ++mismatches;
        } else {
            ++inconclusive;
        }
        csv += std::to_string(row.p0) + "," + std::to_string(row.p1) + "," + row.eps.str() +
               "," + std::to_string(row.closed) + "," + alg + "," + agree + "\n";
    }
    write_file(cfg, "characterize.csv", csv);
    json j{{"schema", kSchema},     {"p0_max", p0_max},
           {"rows", rows.size()},   {"mismatches", mismatches},
           {"inconclusive", inconclusive}};
    std::cout << j.dump(2) << "\n";
    write_file(cfg, "characterize.json", j.dump(2) + "\n");
    if (mismatches > 0) return kExitMismatch;
    if (conclusive == 0) return kExitInconclusive;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact eps-shift-radix-system and eps-CNS toolkit"};
    app.require_subcommand(1);
    app.set_config("--config");
    app.fallthrough();

    RunConfig cfg;
    app.add_option("--out", cfg.out_dir, "output directory for artifacts")
        ->envname("EPSRS_OUT_DIR");
    app.add_option("--jobs", cfg.jobs, "parallel sweep width");
    app.add_option("--witness-cap", cfg.caps.witness_size_cap, "witness set size cap");
    app.add_option("--depth-cap", cfg.caps.subdivision_depth_cap, "subdivision depth cap");
    app.add_option("--cycle-cap", cfg.caps.cycle_length_cap, "cycle length cap");
    app.add_option("--orbit-cap", cfg.caps.orbit_step_cap, "orbit step cap");
    app.add_option("--expand-cap", cfg.caps.expand_step_cap, "expansion step cap");
    app.add_option("--box-radius", cfg.caps.box_radius, "brute-force residue box radius");
    app.add_option("--refutation-box", cfg.caps.refutation_box,
                   "orbit-search box for boundary parameters");

    std::string rs, es, zs, poly, value, which;
    long grid = 8, p0_max = 6;
    int lemma_i = 0;
    long lemma_n = 0, lemma_s = -1;
    bool algorithmic = false;

    auto* srs = app.add_subcommand("srs", "the map tau_{r,eps} and its zero-attractor region");
    auto* srs_orbit = srs->add_subcommand("orbit", "iterate tau from a start vector");
    srs_orbit->add_option("--r", rs, "parameter vector, e.g. 1/2,1/2")->required();
    srs_orbit->add_option("--eps", es, "offset in [0,1), e.g. 1/4")->required();
    srs_orbit->add_option("--z", zs, "integer start vector, e.g. 1,-1")->required();
    auto* srs_decide = srs->add_subcommand("decide", "certify membership in D0");
    srs_decide->add_option("--r", rs)->required();
    srs_decide->add_option("--eps", es)->required();

    auto* cns = app.add_subcommand("cns", "eps-canonical number systems");
    auto* cns_expand = cns->add_subcommand("expand", "digit expansion of a residue");
    cns_expand->add_option("--poly", poly, "monic polynomial, e.g. \"x^2+2x+2\" or \"2,2\"")
        ->required();
    cns_expand->add_option("--eps", es)->required();
    cns_expand->add_option("--value", value, "residue coefficients, constant first")->required();
    auto* cns_check = cns->add_subcommand("check", "is the polynomial an eps-CNS basis?");
    cns_check->add_option("--poly", poly)->required();
    cns_check->add_option("--eps", es)->required();
    cns_check->add_flag("--algorithmic", algorithmic, "cross-check with the witness route");

    auto* reg = app.add_subcommand("region", "membership maps of the zero-attractor region");
    auto* reg_sample = reg->add_subcommand("sample", "decide a rational grid, emit CSV + SVG");
    reg_sample->add_option("--eps", es)->required();
    reg_sample->add_option("--grid", grid, "grid denominator q (points i/q)");

    auto* harness = app.add_subcommand("harness", "paper-scale reproduction runs");
    auto* hl = harness->add_subcommand("lemmas", "rerun a classification lemma");
    hl->add_option("--which", which, "delta1|delta0|deltaC|deltaCZ|delta19|delta18s")
        ->required();
    hl->add_option("--eps", es)->required();
    hl->add_option("--i", lemma_i, "delta index for delta0/deltaC");
    hl->add_option("--n", lemma_n, "appendix parameter n");
    hl->add_option("--s", lemma_s, "appendix parameter s");
    auto* hc = harness->add_subcommand("characterize", "closed form vs algorithmic table");
    hc->add_option("--p0-max", p0_max, "largest |p0| in the sweep");
    hc->add_flag("--inject-mismatch", cfg.inject_mismatch,
                 "flip one closed-form verdict (exit-code testing only)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (srs_orbit->parsed()) return run_srs_orbit(cfg, rs, es, zs);
        if (srs_decide->parsed()) return run_srs_decide(cfg, rs, es);
        if (cns_expand->parsed()) return run_cns_expand(cfg, poly, es, value);
        if (cns_check->parsed()) return run_cns_check(cfg, poly, es, algorithmic);
        if (reg_sample->parsed()) return run_region_sample(cfg, es, grid);
        if (hl->parsed())
            return run_harness_lemmas(cfg, which, es,
                                      lemma_i ? std::optional<int>(lemma_i) : std::nullopt,
                                      lemma_n ? std::optional<long>(lemma_n) : std::nullopt,
                                      lemma_s >= 0 ? std::optional<long>(lemma_s) : std::nullopt);
        if (hc->parsed()) return run_harness_characterize(cfg, p0_max);
        std::cerr << "no subcommand given\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitMismatch;
    }
}
