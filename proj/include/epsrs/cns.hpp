#pragma once

// eps-canonical number systems: digit sets N_eps, backward division in
// Z[x]/(P), algorithmic termination testing, and the closed-form quadratic
// characterizations together with their classical (eps = 0) and symmetric
// (eps = 1/2) specializations.

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "witness.hpp"

namespace epsrs {

struct MonicPolynomial {
    std::vector<Int> coeffs;  // p_0, p_1, ..., p_{d-1}; leading coefficient is 1

    explicit MonicPolynomial(std::vector<Int> c) : coeffs(std::move(c)) {
        if (coeffs.empty()) throw std::invalid_argument("MonicPolynomial: degree must be >= 1");
        if (abs(coeffs[0]) < 2)
            throw std::invalid_argument("MonicPolynomial: |p_0| must be at least 2");
    }
    std::size_t degree() const { return coeffs.size(); }
    const Int& p0() const { return coeffs[0]; }

    std::string str() const {
        std::string s = "x^" + std::to_string(degree());
        for (std::size_t i = degree(); i-- > 0;) {
            const Int& c = coeffs[i];
            if (c == 0) continue;
            s += (c > 0 ? "+" : "-");
            Int a = abs(c);
            if (i == 0) {
                s += a.get_str();
            } else {
                if (a != 1) s += a.get_str();
                s += "x";
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

    // Accepts "x^2+2x+2", "x^3-x+4" (optional '*'), or a low-to-high
    // coefficient list "p0,p1,...": the leading 1 is implicit.
    static MonicPolynomial parse(const std::string& spec);
};

struct DigitSet {
    Int p0;
    Rational eps;
    Int k;  // floor(eps * |p0|)

    Int low() const { return -k; }
    Int high() const { return abs(p0) - 1 - k; }
    bool contains(const Int& d) const { return d >= low() && d <= high(); }
    // The unique digit congruent to a0 mod p0.
    Int representative(const Int& a0) const {
        Int m = abs(p0);
        Int r;
        mpz_fdiv_r(r.get_mpz_t(), Int(a0 + k).get_mpz_t(), m.get_mpz_t());
        return r - k;
    }
};

inline DigitSet digit_set(const Int& p0, const Rational& eps) {
    Int m = abs(p0);
    if (m < 2) throw std::invalid_argument("digit_set: |p_0| must be at least 2");
    if (eps < Rational(0) || eps >= Rational(1))
        throw std::invalid_argument("digit_set: eps must lie in [0,1)");
    return DigitSet{p0, eps, (eps * Rational(m)).floor()};
}

using Residue = std::vector<Int>;  // a_0 + a_1 x + ... + a_{d-1} x^{d-1} mod P

// One backward-division step: extract the digit d_0 congruent to a_0 mod p_0,
// then divide (a - d_0) by x in Z[x]/(P). For d = 2 the successor is
// (a_1 - q p_1, -q) with q = (a_0 - d_0)/p_0.
inline std::pair<Int, Residue> divide_step(const MonicPolynomial& P, const DigitSet& N,
                                           const Residue& a) {
    if (a.size() != P.degree()) throw std::invalid_argument("divide_step: dimension mismatch");
    Int d0 = N.representative(a[0]);
    Int q;
    mpz_divexact(q.get_mpz_t(), Int(a[0] - d0).get_mpz_t(), P.p0().get_mpz_t());
    std::size_t d = P.degree();
    Residue next(d);
    for (std::size_t i = 0; i + 1 < d; ++i) next[i] = a[i + 1] - q * P.coeffs[i + 1];
    next[d - 1] = -q;
    return {d0, next};
}

struct Expansion {
    enum class State { success, failure, cap_exceeded };
    State state = State::cap_exceeded;
    std::vector<Int> digits;             // d_0 first (success)
    std::vector<Residue> failure_cycle;  // the repeating residues (failure)

    bool ok() const { return state == State::success; }
};

inline bool residue_is_zero(const Residue& a) {
    for (const auto& e : a)
        if (e != 0) return false;
    return true;
}

namespace detail {

struct PairHash {
    std::size_t operator()(const std::pair<long long, long long>& p) const {
        unsigned long long h = (unsigned long long)p.first * 0x9e3779b97f4a7c15ull;
        h ^= (unsigned long long)p.second + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return (std::size_t)h;
    }
};

// Machine-word iteration for quadratic P with small coefficients. Residues
// escaping |a| > 10^12 bail out as a cap hit; with that window all
// intermediates fit in 64 bits. Returns nullopt when the inputs do not fit.
inline std::optional<Expansion> expand_fast2(const MonicPolynomial& P, const DigitSet& N,
                                             const Residue& start, long step_cap) {
    constexpr long long kEscape = 1000000000000LL;  // resource bound, not a claim
    constexpr long long kCoefMax = 1000000LL;
    if (P.degree() != 2) return std::nullopt;
    if (!P.coeffs[0].fits_slong_p() || !P.coeffs[1].fits_slong_p()) return std::nullopt;
    long long p0 = P.coeffs[0].get_si(), p1 = P.coeffs[1].get_si();
    if (std::abs(p0) > kCoefMax || std::abs(p1) > kCoefMax) return std::nullopt;
    if (!N.k.fits_slong_p()) return std::nullopt;
    long long k = N.k.get_si(), m = std::abs(p0);
    if (!start[0].fits_slong_p() || !start[1].fits_slong_p()) return std::nullopt;
    long long a0 = start[0].get_si(), a1 = start[1].get_si();
    if (std::abs(a0) > kEscape || std::abs(a1) > kEscape) return std::nullopt;

    Expansion out;
    std::unordered_map<std::pair<long long, long long>, long, PairHash> seen;
    std::vector<std::pair<long long, long long>> trail;
    for (long step = 0; step <= step_cap; ++step) {
        if (a0 == 0 && a1 == 0) {
            out.state = Expansion::State::success;
            return out;
        }
        if (std::abs(a0) > kEscape || std::abs(a1) > kEscape) {
            out.state = Expansion::State::cap_exceeded;
            out.digits.clear();
            return out;
        }
        auto [it, fresh] = seen.try_emplace({a0, a1}, (long)trail.size());
        if (!fresh) {
            out.state = Expansion::State::failure;
            out.digits.clear();
            for (std::size_t i = (std::size_t)it->second; i < trail.size(); ++i)
                out.failure_cycle.push_back(
                    Residue{Int((long)trail[i].first), Int((long)trail[i].second)});
            return out;
        }
        trail.push_back({a0, a1});
        long long r = (a0 + k) % m;
        if (r < 0) r += m;
        long long d0 = r - k;
        long long q = (a0 - d0) / p0;
        out.digits.push_back(Int((long)d0));
        long long next0 = a1 - q * p1;
        a0 = next0;
        a1 = -q;
    }
    out.state = Expansion::State::cap_exceeded;
    out.digits.clear();
    return out;
}

}  // namespace detail

// Iterate divide_step until the residue vanishes, a residue repeats (the
// mathematical non-termination certificate), or a resource cap runs out.
// Residues escaping past a generous norm bound are treated as a cap hit: a
// diverging orbit can never be certified by finite iteration anyway.
inline Expansion expand(const MonicPolynomial& P, const Rational& eps, const Residue& a0,
                        long step_cap = 20000) {
    if (step_cap <= 0) throw std::invalid_argument("expand: step_cap must be positive");
    DigitSet N = digit_set(P.p0(), eps);
    if (auto fast = detail::expand_fast2(P, N, a0, step_cap)) return *fast;
    static const Int norm_guard = [] {
        Int g;
        mpz_ui_pow_ui(g.get_mpz_t(), 10, 30);
        return g;
    }();
    Expansion out;
    std::map<Residue, long> seen;
    std::vector<Residue> trail;
    Residue a = a0;
    for (long step = 0; step <= step_cap; ++step) {
        if (residue_is_zero(a)) {
            out.state = Expansion::State::success;
            return out;
        }
        for (const auto& e : a) {
            if (abs(e) > norm_guard) {
                out.state = Expansion::State::cap_exceeded;
                out.digits.clear();
                return out;
            }
        }
        auto it = seen.find(a);
        if (it != seen.end()) {
            out.state = Expansion::State::failure;
            out.digits.clear();
            out.failure_cycle.assign(trail.begin() + it->second, trail.end());
            return out;
        }
        seen.emplace(a, (long)trail.size());
        trail.push_back(a);
        auto [d0, next] = divide_step(P, N, a);
        out.digits.push_back(d0);
        a = next;
    }
    out.state = Expansion::State::cap_exceeded;
    out.digits.clear();
    return out;
}

// The SRS parameter attached to P: (1/p0, p_{d-1}/p0, ..., p_1/p0).
inline RationalVec srs_parameter(const MonicPolynomial& P) {
    RationalVec r;
    r.emplace_back(Int(1), P.p0());
    for (std::size_t i = P.degree(); i-- > 1;) r.emplace_back(P.coeffs[i], P.p0());
    return r;
}

// Closed-form characterization for quadratic P = x^2 + p1 x + p0.
// Case i (eps < 1/2, or eps = 1/2 with |p0| odd):
//   -k-1 <= p1 <= |p0|-k with p0 >= 2, or
//   k+2-|p0| <= p1 <= k-1 with p0 <= -3 and eps >= 1/|p0|.
// Case ii (eps > 1/2, or eps = 1/2 with |p0| even):
//   -|p0|+k <= p1 <= k+1 with p0 >= 2, or
//   -k+1 <= p1 <= -k-2+|p0| with p0 <= -3 and eps < (|p0|-1)/|p0|.
inline bool is_eps_cns_closed_form(const Int& p0, const Int& p1, const Rational& eps) {
    if (abs(p0) < 2) throw std::invalid_argument("is_eps_cns_closed_form: |p_0| >= 2 required");
    if (eps < Rational(0) || eps >= Rational(1))
        throw std::invalid_argument("is_eps_cns_closed_form: eps must lie in [0,1)");
    Int m = abs(p0);
    Int k = (eps * Rational(m)).floor();
    Rational half(1, 2);
    bool case_i = eps < half || (eps == half && mpz_odd_p(m.get_mpz_t()));
    if (case_i) {
        if (p0 >= 2 && -k - 1 <= p1 && p1 <= m - k) return true;
        if (p0 <= -3 && eps >= Rational(Int(1), m) && k + 2 - m <= p1 && p1 <= k - 1)
            return true;
        return false;
    }
    if (p0 >= 2 && -m + k <= p1 && p1 <= k + 1) return true;
    if (p0 <= -3 && eps < Rational(m - 1, m) && -k + 1 <= p1 && p1 <= -k - 2 + m) return true;
    return false;
}

inline bool is_cns_classic(const Int& p0, const Int& p1) {
    if (abs(p0) < 2) throw std::invalid_argument("is_cns_classic: |p_0| >= 2 required");
    return p0 >= 2 && -1 <= p1 && p1 <= p0;
}

// The symmetric case, split by parity of |p0|.
inline bool is_scns(const Int& p0, const Int& p1) {
    if (abs(p0) < 2) throw std::invalid_argument("is_scns: |p_0| >= 2 required");
    Int m = abs(p0);
    Int s = p0 > 0 ? 1 : -1;
    if (m == 2) return p0 == 2 && -1 <= p1 && p1 <= 2;
    if (mpz_odd_p(m.get_mpz_t())) return abs(p1) <= s + (m - 1) / 2;
    return abs(p1) <= s - 1 + m / 2 || Rational(p1) == Rational(1) + Rational(p0, Int(2));
}

// The digit set only sees the bucket representative eps_k = k/|p0|.
inline Rational reduce_eps(const Int& p0, const Rational& eps) {
    if (abs(p0) < 2) throw std::invalid_argument("reduce_eps: |p_0| >= 2 required");
    Int m = abs(p0);
    return Rational((eps * Rational(m)).floor(), m);
}

struct CnsVerdict {
    enum class State { cns, not_cns, inconclusive, internal_error };
    enum class Route { closed_form, witness_certificate, brute_force };

    State state = State::inconclusive;
    Route route = Route::witness_certificate;
    Certificate certificate;                         // the decide_point outcome
    std::optional<Residue> failing_residue;          // brute-force refutation start
    std::vector<Residue> residue_cycle;              // its repeating residues
    long expansions_capped = 0;

    bool is_cns() const { return state == State::cns; }
};

// Two-route decision: the witness certificate for the attached SRS parameter,
// cross-checked against exhaustive expansion over a residue box. A conclusive
// refutation on either route settles the answer; both routes conclusively
// disagreeing is an internal error surfaced to the caller.
inline CnsVerdict is_eps_cns_algorithmic(const MonicPolynomial& P, const Rational& eps,
                                         long box_radius = 25, const Caps& caps = {}) {
    CnsVerdict v;
    v.certificate = decide_point({srs_parameter(P), eps}, caps);
    bool witness_yes = v.certificate.verdict == Certificate::Verdict::point_in_D0;
    bool witness_no = v.certificate.verdict == Certificate::Verdict::point_not_in_D0;

    std::size_t d = P.degree();
    bool all_ok = true;
    std::vector<long> idx(d, -box_radius);
    while (true) {
        Residue a(d);
        for (std::size_t i = 0; i < d; ++i) a[i] = idx[i];
        Expansion e = expand(P, eps, a, caps.expand_step_cap);
        if (e.state == Expansion::State::failure) {
            if (witness_yes) {
                v.state = CnsVerdict::State::internal_error;
                return v;
            }
            v.state = CnsVerdict::State::not_cns;
            v.route = CnsVerdict::Route::brute_force;
            v.failing_residue = a;
            v.residue_cycle = e.failure_cycle;
            return v;
        }
        if (e.state == Expansion::State::cap_exceeded) {
            all_ok = false;
            ++v.expansions_capped;
        }
        std::size_t j = 0;
        while (j < d && idx[j] == box_radius) idx[j++] = -box_radius;
        if (j == d) break;
        ++idx[j];
    }

    if (witness_no) {
        v.state = CnsVerdict::State::not_cns;
        v.route = CnsVerdict::Route::witness_certificate;
        return v;
    }
    if (all_ok && (witness_yes || v.certificate.verdict == Certificate::Verdict::inconclusive)) {
        v.state = CnsVerdict::State::cns;
        v.route = witness_yes ? CnsVerdict::Route::witness_certificate
                              : CnsVerdict::Route::brute_force;
        return v;
    }
    v.state = CnsVerdict::State::inconclusive;
    return v;
}

inline MonicPolynomial MonicPolynomial::parse(const std::string& spec) {
    auto fail = [&]() -> MonicPolynomial {
        throw std::invalid_argument("malformed polynomial: '" + spec + "'");
    };
    if (spec.empty()) return fail();
    if (spec.find('x') == std::string::npos && spec.find('X') == std::string::npos) {
        // Coefficient list p0,p1,...
        std::vector<Int> c;
        std::size_t pos = 0;
        while (pos <= spec.size()) {
            auto comma = spec.find(',', pos);
            std::string tok =
                spec.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            try {
                c.emplace_back(tok);
            } catch (const std::invalid_argument&) {
                return fail();
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return MonicPolynomial(std::move(c));
    }
    // Term parser for "x^2+2x+2", "x^3-2*x^2+x-5", ...
    std::map<std::size_t, Int> terms;
    std::size_t i = 0, n = spec.size();
    std::size_t maxdeg = 0;
    while (i < n) {
        int sign = 1;
        while (i < n && (spec[i] == '+' || spec[i] == '-' || spec[i] == ' ')) {
            if (spec[i] == '-') sign = -sign;
            ++i;
        }
        if (i >= n) return fail();
        std::string digits;
        while (i < n && isdigit((unsigned char)spec[i])) digits += spec[i++];
        Int coef = digits.empty() ? Int(1) : Int(digits);
        std::size_t deg = 0;
        if (i < n && spec[i] == '*') ++i;
        if (i < n && (spec[i] == 'x' || spec[i] == 'X')) {
            ++i;
            deg = 1;
            if (i < n && spec[i] == '^') {
                ++i;
                std::string ds;
                while (i < n && isdigit((unsigned char)spec[i])) ds += spec[i++];
                if (ds.empty()) return fail();
                deg = (std::size_t)std::stoul(ds);
            }
        } else if (digits.empty()) {
            return fail();
        }
        terms[deg] += sign * coef;
        maxdeg = std::max(maxdeg, deg);
    }
    if (maxdeg < 1 || terms[maxdeg] != 1) return fail();
    std::vector<Int> c(maxdeg, Int(0));
    for (auto& [deg, coef] : terms)
        if (deg < maxdeg) c[deg] = coef;
    return MonicPolynomial(std::move(c));
}

// Exact reduction of sum d_j x^j modulo P; the independent oracle used by the
// digit-reconstruction tests.
inline Residue reduce_digits_mod(const MonicPolynomial& P, const std::vector<Int>& digits) {
    std::size_t d = P.degree();
    Residue acc(d, Int(0));
    for (std::size_t j = digits.size(); j-- > 0;) {
        // acc = acc * x + digits[j] (mod P)
        Int top = acc[d - 1];
        for (std::size_t i = d; i-- > 1;) acc[i] = acc[i - 1] - top * P.coeffs[i];
        acc[0] = -top * P.coeffs[0];
        acc[0] += digits[j];
    }
    return acc;
}

}  // namespace epsrs
