#pragma once

// Exact membership tests for the parameter region E_d where the companion
// dynamics of tau is contracting: all roots of t^d + r_d t^{d-1} + ... + r_1
// lie strictly inside the unit circle. For d = 2 this is the familiar triangle
// |x| < 1, |y| < x + 1.

#include <vector>

#include "rational.hpp"

namespace epsrs {

namespace detail {

// Schur-Cohn reduction. Coefficients low-to-high, positive leading coefficient.
inline bool schur_stable(std::vector<Rational> c) {
    while (c.size() > 1) {
        const Rational& lead = c.back();
        const Rational& tail = c.front();
        if (!(tail < lead && -tail < lead)) return false;  // |c0| < cd
        std::size_t d = c.size() - 1;
        std::vector<Rational> next(d);
        for (std::size_t j = 0; j < d; ++j) next[j] = lead * c[j + 1] - tail * c[d - 1 - j];
        c = std::move(next);
    }
    return true;
}

}  // namespace detail

// r strictly inside E_d.
inline bool strictly_inside_E(const RationalVec& r) {
    if (r.empty()) throw std::invalid_argument("strictly_inside_E: empty parameter");
    if (r.size() == 2) {
        const Rational &x = r[0], &y = r[1];
        return x < Rational(1) && -x < Rational(1) && y < x + Rational(1) && -y < x + Rational(1);
    }
    std::vector<Rational> c(r.begin(), r.end());
    c.push_back(Rational(1));
    return detail::schur_stable(c);
}

// r strictly outside the closure of E_d; conservative (false) for d >= 3,
// where only the d = 2 closed region is charted exactly.
inline bool strictly_outside_closed_E(const RationalVec& r) {
    if (r.size() != 2) return false;
    const Rational &x = r[0], &y = r[1];
    return x > Rational(1) || -x > Rational(1) || y > x + Rational(1) || -y > x + Rational(1);
}

}  // namespace epsrs
