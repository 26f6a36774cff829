#pragma once

// Exact rational scalars and vectors. Everything downstream (floor evaluation,
// half-plane predicates, region membership) reduces to arithmetic in this file,
// so no floating point appears anywhere.

#include <gmpxx.h>

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace epsrs {

using Int = mpz_class;

class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(const Int& n) : v_(n) {}
    Rational(const Int& num, const Int& den) : v_(num, den) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        v_.canonicalize();
    }
    Rational(long num, long den) : Rational(Int(num), Int(den)) {}

    const Int num() const { return v_.get_num(); }
    const Int den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    // Floor as an exact integer (round toward -inf).
    Int floor() const {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
        return q;
    }
    Int ceil() const {
        Int q;
        mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
        return q;
    }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.v_ == 0) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    // Serialized form is always "p/q" in lowest terms, "0/1" for zero.
    std::string str() const {
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    // Accepts "p/q" or a bare integer "p". Decimals are rejected on purpose.
    static Rational parse(const std::string& s) {
        auto bad = [&]() -> Rational {
            throw std::invalid_argument("malformed rational: '" + s + "'");
        };
        if (s.empty()) return bad();
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational(Int(s));
            Int num(s.substr(0, slash));
            std::string dens = s.substr(slash + 1);
            if (dens.empty()) return bad();
            Int den(dens);
            if (den == 0) return bad();
            return Rational(num, den);
        } catch (const std::invalid_argument&) {
            return bad();
        }
    }

private:
    explicit Rational(const mpq_class& q) : v_(q) {}
    mpq_class v_;
};

using RationalVec = std::vector<Rational>;
using LatticeVector = std::vector<Int>;

inline Rational dot(const RationalVec& r, const LatticeVector& z) {
    if (r.size() != z.size()) throw std::invalid_argument("dot: dimension mismatch");
    Rational acc;
    for (std::size_t i = 0; i < r.size(); ++i) acc += r[i] * Rational(z[i]);
    return acc;
}

// floor(r.z + eps), evaluated exactly.
inline Int floor_affine(const RationalVec& r, const LatticeVector& z, const Rational& eps) {
    if (r.size() != z.size()) throw std::invalid_argument("floor_affine: dimension mismatch");
    return (dot(r, z) + eps).floor();
}

inline std::string vec_str(const RationalVec& r) {
    std::string s;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) s += ",";
        s += r[i].str();
    }
    return s;
}

inline RationalVec parse_rational_vec(const std::string& s) {
    RationalVec out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        out.push_back(Rational::parse(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw std::invalid_argument("empty vector");
    return out;
}

inline LatticeVector parse_lattice_vec(const std::string& s) {
    RationalVec r = parse_rational_vec(s);
    LatticeVector out;
    for (const auto& q : r) {
        if (!q.is_integer()) throw std::invalid_argument("expected integer vector: '" + s + "'");
        out.push_back(q.num());
    }
    return out;
}

}  // namespace epsrs
