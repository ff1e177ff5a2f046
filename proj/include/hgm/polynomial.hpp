#ifndef HGM_POLYNOMIAL_HPP
#define HGM_POLYNOMIAL_HPP

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "hgm/linalg.hpp"
#include "hgm/rational.hpp"

namespace hgm {

/// Dense univariate polynomial; coeffs[i] is the coefficient of x^i.
/// The zero polynomial has an empty coefficient vector.
template <typename Scalar>
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Polynomial x() { return Polynomial({Scalar(0), Scalar(1)}); }
    static Polynomial constant(Scalar v) { return Polynomial({std::move(v)}); }

    const std::vector<Scalar>& coeffs() const { return c_; }
    bool isZero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    Scalar coeff(size_t i) const { return i < c_.size() ? c_[i] : Scalar(0); }
    Scalar leading() const { return c_.empty() ? Scalar(0) : c_.back(); }
    bool isMonic() const { return !c_.empty() && c_.back() == Scalar(1); }
    Scalar constantTerm() const { return coeff(0); }

    bool operator==(const Polynomial& o) const { return c_ == o.c_; }
    bool operator!=(const Polynomial& o) const { return c_ != o.c_; }

    Polynomial operator+(const Polynomial& o) const {
        std::vector<Scalar> r(std::max(c_.size(), o.c_.size()), Scalar(0));
        for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
        return Polynomial(std::move(r));
    }
    Polynomial operator-(const Polynomial& o) const {
        std::vector<Scalar> r(std::max(c_.size(), o.c_.size()), Scalar(0));
        for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
        return Polynomial(std::move(r));
    }
    Polynomial operator-() const {
        std::vector<Scalar> r = c_;
        for (auto& v : r) v = -v;
        return Polynomial(std::move(r));
    }
    Polynomial operator*(const Polynomial& o) const {
        if (isZero() || o.isZero()) return Polynomial();
        std::vector<Scalar> r(c_.size() + o.c_.size() - 1, Scalar(0));
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] += c_[i] * o.c_[j];
        return Polynomial(std::move(r));
    }

    /// Division with remainder; requires the divisor's leading coefficient to
    /// divide exactly at every step for integer scalars (true for the monic
    /// divisors used here).
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
        if (d.isZero()) throw Error("polynomial division by zero");
        std::vector<Scalar> rem = c_;
        if (degree() < d.degree()) return {Polynomial(), *this};
        std::vector<Scalar> quo(static_cast<size_t>(degree() - d.degree()) + 1, Scalar(0));
        const Scalar lead = d.leading();
        for (int k = degree() - d.degree(); k >= 0; --k) {
            Scalar top = rem[static_cast<size_t>(k + d.degree())];
            if (top == Scalar(0)) continue;
            Scalar q = top / lead;
            if constexpr (std::is_same_v<Scalar, Integer>) {
                if (q * lead != top) throw Error("non-exact integer polynomial division");
            }
            quo[static_cast<size_t>(k)] = q;
            for (int i = 0; i <= d.degree(); ++i)
                rem[static_cast<size_t>(k + i)] -= q * d.coeff(static_cast<size_t>(i));
        }
        return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
    }
    Polynomial divExact(const Polynomial& d) const {
        auto [q, r] = divmod(d);
        if (!r.isZero()) throw Error("polynomial division left a remainder");
        return q;
    }

    template <typename T>
    T evaluate(const T& x) const {
        T acc(0);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + T(c_[i]);
        return acc;
    }

    /// True iff every exponent with a nonzero coefficient is divisible by k.
    bool supportedOnMultiplesOf(int k) const {
        for (size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != Scalar(0) && static_cast<int>(i) % k != 0) return false;
        return true;
    }

    /// p(-x).
    Polynomial reflect() const {
        std::vector<Scalar> r = c_;
        for (size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
        return Polynomial(std::move(r));
    }

    std::string str(const std::string& var = "x") const {
        if (isZero()) return "0";
        std::ostringstream out;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            Scalar v = coeff(static_cast<size_t>(i));
            if (v == Scalar(0)) continue;
            bool neg = v < Scalar(0);
            Scalar a = neg ? Scalar(-v) : v;
            if (first) {
                if (neg) out << "-";
                first = false;
            } else {
                out << (neg ? " - " : " + ");
            }
            bool unitCoeff = (a == Scalar(1));
            if (i == 0 || !unitCoeff) out << a;
            if (i > 0) {
                out << var;
                if (i > 1) out << "^" << i;
            }
        }
        return out.str();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == Scalar(0)) c_.pop_back();
    }
    std::vector<Scalar> c_;
};

using IntPoly = Polynomial<Integer>;
using QPoly = Polynomial<Rational>;

inline QPoly toRationalPoly(const IntPoly& p) {
    std::vector<Rational> c;
    c.reserve(p.coeffs().size());
    for (const auto& v : p.coeffs()) c.emplace_back(v);
    return QPoly(std::move(c));
}

/// Requires every coefficient to be integral.
inline IntPoly toIntegerPoly(const QPoly& p) {
    std::vector<Integer> c;
    c.reserve(p.coeffs().size());
    for (const auto& v : p.coeffs()) {
        if (denominator(v) != 1) throw Error("polynomial has non-integer coefficient " + fmtRational(v));
        c.push_back(numerator(v));
    }
    return IntPoly(std::move(c));
}

/// Monic gcd over the rationals (Euclid); gcd(0,0) = 0.
inline QPoly polyGcd(QPoly a, QPoly b) {
    while (!b.isZero()) {
        auto [q, r] = a.divmod(b);
        (void)q;
        a = b;
        b = r;
    }
    if (!a.isZero() && a.leading() != Rational(1)) {
        std::vector<Rational> c = a.coeffs();
        Rational inv = Rational(1) / a.leading();
        for (auto& v : c) v *= inv;
        a = QPoly(std::move(c));
    }
    return a;
}

inline IntPoly polyGcd(const IntPoly& a, const IntPoly& b) {
    QPoly g = polyGcd(toRationalPoly(a), toRationalPoly(b));
    if (g.isZero()) return IntPoly();
    Integer l = 1;
    for (const auto& v : g.coeffs()) l = lcm(l, denominator(v));
    std::vector<Integer> c;
    for (const auto& v : g.coeffs()) c.push_back(numerator(v * Rational(l)));
    Integer content = 0;
    for (const auto& v : c) content = gcd(content, v);
    for (auto& v : c) v /= content;
    return IntPoly(std::move(c));
}

/// x^n - 1.
inline IntPoly xPowMinusOne(unsigned n) {
    std::vector<Integer> c(n + 1, Integer(0));
    c[0] = -1;
    c[n] = 1;
    return IntPoly(std::move(c));
}

/// n-th cyclotomic polynomial by iterated exact division of x^n - 1 by the
/// cyclotomic polynomials of the proper divisors of n.
inline IntPoly cyclotomic(unsigned n) {
    if (n == 0) throw Error("cyclotomic index must be positive");
    IntPoly p = xPowMinusOne(n);
    for (unsigned d = 1; d < n; ++d)
        if (n % d == 0) p = p.divExact(cyclotomic(d));
    return p;
}

/// Companion matrix with 1s on the subdiagonal and the negated coefficients
/// down the last column.
inline QMatrix companion(const IntPoly& f) {
    if (!f.isMonic()) throw Error("companion matrix needs a monic polynomial");
    const int n = f.degree();
    if (n < 1) throw Error("companion matrix needs degree >= 1");
    QMatrix m = QMatrix::Zero(n, n);
    for (int i = 1; i < n; ++i) m(i, i - 1) = 1;
    for (int i = 0; i < n; ++i) m(i, n - 1) = Rational(-f.coeff(static_cast<size_t>(i)));
    return m;
}

inline IntPoly charPolyInt(const QMatrix& m) {
    return toIntegerPoly(QPoly(charPoly(m)));
}

} // namespace hgm

#endif
