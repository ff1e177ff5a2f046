#ifndef HGM_PARAMETERS_HPP
#define HGM_PARAMETERS_HPP

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hgm/polynomial.hpp"

namespace hgm {

/// Ordered tuple of rationals, each wrapped into [0,1). Entry k/d encodes the
/// root of unity e^{2*pi*i*k/d}.
class ParameterTuple {
public:
    ParameterTuple() = default;
    explicit ParameterTuple(std::vector<Rational> entries) : e_(std::move(entries)) {
        for (auto& q : e_) q = mod1(q);
    }

    static Rational mod1(const Rational& q) {
        Integer n = numerator(q), d = denominator(q);
        Integer r = n % d;
        if (r < 0) r += d;
        return Rational(r) / Rational(d);
    }

    const std::vector<Rational>& entries() const { return e_; }
    size_t size() const { return e_.size(); }

    bool operator==(const ParameterTuple& o) const { return e_ == o.e_; }

    /// Comma-separated reduced fractions: "0,0,1/3,2/3".
    static ParameterTuple parse(const std::string& text) {
        std::vector<Rational> entries;
        std::string tok;
        std::istringstream in(text);
        while (std::getline(in, tok, ',')) {
            Rational q = parseRational(tok);
            if (q < 0 || q >= 1) throw ParseError("parameter '" + fmtRational(q) + "' out of [0,1)");
            entries.push_back(std::move(q));
        }
        if (entries.empty()) throw ParseError("empty parameter tuple");
        return ParameterTuple(std::move(entries));
    }

    std::string str() const {
        std::ostringstream out;
        for (size_t i = 0; i < e_.size(); ++i) {
            if (i) out << ',';
            out << fmtRational(e_[i]);
        }
        return out.str();
    }

    std::vector<Rational> sorted() const {
        std::vector<Rational> s = e_;
        std::sort(s.begin(), s.end());
        return s;
    }

private:
    std::vector<Rational> e_;
};

inline bool sameMultiset(const ParameterTuple& a, const ParameterTuple& b) {
    return a.sorted() == b.sorted();
}

struct ParameterPair {
    ParameterTuple alpha, beta;
};

/// Unordered comparison of pairs-of-multisets, allowing the two tuples to swap
/// roles; the generated group only depends on the generator set.
inline bool pairsMatchUnordered(const ParameterPair& x, const ParameterPair& y) {
    return (sameMultiset(x.alpha, y.alpha) && sameMultiset(x.beta, y.beta)) ||
           (sameMultiset(x.alpha, y.beta) && sameMultiset(x.beta, y.alpha));
}

/// Adds c to every entry of both tuples, mod 1; multiplies all eigenvalues by
/// the corresponding root of unity.
inline ParameterPair scalarShift(const ParameterPair& pair, const Rational& c) {
    auto shiftTuple = [&](const ParameterTuple& t) {
        std::vector<Rational> s;
        s.reserve(t.size());
        for (const auto& q : t.entries()) s.push_back(ParameterTuple::mod1(q + c));
        return ParameterTuple(std::move(s));
    };
    return {shiftTuple(pair.alpha), shiftTuple(pair.beta)};
}

/// Monic integer polynomial with root multiset {e^{2*pi*i*q}}. The entries
/// must form whole Galois orbits: for every denominator d present, each of the
/// phi(d) primitive residues must occur with one common multiplicity.
inline IntPoly polyFromParameters(const ParameterTuple& t) {
    std::map<Integer, std::map<Integer, long>> byDen;  // den -> num -> count
    for (const auto& q : t.entries())
        byDen[denominator(q)][numerator(q)] += 1;
    IntPoly f = IntPoly::constant(Integer(1));
    for (const auto& [d, counts] : byDen) {
        long multiplicity = counts.begin()->second;
        long residues = 0;
        for (const auto& [n, cnt] : counts) {
            (void)n;
            if (cnt != multiplicity)
                throw NotGaloisStable("denominator " + d.str() +
                                      ": primitive residues occur with unequal multiplicities");
            ++residues;
        }
        if (d > 100000) throw NotGaloisStable("denominator " + d.str() + " too large");
        unsigned dn = static_cast<unsigned>(d);
        IntPoly phi = cyclotomic(dn);
        if (residues != phi.degree())
            throw NotGaloisStable("denominator " + d.str() + ": only " + std::to_string(residues) +
                                  " of " + std::to_string(phi.degree()) + " primitive residues present");
        for (long k = 0; k < multiplicity; ++k) f = f * phi;
    }
    return f;
}

enum class FormCase { Symplectic, Orthogonal, Unsupported };

inline const char* formCaseName(FormCase c) {
    switch (c) {
        case FormCase::Symplectic: return "Symplectic";
        case FormCase::Orthogonal: return "Orthogonal";
        default: return "Unsupported";
    }
}

struct PairClassification {
    bool coprime = false;
    bool primitive = false;
    FormCase formCase = FormCase::Unsupported;
    int degree = 0;
};

/// Coprimality via polynomial gcd; primitivity by ruling out a common
/// substitution f(x) = f1(x^k); the form case from the constant terms.
inline PairClassification classifyPair(const IntPoly& f, const IntPoly& g) {
    if (f.degree() != g.degree()) throw DegreeMismatch();
    PairClassification c;
    c.degree = f.degree();
    c.coprime = polyGcd(f, g).degree() == 0;
    c.primitive = true;
    for (int k = 2; k <= c.degree; ++k) {
        if (c.degree % k != 0) continue;
        if (f.supportedOnMultiplesOf(k) && g.supportedOnMultiplesOf(k)) {
            c.primitive = false;
            break;
        }
    }
    Integer f0 = f.constantTerm(), g0 = g.constantTerm();
    if (f0 == 1 && g0 == 1)
        c.formCase = FormCase::Symplectic;
    else if (g0 != 0 && f0 == -g0)
        c.formCase = FormCase::Orthogonal;  // f(0)/g(0) == -1
    else
        c.formCase = FormCase::Unsupported;
    return c;
}

} // namespace hgm

#endif
