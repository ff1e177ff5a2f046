#ifndef HGM_RATIONAL_HPP
#define HGM_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <string>
#include <string_view>

#include "hgm/errors.hpp"

namespace hgm {

// Exact scalars. GMP keeps rationals canonical (lowest terms, positive
// denominator), which is the representation everything here relies on.
// Expression templates are off so the types behave as plain value scalars
// inside Eigen.
using Integer  = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                               boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

inline Integer num(const Rational& q) { return numerator(q); }
inline Integer den(const Rational& q) { return denominator(q); }

// Bit length of max(|numerator|, denominator); 0 for q == 0.
inline unsigned long entryBits(const Rational& q) {
    using boost::multiprecision::msb;
    Integer n = abs(numerator(q));
    if (n == 0) return 0;
    unsigned long bits = static_cast<unsigned long>(msb(n)) + 1;
    unsigned long db = static_cast<unsigned long>(msb(denominator(q))) + 1;
    return std::max(bits, db);
}

// "p/q" with the "/q" omitted for integers: "-19/9", "3", "0".
inline std::string fmtRational(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline Rational parseRational(std::string_view text) {
    size_t begin = text.find_first_not_of(" \t");
    size_t end = text.find_last_not_of(" \t");
    if (begin == std::string_view::npos) throw ParseError("empty fraction");
    text = text.substr(begin, end - begin + 1);
    std::string s(text);
    size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer n(s.substr(0, slash));
        Integer d(s.substr(slash + 1));
        if (d == 0) throw ParseError("zero denominator in '" + s + "'");
        return Rational(n) / Rational(d);
    } catch (const std::exception&) {
        throw ParseError("malformed fraction '" + s + "'");
    }
}

} // namespace hgm

#endif
