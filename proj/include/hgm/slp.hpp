#ifndef HGM_SLP_HPP
#define HGM_SLP_HPP

#include <map>
#include <string>
#include <vector>

#include "hgm/linalg.hpp"

namespace hgm {

/// One factor of a word: a named symbol raised to an integer power.
struct Factor {
    std::string symbol;
    long long exp = 1;
    bool operator==(const Factor& o) const { return symbol == o.symbol && exp == o.exp; }
};

/// Product of factors, left to right: "B^3 A^2 B^2 A B^2".
using Word = std::vector<Factor>;

Word parseWord(const std::string& text);
std::string formatWord(const Word& w);
Word inverseWord(const Word& w);

/// Straight-line program: an ordered list of named definitions, each a word
/// over the base symbols and previously defined names.
struct SLP {
    std::vector<std::string> baseSymbols;
    struct Definition {
        std::string name;
        Word word;
    };
    std::vector<Definition> defs;

    bool defines(const std::string& name) const {
        for (const auto& d : defs)
            if (d.name == name) return true;
        return false;
    }
};

/// Checks name uniqueness and that every factor references a base symbol or an
/// earlier definition. Throws ParseError on violations.
void validateSLP(const SLP& slp);

using Bindings = std::map<std::string, QMatrix>;

/// Evaluates every definition in order, exactly. All base symbols must be
/// bound to invertible square matrices of one common dimension. The returned
/// map contains the bindings and every definition's value.
Bindings evaluateSLP(const SLP& slp, const Bindings& bindings);

} // namespace hgm

#endif
