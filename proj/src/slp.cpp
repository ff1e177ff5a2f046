#include "hgm/slp.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "hgm/errors.hpp"

namespace hgm {

namespace {

bool isIdentStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool isIdentChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

} // namespace

Word parseWord(const std::string& text) {
    Word w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        size_t caret = tok.find('^');
        Factor f;
        f.symbol = tok.substr(0, caret);
        if (f.symbol.empty() || !isIdentStart(f.symbol[0]))
            throw ParseError("malformed factor '" + tok + "'");
        for (char c : f.symbol)
            if (!isIdentChar(c)) throw ParseError("malformed symbol '" + f.symbol + "'");
        if (caret != std::string::npos) {
            std::string e = tok.substr(caret + 1);
            try {
                size_t used = 0;
                f.exp = std::stoll(e, &used);
                if (used != e.size()) throw std::invalid_argument(e);
            } catch (const std::exception&) {
                throw ParseError("malformed exponent in '" + tok + "'");
            }
        }
        w.push_back(std::move(f));
    }
    if (w.empty()) throw ParseError("empty word");
    return w;
}

std::string formatWord(const Word& w) {
    std::ostringstream out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) out << ' ';
        out << w[i].symbol;
        if (w[i].exp != 1) out << '^' << w[i].exp;
    }
    return out.str();
}

Word inverseWord(const Word& w) {
    Word inv;
    inv.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) inv.push_back({it->symbol, -it->exp});
    return inv;
}

void validateSLP(const SLP& slp) {
    std::set<std::string> known(slp.baseSymbols.begin(), slp.baseSymbols.end());
    for (const auto& d : slp.defs) {
        if (known.count(d.name))
            throw ParseError("redefinition of '" + d.name + "'");
        if (d.word.empty()) throw ParseError("empty word for '" + d.name + "'");
        for (const auto& f : d.word)
            if (!known.count(f.symbol))
                throw ParseError("'" + d.name + "' references undefined symbol '" + f.symbol + "'");
        known.insert(d.name);
    }
}

Bindings evaluateSLP(const SLP& slp, const Bindings& bindings) {
    Eigen::Index n = -1;
    for (const auto& sym : slp.baseSymbols) {
        auto it = bindings.find(sym);
        if (it == bindings.end()) throw UnboundSymbol("base symbol '" + sym + "' is unbound");
        const QMatrix& m = it->second;
        if (m.rows() != m.cols()) throw SingularBase("binding of '" + sym + "' is not square");
        if (n < 0) n = m.rows();
        if (m.rows() != n) throw DimensionMismatch("bindings have mixed dimensions");
        if (determinant(m) == 0) throw SingularBase("binding of '" + sym + "' is singular");
    }
    if (n < 0 && !slp.defs.empty())
        throw UnboundSymbol("program has definitions but no bound base symbols");
    Bindings values;
    for (const auto& sym : slp.baseSymbols) values[sym] = bindings.at(sym);
    for (const auto& d : slp.defs) {
        QMatrix acc = qIdentity(n);
        for (const auto& f : d.word) {
            auto it = values.find(f.symbol);
            if (it == values.end())
                throw UnboundSymbol("'" + d.name + "' references unknown symbol '" + f.symbol + "'");
            if (f.exp == 1)
                acc = acc * it->second;
            else
                acc = acc * matPow(it->second, f.exp);
        }
        values[d.name] = std::move(acc);
    }
    return values;
}

} // namespace hgm
