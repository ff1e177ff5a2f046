#include "hgm/standard_form.hpp"

#include <numeric>

namespace hgm {

std::string formatRoot(const RootLabel& r) {
    std::string out;
    auto part = [](const char* name, int e) -> std::string {
        if (e == 0) return "";
        if (e == 1) return name;
        return std::string(name) + "^" + std::to_string(e);
    };
    std::string p1 = part("chi1", r.a), p2 = part("chi2", r.b);
    if (p1.empty() && p2.empty()) return "1";
    if (p1.empty()) return p2;
    if (p2.empty()) return p1;
    return p1 + "*" + p2;
}

RootLabel parseRoot(const std::string& text) {
    RootLabel r;
    size_t pos = 0;
    auto skipSpace = [&] { while (pos < text.size() && text[pos] == ' ') ++pos; };
    skipSpace();
    if (pos < text.size() && text.compare(pos, 1, "1") == 0 && pos + 1 == text.size()) return r;
    bool first = true;
    while (pos < text.size()) {
        if (!first) {
            if (text[pos] != '*') throw ParseError("expected '*' in root label '" + text + "'");
            ++pos;
        }
        first = false;
        skipSpace();
        if (text.compare(pos, 3, "chi") != 0) throw ParseError("malformed root label '" + text + "'");
        pos += 3;
        if (pos >= text.size() || (text[pos] != '1' && text[pos] != '2'))
            throw ParseError("root label must use chi1/chi2: '" + text + "'");
        int which = text[pos] - '0';
        ++pos;
        int exp = 1;
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            size_t end = pos;
            if (end < text.size() && text[end] == '-') ++end;
            while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
            if (end == pos) throw ParseError("missing exponent in root label '" + text + "'");
            exp = std::stoi(text.substr(pos, end - pos));
            pos = end;
        }
        (which == 1 ? r.a : r.b) += exp;
        skipSpace();
    }
    return r;
}

namespace {

Rational pairing(const QMatrix& m, const QVector& x, const QVector& y) {
    return (x.transpose() * m * y)(0, 0);
}

// Deterministic search for an isotropic integer-coefficient combination of
// the column span of basis, by increasing coefficient height, lexicographic
// within a height. Only primitive sign-normalized coefficient vectors are
// tried.
std::optional<QVector> findIsotropic(const QMatrix& m, const std::vector<QVector>& basis,
                                     int heightBound) {
    const int k = static_cast<int>(basis.size());
    QMatrix gram(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) gram(i, j) = pairing(m, basis[static_cast<size_t>(i)], basis[static_cast<size_t>(j)]);

    std::vector<long> c(static_cast<size_t>(k));
    for (int h = 1; h <= heightBound; ++h) {
        std::fill(c.begin(), c.end(), -h);
        while (true) {
            long maxAbs = 0, firstNonzero = 0;
            bool seen = false;
            long g = 0;
            for (long v : c) {
                maxAbs = std::max(maxAbs, std::labs(v));
                if (!seen && v != 0) { firstNonzero = v; seen = true; }
                g = std::gcd(g, std::labs(v));
            }
            if (maxAbs == h && seen && firstNonzero > 0 && g == 1) {
                Rational q = 0;
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j)
                        if (c[static_cast<size_t>(i)] != 0 && c[static_cast<size_t>(j)] != 0)
                            q += Rational(c[static_cast<size_t>(i)]) * Rational(c[static_cast<size_t>(j)]) * gram(i, j);
                if (q == 0) {
                    QVector x = QVector::Zero(basis[0].size());
                    for (int i = 0; i < k; ++i) x += Rational(c[static_cast<size_t>(i)]) * basis[static_cast<size_t>(i)];
                    return x;
                }
            }
            int idx = k - 1;
            while (idx >= 0 && c[static_cast<size_t>(idx)] == h) { c[static_cast<size_t>(idx)] = -h; --idx; }
            if (idx < 0) break;
            ++c[static_cast<size_t>(idx)];
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<BasisChange> standardizeForm(const InvariantForm& form, int heightBound) {
    const QMatrix& m = form.matrix;
    const Eigen::Index n = m.rows();
    if (determinant(m) == 0) throw DegenerateForm();

    if (isAntidiagonal(m)) {
        BasisChange id;
        id.P = qIdentity(n);
        id.source = form;
        id.target = form;
        return id;
    }

    std::vector<QVector> remaining;
    for (Eigen::Index j = 0; j < n; ++j) remaining.push_back(qIdentity(n).col(j));
    std::vector<std::pair<QVector, QVector>> pairs;

    while (remaining.size() >= 2) {
        QVector x, y;
        bool found = false;
        if (form.kind == FormKind::Alternating) {
            // Alternating vectors are all isotropic; take the first remaining
            // vector and the first partner it pairs with.
            x = remaining[0];
            for (size_t j = 1; j < remaining.size(); ++j)
                if (pairing(m, x, remaining[j]) != 0) { y = remaining[j]; found = true; break; }
            if (!found) throw DegenerateForm("alternating form restricted to complement is degenerate");
        } else {
            auto iso = findIsotropic(m, remaining, heightBound);
            if (!iso) return std::nullopt;  // caller may supply a basis change externally
            x = *iso;
            for (const auto& w : remaining)
                if (pairing(m, x, w) != 0) { y = w; found = true; break; }
            if (!found) throw DegenerateForm("isotropic vector pairs with nothing in the complement");
            // Slide y along x to make it isotropic: the pairing with x is kept.
            y = y - (pairing(m, y, y) / (2 * pairing(m, x, y))) * x;
        }

        std::vector<QVector> rest;
        const Rational bxy = pairing(m, x, y);
        for (const auto& z : remaining) {
            // skip the chosen pair itself
            if (matEq(z, x) || matEq(z, y)) continue;
            QVector zz = z - (pairing(m, y, z) / pairing(m, y, x)) * x - (pairing(m, x, z) / bxy) * y;
            if (isZeroMatrix(zz)) continue;
            rest.push_back(std::move(zz));
        }
        // Keep an independent spanning subset of the projected vectors.
        if (!rest.empty()) {
            QMatrix span(n, static_cast<Eigen::Index>(rest.size()));
            for (size_t j = 0; j < rest.size(); ++j) span.col(static_cast<Eigen::Index>(j)) = rest[j];
            QMatrix red = span;
            auto pivots = rowReduce(red);
            std::vector<QVector> indep;
            for (auto cidx : pivots) indep.push_back(span.col(cidx));
            rest = std::move(indep);
        }
        pairs.emplace_back(std::move(x), std::move(y));
        remaining = std::move(rest);
    }

    QMatrix p(n, n);
    const Eigen::Index half = static_cast<Eigen::Index>(pairs.size());
    for (Eigen::Index i = 0; i < half; ++i) {
        p.col(i) = pairs[static_cast<size_t>(i)].first;
        p.col(n - 1 - i) = pairs[static_cast<size_t>(i)].second;
    }
    if (!remaining.empty()) {
        if (remaining.size() != 1) return std::nullopt;
        if (pairing(m, remaining[0], remaining[0]) == 0)
            throw DegenerateForm("leftover direction is isotropic");
        p.col(half) = remaining[0];
    }

    BasisChange bc;
    bc.P = p;
    bc.source = form;
    bc.target = applyBasisChange(p, form);
    if (!isAntidiagonal(bc.target.matrix))
        throw Error("standardization produced a non-antidiagonal form");
    return bc;
}

} // namespace hgm
