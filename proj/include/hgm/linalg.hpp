#ifndef HGM_LINALG_HPP
#define HGM_LINALG_HPP

#include <Eigen/Dense>
#include <sstream>
#include <string>
#include <vector>

#include "hgm/rational.hpp"

namespace hgm {

using QMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using QVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

inline QMatrix qIdentity(Eigen::Index n) { return QMatrix::Identity(n, n); }

template <typename DerivedA, typename DerivedB>
bool matEq(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != b(i, j)) return false;
    return true;
}

template <typename Derived>
bool isZeroMatrix(const Eigen::MatrixBase<Derived>& a) {
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0) return false;
    return true;
}

// Reduced row echelon form in place; returns pivot column indices.
// Pivot choice: first row with a nonzero entry in the current column.
inline std::vector<Eigen::Index> rowReduce(QMatrix& m) {
    std::vector<Eigen::Index> pivots;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
        Eigen::Index p = -1;
        for (Eigen::Index r = row; r < m.rows(); ++r)
            if (m(r, col) != 0) { p = r; break; }
        if (p < 0) continue;
        if (p != row) m.row(p).swap(m.row(row));
        Rational inv = Rational(1) / m(row, col);
        for (Eigen::Index j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col) == 0) continue;
            Rational f = m(r, col);
            for (Eigen::Index j = col; j < m.cols(); ++j) m(r, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline Eigen::Index rank(const QMatrix& m) {
    QMatrix r = m;
    return static_cast<Eigen::Index>(rowReduce(r).size());
}

/// Exact inverse by Gauss-Jordan elimination. Throws SingularMatrix.
inline QMatrix exactInverse(const QMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("inverse of non-square matrix");
    const Eigen::Index n = m.rows();
    QMatrix work(n, 2 * n);
    work << m, qIdentity(n);
    auto pivots = rowReduce(work);
    // invertible iff every pivot lands in the left block
    if (static_cast<Eigen::Index>(pivots.size()) < n || pivots.back() >= n)
        throw SingularMatrix();
    return work.rightCols(n);
}

/// Basis of the right kernel {x : Mx = 0}; empty iff M has full column rank.
inline std::vector<QVector> kernelBasis(const QMatrix& m) {
    QMatrix r = m;
    auto pivots = rowReduce(r);
    const Eigen::Index n = m.cols();
    std::vector<bool> isPivot(n, false);
    for (auto c : pivots) isPivot[c] = true;
    std::vector<QVector> basis;
    for (Eigen::Index freeCol = 0; freeCol < n; ++freeCol) {
        if (isPivot[freeCol]) continue;
        QVector x = QVector::Zero(n);
        x(freeCol) = 1;
        for (size_t k = 0; k < pivots.size(); ++k)
            x(pivots[k]) = -r(static_cast<Eigen::Index>(k), freeCol);
        basis.push_back(std::move(x));
    }
    return basis;
}

inline Rational determinant(const QMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("determinant of non-square matrix");
    QMatrix work = m;
    Rational det = 1;
    const Eigen::Index n = m.rows();
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < n && row < n; ++col) {
        Eigen::Index p = -1;
        for (Eigen::Index r = row; r < n; ++r)
            if (work(r, col) != 0) { p = r; break; }
        if (p < 0) return Rational(0);
        if (p != row) { work.row(p).swap(work.row(row)); det = -det; }
        det *= work(row, col);
        Rational inv = Rational(1) / work(row, col);
        for (Eigen::Index r = row + 1; r < n; ++r) {
            if (work(r, col) == 0) continue;
            Rational f = work(r, col) * inv;
            for (Eigen::Index j = col; j < n; ++j) work(r, j) -= f * work(row, j);
        }
        ++row;
    }
    return det;
}

/// Coefficients of det(xI - M), index i = coefficient of x^i, top = 1.
/// Faddeev-LeVerrier; the divisions by 1..n are exact over the rationals.
template <typename Derived>
std::vector<Rational> charPoly(const Eigen::MatrixBase<Derived>& mexpr) {
    QMatrix m = mexpr;
    if (m.rows() != m.cols()) throw DimensionMismatch("charPoly of non-square matrix");
    const Eigen::Index n = m.rows();
    std::vector<Rational> c(static_cast<size_t>(n) + 1);
    c[static_cast<size_t>(n)] = 1;
    QMatrix acc = qIdentity(n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        acc = m * acc;
        Rational tr = 0;
        for (Eigen::Index i = 0; i < n; ++i) tr += acc(i, i);
        Rational ck = -tr / Rational(k);
        c[static_cast<size_t>(n - k)] = ck;
        for (Eigen::Index i = 0; i < n; ++i) acc(i, i) += ck;
    }
    return c;
}

/// M^e with exact arithmetic; negative exponents invert first, e = 0 gives I.
inline QMatrix matPow(const QMatrix& m, long long e) {
    if (m.rows() != m.cols()) throw DimensionMismatch("power of non-square matrix");
    QMatrix base = e < 0 ? exactInverse(m) : m;
    unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e)
                                 : static_cast<unsigned long long>(e);
    QMatrix result = qIdentity(m.rows());
    while (k > 0) {
        if (k & 1) result = result * base;
        base = base * base;
        k >>= 1;
    }
    return result;
}

/// P^t M P.
template <typename DerivedP, typename DerivedM>
QMatrix congruence(const Eigen::MatrixBase<DerivedP>& p, const Eigen::MatrixBase<DerivedM>& m) {
    return p.transpose() * m * p;
}

/// (E - I)^n == 0, i.e. all eigenvalues 1.
inline bool isUnipotent(const QMatrix& e) {
    const Eigen::Index n = e.rows();
    Rational tr = 0;
    for (Eigen::Index i = 0; i < n; ++i) tr += e(i, i);
    if (tr != Rational(n)) return false;
    QMatrix nil = e - qIdentity(n);
    QMatrix acc = nil;
    for (Eigen::Index k = 1; k < n && !isZeroMatrix(acc); ++k) acc = acc * nil;
    return isZeroMatrix(acc);
}

/// Smallest k >= 1 with (E - I)^k == 0, or -1 if E is not unipotent.
inline int unipotentDegree(const QMatrix& e) {
    const Eigen::Index n = e.rows();
    QMatrix nil = e - qIdentity(n);
    QMatrix acc = nil;
    for (int k = 1; k <= n; ++k) {
        if (isZeroMatrix(acc)) return k;
        acc = acc * nil;
    }
    return -1;
}

template <typename Derived>
unsigned long maxEntryBits(const Eigen::MatrixBase<Derived>& m) {
    unsigned long bits = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            bits = std::max(bits, entryBits(m(i, j)));
    return bits;
}

// Row-major fraction text, one row per line: "1 -3 4 8/3".
inline std::string formatMatrix(const QMatrix& m) {
    std::ostringstream out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << fmtRational(m(i, j));
        }
        out << '\n';
    }
    return out.str();
}

inline std::string formatVector(const QVector& v) {
    std::ostringstream out;
    out << '(';
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) out << ", ";
        out << fmtRational(v(i));
    }
    out << ')';
    return out.str();
}

/// Parse whitespace-separated fraction rows; every row must have equal length.
inline QMatrix parseMatrix(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::vector<Rational>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<Rational> row;
        std::string tok;
        while (ls >> tok) row.push_back(parseRational(tok));
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("empty matrix text");
    QMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size())
            throw ParseError("ragged matrix rows");
        for (size_t j = 0; j < rows[i].size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
    return m;
}

inline QMatrix matrixOfLongs(std::initializer_list<std::initializer_list<long>> rows) {
    QMatrix m(static_cast<Eigen::Index>(rows.size()),
              static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& row : rows) {
        Eigen::Index j = 0;
        for (long v : row) m(i, j++) = Rational(v);
        ++i;
    }
    return m;
}

} // namespace hgm

#endif
