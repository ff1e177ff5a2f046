#ifndef HGM_PRESENTATION_HPP
#define HGM_PRESENTATION_HPP

#include <string>
#include <utility>
#include <vector>

#include "hgm/parameters.hpp"

namespace hgm {

/// Generators of the monodromy group of a polynomial pair: the companion
/// matrices A of f and B of g, together with C = A^{-1}B.
struct GroupPresentation {
    int n = 0;
    QMatrix A, B, C;
    IntPoly f, g;
    PairClassification cls;
};

inline GroupPresentation buildPresentation(const IntPoly& f, const IntPoly& g) {
    PairClassification cls = classifyPair(f, g);
    if (!cls.coprime) throw InvalidPair("f and g share a nontrivial factor");
    if (!cls.primitive) throw InvalidPair("f and g form an imprimitive pair");
    if (cls.formCase == FormCase::Unsupported)
        throw InvalidPair("constant terms match neither the symplectic nor the orthogonal case");
    GroupPresentation p;
    p.n = cls.degree;
    p.f = f;
    p.g = g;
    p.cls = cls;
    p.A = companion(f);
    p.B = companion(g);
    p.C = exactInverse(p.A) * p.B;
    return p;
}

enum class FormKind { Alternating, Symmetric };

/// Bilinear form fixed by the group under congruence. Stored with integer
/// entries of gcd 1, first nonzero entry (row-major) positive; any comparison
/// against other scalings must be projective.
struct InvariantForm {
    QMatrix matrix;
    FormKind kind = FormKind::Symmetric;
    std::string normalization;

    Eigen::Index n() const { return matrix.rows(); }
};

/// M1 == lambda * M2 for some nonzero rational lambda.
inline bool projectivelyEqual(const QMatrix& m1, const QMatrix& m2) {
    if (m1.rows() != m2.rows() || m1.cols() != m2.cols()) return false;
    Rational lambda = 0;
    for (Eigen::Index i = 0; i < m1.rows(); ++i)
        for (Eigen::Index j = 0; j < m1.cols(); ++j) {
            const Rational &a = m1(i, j), &b = m2(i, j);
            if ((a == 0) != (b == 0)) return false;
            if (b == 0) continue;
            Rational r = a / b;
            if (lambda == 0)
                lambda = r;
            else if (r != lambda)
                return false;
        }
    return lambda != 0;
}

/// Clear denominators, divide by the gcd of the entries, then fix the sign of
/// the first nonzero entry in row-major order. Returns the scaled matrix.
inline QMatrix normalizeFormMatrix(const QMatrix& m) {
    Integer l = 1;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) l = lcm(l, denominator(m(i, j)));
    QMatrix r = m * Rational(l);
    Integer g = 0;
    for (Eigen::Index i = 0; i < r.rows(); ++i)
        for (Eigen::Index j = 0; j < r.cols(); ++j) g = gcd(g, numerator(r(i, j)));
    if (g == 0) return r;
    r /= Rational(g);
    for (Eigen::Index i = 0; i < r.rows(); ++i)
        for (Eigen::Index j = 0; j < r.cols(); ++j)
            if (r(i, j) != 0) {
                if (r(i, j) < 0) r = -r;
                return r;
            }
    return r;
}

/// Solves {X : A^t X A = X, B^t X B = X, X^t = eps X} with eps = -1 in the
/// symplectic case and +1 in the orthogonal case, by a kernel computation over
/// a basis of the (anti)symmetric matrices. The solution space must be a line.
inline InvariantForm solveInvariantForm(const GroupPresentation& p) {
    const Eigen::Index n = p.n;
    const bool alternating = p.cls.formCase == FormCase::Symplectic;
    const Rational eps = alternating ? -1 : 1;

    std::vector<QMatrix> basis;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j) {
            if (i == j && alternating) continue;
            QMatrix e = QMatrix::Zero(n, n);
            e(i, j) = 1;
            e(j, i) = (i == j) ? Rational(1) : eps;
            basis.push_back(std::move(e));
        }

    const Eigen::Index t = static_cast<Eigen::Index>(basis.size());
    QMatrix sys(2 * n * n, t);
    for (Eigen::Index k = 0; k < t; ++k) {
        QMatrix ra = p.A.transpose() * basis[static_cast<size_t>(k)] * p.A - basis[static_cast<size_t>(k)];
        QMatrix rb = p.B.transpose() * basis[static_cast<size_t>(k)] * p.B - basis[static_cast<size_t>(k)];
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                sys(i * n + j, k) = ra(i, j);
                sys(n * n + i * n + j, k) = rb(i, j);
            }
    }

    auto ker = kernelBasis(sys);
    if (ker.empty()) throw NoInvariantForm();
    if (ker.size() > 1)
        throw NonUniqueForm("invariant form space has dimension " + std::to_string(ker.size()));

    QMatrix x = QMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < t; ++k) x += ker[0](k) * basis[static_cast<size_t>(k)];

    if (determinant(x) == 0) throw NoInvariantForm("invariant form is degenerate");

    InvariantForm form;
    form.matrix = normalizeFormMatrix(x);
    form.kind = alternating ? FormKind::Alternating : FormKind::Symmetric;
    form.normalization =
        "integer entries, gcd 1, first nonzero entry positive (row-major); any scalar multiple is equivalent";
    return form;
}

struct OrbitBasis {
    QVector v;       // (C - I) e_n
    QMatrix basis;   // columns v, Bv, ..., B^{n-1} v
    QMatrix gram;    // basis^t M basis
};

/// Change of basis to {v, Bv, ..., B^{n-1}v} with v = (C - I)e_n, and the
/// invariant form expressed in it. The columns must be independent.
inline OrbitBasis orbitBasisGram(const GroupPresentation& p, const InvariantForm& form) {
    const Eigen::Index n = p.n;
    if (form.matrix.rows() != n) throw DimensionMismatch("form does not match presentation");
    QVector e = QVector::Zero(n);
    e(n - 1) = 1;
    OrbitBasis ob;
    ob.v = (p.C - qIdentity(n)) * e;
    ob.basis = QMatrix(n, n);
    QVector w = ob.v;
    for (Eigen::Index j = 0; j < n; ++j) {
        ob.basis.col(j) = w;
        w = p.B * w;
    }
    if (determinant(ob.basis) == 0) throw DependentBasis();
    ob.gram = congruence(ob.basis, form.matrix);
    return ob;
}

} // namespace hgm

#endif
