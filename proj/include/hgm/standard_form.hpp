#ifndef HGM_STANDARD_FORM_HPP
#define HGM_STANDARD_FORM_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hgm/presentation.hpp"

namespace hgm {

enum class GroupKind { Sp4, O5 };

inline GroupKind groupKindFor(const PairClassification& cls) {
    if (cls.formCase == FormCase::Symplectic && cls.degree == 4) return GroupKind::Sp4;
    if (cls.formCase == FormCase::Orthogonal && cls.degree == 5) return GroupKind::O5;
    throw UnsupportedRoot("root data is implemented for Sp4 and O5 only");
}

inline const char* groupKindName(GroupKind k) { return k == GroupKind::Sp4 ? "Sp4" : "O5"; }

/// Torus character chi1^a chi2^b written as the exponent pair (a, b).
struct RootLabel {
    int a = 0, b = 0;
    bool operator==(const RootLabel& o) const { return a == o.a && b == o.b; }
    bool operator!=(const RootLabel& o) const { return !(*this == o); }
};

std::string formatRoot(const RootLabel& r);
RootLabel parseRoot(const std::string& text);

/// Root data of the isometry group of an antidiagonal form, for the diagonal
/// torus printed below as diagChars.
struct RootSystemData {
    GroupKind kind;
    std::vector<RootLabel> diagChars;  // character of each diagonal torus entry
    std::vector<RootLabel> roots;
    std::vector<RootLabel> simpleRoots;
    RootLabel highest, secondHighest;
    std::string torusShape;
};

inline RootSystemData rootSystemData(GroupKind kind) {
    RootSystemData d;
    d.kind = kind;
    if (kind == GroupKind::Sp4) {
        d.diagChars = {{1, 0}, {0, 1}, {0, -1}, {-1, 0}};
        d.roots = {{2, 0}, {1, 1}, {1, -1}, {0, 2}, {-2, 0}, {-1, -1}, {-1, 1}, {0, -2}};
        d.simpleRoots = {{1, -1}, {0, 2}};
        d.highest = {2, 0};
        d.secondHighest = {1, 1};
        d.torusShape = "diag(t1, t2, t2^-1, t1^-1)";
    } else {
        d.diagChars = {{1, 0}, {0, 1}, {0, 0}, {0, -1}, {-1, 0}};
        d.roots = {{1, 0}, {0, 1}, {1, 1}, {1, -1}, {-1, 0}, {0, -1}, {-1, -1}, {-1, 1}};
        d.simpleRoots = {{0, 1}, {1, -1}};
        d.highest = {1, 1};
        d.secondHighest = {1, 0};
        d.torusShape = "diag(t1, t2, 1, t2^-1, t1^-1)";
    }
    return d;
}

/// Off-diagonal positions of E - I allowed for a one-parameter root group.
/// Entry couplings are not stored: membership re-derives them from form
/// preservation, which pins them exactly.
struct RootGroupPattern {
    GroupKind kind;
    RootLabel root;
    std::vector<std::pair<Eigen::Index, Eigen::Index>> support;  // 0-indexed
};

inline RootGroupPattern patternFor(GroupKind kind, const RootLabel& root) {
    RootGroupPattern p{kind, root, {}};
    if (kind == GroupKind::Sp4) {
        if (root == RootLabel{2, 0}) { p.support = {{0, 3}}; return p; }
        if (root == RootLabel{1, 1}) { p.support = {{0, 2}, {1, 3}}; return p; }
    } else {
        if (root == RootLabel{1, 1}) { p.support = {{0, 3}, {1, 4}}; return p; }
        if (root == RootLabel{1, 0}) { p.support = {{0, 2}, {2, 4}, {0, 4}}; return p; }
    }
    throw UnsupportedRoot("no pattern for root " + formatRoot(root) + " of " + groupKindName(kind));
}

/// True iff M is supported on the antidiagonal i + j = n - 1 (0-indexed);
/// exactly the shape that makes the diagonal torus act by isometries.
inline bool isAntidiagonal(const QMatrix& m) {
    const Eigen::Index n = m.rows();
    if (m.cols() != n) return false;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (i + j != n - 1 && m(i, j) != 0) return false;
    return true;
}

inline bool isStandardShape(const InvariantForm& form) { return isAntidiagonal(form.matrix); }

struct BasisChange {
    QMatrix P;
    InvariantForm source, target;
};

/// P^t M P with the kind carried over. Throws SingularP.
inline InvariantForm applyBasisChange(const QMatrix& p, const InvariantForm& form) {
    if (p.rows() != form.matrix.rows() || p.rows() != p.cols())
        throw DimensionMismatch("basis change has wrong shape");
    if (determinant(p) == 0) throw SingularP();
    InvariantForm out;
    out.matrix = congruence(p, form.matrix);
    out.kind = form.kind;
    out.normalization = "congruence transform of the source scaling";
    return out;
}

enum class Membership { NotMember, TrivialMember, NonTrivialMember };

inline const char* membershipName(Membership m) {
    switch (m) {
        case Membership::NotMember: return "NotMember";
        case Membership::TrivialMember: return "TrivialMember";
        default: return "NonTrivialMember";
    }
}

/// Root-group membership for an antidiagonal form: E - I must live on the
/// pattern support, E must preserve the form exactly, and E != I for the
/// nontrivial verdict. Support positions sit strictly above the diagonal, so
/// membership forces unipotency; the coupling relations between support
/// entries are exactly the form-preservation equations.
inline Membership rootGroupMembership(const QMatrix& e, const InvariantForm& form,
                                      const RootGroupPattern& pattern) {
    const Eigen::Index n = form.matrix.rows();
    if (e.rows() != n || e.cols() != n) throw DimensionMismatch("element does not match form");
    if (!isAntidiagonal(form.matrix)) throw NonStandardForm();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i == j) {
                if (e(i, j) != 1) return Membership::NotMember;
                continue;
            }
            bool allowed = false;
            for (const auto& [si, sj] : pattern.support)
                if (si == i && sj == j) { allowed = true; break; }
            if (!allowed && e(i, j) != 0) return Membership::NotMember;
        }
    if (!matEq(congruence(e, form.matrix), form.matrix)) return Membership::NotMember;
    return matEq(e, qIdentity(n)) ? Membership::TrivialMember : Membership::NonTrivialMember;
}

/// Scalar lambda with (second support entry) = lambda * (first support entry),
/// derived from form preservation. Defined for the two-entry patterns.
inline Rational couplingRatio(const RootGroupPattern& pattern, const InvariantForm& form) {
    if (!isAntidiagonal(form.matrix)) throw NonStandardForm();
    if (pattern.kind == GroupKind::Sp4 && pattern.root == RootLabel{1, 1})
        return form.matrix(0, 3) / form.matrix(1, 2);
    if (pattern.kind == GroupKind::O5 && pattern.root == RootLabel{1, 1})
        return -form.matrix(0, 4) / form.matrix(1, 3);
    throw UnsupportedRoot("coupling ratio defined for the two-entry patterns only");
}

std::optional<BasisChange> standardizeForm(const InvariantForm& form, int heightBound);

} // namespace hgm

#endif
