#include <doctest.h>

#include "fixtures.hpp"
#include "hgm/certificate.hpp"

using namespace hgm;

namespace {

SLP makeSLP(const std::vector<std::pair<std::string, std::string>>& defs,
            std::vector<std::string> base) {
    SLP slp;
    slp.baseSymbols = std::move(base);
    for (const auto& [name, word] : defs) slp.defs.push_back({name, parseWord(word)});
    validateSLP(slp);
    return slp;
}

Certificate sp4Certificate() {
    fixtures::Sp4Example ex;
    Certificate cert;
    cert.params = {ParameterTuple::parse(ex.alpha), ParameterTuple::parse(ex.beta)};
    cert.P = ex.P;
    cert.slp = makeSLP(ex.slp, {"A", "B", "C", "P", "a", "b"});
    cert.claims = {{"E7", {2, 0}}, {"E9", {1, 1}}};
    return cert;
}

Certificate o5Certificate() {
    fixtures::O5Example ex;
    Certificate cert;
    cert.params = {ParameterTuple::parse(ex.alpha), ParameterTuple::parse(ex.beta)};
    cert.P = ex.P;
    cert.slp = makeSLP(ex.slp, {"A", "B", "C", "P"});
    cert.claims = {{"E13", {1, 1}}, {"E16", {1, 0}}};
    return cert;
}

} // namespace

TEST_CASE("word grammar") {
    Word w = parseWord("b^-1 a b a^-1");
    REQUIRE(w.size() == 4);
    CHECK(w[0].symbol == "b");
    CHECK(w[0].exp == -1);
    CHECK(w[1].exp == 1);
    CHECK(formatWord(w) == "b^-1 a b a^-1");
    CHECK(formatWord(parseWord("B^3  A^2 B^2 A B^2")) == "B^3 A^2 B^2 A B^2");
    CHECK(formatWord(inverseWord(parseWord("a b^2"))) == "b^-2 a^-1");
    CHECK_THROWS_AS(parseWord(""), ParseError);
    CHECK_THROWS_AS(parseWord("a^"), ParseError);
    CHECK_THROWS_AS(parseWord("3a"), ParseError);
}

TEST_CASE("slp validation") {
    CHECK_THROWS_AS(makeSLP({{"x", "y"}}, {"a"}), ParseError);           // unknown symbol
    CHECK_THROWS_AS(makeSLP({{"a", "a a"}}, {"a"}), ParseError);         // redefines base
    CHECK_THROWS_AS(makeSLP({{"x", "a"}, {"x", "a a"}}, {"a"}), ParseError);
    // forward reference
    CHECK_THROWS_AS(makeSLP({{"x", "y"}, {"y", "a"}}, {"a"}), ParseError);
}

TEST_CASE("evaluation: trivial cases") {
    fixtures::Sp4Example ex;
    SLP empty;
    empty.baseSymbols = {"A"};
    Bindings out = evaluateSLP(empty, {{"A", ex.A}});
    CHECK(out.size() == 1);
    CHECK(matEq(out.at("A"), ex.A));

    SLP c = makeSLP({{"C", "A^-1 B"}}, {"A", "B"});
    out = evaluateSLP(c, {{"A", ex.A}, {"B", ex.B}});
    CHECK(matEq(out.at("C"), ex.C));

    CHECK_THROWS_AS(evaluateSLP(c, {{"A", ex.A}}), UnboundSymbol);
    CHECK_THROWS_AS(evaluateSLP(c, {{"A", QMatrix::Zero(4, 4)}, {"B", ex.B}}), SingularBase);
}

TEST_CASE("the symplectic chain evaluates to the printed matrices") {
    fixtures::Sp4Example ex;
    Certificate cert = sp4Certificate();
    QMatrix pinv = exactInverse(ex.P);
    Bindings bindings{{"A", ex.A}, {"B", ex.B}, {"C", ex.C}, {"P", ex.P},
                      {"a", pinv * ex.A * ex.P}, {"b", pinv * ex.B * ex.P}};
    Bindings values = evaluateSLP(cert.slp, bindings);

    CHECK(matEq(values.at("E1"), ex.E1));
    CHECK(matEq(values.at("E2"), ex.E2));
    CHECK(matEq(values.at("E3"), ex.E3));
    CHECK(matEq(values.at("E7"), ex.E7));
    CHECK(matEq(values.at("E8"), ex.E8));
    CHECK(matEq(values.at("E9"), ex.E9));

    // oracle: recompute the chain by direct multiplication, no SLP machinery
    QMatrix G = ex.B * ex.B * ex.B * ex.A * ex.A * ex.B * ex.B * ex.A * ex.B * ex.B;
    QMatrix E1 = pinv * ex.C * ex.P;
    QMatrix E2 = pinv * G * ex.C * exactInverse(G) * ex.P;
    QMatrix E3 = pinv * exactInverse(ex.A) * ex.C * ex.A * ex.P;
    QMatrix E4 = matPow(E1, 7) * E3 * matPow(E1, -7);
    QMatrix E5 = matPow(E2, -9) * E4;
    QMatrix E6 = E1 * E5 * exactInverse(E1);
    QMatrix E7 = E5 * E6 * exactInverse(E5) * exactInverse(E6);
    CHECK(matEq(values.at("E4"), E4));
    CHECK(matEq(values.at("E5"), E5));
    CHECK(matEq(values.at("E7"), E7));

    // cross-identities inside the chain
    CHECK(matEq(values.at("E8"), QMatrix(matPow(values.at("E5"), 18) * values.at("E7"))));
    CHECK(matEq(values.at("E9"),
                QMatrix(matPow(values.at("E7"), 161) * values.at("E8") * matPow(values.at("E6"), -18))));

    // determinism: a second evaluation gives bit-identical output
    Bindings again = evaluateSLP(cert.slp, bindings);
    for (const auto& [name, m] : values) CHECK(matEq(again.at(name), m));
}

TEST_CASE("the orthogonal chain evaluates to the printed matrices") {
    fixtures::O5Example ex;
    Certificate cert = o5Certificate();
    Bindings bindings{{"A", ex.A}, {"B", ex.B}, {"C", ex.C}, {"P", ex.P}};
    Bindings values = evaluateSLP(cert.slp, bindings);

    CHECK(matEq(values.at("a"), ex.a));  // printed conjugated generators
    CHECK(matEq(values.at("b"), ex.b));
    CHECK(matEq(values.at("E3"), ex.E3));
    CHECK(matEq(values.at("E7"), ex.E7));
    CHECK(matEq(values.at("E8"), ex.E8));
    CHECK(matEq(values.at("E13"), ex.E13));
    CHECK(matEq(values.at("E16"), ex.E16));

    // cross-identities
    CHECK(matEq(values.at("E15"), QMatrix(matPow(values.at("E14"), 48) * values.at("E13"))));
    CHECK(matEq(values.at("E16"), QMatrix(matPow(values.at("E7"), -48) * values.at("E15"))));

    // every definition preserves the transformed form
    InvariantForm q;
    q.matrix = ex.Q;
    q.kind = FormKind::Symmetric;
    QMatrix qstd = applyBasisChange(ex.P, q).matrix;
    for (const auto& d : cert.slp.defs)
        CHECK(matEq(congruence(values.at(d.name), qstd), qstd));
}

TEST_CASE("verifier accepts both bundled chains") {
    Verdict v1 = verifyCertificate(sp4Certificate());
    CHECK(v1.status == CertStatus::Valid);
    REQUIRE(v1.claims.size() == 2);
    CHECK(v1.claims[0].pass);
    CHECK(v1.claims[1].pass);
    CHECK(!v1.assumptions.empty());

    Verdict v2 = verifyCertificate(o5Certificate());
    CHECK(v2.status == CertStatus::Valid);
}

TEST_CASE("verifier rejects tampered certificates") {
    // wrong claim target: an element outside the root group
    Certificate wrongTarget = sp4Certificate();
    wrongTarget.claims[0].name = "E1";
    Verdict v = verifyCertificate(wrongTarget);
    CHECK(v.status == CertStatus::ClaimFailed);
    CHECK(v.failing == "E1");

    // claim pointing at a definition that is trivial after tampering
    Certificate trivial = sp4Certificate();
    trivial.slp.defs.push_back({"Eid", parseWord("E7 E7^-1")});
    trivial.claims[0].name = "Eid";
    v = verifyCertificate(trivial);
    CHECK(v.status == CertStatus::ClaimFailed);

    // broken coupling: E7^160 E8 E6^-18 has an extra highest-root component
    Certificate coupling = sp4Certificate();
    for (auto& d : coupling.slp.defs)
        if (d.name == "E9") d.word = parseWord("E7^160 E8 E6^-18");
    v = verifyCertificate(coupling);
    CHECK(v.status == CertStatus::ClaimFailed);
    CHECK(v.failing == "E9");

    // non-form-preserving element claimed: a raw word is no isometry of the
    // transformed form
    Certificate raw = sp4Certificate();
    raw.claims[0].name = "G";
    v = verifyCertificate(raw);
    CHECK(v.status == CertStatus::ClaimFailed);

    // missing coverage: only the highest root claimed
    Certificate partial = sp4Certificate();
    partial.claims.pop_back();
    v = verifyCertificate(partial);
    CHECK(v.status == CertStatus::ClaimFailed);
    CHECK(v.failing == "(coverage)");

    // unknown definition name
    Certificate unknown = sp4Certificate();
    unknown.claims[0].name = "E77";
    v = verifyCertificate(unknown);
    CHECK(v.status == CertStatus::ClaimFailed);
}

TEST_CASE("verifier reports setup failures as evaluation errors") {
    Certificate cert = sp4Certificate();
    cert.params.beta = ParameterTuple::parse("1/5,1/5,1/5,1/5");  // not Galois stable
    Verdict v = verifyCertificate(cert);
    CHECK(v.status == CertStatus::EvaluationError);

    Certificate badP = sp4Certificate();
    badP.P = QMatrix::Zero(4, 4);
    v = verifyCertificate(badP);
    CHECK(v.status == CertStatus::EvaluationError);
}

TEST_CASE("certificate json round trip") {
    Certificate cert = sp4Certificate();
    cert.comments = {"bundled witness chain for the symplectic example"};
    std::string text = serializeCertificate(cert);
    Certificate back = parseCertificate(text);
    CHECK(serializeCertificate(back) == text);
    CHECK(back.params.alpha.str() == cert.params.alpha.str());
    REQUIRE(back.P.has_value());
    CHECK(matEq(*back.P, *cert.P));
    CHECK(back.slp.defs.size() == cert.slp.defs.size());
    CHECK(back.claims.size() == 2);
    CHECK(back.claims[0].name == "E7");
    CHECK(back.claims[0].root == RootLabel{2, 0});

    CHECK_THROWS_AS(parseCertificate("{"), ParseError);
    CHECK_THROWS_AS(parseCertificate("{}"), ParseError);
}

TEST_CASE("verify works without a supplied P (computed basis change)") {
    Certificate cert = sp4Certificate();
    cert.P.reset();
    // the slp references P explicitly, which stays bound to the computed one;
    // membership claims are then relative to that antidiagonal form, so only
    // structural validity is guaranteed here
    Verdict v = verifyCertificate(cert);
    CHECK(v.status != CertStatus::EvaluationError);
}
