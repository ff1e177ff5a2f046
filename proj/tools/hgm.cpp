// Command-line front end: analyze a parameter pair, verify or search for
// arithmeticity certificates, apply scalar shifts.
//
// Exit codes: 0 success / certificate valid; 1 invalid certificate or
// exhausted search; 2 malformed input.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hgm/certificate.hpp"
#include "hgm/search.hpp"

using namespace hgm;

namespace {

constexpr int kExitValid = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitInputError = 2;

QMatrix readMatrixFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read matrix file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parseMatrix(buf.str());
}

void printPolynomial(std::ostream& out, const char* name, const IntPoly& p) {
    out << name << " = " << p.str() << "\n";
}

void printMatrixBlock(std::ostream& out, const std::string& head, const QMatrix& m) {
    out << head << "\n" << formatMatrix(m);
}

void printRootData(std::ostream& out, GroupKind kind) {
    RootSystemData data = rootSystemData(kind);
    out << "root data (" << groupKindName(kind) << "): torus " << data.torusShape << "\n";
    out << "  roots:";
    for (const auto& r : data.roots) out << ' ' << formatRoot(r);
    out << "\n  simple roots:";
    for (const auto& r : data.simpleRoots) out << ' ' << formatRoot(r);
    out << "\n  highest root: " << formatRoot(data.highest)
        << ", second highest: " << formatRoot(data.secondHighest) << "\n";
    for (const auto& root : {data.highest, data.secondHighest}) {
        auto pattern = patternFor(kind, root);
        out << "  " << formatRoot(root) << " support (1-indexed):";
        for (auto [i, j] : pattern.support) out << " (" << i + 1 << "," << j + 1 << ")";
        out << "\n";
    }
}

int cmdAnalyze(const std::string& alphaText, const std::string& betaText,
               const std::string& basisChangeFile, int heightBound) {
    ParameterTuple alpha = ParameterTuple::parse(alphaText);
    ParameterTuple beta = ParameterTuple::parse(betaText);
    std::ostream& out = std::cout;
    out << "parameters:\n  alpha = " << alpha.str() << "\n  beta  = " << beta.str() << "\n";

    IntPoly f = polyFromParameters(alpha);
    IntPoly g = polyFromParameters(beta);
    printPolynomial(out, "f", f);
    printPolynomial(out, "g", g);
    printPolynomial(out, "f - g", f - g);

    GroupPresentation pres = buildPresentation(f, g);
    out << "classification: " << (pres.cls.coprime ? "coprime" : "not coprime") << ", "
        << (pres.cls.primitive ? "primitive" : "imprimitive") << ", "
        << formCaseName(pres.cls.formCase) << ", degree " << pres.cls.degree << "\n";

    printMatrixBlock(out, "A =", pres.A);
    printMatrixBlock(out, "B =", pres.B);
    printMatrixBlock(out, "C = A^-1 B =", pres.C);

    InvariantForm form = solveInvariantForm(pres);
    out << "invariant form ("
        << (form.kind == FormKind::Alternating ? "alternating" : "symmetric")
        << "; scaling: " << form.normalization << "):\n"
        << formatMatrix(form.matrix);

    std::optional<QMatrix> P;
    std::string origin;
    if (!basisChangeFile.empty()) {
        P = readMatrixFile(basisChangeFile);
        origin = "supplied";
    } else {
        auto bc = standardizeForm(form, heightBound);
        if (bc) {
            P = bc->P;
            origin = "computed (isotropic search height bound " + std::to_string(heightBound) + ")";
        }
    }

    if (!P) {
        out << "standard form: not found within height bound " << heightBound
            << "; supply --basis-change FILE\n";
        return kExitValid;
    }

    InvariantForm standard = applyBasisChange(*P, form);
    printMatrixBlock(out, "P (" + origin + ") =", *P);
    printMatrixBlock(out, "standard form P^t M P =", standard.matrix);
    out << "antidiagonal: " << (isAntidiagonal(standard.matrix) ? "yes" : "no") << "\n";
    if (isAntidiagonal(standard.matrix) &&
        (pres.cls.formCase == FormCase::Symplectic || pres.cls.formCase == FormCase::Orthogonal)) {
        try {
            printRootData(out, groupKindFor(pres.cls));
        } catch (const UnsupportedRoot&) {
            out << "root data: only available for Sp4 and O5\n";
        }
    }
    return kExitValid;
}

int cmdVerify(const std::string& path) {
    Certificate cert = loadCertificate(path);
    Verdict v = verifyCertificate(cert);
    std::ostream& out = std::cout;
    for (const auto& claim : v.claims) {
        out << "claim " << claim.name << " in U_" << formatRoot(claim.root) << ": "
            << (claim.pass ? "NonTrivialMember" : (claim.detail.empty() ? "failed" : claim.detail))
            << "\n";
        if (claim.value.size() > 0) out << formatMatrix(claim.value);
    }
    for (const auto& note : v.notes) out << "note: " << note << "\n";
    out << "verdict: " << certStatusName(v.status);
    if (v.status != CertStatus::Valid && !v.failing.empty()) out << " [" << v.failing << "]";
    out << "\n";
    for (const auto& a : v.assumptions) out << "assumption: " << a << "\n";
    return v.status == CertStatus::Valid ? kExitValid : kExitInvalid;
}

int cmdSearch(const std::string& alphaText, const std::string& betaText, int maxLen, int maxBits,
              int rounds, const std::string& basisChangeFile, const std::string& outputFile,
              int heightBound) {
    ParameterTuple alpha = ParameterTuple::parse(alphaText);
    ParameterTuple beta = ParameterTuple::parse(betaText);
    GroupPresentation pres =
        buildPresentation(polyFromParameters(alpha), polyFromParameters(beta));
    InvariantForm form = solveInvariantForm(pres);

    QMatrix P;
    if (!basisChangeFile.empty()) {
        P = readMatrixFile(basisChangeFile);
    } else {
        auto bc = standardizeForm(form, heightBound);
        if (!bc) throw ParseError("no antidiagonal basis found; supply --basis-change FILE");
        P = bc->P;
    }

    SearchConfig cfg;
    cfg.maxWordLength = maxLen;
    cfg.maxEntryBits = static_cast<unsigned long>(maxBits);
    cfg.commutatorRounds = rounds;
    SearchResult result = searchRootUnipotents(pres, P, cfg);

    std::cerr << "search: " << result.stats.nodesExpanded << " nodes, " << result.stats.pruned
              << " pruned, " << result.stats.candidates << " unipotent candidates, "
              << result.stats.commutatorsTried << " commutators, "
              << result.stats.combinationsTried << " combinations, "
              << result.stats.wallSeconds << "s\n";
    for (const auto& w : result.found)
        std::cerr << "witness for " << formatRoot(w.root) << ": " << w.name << "\n";

    if (result.found.empty()) {
        std::cerr << "no root-group witnesses found within bounds\n";
        return kExitInvalid;
    }

    Certificate cert = certificateFromSearch({alpha, beta}, P, result.found, cfg);
    saveCertificate(cert, outputFile);
    std::cout << serializeCertificate(cert);
    std::cerr << "certificate written to " << outputFile << "\n";
    if (!result.allTargetsFound) {
        std::cerr << "search incomplete: not every target root was witnessed\n";
        return kExitInvalid;
    }
    return kExitValid;
}

int cmdShift(const std::string& alphaText, const std::string& betaText, const std::string& cText) {
    ParameterPair pair{ParameterTuple::parse(alphaText), ParameterTuple::parse(betaText)};
    Rational c = parseRational(cText);
    ParameterPair shifted = scalarShift(pair, c);
    std::cout << "alpha + " << fmtRational(c) << " = " << shifted.alpha.str() << "\n";
    std::cout << "beta  + " << fmtRational(c) << " = " << shifted.beta.str() << "\n";
    std::cout << "equal to the input pair as unordered multisets: "
              << (pairsMatchUnordered(shifted, pair) ? "yes" : "no") << "\n";
    return kExitValid;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmeticity toolkit for cyclotomic monodromy groups"};
    app.require_subcommand(1);

    std::string alpha, beta, cText, certFile, basisChange, output = "certificate.json";
    int maxLen = 12, maxBits = 256, rounds = 2, heightBound = 10;

    auto* analyze = app.add_subcommand("analyze", "polynomials, generators, invariant form");
    analyze->add_option("alpha", alpha, "first parameter tuple, e.g. 0,0,1/3,2/3")->required();
    analyze->add_option("beta", beta, "second parameter tuple")->required();
    analyze->add_option("--basis-change", basisChange, "matrix file with a known P");
    analyze->add_option("--height-bound", heightBound, "isotropic search bound");

    auto* verify = app.add_subcommand("verify", "check a certificate file");
    verify->add_option("certificate", certFile, "certificate JSON file")->required();

    auto* search = app.add_subcommand("search", "hunt for root-group unipotents");
    search->add_option("alpha", alpha, "first parameter tuple")->required();
    search->add_option("beta", beta, "second parameter tuple")->required();
    search->add_option("--max-len", maxLen, "word length bound");
    search->add_option("--max-bits", maxBits, "entry size bound in bits");
    search->add_option("--rounds", rounds, "commutator rounds");
    search->add_option("--basis-change", basisChange, "matrix file with a known P");
    search->add_option("--height-bound", heightBound, "isotropic search bound");
    search->add_option("-o,--output", output, "certificate output path");

    auto* shift = app.add_subcommand("shift", "apply a scalar shift to a pair");
    shift->add_option("alpha", alpha, "first parameter tuple")->required();
    shift->add_option("beta", beta, "second parameter tuple")->required();
    shift->add_option("c", cText, "shift, e.g. 1/2")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (analyze->parsed()) return cmdAnalyze(alpha, beta, basisChange, heightBound);
        if (verify->parsed()) return cmdVerify(certFile);
        if (search->parsed())
            return cmdSearch(alpha, beta, maxLen, maxBits, rounds, basisChange, output, heightBound);
        if (shift->parsed()) return cmdShift(alpha, beta, cText);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
