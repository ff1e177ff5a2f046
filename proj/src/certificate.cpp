#include "hgm/certificate.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace hgm {

using json = nlohmann::ordered_json;

namespace {

// Base symbols every certificate program may reference. "a" and "b" denote the
// conjugated generators P^-1 A P and P^-1 B P unless the program defines its
// own; "C" is A^-1 B.
const std::vector<std::string> kRawBase = {"A", "B", "C", "P"};

std::vector<std::string> baseSymbolsFor(const std::set<std::string>& defined) {
    std::vector<std::string> base = kRawBase;
    if (!defined.count("a")) base.push_back("a");
    if (!defined.count("b")) base.push_back("b");
    return base;
}

} // namespace

Certificate parseCertificate(const std::string& jsonText) {
    json j;
    try {
        j = json::parse(jsonText);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("bad certificate JSON: ") + e.what());
    }
    try {
        Certificate cert;
        const auto& params = j.at("parameters");
        if (!params.is_array() || params.size() != 2)
            throw ParseError("'parameters' must be two fraction-list strings");
        cert.params.alpha = ParameterTuple::parse(params[0].get<std::string>());
        cert.params.beta = ParameterTuple::parse(params[1].get<std::string>());

        if (j.contains("P")) {
            const auto& rows = j.at("P");
            std::ostringstream text;
            for (const auto& row : rows) {
                for (const auto& cell : row) text << cell.get<std::string>() << ' ';
                text << '\n';
            }
            cert.P = parseMatrix(text.str());
        }

        std::set<std::string> defined;
        for (const auto& [name, word] : j.at("slp").items()) {
            cert.slp.defs.push_back({name, parseWord(word.get<std::string>())});
            defined.insert(name);
        }
        cert.slp.baseSymbols = baseSymbolsFor(defined);
        validateSLP(cert.slp);

        for (const auto& claim : j.at("claims"))
            cert.claims.push_back({claim.at("name").get<std::string>(),
                                   parseRoot(claim.at("root").get<std::string>())});

        if (j.contains("comments"))
            for (const auto& c : j.at("comments")) cert.comments.push_back(c.get<std::string>());
        return cert;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad certificate structure: ") + e.what());
    }
}

std::string serializeCertificate(const Certificate& cert) {
    json j;
    j["parameters"] = {cert.params.alpha.str(), cert.params.beta.str()};
    if (cert.P) {
        json rows = json::array();
        for (Eigen::Index i = 0; i < cert.P->rows(); ++i) {
            json row = json::array();
            for (Eigen::Index k = 0; k < cert.P->cols(); ++k) row.push_back(fmtRational((*cert.P)(i, k)));
            rows.push_back(std::move(row));
        }
        j["P"] = std::move(rows);
    }
    json slp = json::object();
    for (const auto& d : cert.slp.defs) slp[d.name] = formatWord(d.word);
    j["slp"] = std::move(slp);
    json claims = json::array();
    for (const auto& c : cert.claims)
        claims.push_back(json{{"name", c.name}, {"root", formatRoot(c.root)}});
    j["claims"] = std::move(claims);
    if (!cert.comments.empty()) j["comments"] = cert.comments;
    return j.dump(2) + "\n";
}

Certificate loadCertificate(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read certificate file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parseCertificate(buf.str());
}

void saveCertificate(const Certificate& cert, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write certificate file '" + path + "'");
    out << serializeCertificate(cert);
}

Verdict verifyCertificate(const Certificate& cert, const VerifyOptions& opts) {
    Verdict v;
    v.assumptions = {
        "Zariski density of the group in the isometry group of its invariant form is assumed "
        "(Beukers-Heckman criterion), not checked here.",
        "The arithmeticity conclusion is conditional on Venkataramana's criterion: nontrivial "
        "unipotents in the highest and second-highest root groups of a Zariski-dense subgroup "
        "give finite index in the integer points."};

    GroupPresentation pres;
    InvariantForm form;
    try {
        IntPoly f = polyFromParameters(cert.params.alpha);
        IntPoly g = polyFromParameters(cert.params.beta);
        pres = buildPresentation(f, g);
        form = solveInvariantForm(pres);
        v.notes.push_back(std::string("classification: ") + formCaseName(pres.cls.formCase) +
                          ", degree " + std::to_string(pres.cls.degree));
    } catch (const Error& e) {
        v.status = CertStatus::EvaluationError;
        v.failing = "(setup)";
        v.notes.push_back(std::string("setup failed: ") + e.what());
        return v;
    }

    QMatrix P;
    try {
        if (cert.P) {
            P = *cert.P;
            if (P.rows() != pres.n || P.cols() != pres.n)
                throw DimensionMismatch("P has wrong dimensions");
            if (determinant(P) == 0) throw SingularP();
            v.notes.push_back("basis change: supplied by the certificate");
        } else {
            auto bc = standardizeForm(form, opts.heightBound);
            if (!bc) throw Error("no antidiagonal basis found within the search bound; supply P");
            P = bc->P;
            v.notes.push_back("basis change: computed by standardizeForm");
        }
    } catch (const Error& e) {
        v.status = CertStatus::EvaluationError;
        v.failing = "(basis-change)";
        v.notes.push_back(std::string("basis change failed: ") + e.what());
        return v;
    }

    InvariantForm standard;
    try {
        standard = applyBasisChange(P, form);
    } catch (const Error& e) {
        v.status = CertStatus::EvaluationError;
        v.failing = "(basis-change)";
        v.notes.push_back(std::string("congruence failed: ") + e.what());
        return v;
    }

    Bindings values;
    try {
        QMatrix pInv = exactInverse(P);
        Bindings bindings;
        bindings["A"] = pres.A;
        bindings["B"] = pres.B;
        bindings["C"] = pres.C;
        bindings["P"] = P;
        if (!cert.slp.defines("a")) bindings["a"] = pInv * pres.A * P;
        if (!cert.slp.defines("b")) bindings["b"] = pInv * pres.B * P;
        values = evaluateSLP(cert.slp, bindings);
    } catch (const Error& e) {
        v.status = CertStatus::EvaluationError;
        v.failing = "(evaluation)";
        v.notes.push_back(std::string("evaluation failed: ") + e.what());
        return v;
    }

    // Every definition must be an isometry of the invariant form in one of its
    // two scalings: the original basis or the antidiagonal one.
    for (const auto& d : cert.slp.defs) {
        const QMatrix& e = values.at(d.name);
        bool raw = matEq(congruence(e, form.matrix), form.matrix);
        bool std_ = matEq(congruence(e, standard.matrix), standard.matrix);
        if (!raw && !std_) {
            v.status = CertStatus::EvaluationError;
            v.failing = d.name;
            v.notes.push_back("definition '" + d.name + "' preserves neither form scaling");
            return v;
        }
    }

    GroupKind kind;
    try {
        kind = groupKindFor(pres.cls);
    } catch (const Error& e) {
        v.status = CertStatus::EvaluationError;
        v.failing = "(root-data)";
        v.notes.push_back(e.what());
        return v;
    }
    RootSystemData roots = rootSystemData(kind);

    bool anyFail = false;
    bool highestCovered = false, secondCovered = false;
    for (const auto& claim : cert.claims) {
        ClaimReport report;
        report.name = claim.name;
        report.root = claim.root;
        auto it = values.find(claim.name);
        if (it == values.end()) {
            report.detail = "no such definition";
        } else {
            report.value = it->second;
            try {
                RootGroupPattern pattern = patternFor(kind, claim.root);
                report.got = rootGroupMembership(it->second, standard, pattern);
                report.pass = report.got == Membership::NonTrivialMember;
                if (!report.pass) report.detail = membershipName(report.got);
            } catch (const Error& e) {
                report.detail = e.what();
            }
        }
        if (report.pass) {
            if (claim.root == roots.highest) highestCovered = true;
            if (claim.root == roots.secondHighest) secondCovered = true;
        } else {
            anyFail = true;
            if (v.failing.empty()) v.failing = claim.name;
        }
        v.claims.push_back(std::move(report));
    }

    if (anyFail) {
        v.status = CertStatus::ClaimFailed;
        return v;
    }
    if (!highestCovered || !secondCovered) {
        v.status = CertStatus::ClaimFailed;
        v.failing = "(coverage)";
        v.notes.push_back(std::string("claims must cover the highest root ") +
                          formatRoot(roots.highest) + " and the second-highest root " +
                          formatRoot(roots.secondHighest));
        return v;
    }
    v.status = CertStatus::Valid;
    return v;
}

} // namespace hgm
