// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Usage: hgm_acceptance --cli PATH_TO_CLI --fixtures FIXTURE_DIR

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "hgm/certificate.hpp"
#include "hgm/search.hpp"

using namespace hgm;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int number, const std::string& what, bool pass, const std::string& detail = "") {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << number << ": " << what;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!pass) ++failures;
}

double seconds(Clock::time_point from) {
    return std::chrono::duration<double>(Clock::now() - from).count();
}

struct CliResult {
    int exitCode = -1;
    std::string output;
};

CliResult runCli(const std::string& cli, const std::string& args) {
    CliResult r;
    std::string cmd = cli + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof buf, pipe)) r.output.append(buf, got);
    int status = pclose(pipe);
    r.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

GroupPresentation presentationFor(const std::string& alpha, const std::string& beta) {
    return buildPresentation(polyFromParameters(ParameterTuple::parse(alpha)),
                             polyFromParameters(ParameterTuple::parse(beta)));
}

} // namespace

int main(int argc, char** argv) {
    std::string cli, fixturesDir;
    for (int i = 1; i + 1 < argc; i += 2) {
        std::string flag = argv[i];
        if (flag == "--cli") cli = argv[i + 1];
        if (flag == "--fixtures") fixturesDir = argv[i + 1];
    }
    if (cli.empty() || fixturesDir.empty()) {
        std::cerr << "usage: hgm_acceptance --cli PATH --fixtures DIR\n";
        return 2;
    }

    fixtures::Sp4Example sp4;
    fixtures::O5Example o5;

    // 1. companion-matrix fixtures
    {
        auto t0 = Clock::now();
        bool ok = true;
        std::string detail;
        try {
            auto p4 = presentationFor(sp4.alpha, sp4.beta);
            auto p5 = presentationFor(o5.alpha, o5.beta);
            ok = matEq(p4.A, sp4.A) && matEq(p4.B, sp4.B) && matEq(p4.C, sp4.C) &&
                 matEq(p5.A, o5.A) && matEq(p5.B, o5.B) && matEq(p5.C, o5.C);
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        double dt = seconds(t0);
        ok = ok && dt < 1.0;
        report(1, "companion matrices match the printed generators", ok,
               detail.empty() ? "elapsed " + std::to_string(dt) + "s, budget 1s" : detail);
    }

    // 2. invariant forms, solution space dimension 1
    {
        auto t0 = Clock::now();
        bool ok = true;
        std::string detail;
        try {
            auto p4 = presentationFor(sp4.alpha, sp4.beta);
            InvariantForm omega = solveInvariantForm(p4);  // throws unless dim == 1
            ok = projectivelyEqual(omega.matrix, sp4.omega);
            for (Eigen::Index j = 0; j < 4 && ok; ++j)
                ok = omega.matrix(0, j) * sp4.omega(0, 1) == sp4.omega(0, j) * omega.matrix(0, 1);

            auto p5 = presentationFor(o5.alpha, o5.beta);
            InvariantForm q = solveInvariantForm(p5);
            ok = ok && projectivelyEqual(q.matrix, o5.Q);
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        double dt = seconds(t0);
        ok = ok && dt < 1.0;
        report(2, "invariant forms match (projectively), solution space is a line", ok,
               detail.empty() ? "elapsed " + std::to_string(dt) + "s, budget 1s" : detail);
    }

    // 3. orbit basis of the orthogonal example
    {
        bool ok = true;
        std::string detail;
        try {
            auto p5 = presentationFor(o5.alpha, o5.beta);
            InvariantForm q = solveInvariantForm(p5);
            OrbitBasis ob = orbitBasisGram(p5, q);  // throws DependentBasis if dependent
            QVector v(5);
            v << -4, 6, -4, 2, -2;
            ok = matEq(ob.v, v) && projectivelyEqual(ob.gram, o5.q) && determinant(ob.basis) != 0;
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        report(3, "v = (-4,6,-4,2,-2), orbit vectors independent, gram matches printed form", ok,
               detail);
    }

    // 4. basis change to antidiagonal shape
    {
        bool ok = true;
        std::string detail;
        try {
            auto p4 = presentationFor(sp4.alpha, sp4.beta);
            InvariantForm omega = solveInvariantForm(p4);
            InvariantForm omegaStd = applyBasisChange(sp4.P, omega);
            ok = projectivelyEqual(omegaStd.matrix, sp4.omegaStd) && isStandardShape(omegaStd);

            auto p5 = presentationFor(o5.alpha, o5.beta);
            InvariantForm q = solveInvariantForm(p5);
            InvariantForm qStd = applyBasisChange(o5.P, q);
            ok = ok && projectivelyEqual(qStd.matrix, o5.Qstd) && isStandardShape(qStd);
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        report(4, "supplied basis changes reproduce the printed antidiagonal forms", ok, detail);
    }

    // 5. symplectic witness chain
    {
        auto t0 = Clock::now();
        bool ok = true;
        std::string detail;
        try {
            Certificate cert = loadCertificate(fixturesDir + "/theorem1.cert.json");
            auto p4 = presentationFor(sp4.alpha, sp4.beta);
            QMatrix pinv = exactInverse(sp4.P);
            Bindings values = evaluateSLP(cert.slp, {{"A", p4.A},
                                                     {"B", p4.B},
                                                     {"C", p4.C},
                                                     {"P", sp4.P},
                                                     {"a", pinv * p4.A * sp4.P},
                                                     {"b", pinv * p4.B * sp4.P}});
            ok = matEq(values.at("E7"), sp4.E7) && matEq(values.at("E9"), sp4.E9);
            Verdict v = verifyCertificate(cert);
            ok = ok && v.status == CertStatus::Valid;
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        double dt = seconds(t0);
        ok = ok && dt < 5.0;
        report(5, "symplectic chain gives E7(1,4)=1008, E9(1,3)=-3024,(2,4)=-54; CertificateValid",
               ok, detail.empty() ? "elapsed " + std::to_string(dt) + "s, budget 5s" : detail);
    }

    // 6. orthogonal witness chain
    {
        auto t0 = Clock::now();
        bool ok = true;
        std::string detail;
        try {
            Certificate cert = loadCertificate(fixturesDir + "/theorem2.cert.json");
            auto p5 = presentationFor(o5.alpha, o5.beta);
            Bindings values = evaluateSLP(
                cert.slp, {{"A", p5.A}, {"B", p5.B}, {"C", p5.C}, {"P", o5.P}});
            ok = matEq(values.at("E3"), o5.E3) && matEq(values.at("E7"), o5.E7) &&
                 matEq(values.at("E8"), o5.E8) && matEq(values.at("E13"), o5.E13) &&
                 matEq(values.at("E16"), o5.E16);
            Verdict v = verifyCertificate(cert);
            ok = ok && v.status == CertStatus::Valid;
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        double dt = seconds(t0);
        ok = ok && dt < 10.0;
        report(6, "orthogonal chain reproduces E3, E7, E8, E13, E16 exactly; CertificateValid", ok,
               detail.empty() ? "elapsed " + std::to_string(dt) + "s, budget 10s" : detail);
    }

    // 7. property suite
    {
        bool ok = true;
        std::string detail;
        try {
            std::mt19937_64 rng(60377);
            for (const auto& [alpha, beta] : {std::pair{sp4.alpha, sp4.beta},
                                              std::pair{o5.alpha, o5.beta}}) {
                auto pres = presentationFor(alpha, beta);
                InvariantForm form = solveInvariantForm(pres);
                QMatrix gens[4] = {pres.A, exactInverse(pres.A), pres.B, exactInverse(pres.B)};
                for (int trial = 0; trial < 100 && ok; ++trial) {
                    QMatrix w = qIdentity(pres.n);
                    int len = 1 + static_cast<int>(rng() % 12);
                    for (int i = 0; i < len; ++i) w = w * gens[rng() % 4];
                    ok = matEq(congruence(w, form.matrix), form.matrix);
                }
            }
            if (!ok) detail = "a word failed to preserve the invariant form";

            for (const QMatrix& e : {sp4.E1, sp4.E2, sp4.E3, sp4.E7, sp4.E8, sp4.E9, o5.E3, o5.E7,
                                     o5.E8, o5.E13, o5.E16})
                ok = ok && isUnipotent(e);

            std::uniform_int_distribution<int> coef(-10, 10), deg(1, 8);
            for (int trial = 0; trial < 200 && ok; ++trial) {
                int d = deg(rng);
                std::vector<Integer> c(static_cast<size_t>(d) + 1);
                for (int i = 0; i < d; ++i) c[static_cast<size_t>(i)] = coef(rng);
                c[static_cast<size_t>(d)] = 1;
                IntPoly f(c);
                ok = charPolyInt(companion(f)) == f;
                if (!ok) detail = "char-poly/companion mismatch for " + f.str();
            }
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        report(7, "100 random words preserve each form; witnesses unipotent; 200 round trips", ok,
               detail);
    }

    // 8. scalar shift identity and the shifted example pair
    {
        bool ok = true;
        std::string detail;
        try {
            std::mt19937_64 rng(424243);
            int done = 0;
            while (done < 50 && ok) {
                std::vector<Rational> entries;
                int orbits = 1 + static_cast<int>(rng() % 3);
                for (int k = 0; k < orbits; ++k) {
                    unsigned d = 1 + static_cast<unsigned>(rng() % 12);
                    for (unsigned r = 0; r < d; ++r)
                        if (std::gcd(r, d) == 1) entries.emplace_back(Rational(r) / d);
                }
                ParameterTuple t(entries);
                IntPoly f = polyFromParameters(t);
                ParameterTuple s = scalarShift({t, t}, Rational(1, 2)).alpha;
                IntPoly fs = polyFromParameters(s);
                IntPoly expect = f.reflect();  // f(-x), then (-1)^n
                if (f.degree() % 2 == 1) expect = -expect;
                ok = fs == expect;
                ++done;
            }
            if (!ok) detail = "shift-by-1/2 polynomial identity failed";

            CliResult shiftOut = runCli(cli, "shift 0,0,1/3,2/3 1/2,1/2,1/4,3/4 1/2");
            ok = ok && shiftOut.exitCode == 0;
            std::string alphaLine, betaLine;
            std::istringstream lines(shiftOut.output);
            std::string line;
            while (std::getline(lines, line)) {
                auto eq = line.rfind("= ");
                if (line.rfind("alpha", 0) == 0 && eq != std::string::npos)
                    alphaLine = line.substr(eq + 2);
                if (line.rfind("beta", 0) == 0 && eq != std::string::npos)
                    betaLine = line.substr(eq + 2);
            }
            if (alphaLine.empty() || betaLine.empty()) {
                ok = false;
                detail = "could not parse shift output";
            } else {
                ParameterPair shifted{ParameterTuple::parse(alphaLine),
                                      ParameterTuple::parse(betaLine)};
                ParameterPair example7{ParameterTuple::parse("0,0,1/4,3/4"),
                                       ParameterTuple::parse("1/2,1/2,1/6,5/6")};
                ok = ok && pairsMatchUnordered(shifted, example7);
                if (!ok && detail.empty()) detail = "shifted pair is not the expected example";
            }
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        report(8, "50 random shift identities; CLI shift lands on the companion example pair", ok,
               detail);
    }

    // 9. search smoke test at default bounds
    {
        auto t0 = Clock::now();
        bool ok = true;
        std::string detail;
        try {
            std::string out = "/tmp/hgm_acceptance_search.cert.json";
            std::remove(out.c_str());
            CliResult search = runCli(
                cli, "search 0,0,1/3,2/3 1/2,1/2,1/4,3/4 --max-len 12 --max-bits 256 --rounds 2"
                     " --basis-change " + fixturesDir + "/theorem1.P.txt -o " + out);
            ok = search.exitCode == 0;
            if (!ok) detail = "search exit code " + std::to_string(search.exitCode);
            if (ok) {
                Certificate cert = loadCertificate(out);
                bool highestClaimed = false;
                for (const auto& c : cert.claims)
                    if (c.root == RootLabel{2, 0}) highestClaimed = true;
                ok = highestClaimed;
                if (!ok) detail = "no claim for the highest root chi1^2";
            }
            if (ok) {
                CliResult verify = runCli(cli, "verify " + out);
                ok = verify.exitCode == 0 &&
                     verify.output.find("CertificateValid") != std::string::npos;
                if (!ok) detail = "emitted certificate failed verification";
            }
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        double dt = seconds(t0);
        ok = ok && dt < 600.0;
        report(9, "default-bound search emits a verifying certificate claiming chi1^2", ok,
               detail.empty() ? "elapsed " + std::to_string(dt) + "s, budget 600s" : detail);
    }

    // 10. negative controls through the CLI
    {
        bool ok = true;
        std::string detail;
        try {
            Certificate base = loadCertificate(fixturesDir + "/theorem1.cert.json");

            auto check = [&](Certificate tampered, const std::string& label) {
                std::string path = "/tmp/hgm_acceptance_tampered.cert.json";
                saveCertificate(tampered, path);
                CliResult r = runCli(cli, "verify " + path);
                bool good = r.exitCode == 1 && r.output.find("ClaimFailed") != std::string::npos;
                if (!good && detail.empty())
                    detail = label + ": exit " + std::to_string(r.exitCode);
                return good;
            };

            Certificate wrongTarget = base;
            wrongTarget.claims[0].name = "E1";  // wrong claim target
            ok = check(wrongTarget, "wrong-target") && ok;

            Certificate coupling = base;  // break the coupled entries of E9
            for (auto& d : coupling.slp.defs)
                if (d.name == "E9") d.word = parseWord("E7^160 E8 E6^-18");
            ok = check(coupling, "broken-coupling") && ok;

            Certificate rawWord = base;  // a matrix that does not preserve the standard form
            rawWord.claims[0].name = "G";
            ok = check(rawWord, "non-isometry") && ok;
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        report(10, "tampered certificates all fail with ClaimFailed and exit code 1", ok, detail);
    }

    std::cout << (failures == 0 ? "acceptance: all criteria passed"
                                : "acceptance: " + std::to_string(failures) + " criterion(s) failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
