#ifndef HGM_CERTIFICATE_HPP
#define HGM_CERTIFICATE_HPP

#include <optional>
#include <string>
#include <vector>

#include "hgm/slp.hpp"
#include "hgm/standard_form.hpp"

namespace hgm {

/// Serializable arithmeticity witness: a parameter pair, an optional change of
/// basis to antidiagonal shape, a straight-line program over the generators,
/// and claims that named definitions are nontrivial root-group elements.
struct Certificate {
    ParameterPair params;
    std::optional<QMatrix> P;  // computed by standardizeForm when absent
    SLP slp;
    struct Claim {
        std::string name;
        RootLabel root;
    };
    std::vector<Claim> claims;
    std::vector<std::string> comments;
};

Certificate parseCertificate(const std::string& jsonText);
std::string serializeCertificate(const Certificate& cert);
Certificate loadCertificate(const std::string& path);
void saveCertificate(const Certificate& cert, const std::string& path);

enum class CertStatus { Valid, ClaimFailed, EvaluationError };

inline const char* certStatusName(CertStatus s) {
    switch (s) {
        case CertStatus::Valid: return "CertificateValid";
        case CertStatus::ClaimFailed: return "ClaimFailed";
        default: return "EvaluationError";
    }
}

struct ClaimReport {
    std::string name;
    RootLabel root;
    Membership got = Membership::NotMember;
    bool pass = false;
    std::string detail;
    QMatrix value;
};

struct Verdict {
    CertStatus status = CertStatus::EvaluationError;
    std::string failing;  // first failing claim, or a short failure tag
    std::vector<ClaimReport> claims;
    std::vector<std::string> assumptions;
    std::vector<std::string> notes;
};

struct VerifyOptions {
    int heightBound = 10;  // isotropic search bound when no P is supplied
};

/// Full pipeline: polynomials, presentation, invariant form, basis change,
/// conjugated generators, program evaluation, one membership check per claim.
/// All failures come back inside the verdict.
Verdict verifyCertificate(const Certificate& cert, const VerifyOptions& opts = {});

} // namespace hgm

#endif
