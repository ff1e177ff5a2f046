#ifndef HGM_ERRORS_HPP
#define HGM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hgm {

// Base class for all domain errors thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct SingularMatrix : Error {
    explicit SingularMatrix(const std::string& msg = "matrix is singular") : Error(msg) {}
};
struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg = "dimension mismatch") : Error(msg) {}
};
struct NotGaloisStable : Error {
    explicit NotGaloisStable(const std::string& msg) : Error(msg) {}
};
struct DegreeMismatch : Error {
    explicit DegreeMismatch(const std::string& msg = "polynomial degrees differ") : Error(msg) {}
};
struct InvalidPair : Error {
    explicit InvalidPair(const std::string& msg) : Error(msg) {}
};
struct NoInvariantForm : Error {
    explicit NoInvariantForm(const std::string& msg = "no nonzero invariant form") : Error(msg) {}
};
struct NonUniqueForm : Error {
    explicit NonUniqueForm(const std::string& msg) : Error(msg) {}
};
struct DependentBasis : Error {
    explicit DependentBasis(const std::string& msg = "orbit vectors are linearly dependent") : Error(msg) {}
};
struct SingularP : Error {
    explicit SingularP(const std::string& msg = "basis-change matrix is singular") : Error(msg) {}
};
struct DegenerateForm : Error {
    explicit DegenerateForm(const std::string& msg = "form is degenerate") : Error(msg) {}
};
struct NonStandardForm : Error {
    explicit NonStandardForm(const std::string& msg = "form is not in antidiagonal shape") : Error(msg) {}
};
struct UnsupportedRoot : Error {
    explicit UnsupportedRoot(const std::string& msg) : Error(msg) {}
};
struct UnboundSymbol : Error {
    explicit UnboundSymbol(const std::string& msg) : Error(msg) {}
};
struct SingularBase : Error {
    explicit SingularBase(const std::string& msg) : Error(msg) {}
};
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

} // namespace hgm

#endif
