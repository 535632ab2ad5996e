#ifndef SCHURKIT_ERRORS_HPP
#define SCHURKIT_ERRORS_HPP

#include <cstdio>
#include <stdexcept>
#include <string>

namespace schurkit {

/// Scientific formatting for message payloads; std::to_string would render
/// every small residual as "0.000000".
inline std::string format_real(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6e", x);
    return buf;
}

/// Base class of all schurkit domain errors. `kind()` is a stable machine
/// readable tag, `what()` a human readable message.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

struct NotAContraction : Error {
    double sigma_max;
    explicit NotAContraction(double sigma, const std::string& where = "")
        : Error("NotAContraction",
                (where.empty() ? std::string("sigma_max = ") : where + ", sigma_max = ") +
                    format_real(sigma)),
          sigma_max(sigma) {}
};

struct NotPSD : Error {
    double min_eigenvalue;
    explicit NotPSD(double min_eig, const std::string& where = "")
        : Error("NotPSD", (where.empty() ? std::string("min eigenvalue = ")
                                         : where + ", min eigenvalue = ") +
                              format_real(min_eig)),
          min_eigenvalue(min_eig) {}
};

struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& message) : Error("ShapeMismatch", message) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& message)
        : Error("DimensionMismatch", message) {}
};

struct SingularConstantTerm : Error {
    explicit SingularConstantTerm(const std::string& message = "series constant term not invertible")
        : Error("SingularConstantTerm", message) {}
};

struct NonzeroConstantTerm : Error {
    double norm;
    explicit NonzeroConstantTerm(double n)
        : Error("NonzeroConstantTerm", "constant term norm = " + format_real(n)), norm(n) {}
};

struct NotSchurClass : Error {
    int level;
    double sigma_max;
    NotSchurClass(int lvl, double sigma)
        : Error("NotSchurClass", "Toeplitz truncation at level " + std::to_string(lvl) +
                                     " has sigma_max = " + format_real(sigma)),
          level(lvl), sigma_max(sigma) {}
};

struct NotSchurSequence : Error {
    int level;
    explicit NotSchurSequence(int lvl, const std::string& message = "")
        : Error("NotSchurSequence",
                "level " + std::to_string(lvl) + (message.empty() ? "" : ": " + message)),
          level(lvl) {}
};

struct NotVerblunsky : Error {
    int index;
    explicit NotVerblunsky(int j)
        : Error("NotVerblunsky", "|alpha_" + std::to_string(j) + "| >= 1"), index(j) {}
};

struct NotSolvable : Error {
    double sigma_max;
    explicit NotSolvable(double sigma)
        : Error("NotSolvable", "Toeplitz matrix has sigma_max = " + format_real(sigma)),
          sigma_max(sigma) {}
};

struct RouteDisagreement : Error {
    double residual;
    explicit RouteDisagreement(double r, const std::string& where = "")
        : Error("RouteDisagreement",
                (where.empty() ? std::string("residual = ") : where + ", residual = ") +
                    format_real(r)),
          residual(r) {}
};

struct InternalInconsistency : Error {
    explicit InternalInconsistency(const std::string& message)
        : Error("InternalInconsistency", message) {}
};

struct DegenerateDefect : Error {
    explicit DegenerateDefect(const std::string& message) : Error("DegenerateDefect", message) {}
};

struct VerificationFailure : Error {
    double residual;
    explicit VerificationFailure(double r, const std::string& where = "")
        : Error("VerificationFailure",
                (where.empty() ? std::string("residual = ") : where + ", residual = ") +
                    format_real(r)),
          residual(r) {}
};

struct PostconditionFailure : Error {
    explicit PostconditionFailure(const std::string& message)
        : Error("PostconditionFailure", message) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& message) : Error("ParseError", message) {}
};

} // namespace schurkit

#endif
