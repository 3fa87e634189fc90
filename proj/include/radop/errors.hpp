#pragma once

#include <stdexcept>
#include <string>

namespace radop {

// Exit-code families used by the CLI: 1 parse, 2 precondition, 3 numeric.
enum class ErrorCode : int {
    Parse = 1,
    Precondition = 2,
    Numeric = 3,
    Verification = 4,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error(ErrorCode::Parse, w) {}
};

struct PreconditionError : Error {
    explicit PreconditionError(const std::string& w) : Error(ErrorCode::Precondition, w) {}
};

struct DimensionMismatch : PreconditionError {
    explicit DimensionMismatch(const std::string& w) : PreconditionError(w) {}
};
struct NotMember : PreconditionError {
    explicit NotMember(const std::string& w) : PreconditionError(w) {}
};
struct NotAllowable : PreconditionError {
    explicit NotAllowable(const std::string& w) : PreconditionError(w) {}
};
struct NotUnimodular : PreconditionError {
    explicit NotUnimodular(const std::string& w) : PreconditionError(w) {}
};
struct OutsideDomain : PreconditionError {
    explicit OutsideDomain(const std::string& w) : PreconditionError(w) {}
};
struct OutsideTildeDomain : PreconditionError {
    explicit OutsideTildeDomain(const std::string& w) : PreconditionError(w) {}
};
struct SpaceMismatch : PreconditionError {
    explicit SpaceMismatch(const std::string& w) : PreconditionError(w) {}
};
struct IncompatibleIndexSets : PreconditionError {
    explicit IncompatibleIndexSets(const std::string& w) : PreconditionError(w) {}
};
struct OutOfRange : PreconditionError {
    explicit OutOfRange(const std::string& w) : PreconditionError(w) {}
};

struct NumericError : Error {
    explicit NumericError(const std::string& w) : Error(ErrorCode::Numeric, w) {}
};

struct BudgetExhausted : NumericError {
    explicit BudgetExhausted(const std::string& w) : NumericError(w) {}
};
struct NonFinite : NumericError {
    explicit NonFinite(const std::string& w) : NumericError(w) {}
};
struct NoConvergence : NumericError {
    explicit NoConvergence(const std::string& w) : NumericError(w) {}
};
struct UndecidableFiniteness : NumericError {
    explicit UndecidableFiniteness(const std::string& w) : NumericError(w) {}
};
struct QuadratureFailure : NumericError {
    explicit QuadratureFailure(const std::string& w) : NumericError(w) {}
};
struct ResolutionExceeded : NumericError {
    explicit ResolutionExceeded(const std::string& w) : NumericError(w) {}
};
struct UnboundedSymbol : NumericError {
    explicit UnboundedSymbol(const std::string& w) : NumericError(w) {}
};

} // namespace radop
