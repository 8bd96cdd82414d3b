#ifndef CRNBAL_ERRORS_HPP
#define CRNBAL_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace crnbal {

enum class ErrorCode {
    DuplicateSpecies,
    DuplicateComplex,
    DuplicateReaction,
    SelfLoopReaction,
    UnusedComplex,
    UnusedSpecies,
    InvalidComplex,
    InvalidIndex,
    NonPositiveState,
    NotApplicable,
    NotRDK,
    EmptySelection,
    NotAPartition,
    TooLarge,
    NonIntegerComplex,
    DimensionMismatch,
    InvalidKinetics,
    ReferenceNotEquilibrium,
    NoEquilibria,
    NotComplexBalanced,
    ParseError,
    UnknownSpecies,
    MissingKineticsRow,
    NegativeRate,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every analysis error; `code()` identifies the failure class.
class CrnError : public std::runtime_error {
public:
    CrnError(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Parse failures carry the 1-based line and column of the offending token.
class ParseFailure : public CrnError {
public:
    ParseFailure(ErrorCode code, std::size_t line, std::size_t column, const std::string& what)
        : CrnError(code, "line " + std::to_string(line) + ", column " + std::to_string(column) +
                             ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace crnbal

#endif  // CRNBAL_ERRORS_HPP
