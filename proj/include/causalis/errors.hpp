#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace causalis {

enum class ErrorCode {
    SyntaxError,
    UnknownVariable,
    RangeViolation,
    DuplicateVariable,
    DuplicateInterventionTarget,
    CyclicModel,
    PartialEquation,
    InvalidModel,
    SearchBudgetExceeded,
    EmptyEpistemicState,
    DisjunctiveCandidate,
    ZeroProbabilityCandidate,
    MissingWeights,
    InconsistentPrior,
    CoreNotExplanation,
    EmptyHypothesisSet,
    VariableMismatch,
    UsageError,
};

const char* error_code_name(ErrorCode code);

struct SourcePos {
    int line = 0;  // 1-based
    int column = 0;
};

/// Every failure surfaced by the library. `pos` is set for parse errors,
/// `budget_*` for SearchBudgetExceeded.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}
    Error(ErrorCode code, std::string message, SourcePos pos)
        : std::runtime_error(std::move(message)), code_(code), pos_(pos) {}

    ErrorCode code() const { return code_; }
    const std::optional<SourcePos>& pos() const { return pos_; }

    std::uint64_t budget_limit = 0;
    std::uint64_t budget_used = 0;

private:
    ErrorCode code_;
    std::optional<SourcePos> pos_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

[[noreturn]] inline void raise_at(ErrorCode code, const std::string& message, SourcePos pos) {
    throw Error(code, message + " (line " + std::to_string(pos.line) + ", column " +
                          std::to_string(pos.column) + ")",
                pos);
}

}  // namespace causalis
