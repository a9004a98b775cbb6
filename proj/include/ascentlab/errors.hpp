#pragma once

#include <stdexcept>
#include <string>

namespace ascentlab {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- input validation -------------------------------------------------------

struct EmptyWordError : Error {
    EmptyWordError() : Error("empty word") {}
    explicit EmptyWordError(const std::string& what) : Error(what) {}
};

struct InvalidSequenceError : Error {
    using Error::Error;
};

struct InvalidPatternError : Error {
    using Error::Error;
};

// --- enumeration budgets ----------------------------------------------------

struct BudgetExceededError : Error {
    // Largest n whose count completed before the budget fired (0 = none).
    int completed_n = 0;
    explicit BudgetExceededError(const std::string& what, int completed = 0)
        : Error(what), completed_n(completed) {}
};

// --- generating trees -------------------------------------------------------

struct UndefinedSuccessorError : Error {
    using Error::Error;
};

struct NotFiniteError : Error {
    using Error::Error;
};

// Rule-file syntax error with 1-based location.
struct RuleParseError : Error {
    int line = 0;
    int column = 0;
    RuleParseError(const std::string& what, int line_, int column_)
        : Error(what + " (line " + std::to_string(line_) + ", column " +
                std::to_string(column_) + ")"),
          line(line_), column(column_) {}
};

// --- formulas ---------------------------------------------------------------

struct NonUnitConstantError : Error {
    using Error::Error;
};

// --- OEIS client ------------------------------------------------------------

struct TooFewTermsError : Error {
    using Error::Error;
};

struct OfflineModeError : Error {
    OfflineModeError() : Error("network lookups disabled (offline mode)") {}
};

struct NetworkUnavailableError : Error {
    using Error::Error;
};

struct MalformedResponseError : Error {
    using Error::Error;
};

}  // namespace ascentlab
