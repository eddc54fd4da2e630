#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cyldisc {

// Exit-code classes used by the CLI: validation -> 1, budget -> 2, internal -> 3.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BudgetError : std::runtime_error {
    BudgetError(const std::string& what, std::uint64_t required, std::uint64_t budget)
        : std::runtime_error(what), required(required), budget(budget) {}
    std::uint64_t required;  // saturated at UINT64_MAX when it overflows
    std::uint64_t budget;
};

struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

struct NotPrimeError : ValidationError {
    using ValidationError::ValidationError;
};
struct NotMonicError : ValidationError {
    using ValidationError::ValidationError;
};
struct NotIrreducibleError : ValidationError {
    using ValidationError::ValidationError;
};
struct AlphaOutOfRangeError : ValidationError {
    using ValidationError::ValidationError;
};

struct BudgetExceededError : BudgetError {
    using BudgetError::BudgetError;
};
struct GridTooLargeError : BudgetError {
    using BudgetError::BudgetError;
};

// Signals a bug: the two determinacy criteria can never legitimately differ.
struct MethodDisagreementError : InternalError {
    using InternalError::InternalError;
};

}  // namespace cyldisc
