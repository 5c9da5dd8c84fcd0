#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fcss {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input: malformed flags, violated preconditions, inconsistent geometry.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Exhaustive search exceeded its node budget.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(std::size_t budget, const std::string& what)
        : Error(what), budget_(budget) {}
    std::size_t budget() const noexcept { return budget_; }

private:
    std::size_t budget_;
};

// Row-span containment failed; `witness` is the offending row index.
class ContainmentError : public ValidationError {
public:
    ContainmentError(std::size_t witness, const std::string& what)
        : ValidationError(what), witness_(witness) {}
    std::size_t witness() const noexcept { return witness_; }

private:
    std::size_t witness_;
};

// An internal cross-check disagreed. Always a bug.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace fcss
