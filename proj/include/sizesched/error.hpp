#pragma once

#include <stdexcept>
#include <string>

namespace sizesched {

/// A caller supplied an out-of-domain parameter (negative sigma, zero shape, ...).
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A caller or policy broke an interface contract (bad allocation, unknown job, time going backwards).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Internal bookkeeping drifted past its tolerance.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Trace input could not be parsed. Carries the 1-based line number (0 when not line specific).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what)
        , line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace sizesched
