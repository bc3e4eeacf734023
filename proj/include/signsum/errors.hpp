#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace signsum {

// Input exceeds an enumeration limit (weights count, atom materialization).
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A certified evaluation could not reach the requested enclosure width.
struct precision_exhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A documented precondition of an operation does not hold.
struct contract_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Malformed textual input; line is 1-based, 0 when not applicable.
struct parse_error : std::invalid_argument {
    parse_error(const std::string& what, std::size_t line = 0)
        : std::invalid_argument(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace signsum
