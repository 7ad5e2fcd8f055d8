#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace treefrac {

/// Input text could not be parsed; `position` is the byte offset of the offending character.
struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

/// A configured cap (element count, term count, enumeration range) would be exceeded.
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Requested range is outside what this build enumerates exactly.
struct OutOfRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A graph operation met a loop where none is allowed.
struct LoopPresent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Trimming a single-block construction empties the graph (m = 1 case).
struct DegenerateTrim : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Iterative eigensolver stalled (eigenvalue gap too small).
struct ConvergenceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace treefrac
