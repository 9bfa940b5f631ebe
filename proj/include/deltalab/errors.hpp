#pragma once

#include <stdexcept>
#include <string>

namespace deltalab {

// Domain/validity violations: the caller asked for something outside an
// operation's contract (refused before any computation starts).
struct precondition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Instance too large for the operation's stated brute-force budget.
struct budget_error : std::length_error {
    using std::length_error::length_error;
};

// Unreadable, inconsistent or truncated checkpoint file.
struct checkpoint_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Adaptive quadrature failed to meet its error target; the message carries
// the achieved error.
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace deltalab
