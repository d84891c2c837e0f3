#pragma once

#include <stdexcept>
#include <string>

namespace qqfusion {

// Bad user-supplied data (unsupported algebra, malformed weight, shape
// mismatch). Maps to CLI exit code 1.
struct invalid_input : std::runtime_error {
    explicit invalid_input(const std::string& what) : std::runtime_error(what) {}
};

// A guaranteed algebraic identity failed to hold at runtime (non-exact
// division where the Laurent property applies, a divisibility failure at the
// q = t^{-delta} boundary, disagreeing moment constructions). These are bugs
// or genuine counterexamples, never user errors. Maps to CLI exit code 3.
struct theorem_violation : std::runtime_error {
    explicit theorem_violation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qqfusion
