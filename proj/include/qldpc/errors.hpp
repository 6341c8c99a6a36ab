#pragma once

#include <stdexcept>
#include <string>

namespace qldpc {

// Error taxonomy shared by the library and the CLI exit-code mapping.

// Malformed input files (bad Pauli strings, inconsistent lengths, ...).
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Semantically invalid arguments (out-of-range index, unknown family, ...).
struct input_error : std::invalid_argument {
    explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

// An exact routine was asked to run past its search budget.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// A proved invariant failed at runtime; always signals a bug.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace qldpc
