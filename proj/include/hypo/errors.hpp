#pragma once
#include <stdexcept>
#include <string>

namespace hypo {

// Bad user-facing input (notation strings, catalog files, CLI values).
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& m) : std::runtime_error(m) {}
};

// Violated mathematical precondition (invalid structure, singular frame, ...).
struct MathError : std::runtime_error {
  explicit MathError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace hypo
