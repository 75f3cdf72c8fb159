#pragma once

#include <optional>
#include <string>
#include <vector>

namespace norma {

/// A position-bearing message produced by the parsers and validators.
struct Diagnostic {
  std::string file;
  int line = 0;
  int column = 0;
  std::string message;

  std::string str() const;
};

std::string render(const std::vector<Diagnostic>& diagnostics);

/// Result of a parse: a value when the input was accepted, diagnostics
/// otherwise. A value is present iff `diagnostics` is empty.
template <class T>
struct Parsed {
  std::optional<T> value;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return value.has_value() && diagnostics.empty(); }
};

}  // namespace norma
