#include "norma/diagnostics.hpp"

#include <sstream>

namespace norma {

std::string Diagnostic::str() const {
  std::ostringstream out;
  out << file << ':' << line << ':' << column << ": error: " << message;
  return out.str();
}

std::string render(const std::vector<Diagnostic>& diagnostics) {
  std::string out;
  for (const auto& d : diagnostics) {
    out += d.str();
    out += '\n';
  }
  return out;
}

}  // namespace norma
