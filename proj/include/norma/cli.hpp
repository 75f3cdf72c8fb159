#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace norma {

/// Exit codes: 0 anomaly found, 1 no anomaly, 2 input or validation
/// error, 3 engine error (inconsistent facts, caps, extension limit).
int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace norma
