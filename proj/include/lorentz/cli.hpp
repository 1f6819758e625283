#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lorentz {

/// Runs one CLI invocation. Exit codes: 0 success or verdict-yes,
/// 1 verdict-no or refuted, 2 numeric failure, 3 usage error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lorentz
