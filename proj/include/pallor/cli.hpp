#pragma once

#include <string>
#include <vector>

namespace pallor {

// Runs one CLI invocation; `args` excludes the program name. Returns 0 on
// success, 1 on pipeline errors, 2 on usage errors.
int cli_dispatch(const std::vector<std::string>& args);

}  // namespace pallor
