#pragma once

#include <string>
#include <vector>

namespace elgin::cli {

// Dispatch one command line.  Returns the process exit code: 0 on success,
// 2 on a validation error (one-line machine-parsable diagnostic on stderr),
// 1 on runtime failure (including failed verify identities).
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

}  // namespace elgin::cli
