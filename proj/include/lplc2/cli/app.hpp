#pragma once

#include <string>
#include <vector>

namespace lplc2::cli {

// Exit status: 0 success, 1 usage error, 2 runtime failure.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);  // args without program name

}  // namespace lplc2::cli
