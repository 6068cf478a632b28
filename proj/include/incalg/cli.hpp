#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace incalg {

inline constexpr const char* kVersion = "0.1.0";

// args excludes the program name. Exit codes: 0 ok, 1 domain error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace incalg
