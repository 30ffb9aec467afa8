#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nodalgen::cli {

// Exit statuses: 0 success, 1 computation error or failed verify, 2 usage error
// (bad flags, malformed profiles, unknown surface kinds, inadmissible degrees).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

} // namespace nodalgen::cli
