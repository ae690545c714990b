#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scnf::cli {

/// Runs one command line; args exclude the program name. Returns 0 on
/// success, 2 on usage errors and 1 on domain errors, with a one-line
/// "error: <command>: <message>" written to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string sha256_file(const std::string& path);

}  // namespace scnf::cli
