#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hierspec::cli {

/// Runs one command line (args excludes the program name). Tables go to
/// `out` unless --output names a file; diagnostics go to `err`.
/// Returns 0 on success, 1 on a domain error or bad usage, 2 when a
/// numerical result could not be certified.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace hierspec::cli
