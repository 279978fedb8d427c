#pragma once

#include <iosfwd>
#include <string>

namespace qsearch::cli {

/// Entry point of the qsearch command line tool. Returns the process exit
/// code: 0 on success, 2 on argument errors, 1 on I/O errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Fixed-point text with at least 12 significant digits.
std::string format_real(double x);

}  // namespace qsearch::cli
