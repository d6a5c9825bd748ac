#pragma once

#include <iosfwd>

namespace smartreview::cli {

// Exit codes: 0 success, 1 validation or usage error, 2 I/O error.
// The data directory comes from --data-dir, else SMARTREVIEW_DATA_DIR, else
// ./smartreview-data.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace smartreview::cli
