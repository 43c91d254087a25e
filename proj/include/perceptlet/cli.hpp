#pragma once

#include <iosfwd>

namespace perceptlet::cli {

/// Whole CLI behind a testable seam. Exit statuses: 0 success, 1 I/O
/// failure, 2 parse or validation error, 3 dyadic-grid violation.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace perceptlet::cli
