#pragma once

#include <iosfwd>

namespace predreg::cli {

/// Entry point shared by the `predreg` executable and the tests.
///
/// Returns 0 on success, 1 for library errors, 2 for usage errors. Failures are
/// reported on `err` as a single line:
/// `error: module=<module> code=<code> message=<text>`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace predreg::cli
