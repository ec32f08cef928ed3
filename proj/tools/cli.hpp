#pragma once

#include <ostream>

namespace bpart::cli {

/// Runs one command line. Results go to `out`; diagnostics go to `err` as a
/// JSON envelope {error_kind, message, module}.
/// Exit status: 0 ok, 1 domain/parse/certification/rationality/missing bound,
/// 2 resource/tolerance/bracket.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bpart::cli
