#pragma once

#include "arena/bayes.h"
#include "arena/shape.h"
#include "arena/simulator.h"

#include <istream>
#include <ostream>
#include <string>

namespace arena::cli {

/// "m,n" -> ArenaShape. Throws ValidationError.
ArenaShape parse_shape(const std::string& text);

/// Result counts from a history file.
///
/// Default format: one run per line, "wins,losses" of the run's final state.
/// With fifa set, one result code 0..5 per line on a 5-1 arena: code c < 5 is
/// the result (c,1) and code 5 is (5,0). '#' starts a comment; blank lines are
/// skipped. Errors carry the line number.
ResultCounts read_history(std::istream& in, const ArenaShape& shape, bool fifa,
                          const std::string& source = "history");

/// Rows of '0'/'1' characters, one per player. '#' lines and blank lines are skipped.
WinLossMatrix read_matrix(std::istream& in, const std::string& source = "matrix");

void write_matrix(std::ostream& out, const WinLossMatrix& matrix);

} // namespace arena::cli
