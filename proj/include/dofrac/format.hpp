#pragma once

#include <string>

namespace dofrac {

/// Shortest decimal string that round-trips to the same double (to_chars
/// shortest form). Deterministic across runs; used for CSV and problem-file
/// emission.
std::string format_double(double v);

} // namespace dofrac
