#pragma once

#include <string>

namespace tempcast {

/// Shortest decimal that round-trips to the same double. Locale-independent.
std::string format_number(double value);

/// Fixed notation with `digits` decimals. Locale-independent.
std::string format_fixed(double value, int digits);

}  // namespace tempcast
