#pragma once

#include <string>

namespace nev {

/// Shortest representation that round-trips to the same double (at most 17
/// significant digits).
std::string format_double(double x);

}  // namespace nev
