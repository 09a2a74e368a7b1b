#pragma once

#include <string>

namespace topophase {

// Shortest decimal representation that round-trips the exact double.
std::string format_double(double v);

} // namespace topophase
