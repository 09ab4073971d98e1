#pragma once

#include <string>

namespace ghbf {

// Shortest decimal text that parses back to exactly `v` ("inf", "nan" for non-finite).
std::string format_real(double v);

}  // namespace ghbf
