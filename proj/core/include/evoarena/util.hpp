#pragma once

#include <string>
#include <vector>

namespace evoarena {

// Shortest decimal form that parses back to the same double. Keeps CSV
// output both readable and lossless.
std::string fmt_double(double value);

std::vector<std::string> split(const std::string& text, char delim);

}  // namespace evoarena
