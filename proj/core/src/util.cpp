#include "evoarena/util.hpp"

#include <charconv>
#include <sstream>
#include <system_error>

namespace evoarena {

std::string fmt_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::vector<std::string> split(const std::string& text, char delim) {
  std::vector<std::string> fields;
  std::istringstream in(text);
  std::string field;
  while (std::getline(in, field, delim)) fields.push_back(field);
  return fields;
}

}  // namespace evoarena
