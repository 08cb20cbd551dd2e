#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace rbk::fixtures {

// Embedded copies of every file under fixtures/, keyed by file name.
const std::map<std::string, std::string>& all();

inline const std::string& get(const std::string& name) {
  auto it = all().find(name);
  if (it == all().end()) throw std::out_of_range("no fixture named '" + name + "'");
  return it->second;
}

}  // namespace rbk::fixtures
