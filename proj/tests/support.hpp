#pragma once

#include <string>
#include <vector>

#include "nccr/io.hpp"

namespace nccr::test {

inline ToricData fixture(const std::string& name) { return io::read_polygon(std::string(NCCR_FIXTURES) + "/" + name + ".json"); }

inline const std::vector<std::string>& reflexive_names() {
  static const std::vector<std::string> names = {"3a", "4a", "4b", "4c", "5a", "5b", "6a", "6b",
                                                 "6c", "6d", "7a", "7b", "8a", "8b", "8c", "9a"};
  return names;
}

inline std::vector<std::string> all_fixtures() {
  std::vector<std::string> r = {"conifold", "c3", "simplicial_2", "simplicial_3", "para_2_1_m1_2", "para_1_0_0_2", "para_2_1_0_1"};
  for (const auto& n : reflexive_names()) r.push_back("refl_" + n);
  return r;
}

inline const std::vector<std::string>& parallelogram_names() {
  static const std::vector<std::string> names = {"para_2_1_m1_2", "para_1_0_0_2", "para_2_1_0_1"};
  return names;
}

}  // namespace nccr::test
