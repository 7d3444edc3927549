#pragma once

#include "torusspace/io.hpp"

#include <memory>

namespace fixtures {

using namespace torusspace;

inline PosetRef ref(SimplicialPoset s) { return std::make_shared<const SimplicialPoset>(std::move(s)); }

// 6-vertex real projective plane
inline SimplicialPoset rp2() {
  return SimplicialPoset::from_facets({{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 2, 6},
                                       {2, 3, 5}, {3, 4, 6}, {2, 4, 5}, {3, 5, 6}, {2, 4, 6}});
}

inline CharacteristicMap std_map(const std::string& preset_name) {
  auto s = preset(preset_name);
  return *standard_charmap(preset_name, s);
}

inline int element_with(const SimplicialPoset& s, VertexSet vs) {
  for (std::size_t x = 0; x < s.size(); ++x)
    if (s.vertices(static_cast<int>(x)) == vs) return static_cast<int>(x);
  return -1;
}

}  // namespace fixtures
