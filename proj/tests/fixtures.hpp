// Copyright 2026 The distbackbone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <sstream>
#include <string>

#include "distbackbone/distbackbone.hpp"

namespace fixtures {

// Five-node toy graph shared by many tests.
inline constexpr const char* kToy =
    "i j 9\n"
    "i k 9\n"
    "j k 9\n"
    "i l 4\n"
    "l k 4\n"
    "j m 1\n"
    "m k 1\n";

inline distbackbone::DistanceGraph parse(const std::string& text) {
  std::istringstream in(text);
  return distbackbone::parse_edge_list(in).graph;
}

inline distbackbone::DistanceGraph toy() { return parse(kToy); }

inline distbackbone::NodeId id(const distbackbone::DistanceGraph& g, const std::string& label) {
  return *g.find(label);
}

inline distbackbone::EdgeKey key(const distbackbone::DistanceGraph& g, const std::string& a, const std::string& b) {
  return distbackbone::EdgeKey::of(id(g, a), id(g, b));
}

}  // namespace fixtures
