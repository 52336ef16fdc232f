/*
 * Copyright 2026 The hetnoc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "hetnoc/types.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace hetnoc {

std::string_view to_string(Direction d) noexcept {
  switch (d) {
    case Direction::North: return "north";
    case Direction::East: return "east";
    case Direction::South: return "south";
    case Direction::West: return "west";
    case Direction::Up: return "up";
    case Direction::Down: return "down";
  }
  return "?";
}

std::optional<Direction> parse_direction(std::string_view s) noexcept {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (Direction d : kDirections) {
    const auto name = to_string(d);
    if (lower == name || (lower.size() == 1 && lower[0] == name[0])) return d;
  }
  return std::nullopt;
}

std::string to_string(const Address& a) {
  return "(" + std::to_string(a.x) + "," + std::to_string(a.y) + "," + std::to_string(a.z) + ")";
}

}  // namespace hetnoc
