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

/**
 * @file types.hpp
 * @brief Vocabulary types shared by every hetnoc module.
 */

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hetnoc {

/// Time in picoseconds.
using Picoseconds = std::int64_t;
/// Time in global simulator ticks (one tick = one cycle of the fastest layer).
using Ticks = std::int64_t;

/// Cardinal directions of the 3D mesh. Layer 1 is on top, so Down increases z.
enum class Direction : std::uint8_t { North = 0, East, South, West, Up, Down };

inline constexpr std::array<Direction, 6> kDirections{Direction::North, Direction::East,
                                                      Direction::South, Direction::West,
                                                      Direction::Up,    Direction::Down};

constexpr int index_of(Direction d) noexcept { return static_cast<int>(d); }
constexpr bool is_horizontal(Direction d) noexcept { return index_of(d) < 4; }
constexpr bool is_vertical(Direction d) noexcept { return !is_horizontal(d); }

constexpr Direction opposite(Direction d) noexcept {
  switch (d) {
    case Direction::North: return Direction::South;
    case Direction::East: return Direction::West;
    case Direction::South: return Direction::North;
    case Direction::West: return Direction::East;
    case Direction::Up: return Direction::Down;
    case Direction::Down: return Direction::Up;
  }
  return d;
}

std::string_view to_string(Direction d) noexcept;
/// Parses "north", "n", "east", ... (case-insensitive).
std::optional<Direction> parse_direction(std::string_view s) noexcept;

/// Dense router index assigned layer-major, then row-major.
struct RouterId {
  std::uint32_t value = 0;
  friend constexpr auto operator<=>(RouterId, RouterId) = default;
};

/// Router address on the shared logical grid; z is the 1-based layer index.
struct Address {
  int x = 0;
  int y = 0;
  int z = 1;
  friend constexpr auto operator<=>(const Address&, const Address&) = default;
};

std::string to_string(const Address& a);

/// Physical router location.
struct Position {
  double x_um = 0.0;
  double y_um = 0.0;
  int z = 1;
  friend constexpr bool operator==(const Position&, const Position&) = default;
};

/// Base for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or out-of-domain argument.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A precondition of a model or query function was violated.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The simulator made no progress for the configured watchdog window.
class WatchdogAbort : public Error {
 public:
  using Error::Error;
};

}  // namespace hetnoc

template <>
struct std::hash<hetnoc::RouterId> {
  std::size_t operator()(hetnoc::RouterId r) const noexcept { return r.value; }
};
