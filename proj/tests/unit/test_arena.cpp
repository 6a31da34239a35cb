#include <doctest.h>

#include "evoarena/arena.hpp"
#include "evoarena/errors.hpp"

using namespace evoarena;

TEST_CASE("default arena is 14x14 with two 7-cell walls") {
  const Arena arena = build_arena();
  CHECK(arena.width() == 14);
  CHECK(arena.height() == 14);
  CHECK(arena.wall_count() == 14);
  CHECK(arena.free_cell_count() == 182);
  // Column 4 rows 3..9, column 9 rows 4..10.
  for (int y = 3; y <= 9; ++y) CHECK(arena.is_wall({4, y}));
  for (int y = 4; y <= 10; ++y) CHECK(arena.is_wall({9, y}));
  CHECK_FALSE(arena.is_wall({4, 2}));
  CHECK_FALSE(arena.is_wall({4, 10}));
  CHECK_FALSE(arena.is_wall({9, 3}));
  CHECK_FALSE(arena.is_wall({0, 0}));
}

TEST_CASE("free cell list matches the counters") {
  const Arena arena = build_arena();
  const auto cells = arena.free_cells();
  CHECK(static_cast<int>(cells.size()) == 182);
  for (const Pos p : cells) {
    CHECK(arena.in_bounds(p));
    CHECK_FALSE(arena.is_wall(p));
  }
}

TEST_CASE("passable means in bounds and not a wall") {
  const Arena arena = build_arena();
  CHECK(arena.passable({0, 0}));
  CHECK_FALSE(arena.passable({-1, 0}));
  CHECK_FALSE(arena.passable({14, 0}));
  CHECK_FALSE(arena.passable({0, 14}));
  CHECK_FALSE(arena.passable({4, 3}));
}

TEST_CASE("out-of-bounds walls are a configuration error") {
  ArenaConfig config;
  config.walls = {{20, 0, 1, true}};
  CHECK_THROWS_AS(build_arena(config), ConfigError);

  // Runs past the edge too.
  config.walls = {{13, 10, 7, true}};
  CHECK_THROWS_AS(build_arena(config), ConfigError);
}

TEST_CASE("overlapping walls are a configuration error") {
  ArenaConfig config;
  config.walls = {{4, 3, 7, true}, {2, 5, 7, false}};  // cross at (4, 5)
  CHECK_THROWS_AS(build_arena(config), ConfigError);
}

TEST_CASE("degenerate dimensions are rejected") {
  ArenaConfig config;
  config.width = 0;
  config.walls.clear();
  CHECK_THROWS_AS(build_arena(config), ConfigError);
}

TEST_CASE("custom layouts are honored") {
  ArenaConfig config;
  config.width = 5;
  config.height = 4;
  config.walls = {{1, 1, 3, false}};
  const Arena arena = build_arena(config);
  CHECK(arena.wall_count() == 3);
  CHECK(arena.free_cell_count() == 17);
  CHECK(arena.is_wall({1, 1}));
  CHECK(arena.is_wall({3, 1}));
  CHECK_FALSE(arena.is_wall({4, 1}));
}
