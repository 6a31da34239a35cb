#include "evoarena/arena.hpp"

#include <string>

#include "evoarena/errors.hpp"

namespace evoarena {

std::vector<Pos> Arena::free_cells() const {
  std::vector<Pos> cells;
  cells.reserve(static_cast<std::size_t>(free_cell_count()));
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      if (!wall_[static_cast<std::size_t>(y * width_ + x)]) cells.push_back({x, y});
    }
  }
  return cells;
}

Arena build_arena(const ArenaConfig& config) {
  if (config.width < 1 || config.height < 1) {
    throw ConfigError("arena dimensions must be positive");
  }
  Arena arena(config.width, config.height);
  for (const WallRun& run : config.walls) {
    if (run.length < 1) {
      throw ConfigError("wall run length must be positive");
    }
    for (int i = 0; i < run.length; ++i) {
      const Pos cell{run.vertical ? run.x : run.x + i, run.vertical ? run.y + i : run.y};
      if (!arena.in_bounds(cell)) {
        throw ConfigError("wall cell (" + std::to_string(cell.x) + "," + std::to_string(cell.y) +
                          ") is outside the grid");
      }
      auto& mark = arena.wall_[static_cast<std::size_t>(arena.index(cell))];
      if (mark) {
        throw ConfigError("wall cell (" + std::to_string(cell.x) + "," + std::to_string(cell.y) +
                          ") overlaps another wall");
      }
      mark = 1;
      ++arena.wall_count_;
    }
  }
  return arena;
}

}  // namespace evoarena
