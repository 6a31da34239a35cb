#pragma once

#include <cstdint>
#include <vector>

namespace evoarena {

struct Pos {
  int x = 0;
  int y = 0;
  bool operator==(const Pos&) const = default;
};

// A straight wall segment. Vertical runs grow toward larger y (south),
// horizontal runs toward larger x (east).
struct WallRun {
  int x = 0;
  int y = 0;
  int length = 1;
  bool vertical = true;
  bool operator==(const WallRun&) const = default;
};

// The default layout: 14x14 grid with two vertical 7-cell walls, one at
// column 4 (rows 3..9) and one at column 9 (rows 4..10). 182 free cells.
struct ArenaConfig {
  int width = 14;
  int height = 14;
  std::vector<WallRun> walls = {{4, 3, 7, true}, {9, 4, 7, true}};
  bool operator==(const ArenaConfig&) const = default;
};

// Immutable grid with wall occupancy. Coordinates are (x, y) with x growing
// east and y growing south; row 0 is the top of the rendered grid.
class Arena {
 public:
  int width() const { return width_; }
  int height() const { return height_; }
  int cell_count() const { return width_ * height_; }
  int wall_count() const { return wall_count_; }
  int free_cell_count() const { return cell_count() - wall_count_; }

  bool in_bounds(Pos p) const { return p.x >= 0 && p.x < width_ && p.y >= 0 && p.y < height_; }
  bool is_wall(Pos p) const { return wall_[index(p)] != 0; }
  bool passable(Pos p) const { return in_bounds(p) && !is_wall(p); }

  int index(Pos p) const { return p.y * width_ + p.x; }

  // Free cells in row-major order (y outer, x inner).
  std::vector<Pos> free_cells() const;

 private:
  friend Arena build_arena(const ArenaConfig&);
  Arena(int width, int height) : width_(width), height_(height), wall_(static_cast<std::size_t>(width * height), 0) {}

  int width_;
  int height_;
  int wall_count_ = 0;
  std::vector<std::uint8_t> wall_;
};

// Throws ConfigError on non-positive dimensions, out-of-bounds walls, or
// overlapping wall cells.
Arena build_arena(const ArenaConfig& config = {});

}  // namespace evoarena
