#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lavatube::explore {

enum class Cell : std::uint8_t { Free, Obstacle, Entrance };

struct CellPos {
  int row = 0;
  int col = 0;
  auto operator<=>(const CellPos&) const = default;
};

/// Occupancy grid of a lava tube plus the shared map of what the swarm has
/// sensed so far. Exactly one Entrance cell, which starts explored. Only
/// passable cells (Free or Entrance) are ever marked explored.
class GridMap {
public:
  /// Throws DomainError on bad dimensions or entrance count.
  GridMap(int width, int height, std::vector<Cell> cells, double resolution_m = 1.0);

  /// Plain-text grid: '.' free, '#' obstacle, 'E' entrance, one row per line.
  static GridMap parse(std::string_view text, double resolution_m = 1.0);
  std::string to_text() const;

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  double resolution() const noexcept { return resolution_; }
  CellPos entrance() const noexcept { return entrance_; }
  std::size_t size() const noexcept { return cells_.size(); }

  bool in_bounds(CellPos p) const noexcept {
    return p.row >= 0 && p.col >= 0 && p.row < height_ && p.col < width_;
  }
  std::size_t index(CellPos p) const noexcept {
    return static_cast<std::size_t>(p.row) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(p.col);
  }
  CellPos pos(std::size_t idx) const noexcept {
    return {static_cast<int>(idx / static_cast<std::size_t>(width_)),
            static_cast<int>(idx % static_cast<std::size_t>(width_))};
  }
  Cell at(CellPos p) const { return cells_[index(p)]; }
  bool passable(CellPos p) const noexcept { return in_bounds(p) && cells_[index(p)] != Cell::Obstacle; }

  bool explored(CellPos p) const { return explored_[index(p)] != 0; }
  /// No-op for obstacles.
  void mark_explored(CellPos p);
  std::size_t explored_count() const noexcept { return explored_count_; }
  const std::vector<std::uint8_t>& explored_mask() const noexcept { return explored_; }
  const std::vector<Cell>& cells() const noexcept { return cells_; }

  /// In-bounds passable 4-neighbours in N, W, E, S order.
  std::vector<CellPos> passable_neighbors(CellPos p) const;

  bool operator==(const GridMap&) const = default;

private:
  int width_ = 0;
  int height_ = 0;
  double resolution_ = 1.0;
  std::vector<Cell> cells_;
  std::vector<std::uint8_t> explored_;
  std::size_t explored_count_ = 0;
  CellPos entrance_{};
};

/// Seeded procedural tube. Cells are obstacles with probability
/// `obstacle_density`; the entrance sits on the top row and always has at
/// least one free neighbour when the map has more than one cell.
GridMap generate_tube(std::uint64_t seed, int width, int height, double obstacle_density,
                      double resolution_m = 1.0);

inline constexpr int kUnreachable = -1;

/// 4-connected BFS hop counts from `from` over passable cells, optionally
/// restricted to cells already explored.
std::vector<int> bfs_distances(const GridMap& map, CellPos from, bool explored_only);

/// Passable cells connected to the entrance (ground truth).
std::size_t reachable_cell_count(const GridMap& map);

} // namespace lavatube::explore
