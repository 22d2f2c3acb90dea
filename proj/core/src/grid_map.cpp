#include "lavatube/grid_map.hpp"

#include <deque>
#include <sstream>

#include "lavatube/errors.hpp"
#include "lavatube/rng.hpp"

namespace lavatube::explore {

GridMap::GridMap(int width, int height, std::vector<Cell> cells, double resolution_m)
    : width_(width), height_(height), resolution_(resolution_m), cells_(std::move(cells)) {
  if (width_ < 1 || height_ < 1) throw DomainError("map dimensions must be >= 1");
  if (!(resolution_ > 0.0)) throw DomainError("map resolution must be > 0");
  if (cells_.size() != static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_))
    throw DomainError("cell count does not match map dimensions");
  std::size_t entrances = 0;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i] == Cell::Entrance) {
      ++entrances;
      entrance_ = pos(i);
    }
  }
  if (entrances != 1) throw DomainError("map must contain exactly one entrance");
  explored_.assign(cells_.size(), 0);
  mark_explored(entrance_);
}

GridMap GridMap::parse(std::string_view text, double resolution_m) {
  std::vector<Cell> cells;
  int width = -1, height = 0;
  std::size_t line_start = 0;
  while (line_start < text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string_view line = text.substr(line_start, line_end - line_start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    line_start = line_end + 1;
    if (line.empty()) continue;
    if (width < 0) width = static_cast<int>(line.size());
    if (static_cast<int>(line.size()) != width)
      throw DomainError("map row " + std::to_string(height + 1) + " has inconsistent width");
    for (char c : line) {
      switch (c) {
      case '.': cells.push_back(Cell::Free); break;
      case '#': cells.push_back(Cell::Obstacle); break;
      case 'E': cells.push_back(Cell::Entrance); break;
      default:
        throw DomainError("map row " + std::to_string(height + 1) + ": unexpected character '" +
                          std::string(1, c) + "'");
      }
    }
    ++height;
  }
  if (width < 0) throw DomainError("map text is empty");
  return GridMap(width, height, std::move(cells), resolution_m);
}

std::string GridMap::to_text() const {
  std::string out;
  out.reserve(cells_.size() + static_cast<std::size_t>(height_));
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    out.push_back(cells_[i] == Cell::Free ? '.' : cells_[i] == Cell::Obstacle ? '#' : 'E');
    if ((i + 1) % static_cast<std::size_t>(width_) == 0) out.push_back('\n');
  }
  return out;
}

void GridMap::mark_explored(CellPos p) {
  const auto i = index(p);
  if (cells_[i] == Cell::Obstacle || explored_[i]) return;
  explored_[i] = 1;
  ++explored_count_;
}

std::vector<CellPos> GridMap::passable_neighbors(CellPos p) const {
  std::vector<CellPos> out;
  out.reserve(4);
  for (CellPos n : {CellPos{p.row - 1, p.col}, CellPos{p.row, p.col - 1}, CellPos{p.row, p.col + 1},
                    CellPos{p.row + 1, p.col}})
    if (passable(n)) out.push_back(n);
  return out;
}

GridMap generate_tube(std::uint64_t seed, int width, int height, double obstacle_density,
                      double resolution_m) {
  if (width < 1 || height < 1) throw DomainError("map dimensions must be >= 1");
  if (!(obstacle_density >= 0.0 && obstacle_density < 1.0))
    throw DomainError("obstacle_density outside [0, 1)");

  Rng rng(seed, streams::kTubeMap);
  const int entrance_col = static_cast<int>(rng.below(static_cast<std::uint64_t>(width)));
  std::vector<Cell> cells(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  for (auto& c : cells) c = rng.uniform() < obstacle_density ? Cell::Obstacle : Cell::Free;

  auto at = [&](int r, int c) -> Cell& {
    return cells[static_cast<std::size_t>(r) * static_cast<std::size_t>(width) + static_cast<std::size_t>(c)];
  };
  at(0, entrance_col) = Cell::Entrance;
  if (height > 1)
    at(1, entrance_col) = Cell::Free;
  else if (width > 1)
    at(0, entrance_col + 1 < width ? entrance_col + 1 : entrance_col - 1) = Cell::Free;
  return GridMap(width, height, std::move(cells), resolution_m);
}

std::vector<int> bfs_distances(const GridMap& map, CellPos from, bool explored_only) {
  std::vector<int> dist(map.size(), kUnreachable);
  if (!map.passable(from)) return dist;
  std::deque<CellPos> frontier{from};
  dist[map.index(from)] = 0;
  while (!frontier.empty()) {
    const CellPos p = frontier.front();
    frontier.pop_front();
    const int d = dist[map.index(p)];
    for (CellPos n : map.passable_neighbors(p)) {
      const auto i = map.index(n);
      if (dist[i] != kUnreachable) continue;
      if (explored_only && !map.explored(n)) continue;
      dist[i] = d + 1;
      frontier.push_back(n);
    }
  }
  return dist;
}

std::size_t reachable_cell_count(const GridMap& map) {
  const auto dist = bfs_distances(map, map.entrance(), false);
  std::size_t n = 0;
  for (int d : dist) n += d != kUnreachable;
  return n;
}

} // namespace lavatube::explore
