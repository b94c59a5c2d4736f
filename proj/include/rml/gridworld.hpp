#pragma once

#include <iosfwd>
#include <memory>
#include <string>

#include "rml/mdp.hpp"

namespace rml {

/// Character-grid map: '#' wall, '.' empty, 'S' start, lowercase letter =
/// landmark emitting the proposition of that name. (0,0) is the top-left
/// cell; y grows downward.
struct GridMap {
    int width = 0;
    int height = 0;
    std::vector<std::string> rows;
    int start_x = -1;
    int start_y = -1;

    char at(int x, int y) const { return rows[y][x]; }
    bool wall(int x, int y) const { return at(x, y) == '#'; }
    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
};

/// Text format: a `width height` header line, then `height` rows of exactly
/// `width` characters.
GridMap load_map(std::istream& in);
GridMap load_map_file(const std::string& path);

/// Grid MDP over the map's non-wall cells, ids in row-major order. Four
/// actions N/S/E/W; the intended move succeeds with probability 0.9 and slips
/// to each lateral neighbor with probability 0.05; blocked moves stay put.
/// Each transition is labeled with the landmark of the cell it ends in ({}
/// elsewhere). Every landmark letter must name a proposition in `props`.
std::shared_ptr<TabularMdp> grid_mdp(const GridMap& map, const PropSet& props,
                                     double gamma = 0.9);

/// Dense state id of a cell in grid_mdp's numbering.
int grid_state_id(const GridMap& map, int x, int y);

} // namespace rml
