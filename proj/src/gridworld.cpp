#include "rml/gridworld.hpp"

#include <fstream>
#include <sstream>

namespace rml {

GridMap load_map(std::istream& in) {
    GridMap map;
    std::string header;
    if (!std::getline(in, header)) throw InputError("map file is empty");
    std::istringstream hs(header);
    if (!(hs >> map.width >> map.height) || map.width <= 0 || map.height <= 0)
        throw InputError("map header must be 'width height'");
    std::string row;
    while (int(map.rows.size()) < map.height && std::getline(in, row)) {
        if (!row.empty() && row.back() == '\r') row.pop_back();
        if (int(row.size()) != map.width)
            throw InputError("map row " + std::to_string(map.rows.size()) + " has length " +
                             std::to_string(row.size()) + ", expected " + std::to_string(map.width));
        map.rows.push_back(row);
    }
    if (int(map.rows.size()) != map.height) throw InputError("map file has too few rows");
    for (int y = 0; y < map.height; ++y) {
        for (int x = 0; x < map.width; ++x) {
            char c = map.at(x, y);
            if (c == 'S') {
                if (map.start_x >= 0) throw InputError("map has more than one start cell");
                map.start_x = x;
                map.start_y = y;
            } else if (c != '#' && c != '.' && !(c >= 'a' && c <= 'z')) {
                throw InputError(std::string("map has an unknown cell character '") + c + "'");
            }
        }
    }
    if (map.start_x < 0) throw InputError("map has no start cell 'S'");
    return map;
}

GridMap load_map_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open map file: " + path);
    try {
        return load_map(in);
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

int grid_state_id(const GridMap& map, int x, int y) {
    if (!map.in_bounds(x, y) || map.wall(x, y)) throw InputError("cell is not a state");
    int id = 0;
    for (int yy = 0; yy < map.height; ++yy)
        for (int xx = 0; xx < map.width; ++xx) {
            if (yy == y && xx == x) return id;
            if (!map.wall(xx, yy)) ++id;
        }
    throw InputError("cell is not a state");
}

std::shared_ptr<TabularMdp> grid_mdp(const GridMap& map, const PropSet& props, double gamma) {
    std::vector<int> id(std::size_t(map.width) * map.height, -1);
    int n = 0;
    for (int y = 0; y < map.height; ++y)
        for (int x = 0; x < map.width; ++x)
            if (!map.wall(x, y)) id[std::size_t(y) * map.width + x] = n++;

    auto cell_label = [&](int x, int y) -> Label {
        char c = map.at(x, y);
        if (c >= 'a' && c <= 'z') return props.bit(std::string(1, c));
        return 0;
    };

    auto mdp = std::make_shared<TabularMdp>(props, n, 4,
                                            id[std::size_t(map.start_y) * map.width + map.start_x],
                                            gamma);

    // Actions 0..3 = N, S, E, W; lateral slip directions are the two moves
    // perpendicular to the intended one.
    const int dx[4] = {0, 0, 1, -1};
    const int dy[4] = {-1, 1, 0, 0};
    const int lat[4][2] = {{2, 3}, {2, 3}, {0, 1}, {0, 1}};

    for (int y = 0; y < map.height; ++y) {
        for (int x = 0; x < map.width; ++x) {
            if (map.wall(x, y)) continue;
            int s = id[std::size_t(y) * map.width + x];
            for (int a = 0; a < 4; ++a) {
                int dirs[3] = {a, lat[a][0], lat[a][1]};
                double probs[3] = {0.9, 0.05, 0.05};
                for (int k = 0; k < 3; ++k) {
                    int nx = x + dx[dirs[k]];
                    int ny = y + dy[dirs[k]];
                    if (!map.in_bounds(nx, ny) || map.wall(nx, ny)) {
                        nx = x;
                        ny = y;
                    }
                    mdp->add_transition(s, a, id[std::size_t(ny) * map.width + nx], probs[k],
                                        cell_label(nx, ny));
                }
            }
        }
    }
    return mdp;
}

} // namespace rml
