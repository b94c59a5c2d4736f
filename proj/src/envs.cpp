#include "rml/envs.hpp"

#include <cstdlib>

#include "rml/gridworld.hpp"

namespace rml {

TaskSpec::TaskSpec(std::string id, RewardMachine truth, int eplength, int batch_n)
    : id(std::move(id)), truth(std::move(truth)), eplength(eplength), batch_n(batch_n) {
    if (this->eplength <= 0) throw InputError("eplength must be positive");
    if (this->batch_n <= 0) throw InputError("batch period must be positive");
    done_states_ = absorbing_zero_states(this->truth);
}

std::string data_dir() {
    if (const char* env = std::getenv("RMLEARN_DATA_DIR")) return env;
    return RMLEARN_SOURCE_DATA_DIR;
}

namespace {

RewardMachine task_machine(const std::string& name) {
    return load_machine_file(data_dir() + "/machines/" + name + ".rm");
}

World grid_world(const std::string& family, const std::string& map_name,
                 const std::vector<std::string>& props, const std::vector<std::string>& tasks,
                 const std::string& machine_prefix, int eplength, int batch_n) {
    GridMap map = load_map_file(data_dir() + "/maps/" + map_name + ".map");
    World w;
    w.mdp = grid_mdp(map, PropSet(props));
    for (const std::string& t : tasks) {
        RewardMachine m = task_machine(machine_prefix + "_" + t);
        if (!(m.universe() == w.mdp->props()))
            throw InputError("machine for " + family + "/" + t + " disagrees on propositions");
        w.tasks.push_back(TaskSpec(family + "/" + t, std::move(m), eplength, batch_n));
    }
    return w;
}

} // namespace

World office_world() {
    return grid_world("office", "office", {"a", "b", "c", "d", "m", "o"},
                      {"2.1", "2.2", "2.3", "2.4"}, "office", 1000, 30);
}

World craft_world() {
    return grid_world("craft", "craft", {"w", "t", "h", "f", "i"},
                      {"3.1", "3.2", "3.3", "3.4"}, "craft", 400, 30);
}

World craft10_world() {
    return grid_world("craft10", "craft10", {"w", "t", "h", "f", "i"},
                      {"3.1", "3.2", "3.3", "3.4"}, "craft", 200, 30);
}

namespace {

// Road network of the driving benchmark. Cells are decision points only:
// intersection approach cells (the J set), landing cells past each
// intersection, lane ends, and the goal B. On a road segment every action
// rolls forward to the next decision point (with a U-turn at lane ends); at
// an approach cell Straight/Left/Right cross the intersection and Stay stays
// put. Horizontal lanes are priority roads, vertical lanes are ordinary.
struct RoadCell {
    int x, y;
    bool approach;       // member of J
    // targets per action Straight/Left/Right; non-approach cells use
    // `straight` for every move action
    int sx, sy, lx, ly, rx, ry;
};

const RoadCell kRoad[] = {
    // eastbound y=7
    {0, 7, false, 1, 7, 0, 0, 0, 0},
    {1, 7, true, 4, 7, 3, 9, 2, 6},
    {4, 7, true, 7, 7, 6, 9, 5, 6},
    {7, 7, false, 10, 7, 0, 0, 0, 0},
    {10, 7, false, 10, 8, 0, 0, 0, 0},
    // westbound y=8
    {10, 8, false, 7, 8, 0, 0, 0, 0},
    {7, 8, true, 4, 8, 5, 6, 6, 9},
    {4, 8, true, 1, 8, 2, 6, 3, 9},
    {1, 8, false, 0, 8, 0, 0, 0, 0},
    {0, 8, false, 0, 7, 0, 0, 0, 0},
    // eastbound y=4
    {0, 4, false, 1, 4, 0, 0, 0, 0},
    {1, 4, true, 4, 4, 3, 6, 2, 3},
    {4, 4, true, 7, 4, 6, 6, 5, 3},
    {7, 4, false, 10, 4, 0, 0, 0, 0},
    {10, 4, false, 10, 4, 0, 0, 0, 0},  // B, absorbing
    // westbound y=5
    {7, 5, true, 4, 5, 5, 3, 6, 6},
    {4, 5, true, 1, 5, 2, 3, 3, 6},
    {1, 5, false, 0, 5, 0, 0, 0, 0},
    {0, 5, false, 0, 4, 0, 0, 0, 0},
    // southbound x=2
    {2, 11, false, 2, 9, 0, 0, 0, 0},
    {2, 9, true, 2, 6, 4, 7, 1, 8},
    {2, 6, true, 2, 3, 4, 4, 1, 5},
    {2, 3, false, 2, 0, 0, 0, 0, 0},
    {2, 0, false, 3, 0, 0, 0, 0, 0},
    // northbound x=3
    {3, 0, false, 3, 3, 0, 0, 0, 0},
    {3, 3, true, 3, 6, 1, 5, 4, 4},
    {3, 6, true, 3, 9, 1, 8, 4, 7},
    {3, 9, false, 3, 11, 0, 0, 0, 0},
    {3, 11, false, 2, 11, 0, 0, 0, 0},
    // southbound x=5
    {5, 11, false, 5, 9, 0, 0, 0, 0},
    {5, 9, true, 5, 6, 7, 7, 4, 8},
    {5, 6, true, 5, 3, 7, 4, 4, 5},
    {5, 3, false, 5, 0, 0, 0, 0, 0},
    {5, 0, false, 6, 0, 0, 0, 0, 0},
    // northbound x=6
    {6, 0, false, 6, 3, 0, 0, 0, 0},
    {6, 3, true, 6, 6, 4, 5, 7, 4},
    {6, 6, true, 6, 9, 4, 8, 7, 7},
    {6, 9, false, 6, 11, 0, 0, 0, 0},
    {6, 11, false, 5, 11, 0, 0, 0, 0},
};

const int kRoadCells = int(sizeof kRoad / sizeof kRoad[0]);
const int kStartX = 1, kStartY = 7;
const int kGoalX = 10, kGoalY = 4;

bool priority_cell(int x, int y) {
    (void)x;
    return y == 4 || y == 5 || y == 7 || y == 8;
}

int road_index(int x, int y) {
    for (int i = 0; i < kRoadCells; ++i)
        if (kRoad[i].x == x && kRoad[i].y == y) return i;
    throw InputError("road cell (" + std::to_string(x) + "," + std::to_string(y) + ") is unknown");
}

class RoadMdp : public TabularMdp {
public:
    RoadMdp(PropSet props, int initial) : TabularMdp(std::move(props), kRoadCells, 4, initial, 0.9) {}
    std::string state_name(int s) const override {
        return "(" + std::to_string(kRoad[s].x) + "," + std::to_string(kRoad[s].y) + ")";
    }
    std::string action_name(int a) const override {
        static const char* names[] = {"Straight", "Left", "Right", "Stay"};
        return names[a];
    }
};

} // namespace

World traffic_world() {
    PropSet props({"sp", "pr", "B"});
    Label sp_bit = props.bit("sp");
    Label pr_bit = props.bit("pr");
    Label b_bit = props.bit("B");

    auto mdp = std::make_shared<RoadMdp>(props, road_index(kStartX, kStartY));
    auto label_of = [&](const RoadCell& from, int action, const RoadCell& to) {
        Label l = 0;
        if (action == 3 && from.approach) l |= sp_bit;
        if (priority_cell(to.x, to.y) && from.approach) l |= pr_bit;
        if (to.x == kGoalX && to.y == kGoalY) l |= b_bit;
        return l;
    };
    for (int i = 0; i < kRoadCells; ++i) {
        const RoadCell& c = kRoad[i];
        for (int a = 0; a < 4; ++a) {
            int tx, ty;
            if (c.approach) {
                if (a == 0) tx = c.sx, ty = c.sy;
                else if (a == 1) tx = c.lx, ty = c.ly;
                else if (a == 2) tx = c.rx, ty = c.ry;
                else tx = c.x, ty = c.y;
            } else {
                tx = c.sx;
                ty = c.sy;
            }
            int j = road_index(tx, ty);
            mdp->add_transition(i, a, j, 1.0, label_of(c, a, kRoad[j]));
        }
    }

    World w;
    w.mdp = mdp;
    RewardMachine truth = task_machine("traffic_truth");
    if (!(truth.universe() == props)) throw InputError("traffic machine disagrees on propositions");
    w.tasks.push_back(TaskSpec("traffic/1", std::move(truth), 100, 100));
    return w;
}

Task find_task(const std::string& id) {
    std::string family = id.substr(0, id.find('/'));
    World w;
    if (family == "office") w = office_world();
    else if (family == "craft") w = craft_world();
    else if (family == "craft10") w = craft10_world();
    else if (family == "traffic") w = traffic_world();
    else throw InputError("unknown task: " + id);
    for (TaskSpec& t : w.tasks)
        if (t.id == id) return Task{w.mdp, std::move(t)};
    throw InputError("unknown task: " + id);
}

std::vector<std::string> all_task_ids() {
    return {"office/2.1", "office/2.2", "office/2.3", "office/2.4",
            "craft/3.1",  "craft/3.2",  "craft/3.3",  "craft/3.4",
            "craft10/3.1", "craft10/3.2", "craft10/3.3", "craft10/3.4",
            "traffic/1"};
}

} // namespace rml
