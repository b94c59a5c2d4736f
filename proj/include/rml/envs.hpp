#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rml/machine.hpp"
#include "rml/mdp.hpp"
#include "rml/product.hpp"

namespace rml {

/// One benchmark task: a ground-truth machine on some world's MDP plus the
/// episode settings used for it.
struct TaskSpec {
    std::string id;
    RewardMachine truth;
    int eplength = 0;
    int batch_n = 0;

    /// Early-termination rule: a step that pays a nonzero reward and lands in
    /// an absorbing zero-reward machine state ends the episode.
    bool done(Reward r, MachineState v) const { return episode_done(done_states_, r, v); }

    TaskSpec(std::string id, RewardMachine truth, int eplength, int batch_n);

private:
    std::vector<bool> done_states_;
};

struct World {
    std::shared_ptr<const LabeledMdp> mdp;
    std::vector<TaskSpec> tasks;
};

/// Directory holding the bundled map and machine files: $RMLEARN_DATA_DIR if
/// set, else the source tree's data directory.
std::string data_dir();

/// 9x12 grid, landmarks {a,b,c,d,m,o}, tasks office/2.1 .. office/2.4,
/// eplength 1000, N = 30.
World office_world();
/// 21x21 grid, landmarks {w,t,h,f,i}, tasks craft/3.1 .. craft/3.4,
/// eplength 400, N = 30.
World craft_world();
/// Reduced 10x10 craft map with the same four machines, tasks
/// craft10/3.1 .. craft10/3.4, eplength 200, N = 30.
World craft10_world();
/// Deterministic road network, labels {sp,pr,B}, task traffic/1,
/// eplength 100, N = 100.
World traffic_world();

struct Task {
    std::shared_ptr<const LabeledMdp> mdp;
    TaskSpec spec;
};

/// Look up "office/2.1", "craft/3.2", "craft10/3.2", "traffic/1", ...
/// Throws InputError on unknown ids.
Task find_task(const std::string& id);
std::vector<std::string> all_task_ids();

} // namespace rml
