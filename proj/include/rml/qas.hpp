#pragma once

#include <cstdint>
#include <vector>

#include "rml/envs.hpp"
#include "rml/qrm.hpp"

namespace rml {

struct QasConfig {
    int eplength = 1000;
    long episode_budget = 1000;
    long max_env_steps = 0;
    QHyper hyper;
    int eval_every = 100;
    int eval_rollouts = 20;
    /// Cut training episodes at the task goal; off by default so step
    /// accounting matches the reward-machine learners it is compared against.
    bool terminate_on_goal = false;
    std::uint64_t seed = 0;
};

struct QasResult {
    std::vector<EvalPoint> curve;
    long episodes = 0;
    long env_steps = 0;
    /// q over the augmented space, indexed (seen_bits * |S| + s) * A + a.
    std::vector<double> q;
};

/// Tabular Q-learning over the environment state augmented with a bit vector
/// of the propositions seen so far this episode. Bits only set, never clear,
/// and reset between episodes; rewards and termination come from the task.
QasResult qas_run(const LabeledMdp& mdp, const TaskSpec& task, const QasConfig& cfg);

} // namespace rml
