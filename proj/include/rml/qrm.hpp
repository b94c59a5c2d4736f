#pragma once

#include "rml/envs.hpp"
#include "rml/machine.hpp"
#include "rml/mdp.hpp"
#include "rml/rng.hpp"

namespace rml {

struct QHyper {
    double alpha = 0.1;
    double epsilon = 0.1;
    double gamma = 0.9;
};

/// One q-table per machine state, all sized |S| x |A|, plus the learning
/// hyperparameters that drive updates on them.
class QTableSet {
public:
    QTableSet(int machine_states, int mdp_states, int actions, QHyper hyper = {});

    int machine_states() const { return machine_states_; }
    int mdp_states() const { return mdp_states_; }
    int actions() const { return actions_; }
    const QHyper& hyper() const { return hyper_; }

    double at(MachineState v, int s, int a) const { return q_[index(v, s, a)]; }
    double& at(MachineState v, int s, int a) { return q_[index(v, s, a)]; }
    double max_at(MachineState v, int s) const;
    /// Flat view, indexed (v * mdp_states + s) * actions + a.
    const std::vector<double>& raw() const { return q_; }

    /// Copy the whole table of machine state `from` in `src` over this set's
    /// table for `to`.
    void copy_table(MachineState to, const QTableSet& src, MachineState from);

private:
    std::size_t index(MachineState v, int s, int a) const {
        return (std::size_t(v) * mdp_states_ + s) * actions_ + a;
    }

    int machine_states_;
    int mdp_states_;
    int actions_;
    QHyper hyper_;
    std::vector<double> q_;
};

/// With probability epsilon a uniform action, otherwise an argmax of
/// q^v(s, ·) with ties broken uniformly at random. Draws from the rng only
/// what it needs: one double for the explore test, then one bounded integer
/// for a uniform action or a tie-break among more than one maximizer.
int epsilon_greedy(const QTableSet& q, MachineState v, int s, double epsilon, Rng& rng);

enum class RewardSource { Machine, Environment };

struct EpisodeResult {
    Trace trace;
    double total_reward = 0.0;
    int steps = 0;
};

/// One Q-learning episode guided by `machine`: the action comes from q^v,
/// the step reward is either the machine's own output sigma(v, l) or, with
/// RewardSource::Environment, the reward the task's ground truth pays on
/// that label; every step also counterfactually updates q^vhat for all other
/// machine states vhat with the machine's outputs.
///
/// `task` supplies ground-truth rewards and the goal-detection rule and must
/// be non-null with RewardSource::Environment; when null, rewards come from
/// `machine` and the goal is a nonzero-reward edge into one of `machine`'s
/// own absorbing zero-reward states.
///
/// With `terminate_on_goal` false the episode always runs the full eplength
/// steps, so traces record behavior past the goal; true cuts the episode at
/// the goal, which leaves the total reward unchanged (everything after the
/// goal pays 0) but shortens the trace.
EpisodeResult qrm_episode(const LabeledMdp& mdp, const RewardMachine& machine, QTableSet& q,
                          int eplength, RewardSource source, const TaskSpec* task,
                          bool terminate_on_goal, Rng& rng);

/// Mean undiscounted episode reward of the greedy (epsilon = 0) policy over
/// `episodes` rollouts. Reward accounting and termination follow the same
/// task-or-machine rule as qrm_episode; q is not modified.
double greedy_policy_value(const LabeledMdp& mdp, const RewardMachine& machine,
                           const QTableSet& q, int episodes, int eplength,
                           const TaskSpec* task, Rng& rng);

/// One point of a learning curve: greedy evaluation after some amount of
/// training.
struct EvalPoint {
    long env_steps = 0;
    double eval_reward = 0.0;
    long episode = 0;
};

} // namespace rml
