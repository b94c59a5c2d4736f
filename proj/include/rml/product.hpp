#pragma once

#include <iosfwd>

#include "rml/machine.hpp"
#include "rml/mdp.hpp"

namespace rml {

/// Machine states from which every label self-loops with reward 0. Entering
/// one over a nonzero-reward edge ends an episode (task solved); entering one
/// over a zero-reward edge does not (dead sink, episode runs to the horizon).
std::vector<bool> absorbing_zero_states(const RewardMachine& m);

inline bool episode_done(const std::vector<bool>& absorbing_zero, Reward r, MachineState v) {
    return r != 0.0 && absorbing_zero[v];
}

/// Product of a labeled MDP with a reward machine. Product state (s, v) packs
/// as s * V + v; the machine consumes the label of each transition, so the
/// reward of a step is σ(v, L(s,a,s')) and the initial product state is
/// (s_I, v_I) with no label consumed on entry.
class ProductMdp {
public:
    struct Arc {
        int next_s = 0;
        MachineState next_v = 0;
        double prob = 0.0;
        Reward reward = 0.0;
    };

    ProductMdp(const LabeledMdp& mdp, const RewardMachine& machine);

    const LabeledMdp& mdp() const { return *mdp_; }
    const RewardMachine& machine() const { return *machine_; }
    int mdp_state_count() const { return mdp_->state_count(); }
    int machine_state_count() const { return machine_->state_count(); }
    int action_count() const { return mdp_->action_count(); }
    double gamma() const { return mdp_->gamma(); }

    int pack(int s, MachineState v) const { return s * machine_->state_count() + v; }
    int state_count() const { return mdp_->state_count() * machine_->state_count(); }
    int initial_state() const { return pack(mdp_->initial_state(), machine_->initial_state()); }

    const std::vector<Arc>& arcs(int s, MachineState v, int a) const {
        return arcs_[std::size_t(pack(s, v)) * mdp_->action_count() + a];
    }

private:
    const LabeledMdp* mdp_;
    const RewardMachine* machine_;
    std::vector<std::vector<Arc>> arcs_;
};

/// Optimal discounted action values q(s, v, a) of a product MDP plus the
/// iteration bookkeeping of the sweep that produced them.
struct ValueTable {
    int mdp_states = 0;
    int machine_states = 0;
    int actions = 0;
    std::vector<double> q;
    long sweeps = 0;
    double residual = 0.0;
    bool converged = false;

    double at(int s, MachineState v, int a) const {
        return q[(std::size_t(s) * machine_states + v) * actions + a];
    }
    double max_at(int s, MachineState v) const;
    /// Lowest-id maximizing action.
    int greedy_action(int s, MachineState v) const;
};

/// Bellman sweeps from the zero table until the sup-norm residual drops to
/// tol; the same loop cut at exactly k sweeps is the k-step finite-horizon
/// optimum.
ValueTable value_iteration(const ProductMdp& p, double tol = 1e-10, long max_sweeps = 1000000);
ValueTable k_horizon_values(const ProductMdp& p, int k);

/// Expected undiscounted episode reward of the table's greedy policy over at
/// most `eplength` steps from the initial product state, with episodes ending
/// early on a nonzero-reward edge into an absorbing zero-reward machine
/// state. Exact backward dynamic program, no sampling. This is the reference
/// optimum that evaluation rollouts of a learned policy are compared against.
double greedy_policy_episode_value(const ProductMdp& p, const ValueTable& vt, int eplength);

/// CSV with header s,v,a,q.
void save_value_table_csv(const ValueTable& vt, std::ostream& out);

} // namespace rml
