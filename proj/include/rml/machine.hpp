#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rml/guard.hpp"

namespace rml {

using MachineState = int;
using Reward = double;

/// Pair of a label sequence and the reward sequence observed with it.
struct Trace {
    std::vector<Label> labels;
    std::vector<Reward> rewards;

    bool operator==(const Trace& other) const = default;
    std::size_t size() const { return labels.size(); }
};

/// Mealy machine over the label alphabet 2^P with real rewards as outputs.
/// Transition and output tables are total: entry [v * label_count + l].
class RewardMachine {
public:
    RewardMachine(PropSet universe, int state_count, MachineState initial,
                  std::vector<MachineState> delta, std::vector<Reward> sigma);

    const PropSet& universe() const { return universe_; }
    int state_count() const { return state_count_; }
    MachineState initial_state() const { return initial_; }

    MachineState delta(MachineState v, Label l) const { return delta_[index(v, l)]; }
    Reward sigma(MachineState v, Label l) const { return sigma_[index(v, l)]; }

    /// Reward sequence the machine outputs on a label sequence, from the
    /// initial state.
    std::vector<Reward> run(const std::vector<Label>& labels) const;

    /// Final state after consuming a label sequence from `from`.
    MachineState walk(MachineState from, const std::vector<Label>& labels) const;

    /// True iff run(trace.labels) == trace.rewards, compared exactly.
    bool is_consistent(const Trace& trace) const;

    /// Rewards that occur anywhere in the output table.
    std::vector<Reward> output_values() const;

    bool operator==(const RewardMachine& other) const = default;

private:
    std::size_t index(MachineState v, Label l) const;

    PropSet universe_;
    int state_count_;
    MachineState initial_;
    std::vector<MachineState> delta_;
    std::vector<Reward> sigma_;
};

/// Reward machine under construction: transitions may be missing. Used by the
/// learners before sink completion.
class PartialRewardMachine {
public:
    PartialRewardMachine(PropSet universe, int state_count, MachineState initial);

    const PropSet& universe() const { return universe_; }
    int state_count() const { return state_count_; }
    MachineState initial_state() const { return initial_; }

    bool defined(MachineState v, Label l) const;
    MachineState delta(MachineState v, Label l) const;
    Reward sigma(MachineState v, Label l) const;

    /// Define a transition; throws InputError if (v, l) is already defined
    /// with a different target or output.
    void define(MachineState v, Label l, MachineState to, Reward r);

    MachineState add_state();

private:
    std::size_t index(MachineState v, Label l) const;

    PropSet universe_;
    int state_count_;
    MachineState initial_;
    std::vector<MachineState> delta_;
    std::vector<Reward> sigma_;
};

/// Totalize a partial machine: missing transitions go to a fresh absorbing
/// sink whose outputs equal default_reward. If nothing is missing, the input
/// machine is returned unchanged (no unreachable sink is added).
RewardMachine complete_with_sink(const PartialRewardMachine& m, Reward default_reward);

/// Textual machine format. Header `props: p1 p2 ...`, then `init: v0`,
/// transition lines `vi -- <guard> / <reward> --> vj`, and an optional
/// `default: self / <reward>` line giving unspecified pairs a self-loop.
/// State names `v<k>` mean state id k (so save/load round-trips exactly);
/// files using any other names get ids in order of first appearance.
/// The loader rejects overlapping guards on one source state and, without a
/// default line, incomplete machines.
RewardMachine load_machine(std::istream& in);
RewardMachine load_machine_file(const std::string& path);
void save_machine(const RewardMachine& m, std::ostream& out);
void save_machine_file(const RewardMachine& m, const std::string& path);

} // namespace rml
