#pragma once

#include <optional>
#include <vector>

#include "rml/machine.hpp"

namespace rml {

/// Deterministic finite automaton over a dense symbol alphabet 0..k-1.
/// Transition table entry [state * alphabet_size + symbol].
struct Dfa {
    int state_count = 0;
    int alphabet_size = 0;
    int initial = 0;
    std::vector<bool> accepting;
    std::vector<int> delta;

    int step(int state, int symbol) const { return delta[std::size_t(state) * alphabet_size + symbol]; }
    bool accepts(const std::vector<int>& word) const;
};

/// Shortest word accepted by exactly one of the two automata, found by BFS
/// over the product. Empty result means the languages are equal. Both
/// automata must share alphabet_size. Any witness found has length at most
/// |a| + |b| - 1.
std::optional<std::vector<int>> shortest_difference_witness(const Dfa& a, const Dfa& b);

/// View of a reward machine as a DFA over the paired alphabet
/// (label, reward), with symbol id = label * reward_values.size() + reward
/// index. States are the machine states plus one rejecting sink; a word is
/// accepted iff its trace is consistent with the machine, so the language is
/// prefix-closed.
Dfa machine_to_dfa(const RewardMachine& m, const std::vector<Reward>& reward_values);

/// Reward value list shared by two machines: sorted union of their outputs.
std::vector<Reward> joint_reward_values(const RewardMachine& a, const RewardMachine& b);

/// Shortest trace on which the two machines output different rewards, as a
/// product BFS over their DFA views. Empty result means the machines agree on
/// every label sequence.
std::optional<Trace> shortest_inconsistency(const RewardMachine& a, const RewardMachine& b);

} // namespace rml
