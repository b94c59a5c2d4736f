#pragma once

#include <utility>
#include <vector>

#include "rml/machine.hpp"

namespace rml {

/// Behavioural equivalence classes of the disjoint union of two machines'
/// states. Two states are equivalent iff every label sequence yields the same
/// reward sequence from both. Returns one class id per state, machine `a`
/// states first (indices 0..a.n-1), then machine `b` (a.n..a.n+b.n-1).
/// Computed by partition refinement, so it costs O((n_a+n_b) * |labels| * n)
/// rather than enumerating sequences.
std::vector<int> equivalence_classes(const RewardMachine& a, const RewardMachine& b);

/// True iff state va of machine a and state vb of machine b are equivalent.
bool states_equivalent(const RewardMachine& a, const RewardMachine& b,
                       MachineState va, MachineState vb);

/// All equivalent (va, vb) pairs, ordered by va then vb.
std::vector<std::pair<MachineState, MachineState>> equivalent_state_pairs(
    const RewardMachine& a, const RewardMachine& b);

} // namespace rml
