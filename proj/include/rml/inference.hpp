#pragma once

#include <optional>

#include "rml/machine.hpp"
#include "rml/sample.hpp"

namespace rml {

/// State-merging heuristic: start from the prefix tree, consider its states
/// in breadth-first order, and fold each into the earliest-ordered surviving
/// state that keeps the machine deterministic and consistent with the sample;
/// states that merge nowhere survive. Undefined transitions of the result go
/// to an absorbing sink with output default_reward. Output is deterministic
/// for a given sample.
RewardMachine rpni_rm(const Sample& x, Reward default_reward = 0.0);

enum class LearnStatus { Found, NoMachineWithinKmax, BudgetExhausted };

struct LearnResult {
    LearnStatus status = LearnStatus::NoMachineWithinKmax;
    std::optional<RewardMachine> machine;
    /// Search nodes expanded, across all sizes tried.
    long expansions = 0;
    /// Largest size whose search ran (to completion unless the budget ended
    /// inside it).
    int k_reached = 0;
};

/// Exact minimal learner: for k = 1, 2, ... search for a k-state machine
/// consistent with the sample by backtracking over assignments of prefix-tree
/// states to k classes with a functional (class, label) -> (reward, class)
/// constraint table; the first hit is minimal. Undefined (class, label)
/// pairs of the result self-loop with reward 0. Budget exhaustion is
/// distinguished from proving there is no machine within k_max.
LearnResult minimal_consistent_machine(const Sample& x, int k_max = 10, long budget = 10000000);

} // namespace rml
