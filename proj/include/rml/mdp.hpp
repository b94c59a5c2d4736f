#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rml/guard.hpp"
#include "rml/rng.hpp"

namespace rml {

/// One entry of a sparse transition row: next state with probability `prob`,
/// emitting `label`.
struct Transition {
    int next = 0;
    double prob = 0.0;
    Label label = 0;
};

/// Labeled MDP: finite states and actions, sparse transition rows, a label in
/// 2^P on every transition. Implementations are immutable after construction.
class LabeledMdp {
public:
    virtual ~LabeledMdp() = default;

    virtual int state_count() const = 0;
    virtual int action_count() const = 0;
    virtual int initial_state() const = 0;
    virtual const PropSet& props() const = 0;
    virtual double gamma() const = 0;
    virtual const std::vector<Transition>& transitions(int s, int a) const = 0;

    virtual std::string state_name(int s) const;
    virtual std::string action_name(int a) const;
};

/// Throws InputError unless every row sums to 1 within 1e-9 with nonnegative
/// entries and valid targets.
void validate_mdp(const LabeledMdp& mdp);

/// Sample s' from p(s, a, ·) and return it with the transition's label.
std::pair<int, Label> simulate_step(const LabeledMdp& mdp, int s, int a, Rng& rng);

/// s0 a0 s1 a1 ... sk: states has one more entry than actions.
struct Trajectory {
    std::vector<int> states;
    std::vector<int> actions;
};

/// Label sequence induced by a trajectory: one label per action taken.
std::vector<Label> trace_of(const LabeledMdp& mdp, const Trajectory& t);

/// True iff some trajectory from the initial state with all-positive
/// transition probabilities induces exactly `labels`. `horizon` must be at
/// least the sequence length; longer horizons do not change the answer
/// because every step emits one label.
bool attainable(const LabeledMdp& mdp, const std::vector<Label>& labels, int horizon);

/// Dense in-memory MDP built row by row.
class TabularMdp : public LabeledMdp {
public:
    TabularMdp(PropSet props, int state_count, int action_count, int initial_state,
               double gamma = 0.9);

    void add_transition(int s, int a, int next, double prob, Label label);

    int state_count() const override { return state_count_; }
    int action_count() const override { return action_count_; }
    int initial_state() const override { return initial_; }
    const PropSet& props() const override { return props_; }
    double gamma() const override { return gamma_; }
    const std::vector<Transition>& transitions(int s, int a) const override;

private:
    PropSet props_;
    int state_count_;
    int action_count_;
    int initial_;
    double gamma_;
    std::vector<std::vector<Transition>> rows_;
};

} // namespace rml
