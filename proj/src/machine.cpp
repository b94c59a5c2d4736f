#include "rml/machine.hpp"

#include <algorithm>
#include <stdexcept>

namespace rml {

RewardMachine::RewardMachine(PropSet universe, int state_count, MachineState initial,
                             std::vector<MachineState> delta, std::vector<Reward> sigma)
    : universe_(std::move(universe)),
      state_count_(state_count),
      initial_(initial),
      delta_(std::move(delta)),
      sigma_(std::move(sigma)) {
    if (state_count_ <= 0) throw InputError("machine needs at least one state");
    if (initial_ < 0 || initial_ >= state_count_) throw InputError("initial state out of range");
    std::size_t want = std::size_t(state_count_) * universe_.label_count();
    if (delta_.size() != want || sigma_.size() != want)
        throw InputError("transition tables have the wrong size");
    for (MachineState v : delta_)
        if (v < 0 || v >= state_count_) throw InputError("transition target out of range");
}

std::size_t RewardMachine::index(MachineState v, Label l) const {
    return std::size_t(v) * universe_.label_count() + l;
}

std::vector<Reward> RewardMachine::run(const std::vector<Label>& labels) const {
    std::vector<Reward> out;
    out.reserve(labels.size());
    MachineState v = initial_;
    for (Label l : labels) {
        out.push_back(sigma(v, l));
        v = delta(v, l);
    }
    return out;
}

MachineState RewardMachine::walk(MachineState from, const std::vector<Label>& labels) const {
    MachineState v = from;
    for (Label l : labels) v = delta(v, l);
    return v;
}

bool RewardMachine::is_consistent(const Trace& trace) const {
    if (trace.labels.size() != trace.rewards.size())
        throw InputError("trace has mismatched label/reward lengths");
    MachineState v = initial_;
    for (std::size_t i = 0; i < trace.labels.size(); ++i) {
        if (sigma(v, trace.labels[i]) != trace.rewards[i]) return false;
        v = delta(v, trace.labels[i]);
    }
    return true;
}

std::vector<Reward> RewardMachine::output_values() const {
    std::vector<Reward> vals(sigma_);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
}

PartialRewardMachine::PartialRewardMachine(PropSet universe, int state_count, MachineState initial)
    : universe_(std::move(universe)), state_count_(state_count), initial_(initial) {
    if (state_count_ <= 0) throw InputError("machine needs at least one state");
    if (initial_ < 0 || initial_ >= state_count_) throw InputError("initial state out of range");
    std::size_t want = std::size_t(state_count_) * universe_.label_count();
    delta_.assign(want, -1);
    sigma_.assign(want, 0.0);
}

std::size_t PartialRewardMachine::index(MachineState v, Label l) const {
    return std::size_t(v) * universe_.label_count() + l;
}

bool PartialRewardMachine::defined(MachineState v, Label l) const {
    return delta_[index(v, l)] >= 0;
}

MachineState PartialRewardMachine::delta(MachineState v, Label l) const {
    MachineState to = delta_[index(v, l)];
    if (to < 0) throw std::logic_error("transition not defined");
    return to;
}

Reward PartialRewardMachine::sigma(MachineState v, Label l) const {
    if (delta_[index(v, l)] < 0) throw std::logic_error("transition not defined");
    return sigma_[index(v, l)];
}

void PartialRewardMachine::define(MachineState v, Label l, MachineState to, Reward r) {
    std::size_t i = index(v, l);
    if (delta_[i] >= 0 && (delta_[i] != to || sigma_[i] != r))
        throw InputError("conflicting definition for one (state, label) pair");
    delta_[i] = to;
    sigma_[i] = r;
}

MachineState PartialRewardMachine::add_state() {
    ++state_count_;
    delta_.resize(std::size_t(state_count_) * universe_.label_count(), -1);
    sigma_.resize(std::size_t(state_count_) * universe_.label_count(), 0.0);
    return state_count_ - 1;
}

RewardMachine complete_with_sink(const PartialRewardMachine& m, Reward default_reward) {
    std::size_t labels = m.universe().label_count();
    bool missing = false;
    for (MachineState v = 0; v < m.state_count() && !missing; ++v)
        for (Label l = 0; l < labels && !missing; ++l)
            if (!m.defined(v, l)) missing = true;

    int n = m.state_count() + (missing ? 1 : 0);
    MachineState sink = m.state_count();
    std::vector<MachineState> delta(std::size_t(n) * labels);
    std::vector<Reward> sigma(std::size_t(n) * labels);
    for (MachineState v = 0; v < m.state_count(); ++v) {
        for (Label l = 0; l < labels; ++l) {
            std::size_t i = std::size_t(v) * labels + l;
            if (m.defined(v, l)) {
                delta[i] = m.delta(v, l);
                sigma[i] = m.sigma(v, l);
            } else {
                delta[i] = sink;
                sigma[i] = default_reward;
            }
        }
    }
    if (missing) {
        for (Label l = 0; l < labels; ++l) {
            std::size_t i = std::size_t(sink) * labels + l;
            delta[i] = sink;
            sigma[i] = default_reward;
        }
    }
    return RewardMachine(m.universe(), n, m.initial_state(), std::move(delta), std::move(sigma));
}

} // namespace rml
