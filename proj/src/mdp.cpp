#include "rml/mdp.hpp"

#include <cmath>
#include <queue>
#include <set>

namespace rml {

std::string LabeledMdp::state_name(int s) const { return "s" + std::to_string(s); }
std::string LabeledMdp::action_name(int a) const { return "a" + std::to_string(a); }

void validate_mdp(const LabeledMdp& mdp) {
    for (int s = 0; s < mdp.state_count(); ++s) {
        for (int a = 0; a < mdp.action_count(); ++a) {
            double total = 0.0;
            for (const Transition& t : mdp.transitions(s, a)) {
                if (t.prob < 0.0) throw InputError("negative transition probability");
                if (t.next < 0 || t.next >= mdp.state_count())
                    throw InputError("transition target out of range");
                if (t.label >= mdp.props().label_count())
                    throw InputError("transition label out of range");
                total += t.prob;
            }
            if (std::abs(total - 1.0) > 1e-9)
                throw InputError("row (" + mdp.state_name(s) + ", " + mdp.action_name(a) +
                                 ") sums to " + std::to_string(total));
        }
    }
}

std::pair<int, Label> simulate_step(const LabeledMdp& mdp, int s, int a, Rng& rng) {
    if (s < 0 || s >= mdp.state_count()) throw InputError("state id out of range");
    if (a < 0 || a >= mdp.action_count()) throw InputError("action id out of range");
    const std::vector<Transition>& row = mdp.transitions(s, a);
    double u = rng.next_double();
    double acc = 0.0;
    for (const Transition& t : row) {
        acc += t.prob;
        if (u < acc) return {t.next, t.label};
    }
    return {row.back().next, row.back().label};
}

std::vector<Label> trace_of(const LabeledMdp& mdp, const Trajectory& t) {
    if (t.states.size() != t.actions.size() + 1)
        throw InputError("trajectory needs one more state than actions");
    std::vector<Label> labels;
    labels.reserve(t.actions.size());
    for (std::size_t i = 0; i < t.actions.size(); ++i) {
        const std::vector<Transition>& row = mdp.transitions(t.states[i], t.actions[i]);
        bool found = false;
        for (const Transition& tr : row) {
            if (tr.next == t.states[i + 1] && tr.prob > 0.0) {
                labels.push_back(tr.label);
                found = true;
                break;
            }
        }
        if (!found) throw InputError("trajectory step has zero probability");
    }
    return labels;
}

bool attainable(const LabeledMdp& mdp, const std::vector<Label>& labels, int horizon) {
    if (horizon < int(labels.size())) return false;
    std::set<int> frontier{mdp.initial_state()};
    for (Label want : labels) {
        std::set<int> next;
        for (int s : frontier) {
            for (int a = 0; a < mdp.action_count(); ++a)
                for (const Transition& t : mdp.transitions(s, a))
                    if (t.prob > 0.0 && t.label == want) next.insert(t.next);
        }
        if (next.empty()) return false;
        frontier = std::move(next);
    }
    return true;
}

TabularMdp::TabularMdp(PropSet props, int state_count, int action_count, int initial_state,
                       double gamma)
    : props_(std::move(props)),
      state_count_(state_count),
      action_count_(action_count),
      initial_(initial_state),
      gamma_(gamma) {
    if (state_count_ <= 0 || action_count_ <= 0) throw InputError("mdp needs states and actions");
    if (initial_ < 0 || initial_ >= state_count_) throw InputError("initial state out of range");
    if (gamma_ < 0.0 || gamma_ >= 1.0) throw InputError("discount must be in [0,1)");
    rows_.resize(std::size_t(state_count_) * action_count_);
}

void TabularMdp::add_transition(int s, int a, int next, double prob, Label label) {
    if (s < 0 || s >= state_count_ || a < 0 || a >= action_count_)
        throw InputError("transition source out of range");
    if (next < 0 || next >= state_count_) throw InputError("transition target out of range");
    std::vector<Transition>& row = rows_[std::size_t(s) * action_count_ + a];
    for (Transition& t : row) {
        if (t.next == next && t.label == label) {
            t.prob += prob;
            return;
        }
    }
    row.push_back({next, prob, label});
}

const std::vector<Transition>& TabularMdp::transitions(int s, int a) const {
    return rows_[std::size_t(s) * action_count_ + a];
}

} // namespace rml
