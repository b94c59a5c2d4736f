#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "rml/machine.hpp"
#include "rml/mdp.hpp"
#include "rml/rng.hpp"

namespace testutil {

/// Uniformly random total Mealy machine. Rewards are drawn from `outputs`.
inline rml::RewardMachine random_machine(rml::Rng& rng, const rml::PropSet& universe,
                                         int states, const std::vector<rml::Reward>& outputs) {
    std::uint32_t labels = universe.label_count();
    std::vector<rml::MachineState> delta(std::size_t(states) * labels);
    std::vector<rml::Reward> sigma(std::size_t(states) * labels);
    for (auto& d : delta) d = int(rng.next_below(std::uint32_t(states)));
    for (auto& s : sigma) s = outputs[rng.next_below(std::uint32_t(outputs.size()))];
    return rml::RewardMachine(universe, states, 0, std::move(delta), std::move(sigma));
}

/// Random label sequence over the full label alphabet.
inline std::vector<rml::Label> random_labels(rml::Rng& rng, const rml::PropSet& universe,
                                             int length) {
    std::vector<rml::Label> out(length);
    for (auto& l : out) l = rml::Label(rng.next_below(universe.label_count()));
    return out;
}

/// All label sequences of length 1..maxlen over the given alphabet.
inline std::vector<std::vector<rml::Label>> label_sequences(const std::vector<rml::Label>& alphabet,
                                                            int maxlen) {
    std::vector<std::vector<rml::Label>> out;
    std::vector<std::vector<rml::Label>> frontier{{}};
    for (int len = 1; len <= maxlen; ++len) {
        std::vector<std::vector<rml::Label>> next;
        for (const auto& prefix : frontier)
            for (rml::Label l : alphabet) {
                auto seq = prefix;
                seq.push_back(l);
                out.push_back(seq);
                next.push_back(std::move(seq));
            }
        frontier = std::move(next);
    }
    return out;
}

struct Corridor {
    std::shared_ptr<rml::TabularMdp> mdp;
    rml::RewardMachine truth;
};

/// Deterministic one-action corridor of `cells` states; stepping into the
/// last cell emits {g} (reward 1 in the truth machine), which then absorbs.
inline Corridor corridor(int cells, double gamma = 0.9) {
    rml::PropSet props({"g"});
    auto mdp = std::make_shared<rml::TabularMdp>(props, cells, 1, 0, gamma);
    for (int s = 0; s + 1 < cells; ++s)
        mdp->add_transition(s, 0, s + 1, 1.0, s + 1 == cells - 1 ? props.bit("g") : 0);
    mdp->add_transition(cells - 1, 0, cells - 1, 1.0, props.bit("g"));
    rml::Label g = props.bit("g");
    std::vector<rml::MachineState> delta{0, 1, 1, 1};
    std::vector<rml::Reward> sigma{0.0, 1.0, 0.0, 0.0};
    (void)g;
    return {mdp, rml::RewardMachine(props, 2, 0, std::move(delta), std::move(sigma))};
}

} // namespace testutil
