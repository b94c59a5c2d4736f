#include "rml/equivalence.hpp"

#include <map>

namespace rml {

std::vector<int> equivalence_classes(const RewardMachine& a, const RewardMachine& b) {
    if (!(a.universe() == b.universe()))
        throw InputError("machines being compared must share one proposition set");
    std::size_t labels = a.universe().label_count();
    int na = a.state_count();
    int n = na + b.state_count();

    auto out_of = [&](int s, Label l) { return s < na ? a.sigma(s, l) : b.sigma(s - na, l); };
    auto next_of = [&](int s, Label l) {
        return s < na ? int(a.delta(s, l)) : na + int(b.delta(s - na, l));
    };

    // Initial split by output row, then refine by successor classes.
    std::vector<int> cls(n);
    {
        std::map<std::vector<Reward>, int> seen;
        for (int s = 0; s < n; ++s) {
            std::vector<Reward> row(labels);
            for (Label l = 0; l < labels; ++l) row[l] = out_of(s, l);
            cls[s] = seen.emplace(std::move(row), int(seen.size())).first->second;
        }
    }
    for (;;) {
        std::map<std::vector<int>, int> seen;
        std::vector<int> next(n);
        for (int s = 0; s < n; ++s) {
            std::vector<int> sig;
            sig.reserve(labels + 1);
            sig.push_back(cls[s]);
            for (Label l = 0; l < labels; ++l) sig.push_back(cls[next_of(s, l)]);
            next[s] = seen.emplace(std::move(sig), int(seen.size())).first->second;
        }
        bool changed = next != cls;
        cls = std::move(next);
        if (!changed) return cls;
    }
}

bool states_equivalent(const RewardMachine& a, const RewardMachine& b,
                       MachineState va, MachineState vb) {
    std::vector<int> cls = equivalence_classes(a, b);
    return cls[va] == cls[a.state_count() + vb];
}

std::vector<std::pair<MachineState, MachineState>> equivalent_state_pairs(
    const RewardMachine& a, const RewardMachine& b) {
    std::vector<int> cls = equivalence_classes(a, b);
    std::vector<std::pair<MachineState, MachineState>> pairs;
    for (MachineState va = 0; va < a.state_count(); ++va)
        for (MachineState vb = 0; vb < b.state_count(); ++vb)
            if (cls[va] == cls[a.state_count() + vb]) pairs.push_back({va, vb});
    return pairs;
}

} // namespace rml
