#include "rml/dfa.hpp"

#include <algorithm>
#include <queue>

namespace rml {

bool Dfa::accepts(const std::vector<int>& word) const {
    int s = initial;
    for (int sym : word) s = step(s, sym);
    return accepting[s];
}

std::optional<std::vector<int>> shortest_difference_witness(const Dfa& a, const Dfa& b) {
    if (a.alphabet_size != b.alphabet_size)
        throw InputError("difference witness needs a shared alphabet");
    int nb = b.state_count;
    auto pack = [nb](int i, int j) { return std::size_t(i) * nb + j; };

    std::size_t total = std::size_t(a.state_count) * nb;
    std::vector<int> parent(total, -2);
    std::vector<int> via(total, -1);
    std::queue<std::pair<int, int>> frontier;

    parent[pack(a.initial, b.initial)] = -1;
    frontier.push({a.initial, b.initial});
    while (!frontier.empty()) {
        auto [i, j] = frontier.front();
        frontier.pop();
        if (a.accepting[i] != b.accepting[j]) {
            std::vector<int> word;
            std::size_t at = pack(i, j);
            while (parent[at] >= 0) {
                word.push_back(via[at]);
                at = std::size_t(parent[at]);
            }
            std::reverse(word.begin(), word.end());
            return word;
        }
        for (int sym = 0; sym < a.alphabet_size; ++sym) {
            int ni = a.step(i, sym);
            int nj = b.step(j, sym);
            std::size_t key = pack(ni, nj);
            if (parent[key] != -2) continue;
            parent[key] = int(pack(i, j));
            via[key] = sym;
            frontier.push({ni, nj});
        }
    }
    return std::nullopt;
}

Dfa machine_to_dfa(const RewardMachine& m, const std::vector<Reward>& reward_values) {
    std::size_t labels = m.universe().label_count();
    std::size_t nr = reward_values.size();
    Dfa d;
    d.state_count = m.state_count() + 1;
    d.alphabet_size = int(labels * nr);
    d.initial = m.initial_state();
    int sink = m.state_count();
    d.accepting.assign(d.state_count, true);
    d.accepting[sink] = false;
    d.delta.assign(std::size_t(d.state_count) * d.alphabet_size, sink);
    for (MachineState v = 0; v < m.state_count(); ++v) {
        for (Label l = 0; l < labels; ++l) {
            Reward r = m.sigma(v, l);
            for (std::size_t k = 0; k < nr; ++k) {
                if (reward_values[k] == r)
                    d.delta[std::size_t(v) * d.alphabet_size + l * nr + k] = m.delta(v, l);
            }
        }
    }
    return d;
}

std::vector<Reward> joint_reward_values(const RewardMachine& a, const RewardMachine& b) {
    std::vector<Reward> vals = a.output_values();
    std::vector<Reward> more = b.output_values();
    vals.insert(vals.end(), more.begin(), more.end());
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
}

std::optional<Trace> shortest_inconsistency(const RewardMachine& a, const RewardMachine& b) {
    if (!(a.universe() == b.universe()))
        throw InputError("machines being compared must share one proposition set");
    std::vector<Reward> vals = joint_reward_values(a, b);
    Dfa da = machine_to_dfa(a, vals);
    Dfa db = machine_to_dfa(b, vals);
    auto word = shortest_difference_witness(da, db);
    if (!word) return std::nullopt;
    Trace t;
    std::size_t nr = vals.size();
    for (int sym : *word) {
        t.labels.push_back(Label(sym / nr));
        t.rewards.push_back(vals[sym % nr]);
    }
    return t;
}

} // namespace rml
