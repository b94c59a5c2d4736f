#include "rml/harness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <tuple>

#include "rml/equivalence.hpp"
#include "rml/product.hpp"

namespace rml {

std::optional<std::vector<Label>> check_equivalence_on_attainable(const LabeledMdp& mdp,
                                                                  const RewardMachine& m1,
                                                                  const RewardMachine& m2,
                                                                  int horizon) {
    if (horizon < 1) throw InputError("check_equivalence_on_attainable: horizon must be >= 1");
    if (!(m1.universe() == m2.universe()) || !(m1.universe() == mdp.props()))
        throw InputError("check_equivalence_on_attainable: universes differ");

    struct Node {
        std::vector<bool> subset;
        MachineState v1, v2;
        int parent;
        Label via;
        int depth;
    };
    std::vector<Node> nodes;
    std::map<std::tuple<std::vector<bool>, MachineState, MachineState>, int> seen;

    std::vector<bool> start(mdp.state_count(), false);
    start[mdp.initial_state()] = true;
    nodes.push_back({start, m1.initial_state(), m2.initial_state(), -1, 0, 0});
    seen.emplace(std::make_tuple(start, m1.initial_state(), m2.initial_state()), 0);

    auto witness = [&](int node, Label last) {
        std::vector<Label> w{last};
        for (int i = node; nodes[i].parent >= 0; i = nodes[i].parent) w.push_back(nodes[i].via);
        std::reverse(w.begin(), w.end());
        return w;
    };

    std::queue<int> bfs;
    bfs.push(0);
    while (!bfs.empty()) {
        int cur = bfs.front();
        bfs.pop();
        if (nodes[cur].depth >= horizon) continue;

        std::map<Label, std::vector<bool>> next;
        for (int s = 0; s < mdp.state_count(); ++s) {
            if (!nodes[cur].subset[s]) continue;
            for (int a = 0; a < mdp.action_count(); ++a)
                for (const Transition& t : mdp.transitions(s, a)) {
                    if (t.prob <= 0.0) continue;
                    auto [it, fresh] = next.try_emplace(t.label);
                    if (fresh) it->second.assign(mdp.state_count(), false);
                    it->second[t.next] = true;
                }
        }

        for (const auto& [l, subset] : next) {
            if (m1.sigma(nodes[cur].v1, l) != m2.sigma(nodes[cur].v2, l))
                return witness(cur, l);
            MachineState v1 = m1.delta(nodes[cur].v1, l);
            MachineState v2 = m2.delta(nodes[cur].v2, l);
            auto [it, fresh] = seen.emplace(std::make_tuple(subset, v1, v2), int(nodes.size()));
            if (fresh) {
                nodes.push_back({subset, v1, v2, cur, l, nodes[cur].depth + 1});
                bfs.push(it->second);
            }
        }
    }
    return std::nullopt;
}

TransferReport verify_transfer_theorem(const LabeledMdp& mdp, const RewardMachine& m1,
                                       const RewardMachine& m2, double tol, int equiv_horizon) {
    TransferReport report;
    report.inequivalence_witness = check_equivalence_on_attainable(mdp, m1, m2, equiv_horizon);
    if (report.inequivalence_witness) return report;

    ProductMdp p1(mdp, m1);
    ProductMdp p2(mdp, m2);
    ValueTable q1 = value_iteration(p1, tol);
    ValueTable q2 = value_iteration(p2, tol);

    auto pairs = equivalent_state_pairs(m1, m2);
    report.equivalent_pairs = int(pairs.size());
    for (auto [v1, v2] : pairs)
        for (int s = 0; s < mdp.state_count(); ++s)
            for (int a = 0; a < mdp.action_count(); ++a)
                report.max_deviation =
                    std::max(report.max_deviation, std::abs(q1.at(s, v1, a) - q2.at(s, v2, a)));
    report.ok = report.max_deviation <= 2 * tol;
    return report;
}

} // namespace rml
