#include "rml/inference.hpp"

#include <map>
#include <queue>
#include <set>
#include <utility>
#include <vector>

namespace rml {

namespace {

/// Partial machine during merging: one transition map per prefix-tree state,
/// a union-find forest over merged states (roots are the surviving machine
/// states), and a journal so a failed trial merge can be rolled back.
struct Merger {
    std::vector<std::map<Label, std::pair<int, Reward>>> trans;
    std::vector<int> uf;

    struct JournalEntry {
        bool is_union = false;
        int state = 0;
        Label label = 0;
    };
    std::vector<JournalEntry> journal;

    explicit Merger(const PrefixTreeMachine& tree) {
        int n = tree.machine.state_count();
        trans.resize(n);
        uf.resize(n);
        for (int i = 0; i < n; ++i) uf[i] = i;
        for (int c = 1; c < n; ++c)
            trans[tree.parent[c]].emplace(tree.in_label[c], std::make_pair(c, tree.in_reward[c]));
    }

    int find(int a) const {
        while (uf[a] != a) a = uf[a];
        return a;
    }

    /// Merge tree-side root b into machine-side root q, folding b's subtree
    /// to keep determinism; false on a reward clash (caller must roll back).
    bool fold(int q, int b) {
        uf[b] = q;
        journal.push_back({true, b, 0});
        for (const auto& [l, edge] : trans[b]) {
            int tb = find(edge.first);
            auto it = trans[q].find(l);
            if (it == trans[q].end()) {
                trans[q].emplace(l, std::make_pair(tb, edge.second));
                journal.push_back({false, q, l});
            } else {
                if (it->second.second != edge.second) return false;
                int tq = find(it->second.first);
                if (tq != tb && !fold(tq, tb)) return false;
            }
        }
        return true;
    }

    bool try_merge(int q, int b) {
        std::size_t mark = journal.size();
        if (fold(q, b)) {
            journal.clear();
            return true;
        }
        while (journal.size() > mark) {
            const JournalEntry& e = journal.back();
            if (e.is_union)
                uf[e.state] = e.state;
            else
                trans[e.state].erase(e.label);
            journal.pop_back();
        }
        return false;
    }
};

} // namespace

RewardMachine rpni_rm(const Sample& x, Reward default_reward) {
    PrefixTreeMachine tree = build_prefix_tree(x);
    Merger m(tree);

    std::set<int> red{0};
    for (;;) {
        std::set<int> blue;
        for (int r : red)
            for (const auto& [l, edge] : m.trans[r]) {
                int t = m.find(edge.first);
                if (!red.count(t)) blue.insert(t);
            }
        if (blue.empty()) break;
        int b = *blue.begin();
        bool merged = false;
        for (int r : red)
            if (m.try_merge(r, b)) {
                merged = true;
                break;
            }
        if (!merged) red.insert(b);
    }

    std::map<int, int> id;
    std::vector<int> order;
    std::queue<int> bfs;
    int root = m.find(0);
    id.emplace(root, 0);
    order.push_back(root);
    bfs.push(root);
    while (!bfs.empty()) {
        int u = bfs.front();
        bfs.pop();
        for (const auto& [l, edge] : m.trans[u]) {
            int t = m.find(edge.first);
            if (id.emplace(t, int(id.size())).second) {
                order.push_back(t);
                bfs.push(t);
            }
        }
    }

    PartialRewardMachine out(x.universe(), int(order.size()), 0);
    for (int u : order)
        for (const auto& [l, edge] : m.trans[u])
            out.define(id.at(u), l, id.at(m.find(edge.first)), edge.second);
    return complete_with_sink(out, default_reward);
}

} // namespace rml
