#include "rml/inference.hpp"

#include <algorithm>
#include <vector>

namespace rml {

namespace {

/// Backtracking search for an assignment of the prefix-tree states to k
/// classes whose induced (class, label) -> (reward, class) table is
/// functional. States are visited in breadth-first order, so each state's
/// parent is assigned first and the state's incoming edge either forces its
/// class through the table or branches over classes (bounded by one past the
/// highest class used so far, which breaks class-relabeling symmetry).
struct ExactSearch {
    const PrefixTreeMachine& tree;
    int n;
    int labels;
    int k;
    long budget;
    long used = 0;
    bool out_of_budget = false;

    std::vector<int> cls;
    std::vector<char> has;
    std::vector<Reward> trew;
    std::vector<int> ttgt;
    int max_used = 0;

    ExactSearch(const PrefixTreeMachine& t, int k_, long budget_, long already_used)
        : tree(t),
          n(t.machine.state_count()),
          labels(int(t.machine.universe().label_count())),
          k(k_),
          budget(budget_),
          used(already_used),
          cls(n, -1),
          has(std::size_t(k_) * labels, 0),
          trew(std::size_t(k_) * labels, 0.0),
          ttgt(std::size_t(k_) * labels, 0) {
        cls[0] = 0;
    }

    bool dfs(int i) {
        if (i == n) return true;
        int p = cls[tree.parent[i]];
        Label l = tree.in_label[i];
        Reward r = tree.in_reward[i];
        std::size_t idx = std::size_t(p) * labels + l;

        if (has[idx]) {
            if (++used > budget) {
                out_of_budget = true;
                return false;
            }
            if (trew[idx] != r) return false;
            cls[i] = ttgt[idx];
            if (dfs(i + 1)) return true;
            cls[i] = -1;
            return false;
        }

        int cmax = std::min(k - 1, max_used + 1);
        for (int c = 0; c <= cmax; ++c) {
            if (++used > budget) {
                out_of_budget = true;
                return false;
            }
            has[idx] = 1;
            trew[idx] = r;
            ttgt[idx] = c;
            cls[i] = c;
            int saved = max_used;
            max_used = std::max(max_used, c);
            if (dfs(i + 1)) return true;
            max_used = saved;
            has[idx] = 0;
            cls[i] = -1;
            if (out_of_budget) return false;
        }
        return false;
    }

    RewardMachine build() const {
        const PropSet& u = tree.machine.universe();
        std::vector<MachineState> delta(std::size_t(k) * labels);
        std::vector<Reward> sigma(std::size_t(k) * labels);
        for (int c = 0; c < k; ++c)
            for (int l = 0; l < labels; ++l) {
                std::size_t idx = std::size_t(c) * labels + l;
                if (has[idx]) {
                    delta[idx] = ttgt[idx];
                    sigma[idx] = trew[idx];
                } else {
                    delta[idx] = c;
                    sigma[idx] = 0.0;
                }
            }
        return RewardMachine(u, k, 0, std::move(delta), std::move(sigma));
    }
};

} // namespace

LearnResult minimal_consistent_machine(const Sample& x, int k_max, long budget) {
    if (k_max < 1) throw InputError("minimal_consistent_machine: k_max must be >= 1");
    PrefixTreeMachine tree = build_prefix_tree(x);
    LearnResult out;
    for (int k = 1; k <= k_max; ++k) {
        out.k_reached = k;
        ExactSearch search(tree, k, budget, out.expansions);
        bool found = search.dfs(1);
        out.expansions = search.used;
        if (found) {
            out.status = LearnStatus::Found;
            out.machine = search.build();
            return out;
        }
        if (search.out_of_budget) {
            out.status = LearnStatus::BudgetExhausted;
            return out;
        }
    }
    out.status = LearnStatus::NoMachineWithinKmax;
    return out;
}

} // namespace rml
