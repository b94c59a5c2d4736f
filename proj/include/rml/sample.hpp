#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "rml/machine.hpp"

namespace rml {

enum class InsertResult { Added, Duplicate, Conflict };

/// Deduplicated set of traces with the prefix-consistency invariant: no two
/// traces share a label-sequence prefix with differing reward prefixes. The
/// traces are held as a trie keyed by labels, with the reward on each edge,
/// so prefix checks and prefix-tree construction are direct walks.
class Sample {
public:
    struct Node {
        /// label -> (child node id, reward on that edge)
        std::map<Label, std::pair<int, Reward>> next;
        bool end_of_trace = false;
    };

    explicit Sample(PropSet universe);

    const PropSet& universe() const { return universe_; }
    std::size_t size() const { return traces_.size(); }
    bool empty() const { return traces_.empty(); }
    const std::vector<Trace>& traces() const { return traces_; }

    /// Added iff new and prefix-compatible; Duplicate leaves the sample
    /// unchanged; Conflict (a stored trace pays a different reward on a shared
    /// label prefix) also leaves it unchanged.
    InsertResult insert(const Trace& t);
    bool contains(const Trace& t) const;

    /// Root is node 0. One node per distinct label-sequence prefix.
    const std::vector<Node>& nodes() const { return nodes_; }

private:
    PropSet universe_;
    std::vector<Node> nodes_;
    std::vector<Trace> traces_;
};

/// One trace per line: labels joined by ';', " / ", rewards joined by ';',
/// e.g. `{c};{o} / 0;1`. Lines starting with '#' and blank lines are skipped.
/// An optional leading `props: a b c` line pins the universe; without it the
/// universe is the sorted set of proposition names appearing in the file.
void save_sample(const Sample& x, std::ostream& out);
Sample load_sample(std::istream& in);
Sample load_sample_file(const std::string& path);

/// Tree-shaped partial machine over the sample's prefixes, states numbered in
/// breadth-first order with label-ordered children; state 0 is the root.
/// parent/in_label/in_reward describe each non-root state's one incoming
/// edge.
struct PrefixTreeMachine {
    PartialRewardMachine machine;
    std::vector<int> parent;
    std::vector<Label> in_label;
    std::vector<Reward> in_reward;
};

PrefixTreeMachine build_prefix_tree(const Sample& x);

} // namespace rml
