#include <map>
#include <set>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "rml/envs.hpp"
#include "rml/guard.hpp"
#include "rml/mdp.hpp"
#include "rml/rng.hpp"

using namespace rml;

namespace {

/// Breadth-first oracle for attainability: the set of states reachable by a
/// trajectory emitting exactly labels[0..k-1].
bool bfs_attainable(const LabeledMdp& mdp, const std::vector<Label>& labels) {
    std::set<int> frontier{mdp.initial_state()};
    for (Label want : labels) {
        std::set<int> next;
        for (int s : frontier)
            for (int a = 0; a < mdp.action_count(); ++a)
                for (const auto& t : mdp.transitions(s, a))
                    if (t.prob > 0.0 && t.label == want) next.insert(t.next);
        if (next.empty()) return false;
        frontier = std::move(next);
    }
    return true;
}

TabularMdp two_room_mdp() {
    PropSet u({"a", "b"});
    TabularMdp mdp(u, 3, 2, 0);
    Label none = 0, la = u.bit("a"), lb = u.bit("b");
    mdp.add_transition(0, 0, 1, 0.8, la);
    mdp.add_transition(0, 0, 0, 0.2, none);
    mdp.add_transition(0, 1, 0, 1.0, none);
    mdp.add_transition(1, 0, 2, 1.0, lb);
    mdp.add_transition(1, 1, 0, 1.0, none);
    mdp.add_transition(2, 0, 2, 1.0, lb);
    mdp.add_transition(2, 1, 2, 1.0, lb);
    return mdp;
}

} // namespace

TEST_CASE("validation rejects rows that are not distributions") {
    PropSet u({"a"});

    TabularMdp missing(u, 2, 1, 0);
    missing.add_transition(0, 0, 1, 0.5, 0);
    missing.add_transition(1, 0, 1, 1.0, 0);
    CHECK_THROWS_AS(validate_mdp(missing), InputError);

    TabularMdp over(u, 2, 1, 0);
    over.add_transition(0, 0, 1, 0.7, 0);
    over.add_transition(0, 0, 0, 0.7, 0);
    over.add_transition(1, 0, 1, 1.0, 0);
    CHECK_THROWS_AS(validate_mdp(over), InputError);

    TabularMdp ok = two_room_mdp();
    CHECK_NOTHROW(validate_mdp(ok));
}

TEST_CASE("sampling a deterministic row always takes its single transition") {
    TabularMdp mdp = two_room_mdp();
    Rng rng(41);
    for (int i = 0; i < 200; ++i) {
        auto [next, label] = simulate_step(mdp, 1, 0, rng);
        CHECK(next == 2);
        CHECK(label == mdp.props().bit("b"));
    }
}

TEST_CASE("sampling matches transition probabilities") {
    TabularMdp mdp = two_room_mdp();
    Rng rng(42);
    int hits = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        auto [next, label] = simulate_step(mdp, 0, 0, rng);
        if (next == 1) {
            CHECK(label == mdp.props().bit("a"));
            ++hits;
        } else {
            CHECK(next == 0);
        }
    }
    double freq = double(hits) / n;
    CHECK(freq == doctest::Approx(0.8).epsilon(0.01));
}

TEST_CASE("grid movement slips sideways five percent of the time") {
    Task task = find_task("office/2.1");
    const LabeledMdp& mdp = *task.mdp;
    validate_mdp(mdp);
    Rng rng(43);
    int s = mdp.initial_state();
    std::map<int, int> counts;
    const int n = 100000;
    for (int i = 0; i < n; ++i) counts[simulate_step(mdp, s, 0, rng).first]++;
    const auto& row = mdp.transitions(s, 0);
    REQUIRE(row.size() >= 2);
    for (const auto& t : row)
        CHECK(double(counts[t.next]) / n == doctest::Approx(t.prob).epsilon(0.05));
}

TEST_CASE("sampling is reproducible from the seed") {
    TabularMdp mdp = two_room_mdp();
    std::vector<int> a, b;
    {
        Rng rng(44);
        int s = 0;
        for (int i = 0; i < 100; ++i) {
            s = simulate_step(mdp, s, int(rng.next_below(2)), rng).first;
            a.push_back(s);
        }
    }
    {
        Rng rng(44);
        int s = 0;
        for (int i = 0; i < 100; ++i) {
            s = simulate_step(mdp, s, int(rng.next_below(2)), rng).first;
            b.push_back(s);
        }
    }
    CHECK(a == b);
}

TEST_CASE("a trajectory induces one label per step") {
    TabularMdp mdp = two_room_mdp();
    const PropSet& u = mdp.props();
    Trajectory t{{0, 1, 2}, {0, 0}};
    CHECK(trace_of(mdp, t) ==
          std::vector<Label>{u.bit("a"), u.bit("b")});
    Trajectory stay{{0, 0, 1}, {1, 0}};
    CHECK(trace_of(mdp, stay) == std::vector<Label>{0, u.bit("a")});
    CHECK(trace_of(mdp, Trajectory{{0}, {}}).empty());
}

TEST_CASE("attainability agrees with breadth-first search") {
    TabularMdp mdp = two_room_mdp();
    const PropSet& u = mdp.props();
    std::vector<Label> alpha;
    for (Label l = 0; l < Label(u.label_count()); ++l) alpha.push_back(l);
    CHECK(attainable(mdp, {}, 0));
    for (const auto& seq : testutil::label_sequences(alpha, 4))
        CHECK(attainable(mdp, seq, int(seq.size())) == bfs_attainable(mdp, seq));
}

TEST_CASE("labels that no transition emits are unattainable") {
    TabularMdp mdp = two_room_mdp();
    Label ab = mdp.props().parse_label("{a,b}");
    CHECK(!attainable(mdp, {ab}, 5));
    CHECK(!attainable(mdp, {0, ab}, 5));
}

TEST_CASE("attainability in the office grid") {
    Task task = find_task("office/2.1");
    const LabeledMdp& mdp = *task.mdp;
    const PropSet& u = mdp.props();
    Label c = u.bit("c"), o = u.bit("o");
    CHECK(attainable(mdp, {o}, 1));
    CHECK(attainable(mdp, {o, 0, 0, 0, c}, 5));
    CHECK(!attainable(mdp, {c}, 1));
    CHECK(!attainable(mdp, {o, c}, 2));
}
