#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "rml/product.hpp"
#include "rml/rng.hpp"

using namespace rml;

TEST_CASE("product state space is the cartesian product") {
    auto cw = testutil::corridor(4);
    ProductMdp p(*cw.mdp, cw.truth);
    CHECK(p.state_count() == 4 * 2);
    CHECK(p.initial_state() == p.pack(0, 0));
    CHECK(p.pack(3, 1) == 3 * 2 + 1);
}

TEST_CASE("a zero-output machine makes every value zero") {
    auto cw = testutil::corridor(4);
    PropSet u = cw.truth.universe();
    RewardMachine zero(u, 1, 0, {0, 0}, {0.0, 0.0});
    ProductMdp p(*cw.mdp, zero);
    ValueTable vt = value_iteration(p);
    CHECK(vt.converged);
    for (double q : vt.q) CHECK(q == 0.0);
}

TEST_CASE("product arcs pay exactly what the machine outputs on the trace") {
    auto cw = testutil::corridor(5);
    ProductMdp p(*cw.mdp, cw.truth);
    Rng rng(51);
    for (int ep = 0; ep < 20; ++ep) {
        int s = cw.mdp->initial_state();
        MachineState v = cw.truth.initial_state();
        Trajectory traj;
        traj.states.push_back(s);
        std::vector<Reward> paid;
        for (int t = 0; t < 8; ++t) {
            int a = int(rng.next_below(std::uint32_t(cw.mdp->action_count())));
            auto [next, label] = simulate_step(*cw.mdp, s, a, rng);
            const auto& row = p.arcs(s, v, a);
            bool found = false;
            for (const auto& arc : row)
                if (arc.next_s == next) {
                    paid.push_back(arc.reward);
                    v = arc.next_v;
                    found = true;
                    break;
                }
            REQUIRE(found);
            s = next;
            traj.states.push_back(s);
            traj.actions.push_back(a);
        }
        CHECK(paid == cw.truth.run(trace_of(*cw.mdp, traj)));
    }
}

TEST_CASE("corridor values follow the discount") {
    auto cw = testutil::corridor(3, 0.9);
    ProductMdp p(*cw.mdp, cw.truth);
    ValueTable vt = value_iteration(p);
    CHECK(vt.converged);
    CHECK(vt.at(1, 0, 0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(vt.at(0, 0, 0) == doctest::Approx(0.9).epsilon(1e-9));
    CHECK(vt.at(2, 1, 0) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(vt.greedy_action(0, 0) == 0);
}

TEST_CASE("finite-horizon values approach the fixed point geometrically") {
    auto cw = testutil::corridor(4, 0.9);
    ProductMdp p(*cw.mdp, cw.truth);
    ValueTable inf = value_iteration(p);
    ValueTable k50 = k_horizon_values(p, 50);
    CHECK(k50.sweeps == 50);
    double rmax = 1.0;
    double bound = std::pow(0.9, 50) * rmax / (1.0 - 0.9);
    for (std::size_t i = 0; i < inf.q.size(); ++i)
        CHECK(std::abs(inf.q[i] - k50.q[i]) <= bound + 1e-12);
    ValueTable k0 = k_horizon_values(p, 0);
    for (double q : k0.q) CHECK(q == 0.0);
}

TEST_CASE("greedy episode value of the corridor is exactly one") {
    auto cw = testutil::corridor(4);
    ProductMdp p(*cw.mdp, cw.truth);
    ValueTable vt = value_iteration(p);
    CHECK(greedy_policy_episode_value(p, vt, 10) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(greedy_policy_episode_value(p, vt, 2) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("absorbing zero states gate episode termination") {
    auto cw = testutil::corridor(3);
    std::vector<bool> abs = absorbing_zero_states(cw.truth);
    REQUIRE(abs.size() == 2);
    CHECK(!abs[0]);
    CHECK(abs[1]);
    CHECK(episode_done(abs, 1.0, 1));
    CHECK(!episode_done(abs, 0.0, 1));
    CHECK(!episode_done(abs, 1.0, 0));
}

TEST_CASE("value tables serialize as csv") {
    auto cw = testutil::corridor(2);
    ProductMdp p(*cw.mdp, cw.truth);
    ValueTable vt = value_iteration(p);
    std::ostringstream out;
    save_value_table_csv(vt, out);
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "s,v,a,q");
    int rows = 0;
    for (std::string line; std::getline(in, line);)
        if (!line.empty()) ++rows;
    CHECK(rows == 2 * 2 * 1);
}
