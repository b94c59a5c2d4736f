#include <string>
#include <vector>

#include "doctest.h"
#include "rml/envs.hpp"
#include "rml/guard.hpp"
#include "rml/gridworld.hpp"

using namespace rml;

TEST_CASE("office world has the expected shape") {
    World w = office_world();
    CHECK(w.mdp->state_count() == 78);
    CHECK(w.mdp->action_count() == 4);
    REQUIRE(w.tasks.size() == 4);
    std::vector<std::string> ids;
    for (const auto& t : w.tasks) {
        ids.push_back(t.id);
        CHECK(t.eplength == 1000);
        CHECK(t.batch_n == 30);
    }
    CHECK(ids == std::vector<std::string>{"office/2.1", "office/2.2", "office/2.3",
                                          "office/2.4"});
    validate_mdp(*w.mdp);
}

TEST_CASE("office coffee task pays on coffee then office") {
    Task task = find_task("office/2.1");
    const PropSet& u = task.spec.truth.universe();
    Label c = u.bit("c"), o = u.bit("o");
    CHECK(task.spec.truth.run({c, o}) == std::vector<Reward>{0.0, 1.0});
    CHECK(task.spec.truth.run({o, c, o}) == std::vector<Reward>{0.0, 0.0, 1.0});
    CHECK(task.spec.truth.run({c, c, o}) == std::vector<Reward>{0.0, 0.0, 1.0});
    CHECK(task.spec.done(1.0, 2));
    CHECK(!task.spec.done(0.0, 1));
}

TEST_CASE("craft worlds have open grids and four tasks each") {
    World big = craft_world();
    CHECK(big.mdp->state_count() == 441);
    REQUIRE(big.tasks.size() == 4);
    for (const auto& t : big.tasks) {
        CHECK(t.eplength == 400);
        CHECK(t.batch_n == 30);
    }
    validate_mdp(*big.mdp);

    World small = craft10_world();
    CHECK(small.mdp->state_count() == 100);
    REQUIRE(small.tasks.size() == 4);
    for (const auto& t : small.tasks) CHECK(t.eplength == 200);
    validate_mdp(*small.mdp);
}

TEST_CASE("craft machines track milestone order") {
    const PropSet& u = find_task("craft/3.1").spec.truth.universe();
    Label w = u.bit("w"), t = u.bit("t");
    Label h = u.bit("h"), f = u.bit("f");
    Label i = u.bit("i");

    const RewardMachine& plank = find_task("craft/3.1").spec.truth;
    CHECK(plank.run({w, t}) == std::vector<Reward>{0.0, 1.0});
    CHECK(plank.run({t, w, t}) == std::vector<Reward>{0.0, 0.0, 0.0});

    const RewardMachine& tool = find_task("craft/3.2").spec.truth;
    CHECK(tool.run({h, w, h}) == std::vector<Reward>{0.0, 0.0, 1.0});

    const RewardMachine& bridge = find_task("craft/3.4").spec.truth;
    CHECK(bridge.run({w, i, w, f}) == std::vector<Reward>{0.0, 0.0, 0.0, 1.0});
}

TEST_CASE("traffic world is deterministic with stop-labeled stays") {
    World w = traffic_world();
    validate_mdp(*w.mdp);
    REQUIRE(w.tasks.size() == 1);
    CHECK(w.tasks[0].id == "traffic/1");
    CHECK(w.tasks[0].eplength == 100);
    CHECK(w.tasks[0].batch_n == 100);

    const PropSet& u = w.mdp->props();
    Label sp = u.bit("sp");
    bool some_stop = false;
    for (int s = 0; s < w.mdp->state_count(); ++s)
        for (int a = 0; a < w.mdp->action_count(); ++a) {
            const auto& row = w.mdp->transitions(s, a);
            REQUIRE(row.size() == 1);
            CHECK(row[0].prob == 1.0);
            if (row[0].label & sp) {
                CHECK(a == 3);
                CHECK(row[0].next == s);
                some_stop = true;
            }
        }
    CHECK(some_stop);
}

TEST_CASE("traffic machine rewards a legal trip to b") {
    const RewardMachine& m = find_task("traffic/1").spec.truth;
    const PropSet& u = m.universe();
    Label sp = u.bit("sp"), pr = u.bit("pr");
    Label b = u.bit("B");
    CHECK(m.run({0, sp, pr, b}) == std::vector<Reward>{0.0, 0.0, 0.0, 1.0});
    CHECK(m.run({sp, b}) == std::vector<Reward>{0.0, 0.0});
    CHECK(m.run({0, 0, b}) == std::vector<Reward>{0.0, 0.0, 0.0});
}

TEST_CASE("blocked grid moves stay put") {
    GridMap map = load_map_file(data_dir() + "/maps/office.map");
    CHECK(map.width == 12);
    CHECK(map.height == 9);
    World w = office_world();
    int s = grid_state_id(map, 0, 4);
    const auto& row = w.mdp->transitions(s, 3);
    bool self = false;
    for (const auto& t : row)
        if (t.next == s && t.prob == doctest::Approx(0.9)) self = true;
    CHECK(self);
}

TEST_CASE("unknown task ids are input errors") {
    CHECK_THROWS_WITH_AS(find_task("office/9.9"),
                         doctest::Contains("unknown task"), InputError);
    CHECK_THROWS_WITH_AS(find_task("bogus/1"),
                         doctest::Contains("unknown task"), InputError);
}

TEST_CASE("every advertised task id resolves") {
    std::vector<std::string> ids = all_task_ids();
    CHECK(ids.size() == 13);
    for (const std::string& id : ids) {
        Task t = find_task(id);
        CHECK(t.spec.id == id);
        CHECK(t.spec.eplength > 0);
        CHECK(t.spec.batch_n > 0);
        CHECK(t.mdp->state_count() > 0);
    }
}

TEST_CASE("every bundled machine file loads") {
    for (const char* name :
         {"office_2.1", "office_2.2", "office_2.3", "office_2.4", "craft_3.1",
          "craft_3.2", "craft_3.3", "craft_3.4", "traffic_truth", "traffic_inferred"}) {
        RewardMachine m = load_machine_file(data_dir() + "/machines/" + name + ".rm");
        CHECK(m.state_count() > 0);
    }
}
