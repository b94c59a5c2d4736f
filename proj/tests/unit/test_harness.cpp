#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "rml/envs.hpp"
#include "rml/harness.hpp"
#include "rml/jirp.hpp"

using namespace rml;

namespace {

RewardMachine with_flipped_output(const RewardMachine& m, MachineState v, Label l,
                                  Reward r) {
    int labels = int(m.universe().label_count());
    std::vector<MachineState> delta(std::size_t(m.state_count()) * labels);
    std::vector<Reward> sigma(delta.size());
    for (MachineState s = 0; s < m.state_count(); ++s)
        for (Label x = 0; x < Label(labels); ++x) {
            delta[std::size_t(s) * labels + x] = m.delta(s, x);
            sigma[std::size_t(s) * labels + x] = m.sigma(s, x);
        }
    sigma[std::size_t(v) * labels + l] = r;
    return RewardMachine(m.universe(), m.state_count(), m.initial_state(),
                         std::move(delta), std::move(sigma));
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("a machine never disagrees with itself on attainable traces") {
    Task task = find_task("office/2.1");
    auto w = check_equivalence_on_attainable(*task.mdp, task.spec.truth,
                                             task.spec.truth, 50);
    CHECK(!w.has_value());
}

TEST_CASE("the bundled learned traffic machine matches the truth on the roads") {
    Task task = find_task("traffic/1");
    RewardMachine learned =
        load_machine_file(data_dir() + "/machines/traffic_inferred.rm");
    CHECK(learned.state_count() < task.spec.truth.state_count());
    auto w = check_equivalence_on_attainable(*task.mdp, task.spec.truth, learned, 50);
    CHECK(!w.has_value());
}

TEST_CASE("a planted reward flip is found at the nearest coffee cell") {
    Task task = find_task("office/2.1");
    const RewardMachine& truth = task.spec.truth;
    Label c = truth.universe().bit("c");
    RewardMachine flipped = with_flipped_output(truth, 0, c, 1.0);
    auto w = check_equivalence_on_attainable(*task.mdp, truth, flipped, 20);
    REQUIRE(w.has_value());
    CHECK(w->size() == 5);
    CHECK(w->back() == c);
    CHECK(truth.run(*w) != flipped.run(*w));
}

TEST_CASE("horizon and universe mismatches are input errors") {
    Task task = find_task("office/2.1");
    CHECK_THROWS_AS(check_equivalence_on_attainable(*task.mdp, task.spec.truth,
                                                    task.spec.truth, 0),
                    InputError);
    RewardMachine foreign = initial_hypothesis(PropSet({"x"}));
    CHECK_THROWS_AS(
        check_equivalence_on_attainable(*task.mdp, task.spec.truth, foreign, 10),
        InputError);
}

TEST_CASE("transfer holds between a machine and itself") {
    Task task = find_task("office/2.1");
    TransferReport rep =
        verify_transfer_theorem(*task.mdp, task.spec.truth, task.spec.truth);
    CHECK(rep.ok);
    CHECK(!rep.inequivalence_witness.has_value());
    CHECK(rep.equivalent_pairs >= task.spec.truth.state_count());
    CHECK(rep.max_deviation <= 2e-10);
}

TEST_CASE("transfer holds across a state permutation") {
    auto cw = testutil::corridor(4);
    const PropSet& u = cw.truth.universe();
    std::vector<MachineState> delta{0, 0, 1, 0};
    std::vector<Reward> sigma{0.0, 0.0, 0.0, 1.0};
    RewardMachine permuted(u, 2, 1, std::move(delta), std::move(sigma));
    TransferReport rep = verify_transfer_theorem(*cw.mdp, cw.truth, permuted);
    CHECK(rep.ok);
    CHECK(rep.equivalent_pairs == 2);
    CHECK(rep.max_deviation <= 2e-10);
}

TEST_CASE("transfer holds between the traffic machines") {
    Task task = find_task("traffic/1");
    RewardMachine learned =
        load_machine_file(data_dir() + "/machines/traffic_inferred.rm");
    TransferReport rep = verify_transfer_theorem(*task.mdp, task.spec.truth, learned);
    CHECK(rep.ok);
    CHECK(rep.equivalent_pairs > 0);
    CHECK(rep.max_deviation <= 2e-10);
}

TEST_CASE("an inequivalent pair reports its witness and skips the comparison") {
    Task task = find_task("office/2.1");
    const RewardMachine& truth = task.spec.truth;
    RewardMachine flipped =
        with_flipped_output(truth, 0, truth.universe().bit("c"), 1.0);
    TransferReport rep = verify_transfer_theorem(*task.mdp, truth, flipped);
    CHECK(!rep.ok);
    REQUIRE(rep.inequivalence_witness.has_value());
    CHECK(rep.equivalent_pairs == 0);
    CHECK(rep.max_deviation == 0.0);
}

TEST_CASE("experiments write reproducible files") {
    namespace fs = std::filesystem;
    std::string dir = (fs::temp_directory_path() / "rmlearn_harness_test").string();
    fs::remove_all(dir);

    ExperimentConfig cfg;
    cfg.task_id = "office/2.1";
    cfg.method = "jirp-rpni";
    cfg.seeds = {0, 1};
    cfg.episode_budget = 30;
    cfg.eval_every = 10;
    cfg.eval_rollouts = 2;
    cfg.out_dir = dir;

    ExperimentResult res = run_experiment(cfg);
    CHECK(res.out_dir == dir);
    CHECK(res.optimum > 0.9);
    REQUIRE(res.seeds.size() == 2);
    for (const SeedSummary& s : res.seeds) {
        CHECK(s.curve.size() == 3);
        for (std::size_t i = 1; i < s.curve.size(); ++i)
            CHECK(s.curve[i].env_steps >= s.curve[i - 1].env_steps);
        CHECK(s.env_steps == s.curve.back().env_steps);
    }

    REQUIRE(fs::exists(dir + "/curve.csv"));
    REQUIRE(fs::exists(dir + "/aggregate.csv"));
    REQUIRE(fs::exists(dir + "/summary.json"));

    std::string curve = slurp(dir + "/curve.csv");
    CHECK(curve.rfind("step,seed,eval_reward\n", 0) == 0);
    int rows = 0;
    for (char ch : curve)
        if (ch == '\n') ++rows;
    CHECK(rows == 1 + 2 * 3);

    std::string summary = slurp(dir + "/summary.json");
    CHECK(summary.find("\"task\": \"office/2.1\"") != std::string::npos);
    CHECK(summary.find("\"rng\": \"splitmix64-counter-v1\"") != std::string::npos);

    bool has_final_machine = false;
    for (const SeedSummary& s : res.seeds)
        if (s.inference_count > 0) {
            has_final_machine = true;
            CHECK(fs::exists(dir + "/machines/seed" + std::to_string(s.seed) +
                             "_final.rm"));
        }
    CHECK(has_final_machine);

    ExperimentResult again = run_experiment(cfg);
    CHECK(slurp(dir + "/curve.csv") == curve);
    CHECK(slurp(dir + "/summary.json") == summary);
    CHECK(again.final_reward_mean == res.final_reward_mean);
    fs::remove_all(dir);
}

TEST_CASE("unknown tasks and methods are input errors") {
    ExperimentConfig cfg;
    cfg.task_id = "warehouse/1";
    cfg.method = "jirp-rpni";
    cfg.seeds = {0};
    CHECK_THROWS_WITH_AS(run_experiment(cfg), doctest::Contains("unknown task"),
                         InputError);
    cfg.task_id = "traffic/1";
    cfg.method = "sarsa";
    CHECK_THROWS_WITH_AS(run_experiment(cfg), doctest::Contains("unknown method"),
                         InputError);
}
