#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rml/harness.hpp"
#include "rml/inference.hpp"
#include "rml/sample.hpp"

namespace {

int classify(const rml::InputError& e) {
    return std::string(e.what()).rfind("unknown", 0) == 0 ? 2 : 1;
}

std::string format_labels(const rml::PropSet& u, const std::vector<rml::Label>& labels) {
    std::string out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) out += ";";
        out += u.format_label(labels[i]);
    }
    return out;
}

int cmd_run(const rml::ExperimentConfig& cfg) {
    rml::ExperimentResult res = rml::run_experiment(cfg);
    std::printf("task %s method %s seeds %zu\n", cfg.task_id.c_str(), cfg.method.c_str(),
                cfg.seeds.size());
    std::printf("optimum %.6f final_reward_mean %.6f\n", res.optimum, res.final_reward_mean);
    std::printf("steps_to_90pct_median %ld inference_count_mean %.2f\n",
                res.steps_to_90pct_median, res.inference_count_mean);
    std::printf("wrote %s\n", res.out_dir.c_str());
    return 0;
}

int cmd_check_equiv(const std::string& task_id, const std::string& m1_path,
                    const std::string& m2_path, int horizon) {
    rml::Task task = rml::find_task(task_id);
    rml::RewardMachine m1 = rml::load_machine_file(m1_path);
    rml::RewardMachine m2 = rml::load_machine_file(m2_path);
    auto witness = rml::check_equivalence_on_attainable(*task.mdp, m1, m2, horizon);
    if (!witness) {
        std::printf("equivalent: no attainable distinguishing sequence up to length %d\n",
                    horizon);
        std::printf("result equivalent\n");
    } else {
        std::string w = format_labels(m1.universe(), *witness);
        std::printf("distinguishing attainable sequence (length %zu): %s\n", witness->size(),
                    w.c_str());
        auto r1 = m1.run(*witness);
        auto r2 = m2.run(*witness);
        std::printf("m1 outputs: %g  m2 outputs: %g (on the last label)\n", r1.back(), r2.back());
        std::printf("result witness\n");
    }
    return 0;
}

int cmd_verify_transfer(const std::string& task_id, const std::string& m1_path,
                        const std::string& m2_path, double tol, int horizon) {
    rml::Task task = rml::find_task(task_id);
    rml::RewardMachine m1 = rml::load_machine_file(m1_path);
    rml::RewardMachine m2 = rml::load_machine_file(m2_path);
    rml::TransferReport rep = rml::verify_transfer_theorem(*task.mdp, m1, m2, tol, horizon);
    if (rep.inequivalence_witness) {
        std::string w = format_labels(m1.universe(), *rep.inequivalence_witness);
        std::printf("precondition failed: machines differ on attainable sequence %s\n", w.c_str());
        std::printf("result precondition-failed\n");
        return 0;
    }
    std::printf("equivalent state pairs: %d\n", rep.equivalent_pairs);
    std::printf("max q deviation over pairs: %.3e (tolerance %.3e)\n", rep.max_deviation,
                2 * tol);
    std::printf("result %s\n", rep.ok ? "ok" : "violated");
    return 0;
}

int cmd_learn(const std::string& sample_path, const std::string& learner, int kmax, long budget,
              const std::string& out_path) {
    if (learner != "rpni" && learner != "exact")
        throw rml::InputError("unknown learner: " + learner);
    rml::Sample x = rml::load_sample_file(sample_path);
    rml::RewardMachine m = [&] {
        if (learner == "rpni") return rml::rpni_rm(x, 0.0);
        rml::LearnResult res = rml::minimal_consistent_machine(x, kmax, budget);
        if (res.status == rml::LearnStatus::Found) return *res.machine;
        throw std::runtime_error(
            res.status == rml::LearnStatus::BudgetExhausted
                ? "search budget exhausted at size " + std::to_string(res.k_reached)
                : "no consistent machine with at most " + std::to_string(kmax) + " states");
    }();
    if (out_path.empty()) {
        rml::save_machine(m, std::cout);
    } else {
        rml::save_machine_file(m, out_path);
        std::printf("wrote %s (%d states)\n", out_path.c_str(), m.state_count());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reward-machine learning toolkit"};
    app.require_subcommand(1);

    rml::ExperimentConfig cfg;
    auto* run = app.add_subcommand("run", "Run a learning experiment");
    run->set_config("--config", "", "Config file with key=value lines");
    run->add_option("--task", cfg.task_id, "Task id, e.g. office/2.1")->required();
    run->add_option("--method", cfg.method, "jirp-rpni | jirp-exact | jirp-base | qas")
        ->required();
    run->add_option("--seeds", cfg.seeds, "Comma-separated seed list")
        ->required()
        ->delimiter(',');
    run->add_option("--budget", cfg.episode_budget, "Episode budget per seed");
    run->add_option("--max-steps", cfg.max_env_steps,
                    "Stop a seed once it has taken this many environment steps");
    run->add_option("--eplength", cfg.eplength, "Episode length (default: task setting)");
    run->add_option("--batch", cfg.batch_n, "Batching period N (default: task setting)");
    run->add_option("--out", cfg.out_dir, "Output directory");
    run->add_option("--alpha", cfg.hyper.alpha, "Learning rate");
    run->add_option("--epsilon", cfg.hyper.epsilon, "Exploration rate");
    run->add_option("--gamma", cfg.hyper.gamma, "Discount factor");
    run->add_option("--eval-every", cfg.eval_every, "Episodes between evaluations");
    run->add_option("--eval-rollouts", cfg.eval_rollouts, "Rollouts per evaluation");

    std::string ce_task, ce_m1, ce_m2;
    int ce_horizon = 50;
    auto* ce = app.add_subcommand("check-equiv",
                                  "Compare two machines on a task MDP's attainable sequences");
    ce->add_option("--mdp", ce_task, "Task id providing the MDP")->required();
    ce->add_option("--m1", ce_m1, "First machine file")->required();
    ce->add_option("--m2", ce_m2, "Second machine file")->required();
    ce->add_option("--horizon", ce_horizon, "Maximum sequence length searched");

    std::string vt_task, vt_m1, vt_m2;
    double vt_tol = 1e-10;
    int vt_horizon = 50;
    auto* vt = app.add_subcommand(
        "verify-transfer", "Check q-equality across equivalent machine states via value iteration");
    vt->add_option("--task", vt_task, "Task id providing the MDP")->required();
    vt->add_option("--m1", vt_m1, "First machine file")->required();
    vt->add_option("--m2", vt_m2, "Second machine file")->required();
    vt->add_option("--tol", vt_tol, "Value-iteration tolerance");
    vt->add_option("--horizon", vt_horizon, "Equivalence search horizon");

    std::string ln_sample, ln_learner = "rpni", ln_out;
    int ln_kmax = 10;
    long ln_budget = 10000000;
    auto* ln = app.add_subcommand("learn", "Learn a machine from a trace sample file");
    ln->add_option("--sample", ln_sample, "Sample file")->required();
    ln->add_option("--learner", ln_learner, "rpni | exact");
    ln->add_option("--kmax", ln_kmax, "Exact learner: maximum machine size");
    ln->add_option("--budget", ln_budget, "Exact learner: search node budget");
    ln->add_option("--out", ln_out, "Write the machine here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(cfg);
        if (ce->parsed()) return cmd_check_equiv(ce_task, ce_m1, ce_m2, ce_horizon);
        if (vt->parsed()) return cmd_verify_transfer(vt_task, vt_m1, vt_m2, vt_tol, vt_horizon);
        if (ln->parsed()) return cmd_learn(ln_sample, ln_learner, ln_kmax, ln_budget, ln_out);
    } catch (const rml::InputError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return classify(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
