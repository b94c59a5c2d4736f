#include "rml/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>

#include <json.hpp>

#include "rml/jirp.hpp"
#include "rml/product.hpp"
#include "rml/qas.hpp"

namespace rml {

std::string default_output_root() {
    if (const char* env = std::getenv("RMLEARN_OUTPUT_ROOT"); env && *env) return env;
    return "./out";
}

namespace {

std::string sanitize(std::string s) {
    for (char& c : s)
        if (c == '/' || c == '\\') c = '-';
    return s;
}

long first_step_reaching(const std::vector<EvalPoint>& curve, double threshold) {
    for (const EvalPoint& p : curve)
        if (p.eval_reward >= threshold) return p.env_steps;
    return -1;
}

/// Curve and final stats shared by every method, plus jirp's machine history.
struct SeedRun {
    SeedSummary summary;
    std::vector<RewardMachine> machines;
};

SeedRun run_one_seed(const Task& task, const ExperimentConfig& cfg, std::uint64_t seed,
                     int eplength, int batch_n, double optimum) {
    SeedRun out;
    out.summary.seed = seed;
    if (cfg.method == "qas") {
        QasConfig qc;
        qc.eplength = eplength;
        qc.episode_budget = cfg.episode_budget;
        qc.max_env_steps = cfg.max_env_steps;
        qc.hyper = cfg.hyper;
        qc.eval_every = cfg.eval_every;
        qc.eval_rollouts = cfg.eval_rollouts;
        qc.seed = seed;
        QasResult res = qas_run(*task.mdp, task.spec, qc);
        out.summary.curve = res.curve;
        out.summary.env_steps = res.env_steps;
        out.summary.final_machine_size = 0;
    } else {
        JirpConfig jc;
        jc.eplength = eplength;
        jc.batch_n = batch_n;
        jc.episode_budget = cfg.episode_budget;
        jc.max_env_steps = cfg.max_env_steps;
        jc.hyper = cfg.hyper;
        jc.eval_every = cfg.eval_every;
        jc.eval_rollouts = cfg.eval_rollouts;
        jc.seed = seed;
        JirpResult res = [&] {
            if (cfg.method == "jirp-rpni") {
                jc.learner = JirpConfig::Learner::Rpni;
                return jirp_optimized(*task.mdp, task.spec, jc);
            }
            if (cfg.method == "jirp-exact") {
                jc.learner = JirpConfig::Learner::Exact;
                return jirp_optimized(*task.mdp, task.spec, jc);
            }
            if (cfg.method == "jirp-base") return jirp_base(*task.mdp, task.spec, jc);
            throw InputError("unknown method: " + cfg.method);
        }();
        out.summary.curve = res.metrics.curve;
        out.summary.env_steps = res.metrics.env_steps;
        out.summary.inference_count = res.metrics.inference_count;
        out.summary.final_machine_size = res.machine.state_count();
        out.machines = res.metrics.machines;
    }
    out.summary.final_reward =
        out.summary.curve.empty() ? 0.0 : out.summary.curve.back().eval_reward;
    out.summary.steps_to_90pct = first_step_reaching(out.summary.curve, 0.9 * optimum);
    return out;
}

void write_curve_csv(const std::string& path, const std::vector<SeedSummary>& seeds) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << "step,seed,eval_reward\n";
    char row[96];
    for (const SeedSummary& s : seeds)
        for (const EvalPoint& p : s.curve) {
            std::snprintf(row, sizeof row, "%ld,%llu,%.6f\n", p.env_steps,
                          static_cast<unsigned long long>(s.seed), p.eval_reward);
            out << row;
        }
}

void write_aggregate_csv(const std::string& path, const std::vector<SeedSummary>& seeds) {
    std::map<long, std::pair<double, long>> buckets;
    for (const SeedSummary& s : seeds)
        for (const EvalPoint& p : s.curve) {
            auto& [sum, count] = buckets[p.env_steps / 10 * 10];
            sum += p.eval_reward;
            ++count;
        }
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << "step,mean_eval_reward\n";
    char row[64];
    for (const auto& [step, agg] : buckets) {
        std::snprintf(row, sizeof row, "%ld,%.6f\n", step, agg.first / agg.second);
        out << row;
    }
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    if (cfg.seeds.empty()) throw InputError("run_experiment: need at least one seed");
    if (cfg.episode_budget < 1) throw InputError("run_experiment: episode budget must be >= 1");
    Task task = find_task(cfg.task_id);
    if (cfg.method != "jirp-rpni" && cfg.method != "jirp-exact" && cfg.method != "jirp-base" &&
        cfg.method != "qas")
        throw InputError("unknown method: " + cfg.method);

    int eplength = cfg.eplength > 0 ? cfg.eplength : task.spec.eplength;
    int batch_n = cfg.batch_n > 0 ? cfg.batch_n : task.spec.batch_n;

    ProductMdp product(*task.mdp, task.spec.truth);
    ValueTable vt = value_iteration(product);
    double optimum = greedy_policy_episode_value(product, vt, eplength);

    ExperimentResult result;
    result.optimum = optimum;
    result.out_dir = cfg.out_dir.empty()
                         ? default_output_root() + "/" + sanitize(cfg.task_id) + "_" + cfg.method
                         : cfg.out_dir;

    namespace fs = std::filesystem;
    fs::create_directories(result.out_dir);
    fs::create_directories(result.out_dir + "/machines");

    std::vector<SeedRun> runs;
    for (std::uint64_t seed : cfg.seeds)
        runs.push_back(run_one_seed(task, cfg, seed, eplength, batch_n, optimum));

    for (const SeedRun& run : runs) {
        result.seeds.push_back(run.summary);
        for (std::size_t i = 0; i < run.machines.size(); ++i)
            save_machine_file(run.machines[i],
                              result.out_dir + "/machines/seed" +
                                  std::to_string(run.summary.seed) + "_inference" +
                                  std::to_string(i + 1) + ".rm");
        if (!run.machines.empty())
            save_machine_file(run.machines.back(), result.out_dir + "/machines/seed" +
                                                       std::to_string(run.summary.seed) +
                                                       "_final.rm");
    }

    double reward_sum = 0.0, inference_sum = 0.0;
    std::vector<long> steps90;
    std::vector<int> sizes;
    for (const SeedSummary& s : result.seeds) {
        reward_sum += s.final_reward;
        inference_sum += double(s.inference_count);
        steps90.push_back(s.steps_to_90pct < 0 ? std::numeric_limits<long>::max()
                                               : s.steps_to_90pct);
        sizes.push_back(s.final_machine_size);
    }
    std::size_t n = result.seeds.size();
    result.final_reward_mean = reward_sum / double(n);
    result.inference_count_mean = inference_sum / double(n);
    std::sort(steps90.begin(), steps90.end());
    std::sort(sizes.begin(), sizes.end());
    long med = steps90[(n - 1) / 2];
    result.steps_to_90pct_median = med == std::numeric_limits<long>::max() ? -1 : med;
    result.final_machine_size_median = sizes[(n - 1) / 2];

    write_curve_csv(result.out_dir + "/curve.csv", result.seeds);
    write_aggregate_csv(result.out_dir + "/aggregate.csv", result.seeds);

    nlohmann::ordered_json summary;
    summary["task"] = cfg.task_id;
    summary["method"] = cfg.method;
    summary["rng"] = Rng::algorithm();
    summary["eplength"] = eplength;
    summary["batch_n"] = batch_n;
    summary["episode_budget"] = cfg.episode_budget;
    summary["max_env_steps"] = cfg.max_env_steps;
    summary["optimum"] = optimum;
    summary["final_reward_mean"] = result.final_reward_mean;
    summary["steps_to_90pct_median"] = result.steps_to_90pct_median;
    summary["inference_count_mean"] = result.inference_count_mean;
    summary["final_machine_size_median"] = result.final_machine_size_median;
    summary["per_seed"] = nlohmann::ordered_json::array();
    for (const SeedSummary& s : result.seeds) {
        nlohmann::ordered_json row;
        row["seed"] = s.seed;
        row["final_reward"] = s.final_reward;
        row["steps_to_90pct"] = s.steps_to_90pct;
        row["inference_count"] = s.inference_count;
        row["final_machine_size"] = s.final_machine_size;
        row["env_steps"] = s.env_steps;
        summary["per_seed"].push_back(row);
    }
    std::ofstream js(result.out_dir + "/summary.json");
    if (!js) throw InputError("cannot write " + result.out_dir + "/summary.json");
    js << summary.dump(2) << '\n';

    return result;
}

} // namespace rml
