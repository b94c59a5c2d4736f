#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rml/envs.hpp"
#include "rml/machine.hpp"
#include "rml/mdp.hpp"
#include "rml/qrm.hpp"

namespace rml {

/// Shortest attainable label sequence on which the machines' reward outputs
/// differ, or nothing if no such sequence of length <= horizon exists. The
/// search runs over (reachable MDP state set, v1, v2) triples — a lazy subset
/// construction of the MDP's label dynamics — so only sequences the MDP can
/// actually produce count. Throws InputError when horizon < 1 or the
/// universes differ.
std::optional<std::vector<Label>> check_equivalence_on_attainable(const LabeledMdp& mdp,
                                                                  const RewardMachine& m1,
                                                                  const RewardMachine& m2,
                                                                  int horizon);

struct TransferReport {
    /// Set when an attainable sequence distinguishes the machines; the
    /// q-comparison is skipped in that case.
    std::optional<std::vector<Label>> inequivalence_witness;
    int equivalent_pairs = 0;
    double max_deviation = 0.0;
    bool ok = false;
};

/// Checks the q-transfer soundness claim against the value-iteration oracle:
/// after verifying the machines agree on attainable sequences (witness search
/// up to equiv_horizon), runs value iteration on both products and compares
/// q*(s, v1, a) with q*(s, v2, a) for every equivalent state pair (v1, v2)
/// and every (s, a); ok iff no witness and max deviation <= 2 * tol.
TransferReport verify_transfer_theorem(const LabeledMdp& mdp, const RewardMachine& m1,
                                       const RewardMachine& m2, double tol = 1e-10,
                                       int equiv_horizon = 50);

struct ExperimentConfig {
    std::string task_id;
    /// jirp-rpni | jirp-exact | jirp-base | qas
    std::string method;
    std::vector<std::uint64_t> seeds;
    long episode_budget = 1000;
    long max_env_steps = 0;
    /// -1 means the task's bundled default.
    int eplength = -1;
    int batch_n = -1;
    std::string out_dir;
    QHyper hyper;
    int eval_every = 100;
    int eval_rollouts = 20;
};

struct SeedSummary {
    std::uint64_t seed = 0;
    double final_reward = 0.0;
    /// First step count whose evaluation reached 90% of the value-iteration
    /// optimum; -1 when never reached.
    long steps_to_90pct = -1;
    long inference_count = 0;
    int final_machine_size = 0;
    long env_steps = 0;
    std::vector<EvalPoint> curve;
};

struct ExperimentResult {
    std::string out_dir;
    /// Expected undiscounted episode reward of the exact optimal policy.
    double optimum = 0.0;
    std::vector<SeedSummary> seeds;
    double final_reward_mean = 0.0;
    long steps_to_90pct_median = -1;
    double inference_count_mean = 0.0;
    int final_machine_size_median = 0;
};

/// Runs every seed, writes curve.csv (step,seed,eval_reward), aggregate.csv
/// (mean curve over seeds in 10-step buckets), summary.json, and machine
/// snapshots per inference under <out>/machines/. Identical config and seeds
/// produce byte-identical files. Throws InputError for unknown task or
/// method ids.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Output root when a config gives no out_dir: $RMLEARN_OUTPUT_ROOT or
/// "./out".
std::string default_output_root();

} // namespace rml
