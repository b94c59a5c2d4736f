#pragma once

#include <cstdint>
#include <vector>

#include "rml/inference.hpp"
#include "rml/qrm.hpp"

namespace rml {

struct JirpConfig {
    int eplength = 1000;
    /// Counterexample batching period in episodes (ignored by jirp_base,
    /// which re-infers on every counterexample).
    int batch_n = 30;
    long episode_budget = 1000;
    /// Extra stop condition: end after the episode in which cumulative
    /// environment steps reach this; 0 means episodes only.
    long max_env_steps = 0;
    enum class Learner { Rpni, Exact } learner = Learner::Rpni;
    QHyper hyper;
    /// Greedy evaluation every this many episodes (0 disables) with this many
    /// rollouts.
    int eval_every = 100;
    int eval_rollouts = 20;
    int exact_k_max = 10;
    long exact_budget = 10000000;
    /// Cut training episodes at the task goal instead of running the full
    /// eplength. Off by default: full-length traces record what happens after
    /// the goal, which the learners need to place the goal state correctly.
    bool terminate_on_goal = false;
    std::uint64_t seed = 0;
};

struct JirpMetrics {
    std::vector<EvalPoint> curve;
    long episodes = 0;
    long env_steps = 0;
    long counterexample_count = 0;
    long inference_count = 0;
    /// Hypothesis history: machines[i] was inferred with env_steps equal to
    /// inference_steps[i] already taken.
    std::vector<RewardMachine> machines;
    std::vector<long> inference_steps;
    /// Every stored counterexample, with the number of inferences that had
    /// happened when it was collected (0 = collected against the initial
    /// hypothesis, i = collected against machines[i-1]).
    std::vector<Trace> counterexamples;
    std::vector<long> counterexample_hypothesis;
};

struct JirpResult {
    RewardMachine machine;
    QTableSet q;
    JirpMetrics metrics;
};

/// One machine state, every label a self-loop with reward 0: the hypothesis
/// before any counterexample exists.
RewardMachine initial_hypothesis(const PropSet& universe);

/// Fresh q-tables for `next`, copying the table of the lowest-id `prev` state
/// equivalent to each `next` state; states without an equivalent partner stay
/// zero-initialized.
QTableSet transfer_q(const QTableSet& q, const RewardMachine& prev, const RewardMachine& next);

/// Base loop: QRM episodes against the hypothesis with observed rewards; on
/// an inconsistent episode trace the trace joins the sample, the machine is
/// re-inferred with the exact minimal learner, and the q-tables restart from
/// zero. Throws on learner failure (budget exhausted / k_max exceeded).
JirpResult jirp_base(const LabeledMdp& mdp, const TaskSpec& task, const JirpConfig& cfg);

/// Batched loop: counterexamples buffer in X_new; every batch_n episodes a
/// nonempty buffer is merged into the sample, a machine is inferred with the
/// configured learner, and q-tables carry over through transfer_q.
JirpResult jirp_optimized(const LabeledMdp& mdp, const TaskSpec& task, const JirpConfig& cfg);

} // namespace rml
