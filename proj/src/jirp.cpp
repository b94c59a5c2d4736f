#include "rml/jirp.hpp"

#include <stdexcept>
#include <string>

#include "rml/equivalence.hpp"

namespace rml {

RewardMachine initial_hypothesis(const PropSet& universe) {
    int labels = int(universe.label_count());
    return RewardMachine(universe, 1, 0, std::vector<MachineState>(labels, 0),
                         std::vector<Reward>(labels, 0.0));
}

QTableSet transfer_q(const QTableSet& q, const RewardMachine& prev, const RewardMachine& next) {
    if (!(prev.universe() == next.universe()))
        throw InputError("transfer_q: machines have different proposition universes");
    if (q.machine_states() != prev.state_count())
        throw InputError("transfer_q: q-table set is keyed by a different machine");
    QTableSet out(next.state_count(), q.mdp_states(), q.actions(), q.hyper());
    std::vector<int> cls = equivalence_classes(prev, next);
    int n_prev = prev.state_count();
    for (MachineState vn = 0; vn < next.state_count(); ++vn)
        for (MachineState vp = 0; vp < n_prev; ++vp)
            if (cls[vp] == cls[n_prev + vn]) {
                out.copy_table(vn, q, vp);
                break;
            }
    return out;
}

namespace {

RewardMachine infer(const Sample& x, const JirpConfig& cfg, bool force_exact) {
    if (!force_exact && cfg.learner == JirpConfig::Learner::Rpni) return rpni_rm(x, 0.0);
    LearnResult res = minimal_consistent_machine(x, cfg.exact_k_max, cfg.exact_budget);
    if (res.status == LearnStatus::Found) return *res.machine;
    std::string why = res.status == LearnStatus::BudgetExhausted
                          ? "search budget exhausted after " + std::to_string(res.expansions) +
                                " expansions at size " + std::to_string(res.k_reached)
                          : "no consistent machine with at most " +
                                std::to_string(res.k_reached) + " states";
    throw std::runtime_error("machine inference failed: " + why);
}

void add_counterexample(Sample& x, const Trace& t, JirpMetrics& metrics) {
    switch (x.insert(t)) {
        case InsertResult::Added:
            ++metrics.counterexample_count;
            metrics.counterexamples.push_back(t);
            metrics.counterexample_hypothesis.push_back(metrics.inference_count);
            break;
        case InsertResult::Duplicate:
            break;
        case InsertResult::Conflict:
            throw std::runtime_error(
                "counterexample conflicts with the sample on a shared prefix; "
                "environment rewards are not deterministic over labels");
    }
}

JirpResult jirp_loop(const LabeledMdp& mdp, const TaskSpec& task, const JirpConfig& cfg,
                     bool batched) {
    if (cfg.eplength < 1) throw InputError("jirp: eplength must be >= 1");
    if (cfg.batch_n < 1) throw InputError("jirp: batch period must be >= 1");
    if (!(task.truth.universe() == mdp.props()))
        throw InputError("jirp: task machine and MDP have different universes");

    Rng master(cfg.seed);
    RewardMachine hypothesis = initial_hypothesis(mdp.props());
    QTableSet q(1, mdp.state_count(), mdp.action_count(), cfg.hyper);
    Sample sample(mdp.props());
    Sample pending(mdp.props());

    JirpResult out{hypothesis, q, {}};
    JirpMetrics& metrics = out.metrics;

    auto infer_now = [&](const Sample& from) {
        RewardMachine next = infer(from, cfg, !batched);
        if (batched) {
            out.q = transfer_q(out.q, out.machine, next);
        } else {
            out.q = QTableSet(next.state_count(), mdp.state_count(), mdp.action_count(),
                              cfg.hyper);
        }
        out.machine = next;
        ++metrics.inference_count;
        metrics.machines.push_back(next);
        metrics.inference_steps.push_back(metrics.env_steps);
    };

    for (long n = 1; n <= cfg.episode_budget; ++n) {
        Rng episode_rng = master.substream(1, std::uint64_t(n));
        EpisodeResult ep = qrm_episode(mdp, out.machine, out.q, cfg.eplength,
                                       RewardSource::Environment, &task, cfg.terminate_on_goal,
                                       episode_rng);
        ++metrics.episodes;
        metrics.env_steps += ep.steps;

        if (!out.machine.is_consistent(ep.trace)) {
            if (batched) {
                add_counterexample(pending, ep.trace, metrics);
            } else {
                add_counterexample(sample, ep.trace, metrics);
                infer_now(sample);
            }
        }
        if (batched && n % cfg.batch_n == 0 && !pending.empty()) {
            for (const Trace& t : pending.traces()) sample.insert(t);
            pending = Sample(mdp.props());
            infer_now(sample);
        }

        if (cfg.eval_every > 0 && n % cfg.eval_every == 0) {
            Rng eval_rng = master.substream(2, std::uint64_t(n));
            double r = greedy_policy_value(mdp, out.machine, out.q, cfg.eval_rollouts,
                                           cfg.eplength, &task, eval_rng);
            metrics.curve.push_back({metrics.env_steps, r, n});
        }
        if (cfg.max_env_steps > 0 && metrics.env_steps >= cfg.max_env_steps) break;
    }
    return out;
}

} // namespace

JirpResult jirp_base(const LabeledMdp& mdp, const TaskSpec& task, const JirpConfig& cfg) {
    return jirp_loop(mdp, task, cfg, false);
}

JirpResult jirp_optimized(const LabeledMdp& mdp, const TaskSpec& task, const JirpConfig& cfg) {
    return jirp_loop(mdp, task, cfg, true);
}

} // namespace rml
