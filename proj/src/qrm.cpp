#include "rml/qrm.hpp"

#include <algorithm>

#include "rml/product.hpp"

namespace rml {

QTableSet::QTableSet(int machine_states, int mdp_states, int actions, QHyper hyper)
    : machine_states_(machine_states),
      mdp_states_(mdp_states),
      actions_(actions),
      hyper_(hyper),
      q_(std::size_t(machine_states) * mdp_states * actions, 0.0) {
    if (machine_states < 1 || mdp_states < 1 || actions < 1)
        throw InputError("QTableSet: dimensions must be positive");
    if (!(hyper.alpha > 0.0 && hyper.alpha <= 1.0))
        throw InputError("QTableSet: alpha must be in (0,1]");
    if (!(hyper.epsilon >= 0.0 && hyper.epsilon <= 1.0))
        throw InputError("QTableSet: epsilon must be in [0,1]");
}

double QTableSet::max_at(MachineState v, int s) const {
    std::size_t base = index(v, s, 0);
    double best = q_[base];
    for (int a = 1; a < actions_; ++a) best = std::max(best, q_[base + a]);
    return best;
}

void QTableSet::copy_table(MachineState to, const QTableSet& src, MachineState from) {
    if (src.mdp_states_ != mdp_states_ || src.actions_ != actions_)
        throw InputError("copy_table: table dimensions differ");
    std::copy_n(src.q_.begin() + src.index(from, 0, 0), std::size_t(mdp_states_) * actions_,
                q_.begin() + index(to, 0, 0));
}

int epsilon_greedy(const QTableSet& q, MachineState v, int s, double epsilon, Rng& rng) {
    int actions = q.actions();
    if (epsilon > 0.0 && rng.next_double() < epsilon)
        return int(rng.next_below(std::uint32_t(actions)));
    double best = q.at(v, s, 0);
    int first = 0;
    int nties = 1;
    for (int a = 1; a < actions; ++a) {
        double val = q.at(v, s, a);
        if (val > best) {
            best = val;
            first = a;
            nties = 1;
        } else if (val == best) {
            ++nties;
        }
    }
    if (nties == 1) return first;
    int pick = int(rng.next_below(std::uint32_t(nties)));
    for (int a = first;; ++a) {
        if (q.at(v, s, a) == best && pick-- == 0) return a;
    }
}

namespace {

struct RewardTracker {
    const TaskSpec* task;
    const RewardMachine* hypothesis;
    std::vector<bool> hyp_absorbing;
    MachineState truth_state = 0;

    RewardTracker(const RewardMachine& machine, const TaskSpec* t) : task(t), hypothesis(&machine) {
        if (task)
            truth_state = task->truth.initial_state();
        else
            hyp_absorbing = absorbing_zero_states(machine);
    }

    /// Reward the environment pays for a step with label l whose
    /// hypothesis-machine successor is v_next, plus whether the episode ends
    /// there. Without a task the hypothesis machine itself plays the
    /// environment.
    std::pair<Reward, bool> observe(MachineState v_prev, MachineState v_next, Label l) {
        if (task) {
            Reward r = task->truth.sigma(truth_state, l);
            truth_state = task->truth.delta(truth_state, l);
            return {r, task->done(r, truth_state)};
        }
        Reward r = hypothesis->sigma(v_prev, l);
        return {r, episode_done(hyp_absorbing, r, v_next)};
    }
};

} // namespace

EpisodeResult qrm_episode(const LabeledMdp& mdp, const RewardMachine& machine, QTableSet& q,
                          int eplength, RewardSource source, const TaskSpec* task,
                          bool terminate_on_goal, Rng& rng) {
    if (q.machine_states() != machine.state_count())
        throw InputError("qrm_episode: q-table set is keyed by a different machine");
    if (source == RewardSource::Environment && task == nullptr)
        throw InputError("qrm_episode: environment reward source needs a task");

    const double alpha = q.hyper().alpha;
    const double gamma = q.hyper().gamma;
    const int nv = machine.state_count();

    RewardTracker env(machine, task);
    EpisodeResult out;
    int s = mdp.initial_state();
    MachineState v = machine.initial_state();

    for (int step = 0; step < eplength; ++step) {
        int a = epsilon_greedy(q, v, s, q.hyper().epsilon, rng);
        auto [s2, l] = simulate_step(mdp, s, a, rng);
        MachineState v2 = machine.delta(v, l);

        auto [r_env, done] = env.observe(v, v2, l);
        Reward r = source == RewardSource::Environment ? r_env : machine.sigma(v, l);

        double target = r + gamma * q.max_at(v2, s2);
        q.at(v, s, a) += alpha * (target - q.at(v, s, a));
        for (MachineState vh = 0; vh < nv; ++vh) {
            if (vh == v) continue;
            MachineState vh2 = machine.delta(vh, l);
            Reward rh = machine.sigma(vh, l);
            double th = rh + gamma * q.max_at(vh2, s2);
            q.at(vh, s, a) += alpha * (th - q.at(vh, s, a));
        }

        out.trace.labels.push_back(l);
        out.trace.rewards.push_back(r);
        out.total_reward += r;
        ++out.steps;
        s = s2;
        v = v2;
        if (done && terminate_on_goal) break;
    }
    return out;
}

double greedy_policy_value(const LabeledMdp& mdp, const RewardMachine& machine,
                           const QTableSet& q, int episodes, int eplength,
                           const TaskSpec* task, Rng& rng) {
    if (q.machine_states() != machine.state_count())
        throw InputError("greedy_policy_value: q-table set is keyed by a different machine");
    double total = 0.0;
    for (int e = 0; e < episodes; ++e) {
        RewardTracker env(machine, task);
        int s = mdp.initial_state();
        MachineState v = machine.initial_state();
        for (int step = 0; step < eplength; ++step) {
            int a = epsilon_greedy(q, v, s, 0.0, rng);
            auto [s2, l] = simulate_step(mdp, s, a, rng);
            MachineState v2 = machine.delta(v, l);
            auto [r, done] = env.observe(v, v2, l);
            total += r;
            s = s2;
            v = v2;
            if (done) break;
        }
    }
    return total / episodes;
}

} // namespace rml
