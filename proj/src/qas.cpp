#include "rml/qas.hpp"

namespace rml {

namespace {

/// One rollout over the augmented space. With learn set, epsilon-greedy
/// actions and q updates; otherwise a greedy evaluation rollout that leaves q
/// alone. `stop_at_goal` cuts the rollout once the task is done.
double qas_episode(const LabeledMdp& mdp, const TaskSpec& task, QTableSet& q, int eplength,
                   bool learn, bool stop_at_goal, Rng& rng, long* steps_out) {
    const double alpha = q.hyper().alpha;
    const double gamma = q.hyper().gamma;
    double total = 0.0;
    int s = mdp.initial_state();
    Label bits = 0;
    MachineState u = task.truth.initial_state();
    for (int step = 0; step < eplength; ++step) {
        int a = epsilon_greedy(q, int(bits), s, learn ? q.hyper().epsilon : 0.0, rng);
        auto [s2, l] = simulate_step(mdp, s, a, rng);
        Label bits2 = bits | l;
        Reward r = task.truth.sigma(u, l);
        u = task.truth.delta(u, l);
        bool done = task.done(r, u);
        if (learn) {
            double target = r + gamma * q.max_at(int(bits2), s2);
            q.at(int(bits), s, a) += alpha * (target - q.at(int(bits), s, a));
        }
        total += r;
        if (steps_out) ++*steps_out;
        s = s2;
        bits = bits2;
        if (done && stop_at_goal) break;
    }
    return total;
}

} // namespace

QasResult qas_run(const LabeledMdp& mdp, const TaskSpec& task, const QasConfig& cfg) {
    if (cfg.eplength < 1) throw InputError("qas: eplength must be >= 1");
    if (!(task.truth.universe() == mdp.props()))
        throw InputError("qas: task machine and MDP have different universes");

    Rng master(cfg.seed);
    int aug = int(mdp.props().label_count());
    QTableSet q(aug, mdp.state_count(), mdp.action_count(), cfg.hyper);

    QasResult out;
    for (long n = 1; n <= cfg.episode_budget; ++n) {
        Rng episode_rng = master.substream(1, std::uint64_t(n));
        qas_episode(mdp, task, q, cfg.eplength, true, cfg.terminate_on_goal, episode_rng,
                    &out.env_steps);
        ++out.episodes;

        if (cfg.eval_every > 0 && n % cfg.eval_every == 0) {
            Rng eval_rng = master.substream(2, std::uint64_t(n));
            double sum = 0.0;
            for (int e = 0; e < cfg.eval_rollouts; ++e)
                sum += qas_episode(mdp, task, q, cfg.eplength, false, true, eval_rng, nullptr);
            out.curve.push_back({out.env_steps, sum / cfg.eval_rollouts, n});
        }
        if (cfg.max_env_steps > 0 && out.env_steps >= cfg.max_env_steps) break;
    }
    out.q = q.raw();
    return out;
}

} // namespace rml
