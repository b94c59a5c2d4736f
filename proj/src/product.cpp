#include "rml/product.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace rml {

std::vector<bool> absorbing_zero_states(const RewardMachine& m) {
    std::vector<bool> out(m.state_count(), true);
    std::size_t labels = m.universe().label_count();
    for (MachineState v = 0; v < m.state_count(); ++v)
        for (Label l = 0; l < labels; ++l)
            if (m.delta(v, l) != v || m.sigma(v, l) != 0.0) {
                out[v] = false;
                break;
            }
    return out;
}

ProductMdp::ProductMdp(const LabeledMdp& mdp, const RewardMachine& machine)
    : mdp_(&mdp), machine_(&machine) {
    if (!(mdp.props() == machine.universe()))
        throw InputError("product needs a shared proposition set");
    int na = mdp.action_count();
    arcs_.resize(std::size_t(state_count()) * na);
    for (int s = 0; s < mdp.state_count(); ++s) {
        for (int a = 0; a < na; ++a) {
            const std::vector<Transition>& row = mdp.transitions(s, a);
            for (MachineState v = 0; v < machine.state_count(); ++v) {
                std::vector<Arc>& out = arcs_[std::size_t(pack(s, v)) * na + a];
                out.reserve(row.size());
                for (const Transition& t : row)
                    out.push_back({t.next, machine.delta(v, t.label), t.prob,
                                   machine.sigma(v, t.label)});
            }
        }
    }
}

double ValueTable::max_at(int s, MachineState v) const {
    double best = at(s, v, 0);
    for (int a = 1; a < actions; ++a) best = std::max(best, at(s, v, a));
    return best;
}

int ValueTable::greedy_action(int s, MachineState v) const {
    int best = 0;
    for (int a = 1; a < actions; ++a)
        if (at(s, v, a) > at(s, v, best)) best = a;
    return best;
}

namespace {

ValueTable bellman_sweeps(const ProductMdp& p, double tol, long max_sweeps, bool fixed_count) {
    ValueTable vt;
    vt.mdp_states = p.mdp_state_count();
    vt.machine_states = p.machine_state_count();
    vt.actions = p.action_count();
    vt.q.assign(std::size_t(p.state_count()) * p.action_count(), 0.0);
    double gamma = p.gamma();

    std::vector<double> best(p.state_count(), 0.0);
    for (long sweep = 0; sweep < max_sweeps; ++sweep) {
        for (int ps = 0; ps < p.state_count(); ++ps) {
            double m = vt.q[std::size_t(ps) * p.action_count()];
            for (int a = 1; a < p.action_count(); ++a)
                m = std::max(m, vt.q[std::size_t(ps) * p.action_count() + a]);
            best[ps] = m;
        }
        double residual = 0.0;
        for (int s = 0; s < p.mdp_state_count(); ++s) {
            for (MachineState v = 0; v < p.machine_state_count(); ++v) {
                for (int a = 0; a < p.action_count(); ++a) {
                    double value = 0.0;
                    for (const ProductMdp::Arc& arc : p.arcs(s, v, a))
                        value += arc.prob * (arc.reward + gamma * best[p.pack(arc.next_s, arc.next_v)]);
                    std::size_t i = std::size_t(p.pack(s, v)) * p.action_count() + a;
                    residual = std::max(residual, std::abs(value - vt.q[i]));
                    vt.q[i] = value;
                }
            }
        }
        vt.sweeps = sweep + 1;
        vt.residual = residual;
        if (!fixed_count && residual <= tol) {
            vt.converged = true;
            break;
        }
    }
    if (fixed_count) vt.converged = true;
    return vt;
}

} // namespace

ValueTable value_iteration(const ProductMdp& p, double tol, long max_sweeps) {
    return bellman_sweeps(p, tol, max_sweeps, false);
}

ValueTable k_horizon_values(const ProductMdp& p, int k) {
    return bellman_sweeps(p, 0.0, k, true);
}

double greedy_policy_episode_value(const ProductMdp& p, const ValueTable& vt, int eplength) {
    std::vector<bool> done_state = absorbing_zero_states(p.machine());
    std::vector<double> value(p.state_count(), 0.0);
    std::vector<double> prev(p.state_count(), 0.0);
    for (int t = 0; t < eplength; ++t) {
        std::swap(value, prev);
        for (int s = 0; s < p.mdp_state_count(); ++s) {
            for (MachineState v = 0; v < p.machine_state_count(); ++v) {
                int a = vt.greedy_action(s, v);
                double w = 0.0;
                for (const ProductMdp::Arc& arc : p.arcs(s, v, a)) {
                    w += arc.prob * arc.reward;
                    if (!episode_done(done_state, arc.reward, arc.next_v))
                        w += arc.prob * prev[p.pack(arc.next_s, arc.next_v)];
                }
                value[p.pack(s, v)] = w;
            }
        }
    }
    return value[p.initial_state()];
}

void save_value_table_csv(const ValueTable& vt, std::ostream& out) {
    out << "s,v,a,q\n";
    char buf[64];
    for (int s = 0; s < vt.mdp_states; ++s)
        for (int v = 0; v < vt.machine_states; ++v)
            for (int a = 0; a < vt.actions; ++a) {
                std::snprintf(buf, sizeof buf, "%.12g", vt.at(s, v, a));
                out << s << ',' << v << ',' << a << ',' << buf << '\n';
            }
}

} // namespace rml
