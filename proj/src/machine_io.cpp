#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "rml/machine.hpp"

namespace rml {
namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::string format_reward(double r) {
    for (int prec = 6; prec <= 17; ++prec) {
        std::ostringstream out;
        out.precision(prec);
        out << r;
        if (std::stod(out.str()) == r) return out.str();
    }
    return std::to_string(r);
}

double parse_reward(const std::string& text, int line_no) {
    std::size_t pos = 0;
    double r;
    try {
        r = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw InputError("line " + std::to_string(line_no) + ": bad reward '" + text + "'");
    }
    if (trim(text.substr(pos)) != "")
        throw InputError("line " + std::to_string(line_no) + ": bad reward '" + text + "'");
    return r;
}

} // namespace

RewardMachine load_machine(std::istream& in) {
    struct Edge {
        int line_no;
        std::string from, to;
        std::string guard_text;
        double reward;
    };
    std::vector<std::string> prop_names;
    bool have_props = false;
    std::string init_name;
    bool have_init = false;
    std::vector<Edge> edges;
    bool have_default = false;
    double default_reward = 0.0;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.rfind("props:", 0) == 0) {
            if (have_props) throw InputError("line " + std::to_string(line_no) + ": repeated props line");
            prop_names = split_ws(line.substr(6));
            have_props = true;
            continue;
        }
        if (line.rfind("init:", 0) == 0) {
            if (have_init) throw InputError("line " + std::to_string(line_no) + ": repeated init line");
            init_name = trim(line.substr(5));
            if (init_name.empty()) throw InputError("line " + std::to_string(line_no) + ": empty init line");
            have_init = true;
            continue;
        }
        if (line.rfind("default:", 0) == 0) {
            if (have_default) throw InputError("line " + std::to_string(line_no) + ": repeated default line");
            std::string rest = trim(line.substr(8));
            std::size_t slash = rest.find('/');
            if (slash == std::string::npos || trim(rest.substr(0, slash)) != "self")
                throw InputError("line " + std::to_string(line_no) + ": default line must be 'default: self / <reward>'");
            default_reward = parse_reward(trim(rest.substr(slash + 1)), line_no);
            have_default = true;
            continue;
        }

        std::size_t arrow = line.find("-->");
        std::size_t dashes = line.find("--");
        if (arrow == std::string::npos || dashes == std::string::npos || dashes >= arrow)
            throw InputError("line " + std::to_string(line_no) + ": expected 'vi -- <guard> / <reward> --> vj'");
        Edge e;
        e.line_no = line_no;
        e.from = trim(line.substr(0, dashes));
        e.to = trim(line.substr(arrow + 3));
        std::string mid = line.substr(dashes + 2, arrow - dashes - 2);
        std::size_t slash = mid.rfind('/');
        if (slash == std::string::npos)
            throw InputError("line " + std::to_string(line_no) + ": transition is missing '/ <reward>'");
        e.guard_text = trim(mid.substr(0, slash));
        e.reward = parse_reward(trim(mid.substr(slash + 1)), line_no);
        if (e.from.empty() || e.to.empty() || e.guard_text.empty())
            throw InputError("line " + std::to_string(line_no) + ": expected 'vi -- <guard> / <reward> --> vj'");
        edges.push_back(std::move(e));
    }

    if (!have_props) throw InputError("machine file has no props line");
    if (!have_init) throw InputError("machine file has no init line");
    PropSet universe(prop_names);

    auto v_number = [](const std::string& name) -> long {
        if (name.size() < 2 || name[0] != 'v') return -1;
        for (std::size_t i = 1; i < name.size(); ++i)
            if (name[i] < '0' || name[i] > '9') return -1;
        return std::stol(name.substr(1));
    };
    std::vector<std::string> mentioned{init_name};
    for (const Edge& e : edges) {
        mentioned.push_back(e.from);
        mentioned.push_back(e.to);
    }
    bool numeric = true;
    long max_index = 0;
    for (const std::string& name : mentioned) {
        long k = v_number(name);
        if (k < 0) numeric = false;
        max_index = std::max(max_index, k);
    }
    if (numeric && max_index > 100000)
        throw InputError("state index too large: v" + std::to_string(max_index));

    // State names of the form v<k> mean state id k; any other naming falls
    // back to numbering by first appearance.
    std::map<std::string, MachineState> ids;
    std::vector<std::string> names;
    auto state_id = [&](const std::string& name) {
        if (numeric) return MachineState(v_number(name));
        auto it = ids.find(name);
        if (it != ids.end()) return it->second;
        MachineState v = MachineState(names.size());
        ids.emplace(name, v);
        names.push_back(name);
        return v;
    };
    if (numeric) {
        for (long v = 0; v <= max_index; ++v) names.push_back("v" + std::to_string(v));
    } else {
        for (const std::string& name : mentioned) state_id(name);
    }

    int n = int(names.size());
    std::size_t labels = universe.label_count();
    std::vector<MachineState> delta(std::size_t(n) * labels, -1);
    std::vector<Reward> sigma(std::size_t(n) * labels, 0.0);
    std::vector<int> covered_at(std::size_t(n) * labels, 0);

    for (const Edge& e : edges) {
        GuardExpr g = parse_guard(e.guard_text);
        MachineState from = state_id(e.from);
        MachineState to = state_id(e.to);
        for (Label l : expand_guard(g, universe)) {
            std::size_t i = std::size_t(from) * labels + l;
            if (covered_at[i] != 0)
                throw InputError("line " + std::to_string(e.line_no) + ": guard overlaps line " +
                                 std::to_string(covered_at[i]) + " on label " +
                                 universe.format_label(l) + " of state " + e.from);
            covered_at[i] = e.line_no;
            delta[i] = to;
            sigma[i] = e.reward;
        }
    }

    for (MachineState v = 0; v < n; ++v) {
        for (Label l = 0; l < labels; ++l) {
            std::size_t i = std::size_t(v) * labels + l;
            if (delta[i] >= 0) continue;
            if (!have_default)
                throw InputError("state " + names[v] + " has no transition on label " +
                                 universe.format_label(l) + " and there is no default line");
            delta[i] = v;
            sigma[i] = default_reward;
        }
    }

    return RewardMachine(universe, n, state_id(init_name), std::move(delta), std::move(sigma));
}

RewardMachine load_machine_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open machine file: " + path);
    try {
        return load_machine(in);
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

void save_machine(const RewardMachine& m, std::ostream& out) {
    const PropSet& u = m.universe();
    out << "props:";
    for (const std::string& p : u.props()) out << ' ' << p;
    out << "\n";
    out << "init: v" << m.initial_state() << "\n";
    std::size_t labels = u.label_count();
    for (MachineState v = 0; v < m.state_count(); ++v) {
        // Group labels by (target, reward), keeping first-label order.
        std::vector<std::pair<std::pair<MachineState, Reward>, std::vector<Label>>> groups;
        for (Label l = 0; l < labels; ++l) {
            std::pair<MachineState, Reward> key{m.delta(v, l), m.sigma(v, l)};
            bool found = false;
            for (auto& g : groups) {
                if (g.first == key) {
                    g.second.push_back(l);
                    found = true;
                    break;
                }
            }
            if (!found) groups.push_back({key, {l}});
        }
        for (const auto& g : groups) {
            out << "v" << v << " -- " << guard_for_labels(g.second, u) << " / "
                << format_reward(g.first.second) << " --> v" << g.first.first << "\n";
        }
    }
}

void save_machine_file(const RewardMachine& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open machine file for writing: " + path);
    save_machine(m, out);
}

} // namespace rml
