#include "rml/sample.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>

namespace rml {

Sample::Sample(PropSet universe) : universe_(std::move(universe)) {
    nodes_.emplace_back();
}

InsertResult Sample::insert(const Trace& t) {
    if (t.labels.size() != t.rewards.size())
        throw InputError("Sample::insert: label and reward sequences differ in length");
    for (Label l : t.labels)
        if (l >= universe_.label_count()) throw InputError("Sample::insert: label outside universe");

    int cur = 0;
    std::size_t i = 0;
    for (; i < t.labels.size(); ++i) {
        auto it = nodes_[cur].next.find(t.labels[i]);
        if (it == nodes_[cur].next.end()) break;
        if (it->second.second != t.rewards[i]) return InsertResult::Conflict;
        cur = it->second.first;
    }
    if (i == t.labels.size() && nodes_[cur].end_of_trace) return InsertResult::Duplicate;
    for (; i < t.labels.size(); ++i) {
        int child = int(nodes_.size());
        nodes_.emplace_back();
        nodes_[cur].next.emplace(t.labels[i], std::make_pair(child, t.rewards[i]));
        cur = child;
    }
    nodes_[cur].end_of_trace = true;
    traces_.push_back(t);
    return InsertResult::Added;
}

bool Sample::contains(const Trace& t) const {
    int cur = 0;
    for (std::size_t i = 0; i < t.labels.size(); ++i) {
        auto it = nodes_[cur].next.find(t.labels[i]);
        if (it == nodes_[cur].next.end() || it->second.second != t.rewards[i]) return false;
        cur = it->second.first;
    }
    return nodes_[cur].end_of_trace;
}

namespace {

std::string format_reward_short(Reward r) {
    std::ostringstream os;
    os.precision(17);
    os << r;
    std::string s = os.str();
    for (int prec = 1; prec < 17; ++prec) {
        std::ostringstream t;
        t.precision(prec);
        t << r;
        if (std::stod(t.str()) == r) return t.str();
    }
    return s;
}

} // namespace

void save_sample(const Sample& x, std::ostream& out) {
    out << "props:";
    for (const auto& p : x.universe().props()) out << ' ' << p;
    out << '\n';
    for (const Trace& t : x.traces()) {
        for (std::size_t i = 0; i < t.labels.size(); ++i) {
            if (i) out << ';';
            out << x.universe().format_label(t.labels[i]);
        }
        out << " / ";
        for (std::size_t i = 0; i < t.rewards.size(); ++i) {
            if (i) out << ';';
            out << format_reward_short(t.rewards[i]);
        }
        out << '\n';
    }
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

struct RawTrace {
    std::vector<std::string> labels;
    std::vector<Reward> rewards;
    int line = 0;
};

} // namespace

Sample load_sample(std::istream& in) {
    std::vector<RawTrace> raw;
    std::vector<std::string> declared;
    bool have_props = false;
    std::set<std::string> seen_props;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string text = strip(line);
        if (text.empty() || text[0] == '#') continue;
        if (text.rfind("props:", 0) == 0) {
            if (have_props || !raw.empty())
                throw InputError("sample line " + std::to_string(lineno) +
                                 ": props must come first, once");
            std::istringstream ps(text.substr(6));
            std::string p;
            while (ps >> p) declared.push_back(p);
            have_props = true;
            continue;
        }
        std::size_t sep = text.find(" / ");
        if (sep == std::string::npos)
            throw InputError("sample line " + std::to_string(lineno) + ": missing ' / '");
        RawTrace t;
        t.line = lineno;
        std::string lhs = strip(text.substr(0, sep));
        std::string rhs = strip(text.substr(sep + 3));
        if (!lhs.empty())
            for (const std::string& part : split(lhs, ';')) {
                std::string tok = strip(part);
                if (tok.size() < 2 || tok.front() != '{' || tok.back() != '}')
                    throw InputError("sample line " + std::to_string(lineno) +
                                     ": label must look like {a,b}: " + tok);
                t.labels.push_back(tok);
                std::string inner = tok.substr(1, tok.size() - 2);
                if (!inner.empty())
                    for (const std::string& name : split(inner, ','))
                        seen_props.insert(strip(name));
            }
        if (!rhs.empty())
            for (const std::string& part : split(rhs, ';')) {
                try {
                    t.rewards.push_back(std::stod(strip(part)));
                } catch (const std::exception&) {
                    throw InputError("sample line " + std::to_string(lineno) +
                                     ": bad reward: " + part);
                }
            }
        if (t.labels.size() != t.rewards.size())
            throw InputError("sample line " + std::to_string(lineno) +
                             ": label and reward counts differ");
        raw.push_back(std::move(t));
    }

    if (!have_props) declared.assign(seen_props.begin(), seen_props.end());
    PropSet universe(declared);
    Sample x(universe);
    for (const RawTrace& t : raw) {
        Trace tr;
        for (const std::string& tok : t.labels) tr.labels.push_back(universe.parse_label(tok));
        tr.rewards = t.rewards;
        if (x.insert(tr) == InsertResult::Conflict)
            throw InputError("sample line " + std::to_string(t.line) +
                             ": conflicts with an earlier trace on a shared prefix");
    }
    return x;
}

Sample load_sample_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open sample file: " + path);
    return load_sample(in);
}

PrefixTreeMachine build_prefix_tree(const Sample& x) {
    const auto& nodes = x.nodes();
    int n = int(nodes.size());
    std::vector<int> order(n, -1);

    PrefixTreeMachine out{PartialRewardMachine(x.universe(), n, 0),
                          std::vector<int>(n, -1), std::vector<Label>(n, 0),
                          std::vector<Reward>(n, 0.0)};
    std::queue<int> bfs;
    bfs.push(0);
    order[0] = 0;
    int assigned = 1;
    while (!bfs.empty()) {
        int node = bfs.front();
        bfs.pop();
        int id = order[node];
        for (const auto& [label, edge] : nodes[node].next) {
            int child_id = order[edge.first] = assigned++;
            out.machine.define(id, label, child_id, edge.second);
            out.parent[child_id] = id;
            out.in_label[child_id] = label;
            out.in_reward[child_id] = edge.second;
            bfs.push(edge.first);
        }
    }
    return out;
}

} // namespace rml
