#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "rml/envs.hpp"
#include "rml/equivalence.hpp"
#include "rml/dfa.hpp"
#include "rml/harness.hpp"
#include "rml/inference.hpp"
#include "rml/jirp.hpp"
#include "rml/product.hpp"
#include "rml/qas.hpp"
#include "rml/sample.hpp"

namespace py = pybind11;
using namespace rml;

namespace {

const char* insert_name(InsertResult r) {
    switch (r) {
    case InsertResult::Added: return "added";
    case InsertResult::Duplicate: return "duplicate";
    default: return "conflict";
    }
}

JirpConfig make_jirp_config(const TaskSpec& spec, const std::string& method, long episode_budget,
                            long max_env_steps, int eplength, int batch_n, int eval_every,
                            int eval_rollouts, std::uint64_t seed) {
    JirpConfig jc;
    jc.eplength = eplength > 0 ? eplength : spec.eplength;
    jc.batch_n = batch_n > 0 ? batch_n : spec.batch_n;
    jc.episode_budget = episode_budget;
    jc.max_env_steps = max_env_steps;
    jc.eval_every = eval_every;
    jc.eval_rollouts = eval_rollouts;
    jc.seed = seed;
    if (method == "exact")
        jc.learner = JirpConfig::Learner::Exact;
    else if (method != "rpni" && method != "base")
        throw InputError("unknown method: " + method);
    return jc;
}

} // namespace

PYBIND11_MODULE(_rmlearn, m) {
    m.doc() = "Reward-machine learning toolkit core";

    py::register_exception<InputError>(m, "InputError");

    py::class_<PropSet>(m, "PropSet")
        .def(py::init<std::vector<std::string>>())
        .def("props", &PropSet::props)
        .def("size", &PropSet::size)
        .def("label_count", &PropSet::label_count)
        .def("contains", &PropSet::contains)
        .def("bit", &PropSet::bit)
        .def("parse_label", &PropSet::parse_label)
        .def("format_label", &PropSet::format_label)
        .def(py::self == py::self);

    py::class_<Trace>(m, "Trace")
        .def(py::init<std::vector<Label>, std::vector<Reward>>())
        .def_readonly("labels", &Trace::labels)
        .def_readonly("rewards", &Trace::rewards)
        .def("__len__", &Trace::size)
        .def(py::self == py::self);

    py::class_<RewardMachine>(m, "RewardMachine")
        .def(py::init<PropSet, int, MachineState, std::vector<MachineState>,
                      std::vector<Reward>>())
        .def("universe", &RewardMachine::universe)
        .def("state_count", &RewardMachine::state_count)
        .def("initial_state", &RewardMachine::initial_state)
        .def("delta", &RewardMachine::delta)
        .def("sigma", &RewardMachine::sigma)
        .def("run", &RewardMachine::run)
        .def("walk", &RewardMachine::walk)
        .def("is_consistent", &RewardMachine::is_consistent)
        .def("output_values", &RewardMachine::output_values)
        .def(py::self == py::self);

    py::class_<Sample>(m, "Sample")
        .def(py::init<PropSet>())
        .def("universe", &Sample::universe)
        .def("__len__", &Sample::size)
        .def("insert",
             [](Sample& x, std::vector<Label> labels, std::vector<Reward> rewards) {
                 return insert_name(x.insert(Trace{std::move(labels), std::move(rewards)}));
             })
        .def("contains", &Sample::contains)
        .def("traces", &Sample::traces);

    py::enum_<LearnStatus>(m, "LearnStatus")
        .value("Found", LearnStatus::Found)
        .value("NoMachineWithinKmax", LearnStatus::NoMachineWithinKmax)
        .value("BudgetExhausted", LearnStatus::BudgetExhausted);

    py::class_<LearnResult>(m, "LearnResult")
        .def_readonly("status", &LearnResult::status)
        .def_readonly("machine", &LearnResult::machine)
        .def_readonly("expansions", &LearnResult::expansions)
        .def_readonly("k_reached", &LearnResult::k_reached);

    py::class_<EvalPoint>(m, "EvalPoint")
        .def_readonly("env_steps", &EvalPoint::env_steps)
        .def_readonly("eval_reward", &EvalPoint::eval_reward)
        .def_readonly("episode", &EvalPoint::episode);

    py::class_<JirpMetrics>(m, "JirpMetrics")
        .def_readonly("curve", &JirpMetrics::curve)
        .def_readonly("episodes", &JirpMetrics::episodes)
        .def_readonly("env_steps", &JirpMetrics::env_steps)
        .def_readonly("counterexample_count", &JirpMetrics::counterexample_count)
        .def_readonly("inference_count", &JirpMetrics::inference_count)
        .def_readonly("machines", &JirpMetrics::machines)
        .def_readonly("inference_steps", &JirpMetrics::inference_steps)
        .def_readonly("counterexamples", &JirpMetrics::counterexamples)
        .def_readonly("counterexample_hypothesis", &JirpMetrics::counterexample_hypothesis);

    py::class_<JirpResult>(m, "JirpResult")
        .def_readonly("machine", &JirpResult::machine)
        .def_readonly("metrics", &JirpResult::metrics);

    py::class_<QasResult>(m, "QasResult")
        .def_readonly("curve", &QasResult::curve)
        .def_readonly("episodes", &QasResult::episodes)
        .def_readonly("env_steps", &QasResult::env_steps)
        .def_readonly("q", &QasResult::q);

    py::class_<TransferReport>(m, "TransferReport")
        .def_readonly("inequivalence_witness", &TransferReport::inequivalence_witness)
        .def_readonly("equivalent_pairs", &TransferReport::equivalent_pairs)
        .def_readonly("max_deviation", &TransferReport::max_deviation)
        .def_readonly("ok", &TransferReport::ok);

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("task_id", &ExperimentConfig::task_id)
        .def_readwrite("method", &ExperimentConfig::method)
        .def_readwrite("seeds", &ExperimentConfig::seeds)
        .def_readwrite("episode_budget", &ExperimentConfig::episode_budget)
        .def_readwrite("max_env_steps", &ExperimentConfig::max_env_steps)
        .def_readwrite("eplength", &ExperimentConfig::eplength)
        .def_readwrite("batch_n", &ExperimentConfig::batch_n)
        .def_readwrite("out_dir", &ExperimentConfig::out_dir)
        .def_readwrite("eval_every", &ExperimentConfig::eval_every)
        .def_readwrite("eval_rollouts", &ExperimentConfig::eval_rollouts);

    py::class_<SeedSummary>(m, "SeedSummary")
        .def_readonly("seed", &SeedSummary::seed)
        .def_readonly("final_reward", &SeedSummary::final_reward)
        .def_readonly("steps_to_90pct", &SeedSummary::steps_to_90pct)
        .def_readonly("inference_count", &SeedSummary::inference_count)
        .def_readonly("final_machine_size", &SeedSummary::final_machine_size)
        .def_readonly("env_steps", &SeedSummary::env_steps)
        .def_readonly("curve", &SeedSummary::curve);

    py::class_<ExperimentResult>(m, "ExperimentResult")
        .def_readonly("out_dir", &ExperimentResult::out_dir)
        .def_readonly("optimum", &ExperimentResult::optimum)
        .def_readonly("seeds", &ExperimentResult::seeds)
        .def_readonly("final_reward_mean", &ExperimentResult::final_reward_mean)
        .def_readonly("steps_to_90pct_median", &ExperimentResult::steps_to_90pct_median)
        .def_readonly("inference_count_mean", &ExperimentResult::inference_count_mean)
        .def_readonly("final_machine_size_median", &ExperimentResult::final_machine_size_median);

    m.def("load_machine_file", &load_machine_file, py::arg("path"));
    m.def("save_machine_file", &save_machine_file, py::arg("machine"), py::arg("path"));
    m.def(
        "machine_from_text",
        [](const std::string& text) {
            std::istringstream in(text);
            return load_machine(in);
        },
        py::arg("text"));
    m.def(
        "machine_to_text",
        [](const RewardMachine& mch) {
            std::ostringstream out;
            save_machine(mch, out);
            return out.str();
        },
        py::arg("machine"));
    m.def("load_sample_file", &load_sample_file, py::arg("path"));
    m.def(
        "sample_from_text",
        [](const std::string& text) {
            std::istringstream in(text);
            return load_sample(in);
        },
        py::arg("text"));
    m.def(
        "sample_to_text",
        [](const Sample& x) {
            std::ostringstream out;
            save_sample(x, out);
            return out.str();
        },
        py::arg("sample"));

    m.def("rpni", &rpni_rm, py::arg("sample"), py::arg("default_reward") = 0.0,
          "State-merging learner; always returns a machine consistent with the sample.");
    m.def("learn_exact", &minimal_consistent_machine, py::arg("sample"), py::arg("k_max") = 10,
          py::arg("budget") = 10000000L,
          "Exact minimal learner; the first machine found has the fewest states possible.");
    m.def("initial_hypothesis", &initial_hypothesis, py::arg("universe"),
          "One state, every label a zero-reward self-loop.");
    m.def("states_equivalent", &states_equivalent, py::arg("m1"), py::arg("m2"), py::arg("v1"),
          py::arg("v2"));
    m.def("equivalent_state_pairs", &equivalent_state_pairs, py::arg("m1"), py::arg("m2"));
    m.def("shortest_inconsistency", &shortest_inconsistency, py::arg("m1"), py::arg("m2"),
          "Shortest trace the machines disagree on, or None if fully equivalent.");

    m.def("all_task_ids", &all_task_ids);
    m.def("data_dir", &data_dir);
    m.def("task_info", [](const std::string& id) {
        Task t = find_task(id);
        py::dict d;
        d["id"] = t.spec.id;
        d["eplength"] = t.spec.eplength;
        d["batch_n"] = t.spec.batch_n;
        d["truth"] = t.spec.truth;
        d["props"] = t.mdp->props().props();
        d["states"] = t.mdp->state_count();
        d["actions"] = t.mdp->action_count();
        return d;
    });
    m.def(
        "optimum",
        [](const std::string& id, int eplength) {
            Task t = find_task(id);
            ProductMdp prod(*t.mdp, t.spec.truth);
            ValueTable vt = value_iteration(prod);
            return greedy_policy_episode_value(prod, vt,
                                               eplength > 0 ? eplength : t.spec.eplength);
        },
        py::arg("task"), py::arg("eplength") = -1, py::call_guard<py::gil_scoped_release>(),
        "Expected episode reward of the exact optimal policy for a task.");
    m.def(
        "attainable",
        [](const std::string& id, const std::vector<Label>& labels) {
            Task t = find_task(id);
            return attainable(*t.mdp, labels, int(labels.size()));
        },
        py::arg("task"), py::arg("labels"),
        "True iff the task MDP can produce exactly this label sequence.");
    m.def(
        "check_equivalence",
        [](const std::string& id, const RewardMachine& a, const RewardMachine& b, int horizon) {
            Task t = find_task(id);
            return check_equivalence_on_attainable(*t.mdp, a, b, horizon);
        },
        py::arg("task"), py::arg("m1"), py::arg("m2"), py::arg("horizon") = 50,
        py::call_guard<py::gil_scoped_release>(),
        "Shortest attainable label sequence the machines disagree on, or None.");
    m.def(
        "verify_transfer",
        [](const std::string& id, const RewardMachine& a, const RewardMachine& b, double tol,
           int horizon) {
            Task t = find_task(id);
            return verify_transfer_theorem(*t.mdp, a, b, tol, horizon);
        },
        py::arg("task"), py::arg("m1"), py::arg("m2"), py::arg("tol") = 1e-10,
        py::arg("horizon") = 50, py::call_guard<py::gil_scoped_release>(),
        "Compare optimal q-values across equivalent machine states via value iteration.");
    m.def(
        "jirp",
        [](const std::string& id, const std::string& method, long episode_budget,
           long max_env_steps, int eplength, int batch_n, int eval_every, int eval_rollouts,
           std::uint64_t seed) {
            Task t = find_task(id);
            JirpConfig jc = make_jirp_config(t.spec, method, episode_budget, max_env_steps,
                                             eplength, batch_n, eval_every, eval_rollouts, seed);
            return method == "base" ? jirp_base(*t.mdp, t.spec, jc)
                                    : jirp_optimized(*t.mdp, t.spec, jc);
        },
        py::arg("task"), py::arg("method") = "rpni", py::arg("episode_budget") = 1000L,
        py::arg("max_env_steps") = 0L, py::arg("eplength") = -1, py::arg("batch_n") = -1,
        py::arg("eval_every") = 100, py::arg("eval_rollouts") = 20, py::arg("seed") = 0,
        py::call_guard<py::gil_scoped_release>(),
        "Joint policy and machine learning on a task; method is rpni, exact, or base.");
    m.def(
        "qas",
        [](const std::string& id, long episode_budget, long max_env_steps, int eplength,
           int eval_every, int eval_rollouts, std::uint64_t seed) {
            Task t = find_task(id);
            QasConfig qc;
            qc.eplength = eplength > 0 ? eplength : t.spec.eplength;
            qc.episode_budget = episode_budget;
            qc.max_env_steps = max_env_steps;
            qc.eval_every = eval_every;
            qc.eval_rollouts = eval_rollouts;
            qc.seed = seed;
            return qas_run(*t.mdp, t.spec, qc);
        },
        py::arg("task"), py::arg("episode_budget") = 1000L, py::arg("max_env_steps") = 0L,
        py::arg("eplength") = -1, py::arg("eval_every") = 100, py::arg("eval_rollouts") = 20,
        py::arg("seed") = 0, py::call_guard<py::gil_scoped_release>(),
        "Q-learning over the state augmented with the propositions seen so far.");
    m.def("run_experiment", &run_experiment, py::arg("config"),
          py::call_guard<py::gil_scoped_release>(),
          "Run a full multi-seed experiment and write curve.csv, aggregate.csv, summary.json.");
}
