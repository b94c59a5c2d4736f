import pytest

import rmlearn


def test_task_registry():
    ids = rmlearn.all_task_ids()
    assert "office/2.1" in ids
    assert "traffic/1" in ids
    info = rmlearn.task_info("office/2.1")
    assert info["eplength"] == 1000
    assert info["batch_n"] == 30
    assert info["states"] == 78
    assert info["truth"].state_count() >= 2
    with pytest.raises(rmlearn.InputError):
        rmlearn.task_info("warehouse/1")


def test_machine_run_and_text_round_trip():
    truth = rmlearn.task_info("office/2.1")["truth"]
    u = truth.universe()
    c, o = u.parse_label("{c}"), u.parse_label("{o}")
    assert truth.run([c, o]) == [0.0, 1.0]
    assert truth.run([o, c, o]) == [0.0, 0.0, 1.0]
    again = rmlearn.machine_from_text(rmlearn.machine_to_text(truth))
    assert again == truth


def test_learners_consistent():
    u = rmlearn.PropSet(["p"])
    x = rmlearn.Sample(u)
    p = u.bit("p")
    assert x.insert([p, 0], [0.0, 1.0]) == "added"
    assert x.insert([p, 0], [0.0, 1.0]) == "duplicate"
    assert x.insert([p], [0.5]) == "conflict"
    x.insert([0], [0.0])
    merged = rmlearn.rpni(x)
    res = rmlearn.learn_exact(x, k_max=4)
    assert res.status == rmlearn.LearnStatus.Found
    for t in x.traces():
        assert merged.is_consistent(t)
        assert res.machine.is_consistent(t)
    assert res.machine.state_count() <= merged.state_count()


def test_equivalence_and_transfer():
    truth = rmlearn.task_info("office/2.1")["truth"]
    assert rmlearn.check_equivalence("office/2.1", truth, truth) is None
    rep = rmlearn.verify_transfer("office/2.1", truth, truth)
    assert rep.ok
    assert rep.inequivalence_witness is None
    assert rep.equivalent_pairs >= truth.state_count()
    assert rep.max_deviation <= 2e-10


def test_tiny_jirp_run():
    r = rmlearn.jirp("office/2.1", method="rpni", episode_budget=40,
                     eval_every=20, eval_rollouts=2, seed=0)
    assert r.metrics.episodes == 40
    assert len(r.metrics.curve) == 2
    assert r.machine.state_count() >= 1
    assert r.metrics.env_steps == 40 * 1000


def test_tiny_qas_run():
    r = rmlearn.qas("office/2.1", episode_budget=10, eval_every=5,
                    eval_rollouts=1, seed=0)
    assert r.episodes == 10
    assert r.env_steps == 10 * 1000
    assert len(r.curve) == 2
