import itertools

import numpy as np
import pytest

from parkequity.datasets import random_instance, tiny1
from parkequity.instance import AccessConfig, ObjectiveKind, ParkInstance, ParkSite, ResidentLocation
from parkequity.milp import (
    ModelBuilder,
    Sense,
    VarKind,
    build_model,
    canonical_lift,
    check_solution_feasibility,
    compute_big_m,
    decode_assignment,
    objective_value,
)

MINALL_UNCAP = AccessConfig(objective_kind=ObjectiveKind.MIN_ALL, capacitated=False)


def test_big_m_tiny(inst):
    mu = compute_big_m(inst)
    assert mu.mu_maxdist == 1.5
    assert mu.mu_cap_plus == mu.mu_maxcap == 370.0


def test_big_m_degenerate():
    one = ParkInstance(
        (ParkSite("p", True, 0.0, 10.0),), (ResidentLocation("l", {"A": 5.0}),), ("A",),
        np.zeros((1, 1)), budget=0.0, max_distance=0.5,
    )
    assert compute_big_m(one).mu_maxdist == 0.0


def test_variable_counts_minmax_cap(inst, cfg):
    model = build_model(inst, cfg)
    names = model.variable_names()
    assert model.n_binary == 14 and model.n_continuous == 19
    counts = {prefix: sum(n.startswith(prefix + "(") for n in names) for prefix in
              ("y", "x", "udist", "ucap", "alpha", "dplus", "aplus", "pi_cap", "pi_dist", "pi_cap_act")}
    assert counts == {"y": 3, "x": 6, "udist": 2, "ucap": 3, "alpha": 2, "dplus": 2, "aplus": 3,
                      "pi_cap": 6, "pi_dist": 2, "pi_cap_act": 3}
    assert "alpha_max" in names


def test_uncapacitated_minall_omits_machinery(inst):
    names = build_model(inst, MINALL_UNCAP).variable_names()
    assert "alpha_max" not in names
    for prefix in ("ucap(", "aplus(", "pi_cap(", "pi_cap_act("):
        assert not any(n.startswith(prefix) for n in names)
    model = build_model(inst, MINALL_UNCAP)
    assert dict(model.objective) == {"alpha(A)": 1.0, "alpha(B)": 1.0}


def test_distance_term_counted_once(inst, cfg):
    row = build_model(inst, cfg).constraint("alpha_def(A)")
    coeffs = dict(row.coeffs)
    # 100 residents of group A at l1, each weighted n_dist * w_dist = 4.5
    assert coeffs["dplus(l1)"] == pytest.approx(-450.0)
    assert sum(1 for n, _ in row.coeffs if n.startswith("dplus(")) == 2


def test_zero_candidates_forces_all_open():
    inst = tiny1()
    inst = inst.with_existing(inst.park_ids)
    model = build_model(inst, AccessConfig())
    for k in inst.park_ids:
        assert model.constraint(f"existing({k})").coeffs == ((f"y({k})", 1.0),)
    point = canonical_lift(inst, AccessConfig(), inst.park_ids, {"l1": "p1", "l2": "p2"})
    assert check_solution_feasibility(model, point) == []


def test_deterministic_construction(inst, cfg):
    assert build_model(inst, cfg) == build_model(tiny1(), AccessConfig())


def test_feasibility_checker_examples(inst, cfg):
    model = build_model(inst, cfg)
    point = canonical_lift(inst, cfg, ["p1", "p2"], {"l1": "p1", "l2": "p2"})
    assert check_solution_feasibility(model, point) == []

    bad = dict(point, **{"x(p2,l2)": 0.0, "x(p3,l2)": 1.0})
    names = {v.name for v in check_solution_feasibility(model, bad) if v.kind == "constraint"}
    assert "open(p3,l2)" in names

    frac = dict(point, **{"x(p2,l2)": 0.5})
    assert any(v.kind == "integrality" and v.name == "x(p2,l2)" for v in check_solution_feasibility(model, frac))

    missing = dict(point)
    del missing["alpha(A)"]
    with pytest.raises(KeyError):
        check_solution_feasibility(model, missing)


def test_lift_objective_matches_hand_values(inst, cfg):
    model = build_model(inst, cfg)
    point = canonical_lift(inst, cfg, ["p1"], {"l1": "p1", "l2": "p1"})
    assert point["alpha(A)"] == pytest.approx(134.0)
    assert point["alpha(B)"] == pytest.approx(991.6666666666667)
    assert objective_value(model, point) == pytest.approx(991.6666666666667)


def test_inflated_slack_is_infeasible(inst, cfg):
    """Exactness rows forbid slacks above their defining values."""
    model = build_model(inst, cfg)
    point = canonical_lift(inst, cfg, ["p1", "p2"], {"l1": "p1", "l2": "p2"})
    for key in ("dplus(l1)", "aplus(p1)"):
        inflated = dict(point)
        inflated[key] += 0.25
        for u in ("udist(l1)", "ucap(p1)"):
            for value in (0.0, 1.0):
                trial = dict(inflated, **{u: value})
                assert check_solution_feasibility(model, trial), (key, u, value)


def test_lift_feasible_on_random_instances():
    rng = np.random.default_rng(3)
    for _ in range(30):
        inst = random_instance(rng, n_candidates=2, n_locations=3)
        inst = inst.with_budget(1e9)
        for cfg in (AccessConfig(), MINALL_UNCAP):
            model = build_model(inst, cfg)
            for mask in range(4):
                opened = [p.id for k, p in enumerate(inst.parks) if p.existing or mask >> (k - 1) & 1]
                for choice in itertools.product(opened, repeat=len(inst.locations)):
                    point = canonical_lift(inst, cfg, opened, dict(zip(inst.location_ids, choice)))
                    assert check_solution_feasibility(model, point) == []


def test_decode_assignment(inst, cfg):
    model = build_model(inst, cfg)
    point = canonical_lift(inst, cfg, ["p1", "p3"], {"l1": "p3", "l2": "p1"})
    opened, assignment = decode_assignment(model, point)
    assert opened == ("p1", "p3")
    assert list(assignment.items()) == [("l1", "p3"), ("l2", "p1")]


def test_builder_normalizes_terms():
    b = ModelBuilder("m")
    b.add_var("a", VarKind.CONTINUOUS)
    b.add_var("z", VarKind.BINARY, -5, 5)
    b.add_constraint("c", [("z", 1.0), ("a", 2.0), ("a", 1.0), ("z", -1.0)], Sense.LE, 3)
    model = b.build()
    assert model.constraint("c").coeffs == (("a", 3.0),)
    assert (model.variable("z").lb, model.variable("z").ub) == (0.0, 1.0)
    with pytest.raises(ValueError):
        b.add_constraint("c", [("a", 1.0)], Sense.GE, 0)
    with pytest.raises(KeyError):
        b.add_constraint("d", [("nope", 1.0)], Sense.GE, 0)
