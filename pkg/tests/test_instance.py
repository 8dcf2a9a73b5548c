import csv
import json
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from parkequity.datasets import tiny1, write_instance
from parkequity.instance import (
    AccessConfig,
    InstanceError,
    ObjectiveKind,
    clip_and_filter,
    instance_to_dict,
    load_config,
    load_instance,
    reallocate_population,
    round_half_up,
    validate_instance,
)


@pytest.fixture
def tiny_dir(tmp_path):
    write_instance(tmp_path / "tiny", tiny1())
    return tmp_path / "tiny"


def _rewrite(path, keep):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    with open(path, "w", newline="") as fh:
        csv.writer(fh).writerows([rows[0]] + [r for r in rows[1:] if keep(r)])


def _edit_cell(path, row_id, column, value):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    for r in rows:
        if r["id"] == row_id:
            r[column] = value
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]))
        w.writeheader()
        w.writerows(rows)


def test_load_tiny(tiny_dir):
    inst, cfg = load_instance(tiny_dir, tiny_dir / "config.json")
    assert (len(inst.parks), len(inst.locations), len(inst.races)) == (3, 2, 2)
    assert inst.park_ids == ("p1", "p2", "p3")
    assert inst.existing_indices == (0,)
    assert inst.distance[2, 1] == 0.6
    assert inst.budget == 100.0 and inst.max_distance == 0.5
    assert cfg.n_cap == 1 / 150
    assert validate_instance(inst, cfg) == []


def test_load_is_deterministic(tiny_dir):
    a, _ = load_instance(tiny_dir, tiny_dir / "config.json")
    b, _ = load_instance(tiny_dir, tiny_dir / "config.json")
    assert json.dumps(instance_to_dict(a)) == json.dumps(instance_to_dict(b))
    assert instance_to_dict(a) == instance_to_dict(tiny1())


def test_missing_distance_row(tiny_dir):
    _rewrite(tiny_dir / "distances.csv", lambda r: (r[0], r[1]) != ("p3", "l2"))
    with pytest.raises(InstanceError, match="incomplete distance matrix"):
        load_instance(tiny_dir, tiny_dir / "config.json")


def test_existing_park_with_cost(tiny_dir):
    _edit_cell(tiny_dir / "parks.csv", "p1", "cost", "10")
    with pytest.raises(InstanceError, match="existing park must have zero cost"):
        load_instance(tiny_dir, tiny_dir / "config.json")


def test_missing_file(tiny_dir):
    (tiny_dir / "population.csv").unlink()
    with pytest.raises(FileNotFoundError, match="missing file"):
        load_instance(tiny_dir, tiny_dir / "config.json")


def test_unknown_and_duplicate_ids(tiny_dir):
    with open(tiny_dir / "distances.csv", "a", newline="") as fh:
        csv.writer(fh).writerow(["p9", "l1", "1.0"])
    with pytest.raises(InstanceError, match="unknown park id"):
        load_instance(tiny_dir, tiny_dir / "config.json")
    _rewrite(tiny_dir / "distances.csv", lambda r: r[0] != "p9")
    with open(tiny_dir / "locations.csv", "a", newline="") as fh:
        csv.writer(fh).writerow(["l1", "", ""])
    with pytest.raises(InstanceError, match="duplicate location id"):
        load_instance(tiny_dir, tiny_dir / "config.json")


def test_negative_population(tiny_dir):
    with open(tiny_dir / "population.csv", "a", newline="") as fh:
        csv.writer(fh).writerow(["l1", "C", "-3"])
    with pytest.raises(InstanceError, match="negative population"):
        load_instance(tiny_dir, tiny_dir / "config.json")


def test_raw_averages_and_acres(tmp_path):
    root = tmp_path / "raw"
    write_instance(root, tiny1())
    with open(root / "parks.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["id", "existing", "cost", "acres", "heat_avg", "tree_avg", "zone"])
        w.writerow(["p1", "1", "", "1.5", "2.0", "30", ""])
        w.writerow(["p2", "0", "", "1.0", "4.5", "30", "z1"])
        w.writerow(["p3", "0", "80", "4.0", "2.0", "10", ""])
    with open(root / "parcels.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["zone", "acres", "land_value"])
        w.writerows([["z1", "1", "10000"], ["z1", "3", "50000"], ["z1", "2", ""]])
    inst, _ = load_instance(root, root / "config.json")
    p1, p2, p3 = inst.parks
    assert (p1.capacity, p1.cost) == (150.0, 0.0)
    assert p2.cost == 15000.0 and p2.heat_excess == pytest.approx(0.5)
    assert p3.capacity == 400.0 and p3.tree_deficit == 10.0


def test_avg_and_deviation_together_rejected(tiny_dir):
    with open(tiny_dir / "parks.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    for r in rows:
        r["heat_avg"] = "2.0"
    with open(tiny_dir / "parks.csv", "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]))
        w.writeheader()
        w.writerows(rows)
    with pytest.raises(InstanceError, match="not both"):
        load_instance(tiny_dir, tiny_dir / "config.json")


def test_population_rounding_and_dropping(tiny_dir):
    with open(tiny_dir / "locations.csv", "a", newline="") as fh:
        csv.writer(fh).writerow(["l3", "", ""])
    with open(tiny_dir / "population.csv", "a", newline="") as fh:
        csv.writer(fh).writerows([["l3", "A", "0.2"], ["l3", "B", "0.4"]])
    _rewrite(tiny_dir / "population.csv", lambda r: r[:2] != ["l1", "A"])
    with open(tiny_dir / "population.csv", "a", newline="") as fh:
        csv.writer(fh).writerow(["l1", "A", "99.5"])
    inst, _ = load_instance(tiny_dir, tiny_dir / "config.json")
    assert inst.location_ids == ("l1", "l2")
    assert inst.locations[0].population["A"] == 100.0


def test_config_parsing(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({
        "budget": 5, "normalizations": {"cap": "1/150"}, "emphasis": {"B": 10, "default": 2},
        "objective": "min_all", "capacitated": False,
    }))
    cfg, budget, m = load_config(path)
    assert budget == 5.0 and m == 0.5
    assert cfg.n_cap == 1 / 150
    assert cfg.q("B") == 10.0 and cfg.q("A") == 2.0
    assert cfg.objective_kind is ObjectiveKind.MIN_ALL and not cfg.capacitated
    path.write_text(json.dumps({"max_distance": 1}))
    with pytest.raises(InstanceError, match="budget"):
        load_config(path)


def test_validate_examples():
    inst, cfg = tiny1(), AccessConfig()
    assert validate_instance(inst, cfg) == []
    parks = list(inst.parks)
    parks[1] = replace(parks[1], heat_excess=0.3, heat_deficit=0.2)
    bad = replace(inst, parks=tuple(parks))
    assert validate_instance(bad, cfg) == ["park p2: excess and deficit heat both positive"]
    problems = validate_instance(inst, cfg.with_emphasis({"A": 0.0}))
    assert len(problems) == 1 and problems[0].startswith("emphasis must be positive")


def test_validate_names_entities():
    inst = tiny1()
    parks = list(inst.parks)
    parks[0] = replace(parks[0], cost=10.0)
    parks[2] = replace(parks[2], capacity=-1.0)
    problems = validate_instance(replace(inst, parks=tuple(parks)), AccessConfig())
    assert "park p1: existing park must have zero cost" in problems
    assert any(p.startswith("park p3: capacity") for p in problems)


def test_with_existing():
    inst = tiny1().with_existing(["p2"])
    assert inst.existing_indices == (0, 1)
    assert inst.parks[1].cost == 0.0
    with pytest.raises(KeyError):
        inst.with_existing(["nope"])


def test_distance_is_read_only():
    with pytest.raises(ValueError):
        tiny1().distance[0, 0] = 5.0


def test_reallocate_examples():
    assert reallocate_population({"g1": {"A": 100}}, {("g1", "n1"): 0.7, ("g1", "n2"): 0.3}) == {
        "n1": {"A": pytest.approx(70)}, "n2": {"A": pytest.approx(30)},
    }
    assert reallocate_population({"g1": {"A": 100}}, {("g1", "n1"): 1.0}) == {"n1": {"A": 100}}
    two = reallocate_population({"g1": {"A": 40}, "g2": {"A": 60}}, {("g1", "n1"): 0.5, ("g2", "n1"): 0.5})
    assert two == {"n1": {"A": 50}}
    with pytest.raises(InstanceError):
        reallocate_population({"g1": {"A": 1}}, {("g1", "n1"): 0.7, ("g1", "n2"): 0.4})
    with pytest.raises(InstanceError):
        reallocate_population({"g1": {"A": 1}}, {("g1", "n1"): 1.5})


def test_clip_and_filter_examples():
    assert clip_and_filter({"l": {"A": 100, "B": 60}}, {"l": 0.5}, 25) == {"l": {"A": 50, "B": 30}}
    assert clip_and_filter({"l": {"A": 30}}, {"l": 0.5}, 25) == {}
    assert clip_and_filter({"l": {"A": 30}}, {"l": 1.0}, 25) == {"l": {"A": 30}}
    with pytest.raises(InstanceError):
        clip_and_filter({"l": {"A": 30}}, {"l": 0.0}, 25)


def test_round_half_up():
    assert [round_half_up(v) for v in (0.5, 1.5, 2.5, 70.49, 0.705 * 100)] == [1, 2, 3, 70, 71]


@given(
    st.dictionaries(
        st.sampled_from(["g1", "g2", "g3"]),
        st.fixed_dictionaries({"A": st.floats(0, 1e4), "B": st.floats(0, 1e4)}),
        min_size=1,
    ),
    st.lists(st.floats(0, 1), min_size=2, max_size=2),
)
def test_reallocation_conserves(old, weights):
    split = [w / max(1.0, sum(weights)) for w in weights]
    overlap = {(g, f"n{i}"): split[i] for g in old for i in range(2)}
    new = reallocate_population(old, overlap)
    for race in ("A", "B"):
        before = sum(c[race] for c in old.values())
        after = sum(c.get(race, 0.0) for c in new.values())
        assert after <= before * (1 + 1e-9) + 1e-9
        if abs(sum(split) - 1.0) < 1e-12:
            assert after == pytest.approx(before, rel=1e-9, abs=1e-9)


@given(
    st.dictionaries(st.sampled_from(list("abcdef")), st.fixed_dictionaries({"A": st.floats(0, 500)}), min_size=1),
    st.floats(0.01, 1.0),
)
def test_clip_totals(counts, frac):
    out = clip_and_filter(counts, {k: frac for k in counts}, 25)
    for loc, by_race in out.items():
        assert by_race["A"] == pytest.approx(counts[loc]["A"] * frac)
        assert by_race["A"] >= 25
    for loc in set(counts) - set(out):
        assert counts[loc]["A"] * frac < 25
    total_in = sum(c["A"] * frac for k, c in counts.items() if k in out)
    assert sum(c["A"] for c in out.values()) == pytest.approx(total_in)


def test_population_matrix():
    t = tiny1().population_matrix()
    np.testing.assert_array_equal(t, [[100, 50], [20, 200]])
