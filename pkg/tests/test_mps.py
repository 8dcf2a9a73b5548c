import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parkequity.datasets import tiny1
from parkequity.instance import AccessConfig
from parkequity.milp import ModelBuilder, Sense, VarKind, build_model
from parkequity.mps import MpsError, format_mps, parse_mps, read_mps, write_mps


def _columns_section(text):
    lines = text.splitlines()
    start, end = lines.index("COLUMNS"), lines.index("RHS")
    return [ln.split() for ln in lines[start + 1:end] if "'MARKER'" not in ln]


def test_tiny_columns_one_entry_per_nonzero(inst, cfg):
    model = build_model(inst, cfg)
    entries = _columns_section(format_mps(model))
    expected = {(v, "OBJ") for v, _ in model.objective}
    expected |= {(v, row.name) for row in model.constraints for v, _ in row.coeffs}
    got = [(col, row) for col, row, _ in entries]
    assert len(got) == len(set(got)) == len(expected)
    assert set(got) == expected


def test_integer_markers_and_bounds(inst, cfg):
    text = format_mps(build_model(inst, cfg))
    assert text.count("'INTORG'") == 1 and text.count("'INTEND'") == 1
    assert " UP BND y(p1) 1" in text.splitlines()
    assert text.startswith("NAME park_equity_min_max_cap\nROWS\n N OBJ\n")
    assert text.endswith("ENDATA\n")


def test_empty_constraint_model():
    b = ModelBuilder("empty")
    b.add_var("v", VarKind.CONTINUOUS)
    text = format_mps(b.build())
    lines = text.splitlines()
    assert lines[lines.index("ROWS") + 1:lines.index("COLUMNS")] == [" N OBJ"]
    assert parse_mps(text) == b.build()


def test_file_round_trip_is_byte_stable(tmp_path, inst, cfg):
    model = build_model(inst, cfg)
    first = write_mps(model, tmp_path / "a.mps").read_bytes()
    again = write_mps(build_model(tiny1(), AccessConfig()), tmp_path / "b.mps").read_bytes()
    assert first == again
    assert read_mps(tmp_path / "a.mps") == model


def test_objective_constant_round_trip():
    b = ModelBuilder("c")
    b.add_var("v", VarKind.CONTINUOUS, -math.inf, 3.0)
    b.set_objective([("v", 2.0)], 7.5)
    model = b.build()
    assert parse_mps(format_mps(model)) == model


def test_reserved_name_and_bad_input():
    b = ModelBuilder("r")
    b.add_var("v", VarKind.CONTINUOUS)
    b.add_constraint("OBJ", [("v", 1.0)], Sense.LE, 1.0)
    with pytest.raises(MpsError):
        format_mps(b.build())
    with pytest.raises(MpsError, match="unsupported section"):
        parse_mps("NAME x\nRANGES\n")
    with pytest.raises(MpsError, match="unknown row"):
        parse_mps("NAME x\nROWS\n N OBJ\nCOLUMNS\n    v R1 1\nENDATA\n")


finite = st.floats(allow_nan=False, allow_infinity=False, width=64)
nonzero = finite.filter(lambda v: v != 0.0)


@st.composite
def models(draw):
    b = ModelBuilder(draw(st.sampled_from(["m", "model_1", "x"])))
    n = draw(st.integers(1, 6))
    names = []
    for i in range(n):
        if draw(st.booleans()):
            names.append(b.add_var(f"b{i}", VarKind.BINARY))
        else:
            lb = draw(st.one_of(st.just(0.0), st.just(-math.inf), finite))
            ub = draw(st.one_of(st.just(math.inf), st.floats(min_value=lb, allow_nan=False, allow_infinity=False)
                                if lb != -math.inf else finite))
            names.append(b.add_var(f"v{i}", VarKind.CONTINUOUS, lb, ub))
    for j in range(draw(st.integers(0, 4))):
        terms = draw(st.lists(st.tuples(st.sampled_from(names), nonzero), min_size=1, max_size=4,
                              unique_by=lambda t: t[0]))
        b.add_constraint(f"r{j}", terms, draw(st.sampled_from(list(Sense))), draw(finite))
    obj = draw(st.lists(st.tuples(st.sampled_from(names), nonzero), max_size=3, unique_by=lambda t: t[0]))
    b.set_objective(obj, draw(finite))
    return b.build()


@settings(max_examples=150, deadline=None)
@given(models())
def test_round_trip_property(model):
    back = parse_mps(format_mps(model))
    assert back == model
    for a, c in zip(model.constraints, back.constraints):
        assert [x.hex() for _, x in a.coeffs] == [x.hex() for _, x in c.coeffs]
        assert a.rhs.hex() == c.rhs.hex()
