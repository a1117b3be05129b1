import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from reluopt import MilpModel, MilpRow, MilpVar, ParseError, Relation, parse_lp_text, write_lp_text


def _model():
    return MilpModel(
        variables=(
            MilpVar("x0", -2.0, 3.0),
            MilpVar("x1", -np.inf, np.inf),
            MilpVar("z", 0.0, np.inf),
            MilpVar("d0", 0.0, 1.0, binary=True),
        ),
        rows=(
            MilpRow("c0", {"x0": 1.0, "x1": -2.5}, Relation.LE, 1.0),
            MilpRow("c1", {"z": 1.0, "d0": -4.0}, Relation.LE, 0.0),
            MilpRow("c2", {"x0": 1.0, "z": 1.0}, Relation.EQ, 0.5),
            MilpRow("c3", {"x1": 1.0}, Relation.GE, -3.0),
        ),
        objective={"x0": 1.0, "z": -0.75},
        maximize=True,
    )


def test_round_trip():
    model = _model()
    parsed = parse_lp_text(write_lp_text(model))
    assert parsed.maximize == model.maximize
    assert parsed.objective == pytest.approx(model.objective)
    assert parsed.binaries() == model.binaries()
    assert len(parsed.rows) == len(model.rows)
    for a, b in zip(parsed.rows, model.rows):
        assert (a.name, a.relation, a.rhs) == (b.name, b.relation, b.rhs)
        assert a.coeffs == pytest.approx(b.coeffs)
    for v in model.variables:
        pv = parsed.var(v.name)
        assert (pv.lower, pv.upper, pv.binary) == (v.lower, v.upper, v.binary)


def test_sections_in_text():
    text = write_lp_text(_model())
    for section in ("Maximize", "Subject To", "Bounds", "Binary", "End"):
        assert section in text
    assert "-infinity <= x1 <= +infinity" in text


def test_minimize_direction():
    model = MilpModel(
        variables=(MilpVar("a", 0.0, 1.0),),
        rows=(),
        objective={"a": 1.0},
        maximize=False,
    )
    text = write_lp_text(model)
    assert text.startswith("Minimize")
    assert not parse_lp_text(text).maximize


def test_default_bounds_when_missing():
    text = "Maximize\n obj: 1 w\nSubject To\n r0: 1 w <= 5\nEnd\n"
    model = parse_lp_text(text)
    v = model.var("w")
    assert (v.lower, v.upper) == (0.0, np.inf)


def test_parse_error_reports_line():
    text = "Maximize\n obj: 1 x\nSubject To\n r0: 1 x ???\nEnd\n"
    with pytest.raises(ParseError) as err:
        parse_lp_text(text)
    assert err.value.line == 4


def test_content_outside_section_rejected():
    with pytest.raises(ParseError):
        parse_lp_text("1 x <= 2\n")


def test_feasibility_helper():
    model = _model()
    ok = {"x0": 0.5, "x1": 0.0, "z": 0.0, "d0": 0.0}
    assert model.feasible(ok)
    bad = dict(ok, z=5.0, d0=1.0)  # violates c2
    assert not model.feasible(bad)


@settings(max_examples=50, deadline=None)
@given(
    coeffs=st.lists(
        st.floats(
            min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False
        ).filter(lambda v: v == 0.0 or abs(v) > 1e-9),
        min_size=1,
        max_size=5,
    ),
    rhs=st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False),
    relation=st.sampled_from(list(Relation)),
)
def test_row_coefficients_survive_round_trip(coeffs, rhs, relation):
    assume(any(c != 0.0 for c in coeffs))  # an all-zero row has no terms to keep
    row = MilpRow("r", {f"v{i}": c for i, c in enumerate(coeffs)}, relation, rhs)
    model = MilpModel(
        variables=tuple(MilpVar(f"v{i}", -np.inf, np.inf) for i in range(len(coeffs))),
        rows=(row,),
        objective={"v0": 1.0},
    )
    parsed = parse_lp_text(write_lp_text(model))
    back = parsed.rows[0]
    assert back.relation is relation
    assert back.rhs == pytest.approx(rhs, abs=1e-12)
    for name, c in row.coeffs.items():
        if c != 0.0:
            assert back.coeffs[name] == pytest.approx(c)
        else:
            assert name not in back.coeffs  # zero terms are dropped on write
