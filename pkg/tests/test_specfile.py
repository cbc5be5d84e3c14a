from pathlib import Path

import numpy as np
import pytest

from gradedringlab.errors import ConditionViolation, NotDirectSum, ProductLeak, SpecError
from gradedringlab.harness.catalog import fixture
from gradedringlab.specfile import load_spec, parse_spec

SPECS = Path(__file__).resolve().parent.parent / "specs"

CHECKERBOARD = """gradedringlab-spec v1
# the C2 checkerboard grading
group C2 = cyclic(2)
ring M = matrix(boolean(1), 2)
grade M by C2 matrix-sigma(e, g)
expect graded-nil-clean = false
"""


def test_checkerboard_spec_matches_catalog():
    spec = parse_spec(CHECKERBOARD)
    GR = spec.target
    assert spec.expect == {"graded-nil-clean": False}
    ref = fixture("paper-counterexample-checkerboard").graded
    assert np.array_equal(GR.masks, ref.masks)


def test_bundled_specs_load():
    names = sorted(p.name for p in SPECS.glob("*.spec"))
    assert "checkerboard.spec" in names
    for p in SPECS.glob("*.spec"):
        if p.name == "bad-direct-sum.spec":
            with pytest.raises(NotDirectSum):
                load_spec(str(p))
        else:
            assert load_spec(str(p)).target.ring.size > 0


def test_z_window_spec():
    GR = load_spec(str(SPECS / "m2-zgraded.spec")).target
    assert list(GR.group.names) == ["0", "1", "2", "-2", "-1"]
    sizes = [int(GR.masks[g].sum()) for g in range(GR.group.order)]
    assert sizes == [4, 2, 1, 1, 2]


@pytest.mark.parametrize("text,line,col", [
    ("gradedringlab-spec v2\n", 1, 1),
    ("", 1, 1),
    ("gradedringlab-spec v1\nring R = zmod(4\n", 2, None),
    ("gradedringlab-spec v1\nfoo R = zmod(4)\n", 2, 1),
    ("gradedringlab-spec v1\ngroup C2 = cyclic(2)\ngrade R by C2 trivial\n", 3, 7),
    ("gradedringlab-spec v1\nexpect graded-nil-clean = maybe\n", 2, 27),
    ("gradedringlab-spec v1\nring R = zmod(4)\ntarget R\n", 3, 8),
])
def test_spec_errors_carry_position(text, line, col):
    with pytest.raises(SpecError) as exc:
        parse_spec(text)
    assert exc.value.line == line
    if col is not None:
        assert exc.value.column == col
    assert f"line {line}" in str(exc.value)


def test_spec_verification_errors_keep_type():
    bad = """gradedringlab-spec v1
group C2 = cyclic(2)
ring M = matrix(zmod(2), 2)
grade M by C2 components(e = [[[1,0],[0,0]], [[0,0],[0,1]], [[0,1],[0,0]]], g = [[[0,0],[1,0]]])
"""
    with pytest.raises(ProductLeak):
        parse_spec(bad)


def test_s_grading_condition_ii_violator():
    text = """gradedringlab-spec v1
groupoid S = products([e, s], [[e, e, e], [e, s, s], [s, e, s]])
group C2 = cyclic(2)
ring R = groupring(zmod(2), C2)
grade R by S s-grading(e = [{"e": 1}], s = [{"g": 1}])
"""
    with pytest.raises(ConditionViolation) as exc:
        parse_spec(text)
    assert exc.value.witness["condition"] == "(ii)"


def test_graded_references_feed_constructions():
    text = """gradedringlab-spec v1
group C2 = cyclic(2)
ring B = matrix(zmod(2), 2)
grade B by C2 matrix-sigma(e, g)
ring T = triangular(@B, 2)
grade T by C2 matrix-sigma(e, e)
ring P = product(@B, @B)
grade P by C2 induced
target T
"""
    spec = parse_spec(text)
    assert spec.target_name == "T" and spec.target.ring.size == 16 ** 3
    assert spec.graded["P"].ring.size == 256
