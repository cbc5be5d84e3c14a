"""Named graded-ring fixtures.

Each fixture is a spec text, so every recipe rebuilds deterministically and
can be fed to the CLI unchanged.  Expected flags carry a provenance tag:
``paper`` for values stated in the source text, ``derived`` for values
established by an independent hand computation or brute-force oracle.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

from ..grading import GradedRing
from ..specfile import Spec, parse_spec

PAPER, DERIVED = "paper", "derived"

_ZGRADED_M2 = ("components(0 = [[[1,0],[0,0]], [[0,0],[0,1]]], 1 = [[[0,1],[0,0]]], "
               "-1 = [[[0,0],[1,0]]])")


@dataclass(frozen=True)
class Fixture:
    name: str
    spec: str
    expected: dict[str, tuple[bool, str]]       # flag -> (value, provenance)
    # refutes the implication "R_e nil clean => R graded nil clean"
    counterexample: bool = False
    notes: str = ""
    tags: tuple[str, ...] = field(default=())

    def build(self) -> Spec:
        return _build(self.spec)

    @property
    def graded(self) -> GradedRing:
        return self.build().target


@functools.lru_cache(maxsize=None)
def _build(text: str) -> Spec:
    return parse_spec(text)


def _spec(*lines: str) -> str:
    return "\n".join(("gradedringlab-spec v1",) + lines) + "\n"


def _trivial(ring: str, group: str = "cyclic(2)") -> str:
    return _spec(f"group G = {group}", f"ring R = {ring}", "grade R by G trivial")


def _f(**flags: tuple[bool, str]) -> dict[str, tuple[bool, str]]:
    return {k.replace("_", "-"): v for k, v in flags.items()}


T, F = True, False

FIXTURES: tuple[Fixture, ...] = (
    Fixture("zero-ring-C2", _trivial("zmod(1)"),
            _f(graded_nil_clean=(T, DERIVED), graded_2_nil_clean=(T, DERIVED)),
            notes="empty quantification: every predicate holds", tags=("trivial",)),
    Fixture("F2-trivial-C2", _trivial("zmod(2)"),
            _f(graded_nil_clean=(T, DERIVED), graded_strongly_nil_clean=(T, DERIVED),
               graded_clean=(T, DERIVED)), tags=("trivial",)),
    Fixture("Z4-trivial-C2", _trivial("zmod(4)"),
            _f(graded_nil_clean=(T, DERIVED), graded_strongly_nil_clean=(T, DERIVED),
               graded_clean=(T, DERIVED), graded_local=(T, DERIVED)), tags=("trivial",)),
    Fixture("Z4-trivial-C1", _trivial("zmod(4)", "trivial"),
            _f(graded_nil_clean=(T, DERIVED)), tags=("trivial",)),
    Fixture("Z3-trivial-C2", _trivial("zmod(3)"),
            _f(graded_nil_clean=(F, DERIVED), graded_clean=(T, DERIVED), re_nil_clean=(F, DERIVED)),
            notes="2 is a unit, so no grading of Z/3 is graded nil clean", tags=("trivial", "Z3")),
    Fixture("B2-trivial-C2", _trivial("boolean(2)"),
            _f(graded_nil_clean=(T, DERIVED), graded_clean=(T, DERIVED)), tags=("trivial",)),
    Fixture("M2-F2-trivial-C2", _trivial("matrix(zmod(2), 2)"),
            _f(graded_nil_clean=(T, DERIVED), graded_strongly_nil_clean=(F, DERIVED)),
            tags=("trivial",)),
    Fixture("paper-example-M2-Zgraded",
            _spec("group Z = window(2)", "ring R = matrix(boolean(1), 2)", f"grade R by Z {_ZGRADED_M2}"),
            _f(graded_nil_clean=(T, PAPER), graded_clean=(F, PAPER), graded_2_nil_clean=(T, PAPER),
               graded_strongly_nil_clean=(T, DERIVED)),
            notes="Z-grading realised on the window -2..2", tags=("paper",)),
    Fixture("paper-example-M2-Zgraded-Z4",
            _spec("group Z = window(2)", "ring R = matrix(zmod(4), 2)", f"grade R by Z {_ZGRADED_M2}"),
            _f(graded_nil_clean=(T, DERIVED)), tags=("paper",)),
    Fixture("paper-counterexample-checkerboard",
            _spec("group C2 = cyclic(2)", "ring R = matrix(boolean(1), 2)", "grade R by C2 matrix-sigma(e, g)"),
            _f(graded_nil_clean=(F, PAPER), re_nil_clean=(T, PAPER), graded_clean=(F, DERIVED)),
            counterexample=True, tags=("paper",)),
    Fixture("paper-counterexample-checkerboard-B2",
            _spec("group C2 = cyclic(2)", "ring R = matrix(boolean(2), 2)", "grade R by C2 matrix-sigma(e, g)"),
            _f(graded_nil_clean=(F, PAPER), re_nil_clean=(T, PAPER)),
            counterexample=True, tags=("paper",)),
    Fixture("paper-remark-T2-C2",
            _spec("group C2 = cyclic(2)", "ring R = triangular(boolean(1), 2)",
                  "grade R by C2 matrix-sigma(e, g)"),
            _f(graded_2_nil_clean=(T, PAPER), graded_nil_clean=(T, DERIVED)), tags=("paper", "triangular")),
    Fixture("T2-F2-trivial", _trivial("triangular(zmod(2), 2)"),
            _f(graded_nil_clean=(T, DERIVED), graded_strongly_nil_clean=(T, DERIVED)), tags=("triangular",)),
    Fixture("T3-F2-trivial", _trivial("triangular(zmod(2), 3)"),
            _f(graded_nil_clean=(T, DERIVED)), tags=("triangular",)),
    Fixture("T2-Z4-trivial", _trivial("triangular(zmod(4), 2)"),
            _f(graded_nil_clean=(T, DERIVED)), tags=("triangular",)),
    Fixture("T2-Z3-trivial", _trivial("triangular(zmod(3), 2)"),
            _f(graded_nil_clean=(F, DERIVED)), tags=("triangular", "Z3")),
    Fixture("F2-C2-groupring-natural",
            _spec("group C2 = cyclic(2)", "ring R = groupring(zmod(2), C2)", "grade R by C2 groupring-canonical"),
            _f(nil_clean=(T, DERIVED), graded_nil_clean=(F, DERIVED), graded_clean=(T, DERIVED),
               graded_division=(T, DERIVED), graded_local=(T, DERIVED)),
            counterexample=True, notes="g is a unit of degree g; 1+g squares to 0", tags=("groupring",)),
    Fixture("Z4-C2-groupring",
            _spec("group C2 = cyclic(2)", "ring R = groupring(zmod(4), C2)", "grade R by C2 groupring-canonical"),
            _f(nil_clean=(T, DERIVED), graded_nil_clean=(F, DERIVED)),
            counterexample=True, tags=("groupring",)),
    Fixture("Z3-C2-groupring",
            _spec("group C2 = cyclic(2)", "ring R = groupring(zmod(3), C2)", "grade R by C2 groupring-canonical"),
            _f(graded_nil_clean=(F, DERIVED)), tags=("groupring", "Z3")),
    Fixture("F2-C2-in-C4-subgroupring",
            _spec("group C4 = cyclic(4)", "ring R = subgroupring(zmod(2), C4, [e, g2])",
                  "grade R by C4 groupring-canonical"),
            _f(graded_nil_clean=(F, DERIVED)), counterexample=True, tags=("groupring",)),
    Fixture("Z4-C2-in-C4-subgroupring",
            _spec("group C4 = cyclic(4)", "ring R = subgroupring(zmod(4), C4, [e, g2])",
                  "grade R by C4 groupring-canonical"),
            _f(graded_nil_clean=(F, DERIVED)), counterexample=True, tags=("groupring",)),
    Fixture("F2C2-S3-graded-A3-twisted",
            _spec("group S3 = symmetric(3)", "group C2 = cyclic(2)", "ring K = groupring(zmod(2), C2)",
                  'grade K by S3 components(p012 = [{"e": 1}], p102 = [{"g": 1}])',
                  "ring R = subgroupring(@K, S3, [p012, p120, p201])", "grade R by S3 groupring-canonical"),
            _f(graded_nil_clean=(F, DERIVED), re_nil_clean=(T, DERIVED)), counterexample=True,
            notes="conjugation by the transposition inverts A3, so the twist is visible",
            tags=("groupring", "nonabelian")),
    Fixture("F2-truncpoly-C3-local",
            _spec("group C3 = cyclic(3)", "ring R = truncpoly(zmod(2), 3)",
                  "grade R by C3 components(e = [[1,0,0]], g = [[0,1,0]], g2 = [[0,0,1]])"),
            _f(graded_local=(T, DERIVED), graded_nil_clean=(T, DERIVED)), tags=("local",)),
    Fixture("Z4-truncpoly-C3-local",
            _spec("group C3 = cyclic(3)", "ring R = truncpoly(zmod(4), 3)",
                  "grade R by C3 components(e = [[1,0,0]], g = [[0,1,0]], g2 = [[0,0,1]])"),
            _f(graded_local=(T, DERIVED), graded_nil_clean=(T, DERIVED)), tags=("local",)),
    Fixture("product-F2-Z4-trivial",
            _spec("group C2 = cyclic(2)", "ring A = zmod(2)", "grade A by C2 trivial", "ring B = zmod(4)",
                  "grade B by C2 trivial", "ring R = product(@A, @B)", "grade R by C2 induced"),
            _f(graded_nil_clean=(T, DERIVED)), tags=("product",)),
    Fixture("S-M2-F2-matrixunits",
            _spec("groupoid B = matrixunits(2)", "ring R = matrix(zmod(2), 2)",
                  "grade R by B s-grading(11 = [[[1,0],[0,0]]], 12 = [[[0,1],[0,0]]], "
                  "21 = [[[0,0],[1,0]]], 22 = [[[0,0],[0,1]]])"),
            _f(graded_nil_clean=(T, DERIVED)), tags=("s-graded",)),
    Fixture("S-T2-F2-matrixunits",
            _spec("groupoid B = upper-matrixunits(2)", "ring R = triangular(zmod(2), 2)",
                  "grade R by B s-grading(11 = [[[1,0],[0,0]]], 12 = [[[0,1],[0,0]]], 22 = [[[0,0],[0,1]]])"),
            _f(graded_nil_clean=(T, DERIVED)), tags=("s-graded",)),
    Fixture("S-M2-Z4-matrixunits",
            _spec("groupoid B = matrixunits(2)", "ring R = matrix(zmod(4), 2)",
                  "grade R by B s-grading(11 = [[[1,0],[0,0]]], 12 = [[[0,1],[0,0]]], "
                  "21 = [[[0,0],[1,0]]], 22 = [[[0,0],[0,1]]])"),
            _f(graded_nil_clean=(T, DERIVED)), tags=("s-graded",)),
    Fixture("S-M2-Z3-matrixunits",
            _spec("groupoid B = matrixunits(2)", "ring R = matrix(zmod(3), 2)",
                  "grade R by B s-grading(11 = [[[1,0],[0,0]]], 12 = [[[0,1],[0,0]]], "
                  "21 = [[[0,0],[1,0]]], 22 = [[[0,0],[0,1]]])"),
            _f(graded_nil_clean=(F, DERIVED)), tags=("s-graded", "Z3")),
)


def catalog() -> list[Fixture]:
    return list(FIXTURES)


def fixture(name: str) -> Fixture:
    for fx in FIXTURES:
        if fx.name == name:
            return fx
    raise KeyError(f"unknown fixture {name!r}")
