import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from gradedringlab import cleanness as K
from gradedringlab.constructions import graded_group_ring, strictly_upper_ideal
from gradedringlab.errors import NoDecomposition, NotHomogeneous, NotIdempotentModI
from gradedringlab.grading import quotient_graded, trivial_grading
from gradedringlab.groups import cyclic_group
from gradedringlab.harness.catalog import catalog, fixture
from gradedringlab.rings import matrix_ring, ring_zmod, zero_ring
from gradedringlab.structure import classify_elements, ideal_generated

C2 = cyclic_group(2)
SMALL = [fx for fx in catalog() if fx.graded.ring.size <= 64]


def test_plain_decompositions():
    Z4 = ring_zmod(4)
    assert [(d.f, d.b) for d in K.nil_clean_decompositions(Z4, 3)] == [(1, 2)]
    assert [(d.f, d.b) for d in K.nil_clean_decompositions(Z4, 0)] == [(0, 0)]
    assert [(d.f, d.b) for d in K.nil_clean_decompositions(ring_zmod(2), 1)] == [(1, 0)]
    M = matrix_ring(ring_zmod(2), 2)
    assert K.is_nil_clean(M).holds and not K.is_strongly_nil_clean(M).holds
    assert K.is_clean(ring_zmod(3)).holds and not K.is_nil_clean(ring_zmod(3)).holds


def test_strongly_is_a_filter():
    M = matrix_ring(ring_zmod(2), 2)
    for x in range(M.size):
        all_ = K.nil_clean_decompositions(M, x)
        strong = K.strongly_nil_clean_decompositions(M, x)
        assert strong == [d for d in all_ if d.commuting]
        assert [(d.f, d.b) for d in all_] == sorted((d.f, d.b) for d in all_)


def test_graded_element_examples():
    Z = fixture("paper-example-M2-Zgraded").graded
    x = Z.ring.parse([[0, 1], [0, 0]])
    decs = K.graded_nil_clean_element(Z, x)
    assert (decs[0].f, decs[0].b) == (Z.ring.zero, x)
    cb = fixture("paper-counterexample-checkerboard").graded
    anti = cb.ring.parse([[[0], [1]], [[1], [0]]])
    assert K.graded_nil_clean_element(cb, anti) == []
    F = graded_group_ring(trivial_grading(ring_zmod(2), C2))
    g = F.ring.parse({"g": 1})
    assert [(d.f, d.u) for d in K.graded_clean_element(F, g)] == [(F.ring.zero, g)]
    assert K.graded_nil_clean_element(F, g) == []
    with pytest.raises(NotHomogeneous):
        K.graded_nil_clean_element(cb, cb.ring.parse([[[1], [1]], [[0], [0]]]))


def test_ring_verdict_examples():
    assert K.is_graded_nil_clean(fixture("paper-example-M2-Zgraded").graded).holds
    v = K.is_graded_nil_clean(fixture("paper-counterexample-checkerboard").graded)
    assert not v.holds
    R = fixture("paper-counterexample-checkerboard").graded.ring
    assert R.format(v.witness) == [[[0], [1]], [[1], [0]]]
    Z4 = trivial_grading(ring_zmod(4), C2)
    assert K.is_graded_nil_clean(Z4).holds and K.is_graded_strongly_nil_clean(Z4).holds
    assert K.is_graded_2_nil_clean(fixture("paper-example-M2-Zgraded").graded).holds
    assert K.is_graded_2_nil_clean(fixture("paper-remark-T2-C2").graded).holds
    assert K.is_graded_2_nil_clean(trivial_grading(zero_ring(), C2)).holds


@pytest.mark.parametrize("fx", SMALL, ids=lambda f: f.name)
def test_verdicts_match_oracle(fx):
    GR = fx.graded
    assert K.is_graded_nil_clean(GR).holds == oracles.is_graded_nil_clean(GR)
    assert K.is_graded_strongly_nil_clean(GR).holds == oracles.is_graded_nil_clean(GR, strongly=True)
    assert K.is_graded_clean(GR).holds == oracles.is_graded_clean(GR)
    assert K.is_nil_clean(GR.ring).holds == oracles.is_nil_clean(GR.ring)


@pytest.mark.parametrize("fx", SMALL, ids=lambda f: f.name)
def test_graded_nil_clean_elements_match_oracle(fx):
    GR = fx.graded
    mine = [int(x) for x in np.flatnonzero(GR.homogeneous) if K.graded_nil_clean_element(GR, int(x))]
    assert mine == oracles.graded_nil_clean_elements(GR)


def test_e_component_rings():
    cb = fixture("paper-counterexample-checkerboard").graded
    Re = K.e_component_ring(cb)
    assert Re.size == 4 and K.is_nil_clean(Re).holds
    S = fixture("S-M2-F2-matrixunits").graded
    assert [C.size for C in K.idempotent_component_rings(S)] == [2, 2]


def test_gspr_examples():
    Z4 = trivial_grading(ring_zmod(4), C2)
    decs, unique = K.gspr_decompositions(Z4, 2)
    assert [(d.f, d.u) for d in decs] == [(1, 1)] and unique
    decs, _ = K.gspr_decompositions(Z4, 3)
    assert (0, 3) in [(d.f, d.u) for d in decs]
    F2 = trivial_grading(ring_zmod(2), C2)
    decs, unique = K.gspr_decompositions(F2, 1)
    assert [(d.f, d.u) for d in decs] == [(0, 1)] and unique


def test_nilpotency_criterion_examples():
    Z4 = trivial_grading(ring_zmod(4), C2)
    assert K.check_nilpotency_criterion(Z4, 2)
    assert K.graded_strongly_nil_clean_element(Z4, 2)
    assert K.check_nilpotency_criterion(Z4, 0)
    F = graded_group_ring(trivial_grading(ring_zmod(2), C2))
    g = F.ring.parse({"g": 1})
    assert not K.check_nilpotency_criterion(F, g)
    assert not K.graded_strongly_nil_clean_element(F, g)


def test_nilpotency_criterion_without_decomposition():
    cb = fixture("paper-counterexample-checkerboard").graded
    e12 = cb.ring.parse([[[0], [1]], [[0], [0]]])
    assert K.gspr_decompositions(cb, e12)[0] == []
    with pytest.raises(NoDecomposition):
        K.check_nilpotency_criterion(cb, e12)


def test_lifting_examples():
    T = fixture("T2-F2-trivial").graded
    I = strictly_upper_ideal(T.ring)
    Q = quotient_graded(T, I)
    a = T.ring.parse([[1, 1], [0, 1]])
    abar = int(Q.projection[a])
    assert K.lift_idempotent(T, I, abar) == T.ring.one
    assert K.lift_idempotent(T, I, int(Q.projection[T.ring.zero])) == T.ring.zero
    rep = K.lift_report(T, I, abar)
    assert rep.agree and T.ring.one in rep.lifts
    with pytest.raises(NotIdempotentModI):
        K.lift_idempotent(fixture("Z4-trivial-C2").graded, ideal_generated(ring_zmod(4), [1]), 0)


@pytest.mark.parametrize("name", ["T2-F2-trivial", "T3-F2-trivial", "T2-Z4-trivial", "paper-remark-T2-C2"])
def test_lifting_agrees_on_every_class(name):
    T = fixture(name).graded
    I = strictly_upper_ideal(T.ring)
    Q = quotient_graded(T, I).graded
    cl = classify_elements(Q.ring)
    for c in np.flatnonzero(cl.idempotent & Q.e_mask):
        rep = K.lift_report(T, I, int(c))
        assert rep.agree


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 255))
def test_fast_lift_is_idempotent_over_z4_triangular(x):
    T = fixture("T2-Z4-trivial").graded
    R = T.ring
    I = strictly_upper_ideal(R)
    GQ = quotient_graded(T, I)
    x %= R.size
    abar = int(GQ.projection[x])
    QR = GQ.graded.ring
    if QR.mul(abar, abar) != abar:
        return
    f = K.lift_idempotent(T, I, abar)
    assert R.mul(f, f) == f and GQ.projection[f] == abar


def test_abab_examples():
    Z4 = trivial_grading(ring_zmod(4), C2)
    assert K.check_abab_conditions(K.HOMOGENEOUS_NILPOTENT, Z4).ok
    F = graded_group_ring(trivial_grading(ring_zmod(2), C2))
    assert K.check_abab_conditions(K.HOMOGENEOUS_UNIT, F).ok
    one = K.GradedProperty("equal-to-one", lambda GR, x: x == GR.ring.one)
    rep = K.check_abab_conditions(one, Z4)
    assert not rep.ok and rep.violations["i"]
    assert rep.as_dict()["property"] == "equal-to-one"


def test_zero_ring_conventions():
    Z = trivial_grading(zero_ring(), C2)
    for v in (K.is_graded_nil_clean(Z), K.is_graded_strongly_nil_clean(Z), K.is_graded_clean(Z)):
        assert v.holds
