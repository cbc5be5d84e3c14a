import pytest

import oracles
from gradedringlab.constructions import graded_group_ring
from gradedringlab.errors import CapExceeded
from gradedringlab.grading import trivial_grading
from gradedringlab.groups import cyclic_group
from gradedringlab.harness.catalog import catalog, fixture
from gradedringlab.limits import limits
from gradedringlab.radicals import graded_jacobson_radical, homogeneous_right_ideals, is_graded_local
from gradedringlab.rings import matrix_ring, ring_zmod, zero_ring
from gradedringlab.structure import jacobson_radical

C2 = cyclic_group(2)
GROUP_SMALL = [fx for fx in catalog() if fx.graded.is_group_graded and fx.graded.ring.size <= 64]
TINY = [fx for fx in GROUP_SMALL if fx.graded.ring.size <= 16]


def _members(mask):
    return [int(i) for i in mask.nonzero()[0]]


def test_lattice_examples():
    F2 = trivial_grading(ring_zmod(2), C2)
    assert homogeneous_right_ideals(F2).sizes() == [1, 2]
    Z4 = trivial_grading(ring_zmod(4), C2)
    lat = homogeneous_right_ideals(Z4)
    assert [_members(m) for m in lat.members] == [[0], [0, 2], [0, 1, 2, 3]]
    assert [_members(m) for m in lat.maximal] == [[0, 2]]


def test_checkerboard_has_two_maximal_ideals():
    GR = fixture("paper-counterexample-checkerboard").graded
    lat = homogeneous_right_ideals(GR)
    assert len(lat.maximal) == 2
    rad = graded_jacobson_radical(GR)
    assert rad.ideal.size == 1 and rad.e_part_matches
    assert not is_graded_local(GR)


def test_radical_examples():
    Z4 = trivial_grading(ring_zmod(4), C2)
    assert graded_jacobson_radical(Z4).ideal.members.tolist() == [0, 2]
    assert is_graded_local(Z4)
    F = graded_group_ring(trivial_grading(ring_zmod(2), C2))
    # F2[C2] is graded division: the only proper homogeneous right ideal is zero
    assert graded_jacobson_radical(F).ideal.size == 1 and is_graded_local(F)
    # while its ungraded radical is the augmentation ideal
    assert jacobson_radical(F.ring).size == 2
    Z = trivial_grading(zero_ring(), C2)
    assert graded_jacobson_radical(Z).ideal.size == 1 and not is_graded_local(Z)


@pytest.mark.parametrize("fx", GROUP_SMALL, ids=lambda f: f.name)
def test_graded_radical_matches_oracle(fx):
    rad = graded_jacobson_radical(fx.graded)
    assert rad.ideal.members.tolist() == oracles.graded_radical(fx.graded)
    assert rad.e_part_matches


def _span(R, gens):
    S = {R.zero} | set(gens)
    while True:
        new = S | {R.add(a, b) for a in S for b in S}
        if new == S:
            return S
        S = new


def _right_ideal_oracle(GR):
    R = GR.ring
    H = set(oracles.homogeneous(GR))
    out = []
    for S in oracles.additive_subgroups(R):
        s = set(S)
        hom = [x for x in S if x in H]
        if all(R.mul(x, r) in s for x in S for r in oracles.elements(R)) and _span(R, hom) == s:
            out.append(sorted(S))
    return sorted(out, key=lambda m: (len(m), m))


@pytest.mark.parametrize("fx", TINY, ids=lambda f: f.name)
def test_lattice_matches_exhaustive_enumeration(fx):
    lat = homogeneous_right_ideals(fx.graded)
    assert [_members(m) for m in lat.members] == _right_ideal_oracle(fx.graded)


def test_lattice_respects_caps():
    fresh = trivial_grading(matrix_ring(ring_zmod(2), 2), C2)
    with limits(max_ideals=2):
        with pytest.raises(CapExceeded):
            homogeneous_right_ideals(fresh)
