import dataclasses

import numpy as np
import pytest

import oracles
from gradedringlab.groups import cyclic_group
from gradedringlab.harness import checks as H
from gradedringlab.harness.catalog import DERIVED, PAPER, catalog, fixture
from gradedringlab.harness.search import additive_subgroups, grading_search
from gradedringlab.errors import CapExceeded
from gradedringlab.limits import limits
from gradedringlab.rings import matrix_ring, ring_boolean, ring_zmod, triangular_ring

C2 = cyclic_group(2)
SMALL = [fx for fx in catalog() if fx.graded.ring.size <= 64]


def test_catalog_shape():
    fxs = catalog()
    assert len(fxs) >= 15
    assert len({f.name for f in fxs}) == len(fxs)
    assert sum(f.counterexample for f in fxs) >= 1
    for f in fxs:
        assert all(prov in (PAPER, DERIVED) for _, prov in f.expected.values())
    with pytest.raises(KeyError):
        fixture("no-such-fixture")


@pytest.mark.parametrize("fx", SMALL, ids=lambda f: f.name)
def test_expected_flags_agree_with_oracle(fx):
    GR = fx.graded
    oracle = {
        "graded-nil-clean": oracles.is_graded_nil_clean(GR),
        "graded-strongly-nil-clean": oracles.is_graded_nil_clean(GR, strongly=True),
        "graded-clean": oracles.is_graded_clean(GR),
        "nil-clean": oracles.is_nil_clean(GR.ring),
    }
    for flag, (value, _) in fx.expected.items():
        if flag in oracle:
            assert oracle[flag] == value, flag


@pytest.mark.parametrize("fx", catalog(), ids=lambda f: f.name)
def test_fixture_flags_check_holds(fx):
    [res] = H.run_checks([fx], ["fixture-flags"])
    assert res.status == H.HOLDS, res.witness


def test_corrupted_flag_fails_with_reverifiable_witness():
    fx = fixture("Z4-trivial-C2")
    value, prov = fx.expected["graded-nil-clean"]
    bad = dataclasses.replace(fx, expected={**fx.expected, "graded-nil-clean": (not value, prov)})
    [res] = H.run_checks([bad], ["fixture-flags"])
    assert res.status == H.FAILED
    assert res.witness["mismatches"]["graded-nil-clean"]["computed"] is value
    assert H.reverify(res, bad)


def test_counterexample_is_expected_failure():
    fx = fixture("paper-counterexample-checkerboard")
    [res] = H.run_checks([fx], ["implication-1"])
    assert res.status == H.EXPECTED
    assert H.reverify(res, fx)
    R = fx.graded.ring
    assert R.format(res.witness["element"]) == [[[0], [1]], [[1], [0]]]


def test_undesignated_refutation_is_failure():
    fx = dataclasses.replace(fixture("paper-counterexample-checkerboard"), counterexample=False)
    [res] = H.run_checks([fx], ["implication-1"])
    assert res.status == H.FAILED and H.reverify(res, fx)


def test_resolve_checks():
    assert [c.id for c in H.resolve_checks("all")] == list(H.CHECK_IDS)
    assert [c.id for c in H.resolve_checks("ring-axioms,fixture-flags")] == ["fixture-flags", "ring-axioms"]
    with pytest.raises(KeyError):
        H.resolve_checks("ring-axioms,bogus")


def test_jobs_do_not_change_results():
    fxs = [fixture("Z4-trivial-C2"), fixture("paper-counterexample-checkerboard"), fixture("T2-F2-trivial")]
    one = [r.as_dict() for r in H.run_checks(fxs)]
    two = [r.as_dict() for r in H.run_checks(fxs, jobs=2)]
    assert one == two


def test_caps_turn_into_skips_in_workers():
    fx = fixture("paper-counterexample-checkerboard")
    fresh = dataclasses.replace(fx, spec=fx.spec + "# fresh build\n")
    with limits(max_ideals=1):
        res = H.run_checks([fresh, fresh], ["jg-lemma"], jobs=2)
    assert {r.status for r in res} == {H.SKIPPED}


def test_summary_counts():
    res = H.run_checks([fixture("Z4-trivial-C2")])
    s = H.summarize(res)
    assert s["total"] == len(res) and s["fixtures"] == 1 and s[H.FAILED] == 0
    assert sum(s[k] for k in H.STATUSES) == s["total"]


# -- grading search ---------------------------------------------------------------------

@pytest.mark.parametrize("R", [ring_zmod(4), ring_boolean(2), matrix_ring(ring_zmod(2), 2),
                               triangular_ring(ring_zmod(2), 2)], ids=lambda R: R.label)
def test_additive_subgroups_match_oracle(R):
    mine = sorted(tuple(np.flatnonzero(m).tolist()) for m in additive_subgroups(R))
    assert mine == sorted(tuple(sorted(s)) for s in oracles.additive_subgroups(R))


@pytest.mark.parametrize("R,G", [(matrix_ring(ring_zmod(2), 2), C2), (triangular_ring(ring_zmod(2), 2), C2),
                                 (ring_zmod(4), C2), (matrix_ring(ring_zmod(2), 2), cyclic_group(3))],
                         ids=["M2F2-C2", "T2F2-C2", "Z4-C2", "M2F2-C3"])
def test_search_matches_exhaustive_oracle(R, G):
    res = grading_search(R, G)
    mine = sorted(tuple(tuple(np.flatnonzero(f.graded.masks[g]).tolist()) for g in range(G.order))
                  for f in res.gradings)
    assert mine == sorted(tuple(tuple(sorted(c)) for c in comps) for comps in oracles.gradings(R, G))


def test_search_census_m2f2_c2():
    res = grading_search(matrix_ring(ring_zmod(2), 2), C2)
    assert res.subgroups == 67 and len(res.gradings) == 5
    assert len(res.counterexamples) == 3
    assert sum(f.trivial for f in res.gradings) == 1
    for f in res.counterexamples:
        assert f.re_nil_clean and not f.graded_nil_clean
        GR = f.graded
        Re = np.flatnonzero(GR.e_mask).tolist()
        assert oracles.is_nil_clean(GR.ring, Re) and not oracles.is_graded_nil_clean(GR)


def test_search_respects_cap():
    with limits(search_max_elements=8):
        with pytest.raises(CapExceeded):
            grading_search(matrix_ring(ring_zmod(2), 2), C2)
