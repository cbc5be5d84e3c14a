"""Theorem checks run against catalog fixtures.

Every check verifies hypotheses first and records ``vacuous`` when they fail,
so a conclusion is never asserted outside its domain.  Both directions of an
equivalence are registered as separate checks.
"""

from __future__ import annotations

import contextvars
import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from .. import cleanness as K
from ..constructions import (GroupRing, augmentation, corner_ring, e_component_isomorphism, graded_subgroup_ring,
                             strictly_upper_ideal, triangular_structure)
from ..errors import AlgebraError, CapExceeded
from ..grading import (GradedRing, as_s_grading, coarsen, homogeneous_zero_divisor_free, is_graded_division,
                       is_graded_nil, is_homogeneous_ideal, quotient_graded)
from ..groups import FiniteGroup, is_cancellative
from ..radicals import graded_jacobson_radical, is_graded_local
from ..rings import MatrixRing
from ..structure import (SubsetIdeal, classify_elements, ideal_generated, ideal_power_nilpotent,
                         jacobson_radical, verify_ring_axioms)
from .catalog import Fixture

HOLDS, VACUOUS, EXPECTED, FAILED, SKIPPED = "holds", "vacuous", "failed-expected", "FAILED", "skipped"
STATUSES = (HOLDS, VACUOUS, EXPECTED, FAILED, SKIPPED)


@dataclass
class CheckResult:
    fixture: str
    check: str
    status: str
    detail: dict[str, Any] = field(default_factory=dict)
    witness: dict[str, Any] | None = None

    def as_dict(self) -> dict:
        return {"fixture": self.fixture, "check": self.check, "status": self.status,
                "detail": self.detail, "witness": self.witness}


class Context:
    """Per-fixture cache of derived objects shared by the checks."""

    def __init__(self, fx: Fixture):
        self.fixture = fx
        self.spec = fx.build()
        self.GR: GradedRing = self.spec.target
        self.R = self.GR.ring
        self._cache: dict[str, Any] = {}

    def get(self, key: str, compute: Callable[[], Any]) -> Any:
        if key not in self._cache:
            self._cache[key] = compute()
        return self._cache[key]

    @property
    def group_graded(self) -> bool:
        return self.GR.is_group_graded

    def el(self, x: int) -> dict:
        return {"element": int(x), "value": self.GR.fmt(int(x))}

    def gnc(self, GR: GradedRing | None = None) -> bool:
        return K.is_graded_nil_clean(GR or self.GR).holds

    def re_nil_clean(self) -> bool:
        def compute():
            if self.group_graded:
                return K.is_nil_clean(K.e_component_ring(self.GR)).holds
            return all(K.is_nil_clean(C).holds for C in K.idempotent_component_rings(self.GR))
        return self.get("re-nil-clean", compute)

    def two_nilpotent(self) -> bool:
        R = self.R
        return bool(classify_elements(R).nilpotent[R.add(R.one, R.one)])

    def candidate_ideals(self) -> list[tuple[str, SubsetIdeal]]:
        """Proper nonzero homogeneous ideals worth quotienting by, deduplicated."""
        def compute():
            R, GR = self.R, self.GR
            out: list[tuple[str, SubsetIdeal]] = []
            cands: list[tuple[str, Callable[[], SubsetIdeal]]] = [
                ("J(R)", lambda: jacobson_radical(R)),
                ("2R", lambda: ideal_generated(R, [R.add(R.one, R.one)])),
            ]
            if self.group_graded:
                cands.insert(0, ("Jg(R)", lambda: graded_jacobson_radical(GR).ideal))
            if isinstance(R, MatrixRing) and R.upper and R.n >= 2:
                cands.append(("strictly-upper", lambda: strictly_upper_ideal(R)))
            seen = set()
            for name, make in cands:
                try:
                    I = make()
                except CapExceeded:
                    continue
                key = I.mask.tobytes()
                if key in seen or I.size in (1, R.size) or not is_homogeneous_ideal(GR, I):
                    continue
                seen.add(key)
                out.append((name, I))
            return out
        return self.get("candidate-ideals", compute)

    def quotient(self, name: str, I: SubsetIdeal) -> GradedRing:
        return self.get(f"quotient:{name}", lambda: quotient_graded(self.GR, I).graded)


@dataclass(frozen=True)
class TheoremCheck:
    id: str
    anchor: str
    applies: Callable[[Context], bool]
    run: Callable[[Context], tuple[str, dict, dict | None]]


def _implication(instances: Sequence[dict]) -> tuple[str, dict, dict | None]:
    """Aggregate instances {name, hyp, concl, ...}: FAILED if any fails, holds if any
    applies, else vacuous."""
    detail = {"instances": [dict(i) for i in instances],
              "applicable": sum(1 for i in instances if i["hyp"])}
    for inst in instances:
        if inst["hyp"] and not inst["concl"]:
            return FAILED, detail, {"instance": inst.get("name")}
    return (HOLDS if detail["applicable"] else VACUOUS), detail, None


def _always(ctx: Context) -> bool:
    return True


def _group(ctx: Context) -> bool:
    return ctx.group_graded


def _sgraded(ctx: Context) -> bool:
    return not ctx.group_graded


# -- individual checks ------------------------------------------------------------------

def _flags(ctx: Context) -> dict[str, bool]:
    GR = ctx.GR
    out = {
        "graded-nil-clean": K.is_graded_nil_clean(GR).holds,
        "graded-strongly-nil-clean": K.is_graded_strongly_nil_clean(GR).holds,
        "graded-clean": K.is_graded_clean(GR).holds,
        "graded-2-nil-clean": K.is_graded_2_nil_clean(GR).holds,
        "nil-clean": K.is_nil_clean(GR.ring).holds,
        "graded-division": is_graded_division(GR),
        "re-nil-clean": ctx.re_nil_clean(),
    }
    if ctx.group_graded:
        out["graded-local"] = is_graded_local(GR)
    return out


def computed_flags(ctx: Context) -> dict[str, bool]:
    return ctx.get("flags", lambda: _flags(ctx))


def run_fixture_flags(ctx: Context):
    flags = computed_flags(ctx)
    mism = {k: {"expected": v, "computed": flags.get(k), "provenance": prov}
            for k, (v, prov) in sorted(ctx.fixture.expected.items()) if flags.get(k) != v}
    detail = {"checked": sorted(ctx.fixture.expected)}
    if mism:
        return FAILED, detail, {"mismatches": mism}
    return HOLDS, detail, None


def run_ring_axioms(ctx: Context):
    verify_ring_axioms(ctx.R)
    return HOLDS, {"size": ctx.R.size}, None


def run_jacobson_nilpotent(ctx: Context):
    J = jacobson_radical(ctx.R)
    k = ideal_power_nilpotent(J)
    if k is None:
        return FAILED, {"size": J.size}, {"radical_size": J.size}
    return HOLDS, {"size": J.size, "nilpotency": k}, None


def _structure_parts(ctx: Context) -> dict[str, Any]:
    GR, R = ctx.GR, ctx.R
    cl = classify_elements(R)
    e_mask = GR.e_mask
    nz = GR.homogeneous.copy()
    nz[R.zero] = False
    bad_idem = np.flatnonzero(nz & cl.idempotent & ~e_mask)
    bad_nil = np.flatnonzero(nz & ~e_mask & ~cl.nilpotent)
    return {"idempotents_outside_e": bad_idem, "non_nilpotent_outside_e": bad_nil}


def run_remark_structure(ctx: Context):
    if not ctx.gnc():
        return VACUOUS, {"graded_nil_clean": False}, None
    parts = _structure_parts(ctx)
    re_ok = ctx.re_nil_clean()
    detail = {"re_nil_clean": re_ok, "idempotents_outside_e": int(parts["idempotents_outside_e"].size),
              "non_nilpotent_outside_e": int(parts["non_nilpotent_outside_e"].size)}
    if not re_ok or parts["idempotents_outside_e"].size or parts["non_nilpotent_outside_e"].size:
        w = parts["idempotents_outside_e"].tolist() + parts["non_nilpotent_outside_e"].tolist()
        return FAILED, detail, ctx.el(w[0]) if w else {"re_nil_clean": re_ok}
    return HOLDS, detail, None


def run_graded_nil_strongly(ctx: Context):
    return _implication([{"name": "R", "hyp": is_graded_nil(ctx.GR),
                          "concl": K.is_graded_strongly_nil_clean(ctx.GR).holds}])


def run_remark_clean(ctx: Context):
    GR, R = ctx.GR, ctx.R
    if not K.is_graded_clean(GR).holds:
        return VACUOUS, {"graded_clean": False}, None
    cl = classify_elements(R)
    re_clean = K.is_clean(K.e_component_ring(GR)).holds
    nz = GR.homogeneous & ~GR.e_mask
    nz[R.zero] = False
    bad = np.flatnonzero(nz & ~cl.unit)
    detail = {"re_clean": re_clean, "non_units_outside_e": int(bad.size)}
    if not re_clean or bad.size:
        return FAILED, detail, ctx.el(bad[0]) if bad.size else {"re_clean": False}
    return HOLDS, detail, None


def run_division_clean(ctx: Context):
    return _implication([{"name": "R", "hyp": is_graded_division(ctx.GR),
                          "concl": K.is_graded_clean(ctx.GR).holds}])


def _quotient_instances(ctx: Context, forward: bool, strongly: bool = False, nilpotent_only: bool = False):
    pred = K.is_graded_strongly_nil_clean if strongly else K.is_graded_nil_clean
    out = []
    for name, I in ctx.candidate_ideals():
        if nilpotent_only:
            if ideal_power_nilpotent(I) is None:
                continue
        elif not is_graded_nil(ctx.GR, I):
            continue
        Q = ctx.quotient(name, I)
        r, q = pred(ctx.GR).holds, pred(Q).holds
        hyp, concl = (r, q) if forward else (q, r)
        out.append({"name": name, "ideal_size": I.size, "hyp": hyp, "concl": concl})
    return out


def run_quotient_forward(ctx: Context):
    return _implication(_quotient_instances(ctx, True))


def run_quotient_backward(ctx: Context):
    return _implication(_quotient_instances(ctx, False))


def run_lifting_cor_forward(ctx: Context):
    return _implication(_quotient_instances(ctx, True, strongly=True, nilpotent_only=True))


def run_lifting_cor_backward(ctx: Context):
    return _implication(_quotient_instances(ctx, False, strongly=True, nilpotent_only=True))


def run_jg_lemma(ctx: Context):
    J = graded_jacobson_radical(ctx.GR).ideal
    return _implication([{"name": "Jg", "hyp": ctx.gnc(), "concl": is_graded_nil(ctx.GR, J),
                          "radical_size": J.size}])


def run_jg_e_component(ctx: Context):
    rad = graded_jacobson_radical(ctx.GR)
    detail = {"radical_size": rad.ideal.size}
    return (HOLDS, detail, None) if rad.e_part_matches else (FAILED, detail, {"radical_size": rad.ideal.size})


def _jg_sides(ctx: Context) -> tuple[bool, bool]:
    GR = ctx.GR
    J = graded_jacobson_radical(GR).ideal
    nil = is_graded_nil(GR, J)
    Q = quotient_graded(GR, J).graded
    return nil, K.is_graded_nil_clean(Q).holds


def run_jg_cor_forward(ctx: Context):
    nil, qgnc = _jg_sides(ctx)
    return _implication([{"name": "Jg", "hyp": ctx.gnc(), "concl": nil and qgnc,
                          "jg_graded_nil": nil, "quotient_graded_nil_clean": qgnc}])


def run_jg_cor_backward(ctx: Context):
    nil, qgnc = _jg_sides(ctx)
    return _implication([{"name": "Jg", "hyp": nil and qgnc, "concl": ctx.gnc(),
                          "jg_graded_nil": nil, "quotient_graded_nil_clean": qgnc}])


def run_jg_semisimple(ctx: Context):
    GR = ctx.GR
    J = graded_jacobson_radical(GR).ideal
    Q = quotient_graded(GR, J).graded
    JQ = graded_jacobson_radical(Q).ideal
    detail = {"radical_size": J.size, "quotient_radical_size": JQ.size}
    return (HOLDS, detail, None) if JQ.size == 1 else (FAILED, detail, {"quotient_radical_size": JQ.size})


def run_jg_division(ctx: Context):
    J = graded_jacobson_radical(ctx.GR).ideal
    return _implication([{"name": "R", "hyp": is_graded_division(ctx.GR), "concl": J.size == 1,
                          "radical_size": J.size}])


def run_jg_trivial(ctx: Context):
    GR = ctx.GR
    trivial = bool(GR.masks[GR.neutral].all())
    if not trivial:
        return VACUOUS, {"trivial_grading": False}, None
    same = graded_jacobson_radical(GR).ideal.same_as(jacobson_radical(ctx.R))
    return (HOLDS, {"trivial_grading": True}, None) if same else (FAILED, {}, {"reason": "Jg differs from J"})


def _gspr_table(ctx: Context):
    def compute():
        rows = []
        for a in np.flatnonzero(ctx.GR.homogeneous):
            decs, unique = K.gspr_decompositions(ctx.GR, int(a))
            rows.append((int(a), decs, unique))
        return rows
    return ctx.get("gspr", compute)


def run_gspr_uniqueness(ctx: Context):
    rows = _gspr_table(ctx)
    bad = [a for a, _, u in rows if not u]
    detail = {"homogeneous": len(rows), "with_decomposition": sum(1 for _, d, _ in rows if d)}
    if bad:
        return FAILED, detail, ctx.el(bad[0])
    return HOLDS, detail, None


def run_gspr_criterion(ctx: Context):
    GR = ctx.GR
    rows = _gspr_table(ctx)
    domain = outside = outside_snc = 0
    for a, decs, _ in rows:
        snc = bool(K.graded_strongly_nil_clean_element(GR, a))
        if not decs:
            outside += 1
            outside_snc += snc
            continue
        domain += 1
        crit = K.check_nilpotency_criterion(GR, a)
        if crit != snc:
            return FAILED, {"domain": domain}, {**ctx.el(a), "criterion": crit, "strongly_nil_clean": snc}
    detail = {"domain": domain, "outside_domain": outside,
              "outside_domain_strongly_nil_clean": outside_snc}
    return (HOLDS if domain else VACUOUS), detail, None


def run_lifting_theorem(ctx: Context):
    GR = ctx.GR
    insts = []
    for name, I in ctx.candidate_ideals():
        if ideal_power_nilpotent(I) is None:
            continue
        Q = ctx.quotient(name, I)
        proj = quotient_graded(GR, I).projection
        checked = 0
        for a in np.flatnonzero(GR.homogeneous):
            a = int(a)
            if not K.graded_strongly_nil_clean_element(Q, int(proj[a])):
                continue
            checked += 1
            if not K.graded_strongly_nil_clean_element(GR, a):
                insts.append({"name": name, "hyp": True, "concl": False, **ctx.el(a)})
                break
        else:
            insts.append({"name": name, "hyp": checked > 0, "concl": True, "lifted_elements": checked})
    return _implication(insts)


def run_lifting_idempotents(ctx: Context):
    GR = ctx.GR
    insts = []
    for name, I in ctx.candidate_ideals():
        if not is_graded_nil(GR, I):
            continue
        Q = ctx.quotient(name, I)
        cl = classify_elements(Q.ring)
        classes = np.flatnonzero(cl.idempotent & Q.e_mask)
        agree = 0
        for c in classes:
            rep = K.lift_report(GR, I, int(c))
            if not rep.agree:
                insts.append({"name": name, "hyp": True, "concl": False, "class": int(c),
                              "fast": rep.fast, "lifts": list(rep.lifts)})
                break
            agree += 1
        else:
            insts.append({"name": name, "hyp": bool(classes.size), "concl": True, "classes": agree})
    return _implication(insts)


def run_han_nicholson(ctx: Context):
    GR, R = ctx.GR, ctx.R
    zd_free = homogeneous_zero_divisor_free(GR)
    insts, conflicts = [], 0
    for f in K.homogeneous_idempotents(GR):
        f = int(f)
        fb = int(R.sub(R.one, f))
        both = K.is_graded_clean(corner_ring(GR, f)).holds and K.is_graded_clean(corner_ring(GR, fb)).holds
        if f not in (R.zero, R.one):
            # f(1-f) = 0 with both factors nonzero and homogeneous: the hypotheses cannot meet
            conflicts += 1
        insts.append({"name": GR.fmt(f), "hyp": both and zd_free, "concl": K.is_graded_clean(GR).holds})
    status, detail, w = _implication(insts)
    detail["hypothesis_conflicts"] = conflicts
    detail["zero_divisor_free"] = zd_free
    return status, detail, w


def _sigmas(G: FiniteGroup, n: int) -> list[tuple[int, ...]]:
    e = G.identity
    return [(e,) + rest for rest in itertools.product(range(G.order), repeat=n - 1)]


def _triangular_instances(ctx: Context, strongly: bool, forward: bool) -> list[dict]:
    GR, R = ctx.GR, ctx.R
    pred = K.is_graded_strongly_nil_clean if strongly else K.is_graded_nil_clean
    base = pred(GR).holds
    out = []
    for n in (2, 3):
        if R.size ** (n * (n + 1) // 2) > 4096:
            continue
        for sigma in _sigmas(GR.group, n):
            key = f"tri:{n}:{sigma}"
            TD = ctx.get(key, lambda: triangular_structure(GR, n, sigma))
            t = pred(TD.graded).holds
            name = f"T{n}({','.join(GR.group.names[s] for s in sigma)})"
            hyp, concl = (base, t) if forward else (t, base)
            out.append({"name": name, "hyp": hyp, "concl": concl, "ideal_nilpotency": TD.nilpotency})
    return out


def _tri_check(strongly: bool, forward: bool):
    def run(ctx: Context):
        return _implication(_triangular_instances(ctx, strongly, forward))
    return run


def run_two_nilpotency(ctx: Context):
    return _implication([{"name": "R", "hyp": ctx.gnc(), "concl": ctx.two_nilpotent()}])


def run_two_nilpotency_contra(ctx: Context):
    return _implication([{"name": "R", "hyp": not ctx.two_nilpotent(), "concl": not ctx.gnc()}])


def _two_subgroups(G: FiniteGroup) -> list[tuple[int, ...]]:
    return [H for H in G.normal_subgroups() if len(H) > 1 and len(H) & (len(H) - 1) == 0]


def _group_ring_instances(ctx: Context) -> list[tuple[str, GradedRing]]:
    """(label, graded R[H]) pairs: the fixture itself when it is a subgroup ring,
    otherwise R[H] for each normal 2-subgroup H while |R|^|H| stays small."""
    def compute():
        GR, R = ctx.GR, ctx.R
        if isinstance(R, GroupRing):
            return [("fixture", GR)]
        out = []
        for H in _two_subgroups(GR.group):
            if R.size ** len(H) > 256:
                continue
            out.append((",".join(GR.group.names[h] for h in H), graded_subgroup_ring(GR, H)))
        return out
    return ctx.get("group-rings", compute)


def run_group_ring_theorem(ctx: Context):
    insts = []
    for label, GRH in _group_ring_instances(ctx):
        RH: GroupRing = GRH.ring
        H = RH.H
        if len(H) & (len(H) - 1):
            continue
        aug = augmentation(GRH)
        base_gnc = K.is_graded_nil_clean(aug.target).holds
        if not aug.hom.ok or not aug.delta_homogeneous:
            insts.append({"name": label, "hyp": True, "concl": False, "augmentation_ok": aug.hom.ok,
                          "delta_homogeneous": aug.delta_homogeneous})
            continue
        if aug.connell_applies and aug.delta_nilpotency is None:
            insts.append({"name": label, "hyp": True, "concl": False, "delta_nilpotent": False})
            continue
        insts.append({"name": label, "hyp": base_gnc, "concl": K.is_graded_nil_clean(aug.source).holds,
                      "delta_size": aug.delta.size, "delta_nilpotency": aug.delta_nilpotency})
    return _implication(insts)


def _full_group_ring(ctx: Context) -> tuple[GradedRing, GradedRing] | None:
    def compute():
        GR, R = ctx.GR, ctx.R
        if isinstance(R, GroupRing):
            base = R.graded_base
            if len(R.H) != base.group.order:
                return None
            return base, GR
        if R.size ** GR.group.order > 256:
            return None
        return GR, graded_subgroup_ring(GR, range(GR.group.order))
    return ctx.get("full-group-ring", compute)


def _applies_full_group_ring(ctx: Context) -> bool:
    return ctx.group_graded and _full_group_ring(ctx) is not None


def run_rg_isomorphism(ctx: Context):
    base, GRG = _full_group_ring(ctx)
    _, rep = e_component_isomorphism(base, GRG)
    detail = {"source_size": base.ring.size, "group_ring_size": GRG.ring.size}
    return (HOLDS, detail, None) if rep.ok else (FAILED, detail, {"violation": rep.violation, **rep.witness})


def run_rg_theorem(ctx: Context):
    base, GRG = _full_group_ring(ctx)
    cl = classify_elements(base.ring)
    only_hom = bool(base.homogeneous[cl.idempotent | cl.nilpotent].all())
    rg = K.is_graded_nil_clean(GRG).holds
    return _implication([{"name": "R[G]", "hyp": only_hom and rg, "concl": K.is_graded_nil_clean(base).holds,
                          "only_homogeneous_idempotents_and_nilpotents": only_hom,
                          "group_ring_graded_nil_clean": rg}])


def _witness_not_gnc(ctx: Context) -> dict | None:
    v = K.is_graded_nil_clean(ctx.GR)
    if v.holds:
        return None
    x = v.witness
    return {**ctx.el(x), "nilpotent": bool(classify_elements(ctx.R).nilpotent[x]),
            "square": ctx.GR.fmt(ctx.R.mul(x, x))}


def run_implication_1(ctx: Context):
    hyp = ctx.re_nil_clean()
    concl = ctx.gnc()
    designated = ctx.fixture.counterexample
    detail = {"re_nil_clean": hyp, "graded_nil_clean": concl, "designated_counterexample": designated}
    if hyp and not concl:
        w = _witness_not_gnc(ctx)
        if designated:
            detail["note"] = "implication refuted on a designated counterexample"
            return EXPECTED, detail, w
        return FAILED, detail, w
    if designated:
        return FAILED, detail, {"reason": "designated counterexample does not refute the implication"}
    return (HOLDS if hyp else VACUOUS), detail, None


def run_graded_local_theorem(ctx: Context):
    GR, R = ctx.GR, ctx.R
    G = GR.group
    order_unit = bool(classify_elements(R).unit[R.times(G.order, R.one)])
    local = is_graded_local(GR)
    vanish = True
    for g in range(G.order):
        if g == G.identity:
            continue
        A, B = GR.component(g), GR.component(int(G.inv[g]))
        if (np.asarray(R.mul(A[:, None], B[None, :])) != R.zero).any():
            vanish = False
            break
    re_nc = ctx.re_nil_clean()
    status, detail, w = _implication([{"name": "R", "hyp": order_unit and local and vanish and re_nc,
                                       "concl": ctx.gnc(), "order_is_unit": order_unit, "graded_local": local,
                                       "opposite_products_vanish": vanish, "re_nil_clean": re_nc}])
    detail["assumption"] = "PI holds for every finite ring"
    return status, detail, w


def run_pi_jacobson(ctx: Context):
    R = ctx.R
    radical = jacobson_radical(R).size == R.size
    status, detail, w = _implication([{"name": "R", "hyp": radical and ctx.re_nil_clean(), "concl": ctx.gnc(),
                                       "jacobson_radical_ring": radical}])
    detail["note"] = "a unital ring equal to its radical is the zero ring; PI holds for finite rings"
    return status, detail, w


def run_s_reinterpretation(ctx: Context):
    SG = as_s_grading(ctx.GR)
    canc = is_cancellative(SG.group)
    detail = {"cancellative": canc, "components": SG.group.order}
    return (HOLDS, detail, None) if canc else (FAILED, detail, {"reason": "group not cancellative"})


def _s_quotient_instances(ctx: Context, forward: bool):
    if not is_cancellative(ctx.GR.group):
        return []
    return _quotient_instances(ctx, forward)


def run_s_quotient_forward(ctx: Context):
    status, detail, w = _implication(_s_quotient_instances(ctx, True))
    detail["cancellative"] = is_cancellative(ctx.GR.group)
    return status, detail, w


def run_s_quotient_backward(ctx: Context):
    status, detail, w = _implication(_s_quotient_instances(ctx, False))
    detail["cancellative"] = is_cancellative(ctx.GR.group)
    return status, detail, w


def run_abab(ctx: Context):
    reports = {name: K.check_abab_conditions(P, ctx.GR) for name, P in sorted(K.BUILTIN_PROPERTIES.items())}
    detail = {name: {"ok": r.ok, "counts": r.counts} for name, r in reports.items()}
    detail["note"] = "per-instance evidence only"
    for name, r in reports.items():
        if not r.ok:
            return FAILED, detail, {"property": name, "violations": r.violations}
    return HOLDS, detail, None


def run_product_closure(ctx: Context):
    factors = [v for k, v in ctx.spec.graded.items() if k != ctx.spec.target_name]
    both = all(K.is_graded_nil_clean(F).holds for F in factors)
    return _implication([{"name": "x".join(F.label for F in factors), "hyp": both, "concl": ctx.gnc()}])


def run_coarsen_full(ctx: Context):
    GR = ctx.GR
    C = coarsen(GR, range(GR.group.order)).graded
    ok = bool(C.masks[C.neutral].all())
    return (HOLDS, {}, None) if ok else (FAILED, {}, {"reason": "full coarsening is not trivial"})


def _small(limit: int) -> Callable[[Context], bool]:
    return lambda ctx: ctx.R.size <= limit


def _both(*preds) -> Callable[[Context], bool]:
    return lambda ctx: all(p(ctx) for p in preds)


REGISTRY: tuple[TheoremCheck, ...] = (
    TheoremCheck("fixture-flags", "catalog expectations", _always, run_fixture_flags),
    TheoremCheck("ring-axioms", "unital associative ring", _always, run_ring_axioms),
    TheoremCheck("jacobson-nilpotent", "J(R) nilpotent in finite rings", _always, run_jacobson_nilpotent),
    TheoremCheck("remark-nil-clean-structure", "structure of graded nil clean rings", _always,
                 run_remark_structure),
    TheoremCheck("remark-graded-nil-strongly", "graded-nil implies graded strongly nil clean", _always,
                 run_graded_nil_strongly),
    TheoremCheck("remark-clean-structure", "structure of graded clean rings", _group, run_remark_clean),
    TheoremCheck("remark-division-clean", "graded division implies graded clean", _always, run_division_clean),
    TheoremCheck("quotient-lemma-forward", "quotient lemma, R to R/I", _group, run_quotient_forward),
    TheoremCheck("quotient-lemma-backward", "quotient lemma, R/I to R", _group, run_quotient_backward),
    TheoremCheck("jg-lemma", "graded radical is graded-nil", _group, run_jg_lemma),
    TheoremCheck("jg-e-component", "J(R_e) = Jg(R) meet R_e", _group, run_jg_e_component),
    TheoremCheck("jg-corollary-forward", "radical corollary, forward", _group, run_jg_cor_forward),
    TheoremCheck("jg-corollary-backward", "radical corollary, backward", _group, run_jg_cor_backward),
    TheoremCheck("jg-quotient-semisimple", "R/Jg(R) has zero graded radical", _group, run_jg_semisimple),
    TheoremCheck("jg-graded-division", "graded division rings have zero graded radical", _group,
                 run_jg_division),
    TheoremCheck("jg-trivial-grading", "Jg = J for trivial gradings", _group, run_jg_trivial),
    TheoremCheck("gspr-uniqueness", "uniqueness of gspr decompositions", _group, run_gspr_uniqueness),
    TheoremCheck("gspr-criterion", "2f-1+u criterion", _group, run_gspr_criterion),
    TheoremCheck("lifting-theorem", "lifting modulo a homogeneous nilpotent ideal", _group, run_lifting_theorem),
    TheoremCheck("lifting-idempotents", "fast and exhaustive idempotent lifting agree", _group,
                 run_lifting_idempotents),
    TheoremCheck("lifting-corollary-forward", "strong quotient corollary, forward", _group,
                 run_lifting_cor_forward),
    TheoremCheck("lifting-corollary-backward", "strong quotient corollary, backward", _group,
                 run_lifting_cor_backward),
    TheoremCheck("han-nicholson", "graded clean from corner rings", _both(_group, _small(256)),
                 run_han_nicholson),
    TheoremCheck("triangular-theorem-forward", "triangular theorem, R to T_n(R)", _group,
                 _tri_check(False, True)),
    TheoremCheck("triangular-theorem-backward", "triangular theorem, T_n(R) to R", _group,
                 _tri_check(False, False)),
    TheoremCheck("triangular-theorem-strong-forward", "triangular theorem (strongly), forward", _group,
                 _tri_check(True, True)),
    TheoremCheck("triangular-theorem-strong-backward", "triangular theorem (strongly), backward", _group,
                 _tri_check(True, False)),
    TheoremCheck("two-nilpotency", "graded nil clean forces 2 nilpotent", _always, run_two_nilpotency),
    TheoremCheck("two-nilpotency-contrapositive", "2 not nilpotent rules out graded nil clean", _always,
                 run_two_nilpotency_contra),
    TheoremCheck("group-ring-theorem", "R[H] graded nil clean over G/H, H a finite 2-group", _group,
                 run_group_ring_theorem),
    TheoremCheck("rg-isomorphism", "R isomorphic to the e-component of R[G]", _applies_full_group_ring,
                 run_rg_isomorphism),
    TheoremCheck("rg-theorem", "R[G] graded nil clean gives R graded nil clean", _applies_full_group_ring,
                 run_rg_theorem),
    TheoremCheck("implication-1", "R_e nil clean implies graded nil clean (refutable)", _always,
                 run_implication_1),
    TheoremCheck("graded-local-theorem", "graded local sufficient condition", _group, run_graded_local_theorem),
    TheoremCheck("pi-jacobson-theorem", "Jacobson radical sufficient condition", _group, run_pi_jacobson),
    TheoremCheck("s-reinterpretation", "group gradings are S-gradings", _group, run_s_reinterpretation),
    TheoremCheck("s-quotient-lemma-forward", "cancellative S quotient lemma, forward", _sgraded,
                 run_s_quotient_forward),
    TheoremCheck("s-quotient-lemma-backward", "cancellative S quotient lemma, backward", _sgraded,
                 run_s_quotient_backward),
    TheoremCheck("abab-conditions", "built-in properties satisfy the ABAB conditions",
                 _both(_group, _small(256)), run_abab),
    TheoremCheck("product-closure", "finite products of graded nil clean rings",
                 lambda ctx: "product" in ctx.fixture.tags, run_product_closure),
    TheoremCheck("coarsening-full", "coarsening by G is trivial", _group, run_coarsen_full),
)

CHECK_IDS = tuple(c.id for c in REGISTRY)


def resolve_checks(ids: Iterable[str] | str | None) -> list[TheoremCheck]:
    if ids is None or ids == "all" or (not isinstance(ids, str) and list(ids) == ["all"]):
        return list(REGISTRY)
    if isinstance(ids, str):
        ids = [s for s in ids.split(",") if s]
    by_id = {c.id: c for c in REGISTRY}
    unknown = [i for i in ids if i not in by_id]
    if unknown:
        raise KeyError(f"unknown check ids: {', '.join(unknown)}")
    wanted = set(ids)
    return [c for c in REGISTRY if c.id in wanted]


def _run_fixture(fx: Fixture, checks: Sequence[TheoremCheck]) -> list[CheckResult]:
    ctx = Context(fx)
    out = []
    for chk in checks:
        if not chk.applies(ctx):
            continue
        try:
            status, detail, witness = chk.run(ctx)
        except CapExceeded as exc:
            status, detail, witness = SKIPPED, {"reason": str(exc)}, None
        except AlgebraError as exc:
            status, detail, witness = FAILED, {"error": type(exc).__name__, "message": str(exc)}, \
                _jsonable(exc.witness)
        out.append(CheckResult(fx.name, chk.id, status, _jsonable(detail), _jsonable(witness)))
    return out


def run_checks(fixtures: Sequence[Fixture], check_ids: Iterable[str] | str | None = None,
               jobs: int = 1) -> list[CheckResult]:
    """One result per applicable (fixture, check), in catalog then registry order."""
    checks = resolve_checks(check_ids)
    if jobs > 1:
        # worker threads do not inherit context variables, so each task carries the caller's caps
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(contextvars.copy_context().run, _run_fixture, fx, checks) for fx in fixtures]
            per = [f.result() for f in futures]
    else:
        per = [_run_fixture(fx, checks) for fx in fixtures]
    return [r for rs in per for r in rs]


def summarize(results: Sequence[CheckResult]) -> dict[str, int]:
    counts = {s: 0 for s in STATUSES}
    for r in results:
        counts[r.status] += 1
    counts["total"] = len(results)
    counts["fixtures"] = len({r.fixture for r in results})
    return counts


def reverify(result: CheckResult, fx: Fixture) -> bool:
    """Re-run the violated predicate on a failure witness alone."""
    if result.check == "implication-1" and result.status in (EXPECTED, FAILED) and result.witness \
            and "element" in result.witness:
        GR = fx.build().target
        x = int(result.witness["element"])
        homogeneous = bool(GR.homogeneous[x])
        return homogeneous and not K.graded_nil_clean_element(GR, x)
    if result.check == "fixture-flags" and result.status == FAILED:
        flags = computed_flags(Context(fx))
        return all(flags.get(k) == v["computed"] for k, v in result.witness["mismatches"].items())
    if result.witness and "element" in result.witness:
        return True
    return False


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return obj
