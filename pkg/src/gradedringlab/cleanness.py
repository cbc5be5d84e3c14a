"""Clean, nil clean and strongly nil clean predicates, graded and plain.

Element-level functions return decomposition lists ordered by idempotent
index then by the second summand.  Ring-level verdicts quantify over every
homogeneous element (every element for the 2-nil-clean variant) and carry
the least failing element as witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from .errors import NoDecomposition, NotHomogeneous, NotIdempotentModI
from .grading import Degree, GradedRing, degree, is_graded_nil, quotient_graded
from .rings import FiniteRing, SubRing
from .structure import SubsetIdeal, classify_elements


@dataclass(frozen=True)
class NilCleanDecomposition:
    f: int
    b: int
    commuting: bool
    degree_f: Any = None
    degree_b: Any = None


@dataclass(frozen=True)
class CleanDecomposition:
    f: int
    u: int


@dataclass(frozen=True)
class PiRegularDecomposition:
    f: int
    u: int


@dataclass(frozen=True)
class Verdict:
    """Outcome of a ring-level predicate; ``witness`` is the least failing element."""

    holds: bool
    witness: int | None = None
    checked: int = 0

    def __bool__(self) -> bool:
        return self.holds


def _check_homogeneous(GR: GradedRing, x: int) -> None:
    if not GR.homogeneous[x]:
        raise NotHomogeneous("element is not homogeneous", {"element": int(x), "value": GR.fmt(x)})


def _commutes(R: FiniteRing, a, b) -> np.ndarray:
    return np.asarray(R.mul(a, b)) == np.asarray(R.mul(b, a))


# -- plain rings ----------------------------------------------------------------------

def nil_clean_decompositions(R: FiniteRing, x: int) -> list[NilCleanDecomposition]:
    cl = classify_elements(R)
    F = np.flatnonzero(cl.idempotent)
    B = np.asarray(R.sub(x, F))
    keep = cl.nilpotent[B]
    comm = _commutes(R, F, B)
    return [NilCleanDecomposition(int(f), int(b), bool(c))
            for f, b, c, k in zip(F, B, comm, keep) if k]


def strongly_nil_clean_decompositions(R: FiniteRing, x: int) -> list[NilCleanDecomposition]:
    return [d for d in nil_clean_decompositions(R, x) if d.commuting]


def _pair_verdict(R: FiniteRing, xs: np.ndarray, F: np.ndarray, target: np.ndarray,
                  commuting: bool = False) -> Verdict:
    """Does every x in xs have some f in F with x - f in target (and xf = fx if asked)?"""
    xs = np.asarray(xs, dtype=np.int64)
    if xs.size == 0:
        return Verdict(True, None, 0)
    if F.size == 0:
        return Verdict(False, int(xs[0]), int(xs.size))
    ok = np.zeros(xs.size, dtype=bool)
    step = max(1, (1 << 20) // max(1, F.size))
    for lo in range(0, xs.size, step):
        X = xs[lo:lo + step, None]
        D = np.asarray(R.sub(X, F[None, :]))
        hit = target[D]
        if commuting:
            hit &= _commutes(R, X, F[None, :])
        ok[lo:lo + step] = hit.any(axis=1)
    bad = np.flatnonzero(~ok)
    return Verdict(not bad.size, int(xs[bad[0]]) if bad.size else None, int(xs.size))


def is_nil_clean(R: FiniteRing) -> Verdict:
    cl = classify_elements(R)
    return _pair_verdict(R, R.elements(), np.flatnonzero(cl.idempotent), cl.nilpotent)


def is_strongly_nil_clean(R: FiniteRing) -> Verdict:
    cl = classify_elements(R)
    return _pair_verdict(R, R.elements(), np.flatnonzero(cl.idempotent), cl.nilpotent, True)


def is_clean(R: FiniteRing) -> Verdict:
    cl = classify_elements(R)
    return _pair_verdict(R, R.elements(), np.flatnonzero(cl.idempotent), cl.unit)


# -- graded elements --------------------------------------------------------------------

def homogeneous_idempotents(GR: GradedRing) -> np.ndarray:
    return np.flatnonzero(GR.homogeneous & classify_elements(GR.ring).idempotent)


def _hom_nilpotent(GR: GradedRing) -> np.ndarray:
    return GR.homogeneous & classify_elements(GR.ring).nilpotent


def _hom_unit(GR: GradedRing) -> np.ndarray:
    return GR.homogeneous & classify_elements(GR.ring).unit


def _deg(GR: GradedRing, x: int):
    d = degree(GR, x)
    return d.value if isinstance(d, Degree) else GR.group.names[d]


def graded_nil_clean_element(GR: GradedRing, x: int) -> list[NilCleanDecomposition]:
    _check_homogeneous(GR, x)
    R = GR.ring
    F = homogeneous_idempotents(GR)
    B = np.asarray(R.sub(x, F))
    keep = _hom_nilpotent(GR)[B]
    comm = _commutes(R, F, B)
    return [NilCleanDecomposition(int(f), int(b), bool(c), _deg(GR, f), _deg(GR, b))
            for f, b, c, k in zip(F, B, comm, keep) if k]


def graded_strongly_nil_clean_element(GR: GradedRing, x: int) -> list[NilCleanDecomposition]:
    return [d for d in graded_nil_clean_element(GR, x) if d.commuting]


def graded_clean_element(GR: GradedRing, x: int) -> list[CleanDecomposition]:
    _check_homogeneous(GR, x)
    F = homogeneous_idempotents(GR)
    U = np.asarray(GR.ring.sub(x, F))
    keep = _hom_unit(GR)[U]
    return [CleanDecomposition(int(f), int(u)) for f, u, k in zip(F, U, keep) if k]


# -- graded rings ---------------------------------------------------------------------------

def is_graded_nil_clean(GR: GradedRing) -> Verdict:
    return GR.memo("graded-nil-clean", lambda: _pair_verdict(
        GR.ring, np.flatnonzero(GR.homogeneous), homogeneous_idempotents(GR), _hom_nilpotent(GR)))


def is_graded_strongly_nil_clean(GR: GradedRing) -> Verdict:
    return GR.memo("graded-strongly-nil-clean", lambda: _pair_verdict(
        GR.ring, np.flatnonzero(GR.homogeneous), homogeneous_idempotents(GR), _hom_nilpotent(GR), True))


def is_graded_clean(GR: GradedRing) -> Verdict:
    return GR.memo("graded-clean", lambda: _pair_verdict(
        GR.ring, np.flatnonzero(GR.homogeneous), homogeneous_idempotents(GR), _hom_unit(GR)))


def is_graded_2_nil_clean(GR: GradedRing) -> Verdict:
    """Every element (homogeneous or not) is f + b1 + b2 with f idempotent, b1, b2 nilpotent,
    all three homogeneous."""
    def compute():
        R = GR.ring
        N = np.flatnonzero(_hom_nilpotent(GR))
        two = np.zeros(R.size, dtype=bool)
        for b in N:
            two[np.asarray(R.add(b, N))] = True
        return _pair_verdict(R, R.elements(), homogeneous_idempotents(GR), two)
    return GR.memo("graded-2-nil-clean", compute)


def e_component_ring(GR: GradedRing) -> SubRing:
    """R_e as a ring in its own right (group gradings only)."""
    return GR.memo("e-ring", lambda: SubRing(GR.ring, GR.masks[GR.neutral], GR.ring.one,
                                              f"({GR.label})_e"))


def idempotent_component_rings(GR: GradedRing) -> list[SubRing]:
    """Component rings R_s for the idempotents s of the grading set.

    For partial groupoid gradings each such component carries its own identity,
    found as the unique idempotent acting as identity on that component.
    """
    R = GR.ring
    out = []
    for s in GR.idempotent_degrees:
        members = GR.component(s)
        ident = None
        for f in members:
            if (np.asarray(R.mul(f, members)) == members).all() and \
                    (np.asarray(R.mul(members, f)) == members).all():
                ident = int(f)
                break
        if ident is None:
            continue
        out.append(SubRing(R, GR.masks[s], ident, f"({GR.label})_{GR.group.names[s]}"))
    return out


# -- graded strongly pi-regular ---------------------------------------------------------------

def gspr_decompositions(GR: GradedRing, a: int) -> tuple[list[PiRegularDecomposition], bool]:
    """All a = f + u with f a homogeneous idempotent, u a homogeneous unit, fa = af and
    faf nilpotent; second value is the uniqueness flag."""
    _check_homogeneous(GR, a)
    R = GR.ring
    cl = classify_elements(R)
    F = homogeneous_idempotents(GR)
    U = np.asarray(R.sub(a, F))
    keep = _hom_unit(GR)[U] & _commutes(R, F, a)
    faf = np.asarray(R.mul(R.mul(F, a), F))
    keep &= cl.nilpotent[faf]
    out = [PiRegularDecomposition(int(f), int(u)) for f, u, k in zip(F, U, keep) if k]
    return out, len(out) <= 1


def check_nilpotency_criterion(GR: GradedRing, a: int) -> bool:
    """For the gspr decomposition a = f + u: is 2f - 1 + u nilpotent with u in R_e?"""
    decs, _ = gspr_decompositions(GR, a)
    if not decs:
        raise NoDecomposition("element has no graded strongly pi-regular decomposition",
                              {"element": int(a), "value": GR.fmt(a)})
    R = GR.ring
    f, u = decs[0].f, decs[0].u
    t = R.add(R.sub(R.add(f, f), R.one), u)
    return bool(classify_elements(R).nilpotent[t]) and bool(GR.e_mask[u])


# -- idempotent lifting ---------------------------------------------------------------------

@dataclass(frozen=True)
class LiftResult:
    fast: int
    lifts: tuple[int, ...]      # every idempotent of R_e over the given class, ascending
    agree: bool


def _lift_setup(GR: GradedRing, I: SubsetIdeal | np.ndarray, abar: int):
    mask = I.mask if isinstance(I, SubsetIdeal) else np.asarray(I, dtype=bool)
    if not is_graded_nil(GR, mask):
        raise NotIdempotentModI("ideal is not graded-nil")
    Q = quotient_graded(GR, mask)
    QR = Q.graded.ring
    if QR.mul(abar, abar) != abar or not Q.graded.e_mask[abar]:
        raise NotIdempotentModI("class is not an idempotent of the identity component",
                                {"class": int(abar), "value": QR.format(abar)})
    pre = np.flatnonzero((Q.projection == abar) & GR.e_mask)
    return Q, pre


def lift_idempotent(GR: GradedRing, I: SubsetIdeal | np.ndarray, abar: int,
                    method: str = "fast") -> int:
    """An idempotent of R_e mapping to the idempotent class ``abar`` of (R/I)_e.

    ``fast`` iterates t -> 3t^2 - 2t^3 from the least preimage in R_e;
    ``exhaustive`` returns the least idempotent preimage.
    """
    Q, pre = _lift_setup(GR, I, abar)
    R = GR.ring
    if method == "exhaustive":
        idem = classify_elements(R).idempotent[pre]
        if not idem.any():
            raise NotIdempotentModI("no idempotent lift exists", {"class": int(abar)})
        return int(pre[idem][0])
    t = int(pre[0])
    for _ in range(R.size.bit_length() + 2):
        t2 = R.mul(t, t)
        if t2 == t:
            return t
        t3 = R.mul(t2, t)
        t = R.sub(R.times(3, t2), R.times(2, t3))
    if R.mul(t, t) != t:
        raise NotIdempotentModI("lifting iteration did not converge", {"class": int(abar)})
    return t


def lift_report(GR: GradedRing, I: SubsetIdeal | np.ndarray, abar: int) -> LiftResult:
    """Run both lifting paths; agreement means the fast result is one of the exhaustive lifts."""
    Q, pre = _lift_setup(GR, I, abar)
    idem = classify_elements(GR.ring).idempotent[pre]
    lifts = tuple(int(x) for x in pre[idem])
    fast = lift_idempotent(GR, I, abar, "fast")
    return LiftResult(fast, lifts, fast in lifts)


# -- ABAB-compatible properties ---------------------------------------------------------------

@dataclass(frozen=True)
class GradedProperty:
    name: str
    predicate: Callable[[GradedRing, int], bool] = field(compare=False)


def _p_hom_nilpotent(GR: GradedRing, x: int) -> bool:
    return bool(_hom_nilpotent(GR)[x])


def _p_hom_unit(GR: GradedRing, x: int) -> bool:
    return bool(_hom_unit(GR)[x])


HOMOGENEOUS_NILPOTENT = GradedProperty("homogeneous-nilpotent", _p_hom_nilpotent)
HOMOGENEOUS_UNIT = GradedProperty("homogeneous-unit", _p_hom_unit)
BUILTIN_PROPERTIES = {p.name: p for p in (HOMOGENEOUS_NILPOTENT, HOMOGENEOUS_UNIT)}


@dataclass
class AbabReport:
    """Per-instance evidence only: passing does not certify the property in general."""

    property: str
    ok: bool
    violations: dict[str, dict | None]
    counts: dict[str, int]

    def as_dict(self) -> dict:
        return {"property": self.property, "ok": self.ok, "violations": self.violations,
                "counts": self.counts}


def check_abab_conditions(P: GradedProperty, GR: GradedRing) -> AbabReport:
    from .constructions import corner_ring

    R = GR.ring
    hom = np.flatnonzero(GR.homogeneous)
    has = {int(a): P.predicate(GR, int(a)) for a in hom}
    F = [int(f) for f in homogeneous_idempotents(GR)]
    corners = {f: corner_ring(GR, f) for f in F}
    viol: dict[str, dict | None] = {"i": None, "ii": None, "iii": None}
    counts = {"i": 0, "ii": 0, "iii": 0}

    def in_corner(f: int, y: int) -> bool:
        C = corners[f]
        return P.predicate(C, int(C.ring.local[y]))

    for a in hom:
        a = int(a)
        if has[a]:
            counts["i"] += 1
            na = int(R.neg(a))
            if viol["i"] is None and not P.predicate(GR, na):
                viol["i"] = {"a": a, "value": GR.fmt(a), "neg": GR.fmt(na)}
    for a in hom:
        a = int(a)
        for f in F:
            if R.mul(a, f) != R.mul(f, a):
                continue
            fb = int(R.sub(R.one, f))
            faf = int(R.mul(R.mul(f, a), f))
            if has[a]:
                counts["ii"] += 1
                if viol["ii"] is None and not in_corner(f, faf):
                    viol["ii"] = {"a": a, "f": f, "value": GR.fmt(a), "idempotent": GR.fmt(f)}
            fbafb = int(R.mul(R.mul(fb, a), fb))
            if in_corner(f, faf) and in_corner(fb, fbafb):
                counts["iii"] += 1
                if viol["iii"] is None and not has[a]:
                    viol["iii"] = {"a": a, "f": f, "value": GR.fmt(a), "idempotent": GR.fmt(f)}
    return AbabReport(P.name, all(v is None for v in viol.values()), viol, counts)
