"""Element classification, ideals, the Jacobson radical and homomorphism checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

import numpy as np

from .errors import RingAxiomFailure
from .limits import get_limits
from .rings import FiniteRing


@dataclass(frozen=True, eq=False)
class Classification:
    idempotent: np.ndarray
    nilpotent: np.ndarray
    nil_index: np.ndarray   # 0 where not nilpotent
    unit: np.ndarray
    inverse: np.ndarray     # -1 where not a unit
    zero_divisor: np.ndarray

    def idempotents(self) -> list[int]:
        return np.flatnonzero(self.idempotent).tolist()

    def nilpotents(self) -> list[int]:
        return np.flatnonzero(self.nilpotent).tolist()

    def units(self) -> list[int]:
        return np.flatnonzero(self.unit).tolist()

    def zero_divisors(self) -> list[int]:
        return np.flatnonzero(self.zero_divisor).tolist()


def _freeze(*arrays):
    for a in arrays:
        a.setflags(write=False)


def _nilpotency(R: FiniteRing) -> tuple[np.ndarray, np.ndarray]:
    xs = R.elements()
    # x is nilpotent iff x^(2^m) = 0 once 2^m >= |R|: nilpotency index never exceeds |R|.
    p = xs.copy()
    for _ in range(max(1, int(R.size - 1).bit_length())):
        p = np.asarray(R.mul(p, p))
    nil = p == R.zero
    index = np.zeros(R.size, dtype=np.int64)
    cur = xs.copy()
    k = 1
    pending = nil.copy()
    while pending.any():
        hit = pending & (cur == R.zero)
        index[hit] = k
        pending &= ~hit
        if not pending.any() or k > R.size:
            break
        cur = np.asarray(R.mul(cur, xs))
        k += 1
    return nil, index


def classify_elements(R: FiniteRing) -> Classification:
    """Idempotents, nilpotents (with index), units (with inverse) and zero divisors.

    Memoised on the ring; repeated or concurrent calls return equal results.
    """
    return R.memo("classification", lambda: _classify(R))


def _classify(R: FiniteRing) -> Classification:
    n = R.size
    xs = R.elements()
    idem = np.asarray(R.mul(xs, xs)) == xs
    nil, index = _nilpotency(R)
    unit = np.zeros(n, dtype=bool)
    inverse = np.full(n, -1, dtype=np.int64)
    zdiv = np.zeros(n, dtype=bool)
    tables = R.tables
    if tables is not None:
        M = tables[1]
        eq = M == R.one
        has_right, has_left = eq.any(axis=1), eq.any(axis=0)
        unit = has_right & has_left
        right_inv = eq.argmax(axis=1)
        left_inv = eq.argmax(axis=0)
        inverse[unit] = right_inv[unit]
        if not np.array_equal(right_inv[unit], left_inv[unit]):
            raise RingAxiomFailure(f"{R.label}: left and right inverses differ")
        z = M == R.zero
        z[:, R.zero] = False
        z[R.zero, :] = False
        zdiv = z.any(axis=1) | z.any(axis=0)
    else:
        for x in range(n):
            row, col = R.mul_row(x), R.mul_col(x)
            r = np.flatnonzero(row == R.one)
            l_ = np.flatnonzero(col == R.one)
            if r.size and l_.size:
                unit[x] = True
                inverse[x] = r[0]
            if x != R.zero:
                zr = (row == R.zero)
                zc = (col == R.zero)
                zr[R.zero] = zc[R.zero] = False
                zdiv[x] = zr.any() or zc.any()
    _freeze(idem, nil, index, unit, inverse, zdiv)
    return Classification(idem, nil, index, unit, inverse, zdiv)


def is_nilpotent(R: FiniteRing, x: int) -> bool:
    return bool(classify_elements(R).nilpotent[x])


def is_nil_set(R: FiniteRing, S: Iterable[int] | np.ndarray) -> bool:
    S = np.asarray(list(S) if not isinstance(S, np.ndarray) else S)
    if S.dtype == bool:
        S = np.flatnonzero(S)
    return bool(classify_elements(R).nilpotent[S].all()) if S.size else True


# -- additive structure and ideals -------------------------------------------

def additive_span(R: FiniteRing, gens: Iterable[int], base: np.ndarray | None = None) -> np.ndarray:
    """Boolean mask of the additive subgroup generated by ``base`` (a subgroup mask) and ``gens``."""
    mask = np.zeros(R.size, dtype=bool) if base is None else np.array(base, dtype=bool)
    mask[R.zero] = True
    for g in gens:
        g = int(g)
        if mask[g]:
            continue
        members = np.flatnonzero(mask)
        grown = mask.copy()
        shift = g
        # H + <g> is the union of the cosets H + k*g until k*g falls back into H.
        while not mask[shift]:
            grown[np.asarray(R.add(members, shift))] = True
            shift = R.add(shift, g)
        mask = grown
    return mask


def additive_generators(R: FiniteRing, mask: np.ndarray | None = None) -> list[int]:
    """A small generating set of an additive subgroup, chosen greedily in index order."""
    if mask is None:
        return R.memo("additive_generators", lambda: additive_generators(R, np.ones(R.size, dtype=bool)))
    target = np.asarray(mask, dtype=bool)
    span = np.zeros(R.size, dtype=bool)
    span[R.zero] = True
    gens: list[int] = []
    for x in np.flatnonzero(target):
        if not span[x]:
            gens.append(int(x))
            span = additive_span(R, [x], span)
            if span.sum() == target.sum():
                break
    return gens


def is_additive_subgroup(R: FiniteRing, mask: np.ndarray) -> tuple[bool, Any]:
    """(True, None) or (False, witness) for a candidate subgroup given as a mask."""
    mask = np.asarray(mask, dtype=bool)
    if not mask[R.zero]:
        return False, {"missing": "zero"}
    members = np.flatnonzero(mask)
    negs = np.asarray(R.neg(members))
    bad = np.flatnonzero(~mask[negs])
    if bad.size:
        return False, {"x": int(members[bad[0]]), "reason": "negation leaves the set"}
    for x in members:
        sums = np.asarray(R.add(int(x), members))
        out = np.flatnonzero(~mask[sums])
        if out.size:
            return False, {"x": int(x), "y": int(members[out[0]]), "reason": "sum leaves the set"}
    return True, None


KINDS = ("additive-subgroup", "right-ideal", "left-ideal", "two-sided-ideal")


@dataclass(frozen=True, eq=False)
class SubsetIdeal:
    parent: FiniteRing
    mask: np.ndarray
    kind: str = "two-sided-ideal"

    @property
    def members(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    @property
    def size(self) -> int:
        return int(self.mask.sum())

    def __contains__(self, x: int) -> bool:
        return bool(self.mask[x])

    def same_as(self, other: "SubsetIdeal | np.ndarray") -> bool:
        m = other.mask if isinstance(other, SubsetIdeal) else np.asarray(other, dtype=bool)
        return bool(np.array_equal(self.mask, m))


def _ideal_from_mask(R: FiniteRing, mask: np.ndarray, kind: str) -> SubsetIdeal:
    mask = np.asarray(mask, dtype=bool)
    mask.setflags(write=False)
    return SubsetIdeal(R, mask, kind)


def ideal_generated(R: FiniteRing, gens: Iterable[int], kind: str = "two-sided-ideal") -> SubsetIdeal:
    """Smallest subset of the given kind containing ``gens``.

    By biadditivity of multiplication, RgR is spanned by r*g*s with r and s
    running over an additive generating set of R, which keeps this cheap.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown ideal kind {kind!r}")
    gens = [int(g) for g in gens]
    if kind == "additive-subgroup":
        return _ideal_from_mask(R, additive_span(R, gens), kind)
    basis = additive_generators(R)
    cands = []
    for g in gens:
        lefts = [R.mul(r, g) for r in basis] if kind in ("left-ideal", "two-sided-ideal") else [g]
        for h in lefts:
            if kind in ("right-ideal", "two-sided-ideal"):
                cands.extend(R.mul(h, s) for s in basis)
            else:
                cands.append(h)
    return _ideal_from_mask(R, additive_span(R, cands), kind)


def ideal_from_mask(R: FiniteRing, mask: np.ndarray, kind: str = "two-sided-ideal") -> SubsetIdeal:
    """Wrap a mask as an ideal after checking the closure properties of ``kind``."""
    mask = np.asarray(mask, dtype=bool)
    ok, witness = is_additive_subgroup(R, mask)
    if not ok:
        raise RingAxiomFailure("not an additive subgroup", witness)
    members = np.flatnonzero(mask)
    basis = additive_generators(R)
    for s in basis:
        if kind in ("right-ideal", "two-sided-ideal"):
            bad = np.flatnonzero(~mask[np.asarray(R.mul(members, s))])
            if bad.size:
                raise RingAxiomFailure("not closed under right multiplication",
                                       {"x": int(members[bad[0]]), "r": int(s)})
        if kind in ("left-ideal", "two-sided-ideal"):
            bad = np.flatnonzero(~mask[np.asarray(R.mul(s, members))])
            if bad.size:
                raise RingAxiomFailure("not closed under left multiplication",
                                       {"x": int(members[bad[0]]), "r": int(s)})
    return _ideal_from_mask(R, mask, kind)


def ideal_product(R: FiniteRing, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Additive span of all products a*b."""
    ga = additive_generators(R, A)
    gb = additive_generators(R, B)
    return additive_span(R, [R.mul(a, b) for a in ga for b in gb])


def ideal_power_nilpotent(I: SubsetIdeal) -> int | None:
    """Least k with I^k = 0, or None when the powers stabilise at a nonzero ideal."""
    R = I.parent
    zero_only = np.zeros(R.size, dtype=bool)
    zero_only[R.zero] = True
    power = np.asarray(I.mask, dtype=bool)
    k = 1
    while True:
        if np.array_equal(power, zero_only):
            return k
        nxt = ideal_product(R, power, I.mask)
        if np.array_equal(nxt, power):
            return None
        power = nxt
        k += 1


def jacobson_radical(R: FiniteRing) -> SubsetIdeal:
    """{x : 1 - x*r is a unit for every r}, checked to be a two-sided ideal."""
    def compute():
        unit = classify_elements(R).unit
        tables = R.tables
        if tables is not None:
            add, mul, neg = tables
            ok = unit[add[R.one][neg[mul]]].all(axis=1)
        else:
            ok = np.array([unit[np.asarray(R.sub(R.one, R.mul_row(x)))].all() for x in range(R.size)])
        return ideal_from_mask(R, ok, "two-sided-ideal")
    return R.memo("jacobson", compute)


# -- homomorphisms -------------------------------------------------------------

@dataclass
class HomReport:
    ok: bool
    violation: str | None = None
    witness: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def as_dict(self) -> dict:
        return {"ok": self.ok, "violation": self.violation, "witness": self.witness}


def verify_hom(fmap: Sequence[int] | np.ndarray, R: FiniteRing, S: FiniteRing, *,
               bijective: bool = False, graded: tuple[Any, Any] | None = None,
               degree_map: Sequence[int] | None = None) -> HomReport:
    """Check additivity, multiplicativity and 1 -> 1 of an element map R -> S.

    ``graded=(GR, GS)`` additionally checks degree preservation:
    f(R_g) is inside S_{degree_map[g]} (identity map on degrees by default).
    """
    f = np.asarray(fmap, dtype=np.int64)
    if f.shape != (R.size,) or (f < 0).any() or (f >= S.size).any():
        return HomReport(False, "map is not total", {})
    if f[R.one] != S.one:
        return HomReport(False, "unit not preserved", {"x": R.one, "image": int(f[R.one])})
    xs = R.elements()
    for a in range(R.size):
        lhs = f[np.asarray(R.add(a, xs))]
        rhs = np.asarray(S.add(int(f[a]), f))
        bad = np.flatnonzero(lhs != rhs)
        if bad.size:
            return HomReport(False, "not additive", {"x": a, "y": int(bad[0])})
        lhs = f[np.asarray(R.mul(a, xs))]
        rhs = np.asarray(S.mul(int(f[a]), f))
        bad = np.flatnonzero(lhs != rhs)
        if bad.size:
            return HomReport(False, "not multiplicative", {"x": a, "y": int(bad[0])})
    if bijective and len(np.unique(f)) != S.size or bijective and R.size != S.size:
        return HomReport(False, "not bijective", {})
    if graded is not None:
        GR, GS = graded
        dmap = list(range(GR.group.order)) if degree_map is None else list(degree_map)
        for g in range(GR.group.order):
            members = GR.component(g)
            target = GS.masks[dmap[g]]
            bad = np.flatnonzero(~target[f[members]])
            if bad.size:
                return HomReport(False, "not degree-preserving",
                                 {"x": int(members[bad[0]]), "degree": GR.group.names[g]})
    return HomReport(True)


def verify_ring_axioms(R: FiniteRing) -> None:
    """Raise RingAxiomFailure on the first violated axiom.

    Every triple is checked up to ``axiom_triple_limit`` elements.  Beyond
    that, the additive group and unit laws are still checked on all
    elements, and associativity and distributivity on an additive
    generating set, which suffices because every structured backend
    multiplies biadditively by construction.
    """
    xs = R.elements()
    if not np.all(np.asarray(R.add(R.zero, xs)) == xs):
        raise RingAxiomFailure(f"{R.label}: zero is not additive identity")
    if not np.all(np.asarray(R.add(xs, R.neg(xs))) == R.zero):
        raise RingAxiomFailure(f"{R.label}: negation is not additive inverse")
    if not (np.all(np.asarray(R.mul(R.one, xs)) == xs) and np.all(np.asarray(R.mul(xs, R.one)) == xs)):
        raise RingAxiomFailure(f"{R.label}: one is not a two-sided identity")
    full = R.size <= get_limits().axiom_triple_limit
    trip = xs if full else np.asarray(additive_generators(R), dtype=np.int64)
    B, C = trip[:, None], trip[None, :]
    for a in (xs if full else trip):
        a = int(a)
        ab = np.asarray(R.add(a, xs))
        if not np.array_equal(ab, np.asarray(R.add(xs, a))):
            raise RingAxiomFailure(f"{R.label}: addition not commutative", {"x": a})
        checks = (
            ("multiplication not associative",
             R.mul(R.mul(a, B), C), R.mul(a, R.mul(B, C))),
            ("left distributivity fails",
             R.mul(a, R.add(B, C)), R.add(R.mul(a, B), R.mul(a, C))),
            ("right distributivity fails",
             R.mul(R.add(B, C), a), R.add(R.mul(B, a), R.mul(C, a))),
        )
        for what, lhs, rhs in checks:
            bad = np.argwhere(np.asarray(lhs) != np.asarray(rhs))
            if bad.size:
                b, c = (int(trip[i]) for i in bad[0])
                raise RingAxiomFailure(f"{R.label}: {what}", {"triple": [a, b, c]})
        if full:
            lhs = np.asarray(R.add(ab[:, None], xs[None, :]))
            rhs = np.asarray(R.add(a, R.add(xs[:, None], xs[None, :])))
            if not np.array_equal(lhs, rhs):
                raise RingAxiomFailure(f"{R.label}: addition not associative", {"x": a})
