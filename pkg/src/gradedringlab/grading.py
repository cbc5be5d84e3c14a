"""Group gradings and partial-groupoid gradings of finite rings."""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

import numpy as np

from .errors import (ConditionViolation, IdentityNotInE, NotDirectSum, NotHomogeneous,
                     NotSubgroup, ProductLeak)
from .groups import UNDEFINED, FiniteGroup, PartialGroupoid, groupoid_from_group, quotient_group
from .rings import FiniteRing, QuotientRing, quotient_ring
from .structure import (SubsetIdeal, additive_span, classify_elements, ideal_from_mask,
                        is_additive_subgroup, verify_hom)


class Degree(enum.Enum):
    ZERO = "zero"
    NOT_HOMOGENEOUS = "not-homogeneous"


@dataclass(frozen=True, eq=False)
class GradedRing:
    """A finite ring with a verified family of components.

    ``masks[g]`` is the membership mask of the component at grading index
    ``g``; ``parts[g][x]`` is the g-part of x in its unique decomposition.
    Build instances through :func:`verify_grading` or
    :func:`verify_s_grading`, never directly.
    """

    ring: FiniteRing
    group: FiniteGroup | PartialGroupoid
    masks: np.ndarray
    parts: np.ndarray
    label: str = ""
    _cache: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def is_group_graded(self) -> bool:
        return isinstance(self.group, FiniteGroup)

    @property
    def neutral(self) -> int:
        """Index of the identity of the grading group."""
        if not self.is_group_graded:
            raise TypeError("partial groupoid gradings have no single neutral component")
        return self.group.identity

    @property
    def idempotent_degrees(self) -> list[int]:
        """Degrees whose components play the role of R_e (all idempotents for groupoids)."""
        if self.is_group_graded:
            return [self.group.identity]
        return [s for s in range(self.group.order) if self.group.table[s, s] == s]

    def memo(self, key: str, compute):
        try:
            return self._cache[key]
        except KeyError:
            pass
        value = compute()
        with self._lock:
            return self._cache.setdefault(key, value)

    def component(self, g: int) -> np.ndarray:
        return np.flatnonzero(self.masks[g])

    @property
    def homogeneous(self) -> np.ndarray:
        return self.memo("homogeneous", lambda: self.masks.any(axis=0))

    @property
    def degrees(self) -> np.ndarray:
        """Degree index per element; -1 for zero, -2 for non-homogeneous elements."""
        def compute():
            deg = np.where(self.homogeneous, self.masks.argmax(axis=0), -2)
            deg[self.ring.zero] = -1
            deg.setflags(write=False)
            return deg
        return self.memo("degrees", compute)

    @property
    def e_mask(self) -> np.ndarray:
        return self.masks[self.idempotent_degrees].any(axis=0)

    def degree_name(self, g: int) -> str:
        return self.group.names[g]

    def fmt(self, x: int) -> Any:
        return self.ring.format(int(x))

    def describe(self) -> dict:
        return {
            "label": self.label,
            "ring": self.ring.describe(),
            "grading": self.group.describe(),
            "component_sizes": {self.group.names[g]: int(self.masks[g].sum())
                                for g in range(self.group.order)},
            "homogeneous_part_size": int(self.homogeneous.sum()),
        }


def _as_masks(R: FiniteRing, components: Sequence[Any]) -> np.ndarray:
    masks = np.zeros((len(components), R.size), dtype=bool)
    for g, comp in enumerate(components):
        arr = np.asarray(comp)
        if arr.dtype == bool and arr.shape == (R.size,):
            masks[g] = arr
        else:
            masks[g, np.asarray(list(comp), dtype=np.int64)] = True
    return masks


def _direct_sum(R: FiniteRing, masks: np.ndarray, names: Sequence[str]) -> np.ndarray:
    """Return the parts array, or raise NotDirectSum with the least bad element."""
    counts = np.zeros(R.size, dtype=np.int64)
    counts[R.zero] = 1
    xs = R.elements()
    for g in range(len(masks)):
        new = np.zeros(R.size, dtype=np.int64)
        for c in np.flatnonzero(masks[g]):
            # x -> x + c is a bijection, so the scatter has no collisions.
            new[np.asarray(R.add(xs, int(c)))] += counts
        counts = new
    bad = np.flatnonzero(counts != 1)
    if bad.size:
        x = int(bad[0])
        raise NotDirectSum(f"element {R.format(x)} has {int(counts[x])} decompositions",
                           {"element": x, "value": R.format(x), "decompositions": int(counts[x])})
    sums = np.array([R.zero], dtype=np.int64)
    chosen = np.zeros((1, 0), dtype=np.int64)
    for g in range(len(masks)):
        comp = np.flatnonzero(masks[g])
        sums = np.asarray(R.add(sums[:, None], comp[None, :])).ravel()
        chosen = np.concatenate([np.repeat(chosen, len(comp), axis=0),
                                 np.tile(comp, len(chosen))[:, None]], axis=1)
    parts = np.empty((len(masks), R.size), dtype=np.int64)
    parts[:, sums] = chosen.T
    parts.setflags(write=False)
    return parts


def _check_subgroups(R: FiniteRing, masks: np.ndarray, names: Sequence[str]) -> None:
    for g in range(len(masks)):
        ok, witness = is_additive_subgroup(R, masks[g])
        if not ok:
            witness = dict(witness, degree=names[g])
            raise NotSubgroup(f"component {names[g]} is not an additive subgroup", witness)


def _leak_witness(R: FiniteRing, masks: np.ndarray, g: int, h: int, target: np.ndarray | None):
    X, Y = np.flatnonzero(masks[g]), np.flatnonzero(masks[h])
    if X.size == 0 or Y.size == 0:
        return None
    P = np.asarray(R.mul(X[:, None], Y[None, :]))
    if target is None:
        bad = np.argwhere(P != R.zero)
    else:
        bad = np.argwhere(~target[P])
    if bad.size:
        i, j = bad[0]
        return int(X[i]), int(Y[j]), int(P[i, j])
    return None


def verify_grading(R: FiniteRing, G: FiniteGroup, components: Sequence[Any], label: str = "") -> GradedRing:
    """Verify a G-grading given one subset (mask or index list) per group element.

    Raises NotSubgroup, NotDirectSum, ProductLeak or IdentityNotInE with a
    witness; the witness is the first violation in group-index then
    element-index order.  Products are checked on pairs of homogeneous
    elements only, which suffices by biadditivity.
    """
    if len(components) != G.order:
        raise ValueError(f"need {G.order} components, got {len(components)}")
    masks = _as_masks(R, components)
    _check_subgroups(R, masks, G.names)
    parts = _direct_sum(R, masks, G.names)
    for g in range(G.order):
        for h in range(G.order):
            gh = G.op(g, h)
            w = _leak_witness(R, masks, g, h, masks[gh])
            if w:
                x, y, p = w
                raise ProductLeak(
                    f"R_{G.names[g]} * R_{G.names[h]} is not inside R_{G.names[gh]}",
                    {"g": G.names[g], "h": G.names[h], "x": x, "y": y, "product": p,
                     "x_value": R.format(x), "y_value": R.format(y)})
    if not masks[G.identity, R.one]:
        raise IdentityNotInE("1 is not in the identity component", {"one": R.format(R.one)})
    masks.setflags(write=False)
    return GradedRing(R, G, masks, parts, label or f"{R.label} over {G.label}")


def verify_s_grading(R: FiniteRing, S: PartialGroupoid | FiniteGroup, components: Sequence[Any],
                     label: str = "") -> GradedRing:
    """Verify an S-grading inducing S: direct sum, condition (i) and condition (ii)."""
    if isinstance(S, FiniteGroup):
        S = groupoid_from_group(S)
    if len(components) != S.order:
        raise ValueError(f"need {S.order} components, got {len(components)}")
    masks = _as_masks(R, components)
    _check_subgroups(R, masks, S.names)
    parts = _direct_sum(R, masks, S.names)
    for s in range(S.order):
        for t in range(S.order):
            st = S.op(s, t)
            defined = st != UNDEFINED
            w = _leak_witness(R, masks, s, t, masks[st] if defined else None)
            if w:
                x, y, p = w
                which = "(i)" if defined else "(ii)"
                raise ConditionViolation(
                    f"condition {which} fails for R_{S.names[s]} * R_{S.names[t]}",
                    {"condition": which, "s": S.names[s], "t": S.names[t], "x": x, "y": y,
                     "product": p, "x_value": R.format(x), "y_value": R.format(y)})
    masks.setflags(write=False)
    return GradedRing(R, S, masks, parts, label or f"{R.label} over {S.label}")


def as_s_grading(GR: GradedRing) -> GradedRing:
    """Reinterpret a group grading as a grading by the group viewed as a partial groupoid."""
    return verify_s_grading(GR.ring, groupoid_from_group(GR.group), list(GR.masks), GR.label + " (S)")


def trivial_grading(R: FiniteRing, G: FiniteGroup, label: str = "") -> GradedRing:
    comps = []
    for g in range(G.order):
        m = np.zeros(R.size, dtype=bool)
        if g == G.identity:
            m[:] = True
        else:
            m[R.zero] = True
        comps.append(m)
    return verify_grading(R, G, comps, label or f"{R.label} trivially over {G.label}")


def grading_from_generators(R: FiniteRing, G: FiniteGroup | PartialGroupoid,
                            generators: Sequence[Iterable[int]], label: str = "") -> GradedRing:
    """Components given as additive generating sets, one per grading element."""
    comps = [additive_span(R, gens) for gens in generators]
    if isinstance(G, FiniteGroup):
        return verify_grading(R, G, comps, label)
    return verify_s_grading(R, G, comps, label)


# -- queries -------------------------------------------------------------------

def homogeneous_part(GR: GradedRing) -> np.ndarray:
    return np.flatnonzero(GR.homogeneous)


def degree(GR: GradedRing, x: int) -> int | Degree:
    d = int(GR.degrees[x])
    if d == -1:
        return Degree.ZERO
    if d == -2:
        return Degree.NOT_HOMOGENEOUS
    return d


def is_homogeneous_ideal(GR: GradedRing, I: SubsetIdeal | np.ndarray) -> bool:
    mask = I.mask if isinstance(I, SubsetIdeal) else np.asarray(I, dtype=bool)
    members = np.flatnonzero(mask)
    return bool(mask[GR.parts[:, members]].all())


@dataclass(frozen=True, eq=False)
class GradedQuotient:
    graded: GradedRing
    projection: np.ndarray
    ideal: SubsetIdeal


def quotient_graded(GR: GradedRing, I: SubsetIdeal | np.ndarray, label: str = "") -> GradedQuotient:
    """R/I with components R_g/(I ∩ R_g); the projection is verified degree-preserving."""
    mask = I.mask if isinstance(I, SubsetIdeal) else np.asarray(I, dtype=bool)
    ideal = ideal_from_mask(GR.ring, mask, "two-sided-ideal")
    if not is_homogeneous_ideal(GR, ideal):
        bad = next(int(x) for x in ideal.members if not mask[GR.parts[:, x]].all())
        raise NotHomogeneous("ideal is not homogeneous", {"element": bad, "value": GR.fmt(bad)})
    Q: QuotientRing = quotient_ring(GR.ring, mask)
    comps = []
    for g in range(GR.group.order):
        m = np.zeros(Q.size, dtype=bool)
        m[Q.coset_of[GR.component(g)]] = True
        comps.append(m)
    lab = label or f"{GR.label} / I{ideal.size}"
    if GR.is_group_graded:
        GQ = verify_grading(Q, GR.group, comps, lab)
    else:
        GQ = verify_s_grading(Q, GR.group, comps, lab)
    proj = np.asarray(Q.coset_of)
    report = verify_hom(proj, GR.ring, Q, graded=(GR, GQ))
    if not report:
        raise NotHomogeneous(f"projection check failed: {report.violation}", report.witness)
    return GradedQuotient(GQ, proj, ideal)


@dataclass(frozen=True, eq=False)
class Coarsening:
    graded: GradedRing
    coset_map: np.ndarray


def coarsen(GR: GradedRing, H: Iterable[int], label: str = "") -> Coarsening:
    """Regrade by G/H with R_C the sum of R_x over x in the coset C."""
    G = GR.group
    Q, coset = quotient_group(G, H)
    comps = []
    for c in range(Q.order):
        outside = np.flatnonzero(coset != c)
        m = (GR.parts[outside] == GR.ring.zero).all(axis=0) if outside.size else np.ones(GR.ring.size, bool)
        comps.append(m)
    return Coarsening(verify_grading(GR.ring, Q, comps, label or f"{GR.label} coarsened to {Q.label}"), coset)


def is_graded_nil(GR: GradedRing, ideal: SubsetIdeal | np.ndarray | None = None) -> bool:
    return graded_nil_witness(GR, ideal) is None


def graded_nil_witness(GR: GradedRing, ideal: SubsetIdeal | np.ndarray | None = None) -> int | None:
    """Least homogeneous member (of the ideal, or of the ring) that is not nilpotent."""
    sel = GR.homogeneous.copy()
    if ideal is not None:
        sel &= ideal.mask if isinstance(ideal, SubsetIdeal) else np.asarray(ideal, dtype=bool)
    bad = np.flatnonzero(sel & ~classify_elements(GR.ring).nilpotent)
    return int(bad[0]) if bad.size else None


def homogeneous_zero_divisor_witness(GR: GradedRing) -> tuple[int, int] | None:
    R = GR.ring
    hom = np.flatnonzero(GR.homogeneous)
    hom = hom[hom != R.zero]
    if hom.size == 0:
        return None
    P = np.asarray(R.mul(hom[:, None], hom[None, :]))
    bad = np.argwhere(P == R.zero)
    if bad.size:
        return int(hom[bad[0][0]]), int(hom[bad[0][1]])
    return None


def homogeneous_zero_divisor_free(GR: GradedRing) -> bool:
    return homogeneous_zero_divisor_witness(GR) is None


def is_graded_division(GR: GradedRing) -> bool:
    R = GR.ring
    sel = GR.homogeneous.copy()
    sel[R.zero] = False
    return bool(classify_elements(R).unit[sel].all())


def verify_homogeneous_hom(fmap: Sequence[int] | np.ndarray, GR: GradedRing, GS: GradedRing) -> dict:
    """Homogeneous homomorphism of S-graded rings: ring hom, homogeneous to homogeneous,
    and a nonzero homogeneous image forces a homogeneous preimage.  Zero images are
    unconstrained."""
    f = np.asarray(fmap, dtype=np.int64)
    rep = verify_hom(f, GR.ring, GS.ring)
    if not rep:
        return rep.as_dict()
    hom_src = GR.homogeneous
    hom_img = GS.homogeneous[f]
    bad = np.flatnonzero(hom_src & ~hom_img)
    if bad.size:
        return {"ok": False, "violation": "homogeneous element maps to non-homogeneous",
                "witness": {"x": int(bad[0])}}
    nonzero = f != GS.ring.zero
    bad = np.flatnonzero(hom_img & nonzero & ~hom_src)
    if bad.size:
        return {"ok": False, "violation": "nonzero homogeneous image of a non-homogeneous element",
                "witness": {"x": int(bad[0])}}
    return {"ok": True, "violation": None, "witness": {}}
