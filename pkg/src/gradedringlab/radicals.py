"""Graded Jacobson radical from the lattice of homogeneous right ideals."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cleanness import e_component_ring
from .errors import CapExceeded, RingAxiomFailure
from .grading import GradedRing, is_homogeneous_ideal
from .limits import get_limits
from .structure import SubsetIdeal, additive_generators, additive_span, ideal_from_mask, jacobson_radical


@dataclass(frozen=True, eq=False)
class HomogeneousRightIdealLattice:
    graded: GradedRing
    members: tuple[np.ndarray, ...]     # masks, ordered by (size, least differing index)
    maximal: tuple[np.ndarray, ...]

    def __len__(self) -> int:
        return len(self.members)

    def sizes(self) -> list[int]:
        return [int(m.sum()) for m in self.members]


def _principal(GR: GradedRing, h: int, basis: list[int]) -> np.ndarray:
    R = GR.ring
    return additive_span(R, [R.mul(h, s) for s in basis])


def _key(mask: np.ndarray) -> bytes:
    return np.packbits(mask).tobytes()


def _order(mask: np.ndarray):
    return (int(mask.sum()), tuple(np.flatnonzero(mask).tolist()))


def homogeneous_right_ideals(GR: GradedRing) -> HomogeneousRightIdealLattice:
    """Every homogeneous right ideal is the sum of the principal ideals hR of its
    homogeneous members, so closing the principal ones under sums finds them all."""
    def compute():
        caps = get_limits()
        R = GR.ring
        hom = np.flatnonzero(GR.homogeneous)
        if hom.size > caps.max_homogeneous:
            raise CapExceeded(f"{hom.size} homogeneous elements, above the cap of {caps.max_homogeneous}",
                              {"homogeneous": int(hom.size), "cap": caps.max_homogeneous})
        basis = additive_generators(R)
        principals: dict[bytes, np.ndarray] = {}
        for h in hom:
            p = _principal(GR, int(h), basis)
            principals.setdefault(_key(p), p)
        prin = list(principals.values())
        zero = np.zeros(R.size, dtype=bool)
        zero[R.zero] = True
        found = {_key(zero): zero}
        queue = [zero]
        while queue:
            cur = queue.pop()
            for p in prin:
                if (cur | p).sum() == cur.sum():
                    continue
                new = additive_span(R, additive_generators(R, p), cur)
                k = _key(new)
                if k not in found:
                    found[k] = new
                    queue.append(new)
                    if len(found) > caps.max_ideals:
                        raise CapExceeded(f"more than {caps.max_ideals} homogeneous right ideals",
                                          {"cap": caps.max_ideals})
        members = sorted(found.values(), key=_order)
        for m in members:
            m.setflags(write=False)
        proper = [m for m in members if not m.all()]
        maximal = [m for m in proper
                   if not any(o.sum() > m.sum() and (o | m).sum() == o.sum() for o in proper)]
        return HomogeneousRightIdealLattice(GR, tuple(members), tuple(maximal))
    return GR.memo("homogeneous-right-ideals", compute)


@dataclass(frozen=True, eq=False)
class GradedRadical:
    ideal: SubsetIdeal
    maximal_count: int
    # J^g ∩ R_e == J(R_e); None for partial groupoid gradings, where it is not evaluated.
    e_part_matches: bool | None
    notes: tuple[str, ...] = field(default=())


def graded_jacobson_radical(GR: GradedRing) -> GradedRadical:
    """Intersection of the maximal homogeneous right ideals, checked two-sided and homogeneous."""
    def compute():
        R = GR.ring
        lat = homogeneous_right_ideals(GR)
        if lat.maximal:
            mask = np.logical_and.reduce(np.array(lat.maximal))
        else:
            # zero ring: no proper ideals; the radical is the zero ideal
            mask = np.zeros(R.size, dtype=bool)
            mask[R.zero] = True
        try:
            ideal = ideal_from_mask(R, mask, "two-sided-ideal")
        except RingAxiomFailure as exc:
            raise RingAxiomFailure(f"graded radical is not two-sided: {exc}", exc.witness) from exc
        if not is_homogeneous_ideal(GR, ideal):
            raise RingAxiomFailure("graded radical is not homogeneous")
        notes: list[str] = []
        match = None
        if GR.is_group_graded:
            Re = e_component_ring(GR)
            J_e = jacobson_radical(Re).mask
            lifted = np.zeros(R.size, dtype=bool)
            lifted[Re.members[J_e]] = True
            match = bool(np.array_equal(lifted, mask & GR.masks[GR.neutral]))
        else:
            notes.append("partial groupoid grading: radical theory is only checked for group gradings")
        return GradedRadical(ideal, len(lat.maximal), match, tuple(notes))
    return GR.memo("graded-jacobson", compute)


def is_graded_local(GR: GradedRing) -> bool:
    return len(homogeneous_right_ideals(GR).maximal) == 1
