"""Exhaustive search for G-gradings of a small finite ring.

A grading is a tuple of additive subgroups indexed by G, forming a direct sum,
with 1 in the identity component and R_g R_h inside R_gh.  Gradings are listed
as labelled tuples; relabelling by automorphisms of G or R is not factored out.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import cleanness as K
from ..errors import CapExceeded
from ..grading import GradedRing, verify_grading
from ..groups import FiniteGroup
from ..limits import get_limits
from ..rings import FiniteRing
from ..structure import additive_span


@dataclass(frozen=True)
class FoundGrading:
    graded: GradedRing
    graded_nil_clean: bool
    re_nil_clean: bool

    @property
    def counterexample(self) -> bool:
        """R_e nil clean while R is not graded nil clean."""
        return self.re_nil_clean and not self.graded_nil_clean

    @property
    def trivial(self) -> bool:
        return bool(self.graded.e_mask.all())

    def as_dict(self) -> dict:
        GR = self.graded
        return {
            "components": {GR.group.names[g]: [GR.fmt(int(x)) for x in np.flatnonzero(GR.masks[g])]
                           for g in range(GR.group.order)},
            "graded_nil_clean": self.graded_nil_clean,
            "re_nil_clean": self.re_nil_clean,
            "counterexample": self.counterexample,
        }


@dataclass(frozen=True)
class SearchResult:
    ring: FiniteRing
    group: FiniteGroup
    gradings: tuple[FoundGrading, ...]
    subgroups: int

    @property
    def counterexamples(self) -> list[FoundGrading]:
        return [f for f in self.gradings if f.counterexample]

    def as_dict(self) -> dict:
        return {
            "ring": self.ring.describe(),
            "group": self.group.describe(),
            "additive_subgroups": self.subgroups,
            "gradings": [f.as_dict() for f in self.gradings],
            "counterexamples": sum(1 for f in self.gradings if f.counterexample),
        }


def additive_subgroups(R: FiniteRing) -> list[np.ndarray]:
    """All additive subgroups, ordered by (size, members)."""
    zero = additive_span(R, [])
    found = {zero.tobytes(): zero}
    queue = [zero]
    while queue:
        cur = queue.pop()
        for x in np.flatnonzero(~cur):
            new = additive_span(R, [int(x)], cur)
            k = new.tobytes()
            if k not in found:
                found[k] = new
                queue.append(new)
    return sorted(found.values(), key=lambda m: (int(m.sum()), tuple(np.flatnonzero(m))))


def _closed(R: FiniteRing, G: FiniteGroup, comps: list[np.ndarray]) -> bool:
    idx = [np.flatnonzero(c) for c in comps]
    for g in range(G.order):
        for h in range(G.order):
            if idx[g].size == 1 or idx[h].size == 1:
                continue  # a zero component multiplies into anything
            prods = np.asarray(R.mul(idx[g][:, None], idx[h][None, :]))
            if not comps[G.op(g, h)][prods].all():
                return False
    return True


def grading_search(R: FiniteRing, G: FiniteGroup) -> SearchResult:
    cap = get_limits().search_max_elements
    if R.size > cap:
        raise CapExceeded(f"grading search needs |R| <= {cap}, got {R.size}", {"size": R.size, "cap": cap})
    subs = additive_subgroups(R)
    sizes = [int(s.sum()) for s in subs]
    order = [G.identity] + [g for g in range(G.order) if g != G.identity]
    found: list[np.ndarray] = []
    comps: list[np.ndarray | None] = [None] * G.order

    def extend(pos: int, span: np.ndarray, size: int) -> None:
        if pos == len(order):
            if size == R.size and _closed(R, G, comps):
                found.append(np.array(comps))
            return
        g = order[pos]
        for s, n in zip(subs, sizes):
            if g == G.identity and not s[R.one]:
                continue
            if R.size % (size * n):
                continue
            new = additive_span(R, np.flatnonzero(s), span)
            if int(new.sum()) != size * n:
                continue  # not independent of the components chosen so far
            comps[g] = s
            extend(pos + 1, new, size * n)
        comps[g] = None

    extend(0, additive_span(R, []), 1)
    out = []
    for masks in found:
        GR = verify_grading(R, G, list(masks))
        re = K.is_nil_clean(K.e_component_ring(GR)).holds
        out.append(FoundGrading(GR, K.is_graded_nil_clean(GR).holds, re))
    return SearchResult(R, G, tuple(out), len(subs))
