"""Graded constructions: matrix and triangular rings, twisted group rings,
corner rings, Peirce blocks, augmentation and direct products."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (AssociativityFailure, GroupMismatch, NotDegreeE, NotIdempotent,
                     RingAxiomFailure)
from .groups import FiniteGroup
from .grading import (GradedRing, coarsen, is_homogeneous_ideal, quotient_graded, verify_grading,
                      verify_s_grading)
from .rings import CoordinateRing, MatrixRing, ProductRing, SubRing, matrix_ring, product_ring, triangular_ring
from .structure import (HomReport, SubsetIdeal, classify_elements, ideal_from_mask,
                        ideal_power_nilpotent, verify_hom, verify_ring_axioms)


# Rings are compared by identity, so equal inputs reuse the same ring and its tables.
_matrix = functools.lru_cache(maxsize=8)(matrix_ring)
_triangular = functools.lru_cache(maxsize=8)(triangular_ring)
_product = functools.lru_cache(maxsize=8)(product_ring)


def _sigma(G: FiniteGroup, sigma: Sequence[int | str]) -> list[int]:
    out = [s if isinstance(s, int) else G.index(s) for s in sigma]
    if not out:
        raise ValueError("sigma must have at least one entry")
    return out


def _matrix_components(GR: GradedRing, M: MatrixRing, sigma: list[int]) -> list[np.ndarray]:
    G = GR.group
    coords = M.decode(M.elements())
    comps = []
    for lam in range(G.order):
        mask = np.ones(M.size, dtype=bool)
        for p, (i, j) in enumerate(M.positions):
            d = G.op(G.op(sigma[i], lam), int(G.inv[sigma[j]]))
            mask &= GR.masks[d][coords[:, p]]
        comps.append(mask)
    return comps


def graded_matrix_ring(GR: GradedRing, n: int, sigma: Sequence[int | str]) -> GradedRing:
    """M_n(R)(sigma): the (i, j) entry of a degree-lambda matrix lies in R_{g_i lambda g_j^-1}."""
    sig = _sigma(GR.group, sigma)
    if len(sig) != n:
        raise ValueError("sigma length must equal n")
    M = _matrix(GR.ring, n)
    names = ",".join(GR.group.names[s] for s in sig)
    return verify_grading(M, GR.group, _matrix_components(GR, M, sig), f"M{n}({GR.label})({names})")


def graded_triangular_ring(GR: GradedRing, n: int, sigma: Sequence[int | str]) -> GradedRing:
    """T_n(R)(sigma): the matrix grading restricted to upper-triangular matrices."""
    sig = _sigma(GR.group, sigma)
    if len(sig) != n:
        raise ValueError("sigma length must equal n")
    T = _triangular(GR.ring, n)
    names = ",".join(GR.group.names[s] for s in sig)
    return verify_grading(T, GR.group, _matrix_components(GR, T, sig), f"T{n}({GR.label})({names})")


def strictly_upper_ideal(T: MatrixRing) -> SubsetIdeal:
    coords = T.decode(T.elements())
    diag = [T.pos_index[(i, i)] for i in range(T.n)]
    mask = (coords[:, diag] == T.base.zero).all(axis=1)
    return ideal_from_mask(T, mask, "two-sided-ideal")


def conjugate_grading(GR: GradedRing, g: int) -> GradedRing:
    """Same ring with component lambda replaced by R_{g lambda g^-1}."""
    G = GR.group
    comps = [GR.masks[G.op(G.op(g, lam), int(G.inv[g]))] for lam in range(G.order)]
    return verify_grading(GR.ring, G, comps, f"{GR.label}^{G.names[g]}")


def _same_group(A, B) -> bool:
    return A is B or (A.names == B.names and np.array_equal(A.table, B.table))


def graded_direct_product(GR1: GradedRing, GR2: GradedRing) -> GradedRing:
    if not _same_group(GR1.group, GR2.group):
        raise GroupMismatch("factors are graded by different groups",
                            {"left": GR1.group.label, "right": GR2.group.label})
    P: ProductRing = _product(GR1.ring, GR2.ring)
    comps = [np.outer(GR1.masks[g], GR2.masks[g]).ravel() for g in range(GR1.group.order)]
    label = f"({GR1.label} x {GR2.label})"
    if GR1.is_group_graded:
        return verify_grading(P, GR1.group, comps, label)
    return verify_s_grading(P, GR1.group, comps, label)


def graded_power(factors: Sequence[GradedRing]) -> GradedRing:
    """Left-nested graded product ((R1 x R2) x R3) ...; indices are mixed radix in factor order."""
    out = factors[0]
    for f in factors[1:]:
        out = graded_direct_product(out, f)
    return out


@dataclass(frozen=True, eq=False)
class TriangularData:
    graded: GradedRing
    upper_ideal: SubsetIdeal
    nilpotency: int | None
    diagonal_product: GradedRing
    diagonal_map: np.ndarray
    quotient_iso: HomReport


def triangular_structure(GR: GradedRing, n: int, sigma: Sequence[int | str]) -> TriangularData:
    """T_n(R)(sigma) with its strictly-upper ideal I, I^n = 0, and T/I = product of diagonal copies.

    The i-th diagonal copy carries the grading of R conjugated by g_i (equal to
    R's own grading when G is abelian).
    """
    S = graded_triangular_ring(GR, n, sigma)
    sig = _sigma(GR.group, sigma)
    T: MatrixRing = S.ring
    I = strictly_upper_ideal(T)
    if not is_homogeneous_ideal(S, I):
        raise RingAxiomFailure("strictly upper ideal is not homogeneous")
    k = ideal_power_nilpotent(I)
    if k is None or k > n:
        raise RingAxiomFailure(f"strictly upper ideal has nilpotency {k}, expected at most {n}")
    copies = [conjugate_grading(GR, s) for s in sig]
    P = graded_power(copies)
    coords = T.decode(T.elements())
    dmap = np.zeros(T.size, dtype=np.int64)
    for i in range(n):
        dmap = dmap * GR.ring.size + coords[:, T.pos_index[(i, i)]]
    hom = verify_hom(dmap, T, P.ring, graded=(S, P))
    if not hom:
        raise RingAxiomFailure(f"diagonal map fails: {hom.violation}", hom.witness)
    kernel = dmap == P.ring.zero
    if not np.array_equal(kernel, I.mask) or len(np.unique(dmap)) != P.ring.size:
        raise RingAxiomFailure("diagonal map kernel/image mismatch")
    Q = quotient_graded(S, I)
    induced = dmap[Q.graded.ring.reps]
    iso = verify_hom(induced, Q.graded.ring, P.ring, bijective=True, graded=(Q.graded, P))
    if not iso:
        raise RingAxiomFailure(f"quotient isomorphism fails: {iso.violation}", iso.witness)
    return TriangularData(S, I, k, P, dmap, iso)


# -- twisted group rings --------------------------------------------------------------

class GroupRing(CoordinateRing):
    """R[H] over a G-graded R, H a normal subgroup of G, with the twisted product

        (r_g g')(r_h h') = r_g r_h (h^-1 g' h h')

    extended biadditively after splitting each coefficient into homogeneous parts.
    Coordinates are the coefficients at the members of H in G-index order.
    """

    backend = "group-ring-over"

    def __init__(self, GR: GradedRing, H: Sequence[int]):
        G = GR.group
        self.graded_base = GR
        self.G = G
        self.H = sorted(int(h) for h in H)
        self.hpos = {h: p for p, h in enumerate(self.H)}
        base = GR.ring
        support = [g for g in range(G.order) if GR.masks[g].sum() > 1]
        self._parts = {g: np.asarray(GR.parts[g], dtype=np.int32) for g in support}
        self._terms = []
        for p, gp in enumerate(self.H):
            for q, hp in enumerate(self.H):
                for g in support:
                    for h in support:
                        t = G.op(G.op(G.op(int(G.inv[h]), gp), h), hp)
                        self._terms.append((p, q, g, h, self.hpos[t]))
        one = [base.zero] * len(self.H)
        one[self.hpos[G.identity]] = base.one
        hname = "G" if len(self.H) == G.order else "{" + ",".join(G.names[h] for h in self.H) + "}"
        super().__init__(base, len(self.H), one, f"{base.label}[{hname}]")

    def _mul_coords(self, A, B):
        shape = np.broadcast_shapes(A.shape, B.shape)
        out = np.full(shape, self.base.zero, dtype=np.int32)
        for p, q, g, h, t in self._terms:
            a = self._parts[g].take(A[..., p])
            b = self._parts[h].take(B[..., q])
            out[..., t] = self._badd(out[..., t], self._bmul(a, b))
        return out

    def format(self, x):
        c = self.coords(x)
        return {self.G.names[h]: self.base.format(v) for h, v in zip(self.H, c)}

    def parse(self, obj):
        if isinstance(obj, dict):
            coords = [self.base.zero] * len(self.H)
            for name, v in obj.items():
                h = self.G.index(name)
                if h not in self.hpos:
                    raise ValueError(f"{name} is not in the subgroup")
                coords[self.hpos[h]] = self.base.parse(v)
            return self.from_coords(coords)
        vals = list(obj)
        if len(vals) != len(self.H):
            raise ValueError(f"expected {len(self.H)} coefficients")
        return self.from_coords([self.base.parse(v) for v in vals])

    def monomial(self, r: int, h: int) -> int:
        coords = [self.base.zero] * len(self.H)
        coords[self.hpos[h]] = r
        return self.from_coords(coords)


@functools.lru_cache(maxsize=16)
def _group_ring(GR: GradedRing, H: tuple[int, ...]) -> GroupRing:
    return GroupRing(GR, H)


def graded_subgroup_ring(GR: GradedRing, H: Iterable[int | str]) -> GradedRing:
    """R[H] as a G-graded ring, (R[H])_g = sum over h in H of R_{g h^-1} h.

    Associativity of the twisted product is verified on the ring, never assumed.
    """
    G = GR.group
    Hs = tuple(sorted(h if isinstance(h, int) else G.index(h) for h in H))
    if not G.is_normal(Hs):
        from .errors import NotNormal
        raise NotNormal("subgroup is not normal", {"subgroup": [G.names[h] for h in Hs]})
    RH = _group_ring(GR, Hs)
    try:
        verify_ring_axioms(RH)
    except RingAxiomFailure as exc:
        if "associative" in str(exc):
            raise AssociativityFailure(str(exc), exc.witness) from exc
        raise
    coords = RH.decode(RH.elements())
    comps = []
    for g in range(G.order):
        mask = np.ones(RH.size, dtype=bool)
        for p, h in enumerate(RH.H):
            mask &= GR.masks[G.op(g, int(G.inv[h]))][coords[:, p]]
        comps.append(mask)
    return verify_grading(RH, G, comps, f"{GR.label}[{','.join(G.names[h] for h in Hs)}]")


def graded_group_ring(GR: GradedRing) -> GradedRing:
    return graded_subgroup_ring(GR, range(GR.group.order))


def e_component_isomorphism(GR: GradedRing, GRG: GradedRing) -> tuple[np.ndarray, HomReport]:
    """The map R -> (R[G])_e, sum r_g |-> sum r_g g^-1, checked as a ring isomorphism."""
    RG: GroupRing = GRG.ring
    G = GR.group
    R = GR.ring
    coords = np.full((R.size, len(RG.H)), R.zero, dtype=np.int64)
    for g in range(G.order):
        coords[:, RG.hpos[int(G.inv[g])]] = GR.parts[g]
    fmap = RG.encode(coords)
    Re = SubRing(RG, GRG.masks[G.identity], RG.one, f"({RG.label})_e")
    local = Re.local[fmap]
    if (local < 0).any():
        bad = int(np.flatnonzero(local < 0)[0])
        return fmap, HomReport(False, "image leaves the e-component", {"x": bad})
    return fmap, verify_hom(local, R, Re, bijective=True)


@dataclass(frozen=True, eq=False)
class Augmentation:
    source: GradedRing          # R[H] graded by G/H
    target: GradedRing          # R graded by G/H
    map: np.ndarray
    hom: HomReport
    delta: SubsetIdeal
    delta_homogeneous: bool
    delta_nilpotency: int | None
    connell_applies: bool


def augmentation(GRH: GradedRing) -> Augmentation:
    """Coefficient-sum map R[H] -> R for the G/H-gradings, and its kernel Delta."""
    RH: GroupRing = GRH.ring
    GR = RH.graded_base
    H = RH.H
    src = coarsen(GRH, H).graded
    tgt = coarsen(GR, H).graded
    R = GR.ring
    coords = RH.decode(RH.elements())
    amap = np.full(RH.size, R.zero, dtype=np.int64)
    for p in range(len(H)):
        amap = np.asarray(R.add(amap, coords[:, p]))
    hom = verify_hom(amap, RH, R, graded=(src, tgt))
    kernel = amap == R.zero
    delta = ideal_from_mask(RH, kernel, "two-sided-ideal")
    if delta.size * R.size != RH.size:
        raise RingAxiomFailure("augmentation kernel has the wrong index")
    two = R.add(R.one, R.one)
    two_nil = bool(classify_elements(R).nilpotent[two])
    H_is_2group = len(H) & (len(H) - 1) == 0
    k = ideal_power_nilpotent(delta)
    connell = two_nil and H_is_2group
    if connell and k is None:
        raise RingAxiomFailure("augmentation ideal is not nilpotent although 2 is nilpotent and H is a 2-group")
    return Augmentation(src, tgt, amap, hom, delta, is_homogeneous_ideal(src, delta), k, connell)


# -- corners and Peirce blocks ------------------------------------------------------------

def _check_corner_idempotent(GR: GradedRing, f: int) -> None:
    R = GR.ring
    if R.mul(f, f) != f:
        raise NotIdempotent("not an idempotent", {"f": int(f), "value": R.format(f)})
    if not GR.e_mask[f]:
        raise NotDegreeE("idempotent is not in the identity component", {"f": int(f), "value": R.format(f)})


def corner_ring(GR: GradedRing, f: int) -> GradedRing:
    """fRf with identity f and components f R_g f."""
    _check_corner_idempotent(GR, f)
    R = GR.ring
    xs = R.elements()
    fxf = np.asarray(R.mul(R.mul(f, xs), f))
    mask = np.zeros(R.size, dtype=bool)
    mask[fxf] = True
    C = SubRing(R, mask, f, f"{R.label}[corner {f}]")
    comps = []
    for g in range(GR.group.order):
        m = np.zeros(C.size, dtype=bool)
        m[C.local[fxf[GR.component(g)]]] = True
        comps.append(m)
    label = f"corner({GR.label}, {R.format(f)})"
    if GR.is_group_graded:
        return verify_grading(C, GR.group, comps, label)
    return verify_s_grading(C, GR.group, comps, label)


@dataclass(frozen=True, eq=False)
class PeirceBlocks:
    f: int
    fbar: int
    blocks: dict[str, np.ndarray]   # keys "ff", "fb", "bf", "bb"; masks on R
    parts: dict[str, np.ndarray]    # per element, its block components


def peirce_blocks(GR: GradedRing, f: int) -> PeirceBlocks:
    _check_corner_idempotent(GR, f)
    R = GR.ring
    fb = R.sub(R.one, f)
    xs = R.elements()
    idem = {"f": f, "b": fb}
    parts, blocks = {}, {}
    for key in ("ff", "fb", "bf", "bb"):
        left, right = idem[key[0]], idem[key[1]]
        p = np.asarray(R.mul(R.mul(left, xs), right))
        parts[key] = p
        m = np.zeros(R.size, dtype=bool)
        m[p] = True
        blocks[key] = m
    total = parts["ff"]
    for key in ("fb", "bf", "bb"):
        total = np.asarray(R.add(total, parts[key]))
    if not np.array_equal(total, xs):
        raise RingAxiomFailure("Peirce parts do not sum back to the element")
    for k1 in blocks:
        for k2 in blocks:
            X, Y = np.flatnonzero(blocks[k1]), np.flatnonzero(blocks[k2])
            if k1 == k2:
                sums = np.asarray(R.add(X[:, None], Y[None, :]))
                if not blocks[k1][sums].all():
                    raise RingAxiomFailure(f"Peirce block {k1} not closed under addition")
            prods = np.asarray(R.mul(X[:, None], Y[None, :]))
            if k1[1] == k2[0]:
                ok = blocks[k1[0] + k2[1]][prods].all()
            else:
                ok = (prods == R.zero).all()
            if not ok:
                raise RingAxiomFailure(f"Peirce multiplication rule fails for {k1}*{k2}")
    return PeirceBlocks(f, fb, blocks, parts)
