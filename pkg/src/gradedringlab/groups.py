"""Finite groups and partial groupoids given by Cayley tables."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import AlgebraError, NotNormal

UNDEFINED = -1


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A group on indices ``0..order-1`` with a total operation table.

    ``names`` are the printable element labels used by specs and reports;
    the identity may always be referred to as ``"e"`` as well.
    """

    table: np.ndarray
    names: tuple[str, ...]
    label: str = "G"
    identity: int = field(init=False)
    inv: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        table = np.asarray(self.table, dtype=np.int64)
        n = len(self.names)
        if table.shape != (n, n) or n == 0:
            raise AlgebraError(f"group table must be {n}x{n}")
        if table.min() < 0 or table.max() >= n:
            raise AlgebraError("group table entry out of range")
        ids = [i for i in range(n)
               if np.array_equal(table[i], np.arange(n)) and np.array_equal(table[:, i], np.arange(n))]
        if not ids:
            raise AlgebraError("group table has no identity")
        e = ids[0]
        inv = np.full(n, -1, dtype=np.int64)
        for a in range(n):
            hits = np.flatnonzero((table[a] == e) & (table[:, a] == e))
            if hits.size == 0:
                raise AlgebraError(f"element {self.names[a]} has no inverse", {"element": self.names[a]})
            inv[a] = hits[0]
        # associativity on all triples
        lhs = table[table[:, :, None], np.arange(n)[None, None, :]]
        rhs = table[np.arange(n)[:, None, None], table[None, :, :]]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            a, b, c = (int(v) for v in bad[0])
            raise AlgebraError("group table is not associative",
                               {"triple": [self.names[a], self.names[b], self.names[c]]})
        table.setflags(write=False)
        inv.setflags(write=False)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "identity", e)
        object.__setattr__(self, "inv", inv)

    @property
    def order(self) -> int:
        return len(self.names)

    def op(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def index(self, name: str | int) -> int:
        if isinstance(name, (int, np.integer)) and not isinstance(name, bool):
            name = str(name)
        if name == "e" and "e" not in self.names:
            return self.identity
        try:
            return self.names.index(name)
        except ValueError:
            raise AlgebraError(f"unknown element {name!r} of group {self.label}") from None

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.op(x, a)
            k += 1
        return k

    def is_subgroup(self, members: Iterable[int]) -> bool:
        s = sorted(set(members))
        if self.identity not in s:
            return False
        ss = set(s)
        return all(self.op(a, int(self.inv[b])) in ss for a in s for b in s)

    def is_normal(self, members: Iterable[int]) -> bool:
        s = set(members)
        if not self.is_subgroup(s):
            return False
        return all(self.op(self.op(g, h), int(self.inv[g])) in s for g in range(self.order) for h in s)

    def is_2_group(self) -> bool:
        return self.order & (self.order - 1) == 0

    def subgroups(self) -> list[tuple[int, ...]]:
        """All subgroups, as sorted index tuples, smallest first."""
        found = {(self.identity,)}
        frontier = [frozenset([self.identity])]
        while frontier:
            nxt = []
            for sub in frontier:
                for x in range(self.order):
                    if x in sub:
                        continue
                    grown = self._closure(sub | {x})
                    key = tuple(sorted(grown))
                    if key not in found:
                        found.add(key)
                        nxt.append(grown)
            frontier = nxt
        return sorted(found, key=lambda s: (len(s), s))

    def normal_subgroups(self) -> list[tuple[int, ...]]:
        return [s for s in self.subgroups() if self.is_normal(s)]

    def _closure(self, gens: Iterable[int]) -> frozenset[int]:
        members = {self.identity} | set(gens)
        while True:
            new = {self.op(a, b) for a in members for b in members} | members
            if new == members:
                return frozenset(members)
            members = new

    def describe(self) -> dict:
        return {"label": self.label, "order": self.order, "elements": list(self.names)}


def group_from_table(names: Sequence[str], rows: Sequence[Sequence[str]], label: str = "G") -> FiniteGroup:
    idx = {n: i for i, n in enumerate(names)}
    try:
        table = [[idx[str(x)] for x in row] for row in rows]
    except KeyError as exc:
        raise AlgebraError(f"unknown element {exc.args[0]!r} in group table") from None
    return FiniteGroup(np.array(table), tuple(str(n) for n in names), label)


def cyclic_group(n: int) -> FiniteGroup:
    """C_n with generator at index 1; elements named e, g, g2, g3, ..."""
    if n < 1:
        raise AlgebraError("cyclic group order must be positive")
    names = tuple("e" if k == 0 else ("g" if k == 1 else f"g{k}") for k in range(n))
    table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return FiniteGroup(table, names, f"C{n}")


def integer_window(radius: int) -> FiniteGroup:
    """Cyclic group of order 2*radius+1 labelled by the integers -radius..radius.

    A Z-grading supported inside [-radius, radius] maps injectively onto it,
    so homogeneous elements and components are unchanged.
    """
    if radius < 1:
        raise AlgebraError("window radius must be positive")
    m = 2 * radius + 1
    names = tuple(str(k if k <= radius else k - m) for k in range(m))
    table = (np.arange(m)[:, None] + np.arange(m)[None, :]) % m
    return FiniteGroup(table, names, f"Z[{-radius}..{radius}]")


def symmetric_group(n: int) -> FiniteGroup:
    """S_n on permutations in lexicographic order, named by one-line notation."""
    perms = list(itertools.permutations(range(n)))
    pos = {p: i for i, p in enumerate(perms)}
    # (p*q)(i) = p(q(i))
    table = [[pos[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    names = tuple("p" + "".join(str(v) for v in p) for p in perms)
    return FiniteGroup(np.array(table), names, f"S{n}")


def trivial_group() -> FiniteGroup:
    return cyclic_group(1)


def quotient_group(G: FiniteGroup, H: Iterable[int]) -> tuple[FiniteGroup, np.ndarray]:
    """G/H together with the coset map G -> G/H.

    Cosets are ordered by their smallest member; each coset is named by the
    bracketed list of its members' names.
    """
    h = sorted(set(int(x) for x in H))
    if not G.is_subgroup(h):
        raise NotNormal("not a subgroup", {"members": [G.names[x] for x in h]})
    for g in range(G.order):
        for x in h:
            c = G.op(G.op(g, x), int(G.inv[g]))
            if c not in h:
                raise NotNormal("subgroup is not normal",
                                {"g": G.names[g], "h": G.names[x], "conjugate": G.names[c]})
    coset = np.full(G.order, -1, dtype=np.int64)
    reps: list[int] = []
    members: list[list[int]] = []
    for g in range(G.order):
        if coset[g] >= 0:
            continue
        cls = sorted(G.op(g, x) for x in h)
        coset[cls] = len(reps)
        reps.append(g)
        members.append(cls)
    k = len(reps)
    table = np.array([[coset[G.op(reps[a], reps[b])] for b in range(k)] for a in range(k)])
    names = tuple("[" + ",".join(G.names[x] for x in m) + "]" for m in members)
    Q = FiniteGroup(table, names, f"{G.label}/{len(h)}")
    coset.setflags(write=False)
    return Q, coset


@dataclass(frozen=True, eq=False)
class PartialGroupoid:
    """A set with a partial binary operation; undefined products are ``UNDEFINED``."""

    table: np.ndarray
    names: tuple[str, ...]
    label: str = "S"

    def __post_init__(self):
        table = np.asarray(self.table, dtype=np.int64)
        n = len(self.names)
        if table.shape != (n, n):
            raise AlgebraError(f"groupoid table must be {n}x{n}")
        if ((table < UNDEFINED) | (table >= n)).any():
            raise AlgebraError("groupoid table entry out of range")
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    @property
    def order(self) -> int:
        return len(self.names)

    def op(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def defined(self, a: int, b: int) -> bool:
        return self.table[a, b] != UNDEFINED

    def index(self, name: str | int) -> int:
        try:
            return self.names.index(str(name))
        except ValueError:
            raise AlgebraError(f"unknown element {name!r} of groupoid {self.label}") from None

    def describe(self) -> dict:
        return {"label": self.label, "order": self.order, "elements": list(self.names),
                "partial": True}


def groupoid_from_group(G: FiniteGroup) -> PartialGroupoid:
    return PartialGroupoid(G.table.copy(), G.names, G.label)


def groupoid_from_products(names: Sequence[str], products: Iterable[tuple[str, str, str]],
                           label: str = "S") -> PartialGroupoid:
    idx = {n: i for i, n in enumerate(names)}
    table = np.full((len(names), len(names)), UNDEFINED, dtype=np.int64)
    for a, b, c in products:
        try:
            table[idx[a], idx[b]] = idx[c]
        except KeyError as exc:
            raise AlgebraError(f"unknown groupoid element {exc.args[0]!r}") from None
    return PartialGroupoid(table, tuple(names), label)


def matrix_unit_groupoid(n: int, upper_only: bool = False) -> PartialGroupoid:
    """Pairs (i, j) with (i, j)(j, k) = (i, k) and every other product undefined."""
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if not upper_only or i <= j]
    names = tuple(f"{i}{j}" for i, j in pairs)
    products = [(f"{i}{j}", f"{j2}{k}", f"{i}{k}")
                for i, j in pairs for j2, k in pairs if j == j2]
    return groupoid_from_products(names, products, f"B{n}" + ("u" if upper_only else ""))


def is_cancellative(S: PartialGroupoid | FiniteGroup) -> bool:
    """st = st' implies t = t', and ts = t's implies t = t', over defined products."""
    t = np.asarray(S.table)
    for row in list(t) + list(t.T):
        vals = row[row != UNDEFINED]
        if len(np.unique(vals)) != len(vals):
            return False
    return True


def groupoid_idempotents(S: PartialGroupoid | FiniteGroup) -> list[int]:
    return [s for s in range(S.order) if S.table[s, s] == s]
