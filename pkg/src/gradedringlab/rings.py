"""Finite unital rings on dense element indices.

Every ring numbers its elements ``0..size-1``.  Operations accept Python
ints or integer numpy arrays (broadcasting) so the exhaustive algorithms
can work a whole row at a time.  Rings up to ``Limits.table_limit``
elements precompute full addition and multiplication tables; larger ones
evaluate their structured formulas on demand.
"""

from __future__ import annotations

import functools
import threading
from abc import ABC, abstractmethod
from typing import Any, Sequence

import numpy as np

from .errors import AlgebraError
from .limits import check_size, get_limits

_CHUNK = 1 << 20


def _as_int(x):
    if isinstance(x, np.ndarray) and x.ndim == 0:
        return int(x)
    if isinstance(x, np.integer):
        return int(x)
    return x


class FiniteRing(ABC):
    """Abstract finite ring; subclasses implement vectorised ``_add``/``_mul``/``_neg``."""

    backend = "abstract"

    def __init__(self, size: int, zero: int, one: int, label: str):
        check_size(size, label)
        self.size = int(size)
        self.zero = int(zero)
        self.one = int(one)
        self.label = label
        self._use_tables = self.size <= get_limits().table_limit
        self._lock = threading.Lock()
        self._cache: dict[str, Any] = {}

    # -- structured formulas -------------------------------------------------
    @abstractmethod
    def _add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray: ...

    @abstractmethod
    def _mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray: ...

    @abstractmethod
    def _neg(self, a: np.ndarray) -> np.ndarray: ...

    @abstractmethod
    def format(self, x: int) -> Any:
        """JSON-friendly description of element ``x``."""

    @abstractmethod
    def parse(self, obj: Any) -> int:
        """Inverse of :meth:`format`."""

    # -- memoisation ---------------------------------------------------------
    def memo(self, key: str, compute):
        # Duplicate concurrent computation is harmless; first stored value wins.
        try:
            return self._cache[key]
        except KeyError:
            pass
        value = compute()
        with self._lock:
            return self._cache.setdefault(key, value)

    @property
    def tables(self) -> tuple[np.ndarray, np.ndarray, np.ndarray] | None:
        if not self._use_tables:
            return None
        return self.memo("tables", self._build_tables)

    def _build_tables(self):
        n = self.size
        dtype = np.int16 if n < 2**15 else np.int32
        add = np.empty((n, n), dtype=dtype)
        mul = np.empty((n, n), dtype=dtype)
        cols = np.arange(n, dtype=np.int64)
        step = max(1, _CHUNK // n)
        for r0 in range(0, n, step):
            rows = np.arange(r0, min(n, r0 + step), dtype=np.int64)[:, None]
            a = np.broadcast_to(rows, (rows.shape[0], n))
            b = np.broadcast_to(cols[None, :], (rows.shape[0], n))
            add[r0:r0 + rows.shape[0]] = self._add(a, b)
            mul[r0:r0 + rows.shape[0]] = self._mul(a, b)
        neg = self._neg(cols).astype(dtype)
        for t in (add, mul, neg):
            t.setflags(write=False)
        return add, mul, neg

    # -- public operations ---------------------------------------------------
    def add(self, a, b):
        t = self.tables
        if t is not None:
            return _as_int(t[0][a, b])
        return _as_int(self._add(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)))

    def mul(self, a, b):
        t = self.tables
        if t is not None:
            return _as_int(t[1][a, b])
        return _as_int(self._mul(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)))

    def neg(self, a):
        t = self.tables
        if t is not None:
            return _as_int(t[2][a])
        return _as_int(self._neg(np.asarray(a, dtype=np.int64)))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def pow(self, x: int, k: int) -> int:
        result, base = self.one, int(x)
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def times(self, k: int, x: int) -> int:
        """The integer multiple k*x (k >= 0)."""
        acc = self.zero
        for _ in range(k):
            acc = self.add(acc, x)
        return acc

    def mul_row(self, x: int) -> np.ndarray:
        """x*r for every r."""
        t = self.tables
        if t is not None:
            return t[1][x].astype(np.int64)
        return self._mul(np.full(self.size, x, dtype=np.int64), self.elements())

    def mul_col(self, x: int) -> np.ndarray:
        """r*x for every r."""
        t = self.tables
        if t is not None:
            return t[1][:, x].astype(np.int64)
        return self._mul(self.elements(), np.full(self.size, x, dtype=np.int64))

    def elements(self) -> np.ndarray:
        return np.arange(self.size, dtype=np.int64)

    def characteristic(self) -> int:
        k, x = 1, self.one
        while x != self.zero:
            x = self.add(x, self.one)
            k += 1
        return k

    def describe(self) -> dict:
        return {"label": self.label, "backend": self.backend, "size": self.size}

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.label} |R|={self.size}>"


class ZModRing(FiniteRing):
    backend = "table"

    def __init__(self, n: int):
        if n < 1:
            raise AlgebraError("modulus must be positive")
        self.n = n
        super().__init__(n, 0, 1 % n, "Z/1" if n == 1 else f"Z/{n}")

    def _add(self, a, b):
        return (a + b) % self.n

    def _mul(self, a, b):
        return (a * b) % self.n

    def _neg(self, a):
        return (-a) % self.n

    def format(self, x):
        return int(x)

    def parse(self, obj):
        if isinstance(obj, bool) or not isinstance(obj, (int, np.integer)):
            raise AlgebraError(f"expected an integer for {self.label}, got {obj!r}")
        return int(obj) % self.n


class BooleanRing(FiniteRing):
    """(Z/2)^k with elements encoded as bit masks, first coordinate highest."""

    backend = "table"

    def __init__(self, k: int):
        if k < 1:
            raise AlgebraError("Boolean ring needs k >= 1")
        self.k = k
        super().__init__(2**k, 0, 2**k - 1, f"B{k}")

    def _add(self, a, b):
        return a ^ b

    def _mul(self, a, b):
        return a & b

    def _neg(self, a):
        return a

    def format(self, x):
        return [(int(x) >> (self.k - 1 - i)) & 1 for i in range(self.k)]

    def parse(self, obj):
        if isinstance(obj, int) and self.k == 1:
            obj = [obj]
        bits = list(obj)
        if len(bits) != self.k:
            raise AlgebraError(f"expected {self.k} bits")
        v = 0
        for bit in bits:
            v = (v << 1) | (int(bit) & 1)
        return v


class TableRing(FiniteRing):
    """A ring given directly by its addition and multiplication tables."""

    backend = "table"

    def __init__(self, add: Sequence[Sequence[int]], mul: Sequence[Sequence[int]],
                 zero: int, one: int, label: str = "T"):
        self._addt = np.asarray(add, dtype=np.int64)
        self._mult = np.asarray(mul, dtype=np.int64)
        n = self._addt.shape[0]
        if self._addt.shape != (n, n) or self._mult.shape != (n, n):
            raise AlgebraError("tables must be square and of equal size")
        self._negt = np.array([int(np.flatnonzero(self._addt[a] == zero)[0]) for a in range(n)])
        super().__init__(n, zero, one, label)

    def _add(self, a, b):
        return self._addt[a, b]

    def _mul(self, a, b):
        return self._mult[a, b]

    def _neg(self, a):
        return self._negt[a]

    def format(self, x):
        return int(x)

    def parse(self, obj):
        v = int(obj)
        if not 0 <= v < self.size:
            raise AlgebraError(f"element {v} out of range")
        return v


class CoordinateRing(FiniteRing):
    """Elements are tuples of base-ring elements, indexed in mixed radix.

    The first coordinate is the most significant digit, so index order is
    the lexicographic order of coordinate tuples.
    """

    def __init__(self, base: FiniteRing, ncoords: int, one_coords: Sequence[int], label: str):
        self.base = base
        self.m = ncoords
        self._radix = base.size ** np.arange(ncoords - 1, -1, -1, dtype=np.int64)
        check_size(base.size ** ncoords, label)
        one = int(np.dot(np.asarray(one_coords, dtype=np.int64), self._radix))
        zero = int(np.dot(np.full(ncoords, base.zero, dtype=np.int64), self._radix))
        super().__init__(base.size ** ncoords, zero, one, label)

    def _base_flat(self):
        def build():
            t = self.base.tables
            if t is None:
                return None
            return (t[0].astype(np.int32).ravel(), t[1].astype(np.int32).ravel(), t[2].astype(np.int32))
        return self.base.memo("flat_tables", build)

    def _badd(self, a, b):
        flat = self._base_flat()
        if flat is None:
            return self.base.add(a, b)
        return flat[0].take(a * self.base.size + b)

    def _bmul(self, a, b):
        flat = self._base_flat()
        if flat is None:
            return self.base.mul(a, b)
        return flat[1].take(a * self.base.size + b)

    def _build_tables(self):
        n, m = self.size, self.m
        dtype = np.int16 if n < 2**15 else np.int32
        coords = self.decode(np.arange(n)).astype(np.int32)
        radix = self._radix.astype(np.int32)
        add = np.empty((n, n), dtype=dtype)
        mul = np.empty((n, n), dtype=dtype)
        step = max(1, _CHUNK // n)
        for r0 in range(0, n, step):
            r1 = min(n, r0 + step)
            A = coords[r0:r1, None, :]
            B = coords[None, :, :]
            add[r0:r1] = self._badd(A, B) @ radix
            mul[r0:r1] = self._mul_coords(A, B) @ radix
        neg = (np.asarray(self.base.neg(coords)) @ radix).astype(dtype)
        for t in (add, mul, neg):
            t.setflags(write=False)
        return add, mul, neg

    def decode(self, idx) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        return (idx[..., None] // self._radix) % self.base.size

    def encode(self, coords) -> np.ndarray:
        return np.asarray(coords, dtype=np.int64) @ self._radix

    def _add(self, a, b):
        return self.encode(self._badd(self.decode(a), self.decode(b)))

    def _neg(self, a):
        return self.encode(self.base.neg(self.decode(a)))

    @abstractmethod
    def _mul_coords(self, A: np.ndarray, B: np.ndarray) -> np.ndarray: ...

    def _mul(self, a, b):
        return self.encode(self._mul_coords(self.decode(a), self.decode(b)))

    def coords(self, x: int) -> list[int]:
        return [int(v) for v in self.decode(x)]

    def from_coords(self, coords: Sequence[int]) -> int:
        return int(self.encode(coords))


class MatrixRing(CoordinateRing):
    """n x n matrices over a base ring; ``upper`` restricts to upper-triangular ones."""

    def __init__(self, base: FiniteRing, n: int, upper: bool = False):
        if n < 1:
            raise AlgebraError("matrix size must be positive")
        self.n = n
        self.upper = upper
        self.positions = [(i, j) for i in range(n) for j in range(n) if not upper or i <= j]
        self.pos_index = {p: k for k, p in enumerate(self.positions)}
        one = [base.one if i == j else base.zero for i, j in self.positions]
        name = f"T{n}" if upper else f"M{n}"
        self.backend = "upper-triangular-over" if upper else "matrix-over"
        self._terms = []
        for i, j in self.positions:
            self._terms.append([(self.pos_index[(i, k)], self.pos_index[(k, j)])
                                for k in range(n) if (i, k) in self.pos_index and (k, j) in self.pos_index])
        super().__init__(base, len(self.positions), one, f"{name}({base.label})")

    def _mul_coords(self, A, B):
        out = np.empty(np.broadcast_shapes(A.shape, B.shape), dtype=np.int32)
        for q, terms in enumerate(self._terms):
            acc = None
            for p1, p2 in terms:
                prod = self._bmul(A[..., p1], B[..., p2])
                acc = prod if acc is None else self._badd(acc, prod)
            out[..., q] = acc
        return out

    def format(self, x):
        c = self.coords(x)
        zero = self.base.format(self.base.zero)
        rows = [[zero] * self.n for _ in range(self.n)]
        for (i, j), v in zip(self.positions, c):
            rows[i][j] = self.base.format(v)
        return rows

    def parse(self, obj):
        rows = list(obj)
        if len(rows) != self.n or any(len(list(r)) != self.n for r in rows):
            raise AlgebraError(f"expected a {self.n}x{self.n} matrix")
        coords = []
        for i in range(self.n):
            for j in range(self.n):
                v = self.base.parse(rows[i][j])
                if (i, j) in self.pos_index:
                    coords.append(v)
                elif v != self.base.zero:
                    raise AlgebraError("nonzero entry below the diagonal of a triangular matrix")
        return self.from_coords(coords)

    def matrix(self, entries: dict[tuple[int, int], int]) -> int:
        """Element with the given (0-based) entries and zeros elsewhere."""
        coords = [self.base.zero] * self.m
        for p, v in entries.items():
            coords[self.pos_index[p]] = v
        return self.from_coords(coords)

    def entry(self, x: int, i: int, j: int) -> int:
        if (i, j) not in self.pos_index:
            return self.base.zero
        return int(self.decode(x)[self.pos_index[(i, j)]])


class TruncatedPolynomialRing(CoordinateRing):
    """base[x]/(x^k), coefficients listed from the constant term up."""

    backend = "truncated-polynomial-over"

    def __init__(self, base: FiniteRing, k: int):
        if k < 1:
            raise AlgebraError("truncation degree must be positive")
        self.k = k
        one = [base.one] + [base.zero] * (k - 1)
        super().__init__(base, k, one, f"{base.label}[x]/(x^{k})")

    def _mul_coords(self, A, B):
        out = np.empty(np.broadcast_shapes(A.shape, B.shape), dtype=np.int32)
        for d in range(self.k):
            acc = None
            for i in range(d + 1):
                prod = self._bmul(A[..., i], B[..., d - i])
                acc = prod if acc is None else self._badd(acc, prod)
            out[..., d] = acc
        return out

    def format(self, x):
        return [self.base.format(v) for v in self.coords(x)]

    def parse(self, obj):
        vals = list(obj)
        if len(vals) != self.k:
            raise AlgebraError(f"expected {self.k} coefficients")
        return self.from_coords([self.base.parse(v) for v in vals])


class ProductRing(FiniteRing):
    backend = "product-of"

    def __init__(self, left: FiniteRing, right: FiniteRing):
        self.left, self.right = left, right
        n2 = right.size
        super().__init__(left.size * n2, left.zero * n2 + right.zero, left.one * n2 + right.one,
                         f"({left.label} x {right.label})")

    def split(self, x):
        x = np.asarray(x, dtype=np.int64)
        return x // self.right.size, x % self.right.size

    def pair(self, a, b):
        return _as_int(np.asarray(a, dtype=np.int64) * self.right.size + np.asarray(b, dtype=np.int64))

    def _add(self, a, b):
        (a1, a2), (b1, b2) = self.split(a), self.split(b)
        return np.asarray(self.left.add(a1, b1)) * self.right.size + self.right.add(a2, b2)

    def _mul(self, a, b):
        (a1, a2), (b1, b2) = self.split(a), self.split(b)
        return np.asarray(self.left.mul(a1, b1)) * self.right.size + self.right.mul(a2, b2)

    def _neg(self, a):
        a1, a2 = self.split(a)
        return np.asarray(self.left.neg(a1)) * self.right.size + self.right.neg(a2)

    def format(self, x):
        a, b = self.split(x)
        return [self.left.format(int(a)), self.right.format(int(b))]

    def parse(self, obj):
        a, b = obj
        return self.pair(self.left.parse(a), self.right.parse(b))


class QuotientRing(FiniteRing):
    """R/I for a two-sided ideal I; each coset is indexed by order of its least member."""

    backend = "quotient-by"

    def __init__(self, parent: FiniteRing, ideal_mask: np.ndarray, label: str | None = None):
        mask = np.asarray(ideal_mask, dtype=bool)
        members = np.flatnonzero(mask)
        coset = np.full(parent.size, -1, dtype=np.int64)
        reps = []
        for x in range(parent.size):
            if coset[x] < 0:
                coset[np.asarray(parent.add(x, members))] = len(reps)
                reps.append(x)
        self.parent = parent
        self.ideal_mask = mask
        self.coset_of = coset
        self.reps = np.array(reps, dtype=np.int64)
        coset.setflags(write=False)
        super().__init__(len(reps), int(coset[parent.zero]), int(coset[parent.one]),
                         label or f"{parent.label}/I{len(members)}")

    def _add(self, a, b):
        return self.coset_of[np.asarray(self.parent.add(self.reps[a], self.reps[b]))]

    def _mul(self, a, b):
        return self.coset_of[np.asarray(self.parent.mul(self.reps[a], self.reps[b]))]

    def _neg(self, a):
        return self.coset_of[np.asarray(self.parent.neg(self.reps[a]))]

    def format(self, x):
        return self.parent.format(int(self.reps[x]))

    def parse(self, obj):
        return int(self.coset_of[self.parent.parse(obj)])


class SubRing(FiniteRing):
    """A subset of a parent ring closed under + and *, with its own identity.

    Used for corner rings fRf (identity f) and degree-e components.
    """

    backend = "subring-of"

    def __init__(self, parent: FiniteRing, mask: np.ndarray, identity: int, label: str):
        mask = np.asarray(mask, dtype=bool)
        self.parent = parent
        self.members = np.flatnonzero(mask)
        self.local = np.full(parent.size, -1, dtype=np.int64)
        self.local[self.members] = np.arange(len(self.members))
        self.local.setflags(write=False)
        if not mask[parent.zero] or not mask[identity]:
            raise AlgebraError("subring must contain zero and its identity")
        super().__init__(len(self.members), int(self.local[parent.zero]), int(self.local[identity]), label)
        for name, op in (("sum", parent.add), ("product", parent.mul)):
            vals = np.asarray(op(self.members[:, None], self.members[None, :]))
            if not mask[vals].all():
                raise AlgebraError(f"subset of {parent.label} is not closed under {name}")

    def lift(self, x):
        return _as_int(self.members[x])

    def _add(self, a, b):
        return self.local[np.asarray(self.parent.add(self.members[a], self.members[b]))]

    def _mul(self, a, b):
        return self.local[np.asarray(self.parent.mul(self.members[a], self.members[b]))]

    def _neg(self, a):
        return self.local[np.asarray(self.parent.neg(self.members[a]))]

    def format(self, x):
        return self.parent.format(int(self.members[x]))

    def parse(self, obj):
        v = int(self.local[self.parent.parse(obj)])
        if v < 0:
            raise AlgebraError("element is not in the subring")
        return v


# -- constructors -------------------------------------------------------------

@functools.lru_cache(maxsize=64)
def ring_zmod(n: int) -> ZModRing:
    return ZModRing(n)


@functools.lru_cache(maxsize=32)
def ring_boolean(k: int) -> BooleanRing:
    return BooleanRing(k)


def zero_ring() -> ZModRing:
    return ring_zmod(1)


@functools.lru_cache(maxsize=16)
def matrix_ring(R: FiniteRing, n: int) -> MatrixRing:
    return MatrixRing(R, n, upper=False)


@functools.lru_cache(maxsize=16)
def triangular_ring(R: FiniteRing, n: int) -> MatrixRing:
    return MatrixRing(R, n, upper=True)


@functools.lru_cache(maxsize=16)
def truncated_polynomial_ring(R: FiniteRing, k: int) -> TruncatedPolynomialRing:
    return TruncatedPolynomialRing(R, k)


@functools.lru_cache(maxsize=16)
def product_ring(R: FiniteRing, S: FiniteRing) -> ProductRing:
    return ProductRing(R, S)


def quotient_ring(R: FiniteRing, ideal_mask: np.ndarray, label: str | None = None) -> QuotientRing:
    return QuotientRing(R, ideal_mask, label)
