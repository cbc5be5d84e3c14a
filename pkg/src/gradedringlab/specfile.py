"""Reader for the ``gradedringlab-spec v1`` text format.

A spec is a header line followed by declarations, one per line::

    gradedringlab-spec v1
    # the C2 checkerboard grading on 2x2 matrices over F2
    group C2 = cyclic(2)
    ring M = matrix(boolean(1), 2)
    grade M by C2 matrix-sigma(e, g)
    expect graded-nil-clean = false

Declarations
    group NAME = cyclic(n) | window(r) | symmetric(n) | trivial
               | table([names], [[row], ...])
    groupoid NAME = matrixunits(n) | upper-matrixunits(n) | group(G)
                  | products([names], [[a, b, ab], ...])
    ring NAME = RING
    grade NAME by GROUP CLAUSE
    target NAME
    expect FLAG = true | false

RING expressions
    zmod(n)  boolean(k)  matrix(R, n)  triangular(R, n)  product(R, R)
    quotient(R, [gens])  groupring(R, G)  subgroupring(R, G, [H])
    truncpoly(R, k)  NAME  @NAME

``NAME`` reuses an earlier ring; ``@NAME`` reuses an earlier *graded* ring,
whose grading then feeds the grading clause of the new ring.

Grading CLAUSEs
    trivial                          everything in the identity component
    matrix-sigma(g1, ..., gn)        for matrix(...) and triangular(...) rings
    groupring-canonical              for groupring(...) and subgroupring(...) rings
    induced                          for product/quotient of graded (@) rings
    components(g = [x, ...], ...)    additive generators of each component
    s-grading(s = [x, ...], ...)     same, over a groupoid

Element literals are JSON-like: integers, nested lists for matrices and
tuples, and ``{"g": 1, ...}`` maps for group-ring elements.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .constructions import GroupRing, graded_direct_product, graded_matrix_ring, graded_subgroup_ring, \
    graded_triangular_ring
from .errors import AlgebraError, SpecError
from .grading import GradedRing, grading_from_generators, quotient_graded, trivial_grading
from .groups import (FiniteGroup, PartialGroupoid, cyclic_group, group_from_table, groupoid_from_group,
                     groupoid_from_products, integer_window, matrix_unit_groupoid, symmetric_group,
                     trivial_group)
from .limits import check_size
from .rings import (FiniteRing, MatrixRing, matrix_ring, product_ring, quotient_ring, ring_boolean, ring_zmod,
                    triangular_ring, truncated_polynomial_ring)
from .structure import ideal_generated

HEADER = "gradedringlab-spec v1"

_TOKEN = re.compile(r"""
    (?P<ws>[ \t]+)
  | (?P<num>-?\d+)
  | (?P<str>"[^"]*")
  | (?P<ident>[A-Za-z_][A-Za-z0-9_\-]*)
  | (?P<punct>[()\[\]{},:=@*])
""", re.VERBOSE)


@dataclass(frozen=True)
class Tok:
    kind: str
    text: str
    col: int


@dataclass
class Call:
    name: str
    args: list
    kwargs: dict
    col: int


@dataclass
class Ref:
    name: str
    graded: bool
    col: int


def _tokenize(text: str, line: int) -> list[Tok]:
    toks, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise SpecError(f"unexpected character {text[pos]!r}", line, pos + 1)
        kind = m.lastgroup
        if kind != "ws":
            toks.append(Tok(kind, m.group(), pos + 1))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, toks: list[Tok], line: int, width: int):
        self.toks, self.i, self.line, self.width = toks, 0, line, width

    def peek(self) -> Tok | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def error(self, msg: str, tok: Tok | None = None):
        tok = tok or self.peek()
        raise SpecError(msg, self.line, tok.col if tok else self.width + 1)

    def take(self, text: str | None = None, kind: str | None = None) -> Tok:
        tok = self.peek()
        if tok is None or (text is not None and tok.text != text) or (kind is not None and tok.kind != kind):
            want = repr(text) if text else kind
            self.error(f"expected {want}, found {tok.text if tok else 'end of line'!r}")
        self.i += 1
        return tok

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.text == text

    def done(self):
        if self.peek() is not None:
            self.error(f"unexpected {self.peek().text!r}")

    def value(self):
        tok = self.peek()
        if tok is None:
            self.error("expected a value")
        if tok.kind == "num":
            self.i += 1
            return int(tok.text)
        if tok.kind == "str":
            self.i += 1
            return tok.text[1:-1]
        if tok.text == "@":
            self.i += 1
            name = self.take(kind="ident")
            return Ref(name.text, True, tok.col)
        if tok.text == "[":
            self.i += 1
            items = []
            while not self.at("]"):
                items.append(self.value())
                if not self.at("]"):
                    self.take(",")
            self.take("]")
            return items
        if tok.text == "{":
            self.i += 1
            out = {}
            while not self.at("}"):
                key = self.take()
                if key.kind not in ("str", "ident", "num"):
                    self.error("expected a key", key)
                self.take(":")
                out[key.text.strip('"')] = self.value()
                if not self.at("}"):
                    self.take(",")
            self.take("}")
            return out
        if tok.kind == "ident":
            self.i += 1
            if not self.at("("):
                return Ref(tok.text, False, tok.col)
            self.take("(")
            args, kwargs = [], {}
            while not self.at(")"):
                nxt = self.toks[self.i + 1] if self.i + 1 < len(self.toks) else None
                if self.peek().kind in ("ident", "num", "str") and nxt is not None and nxt.text == "=":
                    key = self.take().text.strip('"')
                    self.take("=")
                    kwargs[key] = self.value()
                else:
                    args.append(self.value())
                if not self.at(")"):
                    self.take(",")
            self.take(")")
            return Call(tok.text, args, kwargs, tok.col)
        self.error(f"unexpected {tok.text!r}")


def _plain(v) -> Any:
    """Strip parser nodes from an element literal."""
    if isinstance(v, Ref):
        return v.name
    if isinstance(v, list):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {k: _plain(x) for k, x in v.items()}
    if isinstance(v, Call):
        raise AlgebraError(f"{v.name}(...) is not an element literal")
    return v


@dataclass
class Spec:
    groups: dict[str, FiniteGroup | PartialGroupoid] = field(default_factory=dict)
    rings: dict[str, FiniteRing] = field(default_factory=dict)
    graded: dict[str, GradedRing] = field(default_factory=dict)
    # for each ring name, the graded base it was built over (from an @ reference), if any
    bases: dict[str, GradedRing] = field(default_factory=dict)
    expect: dict[str, bool] = field(default_factory=dict)
    target_name: str | None = None
    text: str = ""

    @property
    def target(self) -> GradedRing:
        if self.target_name is None:
            raise AlgebraError("spec declares no graded ring")
        return self.graded[self.target_name]


class _Interpreter:
    def __init__(self):
        self.spec = Spec()
        self.line = 0

    def fail(self, msg: str, col: int):
        raise SpecError(msg, self.line, col)

    def int_arg(self, v, col: int, what: str) -> int:
        if not isinstance(v, int):
            self.fail(f"{what} must be an integer", col)
        return v

    def group(self, name: str, col: int, kinds=(FiniteGroup,)):
        obj = self.spec.groups.get(name)
        if obj is None or not isinstance(obj, kinds):
            self.fail(f"unknown group {name!r}", col)
        return obj

    # -- groups ------------------------------------------------------------------------

    def build_group(self, node) -> FiniteGroup:
        if isinstance(node, Ref) and node.name == "trivial":
            return trivial_group()
        if not isinstance(node, Call):
            self.fail("expected a group constructor", getattr(node, "col", 1))
        a = node.args
        if node.name == "cyclic" and len(a) == 1:
            return cyclic_group(self.int_arg(a[0], node.col, "order"))
        if node.name == "window" and len(a) == 1:
            return integer_window(self.int_arg(a[0], node.col, "radius"))
        if node.name == "symmetric" and len(a) == 1:
            return symmetric_group(self.int_arg(a[0], node.col, "degree"))
        if node.name == "table" and len(a) == 2:
            names = [str(x) for x in _plain(a[0])]
            return group_from_table(names, [[str(x) for x in r] for r in _plain(a[1])])
        self.fail(f"unknown group constructor {node.name}/{len(a)}", node.col)

    def build_groupoid(self, node) -> PartialGroupoid:
        if not isinstance(node, Call):
            self.fail("expected a groupoid constructor", getattr(node, "col", 1))
        a = node.args
        if node.name in ("matrixunits", "upper-matrixunits") and len(a) == 1:
            return matrix_unit_groupoid(self.int_arg(a[0], node.col, "size"), node.name.startswith("upper"))
        if node.name == "group" and len(a) == 1 and isinstance(a[0], Ref):
            return groupoid_from_group(self.group(a[0].name, a[0].col))
        if node.name == "products" and len(a) == 2:
            names = [str(x) for x in _plain(a[0])]
            triples = [tuple(str(x) for x in t) for t in _plain(a[1])]
            return groupoid_from_products(names, triples)
        self.fail(f"unknown groupoid constructor {node.name}/{len(a)}", node.col)

    # -- rings -------------------------------------------------------------------------

    def ring_ref(self, node) -> tuple[FiniteRing, GradedRing | None]:
        """A ring operand, plus its grading when written as @NAME."""
        if isinstance(node, Ref):
            if node.graded:
                if node.name not in self.spec.graded:
                    self.fail(f"ring {node.name!r} has no grading yet", node.col)
                GR = self.spec.graded[node.name]
                return GR.ring, GR
            if node.name not in self.spec.rings:
                self.fail(f"unknown ring {node.name!r}", node.col)
            return self.spec.rings[node.name], None
        ring, build = self.build_ring(node)
        if isinstance(build, tuple) and build[0] in ("groupring", "quotient"):
            return ring, build[1]
        return ring, None

    def build_ring(self, node) -> tuple[FiniteRing, Any]:
        """Returns the ring and construction data used by grading clauses."""
        if isinstance(node, Ref):
            return self.ring_ref(node)
        if not isinstance(node, Call):
            self.fail("expected a ring constructor", 1)
        a, name = node.args, node.name
        if name == "zmod" and len(a) == 1:
            return ring_zmod(self.int_arg(a[0], node.col, "modulus")), None
        if name == "boolean" and len(a) == 1:
            return ring_boolean(self.int_arg(a[0], node.col, "rank")), None
        if name in ("matrix", "triangular") and len(a) == 2:
            base, gbase = self.ring_ref(a[0])
            n = self.int_arg(a[1], node.col, "size")
            m = n * n if name == "matrix" else n * (n + 1) // 2
            check_size(base.size ** m, f"{name}({base.label}, {n})")
            ring = matrix_ring(base, n) if name == "matrix" else triangular_ring(base, n)
            return ring, ("matrix", gbase, n)
        if name == "truncpoly" and len(a) == 2:
            base, _ = self.ring_ref(a[0])
            k = self.int_arg(a[1], node.col, "degree")
            check_size(base.size ** k, f"truncpoly({base.label}, {k})")
            return truncated_polynomial_ring(base, k), None
        if name == "product" and len(a) == 2:
            (r1, g1), (r2, g2) = self.ring_ref(a[0]), self.ring_ref(a[1])
            check_size(r1.size * r2.size, "product")
            return product_ring(r1, r2), ("product", g1, g2)
        if name == "quotient" and len(a) == 2:
            base, gbase = self.ring_ref(a[0])
            gens = [base.parse(_plain(x)) for x in a[1]]
            ideal = ideal_generated(base, gens, "two-sided-ideal")
            if gbase is not None:
                GQ = quotient_graded(gbase, ideal).graded
                return GQ.ring, ("quotient", GQ)
            return quotient_ring(base, ideal.mask), None
        if name in ("groupring", "subgroupring") and len(a) in (2, 3):
            base, gbase = self.ring_ref(a[0])
            if not isinstance(a[1], Ref):
                self.fail("expected a group name", node.col)
            G = self.group(a[1].name, a[1].col)
            if gbase is None:
                gbase = trivial_grading(base, G)
            elif gbase.group is not G:
                self.fail("base ring is graded by a different group", a[1].col)
            H = list(range(G.order))
            if name == "subgroupring":
                if len(a) != 3:
                    self.fail("subgroupring needs a subgroup list", node.col)
                H = [G.index(str(x)) for x in _plain(a[2])]
            check_size(base.size ** len(H), name)
            GR = graded_subgroup_ring(gbase, H)
            return GR.ring, ("groupring", GR)
        self.fail(f"unknown ring constructor {name}/{len(a)}", node.col)

    # -- gradings ----------------------------------------------------------------------

    def grade(self, rname: str, gname: Tok, clause, build: Any):
        spec = self.spec
        ring = spec.rings.get(rname)
        col = getattr(clause, "col", 1)
        kind = clause.name if isinstance(clause, (Call, Ref)) else None
        if kind in ("s-grading",):
            S = self.group(gname.text, gname.col, (PartialGroupoid, FiniteGroup))
        else:
            S = self.group(gname.text, gname.col)
        if kind == "trivial":
            return trivial_grading(ring, S)
        if kind == "matrix-sigma":
            if not (isinstance(build, tuple) and build[0] == "matrix"):
                self.fail("matrix-sigma needs a matrix(...) or triangular(...) ring", col)
            _, gbase, n = build
            base = gbase if gbase is not None else trivial_grading(ring.base, S)
            if base.group is not S:
                self.fail("base grading uses a different group", gname.col)
            sigma = [S.index(str(x)) for x in _plain(clause.args)]
            if len(sigma) != n:
                self.fail(f"sigma needs {n} entries", col)
            fn = graded_triangular_ring if ring.upper else graded_matrix_ring
            return fn(base, n, sigma)
        if kind == "groupring-canonical":
            if not (isinstance(build, tuple) and build[0] == "groupring"):
                self.fail("groupring-canonical needs a groupring(...) ring", col)
            GR = build[1]
            if GR.group is not S:
                self.fail("group ring was built over a different group", gname.col)
            return GR
        if kind == "induced":
            if isinstance(build, tuple) and build[0] == "product" and build[1] is not None \
                    and build[2] is not None:
                return graded_direct_product(build[1], build[2])
            if isinstance(build, tuple) and build[0] == "quotient":
                if build[1].group is not S:
                    self.fail("quotient was graded by a different group", gname.col)
                return build[1]
            self.fail("induced grading needs product(@A, @B) or quotient(@A, ...)", col)
        if kind in ("components", "s-grading"):
            gens = [[] for _ in range(S.order)]
            for key, vals in clause.kwargs.items():
                try:
                    g = S.index(key)
                except AlgebraError:
                    self.fail(f"unknown grading element {key!r}", col)
                if not isinstance(vals, list):
                    self.fail(f"component {key} needs a list of elements", col)
                gens[g] = [ring.parse(_plain(v)) for v in vals]
            if kind == "components" and not isinstance(S, FiniteGroup):
                self.fail("components(...) needs a group; use s-grading(...) for groupoids", col)
            return grading_from_generators(ring, S, gens)
        self.fail(f"unknown grading clause {kind!r}", col)


def parse_spec(text: str) -> Spec:
    """Parse and build everything a spec declares; errors carry line and column."""
    it = _Interpreter()
    it.spec.text = text
    lines = text.splitlines()
    seen_header = False
    builds: dict[str, Any] = {}
    for lineno, raw in enumerate(lines, start=1):
        it.line = lineno
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if not seen_header:
            if line.strip() != HEADER:
                raise SpecError(f"first line must be {HEADER!r}", lineno, 1)
            seen_header = True
            continue
        toks = _tokenize(line, lineno)
        p = _Parser(toks, lineno, len(line))
        head = p.take(kind="ident")
        try:
            if head.text in ("group", "groupoid"):
                name = p.take(kind="ident")
                p.take("=")
                node = p.value()
                p.done()
                obj = it.build_group(node) if head.text == "group" else it.build_groupoid(node)
                it.spec.groups[name.text] = obj
            elif head.text == "ring":
                name = p.take(kind="ident")
                p.take("=")
                node = p.value()
                p.done()
                ring, build = it.build_ring(node)
                if isinstance(node, Ref) and node.graded:
                    it.spec.graded[name.text] = it.spec.graded[node.name]
                    it.spec.target_name = name.text
                it.spec.rings[name.text] = ring
                builds[name.text] = build
            elif head.text == "grade":
                name = p.take(kind="ident")
                if name.text not in it.spec.rings:
                    raise SpecError(f"unknown ring {name.text!r}", lineno, name.col)
                p.take("by")
                gname = p.take(kind="ident")
                clause = p.value()
                p.done()
                GR = it.grade(name.text, gname, clause, builds.get(name.text))
                it.spec.graded[name.text] = GR
                it.spec.target_name = name.text
            elif head.text == "target":
                name = p.take(kind="ident")
                p.done()
                if name.text not in it.spec.graded:
                    raise SpecError(f"ring {name.text!r} has no grading", lineno, name.col)
                it.spec.target_name = name.text
            elif head.text == "expect":
                flag = p.take(kind="ident")
                p.take("=")
                val = p.take(kind="ident")
                p.done()
                if val.text not in ("true", "false"):
                    raise SpecError("expected true or false", lineno, val.col)
                it.spec.expect[flag.text] = val.text == "true"
            else:
                raise SpecError(f"unknown declaration {head.text!r}", lineno, head.col)
        except SpecError:
            raise
        except AlgebraError:
            # construction and verification errors keep their own type and witness
            raise
        except (ValueError, KeyError, TypeError, IndexError) as exc:
            raise SpecError(str(exc), lineno, head.col) from None
    if not seen_header:
        raise SpecError(f"first line must be {HEADER!r}", 1, 1)
    return it.spec


def load_spec(path: str) -> Spec:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())
