"""Brute-force reference implementations used to freeze expected values.

These only touch a ring through ``add``/``mul`` on single indices and never
call the classification, ideal, cleanness or radical code under test.
"""

from __future__ import annotations

import itertools


def elements(R):
    return range(R.size)


def is_idempotent(R, x):
    return R.mul(x, x) == x


def is_nilpotent(R, x):
    p = x
    for _ in range(R.size + 1):
        if p == R.zero:
            return True
        p = R.mul(p, x)
    return False


def is_unit(R, x):
    return any(R.mul(x, y) == R.one and R.mul(y, x) == R.one for y in elements(R))


def sub(R, a, b):
    for c in elements(R):
        if R.add(b, c) == a:
            return c
    raise AssertionError("no difference")


def idempotents(R):
    return [x for x in elements(R) if is_idempotent(R, x)]


def nilpotents(R):
    return [x for x in elements(R) if is_nilpotent(R, x)]


def units(R):
    return [x for x in elements(R) if is_unit(R, x)]


def jacobson(R):
    """x in J(R) iff 1 - x*y is a unit for every y."""
    u = set(units(R))
    return [x for x in elements(R) if all(sub(R, R.one, R.mul(x, y)) in u for y in elements(R))]


def two_sided_ideal(R, gens):
    """Closure of gens under +, left and right multiplication."""
    S = {R.zero} | set(gens)
    while True:
        new = set(S)
        for a in S:
            for b in S:
                new.add(R.add(a, b))
            for r in elements(R):
                new.add(R.mul(r, a))
                new.add(R.mul(a, r))
        if new == S:
            return sorted(S)
        S = new


def homogeneous(GR):
    return [x for x in elements(GR.ring) if GR.homogeneous[x]]


def same_component(GR, a, b):
    """a and b lie in a common component (zero lies in all)."""
    return any(GR.masks[g][a] and GR.masks[g][b] for g in range(GR.group.order))


def graded_nil_clean_elements(GR, strongly=False):
    """Homogeneous x = f + b, f a homogeneous idempotent, b a homogeneous nilpotent."""
    R = GR.ring
    hom = homogeneous(GR)
    idem = [f for f in hom if is_idempotent(R, f)]
    nil = {b for b in hom if is_nilpotent(R, b)}
    ok = []
    for x in hom:
        for f in idem:
            b = sub(R, x, f)
            if b in nil and (not strongly or R.mul(f, b) == R.mul(b, f)):
                ok.append(x)
                break
    return ok


def is_graded_nil_clean(GR, strongly=False):
    return len(graded_nil_clean_elements(GR, strongly)) == len(homogeneous(GR))


def is_graded_clean(GR):
    R = GR.ring
    hom = homogeneous(GR)
    idem = [f for f in hom if is_idempotent(R, f)]
    unit = {u for u in hom if is_unit(R, u)}
    return all(any(sub(R, x, f) in unit for f in idem) for x in hom)


def is_nil_clean(R, members=None, one=None):
    """Plain nil cleanness of R, or of the subring on ``members`` with identity ``one``."""
    members = list(elements(R)) if members is None else list(members)
    one = R.one if one is None else one
    idem = [f for f in members if R.mul(f, f) == f]

    def nil(b):
        p = b
        for _ in range(len(members) + 1):
            if p == R.zero:
                return True
            p = R.mul(p, b)
        return False
    ms = set(members)
    return all(any(sub(R, x, f) in ms and nil(sub(R, x, f)) for f in idem) for x in members)


def graded_radical(GR):
    """Homogeneous x of degree g is in J^g iff 1 - x*r is a unit for every r in R_{g^-1};
    J^g is the additive span of those elements."""
    R, G = GR.ring, GR.group
    u = set(units(R))
    good = []
    for g in range(G.order):
        comp = [x for x in elements(R) if GR.masks[g][x]]
        inv = [x for x in elements(R) if GR.masks[int(G.inv[g])][x]]
        good += [x for x in comp if all(sub(R, R.one, R.mul(x, r)) in u for r in inv)]
    S = {R.zero} | set(good)
    while True:
        new = S | {R.add(a, b) for a in S for b in S}
        if new == S:
            return sorted(S)
        S = new


def additive_subgroups(R):
    """All subsets closed under addition and containing zero, by exhaustion over
    subsets of the allowed orders."""
    n = R.size
    out = []
    sizes = [k for k in range(1, n + 1) if n % k == 0]
    others = [x for x in elements(R) if x != R.zero]
    for k in sizes:
        for combo in itertools.combinations(others, k - 1):
            S = {R.zero, *combo}
            if all(R.add(a, b) in S for a in S for b in S):
                out.append(frozenset(S))
    return out


def gradings(R, G):
    """All G-gradings of R as tuples of frozensets, by exhaustion over subgroup tuples."""
    subs = additive_subgroups(R)
    found = []
    for comps in itertools.product(subs, repeat=G.order):
        if R.one not in comps[G.identity]:
            continue
        size = 1
        for c in comps:
            size *= len(c)
        if size != R.size:
            continue
        sums = {R.zero}
        for c in comps:
            sums = {R.add(a, b) for a in sums for b in c}
        if len(sums) != R.size:
            continue
        if all(R.mul(a, b) in comps[G.op(g, h)]
               for g in range(G.order) for h in range(G.order) for a in comps[g] for b in comps[h]):
            found.append(comps)
    return found
