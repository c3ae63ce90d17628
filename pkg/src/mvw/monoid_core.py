"""Finite monoids given by multiplication tables, and Green's relations R and L.

Elements are dense integer indices ``0 .. size-1``; ``table[x][y]`` is the
product ``x*y`` (row = left factor).  All algebra reduces to table lookups.
"""

from __future__ import annotations

import enum
import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    AssociativityViolation,
    CapExceeded,
    FormatError,
    IdentityViolation,
    RangeError,
    SizeBudgetExceeded,
)

PRODUCT_CAP = 4096
TRANSFORMATION_CAP = 4096
DIVISION_CAP = 10
ENUMERATION_CAP = 4


@dataclass(frozen=True)
class FiniteMonoid:
    """An immutable monoid table.

    The constructor trusts its input; use :func:`make_from_table` for
    anything that did not come out of a construction which is associative
    by design (products, transformation closures, quotients).
    """

    table: tuple[tuple[int, ...], ...]
    identity: int = 0
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return len(self.table)

    def __iter__(self):
        return iter(range(len(self.table)))

    def __repr__(self) -> str:
        return f"FiniteMonoid(size={self.size}, identity={self.identity})"

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def product(self, elements: Iterable[int]) -> int:
        acc = self.identity
        for x in elements:
            acc = self.table[acc][x]
        return acc

    def label(self, x: int) -> str:
        if self.labels is not None:
            return self.labels[x]
        return str(x)

    def index(self, name: str | int) -> int:
        """Resolve a label (or a decimal index) to an element index."""
        if isinstance(name, int):
            if not 0 <= name < self.size:
                raise RangeError(f"element {name} out of range for size {self.size}")
            return name
        if self.labels is not None and name in self.labels:
            return self.labels.index(name)
        if name.isdigit() and int(name) < self.size:
            return int(name)
        raise RangeError(f"unknown element {name!r}")

    def is_idempotent(self, x: int) -> bool:
        return self.table[x][x] == x

    @cached_property
    def idempotents(self) -> tuple[int, ...]:
        return tuple(x for x in self if self.table[x][x] == x)

    @cached_property
    def _omega(self) -> tuple[int, ...]:
        return tuple(_cycle_idempotent(self, x) for x in self)

    @cached_property
    def _green(self) -> GreenSummary:
        return _compute_green(self)

    def to_dict(self) -> dict:
        out = {"size": self.size, "identity": self.identity, "table": [list(r) for r in self.table]}
        if self.labels is not None:
            out["labels"] = list(self.labels)
        return out


# ---------------------------------------------------------------- construction


def make_from_table(table: Sequence[Sequence[int]], identity: int = 0,
                    labels: Sequence[str] | None = None) -> FiniteMonoid:
    """Validate ``table`` eagerly and wrap it as a monoid.

    Raises RangeError for a malformed table, IdentityViolation when
    ``identity`` is not a two-sided unit and AssociativityViolation with
    the first offending triple (lexicographic order).
    """
    n = len(table)
    if n == 0:
        raise RangeError("a monoid needs at least one element")
    rows = []
    for i, row in enumerate(table):
        row = tuple(row)
        if len(row) != n:
            raise RangeError(f"row {i} has length {len(row)}, expected {n}")
        for v in row:
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise RangeError(f"entry {v!r} in row {i} out of range")
        rows.append(row)
    if not isinstance(identity, int) or not 0 <= identity < n:
        raise RangeError(f"identity {identity!r} out of range")
    if labels is not None:
        labels = tuple(str(s) for s in labels)
        if len(labels) != n:
            raise RangeError(f"expected {n} labels, got {len(labels)}")
        if len(set(labels)) != n:
            raise RangeError("labels must be distinct")
    for x in range(n):
        if rows[identity][x] != x or rows[x][identity] != x:
            raise IdentityViolation(f"element {identity} is not an identity (fails at {x})")
    for x in range(n):
        rx = rows[x]
        for y in range(n):
            xy = rx[y]
            rxy = rows[xy]
            ry = rows[y]
            for z in range(n):
                if rxy[z] != rx[ry[z]]:
                    raise AssociativityViolation(x, y, z)
    return FiniteMonoid(tuple(rows), identity, labels)


def _default_names(count: int) -> list[str]:
    if count <= 26:
        return [chr(ord("a") + i) for i in range(count)]
    return [f"g{i}" for i in range(count)]


def make_from_transformations(points: int, generators: Sequence[Sequence[int]],
                              cap: int = TRANSFORMATION_CAP,
                              names: Sequence[str] | None = None) -> tuple[FiniteMonoid, list[int]]:
    """Close ``generators`` (plus the identity map) under composition.

    Maps act on the right: the product ``f*g`` applies ``f`` first, then
    ``g``, which is the convention of automaton transition monoids.
    Element 0 is the identity map; the others appear in breadth-first order
    and are labelled by the shortlex-least generator word reaching them.
    Returns the monoid and, per generator, its element index.
    """
    if points < 1:
        raise RangeError("points must be positive")
    gens = []
    for g in generators:
        g = tuple(g)
        if len(g) != points or any(not 0 <= v < points for v in g):
            raise RangeError(f"generator {list(g)} is not a total map on {points} points")
        gens.append(g)
    names = list(names) if names is not None else _default_names(len(gens))

    ident = tuple(range(points))
    index = {ident: 0}
    elements = [ident]
    words = [""]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        f = elements[i]
        for gi, g in enumerate(gens):
            h = tuple(g[q] for q in f)
            if h not in index:
                if len(elements) >= cap:
                    raise SizeBudgetExceeded(f"transformation closure exceeds {cap} elements",
                                             found=len(elements))
                index[h] = len(elements)
                elements.append(h)
                words.append(words[i] + names[gi])
                queue.append(index[h])
    table = tuple(
        tuple(index[tuple(g[q] for q in f)] for g in elements) for f in elements
    )
    labels = tuple(w or "1" for w in words)
    if len(set(labels)) != len(labels):
        labels = None
    embedding = [index[g] for g in gens]
    return FiniteMonoid(table, 0, labels), embedding


def transformations_of(m: FiniteMonoid) -> list[tuple[int, ...]]:
    """Right regular representation: element x acts by y -> y*x."""
    return [tuple(m.table[y][x] for y in m) for x in m]


# ---------------------------------------------------------------- arithmetic


def _check(m: FiniteMonoid, *xs: int) -> None:
    for x in xs:
        if not isinstance(x, int) or not 0 <= x < m.size:
            raise RangeError(f"{x!r} is not an element of a monoid of size {m.size}")


def multiply(m: FiniteMonoid, x: int, y: int) -> int:
    _check(m, x, y)
    return m.table[x][y]


def power(m: FiniteMonoid, x: int, k: int) -> int:
    _check(m, x)
    if k < 0:
        raise ValueError("exponent must be nonnegative")
    acc, base = m.identity, x
    while k:
        if k & 1:
            acc = m.table[acc][base]
        base = m.table[base][base]
        k >>= 1
    return acc


def _cycle_idempotent(m: FiniteMonoid, x: int) -> int:
    seen = {}
    powers = []
    p = x
    while p not in seen:
        seen[p] = len(powers)
        powers.append(p)
        p = m.table[p][x]
    for q in powers[seen[p]:]:
        if m.table[q][q] == q:
            return q
    raise AssertionError("cycle without idempotent")  # impossible in a finite monoid


def idempotent_power(m: FiniteMonoid, x: int) -> int:
    """The unique idempotent among x, x^2, x^3, ... (the omega power)."""
    _check(m, x)
    return m._omega[x]


def index_and_period(m: FiniteMonoid, x: int) -> tuple[int, int]:
    """Smallest i, p >= 1 with x^(i+p) = x^i."""
    seen = {}
    p, k = x, 1
    while p not in seen:
        seen[p] = k
        p = m.table[p][x]
        k += 1
    return seen[p], k - seen[p]


def is_aperiodic(m: FiniteMonoid) -> bool:
    return all(index_and_period(m, x)[1] == 1 for x in m)


# ---------------------------------------------------------------- Green's relations


@dataclass(frozen=True)
class GreenSummary:
    r_classes: tuple[tuple[int, ...], ...]
    l_classes: tuple[tuple[int, ...], ...]
    r_ideals: tuple[frozenset, ...]
    l_ideals: tuple[frozenset, ...]
    r_class_of: tuple[int, ...]
    l_class_of: tuple[int, ...]

    def r_equivalent(self, x: int, y: int) -> bool:
        return self.r_class_of[x] == self.r_class_of[y]

    def l_equivalent(self, x: int, y: int) -> bool:
        return self.l_class_of[x] == self.l_class_of[y]


def _partition(ideals):
    blocks: dict[frozenset, list[int]] = {}
    for x, ideal in enumerate(ideals):
        blocks.setdefault(ideal, []).append(x)
    classes = tuple(tuple(b) for b in blocks.values())
    class_of = [0] * len(ideals)
    for i, block in enumerate(classes):
        for x in block:
            class_of[x] = i
    return classes, tuple(class_of)


def _compute_green(m: FiniteMonoid) -> GreenSummary:
    r_ideals = tuple(frozenset(m.table[x]) for x in m)
    l_ideals = tuple(frozenset(m.table[y][x] for y in m) for x in m)
    r_classes, r_of = _partition(r_ideals)
    l_classes, l_of = _partition(l_ideals)
    return GreenSummary(r_classes, l_classes, r_ideals, l_ideals, r_of, l_of)


def green(m: FiniteMonoid) -> GreenSummary:
    return m._green


class Order(enum.Enum):
    SAME = "same-class"
    U_BELOW = "u-strictly-below"
    V_BELOW = "v-strictly-below"
    INCOMPARABLE = "incomparable"


def _compare(a: frozenset, b: frozenset) -> Order:
    if a == b:
        return Order.SAME
    if a < b:
        return Order.U_BELOW
    if b < a:
        return Order.V_BELOW
    return Order.INCOMPARABLE


def r_compare(m: FiniteMonoid, u: int, v: int) -> Order:
    _check(m, u, v)
    g = m._green
    return _compare(g.r_ideals[u], g.r_ideals[v])


def l_compare(m: FiniteMonoid, u: int, v: int) -> Order:
    _check(m, u, v)
    g = m._green
    return _compare(g.l_ideals[u], g.l_ideals[v])


def is_r_trivial(m: FiniteMonoid) -> bool:
    return len(m._green.r_classes) == m.size


def is_l_trivial(m: FiniteMonoid) -> bool:
    return len(m._green.l_classes) == m.size


# ---------------------------------------------------------------- products


def pair_index(m2: FiniteMonoid | int, x1: int, x2: int) -> int:
    n2 = m2 if isinstance(m2, int) else m2.size
    return x1 * n2 + x2


def unpair_index(m2: FiniteMonoid | int, k: int) -> tuple[int, int]:
    n2 = m2 if isinstance(m2, int) else m2.size
    return divmod(k, n2)


def direct_product(m1: FiniteMonoid, m2: FiniteMonoid, cap: int = PRODUCT_CAP) -> FiniteMonoid:
    """Componentwise product; element (x1, x2) has index ``pair_index(m2, x1, x2)``."""
    n1, n2 = m1.size, m2.size
    if n1 * n2 > cap:
        raise SizeBudgetExceeded(f"product of sizes {n1} and {n2} exceeds {cap}")
    t1, t2 = m1.table, m2.table
    table = tuple(
        tuple(t1[x1][y1] * n2 + t2[x2][y2] for y1 in range(n1) for y2 in range(n2))
        for x1 in range(n1) for x2 in range(n2)
    )
    labels = tuple(f"({m1.label(x1)},{m2.label(x2)})" for x1 in range(n1) for x2 in range(n2))
    return FiniteMonoid(table, pair_index(n2, m1.identity, m2.identity), labels)


def submonoid_generated(m: FiniteMonoid, gens: Iterable[int]) -> frozenset:
    gens = list(gens)
    seen = {m.identity}
    queue = deque([m.identity])
    while queue:
        s = queue.popleft()
        for g in gens:
            t = m.table[s][g]
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return frozenset(seen)


def generating_set(m: FiniteMonoid, elements: Iterable[int] | None = None) -> list[int]:
    """Greedy irredundant generating set of the submonoid on ``elements`` (default: all of m)."""
    pool = sorted(elements) if elements is not None else list(m)
    gens: list[int] = []
    span = frozenset([m.identity])
    for x in pool:
        if x not in span:
            gens.append(x)
            span = submonoid_generated(m, gens)
    changed = True
    while changed:
        changed = False
        for g in list(gens):
            rest = [h for h in gens if h != g]
            if g in submonoid_generated(m, rest):
                gens = rest
                changed = True
                break
    return gens


# ---------------------------------------------------------------- isomorphism


def _invariants(m: FiniteMonoid, x: int):
    g = m._green
    return (
        x == m.identity,
        m.is_idempotent(x),
        index_and_period(m, x),
        len(g.r_ideals[x]),
        len(g.l_ideals[x]),
        sum(1 for y in m if m.table[x][y] == y),
        sum(1 for y in m if m.table[y][x] == y),
    )


def find_isomorphism(m1: FiniteMonoid, m2: FiniteMonoid) -> list[int] | None:
    """A bijection ``f`` (as a list) with f(xy) = f(x)f(y), or None."""
    n = m1.size
    if n != m2.size or len(m1.idempotents) != len(m2.idempotents):
        return None
    inv1 = [_invariants(m1, x) for x in m1]
    inv2 = [_invariants(m2, x) for x in m2]
    if sorted(inv1) != sorted(inv2):
        return None
    candidates = [[y for y in m2 if inv2[y] == inv1[x]] for x in m1]
    order = sorted(range(n), key=lambda x: len(candidates[x]))
    f = [-1] * n
    used = [False] * n
    t1, t2 = m1.table, m2.table

    def consistent(x: int) -> bool:
        fx = f[x]
        for y in range(n):
            fy = f[y]
            if fy < 0:
                continue
            p = f[t1[x][y]]
            if p >= 0 and p != t2[fx][fy]:
                return False
            q = f[t1[y][x]]
            if q >= 0 and q != t2[fy][fx]:
                return False
        return True

    def search(depth: int) -> bool:
        if depth == n:
            return True
        x = order[depth]
        for y in candidates[x]:
            if used[y]:
                continue
            f[x] = y
            used[y] = True
            if consistent(x) and search(depth + 1):
                return True
            f[x] = -1
            used[y] = False
        return False

    return list(f) if search(0) else None


def are_isomorphic(m1: FiniteMonoid, m2: FiniteMonoid) -> bool:
    return find_isomorphism(m1, m2) is not None


def canonical_table(m: FiniteMonoid) -> tuple[tuple[int, ...], ...]:
    """Lexicographically least relabelling with the identity sent to 0.

    Brute force over permutations of the non-identity elements, so only
    meant for the tiny orders handled by :func:`enumerate_monoids`.
    """
    n = m.size
    others = [x for x in m if x != m.identity]
    best = None
    for perm in itertools.permutations(range(1, n)):
        relabel = [0] * n
        relabel[m.identity] = 0
        for x, y in zip(others, perm):
            relabel[x] = y
        back = [0] * n
        for x in range(n):
            back[relabel[x]] = x
        t = tuple(tuple(relabel[m.table[back[i]][back[j]]] for j in range(n)) for i in range(n))
        if best is None or t < best:
            best = t
    return best


# ---------------------------------------------------------------- enumeration


def _enumerate_tables(n: int):
    """Yield every associative table on 0..n-1 with identity 0."""
    t = [[None] * n for _ in range(n)]
    for x in range(n):
        t[0][x] = x
        t[x][0] = x
    cells = [(x, y) for x in range(1, n) for y in range(1, n)]

    def assoc_ok() -> bool:
        for a in range(1, n):
            ra = t[a]
            for b in range(1, n):
                ab = ra[b]
                if ab is None:
                    continue
                rab = t[ab]
                rb = t[b]
                for c in range(1, n):
                    left = rab[c]
                    bc = rb[c]
                    if left is None or bc is None:
                        continue
                    right = ra[bc]
                    if right is not None and right != left:
                        return False
        return True

    def fill(k: int):
        if k == len(cells):
            yield tuple(tuple(row) for row in t)
            return
        x, y = cells[k]
        for v in range(n):
            t[x][y] = v
            if assoc_ok():
                yield from fill(k + 1)
        t[x][y] = None

    yield from fill(0)


def enumerate_monoids(order: int, cap: int = ENUMERATION_CAP) -> list[FiniteMonoid]:
    """All monoids of the given order up to isomorphism (duals counted separately).

    Results are sorted by canonical table, so the output is deterministic.
    """
    if order < 1:
        raise ValueError("order must be positive")
    if order > cap:
        raise CapExceeded(f"order {order} exceeds enumeration cap {cap}")
    seen = set()
    for table in _enumerate_tables(order):
        seen.add(canonical_table(FiniteMonoid(table, 0)))
    return [make_from_table(t, 0) for t in sorted(seen)]


# ---------------------------------------------------------------- division


@dataclass(frozen=True)
class DivisionWitness:
    submonoid: tuple[int, ...]
    homomorphism: dict


def _closed_submonoids(n: FiniteMonoid):
    others = [x for x in n if x != n.identity]
    for size in range(0, len(others) + 1):
        for combo in itertools.combinations(others, size):
            s = frozenset(combo) | {n.identity}
            if all(n.table[x][y] in s for x in s for y in s):
                yield tuple(sorted(s))


def _surjections(sub: tuple[int, ...], n: FiniteMonoid, m: FiniteMonoid):
    gens = generating_set(n, sub)
    for images in itertools.product(range(m.size), repeat=len(gens)):
        if any(n.is_idempotent(g) and not m.is_idempotent(im) for g, im in zip(gens, images)):
            continue
        f = {n.identity: m.identity}
        queue = deque([n.identity])
        ok = True
        while queue and ok:
            s = queue.popleft()
            for g, im in zip(gens, images):
                t = n.table[s][g]
                val = m.table[f[s]][im]
                if t in f:
                    if f[t] != val:
                        ok = False
                        break
                else:
                    f[t] = val
                    queue.append(t)
        if ok and len(set(f.values())) == m.size:
            yield f


def divides(m: FiniteMonoid, n: FiniteMonoid, cap: int = DIVISION_CAP) -> DivisionWitness | None:
    """Is ``m`` a quotient of a submonoid of ``n``?  Returns the first witness found.

    Submonoids are tried by ascending size, then lexicographically; maps by
    lexicographic generator images.
    """
    if n.size > cap:
        raise CapExceeded(f"ambient monoid of size {n.size} exceeds division cap {cap}")
    for sub in _closed_submonoids(n):
        if len(sub) < m.size:
            continue
        for f in _surjections(sub, n, m):
            return DivisionWitness(sub, dict(sorted(f.items())))
    return None


# ---------------------------------------------------------------- file formats


def monoid_from_dict(data: dict) -> FiniteMonoid:
    """Read the table format or the transformation format."""
    if not isinstance(data, dict):
        raise FormatError("monoid description must be a JSON object")
    try:
        if "table" in data:
            table = data["table"]
            size = data.get("size", len(table))
            if size != len(table):
                raise FormatError(f"size {size} does not match table with {len(table)} rows")
            return make_from_table(table, data.get("identity", 0), data.get("labels"))
        if "generators" in data:
            m, _ = make_from_transformations(data["points"], data["generators"],
                                             names=data.get("names"))
            return m
    except (TypeError, KeyError) as exc:
        raise FormatError(f"malformed monoid description: {exc}") from exc
    raise FormatError("expected a 'table' or a 'generators' field")


def load_monoid(path) -> FiniteMonoid:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: {exc}") from exc
    return monoid_from_dict(data)
