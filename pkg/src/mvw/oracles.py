"""Deliberately naive reference implementations used to cross-check the fast paths.

Nothing here shares code with the signature engine or the pruned monoid
enumerator.
"""

from __future__ import annotations

import itertools
from functools import lru_cache


@lru_cache(maxsize=None)
def naive_r_equiv(u: tuple, v: tuple, n: int) -> bool:
    """u ≡ₙᴿ v straight from the definition, quantifying over every factorization pair."""
    if set(u) != set(v):
        return False
    if n == 0:
        return True
    for i, a in enumerate(u):
        u1, u2 = u[:i], u[i + 1:]
        for j, b in enumerate(v):
            if a != b:
                continue
            v1, v2 = v[:j], v[j + 1:]
            if a not in u1 and a not in v1:
                if not (naive_r_equiv(u1, v1, n - 1) and naive_r_equiv(u2, v2, n - 1)):
                    return False
            if a not in u2 and a not in v2:
                if not naive_r_equiv(u1, v1, n - 1):
                    return False
    return True


def naive_l_equiv(u: tuple, v: tuple, n: int) -> bool:
    return naive_r_equiv(tuple(reversed(u)), tuple(reversed(v)), n)


def all_words(k: int, max_len: int):
    for length in range(max_len + 1):
        yield from itertools.product(range(k), repeat=length)


def naive_monoid_count(order: int) -> int:
    """Number of monoids of the given order up to isomorphism, by scanning every table."""
    n = order
    elems = range(n)
    canon = set()
    for flat in itertools.product(elems, repeat=n * n):
        t = [flat[i * n:(i + 1) * n] for i in elems]
        units = [e for e in elems if all(t[e][x] == x and t[x][e] == x for x in elems)]
        if not units:
            continue
        if any(t[t[x][y]][z] != t[x][t[y][z]] for x in elems for y in elems for z in elems):
            continue
        best = None
        for perm in itertools.permutations(elems):
            inv = [0] * n
            for x in elems:
                inv[perm[x]] = x
            relabelled = tuple(perm[t[inv[i]][inv[j]]] for i in elems for j in elems)
            if best is None or relabelled < best:
                best = relabelled
        canon.add(best)
    return len(canon)


def naive_satisfies(m, lhs, rhs, names) -> bool:
    """Identity check reading omega as the fixed exponent |M|!, idempotent on every element."""
    exponent = 1
    for k in range(1, m.size + 1):
        exponent *= k

    def power(x, e):
        acc = m.identity
        while e:
            if e & 1:
                acc = m.table[acc][x]
            x = m.table[x][x]
            e >>= 1
        return acc

    def evaluate(term, env):
        kind = type(term).__name__
        if kind == "Var":
            return env[term.name]
        if kind == "Concat":
            return m.table[evaluate(term.left, env)][evaluate(term.right, env)]
        if kind == "OmegaPower":
            return power(evaluate(term.sub, env), exponent)
        return m.identity

    for vals in itertools.product(range(m.size), repeat=len(names)):
        env = dict(zip(names, vals))
        if evaluate(lhs, env) != evaluate(rhs, env):
            return False
    return True
