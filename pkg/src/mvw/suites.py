"""Named verification suites run by ``mvw verify``.

Each suite returns a list of :class:`Check` results; a suite passes when
every check does.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import catalog
from .factorization import WordHomomorphism, align, quotient_homomorphism, substitution_chain
from .monoid_core import enumerate_monoids, is_aperiodic, is_l_trivial, is_r_trivial
from .omega_terms import check_lemma3, check_lemma4, in_L, in_R, in_W
from .oracles import all_words, naive_r_equiv
from .word_congruence import (
    build_quotient,
    equiv,
    generate_equiv_pair,
    l_equiv,
    r_equiv,
    split_first,
    split_last,
)


@dataclass
class Check:
    name: str
    passed: bool
    cases: int = 0
    failures: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "cases": self.cases,
                "failures": self.failures[:5]}


def _check(name, cases, failures) -> Check:
    return Check(name, not failures, cases, failures)


def lemmas(max_order: int = 4) -> list[Check]:
    monoids = [m for k in range(1, max_order + 1) for m in enumerate_monoids(k)]
    r_eq, l_eq, incl, l3, l4, aper = [], [], [], [], [], []
    for idx, m in enumerate(monoids):
        ir, il, iw = in_R(m), in_L(m), in_W(m)
        if is_r_trivial(m) != ir:
            r_eq.append(idx)
        if is_l_trivial(m) != il:
            l_eq.append(idx)
        if (ir or il) and not iw:
            incl.append(idx)
        if iw:
            if check_lemma3(m):
                l3.append(idx)
            if check_lemma4(m):
                l4.append(idx)
            if not is_aperiodic(m):
                aper.append(idx)
    n = len(monoids)
    outside = [name for name, f in (("Z2", catalog.z2), ("B2", catalog.b2)) if not check_lemma3(f())]
    b2 = catalog.b2()
    witness = (b2.index("ab"), b2.index("a"), b2.index("ba"))
    return [
        _check("R-trivial iff in R", n, r_eq),
        _check("L-trivial iff in L", n, l_eq),
        _check("R or L implies W", n, incl),
        _check("substitution rule holds in W", n, l3),
        _check("class propagation holds in W", n, l4),
        _check("W members are aperiodic", n, aper),
        _check("Z2 and B2 violate the substitution rule", 2, outside),
        _check("B2 violation (ab, a, ba)", 1, [] if witness in check_lemma3(b2) else ["missing"]),
    ]


def congruence(max_len: int = 6, samples: int = 1000, seed: int = 0) -> list[Check]:
    rng = random.Random(seed)
    checks = []

    mismatches, cases = [], 0
    for k in (1, 2):
        words = list(all_words(k, max_len))
        for n in range(3):
            for u in words:
                for v in words:
                    cases += 1
                    if r_equiv(u, v, n) != naive_r_equiv(u, v, n):
                        mismatches.append([list(u), list(v), n])
    checks.append(_check("signatures agree with the factorization oracle", cases, mismatches))

    bad = []
    for _ in range(samples):
        k = rng.randint(1, 3)
        n = rng.randint(0, 3)
        x = tuple(rng.randrange(k) for _ in range(rng.randint(0, 4)))
        y = tuple(rng.randrange(k) for _ in range(rng.randint(0, 3)))
        if rng.random() < 0.25:
            y = ()
        if not r_equiv((x + y) * (n + 1) + x, (x + y) * (n + 1), n):
            bad.append([list(x), list(y), n])
    checks.append(_check("(xy)^(n+1) x ~R (xy)^(n+1)", samples, bad))

    bad = []
    for k in (1, 2):
        for n in range(3):
            for mode, pred in (("R", lambda q: is_r_trivial(q.monoid)),
                               ("L", lambda q: is_l_trivial(q.monoid)),
                               ("RL", lambda q: in_W(q.monoid))):
                if not pred(build_quotient(k, n, mode)):
                    bad.append([k, n, mode])
    checks.append(_check("quotients lie in R, L and W", 18, bad))

    refine, compat, split = [], [], []
    for _ in range(samples):
        k = rng.randint(1, 3)
        n = rng.randint(0, 2)
        u, v = generate_equiv_pair(rng, k, n + 1, rewrites=rng.randint(0, 2))
        if not equiv(u, v, n):
            refine.append([list(u), list(v), n])
        a = rng.randrange(k)
        if not (equiv((a,) + u, (a,) + v, n + 1) and equiv(u + (a,), v + (a,), n + 1)):
            compat.append([list(u), list(v), n + 1])
        for a in set(u):
            u1, u2 = split_first(u, a)
            v1, v2 = split_first(v, a)
            if not (r_equiv(u1, v1, n) and equiv(u2, v2, n)):
                split.append([list(u), list(v), n, a, "first"])
            u1, u2 = split_last(u, a)
            v1, v2 = split_last(v, a)
            if not (equiv(u1, v1, n) and l_equiv(u2, v2, n)):
                split.append([list(u), list(v), n, a, "last"])
    checks.append(_check("refinement", samples, refine))
    checks.append(_check("letter compatibility", samples, compat))
    checks.append(_check("split properties at fresh letters", samples, split))
    return checks


def theorem(max_order: int = 4, pairs_per_monoid: int = 4, seed: int = 0) -> list[Check]:
    rng = random.Random(seed)
    monoids = [m for k in range(1, max_order + 1) for m in enumerate_monoids(k) if in_W(m)]
    failures, cases, bound = [], 0, []
    for idx, m in enumerate(monoids):
        n = 2 * m.size
        for _ in range(pairs_per_monoid):
            k = rng.randint(1, 3)
            phi = WordHomomorphism(m, tuple(rng.randrange(m.size) for _ in range(k)))
            u, v = generate_equiv_pair(rng, k, n)
            cases += 1
            try:
                af = align(phi, u, v, n)
                steps = substitution_chain(phi, af)
            except Exception as exc:  # reported as a failed case, never swallowed silently
                failures.append([idx, phi.show(u), phi.show(v), repr(exc)])
                continue
            if af.length > 2 * m.size:
                bound.append([idx, af.length])
            if steps[-1].image != phi(u) or steps[0].image != phi(v):
                failures.append([idx, phi.show(u), phi.show(v), "endpoints"])
    u1 = catalog.u1()
    quotient_bad = []
    for level, classes in ((4, 6), (0, 2)):
        verdict = quotient_homomorphism(u1, ["0"], level)
        if not verdict.is_quotient or verdict.quotient.size != classes:
            quotient_bad.append([level, verdict.quotient.size])
    return [
        _check("align and substitution chain", cases, failures),
        _check("skeleton length at most 2|M|", cases, bound),
        _check("U1 is a quotient of A*/~n (n = 4, 0)", 2, quotient_bad),
    ]


SUITES = {"lemmas": lemmas, "congruence": congruence, "theorem": theorem}
