"""R- and L-factorizations, the aligned skeleton of an ≡ₙ-equivalent pair, and
the substitution chain showing that a monoid in W is a quotient of A*/≡ₙ.

Given φ: A* → M with M in W and u ≡ₙ v for n ≥ 2|M|, :func:`align`
produces

    u = a₁ s₁ a₂ s₂ ⋯ a_{ℓ-1} s_{ℓ-1} a_ℓ
    v = a₁ t₁ a₂ t₂ ⋯ a_{ℓ-1} t_{ℓ-1} a_ℓ

with ℓ ≤ 2|M| such that each t_i can be replaced by s_i, left to right,
without changing the image under φ.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import AlignmentOrderMismatch, ChainStepMismatch, PreconditionFailed
from .monoid_core import FiniteMonoid, submonoid_generated
from .omega_terms import in_W
from .word_congruence import Alphabet, CLASS_CAP, QuotientMonoid, as_alphabet, build_quotient, equiv


@dataclass(frozen=True)
class WordHomomorphism:
    """φ: A* → M given by the image of each letter index."""

    monoid: FiniteMonoid
    images: tuple[int, ...]
    alphabet: Alphabet | None = None

    def __post_init__(self):
        for x in self.images:
            if not 0 <= x < self.monoid.size:
                raise ValueError(f"letter image {x} is not an element")

    def __call__(self, word: Sequence[int]) -> int:
        t = self.monoid.table
        acc = self.monoid.identity
        for a in word:
            acc = t[acc][self.images[a]]
        return acc

    image = __call__

    @classmethod
    def from_mapping(cls, monoid: FiniteMonoid, mapping: dict) -> "WordHomomorphism":
        """``{"a": "x", "b": "1"}``: letters to element labels, in mapping order."""
        alphabet = Alphabet(list(mapping))
        return cls(monoid, tuple(monoid.index(v) for v in mapping.values()), alphabet)

    def show(self, word: Sequence[int]) -> str:
        alpha = self.alphabet or as_alphabet(len(self.images))
        return alpha.show(word)


# ---------------------------------------------------------------- R / L factorizations


@dataclass(frozen=True)
class MarkedFactorization:
    """Marker positions into ``word`` plus the blocks between them.

    R-kind reads ``b₁u₁⋯b_ku_k`` (block i follows marker i); L-kind reads
    ``v₁c₁⋯v_kc_k`` (block i precedes marker i).
    """

    word: tuple
    markers: tuple[int, ...]
    blocks: tuple[tuple, ...]
    kind: str

    @property
    def k(self) -> int:
        return len(self.markers)

    @property
    def marker_letters(self) -> tuple[int, ...]:
        return tuple(self.word[p] for p in self.markers)

    def reconstruct(self) -> tuple:
        out: tuple = ()
        for letter, block in zip(self.marker_letters, self.blocks):
            out += (letter,) + block if self.kind == "R" else block + (letter,)
        return out


def r_factorize(phi: WordHomomorphism, u: Sequence[int]) -> MarkedFactorization:
    """Greedy left-to-right scan; a letter starts a new block exactly when the
    R-class of the prefix image drops (right multiplication never climbs)."""
    u = tuple(u)
    if not u:
        return MarkedFactorization(u, (), (), "R")
    m = phi.monoid
    r_of = m._green.r_class_of
    markers = [0]
    cur = phi.images[u[0]]
    for i in range(1, len(u)):
        nxt = m.table[cur][phi.images[u[i]]]
        if r_of[nxt] != r_of[cur]:
            markers.append(i)
        cur = nxt
    ends = markers[1:] + [len(u)]
    blocks = tuple(u[p + 1:e] for p, e in zip(markers, ends))
    return MarkedFactorization(u, tuple(markers), blocks, "R")


def l_factorize(phi: WordHomomorphism, v: Sequence[int]) -> MarkedFactorization:
    v = tuple(v)
    if not v:
        return MarkedFactorization(v, (), (), "L")
    m = phi.monoid
    l_of = m._green.l_class_of
    markers = [len(v) - 1]
    cur = phi.images[v[-1]]
    for i in range(len(v) - 2, -1, -1):
        nxt = m.table[phi.images[v[i]]][cur]
        if l_of[nxt] != l_of[cur]:
            markers.append(i)
        cur = nxt
    markers.reverse()
    starts = [0] + [p + 1 for p in markers[:-1]]
    blocks = tuple(v[s:p] for s, p in zip(starts, markers))
    return MarkedFactorization(v, tuple(markers), blocks, "L")


# ---------------------------------------------------------------- alignment


@dataclass(frozen=True)
class AlignedFactorization:
    """Common skeleton of u and v; ``origins`` says whether each marker came
    from the R-factorization of u, the L-factorization of v, or both."""

    marker_letters: tuple[int, ...]
    s_blocks: tuple[tuple, ...]
    t_blocks: tuple[tuple, ...]
    u_positions: tuple[int, ...] = ()
    v_positions: tuple[int, ...] = ()
    origins: tuple[str, ...] = ()

    @property
    def length(self) -> int:
        """ℓ, the number of marker letters."""
        return len(self.marker_letters)

    def _join(self, blocks) -> tuple:
        out: tuple = ()
        for i, a in enumerate(self.marker_letters):
            out += (a,)
            if i < len(blocks):
                out += blocks[i]
        return out

    @property
    def u(self) -> tuple:
        return self._join(self.s_blocks)

    @property
    def v(self) -> tuple:
        return self._join(self.t_blocks)

    def mixed(self, i: int) -> tuple:
        """The word with t₁..t_i already replaced by s₁..s_i."""
        return self._join(self.s_blocks[:i] + self.t_blocks[i:])


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def align(phi: WordHomomorphism, u: Sequence[int], v: Sequence[int], n: int,
          check_preconditions: bool = True) -> AlignedFactorization:
    """Cut u and v at the merged R-markers of u and L-markers of v.

    The R-markers of u are carried into v by successive first-occurrence
    searches and the L-markers of v into u by successive last-occurrence
    searches; the relative order of the two marker families must then agree
    in both words.  The result is checked with :func:`verify_lemma5` before
    it is returned.
    """
    u, v = tuple(u), tuple(v)
    m = phi.monoid
    if check_preconditions:
        if n < 2 * m.size:
            raise PreconditionFailed(f"level {n} is below 2|M| = {2 * m.size}")
        if not in_W(m):
            raise PreconditionFailed("the monoid does not satisfy the W identity")
        if not equiv(u, v, n):
            raise PreconditionFailed(f"the words are not equivalent at level {n}")
    if not u or not v:
        if u or v:
            raise AlignmentOrderMismatch("only one of the words is empty")
        return AlignedFactorization((), (), ())

    rf = r_factorize(phi, u)
    lf = l_factorize(phi, v)
    p_u = list(rf.markers)
    q_v = list(lf.markers)

    p_v = []
    pos = -1
    for b in rf.marker_letters:
        try:
            pos = v.index(b, pos + 1)
        except ValueError:
            raise AlignmentOrderMismatch(f"R-marker letter {b} has no transfer into v") from None
        p_v.append(pos)
    q_u = []
    pos = len(u)
    for c in reversed(lf.marker_letters):
        pos = next((i for i in range(pos - 1, -1, -1) if u[i] == c), -1)
        if pos < 0:
            raise AlignmentOrderMismatch(f"L-marker letter {c} has no transfer into u")
        q_u.append(pos)
    q_u.reverse()

    for i in range(len(p_u)):
        for j in range(len(q_u)):
            if _sign(p_u[i] - q_u[j]) != _sign(p_v[i] - q_v[j]):
                raise AlignmentOrderMismatch(
                    f"R-marker {i + 1} and L-marker {j + 1} are ordered differently in u and v")

    merged: dict[int, list] = {}
    for pu, pv in zip(p_u, p_v):
        merged[pu] = [pv, "R"]
    for qu, qv in zip(q_u, q_v):
        if qu in merged:
            merged[qu][1] = "RL"
        else:
            merged[qu] = [qv, "L"]
    u_pos = sorted(merged)
    v_pos = [merged[p][0] for p in u_pos]
    origins = tuple(merged[p][1] for p in u_pos)
    if (u_pos[0] != 0 or v_pos[0] != 0 or u_pos[-1] != len(u) - 1 or v_pos[-1] != len(v) - 1
            or any(b <= a for a, b in zip(v_pos, v_pos[1:]))):
        raise AlignmentOrderMismatch("merged markers do not frame both words")

    letters = tuple(u[p] for p in u_pos)
    s_blocks = tuple(u[a + 1:b] for a, b in zip(u_pos, u_pos[1:]))
    t_blocks = tuple(v[a + 1:b] for a, b in zip(v_pos, v_pos[1:]))
    af = AlignedFactorization(letters, s_blocks, t_blocks, tuple(u_pos), tuple(v_pos), origins)
    check = verify_lemma5(phi, af)
    if not check.ok:
        raise AlignmentOrderMismatch(
            f"skeleton fails the {check.chain}-condition at block {check.index}")
    return af


class Lemma5Check(NamedTuple):
    ok: bool
    index: int | None = None
    chain: str | None = None


def verify_lemma5(phi: WordHomomorphism, af: AlignedFactorization) -> Lemma5Check:
    """Check, for i = 1..ℓ-1 (1-based), that

    φ(a₁s₁⋯a_i) R φ(a₁s₁⋯a_is_i) R φ(a₁s₁⋯a_it_i) and
    φ(a_{i+1}t_{i+1}⋯a_ℓ) L φ(t_ia_{i+1}⋯a_ℓ) L φ(s_ia_{i+1}t_{i+1}⋯a_ℓ).
    """
    m = phi.monoid
    t = m.table
    g = m._green
    ell = af.length
    if ell <= 1:
        return Lemma5Check(True)
    img = phi.images
    s_img = [phi(b) for b in af.s_blocks]
    t_img = [phi(b) for b in af.t_blocks]

    # suffix[i]: φ(a_{i+1} t_{i+1} ⋯ a_ℓ) for 0-based marker index i
    suffix = [m.identity] * ell
    acc = img[af.marker_letters[-1]]
    suffix[ell - 2] = acc
    for i in range(ell - 2, 0, -1):
        acc = t[t[img[af.marker_letters[i]]][t_img[i]]][acc]
        suffix[i - 1] = acc

    prefix = m.identity
    for i in range(ell - 1):
        prefix = t[prefix][img[af.marker_letters[i]]]
        r = g.r_class_of
        if not r[prefix] == r[t[prefix][s_img[i]]] == r[t[prefix][t_img[i]]]:
            return Lemma5Check(False, i + 1, "R")
        sfx = suffix[i]
        l = g.l_class_of
        if not l[sfx] == l[t[t_img[i]][sfx]] == l[t[s_img[i]][sfx]]:
            return Lemma5Check(False, i + 1, "L")
        prefix = t[prefix][s_img[i]]
    return Lemma5Check(True)


@dataclass(frozen=True)
class ChainStep:
    word: tuple
    image: int


def substitution_chain(phi: WordHomomorphism, af: AlignedFactorization) -> list[ChainStep]:
    """Rewrite v into u by t_i → s_i for i = 1, 2, ... in that order.

    Every step must preserve the image (ChainStepMismatch otherwise).  The
    trace starts at v and ends at u, ℓ words in total (one when ℓ ≤ 1).
    """
    check = verify_lemma5(phi, af)
    if not check.ok:
        raise PreconditionFailed(
            f"skeleton fails the {check.chain}-condition at block {check.index}")
    word = af.v
    steps = [ChainStep(word, phi(word))]
    for i in range(1, len(af.s_blocks) + 1):
        word = af.mixed(i)
        image = phi(word)
        if image != steps[-1].image:
            raise ChainStepMismatch(i, steps[-1].image, image)
        steps.append(ChainStep(word, image))
    return steps


# ---------------------------------------------------------------- quotient homomorphism


@dataclass(frozen=True)
class QuotientVerdict:
    monoid: FiniteMonoid
    is_quotient: bool
    quotient: QuotientMonoid
    class_map: tuple[int, ...]
    level: int
    heuristic: bool
    failure: str | None = None

    def to_dict(self) -> dict:
        q = self.quotient.monoid
        return {
            "isQuotient": self.is_quotient,
            "level": self.level,
            "heuristic": self.heuristic,
            "classes": self.quotient.size,
            "classMap": {q.label(c): self.monoid.label(h) for c, h in enumerate(self.class_map)},
            "failure": self.failure,
        }


def _generator_alphabet(m: FiniteMonoid, generators: Sequence[int]) -> Alphabet:
    names = [m.label(g) for g in generators]
    if all(len(s) == 1 for s in names) and len(set(names)) == len(names):
        return Alphabet(names)
    return as_alphabet(len(generators))


def quotient_homomorphism(m: FiniteMonoid, generators: Sequence[int | str], n: int | None = None,
                          cap: int = CLASS_CAP, require_w: bool = True) -> QuotientVerdict:
    """Build A*/≡ₙ over A = generators and test that class ↦ φ(representative)
    is a well-defined surjective homomorphism onto m.

    ``n`` defaults to 2|m|; smaller levels are allowed and flagged heuristic.
    """
    gens = [m.index(g) for g in generators]
    if submonoid_generated(m, gens) != frozenset(m):
        raise PreconditionFailed("the given elements do not generate the monoid")
    if require_w and not in_W(m):
        raise PreconditionFailed("the monoid does not satisfy the W identity")
    level = 2 * m.size if n is None else n
    alphabet = _generator_alphabet(m, gens)
    phi = WordHomomorphism(m, tuple(gens), alphabet)
    q = build_quotient(alphabet, level, "RL", cap)
    h = tuple(phi(rep) for rep in q.representatives)
    t = m.table
    failure = None
    for c, row in enumerate(q.letter_action):
        for a, d in enumerate(row):
            if h[d] != t[h[c]][gens[a]]:
                failure = f"class {q.monoid.label(c)} times letter {alphabet.chars[a]} is inconsistent"
                break
        if failure:
            break
    if failure is None:
        for c in range(q.size):
            for d in range(q.size):
                if h[q.monoid.table[c][d]] != t[h[c]][h[d]]:
                    failure = f"product of classes {c} and {d} is not respected"
                    break
            if failure:
                break
    if failure is None and set(h) != set(m):
        failure = "the class map is not surjective"
    return QuotientVerdict(m, failure is None, q, h, level, level < 2 * m.size, failure)
