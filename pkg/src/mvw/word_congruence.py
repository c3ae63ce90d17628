"""The congruences ≡ₙᴿ, ≡ₙᴸ and ≡ₙ on words, and the quotient monoids they define.

u ≡₀ᴿ v iff both words have the same content.  At level n+1 the words must
share content, and for every letter a the first-occurrence splits
u = u₁au₂, v = v₁av₂ (a ∉ α(u₁), α(v₁)) must satisfy u₁ ≡ₙᴿ v₁ and
u₂ ≡ₙᴿ v₂, while the last-occurrence splits (a ∉ α(u₂), α(v₂)) must
satisfy u₁ ≡ₙᴿ v₁.  Because those splits are unique, every word has a
canonical level-n :class:`RSignature`; signatures are hash-consed so that
equivalence is object identity.  ≡ₙᴸ is ≡ₙᴿ on reversed words and ≡ₙ is
the conjunction of both.
"""

from __future__ import annotations

import itertools
import os
import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ClassBudgetExceeded, GenerationBudgetExceeded, LetterAbsent
from .monoid_core import FiniteMonoid

CLASS_CAP = 10**6

Word = tuple  # of letter indices


class Alphabet:
    """Letters are indices 0..k-1; ``chars`` gives their display characters."""

    def __init__(self, chars: str | Sequence[str]):
        chars = list(chars)
        if len(set(chars)) != len(chars):
            raise ValueError(f"alphabet {''.join(chars)!r} repeats a letter")
        self.chars = chars
        self._index = {c: i for i, c in enumerate(chars)}

    def __len__(self) -> int:
        return len(self.chars)

    def __repr__(self) -> str:
        return f"Alphabet({''.join(self.chars)!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Alphabet) and self.chars == other.chars

    def __hash__(self) -> int:
        return hash(tuple(self.chars))

    def encode(self, text: str) -> Word:
        try:
            return tuple(self._index[c] for c in text)
        except KeyError as exc:
            raise LetterAbsent(f"{exc.args[0]!r} is not in the alphabet {''.join(self.chars)!r}") from None

    def decode(self, word: Iterable[int]) -> str:
        return "".join(self.chars[a] for a in word)

    def show(self, word: Iterable[int]) -> str:
        return self.decode(word) or "1"


def as_alphabet(alphabet) -> Alphabet:
    if isinstance(alphabet, Alphabet):
        return alphabet
    if isinstance(alphabet, int):
        return Alphabet([chr(ord("a") + i) for i in range(alphabet)])
    return Alphabet(alphabet)


# ---------------------------------------------------------------- words


def content(u: Sequence[int]) -> frozenset:
    return frozenset(u)


def split_first(u: Sequence[int], a: int) -> tuple[Word, Word]:
    """u = prefix·a·suffix with a not in the prefix."""
    u = tuple(u)
    try:
        p = u.index(a)
    except ValueError:
        raise LetterAbsent(f"letter {a} does not occur") from None
    return u[:p], u[p + 1:]


def split_last(u: Sequence[int], a: int) -> tuple[Word, Word]:
    """u = prefix·a·suffix with a not in the suffix."""
    u = tuple(u)
    for q in range(len(u) - 1, -1, -1):
        if u[q] == a:
            return u[:q], u[q + 1:]
    raise LetterAbsent(f"letter {a} does not occur")


def reverse(u: Sequence[int]) -> Word:
    return tuple(reversed(tuple(u)))


# ---------------------------------------------------------------- signatures


class RSignature:
    """Interned canonical form of a ≡ₙᴿ-class.

    ``first_splits[a]`` holds the (prefix, suffix) signatures one level down
    at the first occurrence of letter a, ``last_prefixes[a]`` the prefix
    signature at its last occurrence.  Compare with ``is``.
    """

    __slots__ = ("uid", "level", "mask", "first_splits", "last_prefixes")

    def __init__(self, uid, level, mask, first_splits, last_prefixes):
        self.uid = uid
        self.level = level
        self.mask = mask
        self.first_splits = first_splits
        self.last_prefixes = last_prefixes

    @property
    def content(self) -> frozenset:
        return frozenset(a for a in range(self.mask.bit_length()) if self.mask >> a & 1)

    def letters(self) -> list[int]:
        return sorted(self.content)

    def __repr__(self) -> str:
        return f"RSignature(#{self.uid}, level={self.level}, content={sorted(self.content)})"

    def describe(self, alphabet: Alphabet | None = None) -> dict:
        """Nested JSON-friendly view (exponential in level; for display only)."""
        show = (lambda a: alphabet.chars[a]) if alphabet else str
        out = {"level": self.level, "content": "".join(show(a) for a in self.letters())}
        if self.level > 0:
            out["first"] = {show(a): [p.describe(alphabet), s.describe(alphabet)]
                            for a, (p, s) in zip(self.letters(), self.first_splits)}
            out["last"] = {show(a): p.describe(alphabet)
                           for a, p in zip(self.letters(), self.last_prefixes)}
        return out


class Interner:
    """Hash-consing table for signatures.

    ``dict.setdefault`` is atomic under the GIL, so concurrent inserts of an
    equal structure converge on a single object.
    """

    def __init__(self):
        self._table: dict = {}
        self._uids = itertools.count()

    def __len__(self) -> int:
        return len(self._table)

    def intern(self, level, mask, first, last) -> RSignature:
        key = (level, mask,
               tuple((p.uid, s.uid) for p, s in first),
               tuple(p.uid for p in last))
        sig = self._table.get(key)
        if sig is None:
            sig = self._table.setdefault(key, RSignature(next(self._uids), level, mask, first, last))
        return sig

    def clear(self) -> None:
        self._table.clear()


DEFAULT_INTERNER = Interner()


class _SignatureComputer:
    """Signatures of all factors of one word, memoized on (start, end, level)."""

    def __init__(self, word: Sequence[int], interner: Interner):
        self.word = word = tuple(word)
        self.interner = interner
        size = max(word) + 1 if word else 0
        self.letters = range(size)
        L = len(word)
        # nxt[a][i]: first position >= i holding a (L if none)
        # prv[a][j]: last position < j holding a (-1 if none)
        self.nxt = []
        self.prv = []
        for a in self.letters:
            nxt = [L] * (L + 1)
            for i in range(L - 1, -1, -1):
                nxt[i] = i if word[i] == a else nxt[i + 1]
            prv = [-1] * (L + 1)
            for j in range(1, L + 1):
                prv[j] = j - 1 if word[j - 1] == a else prv[j - 1]
            self.nxt.append(nxt)
            self.prv.append(prv)
        self.memo: dict = {}

    def mask(self, i: int, j: int) -> int:
        m = 0
        for a in self.letters:
            if self.nxt[a][i] < j:
                m |= 1 << a
        return m

    def sig(self, i: int, j: int, level: int) -> RSignature:
        key = (i, j, level)
        found = self.memo.get(key)
        if found is not None:
            return found
        mask = self.mask(i, j)
        if level == 0 or mask == 0:
            first, last = (), ()
        else:
            first, last = [], []
            for a in self.letters:
                if mask >> a & 1:
                    p = self.nxt[a][i]
                    q = self.prv[a][j]
                    first.append((self.sig(i, p, level - 1), self.sig(p + 1, j, level - 1)))
                    last.append(self.sig(i, q, level - 1))
            first, last = tuple(first), tuple(last)
        result = self.interner.intern(level, mask, first, last)
        self.memo[key] = result
        return result


def r_signature(u: Sequence[int], n: int, interner: Interner | None = None) -> RSignature:
    if n < 0:
        raise ValueError("level must be nonnegative")
    u = tuple(u)
    return _SignatureComputer(u, interner or DEFAULT_INTERNER).sig(0, len(u), n)


def l_signature(u: Sequence[int], n: int, interner: Interner | None = None) -> RSignature:
    return r_signature(reverse(u), n, interner)


def r_equiv(u: Sequence[int], v: Sequence[int], n: int) -> bool:
    interner = Interner()
    return r_signature(u, n, interner) is r_signature(v, n, interner)


def l_equiv(u: Sequence[int], v: Sequence[int], n: int) -> bool:
    return r_equiv(reverse(u), reverse(v), n)


def equiv(u: Sequence[int], v: Sequence[int], n: int) -> bool:
    return r_equiv(u, v, n) and l_equiv(u, v, n)


def class_key(u: Sequence[int], n: int, mode: str, interner: Interner):
    if mode == "R":
        return r_signature(u, n, interner)
    if mode == "L":
        return l_signature(u, n, interner)
    if mode == "RL":
        return (r_signature(u, n, interner), l_signature(u, n, interner))
    raise ValueError(f"mode must be R, L or RL, not {mode!r}")


def mode_equiv(u, v, n: int, mode: str) -> bool:
    return {"R": r_equiv, "L": l_equiv, "RL": equiv}[mode](u, v, n)


# ---------------------------------------------------------------- pair generator


def _random_word(rng: random.Random, k: int, lo: int, hi: int) -> Word:
    return tuple(rng.randrange(k) for _ in range(rng.randint(lo, hi)))


def rewrite_pair(rng: random.Random, k: int, n: int, max_factor: int = 2) -> tuple[Word, Word]:
    """One side-by-side instance of w^(n+2) ~ w^(n+1) or (xy)^(n+1)x(zx)^(n+1) ~ (xy)^(n+1)(zx)^(n+1)."""
    if rng.random() < 0.5:
        w = _random_word(rng, k, 1, max_factor)
        return w * (n + 2), w * (n + 1)
    x, y, z = (_random_word(rng, k, 1, max_factor) for _ in range(3))
    head, tail = (x + y) * (n + 1), (z + x) * (n + 1)
    return head + x + tail, head + tail


def generate_equiv_pair(rng: random.Random, alphabet, n: int, rewrites: int = 2,
                        max_factor: int = 2, max_context: int = 4,
                        attempts: int = 20) -> tuple[Word, Word]:
    """A random pair u ≡ₙ v.

    Both words share random context words; between them sit the two sides
    of ``rewrites`` elementary rewrites, each oriented at random.  The pair
    is re-checked with :func:`equiv` before it is returned.
    """
    k = len(as_alphabet(alphabet))
    for _ in range(attempts):
        u = v = _random_word(rng, k, 0, max_context)
        for _ in range(rewrites):
            left, right = rewrite_pair(rng, k, n, max_factor)
            if rng.random() < 0.5:
                left, right = right, left
            ctx = _random_word(rng, k, 0, max_context)
            u, v = u + left + ctx, v + right + ctx
        if equiv(u, v, n):
            return u, v
    raise GenerationBudgetExceeded(f"no verified pair after {attempts} attempts")


# ---------------------------------------------------------------- quotients


@dataclass(frozen=True)
class QuotientMonoid:
    monoid: FiniteMonoid
    representatives: tuple[Word, ...]
    letter_action: tuple[tuple[int, ...], ...]
    mode: str
    level: int
    alphabet: Alphabet

    @property
    def size(self) -> int:
        return self.monoid.size

    def class_of(self, word: Sequence[int]) -> int:
        c = 0
        for a in word:
            c = self.letter_action[c][a]
        return c

    def letter_class(self, a: int) -> int:
        return self.letter_action[0][a]

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "level": self.level,
            "alphabet": "".join(self.alphabet.chars),
            "classes": self.size,
            "representatives": [self.alphabet.show(w) for w in self.representatives],
            "table": [list(r) for r in self.monoid.table],
        }


def class_cap_from_env(default: int = CLASS_CAP) -> int:
    raw = os.environ.get("MVW_BUDGET_CLASSES")
    return int(raw) if raw else default


def build_quotient(alphabet, n: int, mode: str = "RL", cap: int = CLASS_CAP) -> QuotientMonoid:
    """A*/≡ (mode R, L or RL) at level n, by breadth-first search from the empty word.

    Representatives are shortlex-least in their class; the identity class
    is 0.  Raises ClassBudgetExceeded (with the count so far) past ``cap``.
    """
    alpha = as_alphabet(alphabet)
    k = len(alpha)
    interner = Interner()
    reps: list[Word] = [()]
    index = {class_key((), n, mode, interner): 0}
    action: list[list[int]] = []
    queue = deque([0])
    while queue:
        c = queue.popleft()
        row = []
        for a in range(k):
            w = reps[c] + (a,)
            key = class_key(w, n, mode, interner)
            d = index.get(key)
            if d is None:
                if len(reps) >= cap:
                    raise ClassBudgetExceeded(
                        f"more than {cap} classes for level {n}, mode {mode}", found=len(reps))
                d = index[key] = len(reps)
                reps.append(w)
                queue.append(d)
            row.append(d)
        action.append(row)
    # BFS pops classes in index order, so action[c] is the row of class c
    table = []
    for i in range(len(reps)):
        row = []
        for rep in reps:
            c = i
            for a in rep:
                c = action[c][a]
            row.append(c)
        table.append(tuple(row))
    labels = tuple(alpha.show(w) for w in reps)
    monoid = FiniteMonoid(tuple(table), 0, labels)
    return QuotientMonoid(monoid, tuple(reps), tuple(tuple(r) for r in action), mode, n, alpha)
