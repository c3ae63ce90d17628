"""DFAs, their minimization, and the syntactic monoid's place among R, L and W."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import FormatError
from .factorization import WordHomomorphism
from .monoid_core import TRANSFORMATION_CAP, FiniteMonoid, make_from_transformations
from .omega_terms import W_IDENTITY, in_L, in_R, satisfies_identity
from .word_congruence import Alphabet


@dataclass(frozen=True)
class Dfa:
    states: int
    alphabet: str
    delta: tuple[tuple[int, ...], ...]  # delta[state][letter index]
    initial: int
    accepting: frozenset

    def __post_init__(self):
        if not 0 <= self.initial < self.states:
            raise FormatError(f"initial state {self.initial} out of range")
        if len(self.delta) != self.states:
            raise FormatError("delta must have one row per state")
        for q, row in enumerate(self.delta):
            if len(row) != len(self.alphabet):
                raise FormatError(f"state {q} has {len(row)} transitions, expected {len(self.alphabet)}")
            for r in row:
                if not 0 <= r < self.states:
                    raise FormatError(f"transition target {r} from state {q} out of range")
        if any(not 0 <= q < self.states for q in self.accepting):
            raise FormatError("accepting state out of range")

    def run(self, word: str, start: int | None = None) -> int:
        q = self.initial if start is None else start
        for ch in word:
            q = self.delta[q][self.alphabet.index(ch)]
        return q

    def accepts(self, word: str) -> bool:
        return self.run(word) in self.accepting

    def to_dict(self) -> dict:
        return {
            "alphabet": self.alphabet,
            "states": self.states,
            "initial": self.initial,
            "accepting": sorted(self.accepting),
            "delta": {str(q): {a: self.delta[q][i] for i, a in enumerate(self.alphabet)}
                      for q in range(self.states)},
        }


def dfa_from_dict(data: dict) -> Dfa:
    """Read the JSON DFA format; missing transitions go to an added rejecting sink."""
    try:
        alphabet = data["alphabet"]
        states = data["states"]
        initial = data.get("initial", 0)
        accepting = frozenset(data.get("accepting", []))
        raw = data.get("delta", {})
    except (TypeError, KeyError) as exc:
        raise FormatError(f"malformed DFA: missing {exc}") from exc
    if not isinstance(alphabet, str) or len(set(alphabet)) != len(alphabet):
        raise FormatError("alphabet must be a string of distinct characters")
    if not isinstance(states, int) or states < 1:
        raise FormatError("states must be a positive integer")
    if not isinstance(raw, dict):
        raise FormatError("delta must be an object keyed by state")
    sink = states
    rows = [[sink] * len(alphabet) for _ in range(states)]
    for key, moves in raw.items():
        try:
            q = int(key)
        except ValueError:
            raise FormatError(f"state key {key!r} is not an integer") from None
        if not 0 <= q < states or not isinstance(moves, dict):
            raise FormatError(f"bad transitions for state {key!r}")
        for letter, target in moves.items():
            if letter not in alphabet:
                raise FormatError(f"letter {letter!r} not in the alphabet")
            if not isinstance(target, int) or isinstance(target, bool) or not 0 <= target < states:
                raise FormatError(f"transition target {target!r} out of range")
            rows[q][alphabet.index(letter)] = target
    if any(sink in row for row in rows):
        rows.append([sink] * len(alphabet))
        states += 1
    return Dfa(states, alphabet, tuple(tuple(r) for r in rows), initial, accepting)


def parse_dfa(text: str) -> Dfa:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return dfa_from_dict(data)


def load_dfa(path) -> Dfa:
    with open(path, encoding="utf-8") as fh:
        return parse_dfa(fh.read())


def minimize(d: Dfa) -> Dfa:
    """Drop unreachable states, then Moore refinement; states renumbered in BFS order."""
    k = len(d.alphabet)
    reachable = {d.initial}
    queue = deque([d.initial])
    while queue:
        q = queue.popleft()
        for r in d.delta[q]:
            if r not in reachable:
                reachable.add(r)
                queue.append(r)
    states = sorted(reachable)

    block = {q: int(q in d.accepting) for q in states}
    while True:
        keys = {q: (block[q],) + tuple(block[d.delta[q][a]] for a in range(k)) for q in states}
        ids: dict = {}
        refined = {q: ids.setdefault(keys[q], len(ids)) for q in states}
        if len(ids) == len(set(block.values())):
            break
        block = refined

    number = {block[d.initial]: 0}
    order = [d.initial]
    queue = deque([d.initial])
    while queue:
        q = queue.popleft()
        for a in range(k):
            r = d.delta[q][a]
            if block[r] not in number:
                number[block[r]] = len(order)
                order.append(r)
                queue.append(r)
    delta = tuple(tuple(number[block[d.delta[q][a]]] for a in range(k)) for q in order)
    accepting = frozenset(number[block[q]] for q in order if q in d.accepting)
    return Dfa(len(order), d.alphabet, delta, 0, accepting)


def transition_monoid(d: Dfa, cap: int = TRANSFORMATION_CAP) -> tuple[FiniteMonoid, WordHomomorphism]:
    """Monoid of state maps induced by words, with the letter homomorphism.

    Elements are labelled by their shortlex-least word over the DFA alphabet.
    """
    gens = [tuple(d.delta[q][a] for q in range(d.states)) for a in range(len(d.alphabet))]
    m, embedding = make_from_transformations(d.states, gens, cap, names=list(d.alphabet))
    return m, WordHomomorphism(m, tuple(embedding), Alphabet(d.alphabet))


def syntactic_monoid(d: Dfa, cap: int = TRANSFORMATION_CAP) -> tuple[FiniteMonoid, WordHomomorphism]:
    return transition_monoid(minimize(d), cap)


@dataclass(frozen=True)
class LanguageReport:
    in_w: bool
    in_r: bool
    in_l: bool
    monoid_size: int
    witness: dict | None = None

    def to_dict(self) -> dict:
        return {"inW": self.in_w, "inR": self.in_r, "inL": self.in_l,
                "monoidSize": self.monoid_size, "witness": self.witness}


def language_in_join(d: Dfa) -> LanguageReport:
    """Decide whether the syntactic monoid of L(d) lies in W (= R ∨ L), R and L.

    A failing assignment is reported as one word per variable.
    """
    m, _ = syntactic_monoid(d)
    verdict = satisfies_identity(m, W_IDENTITY)
    witness = None
    if not verdict.holds:
        witness = {var: m.label(x) for var, x in verdict.counterexample.items()}
    return LanguageReport(verdict.holds, in_R(m), in_L(m), m.size, witness)


def languages_agree(d1: Dfa, d2: Dfa, max_len: int = 8) -> bool:
    """Same accept/reject answer on every word up to ``max_len`` (alphabets must match)."""
    if sorted(d1.alphabet) != sorted(d2.alphabet):
        return False
    seen = set()
    queue = deque([(d1.initial, d2.initial, 0)])
    while queue:
        p, q, depth = queue.popleft()
        if (p in d1.accepting) != (q in d2.accepting):
            return False
        if (p, q) in seen or depth == max_len:
            continue
        seen.add((p, q))
        for ch in d1.alphabet:
            queue.append((d1.delta[p][d1.alphabet.index(ch)],
                          d2.delta[q][d2.alphabet.index(ch)], depth + 1))
    return True


def dfa_from_transitions(alphabet: str, transitions: Sequence[Sequence[int]], accepting,
                         initial: int = 0) -> Dfa:
    return Dfa(len(transitions), alphabet, tuple(tuple(r) for r in transitions), initial,
               frozenset(accepting))
