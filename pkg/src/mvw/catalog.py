"""Small named monoids used throughout tests, examples and the CLI."""

from __future__ import annotations

from .monoid_core import FiniteMonoid, direct_product, make_from_table


def trivial() -> FiniteMonoid:
    return make_from_table([[0]], 0, ["1"])


def u1() -> FiniteMonoid:
    """{1, 0} under multiplication."""
    return make_from_table([[0, 1], [1, 1]], 0, ["1", "0"])


def cyclic_group(k: int) -> FiniteMonoid:
    labels = ["1"] + [f"g{i}" if i > 1 else "g" for i in range(1, k)]
    return make_from_table([[(i + j) % k for j in range(k)] for i in range(k)], 0, labels)


def z2() -> FiniteMonoid:
    return cyclic_group(2)


def chain(k: int) -> FiniteMonoid:
    """Elements 0..k-1 under min; element k-1 is the identity."""
    middle = ["e"] if k == 3 else [f"e{i}" for i in range(1, k - 1)]
    labels = ["1"] if k == 1 else ["0"] + middle + ["1"]
    return make_from_table([[min(i, j) for j in range(k)] for i in range(k)], k - 1, labels)


def b2() -> FiniteMonoid:
    """Brandt monoid {1, a, b, ab, ba, 0}: aba = a, bab = b, aa = bb = 0."""
    labels = ["1", "a", "b", "ab", "ba", "0"]
    # a, b, ab, ba as 2x2 matrix units E12, E21, E11, E22
    units = {1: (0, 1), 2: (1, 0), 3: (0, 0), 4: (1, 1)}
    by_unit = {v: k for k, v in units.items()}

    def mul(x, y):
        if x == 0:
            return y
        if y == 0:
            return x
        if x == 5 or y == 5:
            return 5
        (i, j), (k, l) = units[x], units[y]
        return by_unit[(i, l)] if j == k else 5

    return make_from_table([[mul(x, y) for y in range(6)] for x in range(6)], 0, labels)


def right_zero_one() -> FiniteMonoid:
    """RZ2 with an identity adjoined: xy = y on {a, b}."""
    return make_from_table([[0, 1, 2], [1, 1, 2], [2, 1, 2]], 0, ["1", "a", "b"])


def left_zero_one() -> FiniteMonoid:
    """LZ2 with an identity adjoined: xy = x on {a, b}."""
    return make_from_table([[0, 1, 2], [1, 1, 1], [2, 2, 2]], 0, ["1", "a", "b"])


def lz_times_rz() -> FiniteMonoid:
    return direct_product(left_zero_one(), right_zero_one())


NAMED = {
    "trivial": trivial,
    "U1": u1,
    "Z2": z2,
    "B2": b2,
    "RZ2": right_zero_one,
    "LZ2": left_zero_one,
    "LZ2xRZ2": lz_times_rz,
    "chain3": lambda: chain(3),
}
