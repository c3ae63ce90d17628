import itertools
import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mvw import catalog
from mvw.errors import (
    AssociativityViolation,
    CapExceeded,
    FormatError,
    IdentityViolation,
    RangeError,
    SizeBudgetExceeded,
)
from mvw.monoid_core import (
    FiniteMonoid,
    Order,
    are_isomorphic,
    direct_product,
    divides,
    enumerate_monoids,
    find_isomorphism,
    generating_set,
    green,
    idempotent_power,
    is_l_trivial,
    is_r_trivial,
    l_compare,
    load_monoid,
    make_from_table,
    make_from_transformations,
    monoid_from_dict,
    multiply,
    power,
    r_compare,
    submonoid_generated,
    unpair_index,
)


def _relabel(m, perm):
    """Copy of m with element x renamed perm[x]."""
    n = m.size
    inv = [0] * n
    for x in range(n):
        inv[perm[x]] = x
    table = [[perm[m.table[inv[i]][inv[j]]] for j in range(n)] for i in range(n)]
    return make_from_table(table, perm[m.identity])


# ---------------------------------------------------------------- construction


def test_trivial_monoid():
    m = make_from_table([[0]], 0)
    assert m.size == 1 and m.identity == 0


def test_u1_and_z2_tables():
    u1 = make_from_table([[0, 1], [1, 1]], 0, ["1", "0"])
    assert u1.label(1) == "0"
    z2 = make_from_table([[0, 1], [1, 0]], 0)
    assert z2.table == ((0, 1), (1, 0))


@pytest.mark.parametrize("identity", [0, 1])
def test_boolean_style_table_is_not_an_index_table(identity):
    with pytest.raises(IdentityViolation):
        make_from_table([[1, 0], [0, 0]], identity)


def test_associativity_witness():
    # 0 identity; 1*1 = 2, 1*2 = 1, 2*1 = 2, 2*2 = 2 breaks (1*1)*1 = 2*1 = 2 vs 1*(1*1) = 1*2 = 1
    with pytest.raises(AssociativityViolation) as err:
        make_from_table([[0, 1, 2], [1, 2, 1], [2, 2, 2]], 0)
    x, y, z = err.value.witness
    t = [[0, 1, 2], [1, 2, 1], [2, 2, 2]]
    assert t[t[x][y]][z] != t[x][t[y][z]]


@pytest.mark.parametrize("table, identity", [
    ([], 0),
    ([[0, 1]], 0),
    ([[0, 2], [1, 1]], 0),
    ([[0, 1], [1, 1]], 2),
    ([[0, -1], [1, 1]], 0),
])
def test_range_errors(table, identity):
    with pytest.raises(RangeError):
        make_from_table(table, identity)


def test_transformations_identity_only():
    m, emb = make_from_transformations(2, [[0, 1]])
    assert m.size == 1 and emb == [0]


def test_full_transformation_monoid_on_two_points():
    m, emb = make_from_transformations(2, [[1, 0], [0, 0], [1, 1]])
    # oracle: every map {0,1} -> {0,1} is a product of swap and the constants
    assert m.size == len(list(itertools.product(range(2), repeat=2))) == 4
    assert len(set(emb)) == 3


def test_single_constant_gives_u1():
    m, emb = make_from_transformations(2, [[0, 0]])
    assert m.size == 2
    assert m.table[emb[0]][emb[0]] == emb[0]
    assert are_isomorphic(m, catalog.u1())


def test_transformation_products_compose_left_to_right():
    f, g = [1, 2, 0], [0, 0, 2]
    f_then_g = [g[f[q]] for q in range(3)]
    g_then_f = [f[g[q]] for q in range(3)]
    m, (ef, eg, e1, e2) = make_from_transformations(3, [f, g, f_then_g, g_then_f])
    assert m.table[ef][eg] == e1
    assert m.table[eg][ef] == e2
    assert e1 != e2


def test_transformation_cap():
    cyc = list(range(1, 7)) + [0]
    with pytest.raises(SizeBudgetExceeded):
        make_from_transformations(7, [cyc], cap=5)


# ---------------------------------------------------------------- arithmetic


def test_power_zero_is_identity(b2):
    for x in b2:
        assert power(b2, x, 0) == b2.identity


def test_b2_products(b2):
    ab, ba, zero = b2.index("ab"), b2.index("ba"), b2.index("0")
    assert multiply(b2, ab, ba) == zero
    a, b = b2.index("a"), b2.index("b")
    assert multiply(b2, multiply(b2, a, b), a) == a
    assert multiply(b2, multiply(b2, b, a), b) == b


def test_z2_square(z2):
    assert power(z2, 1, 2) == z2.identity


def test_ownership_checked(u1):
    with pytest.raises(RangeError):
        multiply(u1, 0, 2)


def test_idempotent_power_examples(b2):
    assert idempotent_power(b2, b2.index("a")) == b2.index("0")
    assert idempotent_power(b2, b2.index("ab")) == b2.index("ab")
    z3 = catalog.cyclic_group(3)
    assert idempotent_power(z3, 1) == z3.identity
    for e in b2.idempotents:
        assert idempotent_power(b2, e) == e


def test_idempotent_power_properties(small_monoids):
    for m in small_monoids:
        for x in m:
            powers = [power(m, x, k) for k in range(1, 2 * m.size + 2)]
            idem = [p for p in set(powers) if m.is_idempotent(p)]
            e = idempotent_power(m, x)
            assert idem == [e]


# ---------------------------------------------------------------- Green's relations


def test_green_of_group():
    g = green(catalog.cyclic_group(3))
    assert len(g.r_classes) == 1 and len(g.l_classes) == 1


def test_green_of_u1(u1):
    g = green(u1)
    assert sorted(g.r_classes) == [(0,), (1,)] and sorted(g.l_classes) == [(0,), (1,)]


def test_green_of_right_zero(rz):
    g = green(rz)
    a, b = rz.index("a"), rz.index("b")
    assert g.r_equivalent(a, b)
    assert g.r_ideals[a] == g.r_ideals[b] == {a, b}
    assert g.l_ideals[a] == {a} and g.l_ideals[b] == {b}
    assert len(g.l_classes) == 3


def test_green_invariants(small_monoids):
    for m in small_monoids:
        g = green(m)
        for x in m:
            assert x in g.r_ideals[x] and x in g.l_ideals[x]
            for y in m:
                assert g.r_equivalent(x, y) == (g.r_ideals[x] == g.r_ideals[y])
                assert g.l_equivalent(x, y) == (g.l_ideals[x] == g.l_ideals[y])


def test_r_compare_examples(u1, b2):
    for x in b2:
        assert r_compare(b2, b2.identity, x) in (Order.SAME, Order.V_BELOW)
    assert r_compare(u1, u1.index("0"), u1.index("1")) is Order.U_BELOW
    assert r_compare(b2, b2.index("a"), b2.index("ab")) is Order.SAME
    assert green(b2).r_ideals[b2.index("a")] == {b2.index(s) for s in ("a", "0", "ab")}


def test_right_multiplication_never_climbs(small_monoids):
    for m in small_monoids:
        for u in m:
            for w in m:
                assert r_compare(m, u, m.table[u][w]) in (Order.SAME, Order.V_BELOW)
                assert l_compare(m, u, m.table[w][u]) in (Order.SAME, Order.V_BELOW)


def test_triviality_examples(rz, z2):
    t = catalog.trivial()
    assert is_r_trivial(t) and is_l_trivial(t)
    assert not is_r_trivial(rz) and is_l_trivial(rz)
    assert not is_r_trivial(z2) and not is_l_trivial(z2)


# ---------------------------------------------------------------- products


def test_product_with_trivial(b2):
    assert are_isomorphic(direct_product(b2, catalog.trivial()), b2)


def test_u1_squared(u1):
    p = direct_product(u1, u1)
    assert p.size == 4
    assert all(p.table[x][y] == p.table[y][x] for x in p for y in p)
    assert all(p.is_idempotent(x) for x in p)


def test_lz_times_rz():
    p = catalog.lz_times_rz()
    assert p.size == 9
    assert not is_r_trivial(p) and not is_l_trivial(p)


def test_product_green_is_componentwise(tiny_monoids):
    for m1 in tiny_monoids:
        for m2 in tiny_monoids:
            p = direct_product(m1, m2)
            g, g1, g2 = green(p), green(m1), green(m2)
            for x in p:
                x1, x2 = unpair_index(m2, x)
                for y in p:
                    y1, y2 = unpair_index(m2, y)
                    if g.r_equivalent(x, y):
                        assert g1.r_equivalent(x1, y1) and g2.r_equivalent(x2, y2)
                    if g.l_equivalent(x, y):
                        assert g1.l_equivalent(x1, y1) and g2.l_equivalent(x2, y2)


def test_product_cap(b2):
    with pytest.raises(SizeBudgetExceeded):
        direct_product(b2, b2, cap=35)


# ---------------------------------------------------------------- enumeration and isomorphism


@pytest.mark.parametrize("order, count", [(1, 1), (2, 2), (3, 7), (4, 35)])
def test_enumeration_counts(order, count):
    assert len(enumerate_monoids(order)) == count


def test_order_two_is_u1_and_z2(u1, z2):
    ms = enumerate_monoids(2)
    assert sum(are_isomorphic(m, u1) for m in ms) == 1
    assert sum(are_isomorphic(m, z2) for m in ms) == 1


def test_enumerated_monoids_pairwise_non_isomorphic(small_monoids):
    for order in range(1, 5):
        ms = [m for m in small_monoids if m.size == order]
        for m1, m2 in itertools.combinations(ms, 2):
            assert not are_isomorphic(m1, m2)


def test_enumeration_is_deterministic():
    assert enumerate_monoids(3) == enumerate_monoids(3)


def test_enumeration_cap():
    with pytest.raises(CapExceeded):
        enumerate_monoids(5)


def test_isomorphism_examples(u1, z2, b2):
    assert are_isomorphic(b2, b2)
    assert not are_isomorphic(u1, z2)


def test_dual_monoids_are_distinct(lz, rz):
    assert not are_isomorphic(lz, rz)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_relabelled_copies_are_isomorphic(data):
    m = data.draw(st.sampled_from([catalog.b2(), catalog.lz_times_rz(), catalog.chain(4)]))
    perm = data.draw(st.permutations(list(range(m.size))))
    copy = _relabel(m, perm)
    f = find_isomorphism(m, copy)
    assert f is not None
    assert all(f[m.table[x][y]] == copy.table[f[x]][f[y]] for x in m for y in m)


# ---------------------------------------------------------------- division


def test_division_examples(u1, z2, b2):
    assert divides(b2, b2) is not None
    assert divides(u1, direct_product(u1, catalog.trivial())) is not None
    assert divides(u1, z2) is None


def test_division_witness_is_a_surjective_homomorphism(u1, b2):
    w = divides(u1, b2)
    sub = set(w.submonoid)
    f = w.homomorphism
    assert b2.identity in sub and set(f) == sub
    assert set(f.values()) == set(u1)
    for x in sub:
        for y in sub:
            assert f[b2.table[x][y]] == u1.table[f[x]][f[y]]


def test_division_prefers_small_submonoids(u1, b2):
    # {1, 0} is the smallest submonoid of B2 mapping onto U1
    assert len(divides(u1, b2).submonoid) == 2


def test_division_is_reflexive_and_transitive(tiny_monoids):
    ms = tiny_monoids
    rel = {(i, j): divides(ms[i], ms[j]) is not None for i in range(len(ms)) for j in range(len(ms))}
    for i in range(len(ms)):
        assert rel[i, i]
    for i, j, k in itertools.product(range(len(ms)), repeat=3):
        if rel[i, j] and rel[j, k]:
            assert rel[i, k]


def test_division_cap(u1):
    with pytest.raises(CapExceeded):
        divides(u1, catalog.chain(11))


# ---------------------------------------------------------------- generators and files


def test_generating_set(b2):
    gens = generating_set(b2)
    assert sorted(b2.label(g) for g in gens) == ["a", "b"]
    assert submonoid_generated(b2, gens) == frozenset(b2)


def test_json_round_trip(tmp_path, b2):
    path = tmp_path / "b2.json"
    path.write_text(json.dumps(b2.to_dict()))
    again = load_monoid(path)
    assert again == b2 and again.labels == b2.labels


def test_transformation_file_format():
    m = monoid_from_dict({"points": 2, "generators": [[1, 0], [0, 0], [1, 1]]})
    assert m.size == 4


@pytest.mark.parametrize("data", [[1, 2], {"size": 3, "table": [[0]]}, {"nothing": 1}])
def test_bad_monoid_files(data):
    with pytest.raises(FormatError):
        monoid_from_dict(data)


def test_unvalidated_constructor_is_trusting():
    rng = random.Random(0)
    rows = tuple(tuple(rng.randrange(3) for _ in range(3)) for _ in range(3))
    assert FiniteMonoid(rows).size == 3
