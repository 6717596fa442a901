import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from adamsring.catalog import CATALOG, get_group
from adamsring.groups import (
    AbelianStructure,
    GroupError,
    abelian_structure,
    center,
    cyclic,
    dihedral,
    direct_product,
    extension,
    find_isomorphism,
    from_permutations,
    from_table,
    generated_subgroup,
    is_normal,
    klein,
    normal_abelian_subgroups,
    normal_subgroups,
    quaternion8,
    subgroup,
    subgroups,
    symmetric,
)


def brute_classes(G):
    """Oracle: orbits of elementwise conjugation."""
    seen, out = set(), []
    for x in range(G.order):
        if x in seen:
            continue
        orbit = {int(G.mul[G.mul[g, x], G.inv[g]]) for g in range(G.order)}
        seen |= orbit
        out.append(frozenset(orbit))
    return set(out)


def brute_subgroups(G):
    """Oracle: every subset containing 1 that is closed under the product."""
    rest = range(1, G.order)
    out = []
    for r in range(G.order):
        for combo in itertools.combinations(rest, r):
            s = (0,) + combo
            ss = set(s)
            if all(int(G.mul[a, b]) in ss for a in s for b in s):
                out.append(s)
    return out


def test_from_table_relabels_identity():
    # C3 with the identity stored at index 2
    mul = [[1, 2, 0], [2, 0, 1], [0, 1, 2]]
    G = from_table(mul, ["a", "b", "e"])
    assert G.labels[0] == "e"
    assert np.array_equal(G.mul[0], np.arange(3))
    assert G.order == 3 and G.exponent == 3


@pytest.mark.parametrize(
    "mul, message",
    [
        ([[0, 1], [1, 1]], "no inverse"),
        ([[0, 0], [0, 0]], "no identity"),
        ([[0, 1, 2], [1, 2, 2], [2, 2, 2]], "no inverse for 1"),
        ([[0, 5], [1, 0]], "not closed"),
    ],
)
def test_from_table_errors(mul, message):
    with pytest.raises(GroupError, match=message):
        from_table(mul)


def test_from_table_detects_non_associative():
    # a loop of order 5 that is a Latin square with identity but not associative
    mul = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(GroupError, match="not associative"):
        from_table(mul)


def test_s3_from_permutations():
    G = from_permutations([[1, 0, 2], [1, 2, 0]])
    assert G.order == 6
    assert len(G.conjugacy.classes) == 3
    assert {frozenset(c) for c in G.conjugacy.classes} == brute_classes(G)
    # mul is composition with the right factor applied first
    P = G.permutations
    for i, j in itertools.product(range(6), repeat=2):
        assert P[G.mul[i, j]] == tuple(P[i][P[j][x]] for x in range(3))


def test_permutation_limit():
    with pytest.raises(GroupError, match="exceeds limit"):
        from_permutations([[1, 0, 2, 3, 4], [1, 2, 3, 4, 0]], limit=100)


def test_d8_and_q8_classes():
    for G, sizes in ((dihedral(8), [1, 1, 2, 2, 2]), (quaternion8(), [1, 1, 2, 2, 2])):
        cd = G.conjugacy
        assert sorted(cd.sizes) == sizes
        assert {frozenset(c) for c in cd.classes} == brute_classes(G)


def test_d8_presentation():
    G = dihedral(8)
    x, y, q = G.index("x"), G.index("y"), G.index("q")
    assert (x, y, q) == (1, 2, 4)
    assert G.power(x, 2) == G.power(y, 2) == G.power(q, 2) == 0
    comm = lambda a, b: G.m(a, b, G.inv[a], G.inv[b])
    assert comm(x, y) == 0 and comm(q, y) == 0 and comm(q, x) == y
    assert center(G) == (0, y)


def test_q8_normal_abelian_subgroups_against_exhaustive_scan():
    G = quaternion8()
    subs = brute_subgroups(G)
    want = sorted(
        (s for s in subs if is_normal(G, s) and all(G.mul[a, b] == G.mul[b, a] for a in s for b in s)),
        key=lambda s: (len(s), s),
    )
    assert normal_abelian_subgroups(G) == want
    assert [len(s) for s in want] == [1, 2, 4, 4, 4]


@pytest.mark.parametrize("name", ["D8", "Q8", "S3", "A4", "C2xC4", "Klein"])
def test_subgroup_lattice_against_exhaustive_scan(name):
    G = get_group(name)
    assert sorted(subgroups(G)) == sorted(brute_subgroups(G))
    normals = [s for s in brute_subgroups(G) if is_normal(G, s)]
    assert sorted(normal_subgroups(G)) == sorted(normals)


def test_abelian_structure_c2xc4():
    G = direct_product(cyclic(2), cyclic(4))
    s = abelian_structure(G)
    assert s.invariant_factors == (2, 4)
    images = {s.element(c) for c in itertools.product(range(2), range(4))}
    assert images == set(range(8))
    for g, c in s.coordinates.items():
        assert s.element(c) == g


@pytest.mark.parametrize(
    "name, factors",
    [("C12", (12,)), ("C2xC6", (2, 6)), ("C4xC4", (4, 4)), ("C2xC2xC2", (2, 2, 2)), ("C3xC3", (3, 3)),
     ("C2xC2xC4", (2, 2, 4)), ("C1", ())],
)
def test_invariant_factors(name, factors):
    s = abelian_structure(get_group(name))
    assert s.invariant_factors == factors
    for a, b in zip(factors, factors[1:]):
        assert b % a == 0


@given(st.lists(st.sampled_from([2, 3, 4, 6]), min_size=1, max_size=3))
def test_abelian_structure_coordinates_are_additive(orders):
    G = cyclic(orders[0])
    for n in orders[1:]:
        G = direct_product(G, cyclic(n))
    s = abelian_structure(G)
    d = s.invariant_factors
    assert int(np.prod(d)) == G.order
    for g, h in itertools.islice(itertools.product(range(G.order), repeat=2), 200):
        cg, ch = s.coordinates[g], s.coordinates[h]
        assert s.coordinates[int(G.mul[g, h])] == tuple((a + b) % m for a, b, m in zip(cg, ch, d))


def test_from_generators_rejects_bad_basis():
    G = klein()
    with pytest.raises(GroupError):
        AbelianStructure.from_generators(G, [1, 1], [2, 2])
    s = AbelianStructure.from_generators(G, [1, 2], [2, 2])
    assert s.element((1, 1)) == 3


def test_extension_d8():
    G = dihedral(8)
    ext = extension(G, (0, 1, 2, 3))
    assert ext.Q.order == 2
    assert ext.section == (0, 4)
    for g, h in itertools.product(range(8), repeat=2):
        assert ext.q_of(int(G.mul[g, h])) == ext.Q.mul[ext.q_of(g), ext.q_of(h)]


def test_extension_errors():
    G = symmetric(3)
    transposition = next(g for g in range(6) if G.element_orders[g] == 2)
    with pytest.raises(GroupError, match="not normal"):
        extension(G, (0, transposition))
    with pytest.raises(GroupError, match="not abelian"):
        extension(G, tuple(range(6)))


@given(st.sampled_from(CATALOG))
def test_catalog_groups_are_groups(name):
    G = get_group(name)
    g = from_table(G.mul)
    assert g.order == G.order
    # exponent equals lcm of element orders and kills every element
    for x in range(G.order):
        assert G.power(x, G.exponent) == 0
    cd = G.conjugacy
    assert sum(cd.sizes) == G.order
    assert all(G.order % s == 0 for s in cd.sizes)
    for k in (-1, 2, 3, G.exponent + 1):
        pm = cd.power_map(k)
        for ci, c in enumerate(cd.classes):
            for x in c:
                assert cd.class_of[G.power(x, k)] == pm[ci]
    assert np.array_equal(cd.power_map(G.exponent + 1), np.arange(len(cd)))


def test_generated_subgroup_and_subgroup_table():
    G = symmetric(4)
    V = [g for g in range(G.order) if G.element_orders[g] == 2 and all(
        G.permutations[g][G.permutations[g][i]] == i and G.permutations[g][i] != i for i in range(4))]
    K = generated_subgroup(G, V)
    assert len(K) == 4 and is_normal(G, K)
    H = subgroup(G, K)
    assert H.is_abelian() and H.parent is G
    for i, j in itertools.product(range(4), repeat=2):
        assert H.parent_indices[H.mul[i, j]] == G.mul[H.parent_indices[i], H.parent_indices[j]]


def test_find_isomorphism():
    f = find_isomorphism(get_group("C2xC4"), get_group("C4xC2"))
    G, H = get_group("C2xC4"), get_group("C4xC2")
    assert f is not None
    for a, b in itertools.product(range(8), repeat=2):
        assert f[G.mul[a, b]] == H.mul[f[a], f[b]]
    assert find_isomorphism(dihedral(8), quaternion8()) is None
    assert find_isomorphism(cyclic(4), klein()) is None


def test_catalog_errors():
    with pytest.raises(KeyError, match="unknown group name"):
        get_group("Z9")
    with pytest.raises(GroupError, match="exceeds limit"):
        get_group("C8xC8", limit=32)
