import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from adamsring.catalog import get_group
from adamsring.chartab import ClassFunction, character_table
from adamsring.exact import QmodZ
from adamsring.groups import (
    abelian_structure,
    center,
    dihedral,
    extension,
    find_isomorphism,
    normal_abelian_subgroups,
)
from adamsring.lambdaring import adams
from adamsring.twist import (
    Cochain1,
    Cocycle2,
    DualGroup,
    TwistError,
    _standard_cocycle,
    alternate_z,
    build_twist,
    coboundary_holds,
    d8_example,
    enumerate_invariant_nondegenerate,
    is_bicharacter,
    is_invariant_class,
    is_nondegenerate,
    is_normalized,
    klein_example,
    klein_labels,
    match_characters,
    q_action,
    skew,
    twists,
)

TWIST_GROUPS = ["D8", "A4", "C2xC4", "S4", "Q8xC2", "D8xC2", "C4xC4", "C3xC3", "C2xC2xC4"]


def _all_twists():
    out = []
    for name in TWIST_GROUPS:
        for i, t in enumerate(twists(get_group(name))):
            out.append((name, i, t))
    return out


ALL = _all_twists()
twist_cases = st.sampled_from(ALL).map(lambda c: c[2])


# ---------------------------------------------------------------------------
# the D8 example


def test_d8_example_cocycle_b():
    t = d8_example()
    G = t.G
    y = G.index("y")
    assert t.ext.Q.order == 2
    assert t.b(1, 1) == y
    assert t.b(0, 0) == t.b(0, 1) == t.b(1, 0) == 0
    assert t.is_nondegenerate


def test_d8_example_z_matches_solver():
    t = d8_example()
    auto = build_twist(t.G, t.ext.A, t.alpha, structure=t.ext.structure)
    assert [c.values for c in auto.z] == [c.values for c in t.z]
    # characters (0,0), (0,1), (1,0), (1,1); z(q) = b/4
    assert [str(v) for v in t.z[1].values] == ["0", "1/4", "0", "1/4"]


def test_d8_twisted_group_is_d8_via_explicit_map():
    t = d8_example()
    G, Gb = t.G, t.G_b

    def f(g):
        i, j, k = g & 1, (g >> 1) & 1, g >> 2
        return ((i + k) % 2) + 2 * j + 4 * k

    for g, h in itertools.product(range(8), repeat=2):
        assert f(int(Gb.mul[g, h])) == G.mul[f(g), f(h)]
    assert sorted(Gb.element_orders.tolist()) == sorted(G.element_orders.tolist())


def test_d8_adams_two_changes_odd_do_not():
    t = d8_example()
    c2 = t.compare(2)
    assert not c2.equal
    # table order is V00, V01, V10, V11, W with V_ab(x) = (-1)^a, V_ab(q) = (-1)^b
    assert c2.original[4].tolist() == [1, 1, 1, -1, 0]
    assert c2.twisted[4].tolist() == [1, 1, -1, 1, 0]
    for k in (1, 3, 5, 7, 9, 11):
        assert t.compare(k).equal


def test_d8_power_discrepancy():
    t = d8_example()
    G = t.G
    for g in range(8):
        for k in (1, 2, 3, 4, 5, 7):
            tp = t.twisted_power(g, k)
            assert tp == t.G_b.power(g, k)
            assert tp == G.m(t.power_discrepancy(g, k), G.power(g, k))


# ---------------------------------------------------------------------------
# pairings and enumeration


@st.composite
def bilinear_cocycles(draw, dual):
    m = len(dual.factors)
    f = dual.factors
    coeffs = [[Fraction(draw(st.integers(0, 11)), math.gcd(f[i], f[j])) for j in range(m)] for i in range(m)]
    rows = []
    for v in dual.characters:
        rows.append([
            sum((coeffs[i][j] * v[i] * w[j] for i in range(m) for j in range(m)), Fraction(0)) for w in dual.characters
        ])
    return Cocycle2.from_values(rows)


DUAL_C2C4 = DualGroup(abelian_structure(get_group("C2xC4")))


@given(bilinear_cocycles(DUAL_C2C4), bilinear_cocycles(DUAL_C2C4))
def test_skew_is_additive_and_alternating(a, b):
    dual = DUAL_C2C4
    assert a.is_cocycle(dual) and b.is_cocycle(dual)
    n = len(dual)
    ab = Cocycle2(tuple(tuple(a(i, j) + b(i, j) for j in range(n)) for i in range(n)))
    sa, sb, sab = skew(a), skew(b), skew(ab)
    assert all(sab[i][j] == sa[i][j] + sb[i][j] for i in range(n) for j in range(n))
    assert is_bicharacter(sa, dual)
    assert all(sa[i][i].is_zero() for i in range(n))
    assert all(sa[i][j] == -sa[j][i] for i in range(n) for j in range(n))


def _f2_rank(M):
    M = [row[:] for row in M]
    r = 0
    for c in range(len(M[0])):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(len(M)):
            if i != r and M[i][c]:
                M[i] = [(a + b) % 2 for a, b in zip(M[i], M[r])]
        r += 1
    return r


def test_klein_by_klein_pairings_against_exhaustive_count():
    G = get_group("C2xC2xC2xC2")
    ext = extension(G, range(16))
    found = enumerate_invariant_nondegenerate(ext)
    # oracle: alternating 4x4 matrices over F2 of full rank
    pairs = list(itertools.combinations(range(4), 2))
    count = 0
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        M = [[0] * 4 for _ in range(4)]
        for (i, j), b in zip(pairs, bits):
            M[i][j] = M[j][i] = b
        count += _f2_rank(M) == 4
    assert count == 28
    assert len(found) == count
    assert len({skew(a) for a in found}) == count
    dual = DualGroup(ext.structure)
    assert all(is_nondegenerate(skew(a)) and a.is_cocycle(dual) for a in found)


def test_cyclic_subgroup_has_no_nondegenerate_pairing():
    G = dihedral(8)
    ext = extension(G, center(G))
    assert enumerate_invariant_nondegenerate(ext) == []
    with pytest.raises(TwistError, match="no invariant nondegenerate"):
        build_twist(G, center(G))


def test_klein_example_pairing():
    T, s = klein_example()
    labels = klein_labels(T)
    assert sorted(labels) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    for (i, j), row in zip(labels, s):
        for (k, l), v in zip(labels, row):
            assert v == QmodZ(Fraction(i * l + j * k, 2))
    assert all(s[i][i].is_zero() for i in range(4))
    assert is_nondegenerate(s)


# ---------------------------------------------------------------------------
# input validation


def test_build_twist_rejects_bad_inputs():
    t = d8_example()
    G, A, st_ = t.G, t.ext.A, t.ext.structure
    n = len(t.dual)
    not_cocycle = Cocycle2.from_values([[QmodZ("1/2") if (i, j) == (1, 2) else QmodZ(0) for j in range(n)]
                                        for i in range(n)])
    with pytest.raises(TwistError, match="not a 2-cocycle"):
        build_twist(G, A, not_cocycle, structure=st_)
    with pytest.raises(TwistError, match="wrong shape"):
        build_twist(G, A, Cocycle2.from_values([[0]]), structure=st_)
    bad_z = {1: [0, 0, 0, 0]}
    with pytest.raises(TwistError, match="coboundary"):
        build_twist(G, A, t.alpha, bad_z, structure=st_)
    with pytest.raises(TwistError, match="wrong length"):
        build_twist(G, A, t.alpha, {1: [0]}, structure=st_)


def test_non_invariant_class_rejected():
    # A = C2^3 inside D8 x C2; the quotient acts nontrivially, so some alternating pairings move
    G = get_group("D8xC2")
    A = next(N for N in normal_abelian_subgroups(G)
             if len(N) == 8 and abelian_structure(G, N).invariant_factors == (2, 2, 2))
    ext = extension(G, A)
    dual = DualGroup(ext.structure)
    rejected = 0
    for bits in itertools.product((0, 1), repeat=3):
        vals = {pr: Fraction(b, 2) for pr, b in zip([(0, 1), (0, 2), (1, 2)], bits) if b}
        alpha = _standard_cocycle(dual, vals)
        assert alpha.is_cocycle(dual)
        if not is_invariant_class(ext, alpha):
            rejected += 1
            with pytest.raises(TwistError, match="not Q-invariant"):
                build_twist(G, A, alpha, structure=ext.structure)
    assert 0 < rejected < 8


def test_match_characters_error():
    T1 = character_table(get_group("D8"))
    T2 = character_table(get_group("C8"))
    with pytest.raises(TwistError, match="no character matching"):
        match_characters(T1, T2)


# ---------------------------------------------------------------------------
# invariants over every twist of several groups


@given(twist_cases)
def test_z_family_and_b(t):
    action = t.action
    for zq in t.z:
        assert coboundary_holds(t.alpha, action, zq)
        assert is_normalized(action, zq)
    Q, G = t.ext.Q, t.G
    for p, q, r in itertools.product(range(Q.order), repeat=3):
        assert G.m(t.b(p, q), t.b(int(Q.mul[p, q]), r)) == G.m(action.on_A[p][t.b(q, r)], t.b(p, int(Q.mul[q, r])))


@given(twist_cases)
def test_twisted_group_shape(t):
    G, Gb = t.G, t.G_b
    assert Gb.order == G.order
    assert len(Gb.conjugacy) == len(G.conjugacy)
    assert Gb.exponent == G.exponent
    # A stays a normal abelian subgroup with the same quotient
    assert extension(Gb, t.ext.A).Q.order == t.ext.Q.order


@given(twist_cases)
def test_odd_adams_agree(t):
    e = t.G.exponent
    for k in range(1, 2 * e, 2):
        assert t.compare(k).equal


@given(twist_cases)
def test_twisted_characters_are_irreducible(t):
    Tb = t.twisted_table()
    Gb = t.G_b
    for chi in t.table().characters:
        vals = t.twisted_character(chi)
        cf = ClassFunction(Gb.conjugacy, [vals[c[0]] for c in Gb.conjugacy.classes])
        assert all(vals[g] == cf(g) for g in range(Gb.order))
        assert Tb.index_of(cf) >= 0


@given(twist_cases, st.sampled_from([3, 5, 7]))
def test_power_discrepancy_odd(t, k):
    G = t.G
    for g in range(G.order):
        assert t.G_b.power(g, k) == G.m(t.power_discrepancy(g, k), G.power(g, k))


@given(twist_cases, st.integers(0, 20))
def test_alternate_z_gives_same_comparison(t, seed):
    z2 = alternate_z(t, seed)
    action = t.action
    assert all(coboundary_holds(t.alpha, action, c) and is_normalized(action, c) for c in z2)
    t2 = build_twist(t.G, t.ext.A, t.alpha, z2, structure=t.ext.structure)
    assert find_isomorphism(t.G_b, t2.G_b) is not None
    for k in range(1, t.G.exponent + 1):
        assert t.compare(k).equal == t2.compare(k).equal
    assert np.array_equal(adams(t2.twisted_table(), 2)[0], adams(t.twisted_table(), 2)[0])


def test_twist_count_examples():
    assert len(list(twists(get_group("D8")))) == 2
    assert list(twists(get_group("Q8"))) == []
    assert len(list(twists(get_group("C2xC2xC2xC2"), invariant_factors=(2, 2)))) == 35
    assert len(list(twists(get_group("C2xC2xC2xC2"), invariant_factors=(2, 2, 2, 2)))) == 28


def test_q_action_on_d8():
    t = d8_example()
    action = q_action(t.ext)
    dual = action.dual
    # q x q^-1 = xy, so q moves exactly the characters nontrivial on y
    moved = [phi for phi in range(len(dual)) if action.on_dual[1][phi] != phi]
    assert sorted(dual.characters[phi] for phi in moved) == [(0, 1), (1, 1)]
    assert action.fixed(1) == tuple(dual.index[v] for v in [(0, 0), (1, 0)])


def test_cochain_json():
    t = d8_example()
    assert Cochain1(1, t.z[1].values).to_json() == ["0/1", "1/4", "0/1", "1/4"]
