import itertools
import os
import subprocess
import sys

import numpy as np
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from adamsring import _accel, _kernels
from adamsring.groups import dihedral, quaternion8, symmetric

FAST = _accel._impl
NP = _kernels.NUMPY_KERNELS
PRIMES = st.sampled_from([5, 7, 13, 97, 1009, 65537])


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def charpoly_leibniz(A, p):
    """det(xI - A) mod p by the permutation expansion; lowest degree first."""
    n = len(A)
    total = [0] * (n + 1)
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = [1]
        for i in range(n):
            entry = [(-A[i][perm[i]]) % p] + ([1] if perm[i] == i else [0])
            term = _poly_mul(term, entry, p)
        for d, c in enumerate(term):
            total[d] = (total[d] + sign * c) % p
    return total


square = st.integers(1, 5).flatmap(
    lambda n: hnp.arrays(np.int64, (n, n), elements=st.integers(-50, 50))
)


@given(square, PRIMES)
def test_charpoly_against_leibniz(A, p):
    want = charpoly_leibniz(A.tolist(), p)
    assert FAST["charpoly_mod_p"](A.copy(), p).tolist() == want
    assert NP["charpoly_mod_p"](A.copy(), p).tolist() == want


rect = st.tuples(st.integers(1, 6), st.integers(1, 6)).flatmap(
    lambda s: hnp.arrays(np.int64, s, elements=st.integers(-30, 30))
)


def _rank_mod_p(A, p):
    M = [[int(v) % p for v in row] for row in A]
    r = 0
    for c in range(len(M[0])):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], p - 2, p)
        M[r] = [v * inv % p for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[r])]
        r += 1
    return r


@given(rect, PRIMES)
def test_rref_backends_agree_and_are_reduced(A, p):
    M1, piv1 = FAST["rref_mod_p"](A.copy(), p)
    M2, piv2 = NP["rref_mod_p"](A.copy(), p)
    assert np.array_equal(M1, M2) and np.array_equal(piv1, piv2)
    assert len(piv1) == _rank_mod_p(A, p)
    for r, c in enumerate(piv1):
        col = M1[:, c]
        assert col[r] == 1 and np.count_nonzero(col) == 1
    # same row space: stacking adds no rank
    assert _rank_mod_p(np.vstack([M1, A]), p) == len(piv1)


mults = st.tuples(st.integers(1, 3), st.integers(1, 3), st.integers(1, 4), st.integers(1, 6)).flatmap(
    lambda s: st.tuples(
        hnp.arrays(np.int64, (s[0], s[2], s[3]), elements=st.integers(0, 4)),
        hnp.arrays(np.int64, (s[1], s[2], s[3]), elements=st.integers(0, 4)),
        hnp.arrays(np.int64, (s[2],), elements=st.integers(1, 6)),
    )
)


@given(mults)
def test_pair_sums_and_products(data):
    X, Y, w = data
    a, nc, e = X.shape
    S = np.zeros((a, Y.shape[0], e), dtype=np.int64)
    P = np.zeros((a, Y.shape[0], nc, e), dtype=np.int64)
    for i, j, c, l, l2 in itertools.product(range(a), range(Y.shape[0]), range(nc), range(e), range(e)):
        S[i, j, (l - l2) % e] += w[c] * X[i, c, l] * Y[j, c, l2]
        P[i, j, c, (l + l2) % e] += X[i, c, l] * Y[j, c, l2]
    for impl in (FAST, NP):
        assert np.array_equal(impl["pair_sums"](X, Y, w), S)
        assert np.array_equal(impl["products"](X, Y), P)


def test_class_constants_against_definition():
    for G in (dihedral(8), quaternion8(), symmetric(4)):
        cd = G.conjugacy
        r = len(cd.classes)
        reps = np.array([c[0] for c in cd.classes], dtype=np.int64)
        class_of = np.asarray(cd.class_of, dtype=np.int64)
        want = np.zeros((r, r, r), dtype=np.int64)
        for j, k, l in itertools.product(range(r), repeat=3):
            z = reps[l]
            want[j, k, l] = sum(
                1 for x in cd.classes[j] if class_of[G.mul[G.inv[x], z]] == k
            )
        for impl in (FAST, NP):
            got = impl["class_constants"](G.mul, G.inv, class_of, reps, r)
            assert np.array_equal(got, want)


def test_associativity_failure():
    good = dihedral(8).mul
    for impl in (FAST, NP):
        assert impl["associativity_failure"](good)[0] == -1
    bad = good.copy()
    bad[1, 2], bad[1, 3] = bad[1, 3], bad[1, 2]
    for impl in (FAST, NP):
        i, j, k = impl["associativity_failure"](bad)
        assert i >= 0 and bad[bad[i, j], k] != bad[i, bad[j, k]]


def test_env_flag_selects_numpy_backend():
    code = (
        "from adamsring import _accel, character_table\n"
        "from adamsring.catalog import get_group\n"
        "T = character_table(get_group('S4'))\n"
        "print(_accel.BACKEND, [str(v) for ch in T.characters for v in ch.values])\n"
    )
    outs = {}
    for flag in ("1", "0"):
        env = dict(os.environ, ADAMSRING_DISABLE_NUMBA=flag)
        res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        backend, _, rest = res.stdout.partition(" ")
        outs[backend] = rest
    assert set(outs) == {"numpy", "numba"}
    assert outs["numpy"] == outs["numba"]
