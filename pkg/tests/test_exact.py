import itertools
import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from adamsring.exact import (
    Cyclotomic,
    NotRationalError,
    QmodZ,
    check_solution,
    cyclotomic_polynomial,
    euler_phi,
    parse_rational,
    pretty,
    qmodz_to_cyclotomic,
    smith_normal_form,
    solve_mod,
    zeta,
)

# ---------------------------------------------------------------------------
# examples


def test_zeta4_is_i():
    i = zeta(4, 1)
    assert i.order == 4 and i.coeffs == {1: 1}
    assert i * i == -1


def test_zeta3_sum():
    assert zeta(3, 1) + zeta(3, 2) == -1


def test_zeta8_squared_is_zeta4():
    assert zeta(8, 2) == zeta(4, 1)
    assert hash(zeta(8, 2)) == hash(zeta(4, 1))


def test_zeta_zero_power_is_one():
    for n in (1, 2, 5, 12):
        assert zeta(n, 0) == 1


def test_conjugate_of_i():
    assert zeta(4, 1).conjugate() == zeta(4, 3)


def test_zeta5_product():
    assert zeta(5, 1) * zeta(5, 4) == 1


def test_as_rational_against_numeric_oracle():
    x = zeta(6, 1) + zeta(6, 5)
    mpmath.mp.dps = 30
    num = mpmath.exp(2j * mpmath.pi / 6) + mpmath.exp(10j * mpmath.pi / 6)
    assert abs(num - 1) < mpmath.mpf(10) ** -25
    assert x.as_rational() == 1


def test_as_rational_rejects_irrational():
    with pytest.raises(NotRationalError, match="not rational"):
        zeta(4, 1).as_rational()


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert len(cyclotomic_polynomial(12)) == euler_phi(12) + 1


def test_qmodz_to_cyclotomic_examples():
    assert qmodz_to_cyclotomic(QmodZ(0)) == 1
    assert qmodz_to_cyclotomic(QmodZ("1/2")) == -1
    assert qmodz_to_cyclotomic(QmodZ("1/4")) == zeta(4, 1)


def test_qmodz_wraps():
    assert QmodZ("3/4") + QmodZ("1/2") == QmodZ("1/4")
    assert QmodZ("-1/3") == QmodZ("2/3")
    assert QmodZ("5/2").to_json() == "1/2"


def test_pretty_forms():
    assert pretty(Cyclotomic.rational(-1)) == "-1"
    assert pretty(zeta(4, 1)) == "i"
    assert pretty(zeta(8, 2) + Fraction(1, 2)) == "1/2 + i"
    assert pretty(zeta(3, 1)) == "z3"


def test_json_roundtrip_uses_minimal_field():
    x = zeta(8, 2) * 3
    data = x.to_json()
    assert data == {"order": 4, "coeffs": [[1, "3/1"]]}
    assert Cyclotomic.from_json(data) == x


def test_parse_rational():
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert parse_rational(4) == 4


# ---------------------------------------------------------------------------
# Smith normal form and solve_mod


def determinantal_divisors(A):
    """Oracle: d_k = gcd of all k x k minors; elementary divisors are d_k / d_(k-1)."""
    m, n = len(A), len(A[0])

    def det(M):
        if len(M) == 1:
            return M[0][0]
        return sum((-1) ** j * M[0][j] * det([row[:j] + row[j + 1:] for row in M[1:]]) for j in range(len(M)))

    out, prev = [], 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = math.gcd(g, det([[A[r][c] for c in cols] for r in rows]))
        if g == 0:
            out.extend([0] * (min(m, n) - k + 1))
            break
        out.append(g // prev)
        prev = g
    return out


def _matmul(A, B):
    return [[sum(A[i][t] * B[t][j] for t in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


def _det(M):
    if len(M) == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * _det([row[:j] + row[j + 1:] for row in M[1:]]) for j in range(len(M)))


def test_snf_examples():
    assert smith_normal_form([[1, 0], [0, 1]]).diagonal == [1, 1]
    assert smith_normal_form([[2, 4], [6, 8]]).diagonal == [2, 4]
    assert determinantal_divisors([[2, 4], [6, 8]]) == [2, 4]
    assert smith_normal_form([[0, 0], [0, 0]]).diagonal == [0, 0]


int_matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-12, 12), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


@given(int_matrices)
def test_snf_properties(A):
    s = smith_normal_form(A)
    U = s.U.tolist()
    V = s.V.tolist()
    D = s.D.tolist()
    assert _matmul(_matmul(U, A), V) == D
    assert abs(_det(U)) == 1 and abs(_det(V)) == 1
    diag = s.diagonal
    assert all(d >= 0 for d in diag)
    for i in range(len(D)):
        for j in range(len(D[0])):
            if i != j:
                assert D[i][j] == 0
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) or (a != 0 and b % a == 0)
    assert diag == determinantal_divisors(A)


def test_solve_mod_examples():
    assert solve_mod([[1]], [QmodZ("1/2")]) == [QmodZ("1/2")]
    x = solve_mod([[2]], [QmodZ("1/2")])
    assert x is not None and 2 * x[0] == QmodZ("1/2")
    assert solve_mod([[0]], [QmodZ("1/3")]) is None


@given(int_matrices, st.data())
def test_solve_mod_solutions_substitute_back(A, data):
    n = len(A[0])
    x0 = [QmodZ(Fraction(data.draw(st.integers(0, 11)), data.draw(st.sampled_from([1, 2, 3, 4, 6, 12]))))
          for _ in range(n)]
    r = [sum((a * xi for a, xi in zip(row, x0)), QmodZ(0)) for row in A]
    x = solve_mod(A, r)
    assert x is not None
    assert check_solution(A, x, r)


# ---------------------------------------------------------------------------
# field axioms


@st.composite
def cyclotomics(draw, orders=st.sampled_from([1, 2, 3, 4, 5, 6, 8, 12, 15, 24])):
    n = draw(orders)
    terms = draw(st.dictionaries(st.integers(0, n - 1), st.fractions(min_value=-5, max_value=5, max_denominator=6),
                                 max_size=4))
    return Cyclotomic.from_raw(n, terms)


@given(cyclotomics(), cyclotomics(), cyclotomics())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == 0


@given(cyclotomics())
def test_inverses(a):
    if not a.is_zero():
        assert a * a.inverse() == 1


@given(cyclotomics(), cyclotomics())
def test_conjugation(a, b):
    assert a.conjugate().conjugate() == a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()


@given(cyclotomics())
def test_hash_consistent_with_embedding(a):
    assert hash(a) == hash(a.embed(a.order * 2))
    assert a == a.embed(a.order * 3)


@given(cyclotomics())
def test_numeric_value_matches(a):
    num = a.complex()
    assert abs(num - a.minimal().complex()) < 1e-9


qz = st.fractions(min_value=0, max_value=1, max_denominator=24).map(QmodZ)


@given(qz, qz)
def test_qmodz_homomorphism(a, b):
    assert qmodz_to_cyclotomic(a + b) == qmodz_to_cyclotomic(a) * qmodz_to_cyclotomic(b)
