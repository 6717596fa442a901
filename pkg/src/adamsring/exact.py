"""Exact arithmetic: rationals, cyclotomic numbers, Q/Z values and Smith normal form.

Cyclotomic numbers are stored in the power basis ``1, z, ..., z^(phi(n)-1)`` of
``Q(zeta_n)`` reduced modulo the n-th cyclotomic polynomial.  Two elements of
different orders are compared after embedding both into the field of the lcm
order, so arithmetic never has to search for the smallest field.  ``minimal()``
does that search when a canonical representative is wanted (hashing, output).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

Rational = Fraction

__all__ = [
    "Rational",
    "parse_rational",
    "format_rational",
    "Cyclotomic",
    "zeta",
    "NotRationalError",
    "QmodZ",
    "qmodz_to_cyclotomic",
    "SmithDecomposition",
    "smith_normal_form",
    "solve_mod",
    "cyclotomic_polynomial",
    "euler_phi",
]


class NotRationalError(ValueError):
    pass


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    return Fraction(text.strip())


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# cyclotomic polynomials and reduction tables


def euler_phi(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists, lowest degree first; den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    assert not any(num[: len(den) - 1]), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row e holds zeta_n^e written in the power basis of Q(zeta_n)."""
    phi = euler_phi(n)
    poly = cyclotomic_polynomial(n)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(phi):
                cur[i] -= top * poly[i]
    return tuple(rows)


@lru_cache(maxsize=None)
def reduction_matrix(n: int) -> np.ndarray:
    """``(n, phi(n))`` int64 matrix mapping raw exponent vectors to the power basis."""
    m = np.array(_reduction_table(n), dtype=np.int64).reshape(n, euler_phi(n))
    m.setflags(write=False)
    return m


# ---------------------------------------------------------------------------
# cyclotomic numbers

Scalar = Union[int, Fraction]


class Cyclotomic:
    """An element of Q(zeta_n) in canonical power-basis form.

    Instances are immutable.  ``coeffs`` maps exponents in ``[0, phi(n))`` to
    nonzero rationals.
    """

    __slots__ = ("order", "_coeffs", "_minimal", "_hash")

    def __init__(self, order: int, coeffs: Mapping[int, Scalar] | None = None):
        if order < 1:
            raise ValueError("order must be positive")
        self.order = order
        raw = {} if coeffs is None else {int(k): Fraction(v) for k, v in coeffs.items()}
        self._coeffs = _reduce_raw(order, raw)
        self._minimal = None
        self._hash = None

    @classmethod
    def _make(cls, order: int, canonical: tuple) -> "Cyclotomic":
        obj = object.__new__(cls)
        obj.order = order
        obj._coeffs = canonical
        obj._minimal = None
        obj._hash = None
        return obj

    @classmethod
    def from_raw(cls, order: int, raw: Mapping[int, Scalar] | Sequence[Scalar]) -> "Cyclotomic":
        """Build sum(raw[e] * zeta_order^e) for arbitrary integer exponents e."""
        if not isinstance(raw, Mapping):
            raw = {e: c for e, c in enumerate(raw) if c}
        return cls._make(order, _reduce_raw(order, {int(e): Fraction(c) for e, c in raw.items()}))

    @classmethod
    def rational(cls, value: Scalar) -> "Cyclotomic":
        value = Fraction(value)
        return cls._make(1, ((0, value),) if value else ())

    # -- basic accessors

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_rational(self) -> bool:
        return all(e == 0 for e, _ in self._coeffs)

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise NotRationalError(f"not rational: {self}")
        return self._coeffs[0][1] if self._coeffs else Fraction(0)

    def is_integer(self) -> bool:
        return self.is_rational() and self.as_rational().denominator == 1

    def embed(self, order: int) -> "Cyclotomic":
        """The same number written over Q(zeta_order); ``self.order`` must divide ``order``."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot embed order {self.order} into order {order}")
        step = order // self.order
        return Cyclotomic._make(order, _reduce_raw(order, {e * step: c for e, c in self._coeffs}))

    def dense(self, order: int | None = None) -> tuple[Fraction, ...]:
        """Power-basis coefficient vector at ``order`` (default: own order)."""
        x = self if order is None else self.embed(order)
        out = [Fraction(0)] * euler_phi(x.order)
        for e, c in x._coeffs:
            out[e] = c
        return tuple(out)

    # -- arithmetic

    @staticmethod
    def _coerce(other) -> "Cyclotomic | None":
        if isinstance(other, Cyclotomic):
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.rational(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other._coeffs:
            return self
        if not self._coeffs:
            return other
        n = math.lcm(self.order, other.order)
        raw: dict[int, Fraction] = {}
        for x in (self, other):
            step = n // x.order
            for e, c in x._coeffs:
                raw[e * step] = raw.get(e * step, 0) + c
        return Cyclotomic._make(n, _reduce_raw(n, raw))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._make(self.order, tuple((e, -c) for e, c in self._coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Cyclotomic._make(1, ())
            return Cyclotomic._make(self.order, tuple((e, c * other) for e, c in self._coeffs))
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if not self._coeffs or not other._coeffs:
            return Cyclotomic._make(1, ())
        n = math.lcm(self.order, other.order)
        s1, s2 = n // self.order, n // other.order
        raw: dict[int, Fraction] = {}
        for e1, c1 in self._coeffs:
            for e2, c2 in other._coeffs:
                e = (e1 * s1 + e2 * s2) % n
                raw[e] = raw.get(e, 0) + c1 * c2
        return Cyclotomic._make(n, _reduce_raw(n, raw))

    __rmul__ = __mul__

    def galois(self, t: int) -> "Cyclotomic":
        """Apply the automorphism zeta_n -> zeta_n^t (t coprime to n)."""
        if math.gcd(t, self.order) != 1:
            raise ValueError("Galois exponent must be coprime to the order")
        return Cyclotomic.from_raw(self.order, {e * t: c for e, c in self._coeffs})

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1)

    def inverse(self) -> "Cyclotomic":
        if not self._coeffs:
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return Cyclotomic.rational(1 / self.as_rational())
        # x^-1 = (product of the other conjugates) / norm
        n = self.order
        prod = Cyclotomic.rational(1)
        for t in range(2, n):
            if math.gcd(t, n) == 1:
                prod = prod * self.galois(t)
        norm = (self * prod).as_rational()
        return prod * (1 / norm)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, Cyclotomic):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclotomic.rational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.order == other.order:
            return self._coeffs == other._coeffs
        n = math.lcm(self.order, other.order)
        return self.embed(n)._coeffs == other.embed(n)._coeffs

    def __hash__(self):
        if self._hash is None:
            m = self.minimal()
            self._hash = hash(m.as_rational()) if m.order == 1 else hash((m.order, m._coeffs))
        return self._hash

    def minimal(self) -> "Cyclotomic":
        """Equal element written over the smallest cyclotomic field containing it."""
        if self._minimal is None:
            self._minimal = _minimize(self)
        return self._minimal

    def sort_key(self, order: int | None = None) -> tuple:
        return tuple(self.dense(order))

    def complex(self) -> complex:
        """Floating-point value, for display and test oracles only."""
        return sum(float(c) * complex(math.cos(2 * math.pi * e / self.order), math.sin(2 * math.pi * e / self.order))
                   for e, c in self._coeffs) + 0j

    # -- display

    def __repr__(self):
        return f"Cyclotomic({self.order}, {dict(self._coeffs)!r})"

    def __str__(self):
        return pretty(self)

    def to_json(self) -> dict:
        m = self.minimal()
        return {"order": m.order, "coeffs": [[e, format_rational(c)] for e, c in m._coeffs]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Cyclotomic":
        return cls(int(data["order"]), {int(e): parse_rational(c) for e, c in data["coeffs"]})


def _reduce_raw(n: int, raw: Mapping[int, Fraction]) -> tuple:
    phi = euler_phi(n)
    table = _reduction_table(n)
    acc: dict[int, Fraction] = {}
    for e, c in raw.items():
        if not c:
            continue
        e %= n
        if e < phi:
            acc[e] = acc.get(e, 0) + c
        else:
            for i, t in enumerate(table[e]):
                if t:
                    acc[i] = acc.get(i, 0) + c * t
    return tuple(sorted((e, Fraction(c)) for e, c in acc.items() if c))


def _solve_in_subfield(x: Cyclotomic, m: int) -> Cyclotomic | None:
    """Write x (over Q(zeta_n)) as an element of Q(zeta_m), m | n, if possible."""
    n = x.order
    step = n // m
    phi_n, phi_m = euler_phi(n), euler_phi(m)
    table = _reduction_table(n)
    # columns: images of zeta_m^j, j < phi_m
    cols = [table[(j * step) % n] for j in range(phi_m)]
    rows = [[Fraction(cols[j][i]) for j in range(phi_m)] + [v] for i, v in enumerate(x.dense())]
    # gaussian elimination over Q
    piv_cols = []
    r = 0
    for c in range(phi_m):
        piv = next((i for i in range(r, phi_n) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(phi_n):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(rows[i][-1] for i in range(r, phi_n)):
        return None
    sol = {c: rows[i][-1] for i, c in enumerate(piv_cols) if rows[i][-1]}
    return Cyclotomic._make(m, tuple(sorted(sol.items())))


def _minimize(x: Cyclotomic) -> Cyclotomic:
    if x.is_rational():
        return Cyclotomic._make(1, x._coeffs)
    changed = True
    while changed:
        changed = False
        n = x.order
        candidates = []
        if n % 4 == 2:
            candidates.append(n // 2)
        candidates += [n // p for p in _prime_factors(n)]
        for m in candidates:
            y = _solve_in_subfield(x, m)
            if y is not None:
                x = y
                changed = True
                break
    return x


def zeta(n: int, k: int = 1) -> Cyclotomic:
    """The root of unity zeta_n^k with zeta_n = exp(2 pi i / n)."""
    if n < 1:
        raise ValueError("n must be positive")
    return Cyclotomic.from_raw(n, {k: 1})


def pretty(x: Cyclotomic) -> str:
    """Human-readable form: ``-1``, ``i``, ``1/2 + z8^3``, ``-z3 - 2 z3^2``.

    ``zN^k`` denotes exp(2 pi i k / N); ``i`` is used for z4.
    """
    m = x.minimal()
    if m.order == 1:
        v = m.as_rational()
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    terms = []
    for e, c in m._coeffs:
        if e == 0:
            base = ""
        elif m.order == 4:
            base = "i"
        else:
            base = f"z{m.order}" + (f"^{e}" if e != 1 else "")
        mag = abs(c)
        mag_s = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
        if base and mag == 1:
            body = base
        elif base:
            body = f"{mag_s} {base}"
        else:
            body = mag_s
        terms.append(("-" if c < 0 else "+", body))
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# Q/Z


class QmodZ:
    """A rational number modulo 1, kept in ``[0, 1)``; encodes the root of unity exp(2 pi i value)."""

    __slots__ = ("value",)

    def __init__(self, value: Union[str, int, Fraction] = 0):
        v = parse_rational(value)
        self.value = v - math.floor(v)

    def __add__(self, other: "QmodZ") -> "QmodZ":
        return QmodZ(self.value + _qv(other))

    __radd__ = __add__

    def __sub__(self, other: "QmodZ") -> "QmodZ":
        return QmodZ(self.value - _qv(other))

    def __rsub__(self, other):
        return QmodZ(_qv(other) - self.value)

    def __neg__(self) -> "QmodZ":
        return QmodZ(-self.value)

    def __mul__(self, k: int) -> "QmodZ":
        if not isinstance(k, int):
            return NotImplemented
        return QmodZ(self.value * k)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, QmodZ):
            return self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self == QmodZ(other)
        return NotImplemented

    def __hash__(self):
        return hash(("QmodZ", self.value))

    def __lt__(self, other: "QmodZ"):
        return self.value < other.value

    def is_zero(self) -> bool:
        return self.value == 0

    @property
    def denominator(self) -> int:
        return self.value.denominator

    def __repr__(self):
        return f"QmodZ({format_rational(self.value)!r})"

    def __str__(self):
        v = self.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"

    def to_json(self) -> str:
        return format_rational(self.value)


def _qv(x) -> Fraction:
    if isinstance(x, QmodZ):
        return x.value
    return parse_rational(x)


def qmodz_to_cyclotomic(q: QmodZ) -> Cyclotomic:
    """a/b in Q/Z maps to zeta_b^a."""
    v = q.value if isinstance(q, QmodZ) else QmodZ(q).value
    return zeta(v.denominator, v.numerator)


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with U, V unimodular and diag(D) = d1 | d2 | ...  (object arrays of ints)."""

    U: np.ndarray
    D: np.ndarray
    V: np.ndarray

    @property
    def diagonal(self) -> list[int]:
        k = min(self.D.shape)
        return [int(self.D[i, i]) for i in range(k)]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_normal_form(A) -> SmithDecomposition:
    """Smith normal form of a rectangular integer matrix by unimodular row and column operations."""
    a = np.asarray(A, dtype=object)
    if a.ndim != 2:
        raise ValueError("expected a 2-d integer matrix")
    m, n = a.shape
    M = [[int(v) for v in row] for row in a.tolist()]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row_dst += f * row_src
        M[dst] = [x + f * y for x, y in zip(M[dst], M[src])]
        U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, f):  # col_dst += f * col_src
        for row in M:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    for t in range(min(m, n)):
        # pivot: smallest nonzero magnitude in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if M[i][j] and (best is None or abs(M[i][j]) < abs(M[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            dirty = False
            for i in range(t + 1, m):
                if M[i][t]:
                    add_row(i, t, -(M[i][t] // M[t][t]))
                    if M[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if M[t][j]:
                    add_col(j, t, -(M[t][j] // M[t][t]))
                    if M[t][j]:
                        dirty = True
            if dirty:
                best = None
                for i in range(t, m):
                    if M[i][t] and (best is None or abs(M[i][t]) < abs(M[best][t])):
                        best = i
                swap_rows(t, best)
                bestc = None
                for j in range(t, n):
                    if M[t][j] and (bestc is None or abs(M[t][j]) < abs(M[t][bestc])):
                        bestc = j
                swap_cols(t, bestc)
                continue
            # divisibility of the remaining block
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if M[i][j] % M[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            U[t] = [-x for x in U[t]]

    def obj(rows, shape):
        out = np.empty(shape, dtype=object)
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                out[i, j] = v
        return out

    return SmithDecomposition(obj(U, (m, m)), obj(M, (m, n)), obj(V, (n, n)))


def solve_mod(A, r: Sequence[QmodZ]) -> list[QmodZ] | None:
    """Solve ``A x = r`` over Q/Z; return one solution or None when unsolvable.

    With ``U A V = D``, substitute ``x = V y`` and solve ``d_i y_i = (U r)_i``
    coordinatewise.  Rows whose elementary divisor is zero must have a vanishing
    right-hand side.
    """
    a = np.asarray(A, dtype=object)
    if a.ndim == 1:
        a = a.reshape(len(r), -1)
    m, n = a.shape
    if len(r) != m:
        raise ValueError("right-hand side length mismatch")
    rv = [_qv(x) for x in r]
    snf = smith_normal_form(a)
    c = [sum((int(snf.U[i, j]) * rv[j] for j in range(m)), Fraction(0)) for i in range(m)]
    y = [Fraction(0)] * n
    for i in range(m):
        d = int(snf.D[i, i]) if i < n else 0
        if d == 0:
            if c[i] % 1:
                return None
        else:
            y[i] = c[i] / d
    x = [QmodZ(sum((int(snf.V[i, j]) * y[j] for j in range(n)), Fraction(0))) for i in range(n)]
    return x


def check_solution(A, x: Sequence[QmodZ], r: Sequence[QmodZ]) -> bool:
    a = np.asarray(A, dtype=object)
    for i in range(a.shape[0]):
        lhs = QmodZ(sum((int(a[i, j]) * x[j].value for j in range(a.shape[1])), Fraction(0)))
        if lhs != QmodZ(_qv(r[i])):
            return False
    return True
