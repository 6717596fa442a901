"""The representation ring as a lambda-ring.

Adams operations are integer matrices in the irreducible basis: row i of
``adams(T, k)`` lists the coefficients of Psi^k(chi_i).  Everything runs on the
eigenvalue-multiplicity arrays of the character table, so the heavy sums are
integer convolutions handled by :mod:`adamsring._accel`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _accel
from .chartab import CharacterTable, ClassFunction, MatrixRep, NotVirtualCharacter
from .exact import Cyclotomic, QmodZ, qmodz_to_cyclotomic

HOM_TRACE_SIZE_LIMIT = 4096


class LambdaRingError(ArithmeticError):
    pass


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=np.int64)
    a.setflags(write=False)
    return a


# ---------------------------------------------------------------------------
# Adams operations


def _adams_matrix(table: CharacterTable, k: int) -> np.ndarray:
    pm = np.asarray(table.conjugacy.power_map(k))
    X = table.multiplicities[:, pm, :]
    try:
        return table.inner_products_mult(X, table.exponent)
    except NotVirtualCharacter as exc:  # pragma: no cover - would mean a corrupted table
        raise LambdaRingError(f"non-integral Adams coefficient for k={k}: {exc}") from exc


def adams(table: CharacterTable, k: int) -> np.ndarray:
    """Psi^k in the irreducible basis (read-only int64 matrix), cached per k mod exponent."""
    e = table.exponent
    cache = table._cache.setdefault("adams", {})
    key = k % e
    if key not in cache:
        cache[key] = _frozen(_adams_matrix(table, key))
    return cache[key]


def structure_constants(table: CharacterTable) -> np.ndarray:
    """N[i, j, l] = multiplicity of chi_l in chi_i * chi_j."""
    cache = table._cache
    if "structure" not in cache:
        X = table.multiplicities
        r, c, e = X.shape
        P = _accel.products(X, X).reshape(r * r, c, e)
        cache["structure"] = _frozen(table.inner_products_mult(P, e).reshape(r, r, r))
    return cache["structure"]


def fs_indicator(table: CharacterTable, k: int, j: int) -> int:
    """k-th Frobenius-Schur indicator (1/|G|) sum_g chi_j(g^k).

    This is the coefficient of the trivial character in Psi^k(chi_j).
    """
    return int(adams(table, k)[j, 0])


class RepRingElement:
    """A virtual character as an integer vector over the irreducible basis."""

    __slots__ = ("table", "coeffs")

    def __init__(self, table: CharacterTable, coeffs: Sequence[int]):
        c = tuple(int(x) for x in coeffs)
        if len(c) != table.rank:
            raise ValueError("coefficient vector length must equal the number of irreducibles")
        self.table = table
        self.coeffs = c

    @classmethod
    def basis(cls, table: CharacterTable, i: int) -> "RepRingElement":
        return cls(table, [int(j == i) for j in range(table.rank)])

    @classmethod
    def one(cls, table: CharacterTable) -> "RepRingElement":
        return cls.basis(table, 0)

    @classmethod
    def zero(cls, table: CharacterTable) -> "RepRingElement":
        return cls(table, [0] * table.rank)

    @classmethod
    def from_class_function(cls, table: CharacterTable, f: ClassFunction) -> "RepRingElement":
        return cls(table, table.decompose(f))

    def _same(self, other):
        if not isinstance(other, RepRingElement) or other.table is not self.table:
            raise ValueError("elements of different representation rings")

    def __add__(self, other):
        self._same(other)
        return RepRingElement(self.table, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._same(other)
        return RepRingElement(self.table, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return RepRingElement(self.table, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return RepRingElement(self.table, [a * int(other) for a in self.coeffs])
        self._same(other)
        N = structure_constants(self.table)
        a = np.array(self.coeffs, dtype=object)
        b = np.array(other.coeffs, dtype=object)
        out = np.einsum("i,j,ijl->l", a, b, N.astype(object))
        return RepRingElement(self.table, out.tolist())

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = RepRingElement.one(self.table)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, RepRingElement) and other.table is self.table and other.coeffs == self.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RepRingElement({list(self.coeffs)})"

    @property
    def dimension(self) -> int:
        return sum(c * d for c, d in zip(self.coeffs, self.table.degrees))

    def adams(self, k: int) -> "RepRingElement":
        return adams_apply(self, k)

    def character(self) -> ClassFunction:
        return self.table.combination(self.coeffs)


def adams_apply(x: RepRingElement, k: int) -> RepRingElement:
    A = adams(x.table, k)
    return RepRingElement(x.table, (np.array(x.coeffs, dtype=object) @ A.astype(object)).tolist())


def lambda_op(x: RepRingElement, n: int) -> RepRingElement:
    """lambda^n(x) through the Newton identity n lambda^n = sum_i (-1)^(i-1) lambda^(n-i) Psi^i."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    lam = [RepRingElement.one(x.table)]
    psi = [None] + [adams_apply(x, i) for i in range(1, n + 1)]
    for m in range(1, n + 1):
        acc = RepRingElement.zero(x.table)
        for i in range(1, m + 1):
            term = lam[m - i] * psi[i]
            acc = acc + term if i % 2 else acc - term
        if any(c % m for c in acc.coeffs):
            raise LambdaRingError("non-integral lambda")
        lam.append(RepRingElement(x.table, [c // m for c in acc.coeffs]))
    return lam[n]


# ---------------------------------------------------------------------------
# recovering |G| and exp(G)


def order_from_ring(table: CharacterTable) -> int:
    """Largest n_g over classes, where n_g clears the denominators of the class idempotent at g."""
    best = 0
    for c, cent in enumerate(table.conjugacy.centralizer_orders):
        n = 1
        for ch in table.characters:
            coeff = ch.values[c].conjugate() * Fraction(1, cent)
            if not coeff.is_rational():
                n = 0
                break
            n = math.lcm(n, coeff.as_rational().denominator)
        best = max(best, n)
    return best


def exponent_from_ring(table: CharacterTable) -> int:
    """Period of k -> Psi^k, from matrices computed for k = 0..2e without the periodic cache."""
    e = table.exponent
    mats = [_adams_matrix(table, k) for k in range(2 * e + 1)]
    for f in range(1, e + 1):
        if all(np.array_equal(mats[k + f], mats[k]) for k in range(e + 1)):
            return f
    raise LambdaRingError("no period found up to the group exponent")  # pragma: no cover


# ---------------------------------------------------------------------------
# traces of cyclic permutations


def _cyclic_shift_index(d: int, k: int) -> np.ndarray:
    """src[i] = index of the basis tensor sent to tensor i by v1 x ... x vk -> v2 x ... x vk x v1."""
    idx = np.arange(d**k).reshape((d,) * k)
    return np.moveaxis(idx, 0, -1).reshape(-1)


def _kron_all(mats) -> np.ndarray:
    out = np.ones((1, 1), dtype=object)
    for m in mats:
        out = np.kron(out, np.asarray(m, dtype=object))
    return out


def _scalar_sum(values):
    total = 0
    for v in values:
        total = total + v
    return total


def trace_identity_check(*fs) -> tuple[object, object, bool]:
    """Compare tr(sigma o (f1 x ... x fk)) on V^(x k) with tr(f1 ... fk) on V.

    sigma is the cyclic shift of tensor factors.  Entries may be ints,
    Fractions or Cyclotomics.
    """
    if not fs:
        raise ValueError("need at least one matrix")
    mats = [np.asarray(f, dtype=object) for f in fs]
    d = mats[0].shape[0]
    if any(m.shape != (d, d) for m in mats):
        raise ValueError("dimension mismatch")
    k = len(mats)
    big = _kron_all(mats)
    src = _cyclic_shift_index(d, k)
    lhs = _scalar_sum(big[src[i], i] for i in range(d**k))
    prod = mats[0]
    for m in mats[1:]:
        prod = prod.dot(m)
    rhs = _scalar_sum(prod[i, i] for i in range(d))
    return lhs, rhs, lhs == rhs


def hom_cyclic_trace(rho_i: MatrixRep, rho_j: MatrixRep, k: int) -> Cyclotomic:
    """tr of the cyclic shift on Hom_G(V_j, V_i^(x k)), computed on V_j^* x V_i^(x k).

    The Hom space is the image of the averaging idempotent, so the trace equals
    that of (average of g) composed with the shift on the tensor legs.
    """
    G = rho_i.group
    if rho_j.group != G:
        raise ValueError("representations of different groups")
    di, dj = rho_i.dimension, rho_j.dimension
    size = dj * di**k
    if size > HOM_TRACE_SIZE_LIMIT:
        raise ValueError(f"size bound exceeded: {size} > {HOM_TRACE_SIZE_LIMIT}")
    total = None
    for g in range(G.order):
        dual = rho_j(int(G.inv[g])).T
        term = _kron_all([dual] + [rho_i(g)] * k)
        total = term if total is None else total + term
    src = _cyclic_shift_index(di, k)
    leg = di**k
    acc = Cyclotomic.rational(0)
    for a in range(dj):
        for t in range(leg):
            acc = acc + total[a * leg + src[t], a * leg + t]
    return acc * Fraction(1, G.order)


# ---------------------------------------------------------------------------
# abelian groups with a twisted symmetry


def _tensor_index(table: CharacterTable) -> np.ndarray:
    """prod[i, j] = index of chi_i * chi_j for a table of linear characters."""
    if any(d != 1 for d in table.degrees):
        raise ValueError("table has characters of degree > 1")
    N = structure_constants(table)
    return np.argmax(N, axis=2)


def _check_pairing(table: CharacterTable, pairing) -> list[list[QmodZ]]:
    r = table.rank
    s = [[QmodZ(v) if not isinstance(v, QmodZ) else v for v in row] for row in pairing]
    if len(s) != r or any(len(row) != r for row in s):
        raise ValueError("pairing must be a square matrix over the characters")
    if any(not s[i][i].is_zero() for i in range(r)):
        raise ValueError("pairing not alternating")
    prod = _tensor_index(table)
    for i, j, l in itertools.product(range(r), repeat=3):
        if s[int(prod[i, j])][l] != s[i][l] + s[j][l]:
            raise ValueError("pairing not bi-additive")
    return s


def twisted_adams_abelian(table: CharacterTable, pairing, k: int) -> np.ndarray:
    """Adams matrix of an abelian group when the symmetry on V_phi x V_psi carries the scalar
    exp(2 pi i s(phi, psi)) for an alternating bicharacter s on the characters.

    The cyclic shift on V_phi^(x k) = V_(k phi) is k-1 transpositions of equal factors,
    each acting by exp(2 pi i s(phi, phi)).
    """
    s = _check_pairing(table, pairing)
    r = table.rank
    prod = _tensor_index(table)
    out = np.zeros((r, r), dtype=np.int64)
    for i in range(r):
        target = 0
        for _ in range(k % table.exponent):
            target = int(prod[target, i])
        scalar = qmodz_to_cyclotomic(s[i][i] * max(k - 1, 0))
        if not scalar.is_integer():
            raise LambdaRingError("non-integral twisted Adams coefficient")
        out[i, target] = int(scalar.as_rational())
    return _frozen(out)


# ---------------------------------------------------------------------------
# based ring isomorphisms


@dataclass(frozen=True)
class BasedIsomorphism:
    """A bijection of irreducible bases, ``perm[i]`` = image of chi_i, preserving structure constants."""

    source: CharacterTable
    target: CharacterTable
    perm: tuple[int, ...]

    def commutes_with_adams(self, k: int) -> bool:
        return commutes_with_adams(self, k)

    def matrix(self) -> np.ndarray:
        r = len(self.perm)
        P = np.zeros((r, r), dtype=np.int64)
        for i, j in enumerate(self.perm):
            P[j, i] = 1
        return P


def based_ring_isomorphisms(t1: CharacterTable, t2: CharacterTable) -> list[BasedIsomorphism]:
    """Every basis bijection carrying the structure constants of t1 onto those of t2, unit to unit."""
    if t1.rank != t2.rank:
        return []
    N1, N2 = structure_constants(t1), structure_constants(t2)
    r = t1.rank
    # invariants that any structure-preserving bijection respects
    sig1 = [tuple(sorted(N1[i, i].tolist())) for i in range(r)]
    sig2 = [tuple(sorted(N2[i, i].tolist())) for i in range(r)]
    found: list[BasedIsomorphism] = []
    perm = [-1] * r
    used = [False] * r

    def consistent(i: int) -> bool:
        pi = perm[i]
        for a in range(i + 1):
            for b in range(i + 1):
                if i not in (a, b):
                    continue
                pa, pb = perm[a], perm[b]
                for c in range(i + 1):
                    if N1[a, b, c] != N2[pa, pb, perm[c]]:
                        return False
                # products landing outside the assigned part must match in total mass
                if N1[a, b, : i + 1].sum() != N2[pa, pb, [perm[c] for c in range(i + 1)]].sum():
                    return False
        return pi >= 0

    def extend(i: int):
        if i == r:
            found.append(BasedIsomorphism(t1, t2, tuple(perm)))
            return
        for j in range(r):
            if used[j] or sig1[i] != sig2[j] or (i == 0) != (j == 0):
                continue
            perm[i], used[j] = j, True
            if consistent(i):
                extend(i + 1)
            perm[i], used[j] = -1, False

    extend(0)
    return [iso for iso in found if np.array_equal(N1, N2[np.ix_(iso.perm, iso.perm, iso.perm)])]


def commutes_with_adams(iso: BasedIsomorphism, k: int) -> bool:
    """True iff Psi^k of the target, read through the bijection, equals Psi^k of the source."""
    A1 = adams(iso.source, k)
    A2 = adams(iso.target, k)
    p = list(iso.perm)
    return bool(np.array_equal(A2[np.ix_(p, p)], A1))
