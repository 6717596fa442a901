"""Character tables: class functions, Dixon's method, decomposition, restriction.

Irreducible characters are stored two ways.  ``values`` holds exact
cyclotomic numbers, one per conjugacy class.  ``multiplicities`` holds, for
each class, how often each power of ``zeta_e`` occurs as an eigenvalue
(``e`` = group exponent).  The second form is a small integer array and is
what the fast kernels in :mod:`adamsring.lambdaring` consume.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from . import _accel
from .exact import Cyclotomic, reduction_matrix, zeta
from .groups import (
    AbelianStructure,
    ConjugacyData,
    ExtensionData,
    GroupTable,
    is_subgroup,
    subgroup,
)

MAX_SPLIT_ATTEMPTS = 32


class CharacterTableError(RuntimeError):
    pass


class NotVirtualCharacter(ValueError):
    """A decomposition coefficient is not a rational integer."""

    def __init__(self, index: int, coefficient):
        super().__init__(f"not a virtual character: coefficient {index} is {coefficient}")
        self.index = index
        self.coefficient = coefficient


def _rescale(mult: np.ndarray, e_from: int, e_to: int) -> np.ndarray | None:
    """Rewrite multiplicities over zeta_{e_from} as multiplicities over zeta_{e_to}, if possible."""
    if e_from == e_to:
        return mult
    shape = mult.shape[:-1] + (e_to,)
    out = np.zeros(shape, dtype=np.int64)
    if e_to % e_from == 0:
        out[..., :: e_to // e_from] = mult
        return out
    if e_from % e_to == 0:
        step = e_from // e_to
        keep = mult[..., ::step]
        if keep.sum() != mult.sum() or np.abs(keep).sum() != np.abs(mult).sum():
            return None
        return keep.copy()
    return None


class ClassFunction:
    """A function constant on conjugacy classes, valued in cyclotomic numbers."""

    __slots__ = ("conjugacy", "values", "_mult", "_mult_order")

    def __init__(self, conjugacy: ConjugacyData, values: Sequence, mult: np.ndarray | None = None,
                 mult_order: int | None = None):
        vals = tuple(v if isinstance(v, Cyclotomic) else Cyclotomic.rational(Fraction(v)) for v in values)
        if len(vals) != len(conjugacy.classes):
            raise ValueError("one value per conjugacy class required")
        self.conjugacy = conjugacy
        self.values = vals
        self._mult = mult
        self._mult_order = mult_order

    @classmethod
    def from_multiplicities(cls, conjugacy: ConjugacyData, mult: np.ndarray, e: int) -> "ClassFunction":
        mult = np.asarray(mult, dtype=np.int64)
        vals = [Cyclotomic.from_raw(e, {l: int(c) for l, c in enumerate(row) if c}) for row in mult]
        return cls(conjugacy, vals, mult, e)

    @property
    def group(self) -> GroupTable:
        return self.conjugacy.group

    @property
    def multiplicities(self) -> tuple[np.ndarray, int] | None:
        """(array of shape (classes, e), e) when the values are known as sums of roots of unity."""
        return None if self._mult is None else (self._mult, self._mult_order)

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, c: int) -> Cyclotomic:
        return self.values[c]

    def __call__(self, g: int) -> Cyclotomic:
        """Value at a group element."""
        return self.values[int(self.conjugacy.class_of[g])]

    @property
    def degree(self) -> Cyclotomic:
        return self.values[0]

    def _check(self, other: "ClassFunction"):
        if other.conjugacy is not self.conjugacy and other.group != self.group:
            raise ValueError("class functions live on different groups")

    def _combine_mult(self, other, sign):
        if self._mult is None or other._mult is None:
            return None, None
        e = math.lcm(self._mult_order, other._mult_order)
        a = _rescale(self._mult, self._mult_order, e)
        b = _rescale(other._mult, other._mult_order, e)
        return a + sign * b, e

    def __add__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        self._check(other)
        m, e = self._combine_mult(other, 1)
        return ClassFunction(self.conjugacy, [a + b for a, b in zip(self.values, other.values)], m, e)

    def __sub__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        self._check(other)
        m, e = self._combine_mult(other, -1)
        return ClassFunction(self.conjugacy, [a - b for a, b in zip(self.values, other.values)], m, e)

    def __neg__(self):
        m = None if self._mult is None else -self._mult
        return ClassFunction(self.conjugacy, [-a for a in self.values], m, self._mult_order)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            k = int(other)
            m = None if self._mult is None else k * self._mult
            return ClassFunction(self.conjugacy, [a * k for a in self.values], m, self._mult_order)
        if isinstance(other, (Fraction, Cyclotomic)):
            return ClassFunction(self.conjugacy, [a * other for a in self.values])
        if not isinstance(other, ClassFunction):
            return NotImplemented
        self._check(other)
        m = e = None
        if self._mult is not None and other._mult is not None:
            e = math.lcm(self._mult_order, other._mult_order)
            a = _rescale(self._mult, self._mult_order, e)[None]
            b = _rescale(other._mult, other._mult_order, e)[None]
            m = _accel.products(a, b)[0, 0]
        return ClassFunction(self.conjugacy, [a * b for a, b in zip(self.values, other.values)], m, e)

    __rmul__ = __mul__

    def conjugate(self) -> "ClassFunction":
        m = None
        if self._mult is not None:
            e = self._mult_order
            m = self._mult[:, (-np.arange(e)) % e]
        return ClassFunction(self.conjugacy, [a.conjugate() for a in self.values], m, self._mult_order)

    def adams(self, k: int) -> "ClassFunction":
        """g -> f(g^k)."""
        pm = self.conjugacy.power_map(k)
        m = None if self._mult is None else self._mult[pm]
        return ClassFunction(self.conjugacy, [self.values[c] for c in pm], m, self._mult_order)

    def __eq__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return (other.conjugacy is self.conjugacy or other.group == self.group) and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return "ClassFunction(" + ", ".join(str(v) for v in self.values) + ")"


def inner_product(a: ClassFunction, b: ClassFunction) -> Cyclotomic:
    """(1/|G|) sum_g conj(a(g)) b(g)."""
    a._check(b)
    sizes = a.conjugacy.sizes
    total = Cyclotomic.rational(0)
    for s, x, y in zip(sizes, a.values, b.values):
        if not x.is_zero() and not y.is_zero():
            total = total + x.conjugate() * y * s
    return total * Fraction(1, a.group.order)


class CharacterTable:
    """Irreducible characters of a finite group in canonical order.

    ``characters[0]`` is the trivial character.  The remaining characters are
    sorted by degree, then by their values class by class (descending in the
    power-basis coefficients over the group exponent).
    """

    def __init__(self, group: GroupTable, multiplicities: np.ndarray, labels: Sequence[str] | None = None):
        self.group = group
        self.conjugacy = group.conjugacy
        self.exponent = group.exponent
        mult = np.ascontiguousarray(multiplicities, dtype=np.int64)
        mult.setflags(write=False)
        self.multiplicities = mult
        self.characters = tuple(
            ClassFunction.from_multiplicities(self.conjugacy, mult[i], self.exponent) for i in range(mult.shape[0])
        )
        self.degrees = tuple(int(mult[i, 0].sum()) for i in range(mult.shape[0]))
        self.labels = tuple(labels) if labels is not None else tuple(f"X{i}" for i in range(len(self.characters)))
        self._cache: dict = {}

    @property
    def irreducibles(self) -> tuple[ClassFunction, ...]:
        return self.characters

    @property
    def rank(self) -> int:
        return len(self.characters)

    def __len__(self):
        return self.rank

    def __getitem__(self, i: int) -> ClassFunction:
        return self.characters[i]

    def __repr__(self):
        return f"CharacterTable({self.group.name or '?'}, degrees={self.degrees})"

    def value_matrix(self) -> list[list[Cyclotomic]]:
        return [list(ch.values) for ch in self.characters]

    def index_of(self, chi: ClassFunction) -> int:
        for i, ch in enumerate(self.characters):
            if ch == chi:
                return i
        raise KeyError("not an irreducible character of this table")

    def inner_products_mult(self, mult: np.ndarray, e: int) -> np.ndarray:
        """Integer matrix of <chi_j | f_i> for class functions given by multiplicities.

        ``mult`` has shape (n, classes, e).  Raises NotVirtualCharacter on a
        non-integral coefficient.
        """
        X = _rescale(np.asarray(mult, dtype=np.int64), e, self.exponent)
        if X is None:
            E = math.lcm(e, self.exponent)
            X = _rescale(np.asarray(mult, dtype=np.int64), e, E)
            Y = _rescale(self.multiplicities, self.exponent, E)
        else:
            E, Y = self.exponent, self.multiplicities
        w = np.array(self.conjugacy.sizes, dtype=np.int64)
        S = _accel.pair_sums(X, Y, w)
        return _rational_part(S, E, self.group.order)

    def decompose(self, f: ClassFunction) -> list[int]:
        """Coefficients of f in the irreducible basis; NotVirtualCharacter if any is not an integer."""
        if f.conjugacy is not self.conjugacy and f.group != self.group:
            raise ValueError("class function lives on a different group")
        if f._mult is not None:
            return [int(v) for v in self.inner_products_mult(f._mult[None], f._mult_order)[0]]
        out = []
        for j, ch in enumerate(self.characters):
            c = inner_product(ch, f)
            if not c.is_integer():
                raise NotVirtualCharacter(j, c)
            out.append(int(c.as_rational()))
        return out

    def combination(self, coeffs: Sequence[int]) -> ClassFunction:
        """The virtual character sum_j coeffs[j] chi_j."""
        m = np.tensordot(np.asarray(coeffs, dtype=np.int64), self.multiplicities, axes=1)
        return ClassFunction.from_multiplicities(self.conjugacy, m, self.exponent)

    def trivial(self) -> ClassFunction:
        return self.characters[0]

    def regular(self) -> ClassFunction:
        return self.combination(self.degrees)


def _rational_part(S: np.ndarray, e: int, order: int) -> np.ndarray:
    """Divide sums of powers of zeta_e by ``order``; every result must be a rational integer."""
    R = reduction_matrix(e)
    coeffs = np.tensordot(S, R, axes=([-1], [0]))
    if coeffs.shape[-1] > 1:
        bad = np.argwhere(coeffs[..., 1:] != 0)
        if len(bad):
            idx = tuple(bad[0][:-1])
            val = Cyclotomic(e, {k: Fraction(int(v), order) for k, v in enumerate(coeffs[idx])})
            raise NotVirtualCharacter(int(idx[-1]), val)
    c0 = coeffs[..., 0]
    if (c0 % order).any():
        idx = tuple(np.argwhere(c0 % order)[0])
        raise NotVirtualCharacter(int(idx[-1]), Fraction(int(c0[idx]), order))
    return c0 // order


# ---------------------------------------------------------------------------
# Dixon's method


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def dixon_prime(order: int, exponent: int) -> int:
    """Smallest prime p = 1 mod exponent with p > 2 sqrt(order)."""
    p = exponent + 1
    while not (_is_prime(p) and p * p > 4 * order):
        p += exponent
    return p


def _primitive_root(p: int) -> int:
    phi = p - 1
    factors = []
    n, f = phi, 2
    while f * f <= n:
        if n % f == 0:
            factors.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        factors.append(n)
    for g in range(2, p):
        if all(pow(g, phi // q, p) != 1 for q in factors):
            return g
    return 1


def _nullspace_mod_p(a: np.ndarray, p: int) -> np.ndarray:
    R, piv = _accel.rref_mod_p(a, p)
    n = a.shape[1]
    piv = [int(c) for c in piv]
    free = [c for c in range(n) if c not in set(piv)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for t, fc in enumerate(free):
        basis[t, fc] = 1
        for i, pc in enumerate(piv):
            basis[t, pc] = (-R[i, fc]) % p
    return basis


def _split_space(B: np.ndarray, M: np.ndarray, p: int) -> list[np.ndarray] | None:
    """Eigenspaces of M restricted to the row space of B (B in reduced echelon form)."""
    s = B.shape[0]
    _, piv = _accel.rref_mod_p(B, p)
    C = ((M @ B.T) % p)[piv, :]
    poly = _accel.charpoly_mod_p(C, p)
    lam = np.arange(p, dtype=np.int64)
    vals = np.zeros(p, dtype=np.int64)
    for coef in poly[::-1]:
        vals = (vals * lam + int(coef)) % p
    roots = np.nonzero(vals == 0)[0]
    if len(roots) <= 1:
        return None
    pieces, total = [], 0
    eye = np.eye(s, dtype=np.int64)
    for lam0 in roots:
        U = _nullspace_mod_p((C - int(lam0) * eye) % p, p)
        total += U.shape[0]
        V = (U @ B) % p
        pieces.append(_accel.rref_mod_p(V, p)[0][: U.shape[0]])
    if total != s:
        raise CharacterTableError("splitting failed: class matrix not diagonalisable mod p")
    return pieces


def _common_eigenvectors(mats: np.ndarray, p: int, seed: int) -> list[np.ndarray]:
    r = mats.shape[1]
    spaces = [np.eye(r, dtype=np.int64)]
    for j in range(1, mats.shape[0]):
        if all(S.shape[0] == 1 for S in spaces):
            break
        nxt = []
        for S in spaces:
            parts = _split_space(S, mats[j], p) if S.shape[0] > 1 else None
            nxt.extend(parts if parts else [S])
        spaces = nxt
    attempt = 0
    while any(S.shape[0] > 1 for S in spaces):
        if attempt >= MAX_SPLIT_ATTEMPTS:
            raise CharacterTableError("splitting failed")
        rng = np.random.default_rng(seed + attempt)
        coeffs = rng.integers(0, p, size=mats.shape[0])
        M = np.tensordot(coeffs, mats, axes=1) % p
        nxt = []
        for S in spaces:
            parts = _split_space(S, M, p) if S.shape[0] > 1 else None
            nxt.extend(parts if parts else [S])
        spaces = nxt
        attempt += 1
    return [S[0] for S in spaces]


def _sort_rows(G: GroupTable, mult: np.ndarray) -> np.ndarray:
    e = G.exponent
    r = mult.shape[0]
    keys = []
    for i in range(r):
        vals = [Cyclotomic.from_raw(e, {l: int(c) for l, c in enumerate(row) if c}) for row in mult[i]]
        trivial = all(v == 1 for v in vals)
        key = tuple(tuple(-c for c in v.dense(e)) for v in vals)
        keys.append((not trivial, int(mult[i, 0].sum()), key))
    order = sorted(range(r), key=lambda i: keys[i])
    return mult[order]


def character_table(G: GroupTable, seed: int = 0) -> CharacterTable:
    """Exact irreducible characters of G by Dixon's method over a prime field.

    The result is cached on the group object per seed.
    """
    cache = G.__dict__.setdefault("_character_tables", {})
    if seed in cache:
        return cache[seed]
    cd = G.conjugacy
    r = len(cd.classes)
    e = G.exponent
    n = G.order
    if r == 1:
        mult = np.ones((1, 1, 1), dtype=np.int64)
        table = CharacterTable(G, mult)
        cache[seed] = table
        return table
    p = dixon_prime(n, e)
    reps = np.array(cd.representatives, dtype=np.int64)
    consts = _accel.class_constants(G.mul, G.inv, cd.class_of, reps, r)
    vectors = _common_eigenvectors(consts, p, seed)
    if len(vectors) != r:
        raise CharacterTableError("splitting failed")
    sizes = np.array(cd.sizes, dtype=np.int64)
    inv_sizes = np.array([pow(int(s), p - 2, p) for s in sizes], dtype=np.int64)
    inv_class = np.asarray(cd.inverse_map)
    z = pow(_primitive_root(p), (p - 1) // e, p)
    powmaps = [np.asarray(cd.power_map(t)) for t in range(e)]
    orders = cd.rep_orders
    mult = np.zeros((r, r, e), dtype=np.int64)
    isqrt = math.isqrt(n)
    for i, w in enumerate(vectors):
        w = (w * pow(int(w[0]), p - 2, p)) % p
        norm = int(((w * w[inv_class]) % p * inv_sizes % p).sum() % p)
        d2 = (n * pow(norm, p - 2, p)) % p
        d = next((d for d in range(1, isqrt + 1) if n % d == 0 and (d * d - d2) % p == 0), None)
        if d is None:
            raise CharacterTableError("splitting failed: no admissible degree")
        chi = (d * w % p) * inv_sizes % p
        for c in range(r):
            o = orders[c]
            zo = pow(z, e // o, p)
            vals = np.array([chi[powmaps[t][c]] for t in range(o)], dtype=np.int64)
            inv_o = pow(o, p - 2, p)
            for l in range(o):
                root = pow(zo, (-l) % o, p)
                acc = 0
                pw = 1
                for t in range(o):
                    acc = (acc + int(vals[t]) * pw) % p
                    pw = pw * root % p
                m = acc * inv_o % p
                if m > d:
                    raise CharacterTableError("splitting failed: multiplicity out of range")
                mult[i, c, l * (e // o)] = m
    mult = _sort_rows(G, mult)
    if sum(int(mult[i, 0].sum()) ** 2 for i in range(r)) != n:
        raise CharacterTableError("degree check failed")
    table = CharacterTable(G, mult)
    cache[seed] = table
    return table


def abelian_character_table(A: AbelianStructure) -> CharacterTable:
    """Characters of an abelian group read off its invariant factors, without Dixon's method.

    ``table.index_vectors[i]`` is the exponent vector of character i: it sends
    the j-th generator to zeta_{d_j}^{v_j}.
    """
    G = A.group
    if len(A.elements) == G.order:
        H, parent = G, np.arange(G.order)
    else:
        H = subgroup(G, A.elements)
        parent = H.parent_indices
    cd = H.conjugacy
    e = H.exponent
    factors = A.invariant_factors
    vectors = list(np.ndindex(*factors)) if factors else [()]
    mult = np.zeros((len(vectors), len(cd.classes), e), dtype=np.int64)
    for i, v in enumerate(vectors):
        for c, cls in enumerate(cd.classes):
            coords = A.coordinates[int(parent[cls[0]])]
            l = sum(vi * ci * (e // d) for vi, ci, d in zip(v, coords, factors)) % e
            mult[i, c, l] = 1
    # keep track of the vector labels through the canonical sort
    tagged = {mult[i].tobytes(): v for i, v in enumerate(vectors)}
    mult = _sort_rows(H, mult)
    table = CharacterTable(H, mult, labels=["phi" + str(tuple(tagged[m.tobytes()])) for m in mult])
    table.index_vectors = tuple(tuple(int(x) for x in tagged[m.tobytes()]) for m in mult)
    return table


# ---------------------------------------------------------------------------
# restriction and monomial representations


def restrict(chi: ClassFunction, H) -> ClassFunction:
    """Pull a class function back to a subgroup.

    ``H`` is either a GroupTable built by :func:`adamsring.groups.subgroup` or a
    set of element indices of ``chi``'s group.
    """
    G = chi.group
    if not isinstance(H, GroupTable):
        elems = sorted(set(int(h) for h in H))
        if not is_subgroup(G, elems):
            raise ValueError("not closed: subset is not a subgroup")
        H = subgroup(G, elems)
    parent = getattr(H, "parent_indices", None)
    if parent is None:
        raise ValueError("subgroup table does not record its embedding")
    if getattr(H, "parent", G) != G:
        raise ValueError("subgroup of a different group")
    cd = H.conjugacy
    pclasses = [int(G.conjugacy.class_of[parent[cls[0]]]) for cls in cd.classes]
    m = None if chi._mult is None else chi._mult[pclasses]
    return ClassFunction(cd, [chi.values[c] for c in pclasses], m, chi._mult_order)


class MatrixRep:
    """A representation given by one exact matrix per group element."""

    def __init__(self, group: GroupTable, matrices: Sequence[np.ndarray]):
        if len(matrices) != group.order:
            raise ValueError("one matrix per group element required")
        self.group = group
        self.matrices = tuple(np.asarray(m, dtype=object) for m in matrices)
        self.dimension = self.matrices[0].shape[0]

    def __call__(self, g: int) -> np.ndarray:
        return self.matrices[g]

    def is_homomorphism(self) -> bool:
        G = self.group
        ident = _identity(self.dimension)
        if not _mat_eq(self.matrices[0], ident):
            return False
        for g in range(G.order):
            for h in range(G.order):
                if not _mat_eq(self.matrices[g].dot(self.matrices[h]), self.matrices[G.mul[g, h]]):
                    return False
        return True

    def character(self) -> ClassFunction:
        cd = self.group.conjugacy
        vals = [_trace(self.matrices[c[0]]) for c in cd.classes]
        return ClassFunction(cd, vals)


def _identity(d: int) -> np.ndarray:
    out = np.empty((d, d), dtype=object)
    for i in range(d):
        for j in range(d):
            out[i, j] = Cyclotomic.rational(int(i == j))
    return out


def _mat_eq(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


def _trace(a: np.ndarray) -> Cyclotomic:
    total = Cyclotomic.rational(0)
    for i in range(a.shape[0]):
        total = total + a[i, i]
    return total


def induce_monomial(ext: ExtensionData, phi) -> MatrixRep:
    """Induce a character of the normal abelian subgroup A up to G.

    ``phi`` is an exponent vector against ``ext.structure`` or a callable /
    mapping from elements of A to cyclotomic values.  The basis is the coset
    basis given by the section, so every matrix is monomial.
    """
    A = ext.structure
    if callable(phi):
        value: Callable[[int], Cyclotomic] = phi
    elif isinstance(phi, Mapping):
        value = phi.__getitem__
    else:
        vec = tuple(int(x) for x in phi)
        if len(vec) != len(A.invariant_factors):
            raise ValueError("exponent vector length does not match the invariant factors")

        def value(a: int, vec=vec) -> Cyclotomic:
            c = A.coordinates[a]
            num = sum(Fraction(v * x, d) for v, x, d in zip(vec, c, A.invariant_factors))
            return zeta(num.denominator, num.numerator)

    G = ext.G
    sec = ext.section
    d = len(sec)
    zero = Cyclotomic.rational(0)
    mats = []
    for g in range(G.order):
        M = np.empty((d, d), dtype=object)
        M.fill(zero)
        for i, s in enumerate(sec):
            gs = int(G.mul[g, s])
            j = ext.q_of(gs)
            a = int(G.mul[G.inv[sec[j]], gs])
            M[j, i] = value(a)
        mats.append(M)
    return MatrixRep(G, mats)
