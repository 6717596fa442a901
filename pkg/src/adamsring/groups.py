"""Finite groups as validated multiplication tables.

Element 0 is always the identity.  ``mul[i, j]`` is the index of the product
``g_i * g_j``.  Everything downstream (classes, power maps, quotients,
twisted products) reads off this table.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _accel
from .exact import smith_normal_form

DEFAULT_ORDER_LIMIT = 10000


class GroupError(ValueError):
    """Raised when a table or subset violates a group axiom or precondition."""


def _frozen(a, dtype=np.int64) -> np.ndarray:
    out = np.array(a, dtype=dtype)
    out.setflags(write=False)
    return out


class GroupTable:
    """A finite group given by its full multiplication table.

    Use :func:`from_table` or :func:`from_permutations` rather than calling the
    constructor, which trusts its input.
    """

    def __init__(self, mul, inv=None, labels: Sequence[str] | None = None, name: str = ""):
        self.mul = _frozen(mul)
        n = self.mul.shape[0]
        if inv is None:
            inv = np.argmin(self.mul, axis=1)  # identity is index 0, so mul[i, inv[i]] == 0
        self.inv = _frozen(inv)
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        self.name = name

    identity = 0

    @property
    def order(self) -> int:
        return self.mul.shape[0]

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"GroupTable({self.name or '?'}, order={self.order})"

    def __eq__(self, other):
        if not isinstance(other, GroupTable):
            return NotImplemented
        return self is other or (self.order == other.order and np.array_equal(self.mul, other.mul))

    def __hash__(self):
        return hash((self.order, self.mul.tobytes()))

    def label(self, g: int) -> str:
        return self.labels[g]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def m(self, *elements: int) -> int:
        """Product of the given elements, left to right."""
        out = 0
        for g in elements:
            out = int(self.mul[out, g])
        return out

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = int(self.inv[g]), -k
        result, base = 0, int(g)
        while k:
            if k & 1:
                result = int(self.mul[result, base])
            base = int(self.mul[base, base])
            k >>= 1
        return result

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return int(self.mul[self.mul[g, x], self.inv[g]])

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        cur = np.arange(n)
        k = 1
        while (orders == 0).any():
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
            cur = self.mul[cur, np.arange(n)]
            k += 1
        orders.setflags(write=False)
        return orders

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*(int(o) for o in set(self.element_orders.tolist())))

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    @cached_property
    def conjugacy(self) -> "ConjugacyData":
        return conjugacy_classes(self)

    def digest(self) -> str:
        import hashlib

        return hashlib.sha256(self.mul.astype(np.int64).tobytes()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# construction


def from_table(mul, labels: Sequence[str] | None = None, name: str = "") -> GroupTable:
    """Validate a square multiplication table and return it with the identity moved to index 0.

    Raises GroupError naming the violated axiom.
    """
    a = np.asarray(mul)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise GroupError("table must be a nonempty square matrix")
    n = a.shape[0]
    a = a.astype(np.int64)
    if a.min() < 0 or a.max() >= n:
        raise GroupError("not closed: entries must be element indices")
    ar = np.arange(n)
    ids = [e for e in range(n) if np.array_equal(a[e], ar) and np.array_equal(a[:, e], ar)]
    if not ids:
        raise GroupError("no identity")
    e = ids[0]
    if e != 0:
        perm = np.arange(n)
        perm[0], perm[e] = e, 0  # new index -> old index
        pos = np.argsort(perm)
        a = pos[a[np.ix_(perm, perm)]]
        if labels is not None:
            labels = [labels[i] for i in perm]
    inv = np.full(n, -1, dtype=np.int64)
    for i in range(n):
        hits = np.nonzero((a[i] == 0) & (a[:, i] == 0))[0]
        if not len(hits):
            raise GroupError(f"no inverse for {i}")
        inv[i] = hits[0]
    bad = _accel.associativity_failure(a)
    if bad is not None:
        raise GroupError("not associative at (%d,%d,%d)" % bad)
    return GroupTable(a, inv, labels, name)


def _cycle_label(perm: Sequence[int]) -> str:
    seen = set()
    cycles = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            seen.add(start)
            continue
        cyc = [start]
        seen.add(start)
        j = perm[start]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = perm[j]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


def from_permutations(generators: Sequence[Sequence[int]], degree: int | None = None,
                      limit: int = DEFAULT_ORDER_LIMIT, name: str = "") -> GroupTable:
    """Close a set of permutations of {0..n-1} under composition.

    Elements are numbered in breadth-first order from the identity and
    ``mul[i, j]`` is ``p_i o p_j`` (apply ``p_j`` first).
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    if degree is None:
        degree = max((len(g) for g in gens), default=0)
    for g in gens:
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise GroupError(f"not a permutation of degree {degree}: {list(g)}")
    ident = tuple(range(degree))
    elems = [ident]
    index = {ident: 0}
    parent = [(-1, -1)]  # (parent index, generator index) in the BFS tree
    right = [[] for _ in gens]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        p = elems[i]
        for gi, g in enumerate(gens):
            prod = tuple(p[g[x]] for x in range(degree))
            j = index.get(prod)
            if j is None:
                if len(elems) >= limit:
                    raise GroupError(f"order exceeds limit {limit}")
                j = len(elems)
                index[prod] = j
                elems.append(prod)
                parent.append((i, gi))
                queue.append(j)
    n = len(elems)
    # right multiplication by each generator as index maps
    R = np.empty((len(gens), n), dtype=np.int64)
    for gi, g in enumerate(gens):
        for i, p in enumerate(elems):
            R[gi, i] = index[tuple(p[g[x]] for x in range(degree))]
    mul = np.empty((n, n), dtype=np.int64)
    mul[:, 0] = np.arange(n)
    for j in range(1, n):
        pj, gi = parent[j]
        mul[:, j] = R[gi][mul[:, pj]]
    inv = np.empty(n, dtype=np.int64)
    for i, p in enumerate(elems):
        q = [0] * degree
        for x, y in enumerate(p):
            q[y] = x
        inv[i] = index[tuple(q)]
    G = GroupTable(mul, inv, [_cycle_label(p) for p in elems], name)
    G.permutations = tuple(elems)
    return G


# ---------------------------------------------------------------------------
# presets


def cyclic(n: int) -> GroupTable:
    if n < 1:
        raise GroupError("cyclic group order must be positive")
    a = np.arange(n)
    mul = (a[:, None] + a[None, :]) % n
    labels = ["1"] + ["g" if k == 1 else f"g^{k}" for k in range(1, n)]
    return GroupTable(mul, (-a) % n, labels, f"C{n}")


def dihedral(order: int) -> GroupTable:
    """Dihedral group with ``order`` elements.

    ``dihedral(8)`` uses the presentation <x, y, q | x^2 = y^2 = q^2 = 1,
    [x, y] = [q, y] = 1, [q, x] = y> with element ``x^i y^j q^k`` at index
    ``i + 2j + 4k``.  Other orders use rotations r and a reflection s.
    """
    if order < 2 or order % 2:
        raise GroupError("dihedral group order must be even and at least 2")
    if order == 8:
        mul = np.empty((8, 8), dtype=np.int64)
        labels = []
        for g in range(8):
            i, j, k = g & 1, (g >> 1) & 1, g >> 2
            labels.append(("x" if i else "") + ("y" if j else "") + ("q" if k else "") or "1")
            for h in range(8):
                i2, j2, k2 = h & 1, (h >> 1) & 1, h >> 2
                mul[g, h] = ((i + i2) % 2) + 2 * ((j + j2 + k * i2) % 2) + 4 * ((k + k2) % 2)
        return from_table(mul, labels, "D8")
    n = order // 2
    mul = np.empty((order, order), dtype=np.int64)
    labels = []
    for g in range(order):
        i, k = g % n, g // n
        labels.append(((f"r^{i}" if i > 1 else "r") if i else "") + ("s" if k else "") or "1")
        for h in range(order):
            i2, k2 = h % n, h // n
            mul[g, h] = (i + (-i2 if k else i2)) % n + n * ((k + k2) % 2)
    return from_table(mul, labels, f"D{order}")


def quaternion8() -> GroupTable:
    # unit quaternions as (sign, axis) with axis in {1, i, j, k}
    units = [(1, 0), (-1, 0), (1, 1), (-1, 1), (1, 2), (-1, 2), (1, 3), (-1, 3)]
    names = ["1", "i", "j", "k"]
    # axis products: table[a][b] = (sign, axis)
    t = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    pos = {u: i for i, u in enumerate(units)}
    mul = np.empty((8, 8), dtype=np.int64)
    for a, (sa, xa) in enumerate(units):
        for b, (sb, xb) in enumerate(units):
            s, x = t[(xa, xb)]
            mul[a, b] = pos[(sa * sb * s, x)]
    labels = [("-" if s < 0 else "") + names[x] for s, x in units]
    return from_table(mul, labels, "Q8")


def klein() -> GroupTable:
    a = np.arange(4)
    return from_table(a[:, None] ^ a[None, :], ["1", "a", "b", "ab"], "Klein")


def symmetric(n: int) -> GroupTable:
    gens = []
    if n >= 2:
        gens.append([1, 0] + list(range(2, n)))
    if n >= 3:
        gens.append(list(range(1, n)) + [0])
    return from_permutations(gens, degree=n, name=f"S{n}")


def alternating(n: int) -> GroupTable:
    gens = []
    for k in range(2, n):
        p = list(range(n))
        p[0], p[1], p[k] = p[1], p[k], p[0]
        gens.append(p)
    return from_permutations(gens, degree=n, name=f"A{n}")


def direct_product(G: GroupTable, H: GroupTable) -> GroupTable:
    """G x H with (g, h) at index ``g * |H| + h``."""
    m = H.order
    gi = np.arange(G.order * m) // m
    hi = np.arange(G.order * m) % m
    mul = G.mul[np.ix_(gi, gi)] * m + H.mul[np.ix_(hi, hi)]
    inv = G.inv[gi] * m + H.inv[hi]
    labels = [f"({G.labels[g]},{H.labels[h]})" for g, h in zip(gi, hi)]
    name = f"{G.name}x{H.name}" if G.name and H.name else ""
    return GroupTable(mul, inv, labels, name)


# ---------------------------------------------------------------------------
# conjugacy


@dataclass(frozen=True, eq=False)
class ConjugacyData:
    group: GroupTable
    classes: tuple[tuple[int, ...], ...]
    class_of: np.ndarray
    centralizer_orders: tuple[int, ...]
    _power_cache: dict = field(default_factory=dict, repr=False)

    @property
    def representatives(self) -> tuple[int, ...]:
        return tuple(c[0] for c in self.classes)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    def __len__(self):
        return len(self.classes)

    @property
    def rep_orders(self) -> tuple[int, ...]:
        return tuple(int(self.group.element_orders[c[0]]) for c in self.classes)

    def power_map(self, k: int) -> np.ndarray:
        """Class index of g^k for each class; computed from actual element powers."""
        pm = self._power_cache.get(k)
        if pm is None:
            G = self.group
            pm = np.array([self.class_of[G.power(rep, k)] for rep in self.representatives], dtype=np.int64)
            pm.setflags(write=False)
            self._power_cache[k] = pm
        return pm

    @cached_property
    def inverse_map(self) -> np.ndarray:
        return self.power_map(-1)


def conjugacy_classes(G: GroupTable) -> ConjugacyData:
    """Partition G into classes ordered by (element order, class size, least element)."""
    n = G.order
    class_of = np.full(n, -1, dtype=np.int64)
    raw = []
    everyone = np.arange(n)
    for x in range(n):
        if class_of[x] >= 0:
            continue
        orbit = np.unique(G.mul[G.mul[everyone, x], G.inv])
        class_of[orbit] = len(raw)
        raw.append(tuple(int(v) for v in orbit))
    orders = G.element_orders
    raw.sort(key=lambda c: (int(orders[c[0]]), len(c), c[0]))
    class_of = np.empty(n, dtype=np.int64)
    for ci, c in enumerate(raw):
        class_of[list(c)] = ci
    class_of.setflags(write=False)
    cent = tuple(n // len(c) for c in raw)
    return ConjugacyData(G, tuple(raw), class_of, cent)


# ---------------------------------------------------------------------------
# subgroups


def generated_subgroup(G: GroupTable, generators: Iterable[int]) -> tuple[int, ...]:
    gens = sorted({int(g) for g in generators} - {0})
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(G.mul[x, g])
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(seen))


def is_subgroup(G: GroupTable, elements: Iterable[int]) -> bool:
    s = sorted(set(int(e) for e in elements))
    if not s or s[0] != 0:
        return False
    sub = G.mul[np.ix_(s, s)]
    return bool(np.isin(sub, s).all())


def is_normal(G: GroupTable, elements: Iterable[int]) -> bool:
    s = np.array(sorted(set(int(e) for e in elements)))
    conj = G.mul[G.mul[np.arange(G.order)[:, None], s[None, :]], G.inv[:, None]]
    return bool(np.isin(conj, s).all())


def is_abelian_subset(G: GroupTable, elements: Iterable[int]) -> bool:
    s = sorted(set(int(e) for e in elements))
    sub = G.mul[np.ix_(s, s)]
    return bool(np.array_equal(sub, sub.T))


def subgroup(G: GroupTable, elements: Iterable[int], name: str = "") -> GroupTable:
    """The subgroup on ``elements`` as a GroupTable; ``parent_indices[i]`` is its element in G."""
    s = sorted(set(int(e) for e in elements))
    if not is_subgroup(G, s):
        raise GroupError("not closed: subset is not a subgroup")
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[s] = np.arange(len(s))
    mul = pos[G.mul[np.ix_(s, s)]]
    inv = pos[G.inv[s]]
    H = GroupTable(mul, inv, [G.labels[g] for g in s], name)
    H.parent = G
    H.parent_indices = _frozen(s)
    return H


def center(G: GroupTable) -> tuple[int, ...]:
    return tuple(int(z) for z in np.nonzero((G.mul == G.mul.T).all(axis=1))[0])


def exponent(G: GroupTable) -> int:
    return G.exponent


def normal_subgroups(G: GroupTable) -> list[tuple[int, ...]]:
    """All normal subgroups, as joins of normal closures of conjugacy classes."""
    cls = G.conjugacy.classes
    closures = {generated_subgroup(G, c) for c in cls}
    found = {(0,)} | closures
    frontier = set(found)
    while frontier:
        new = set()
        for N in frontier:
            for C in closures:
                J = generated_subgroup(G, N + C)
                if J not in found:
                    new.add(J)
        found |= new
        frontier = new
    return sorted(found, key=lambda s: (len(s), s))


def normal_abelian_subgroups(G: GroupTable, limit: int = DEFAULT_ORDER_LIMIT) -> list[tuple[int, ...]]:
    if G.order > limit:
        raise GroupError(f"order exceeds limit {limit}")
    return [N for N in normal_subgroups(G) if is_abelian_subset(G, N)]


def subgroups(G: GroupTable, up_to_conjugacy: bool = False) -> list[tuple[int, ...]]:
    """All subgroups (joins of cyclic subgroups), optionally one per conjugacy class."""
    cyclic_subs = {generated_subgroup(G, [g]) for g in range(G.order)}
    found = {(0,)} | cyclic_subs
    frontier = set(found)
    while frontier:
        new = set()
        for H in frontier:
            for C in cyclic_subs:
                if set(C) <= set(H):
                    continue
                J = generated_subgroup(G, H + C)
                if J not in found:
                    new.add(J)
        found |= new
        frontier = new
    subs = sorted(found, key=lambda s: (len(s), s))
    if not up_to_conjugacy:
        return subs
    reps, seen = [], set()
    for H in subs:
        if H in seen:
            continue
        reps.append(H)
        for g in range(G.order):
            seen.add(tuple(sorted(G.conj(g, h) for h in H)))
    return reps


# ---------------------------------------------------------------------------
# abelian structure and extensions


@dataclass(frozen=True, eq=False)
class AbelianStructure:
    """A ≅ Z/d1 + ... + Z/dm inside an ambient group, with d1 | d2 | ... ."""

    group: GroupTable
    elements: tuple[int, ...]
    invariant_factors: tuple[int, ...]
    generators: tuple[int, ...]
    coordinates: Mapping[int, tuple[int, ...]]

    @property
    def order(self) -> int:
        return len(self.elements)

    def element(self, coords: Sequence[int]) -> int:
        g = 0
        for gen, c, d in zip(self.generators, coords, self.invariant_factors):
            g = int(self.group.mul[g, self.group.power(gen, c % d)])
        return g

    @classmethod
    def from_generators(cls, G: GroupTable, generators: Sequence[int], factors: Sequence[int]) -> "AbelianStructure":
        """Explicit basis; checks that coordinates give a bijection onto the direct sum."""
        coords = {}
        for c in itertools.product(*(range(d) for d in factors)):
            g = 0
            for gen, ci in zip(generators, c):
                g = int(G.mul[g, G.power(gen, ci)])
            if g in coords:
                raise GroupError("generators do not give a direct sum decomposition")
            coords[g] = tuple(c)
        elements = tuple(sorted(coords))
        if not is_subgroup(G, elements) or not is_abelian_subset(G, elements):
            raise GroupError("not abelian")
        return cls(G, elements, tuple(factors), tuple(generators), coords)


def abelian_structure(G: GroupTable, elements: Iterable[int] | None = None) -> AbelianStructure:
    """Invariant factors, a basis and coordinates of an abelian (sub)group.

    Builds a triangular relation matrix from a greedy generating set and reads
    the decomposition off its Smith normal form.
    """
    elems = tuple(range(G.order)) if elements is None else tuple(sorted(set(int(e) for e in elements)))
    if not is_subgroup(G, elems):
        raise GroupError("not closed: subset is not a subgroup")
    if not is_abelian_subset(G, elems):
        raise GroupError("not abelian")
    # greedy generators, coordinates of the generated subgroup, and relations
    gens: list[int] = []
    coords: dict[int, tuple[int, ...]] = {0: ()}
    relations: list[list[int]] = []
    for g in elems:
        if g in coords:
            continue
        # smallest t with g^t inside the current subgroup
        t, x = 1, g
        while x not in coords:
            x = int(G.mul[x, g])
            t += 1
        k = len(gens)
        rel = [-c for c in coords[x]] + [t]
        relations = [r + [0] for r in relations] + [rel]
        new = {}
        for h, c in coords.items():
            y = h
            for s in range(t):
                new[y] = c + (s,)
                y = int(G.mul[y, g])
        coords = new
        gens.append(g)
    m = len(gens)
    if m == 0:
        return AbelianStructure(G, elems, (), (), {0: ()})
    R = np.array(relations, dtype=object)
    snf = smith_normal_form(R)
    V = snf.V
    # V^-1 over Z (unimodular) by exact inversion on an integer copy
    Vinv = _unimodular_inverse(V)
    diag = snf.diagonal
    keep = [j for j in range(m) if diag[j] != 1]
    factors = tuple(int(diag[j]) for j in keep)
    new_gens = []
    for j in keep:
        h = 0
        for i in range(m):
            e = int(Vinv[j, i])
            if e:
                h = int(G.mul[h, G.power(gens[i], e)])
        new_gens.append(h)
    new_coords = {}
    for h, c in coords.items():
        w = [sum(c[i] * int(V[i, j]) for i in range(m)) for j in range(m)]
        new_coords[h] = tuple(w[j] % diag[j] for j in keep)
    return AbelianStructure(G, elems, factors, tuple(new_gens), new_coords)


def _unimodular_inverse(V) -> np.ndarray:
    from fractions import Fraction

    n = V.shape[0]
    M = [[Fraction(int(V[i, j])) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next(i for i in range(c, n) if M[i][c])
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [v * inv for v in M[c]]
        for i in range(n):
            if i != c and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            v = M[i][n + j]
            assert v.denominator == 1
            out[i, j] = int(v)
    return out


@dataclass(frozen=True, eq=False)
class ExtensionData:
    """1 -> A -> G -> Q -> 1 with a normal abelian A and a chosen section."""

    G: GroupTable
    A: tuple[int, ...]
    Q: GroupTable
    section: tuple[int, ...]
    projection: np.ndarray
    structure: AbelianStructure

    def q_of(self, g: int) -> int:
        return int(self.projection[g])


def extension(G: GroupTable, A: Iterable[int], structure: AbelianStructure | None = None) -> ExtensionData:
    """Quotient by a normal abelian subgroup; the section picks the least index in each coset."""
    A = tuple(sorted(set(int(a) for a in A)))
    if not is_subgroup(G, A):
        raise GroupError("not closed: subset is not a subgroup")
    if not is_abelian_subset(G, A):
        raise GroupError("not abelian")
    if not is_normal(G, A):
        raise GroupError("not normal")
    n = G.order
    projection = np.full(n, -1, dtype=np.int64)
    section = []
    Aarr = np.array(A)
    for g in range(n):
        if projection[g] >= 0:
            continue
        coset = G.mul[g, Aarr]
        projection[coset] = len(section)
        section.append(int(coset.min()))
    qn = len(section)
    qmul = np.empty((qn, qn), dtype=np.int64)
    for p in range(qn):
        for q in range(qn):
            qmul[p, q] = projection[G.mul[section[p], section[q]]]
    Q = from_table(qmul, [G.labels[s] + "A" if s else "1" for s in section], f"{G.name}/A" if G.name else "")
    projection.setflags(write=False)
    if structure is None:
        structure = abelian_structure(G, A)
    elif tuple(structure.elements) != A:
        raise GroupError("structure does not describe A")
    return ExtensionData(G, A, Q, tuple(section), projection, structure)


def find_isomorphism(G: GroupTable, H: GroupTable) -> np.ndarray | None:
    """Some isomorphism G -> H as an index map, by backtracking over generator images."""
    if G.order != H.order:
        return None
    if sorted(G.element_orders.tolist()) != sorted(H.element_orders.tolist()):
        return None
    gens: list[int] = []
    span: tuple[int, ...] = (0,)
    for g in sorted(range(G.order), key=lambda x: -int(G.element_orders[x])):
        if g not in span:
            gens.append(g)
            span = generated_subgroup(G, gens)
    # words: BFS tree over the generators
    parent = {0: None}
    order = [0]
    for x in order:
        for gi, g in enumerate(gens):
            y = int(G.mul[x, g])
            if y not in parent:
                parent[y] = (x, gi)
                order.append(y)
    cands = [[h for h in range(H.order) if H.element_orders[h] == G.element_orders[g]] for g in gens]

    def attempt(images):
        f = np.full(G.order, -1, dtype=np.int64)
        f[0] = 0
        for y in order[1:]:
            x, gi = parent[y]
            f[y] = H.mul[f[x], images[gi]]
        if len(set(f.tolist())) != G.order:
            return None
        if not np.array_equal(f[G.mul], H.mul[np.ix_(f, f)]):
            return None
        return f

    for images in itertools.product(*cands):
        f = attempt(images)
        if f is not None:
            return f
    return None
