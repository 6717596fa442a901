"""Twisting a group along a normal abelian subgroup.

Input: an extension 1 -> A -> G -> Q -> 1, a Q-invariant nondegenerate
2-cocycle alpha on the character group A^v, and 1-cochains z(q) on A^v with
dz(q) = q(alpha) - alpha.  Output: a 2-cocycle b on Q with values in A and
the group G_b on the same element set with multiplication g *_b h = b(g~, h~) g h.

All root-of-unity values are written additively in Q/Z.  Conventions:

* Q acts on A by conjugation through the section, q.a = s(q) a s(q)^-1.
* Q acts on characters by (q.phi)(a) = phi(q^-1 . a).
* Q acts on functions of characters by (q.f)(phi) = f(q^-1 . phi).
* b(p, q)(psi) = z(pq)(psi) - z(p)(psi) - z(q)(p^-1 . psi), read as an element of A.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Mapping, Sequence

import numpy as np

from .chartab import CharacterTable, ClassFunction, character_table
from .exact import Cyclotomic, QmodZ, qmodz_to_cyclotomic, solve_mod, zeta
from .groups import (
    AbelianStructure,
    ExtensionData,
    GroupTable,
    abelian_structure,
    extension,
    from_table,
    normal_abelian_subgroups,
)
from .lambdaring import adams

MAX_DUAL_ORDER = 64


class TwistError(ValueError):
    pass


def _q(x) -> QmodZ:
    return x if isinstance(x, QmodZ) else QmodZ(x)


# ---------------------------------------------------------------------------
# characters of A


class DualGroup:
    """The character group of A, enumerated as exponent vectors in lexicographic order.

    Character ``v`` sends the i-th generator of A to exp(2 pi i v_i / d_i).
    """

    def __init__(self, structure: AbelianStructure):
        self.structure = structure
        self.factors = tuple(structure.invariant_factors)
        self.characters = tuple(itertools.product(*(range(d) for d in self.factors)))
        self.index = {v: i for i, v in enumerate(self.characters)}
        self.elements = tuple(structure.elements)
        # eval table as Fractions in [0, 1)
        self._ev = [[self._eval_vec(v, a) for a in self.elements] for v in self.characters]
        self._element_of = {tuple(self._ev[i][t] for i in range(len(self.characters))): a
                            for t, a in enumerate(self.elements)}

    def _eval_vec(self, v, a) -> Fraction:
        c = self.structure.coordinates[a]
        s = sum((Fraction(vi * ci, d) for vi, ci, d in zip(v, c, self.factors)), Fraction(0))
        return s - math.floor(s)

    def __len__(self):
        return len(self.characters)

    def eval(self, phi: int, a: int) -> QmodZ:
        """phi(a) as an element of Q/Z; ``phi`` is a character index, ``a`` a group element of A."""
        return QmodZ(self._ev[phi][self.elements.index(a)])

    def eval_fraction(self, phi: int, a: int) -> Fraction:
        return self._ev[phi][self._pos[a]]

    @cached_property
    def _pos(self) -> dict[int, int]:
        return {a: t for t, a in enumerate(self.elements)}

    def add(self, phi: int, psi: int) -> int:
        v = tuple((x + y) % d for x, y, d in zip(self.characters[phi], self.characters[psi], self.factors))
        return self.index[v]

    def neg(self, phi: int) -> int:
        return self.index[tuple((-x) % d for x, d in zip(self.characters[phi], self.factors))]

    @cached_property
    def add_table(self) -> np.ndarray:
        n = len(self)
        return np.array([[self.add(i, j) for j in range(n)] for i in range(n)], dtype=np.int64)

    def element_for(self, values: Sequence[Fraction]) -> int | None:
        """The a in A with phi(a) = values[phi] for every character, if any."""
        key = tuple(Fraction(v) - math.floor(Fraction(v)) for v in values)
        return self._element_of.get(key)

    def character_from_values(self, on_generators: Sequence[Fraction]) -> int:
        v = tuple(int(Fraction(t) * d) % d for t, d in zip(on_generators, self.factors))
        return self.index[v]


def dual_group(A: AbelianStructure) -> DualGroup:
    return DualGroup(A)


# ---------------------------------------------------------------------------
# the action of Q


@dataclass(frozen=True, eq=False)
class QAction:
    """``on_A[q][a]`` and ``on_dual[q][phi]`` for every q in Q."""

    ext: ExtensionData
    dual: DualGroup
    on_A: tuple[dict, ...]
    on_dual: tuple[tuple[int, ...], ...]

    def fixed(self, q: int) -> tuple[int, ...]:
        return tuple(phi for phi in range(len(self.dual)) if self.on_dual[q][phi] == phi)

    def inverse(self, q: int) -> int:
        return int(self.ext.Q.inv[q])


def q_action(ext: ExtensionData, dual: DualGroup | None = None) -> QAction:
    G, Q = ext.G, ext.Q
    dual = dual or DualGroup(ext.structure)
    on_A = tuple({a: G.conj(s, a) for a in ext.A} for s in ext.section)
    gens = ext.structure.generators
    on_dual = []
    for q in range(Q.order):
        back = on_A[int(Q.inv[q])]
        row = []
        for phi in range(len(dual)):
            vals = [dual.eval_fraction(phi, back[g]) for g in gens]
            row.append(dual.character_from_values(vals))
        on_dual.append(tuple(row))
    act = QAction(ext, dual, on_A, tuple(on_dual))
    # both are actions: compatible with the multiplication of Q
    for p in range(Q.order):
        for q in range(Q.order):
            pq = int(Q.mul[p, q])
            if any(act.on_dual[pq][phi] != act.on_dual[p][act.on_dual[q][phi]] for phi in range(len(dual))):
                raise TwistError("dual action is not an action")  # pragma: no cover
    return act


# ---------------------------------------------------------------------------
# 2-cocycles and pairings on A^v


@dataclass(frozen=True, eq=False)
class Cocycle2:
    """alpha: A^v x A^v -> Q/Z, indexed by the DualGroup enumeration."""

    table: tuple[tuple[QmodZ, ...], ...]

    @classmethod
    def from_values(cls, rows) -> "Cocycle2":
        return cls(tuple(tuple(_q(v) for v in row) for row in rows))

    def __call__(self, phi: int, psi: int) -> QmodZ:
        return self.table[phi][psi]

    def __len__(self):
        return len(self.table)

    def is_cocycle(self, dual: DualGroup) -> bool:
        n = len(dual)
        add = dual.add_table
        t = self.table
        for a, b, c in itertools.product(range(n), repeat=3):
            if t[a][b] + t[add[a, b]][c] != t[b][c] + t[a][add[b, c]]:
                return False
        return True

    def act(self, action: QAction, q: int) -> "Cocycle2":
        """(q.alpha)(phi, psi) = alpha(q^-1 phi, q^-1 psi)."""
        back = action.on_dual[action.inverse(q)]
        n = len(self.table)
        return Cocycle2(tuple(tuple(self.table[back[i]][back[j]] for j in range(n)) for i in range(n)))

    def to_json(self) -> list[list[str]]:
        return [[v.to_json() for v in row] for row in self.table]


def skew(alpha: Cocycle2) -> tuple[tuple[QmodZ, ...], ...]:
    """s(phi, psi) = alpha(phi, psi) - alpha(psi, phi)."""
    n = len(alpha)
    return tuple(tuple(alpha(i, j) - alpha(j, i) for j in range(n)) for i in range(n))


def is_bicharacter(s, dual: DualGroup) -> bool:
    n = len(dual)
    add = dual.add_table
    return all(s[add[i, j]][l] == s[i][l] + s[j][l] and s[l][add[i, j]] == s[l][i] + s[l][j]
               for i in range(n) for j in range(n) for l in range(n))


def is_nondegenerate(s) -> bool:
    """phi -> s(phi, -) is injective."""
    n = len(s)
    return all(any(not s[phi][psi].is_zero() for psi in range(n)) for phi in range(1, n))


def is_invariant_class(ext: ExtensionData, alpha: Cocycle2, action: QAction | None = None) -> bool:
    action = action or q_action(ext)
    s = skew(alpha)
    return all(skew(alpha.act(action, q)) == s for q in range(ext.Q.order))


def _pairing_from_values(dual: DualGroup, vals: Mapping[tuple[int, int], Fraction]):
    chars = dual.characters
    m = len(dual.factors)
    s = []
    for v in chars:
        row = []
        for w in chars:
            t = sum((x * (v[i] * w[j] - v[j] * w[i]) for (i, j), x in vals.items()), Fraction(0))
            row.append(QmodZ(t))
        s.append(tuple(row))
    return tuple(s)


def _standard_cocycle(dual: DualGroup, vals: Mapping[tuple[int, int], Fraction]) -> Cocycle2:
    # alpha(v, w) = -sum_{i<j} s_ij v_j w_i has skew s
    chars = dual.characters
    rows = []
    for v in chars:
        rows.append(tuple(QmodZ(sum((-x * v[j] * w[i] for (i, j), x in vals.items()), Fraction(0))) for w in chars))
    return Cocycle2(tuple(rows))


def enumerate_invariant_nondegenerate(ext: ExtensionData, action: QAction | None = None) -> list[Cocycle2]:
    """One bilinear cocycle per Q-invariant nondegenerate alternating pairing on A^v."""
    dual = action.dual if action else DualGroup(ext.structure)
    if len(dual) > MAX_DUAL_ORDER:
        raise TwistError(f"A too large for enumeration (|A| = {len(dual)} > {MAX_DUAL_ORDER})")
    action = action or q_action(ext, dual)
    f = dual.factors
    pairs = [(i, j) for i in range(len(f)) for j in range(i + 1, len(f))]
    choices = [[Fraction(t, math.gcd(f[i], f[j])) for t in range(math.gcd(f[i], f[j]))] for i, j in pairs]
    out = []
    for pick in itertools.product(*choices):
        vals = {pr: x for pr, x in zip(pairs, pick) if x}
        s = _pairing_from_values(dual, vals)
        if not is_nondegenerate(s):
            continue
        inv_ok = True
        for q in range(ext.Q.order):
            back = action.on_dual[action.inverse(q)]
            if any(s[back[i]][back[j]] != s[i][j] for i in range(len(dual)) for j in range(len(dual))):
                inv_ok = False
                break
        if inv_ok:
            out.append(_standard_cocycle(dual, vals))
    return out


# ---------------------------------------------------------------------------
# the cochains z(q)


@dataclass(frozen=True)
class Cochain1:
    q: int
    values: tuple[QmodZ, ...]

    def __call__(self, phi: int) -> QmodZ:
        return self.values[phi]

    def to_json(self) -> list[str]:
        return [v.to_json() for v in self.values]


def coboundary_holds(alpha: Cocycle2, action: QAction, z: Cochain1) -> bool:
    """z(phi) + z(psi) - z(phi + psi) = (q.alpha - alpha)(phi, psi) on every pair."""
    dual = action.dual
    qa = alpha.act(action, z.q)
    n = len(dual)
    add = dual.add_table
    return all(z(i) + z(j) - z(add[i, j]) == qa(i, j) - alpha(i, j) for i in range(n) for j in range(n))


def is_normalized(action: QAction, z: Cochain1) -> bool:
    return all(z(phi).is_zero() for phi in action.fixed(z.q))


def solve_z(ext: ExtensionData, alpha: Cocycle2, q: int, action: QAction | None = None) -> Cochain1:
    """A normalized solution of dz(q) = q.alpha - alpha.

    A particular solution comes from the Smith normal form solver.  Its
    restriction to the q-fixed characters is additive; that homomorphism is
    extended to all of A^v and subtracted, so the result vanishes on fixed
    characters.
    """
    action = action or q_action(ext)
    dual = action.dual
    n = len(dual)
    add = dual.add_table
    qa = alpha.act(action, q)
    rows, rhs = [], []
    for i in range(n):
        for j in range(n):
            row = [0] * n
            row[i] += 1
            row[j] += 1
            row[int(add[i, j])] -= 1
            rows.append(row)
            rhs.append(qa(i, j) - alpha(i, j))
    sol = solve_mod(rows, rhs)
    if sol is None:
        raise TwistError("coboundary system unsolvable")
    z = list(sol)
    fixed = action.fixed(q)
    if any(z[int(add[i, j])] != z[i] + z[j] for i in fixed for j in fixed):
        raise TwistError("restriction to fixed characters is not additive")  # pragma: no cover
    # extend z|fixed to a homomorphism h(v) = sum_i v_i x_i with d_i x_i = 0
    m = len(dual.factors)
    ext_rows = [list(dual.characters[phi]) for phi in fixed]
    ext_rhs = [z[phi] for phi in fixed]
    for i, d in enumerate(dual.factors):
        ext_rows.append([d if t == i else 0 for t in range(m)])
        ext_rhs.append(QmodZ(0))
    x = solve_mod(ext_rows, ext_rhs) if m else []
    if x is None:
        raise TwistError("cannot extend the fixed-character homomorphism")  # pragma: no cover
    h = [sum((xi * vi for xi, vi in zip(x, v)), QmodZ(0)) for v in dual.characters]
    out = Cochain1(q, tuple(zi - hi for zi, hi in zip(z, h)))
    if not (coboundary_holds(alpha, action, out) and is_normalized(action, out)):
        raise TwistError("normalized cochain failed verification")  # pragma: no cover
    return out


def solve_z_family(ext: ExtensionData, alpha: Cocycle2, action: QAction | None = None) -> tuple[Cochain1, ...]:
    action = action or q_action(ext)
    n = len(action.dual)
    return tuple(
        Cochain1(0, tuple(QmodZ(0) for _ in range(n))) if q == 0 else solve_z(ext, alpha, q, action)
        for q in range(ext.Q.order)
    )


# ---------------------------------------------------------------------------
# the cocycle b and the twisted group


@dataclass(frozen=True, eq=False)
class CocycleB:
    """b(p, q) as elements of A (indices into G)."""

    table: tuple[tuple[int, ...], ...]

    def __call__(self, p: int, q: int) -> int:
        return self.table[p][q]

    def is_trivial(self) -> bool:
        return all(a == 0 for row in self.table for a in row)


def _b_function(action: QAction, z: Sequence[Cochain1], p: int, q: int) -> list[QmodZ]:
    Q = action.ext.Q
    pq = int(Q.mul[p, q])
    back = action.on_dual[action.inverse(p)]
    return [z[pq](psi) - z[p](psi) - z[q](back[psi]) for psi in range(len(action.dual))]


def _element_from_function(action: QAction, f: Sequence[QmodZ], what: str) -> int:
    dual = action.dual
    n = len(dual)
    add = dual.add_table
    if any(f[int(add[i, j])] != f[i] + f[j] for i in range(n) for j in range(n)):
        raise TwistError(f"{what}: not a character")
    a = dual.element_for([v.value for v in f])
    if a is None:
        raise TwistError(f"{what}: no matching element")  # pragma: no cover
    return a


def cocycle_b(ext: ExtensionData, alpha: Cocycle2, z: Sequence[Cochain1], action: QAction | None = None) -> CocycleB:
    """b(p, q) = z(pq) - z(p) - p.z(q), identified with an element of A; verified to be a 2-cocycle."""
    action = action or q_action(ext)
    Q, G = ext.Q, ext.G
    if any(not v.is_zero() for v in z[0].values):
        raise TwistError("z(1) must vanish")
    for zq in z:
        if not coboundary_holds(alpha, action, zq):
            raise TwistError(f"z({zq.q}) does not satisfy the coboundary equation")
    table = tuple(
        tuple(_element_from_function(action, _b_function(action, z, p, q), f"b({p},{q})") for q in range(Q.order))
        for p in range(Q.order)
    )
    b = CocycleB(table)
    for p, q, r in itertools.product(range(Q.order), repeat=3):
        lhs = G.m(b(p, q), b(int(Q.mul[p, q]), r))
        rhs = G.m(action.on_A[p][b(q, r)], b(p, int(Q.mul[q, r])))
        if lhs != rhs:
            raise TwistError("b fails the cocycle identity")  # pragma: no cover
    if any(b(0, q) or b(q, 0) for q in range(Q.order)):
        raise TwistError("b is not normalized")  # pragma: no cover
    return b


def twisted_group(ext: ExtensionData, b: CocycleB) -> GroupTable:
    """The group on G's elements with g *_b h = b(g~, h~) g h."""
    G = ext.G
    proj = ext.projection
    bt = np.array(b.table, dtype=np.int64)
    mul_b = G.mul[bt[proj[:, None], proj[None, :]], G.mul]
    name = f"{G.name}_b" if G.name else ""
    H = from_table(mul_b, G.labels, name)
    if H.order != G.order:
        raise TwistError("twisted table has the wrong order")  # pragma: no cover
    return H


def twisted_power(ext: ExtensionData, b: CocycleB, g: int, k: int) -> int:
    """g^k computed with the twisted multiplication."""
    if k < 1:
        raise ValueError("k must be positive")
    G = ext.G
    x = g
    for _ in range(k - 1):
        x = G.m(b(ext.q_of(x), ext.q_of(g)), x, g)
    return x


def power_discrepancy(ext: ExtensionData, z: Sequence[Cochain1], g: int, k: int,
                      action: QAction | None = None) -> int:
    """The a in A with (k-th twisted power of g) = a g^k.

    As a function of psi: z(q^k)(psi) - sum_{i<k} z(q)(q^-i psi), q the image of g.
    """
    if k < 1:
        raise ValueError("k must be positive")
    action = action or q_action(ext)
    Q = ext.Q
    q = ext.q_of(g)
    qk = Q.power(q, k)
    n = len(action.dual)
    vals = []
    for psi in range(n):
        acc = z[qk](psi)
        for i in range(k):
            acc = acc - z[q](action.on_dual[Q.power(q, -i)][psi])
        vals.append(acc)
    return _element_from_function(action, vals, "power discrepancy")


def twisted_character(ext: ExtensionData, z: Sequence[Cochain1], chi: ClassFunction,
                      action: QAction | None = None) -> list[Cyclotomic]:
    """Character of the twisted representation, as a function on G's elements.

    chi_b(g) = sum over q-fixed phi of exp(-2 pi i z(q)(q.phi)) times the trace of g
    on the phi-isotypic part, where q is the image of g and that trace is
    |A|^-1 sum_a conj(phi(a)) chi(g a).
    """
    action = action or q_action(ext)
    G = ext.G
    dual = action.dual
    nA = len(ext.A)
    out = []
    for g in range(G.order):
        q = ext.q_of(g)
        total = Cyclotomic.rational(0)
        for phi in action.fixed(q):
            c = qmodz_to_cyclotomic(-z[q](action.on_dual[q][phi]))
            iso = Cyclotomic.rational(0)
            for a in ext.A:
                val = chi(int(G.mul[g, a]))
                if val.is_zero():
                    continue
                ev = dual.eval_fraction(phi, a)
                iso = iso + val * zeta(ev.denominator, -ev.numerator)
            total = total + c * iso * Fraction(1, nA)
        out.append(total)
    return out


# ---------------------------------------------------------------------------
# comparing Adams operations


@dataclass(frozen=True, eq=False)
class AdamsComparison:
    k: int
    matching: tuple[int, ...]  # matching[i] = index in the twisted table of chi_i
    equal: bool
    diff: np.ndarray  # twisted (read through the matching) minus original
    original: np.ndarray
    twisted: np.ndarray


def match_characters(T: CharacterTable, T_b: CharacterTable) -> tuple[int, ...]:
    """Pair irreducibles of G and G_b that agree as functions on the shared element set."""
    if T.group.order != T_b.group.order or T.rank != T_b.rank:
        raise TwistError("no character matching")
    n = T.group.order

    def pointwise(chi: ClassFunction):
        return tuple(chi(g) for g in range(n))

    lookup = {}
    for j, chi in enumerate(T_b.characters):
        lookup.setdefault(pointwise(chi), []).append(j)
    out = []
    for chi in T.characters:
        js = lookup.get(pointwise(chi), [])
        if len(js) != 1:
            raise TwistError("no character matching")
        out.append(js[0])
    if len(set(out)) != len(out):
        raise TwistError("no character matching")  # pragma: no cover
    return tuple(out)


def compare_adams(T: CharacterTable, T_b: CharacterTable, k: int,
                  matching: Sequence[int] | None = None) -> AdamsComparison:
    m = list(matching if matching is not None else match_characters(T, T_b))
    A1 = adams(T, k)
    A2 = adams(T_b, k)[np.ix_(m, m)]
    diff = A2 - A1
    return AdamsComparison(k, tuple(m), not diff.any(), diff, A1, A2)


# ---------------------------------------------------------------------------
# assembled twist data


@dataclass(eq=False)
class TwistData:
    ext: ExtensionData
    action: QAction
    alpha: Cocycle2
    z: tuple[Cochain1, ...]
    b: CocycleB
    G_b: GroupTable
    _tables: dict = field(default_factory=dict, repr=False)

    @property
    def G(self) -> GroupTable:
        return self.ext.G

    @property
    def dual(self) -> DualGroup:
        return self.action.dual

    def table(self, seed: int = 0) -> CharacterTable:
        return character_table(self.G, seed)

    def twisted_table(self, seed: int = 0) -> CharacterTable:
        return character_table(self.G_b, seed)

    @cached_property
    def matching(self) -> tuple[int, ...]:
        return match_characters(self.table(), self.twisted_table())

    def compare(self, k: int) -> AdamsComparison:
        return compare_adams(self.table(), self.twisted_table(), k, self.matching)

    def twisted_character(self, chi: ClassFunction) -> list[Cyclotomic]:
        return twisted_character(self.ext, self.z, chi, self.action)

    def power_discrepancy(self, g: int, k: int) -> int:
        return power_discrepancy(self.ext, self.z, g, k, self.action)

    def twisted_power(self, g: int, k: int) -> int:
        return twisted_power(self.ext, self.b, g, k)

    @property
    def is_nondegenerate(self) -> bool:
        return is_nondegenerate(skew(self.alpha))


def build_twist(G: GroupTable, A: Sequence[int], alpha: Cocycle2 | None = None,
                z: Mapping[int, Sequence] | Sequence[Cochain1] | None = None,
                structure: AbelianStructure | None = None) -> TwistData:
    """Assemble a twist.  Missing alpha: first invariant nondegenerate class.  Missing z: solve_z."""
    ext = extension(G, A, structure)
    action = q_action(ext)
    dual = action.dual
    if alpha is None:
        found = enumerate_invariant_nondegenerate(ext, action)
        if not found:
            raise TwistError("no invariant nondegenerate cocycle on A^v")
        alpha = found[0]
    if len(alpha) != len(dual) or any(len(row) != len(dual) for row in alpha.table):
        raise TwistError("alpha has the wrong shape for A^v")
    if not alpha.is_cocycle(dual):
        raise TwistError("alpha is not a 2-cocycle")
    if not is_invariant_class(ext, alpha, action):
        raise TwistError("cohomology class of alpha is not Q-invariant")
    fam = list(solve_z_family(ext, alpha, action))
    if z is not None:
        given = z.items() if isinstance(z, Mapping) else ((c.q, c.values) for c in z)
        for q, vals in given:
            q = int(q)
            c = Cochain1(q, tuple(_q(v) for v in vals))
            if len(c.values) != len(dual):
                raise TwistError(f"z({q}) has the wrong length")
            if not coboundary_holds(alpha, action, c):
                raise TwistError(f"z({q}) does not satisfy the coboundary equation")
            fam[q] = c
    fam = tuple(fam)
    b = cocycle_b(ext, alpha, fam, action)
    G_b = twisted_group(ext, b)
    return TwistData(ext, action, alpha, fam, b, G_b)


def alternate_z(twist: TwistData, seed: int = 0) -> tuple[Cochain1, ...]:
    """Another normalized z-family: add to each z(q) a character of A^v trivial on the q-fixed part."""
    rng = random.Random(seed)
    action = twist.action
    dual = action.dual
    out = [twist.z[0]]
    for q in range(1, twist.ext.Q.order):
        fixed = action.fixed(q)
        shifts = [a for a in twist.ext.A if all(dual.eval_fraction(phi, a) == 0 for phi in fixed)]
        a = rng.choice(shifts)
        vals = tuple(v + QmodZ(dual.eval_fraction(phi, a)) for phi, v in enumerate(twist.z[q].values))
        out.append(Cochain1(q, vals))
    return tuple(out)


def twists(G: GroupTable, invariant_factors: Sequence[int] | None = None,
           max_order: int = MAX_DUAL_ORDER) -> Iterator[TwistData]:
    """Every twist of G over normal abelian subgroups (optionally of a given isomorphism type)."""
    for A in normal_abelian_subgroups(G):
        if len(A) == 1 or len(A) > max_order:
            continue
        st = abelian_structure(G, A)
        if invariant_factors is not None and tuple(st.invariant_factors) != tuple(invariant_factors):
            continue
        ext = extension(G, A, st)
        action = q_action(ext)
        for alpha in enumerate_invariant_nondegenerate(ext, action):
            yield build_twist(G, A, alpha, structure=st)


# ---------------------------------------------------------------------------
# the two worked examples


D8_SUBGROUP = (0, 1, 2, 3)  # {1, x, y, xy}


def d8_example() -> TwistData:
    """D8 = <x, y, q> twisted along A = <x, y> with alpha(v^a m^b, v^c m^d) = bc/2 and z(q)(v^a m^b) = b/4.

    Characters of A are exponent vectors (a, b) with phi(x) = (-1)^a, phi(y) = (-1)^b.
    """
    from .groups import dihedral

    G = dihedral(8)
    st = AbelianStructure.from_generators(G, [G.index("x"), G.index("y")], [2, 2])
    dual = DualGroup(st)
    alpha = Cocycle2.from_values(
        [[Fraction(v[1] * w[0], 2) for w in dual.characters] for v in dual.characters]
    )
    q = 1  # the non-identity element of Q = G/A
    zq = [Fraction(v[1], 4) for v in dual.characters]
    return build_twist(G, D8_SUBGROUP, alpha, {q: zq}, structure=st)


def klein_example() -> tuple[CharacterTable, list[list[QmodZ]]]:
    """Character table of the Klein group with the pairing s(V_ij, V_kl) = (il + jk)/2.

    V_ij takes the value (-1)^i on a and (-1)^j on b.
    """
    from .groups import klein

    G = klein()
    T = character_table(G)
    a, b = G.index("a"), G.index("b")
    labels = [(int(ch(a) == -1), int(ch(b) == -1)) for ch in T.characters]
    pairing = [[QmodZ(Fraction(i * l + j * k, 2)) for (k, l) in labels] for (i, j) in labels]
    return T, pairing


def klein_labels(T: CharacterTable) -> list[tuple[int, int]]:
    G = T.group
    a, b = G.index("a"), G.index("b")
    return [(int(ch(a) == -1), int(ch(b) == -1)) for ch in T.characters]
