"""JSON encodings of groups, character tables, matrices and twists."""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .catalog import load_group
from .chartab import CharacterTable
from .exact import Cyclotomic, QmodZ, pretty
from .groups import DEFAULT_ORDER_LIMIT, GroupTable
from .twist import Cocycle2, TwistData, build_twist


def group_to_json(G: GroupTable) -> dict:
    return {"name": G.name, "order": G.order, "mul": G.mul.tolist(), "labels": list(G.labels)}


def group_digest(G: GroupTable) -> str:
    return hashlib.sha256(np.ascontiguousarray(G.mul, dtype=np.int64).tobytes()).hexdigest()[:16]


def table_to_json(T: CharacterTable) -> dict:
    G, cd = T.group, T.conjugacy
    return {
        "group": G.name,
        "classes": [
            {"rep": G.labels[c[0]], "size": len(c), "order": int(G.element_orders[c[0]])} for c in cd.classes
        ],
        "irreducibles": [
            {"degree": d, "values": [v.to_json() for v in ch.values]} for d, ch in zip(T.degrees, T.characters)
        ],
    }


def table_to_text(T: CharacterTable) -> str:
    G, cd = T.group, T.conjugacy
    head = ["class"] + [G.labels[c[0]] for c in cd.classes]
    sizes = ["size"] + [str(len(c)) for c in cd.classes]
    orders = ["order"] + [str(int(G.element_orders[c[0]])) for c in cd.classes]
    rows = [head, sizes, orders] + [[f"X{i}"] + [pretty(v) for v in ch.values] for i, ch in enumerate(T.characters)]
    widths = [max(len(r[j]) for r in rows) for j in range(len(head))]
    return "\n".join("  ".join(s.rjust(w) for s, w in zip(r, widths)) for r in rows)


def matrix_to_json(M) -> list[list[int]]:
    return [[int(v) for v in row] for row in np.asarray(M)]


def matrix_to_text(M, labels=None) -> str:
    M = np.asarray(M)
    labels = labels or [f"X{i}" for i in range(M.shape[0])]
    cells = [[str(int(v)) for v in row] for row in M]
    w = max([len(c) for row in cells for c in row] + [1])
    lw = max(len(l) for l in labels)
    return "\n".join(l.ljust(lw) + "  " + " ".join(c.rjust(w) for c in row) for l, row in zip(labels, cells))


def twist_to_json(t: TwistData) -> dict:
    G = t.G
    return {
        "group": G.name,
        "subgroup": list(t.ext.A),
        "invariant_factors": list(t.ext.structure.invariant_factors),
        "generators": [G.labels[g] for g in t.ext.structure.generators],
        "quotient_section": [G.labels[s] for s in t.ext.section],
        "alpha": t.alpha.to_json(),
        "z": {str(c.q): c.to_json() for c in t.z},
        "b": [[G.labels[a] for a in row] for row in t.b.table],
        "nondegenerate": t.is_nondegenerate,
        "twisted_group": group_to_json(t.G_b),
    }


def load_twist_file(path: str, limit: int = DEFAULT_ORDER_LIMIT) -> TwistData:
    """Twist description file: {"group", "subgroup", "alpha", optional "z": {q: [...]}}."""
    with open(Path(path)) as fh:
        data = json.load(fh)
    for key in ("group", "subgroup", "alpha"):
        if key not in data:
            raise ValueError(f"twist file is missing '{key}'")
    G = load_group(str(data["group"]), limit)
    alpha = Cocycle2.from_values([[QmodZ(v) for v in row] for row in data["alpha"]])
    z = {int(q): [QmodZ(v) for v in vals] for q, vals in data.get("z", {}).items()} or None
    return build_twist(G, [int(a) for a in data["subgroup"]], alpha, z)


def dumps(obj) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, indent=2, sort_keys=True, default=_default) + "\n"


def _default(o):
    if isinstance(o, Cyclotomic):
        return o.to_json()
    if isinstance(o, QmodZ):
        return o.to_json()
    if isinstance(o, Fraction):
        return f"{o.numerator}/{o.denominator}"
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, (bool, np.bool_)):
        return bool(o)
    raise TypeError(f"not JSON serializable: {type(o).__name__}")
