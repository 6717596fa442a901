"""Named small groups and group-file loading.

Names: ``C<n>``, ``D<2n>``, ``S<n>``, ``A<n>``, ``Q8``, ``Klein`` (also ``V4``),
and direct products joined by ``x`` such as ``C4xC2`` or ``D8xC2``.
"""

from __future__ import annotations

import json
import re
from functools import lru_cache
from pathlib import Path

from .groups import (
    DEFAULT_ORDER_LIMIT,
    GroupError,
    GroupTable,
    alternating,
    cyclic,
    dihedral,
    direct_product,
    from_permutations,
    from_table,
    klein,
    quaternion8,
    symmetric,
)

CATALOG = (
    "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12",
    "Klein", "D8", "Q8", "S3", "A4", "S4", "D10", "D12",
    "C2xC4", "C4xC2", "C2xC2xC2", "C2xC6", "C3xC3", "C4xC4", "C2xC8",
    "C2xC2xC4", "C2xC2xC2xC2", "D8xC2", "Q8xC2",
)

_ATOM = re.compile(r"^(C|D|S|A)(\d+)$")


def _atom(name: str, limit: int) -> GroupTable:
    if name in ("Klein", "V4"):
        return klein()
    if name == "Q8":
        return quaternion8()
    m = _ATOM.match(name)
    if not m:
        raise KeyError(f"unknown group name: {name}")
    kind, n = m.group(1), int(m.group(2))
    if kind == "C":
        if n < 1 or n > limit:
            raise KeyError(f"unknown group name: {name}")
        return cyclic(n)
    if kind == "D":
        if n < 2 or n % 2 or n > limit:
            raise KeyError(f"unknown group name: {name}")
        return dihedral(n)
    if n < 1 or n > 7:
        raise KeyError(f"unknown group name: {name}")
    return symmetric(n) if kind == "S" else alternating(n)


@lru_cache(maxsize=None)
def _named(name: str, limit: int) -> GroupTable:
    parts = name.split("x")
    G = _atom(parts[0], limit)
    for p in parts[1:]:
        G = direct_product(G, _atom(p, limit))
        if G.order > limit:
            raise GroupError(f"order exceeds limit {limit}")
    G.name = name
    return G


def get_group(name: str, limit: int = DEFAULT_ORDER_LIMIT) -> GroupTable:
    """A catalog group by name (cached, so repeated calls share tables and character tables)."""
    G = _named(name, limit)
    if G.order > limit:
        raise GroupError(f"order exceeds limit {limit}")
    return G


def group_from_json(data: dict, limit: int = DEFAULT_ORDER_LIMIT) -> GroupTable:
    name = str(data.get("name", ""))
    if "mul" in data:
        mul = data["mul"]
        if "order" in data and int(data["order"]) != len(mul):
            raise GroupError("declared order does not match the table")
        if len(mul) > limit:
            raise GroupError(f"order exceeds limit {limit}")
        return from_table(mul, data.get("labels"), name)
    if "perm_gens" in data:
        return from_permutations(data["perm_gens"], data.get("degree"), limit=limit, name=name)
    raise GroupError("group file needs 'mul' or 'perm_gens'")


def load_group(source: str, limit: int = DEFAULT_ORDER_LIMIT) -> GroupTable:
    """A catalog name or the path of a group JSON file."""
    path = Path(source)
    if path.suffix == ".json" or path.is_file():
        with open(path) as fh:
            return group_from_json(json.load(fh), limit)
    return get_group(source, limit)
