"""Exact representation rings of finite groups as lambda-rings, and group twists that preserve odd Adams operations."""

__version__ = "0.1.0"

from .exact import Cyclotomic, QmodZ, qmodz_to_cyclotomic, smith_normal_form, solve_mod, zeta
from .groups import (
    GroupTable,
    abelian_structure,
    conjugacy_classes,
    cyclic,
    dihedral,
    direct_product,
    extension,
    from_permutations,
    from_table,
    klein,
    normal_abelian_subgroups,
    quaternion8,
)
from .chartab import ClassFunction, CharacterTable, abelian_character_table, character_table, inner_product
from .lambdaring import RepRingElement, adams, fs_indicator, lambda_op
from .twist import build_twist, d8_example, klein_example

__all__ = [
    "Cyclotomic", "QmodZ", "qmodz_to_cyclotomic", "smith_normal_form", "solve_mod", "zeta",
    "GroupTable", "abelian_structure", "conjugacy_classes", "cyclic", "dihedral", "direct_product",
    "extension", "from_permutations", "from_table", "klein", "normal_abelian_subgroups", "quaternion8",
    "ClassFunction", "CharacterTable", "abelian_character_table", "character_table", "inner_product",
    "RepRingElement", "adams", "fs_indicator", "lambda_op",
    "build_twist", "d8_example", "klein_example",
]
