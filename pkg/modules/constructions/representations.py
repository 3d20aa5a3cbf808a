# modules/constructions/representations.py

"""
The minimal faithful module of n_{n,1} and checks for right modules.

A right module satisfies (e, [x, y]) = ((e, x), y) - ((e, y), x), i.e.
phi([x, y]) = phi(y) phi(x) - phi(x) phi(y) for phi(x)(e) = (e, x). This
is the convention under which the tables below are modules; the opposite
sign convention fails on them.

The source text introduces this module once as "V x H_{2m+1} -> V"; the
action it displays is the one for n_{n,1} built here.
"""

from fractions import Fraction
from typing import List, Tuple

from modules.constructions.builders import check_size
from modules.core import linalg
from modules.core.algebra import add_terms
from modules.core.errors import DimensionMismatchError, TruncationOverflowError
from modules.core.types import ModuleAction, StructureTensor, Vector


def minimal_faithful_action(n: int) -> ModuleAction:
    """
    Action of n_{n,1} on V = span(e_1..e_n):
    (e_i, x_1) = e_{i-1} for 2 <= i <= n-1 and (e_n, x_j) = e_{n+1-j} for 2 <= j <= n.
    """
    check_size("minimal_faithful_action", n)
    entries = {}
    for i in range(2, n):
        entries[(i, 1)] = ((i - 1, Fraction(1)),)
    for j in range(2, n + 1):
        entries[(n, j)] = ((n + 1 - j, Fraction(1)),)
    return ModuleAction(n, n, entries)


def representation_defects(
    action: ModuleAction, T: StructureTensor
) -> List[Tuple[Tuple[int, int, int], Vector]]:
    """
    Triples (m, a, b) where (e_m, [x_a, x_b]) differs from
    ((e_m, x_a), x_b) - ((e_m, x_b), x_a). Triples that need an undefined
    action entry are skipped.
    """
    if action.algebra_dim != T.dim:
        raise DimensionMismatchError("Action and algebra disagree on the algebra dimension")
    defects = []
    for m in range(1, action.module_dim + 1):
        for a in range(1, T.dim + 1):
            for b in range(1, T.dim + 1):
                try:
                    out: dict = {}
                    for l, c in T.product(a, b):
                        add_terms(out, action.act_basis(m, l), c)
                    for k, c in action.act_basis(m, a):
                        add_terms(out, action.act_basis(k, b), -c)
                    for k, c in action.act_basis(m, b):
                        add_terms(out, action.act_basis(k, a), c)
                except TruncationOverflowError:
                    continue
                if out:
                    defects.append(((m, a, b), Vector.from_terms(action.module_dim, out.items())))
    return defects


def is_representation(action: ModuleAction, T: StructureTensor) -> bool:
    return not representation_defects(action, T)


def is_faithful(action: ModuleAction) -> bool:
    """The operators phi(x_a), flattened, are linearly independent."""
    rows = []
    for a in range(1, action.algebra_dim + 1):
        rows.append(list(action.matrix(a).flatten()))
    return linalg.rank(linalg.fraction_matrix(rows, action.module_dim ** 2)) == action.algebra_dim
