# modules/constructions/builders.py

from typing import Dict, List, Sequence, Tuple

from modules.core.errors import ParameterError
from modules.core.types import ModuleAction, StructureTensor
from modules.utils.logger import CustomLogger

logger = CustomLogger("constructions")


def check_size(name: str, n: int, minimum: int = 3) -> None:
    if not isinstance(n, int) or n < minimum:
        logger.error(f"{name}: n must be an integer >= {minimum}, got {n!r}")
        raise ParameterError(f"{name} needs n >= {minimum}, got {n!r}")


def make_n_n1(n: int) -> StructureTensor:
    """
    The model filiform Lie algebra n_{n,1}:
    [x_i, x_1] = -[x_1, x_i] = x_{i+1} for 2 <= i <= n-1.
    """
    check_size("make_n_n1", n)
    brackets = {}
    for i in range(2, n):
        brackets[(i, 1)] = [(i + 1, 1)]
        brackets[(1, i)] = [(i + 1, -1)]
    return StructureTensor.build(n, brackets, [f"x{i}" for i in range(1, n + 1)])


def make_Q2n(n: int) -> StructureTensor:
    """
    The even-dimensional filiform Lie algebra Q_{2n} (dimension 2n):
    [x_i, x_1] = -[x_1, x_i] = x_{i+1} for 2 <= i <= 2n-2 and
    [x_i, x_{2n+1-i}] = -[x_{2n+1-i}, x_i] = (-1)^i x_{2n} for 2 <= i <= n.
    """
    check_size("make_Q2n", n)
    dim = 2 * n
    brackets: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}
    for i in range(2, dim - 1):
        brackets[(i, 1)] = [(i + 1, 1)]
        brackets[(1, i)] = [(i + 1, -1)]
    for i in range(2, n + 1):
        sign = 1 if i % 2 == 0 else -1
        brackets[(i, dim + 1 - i)] = [(dim, sign)]
        brackets[(dim + 1 - i, i)] = [(dim, -sign)]
    return StructureTensor.build(dim, brackets, [f"x{i}" for i in range(1, dim + 1)])


def make_heisenberg_h1() -> StructureTensor:
    """Heisenberg algebra on (1, x, d/dx) with the single product [x, d/dx] = 1."""
    return StructureTensor.build(3, {(2, 3): [(1, 1)], (3, 2): [(1, -1)]}, ["one", "xbar", "dbar"])


def direct_sum(parts: Sequence[StructureTensor]) -> StructureTensor:
    """Block-diagonal sum; labels get a ``_<part>`` suffix when there is more than one part."""
    if not parts:
        logger.error("direct_sum: empty list of parts")
        raise ParameterError("direct_sum needs at least one part")
    if len(parts) == 1:
        return parts[0]
    brackets = {}
    labels: List[str] = []
    offset = 0
    for p, part in enumerate(parts, start=1):
        for (i, j), terms in part.entries.items():
            brackets[(i + offset, j + offset)] = [(k + offset, c) for k, c in terms]
        labels.extend(f"{label}_{p}" for label in part.basis_labels)
        offset += part.dim
    return StructureTensor.build(offset, brackets, labels)


def semidirect_tensor(
    T: StructureTensor, action: ModuleAction, extra: Dict[Tuple[int, int], list] = None
) -> StructureTensor:
    """
    The algebra L + V with L's brackets, [e_m, x_a] = (e_m, x_a) and any
    ``extra`` products (1-based indices in the combined basis x_1..x_n,
    e_1..e_m), which are added on top.
    """
    if action.algebra_dim != T.dim:
        raise ParameterError("Action and algebra disagree on the algebra dimension")
    n, m = T.dim, action.module_dim
    brackets: Dict[Tuple[int, int], list] = {key: list(terms) for key, terms in T.entries.items()}
    for (mi, a), terms in action.entries.items():
        brackets.setdefault((n + mi, a), []).extend((n + k, c) for k, c in terms)
    for key, terms in (extra or {}).items():
        brackets.setdefault(key, []).extend(terms)
    labels = list(T.basis_labels) + list(action.module_labels)
    return StructureTensor.build(n + m, brackets, labels)
