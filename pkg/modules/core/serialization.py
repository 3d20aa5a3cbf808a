# modules/core/serialization.py

"""
JSON interchange.

StructureTensor::

    {"dim": n, "basis": ["x1", ...], "brackets": {"i,j": [[k, "p/q"], ...]}}

ModuleAction::

    {"module_dim": m, "algebra_dim": n, "module_basis": [...],
     "algebra_basis": [...], "action": {"i,a": [[k, "p/q"], ...]},
     "undefined": [[i, a], ...]}

Indices are 1-based, scalars are exact fraction strings, and pairs are
emitted in numeric order so that emit(parse(emit(T))) == emit(T) byte for byte.
"""

import json
import os
from typing import Any, Dict

from modules.core.errors import ParameterError, SchemaError
from modules.core.scalars import format_scalar, parse_scalar
from modules.core.types import ModuleAction, StructureTensor
from modules.utils.logger import CustomLogger

logger = CustomLogger("serialization")


def _terms_to_json(terms):
    return [[k, format_scalar(c)] for k, c in terms]


def _terms_from_json(raw, where: str):
    if not isinstance(raw, list):
        raise SchemaError(f"{where}: expected a list of [index, \"p/q\"] pairs")
    terms = []
    for item in raw:
        if not (isinstance(item, list) and len(item) == 2 and isinstance(item[0], int)
                and isinstance(item[1], str)):
            raise SchemaError(f"{where}: malformed term {item!r}")
        try:
            terms.append((item[0], parse_scalar(item[1])))
        except ParameterError as e:
            raise SchemaError(f"{where}: {e}")
    return terms


def _pair_key(key: str, where: str):
    try:
        left, right = key.split(",")
        return int(left), int(right)
    except ValueError:
        raise SchemaError(f"{where}: key {key!r} is not of the form \"i,j\"")


def tensor_to_dict(T: StructureTensor) -> Dict[str, Any]:
    return {
        "dim": T.dim,
        "basis": list(T.basis_labels),
        "brackets": {f"{i},{j}": _terms_to_json(terms) for (i, j), terms in T.entries.items()},
    }


def tensor_from_dict(data: Dict[str, Any]) -> StructureTensor:
    """
    Parse the interchange form of a StructureTensor.

    Raises:
        SchemaError: on missing keys, wrong types or malformed entries
    """
    if not isinstance(data, dict) or not {"dim", "basis", "brackets"} <= set(data):
        raise SchemaError("Tensor document needs 'dim', 'basis' and 'brackets'")
    dim, basis, brackets = data["dim"], data["basis"], data["brackets"]
    if not isinstance(dim, int) or not isinstance(basis, list) or not isinstance(brackets, dict):
        raise SchemaError("Tensor document has fields of the wrong type")
    entries = {}
    for key, raw in brackets.items():
        entries[_pair_key(key, "brackets")] = _terms_from_json(raw, f"brackets[{key}]")
    return StructureTensor.build(dim, entries, [str(b) for b in basis])


def action_to_dict(action: ModuleAction) -> Dict[str, Any]:
    return {
        "module_dim": action.module_dim,
        "algebra_dim": action.algebra_dim,
        "module_basis": list(action.module_labels),
        "algebra_basis": list(action.algebra_labels),
        "action": {f"{m},{a}": _terms_to_json(terms) for (m, a), terms in action.entries.items()},
        "undefined": [list(pair) for pair in sorted(action.undefined)],
    }


def action_from_dict(data: Dict[str, Any]) -> ModuleAction:
    """
    Parse the interchange form of a ModuleAction.

    Raises:
        SchemaError: on missing keys, wrong types or malformed entries
    """
    required = {"module_dim", "algebra_dim", "action"}
    if not isinstance(data, dict) or not required <= set(data):
        raise SchemaError("Action document needs 'module_dim', 'algebra_dim' and 'action'")
    dims_ok = isinstance(data["module_dim"], int) and isinstance(data["algebra_dim"], int)
    undefined_raw = data.get("undefined", [])
    if not dims_ok or not isinstance(data["action"], dict) or not isinstance(undefined_raw, list):
        raise SchemaError("Action document has fields of the wrong type")
    entries = {}
    for key, raw in data["action"].items():
        entries[_pair_key(key, "action")] = tuple(_terms_from_json(raw, f"action[{key}]"))
    for pair in undefined_raw:
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(x, int) for x in pair)):
            raise SchemaError(f"undefined entry {pair!r} is not a pair of indices")
    undefined = frozenset(tuple(pair) for pair in undefined_raw)
    return ModuleAction(
        data["module_dim"],
        data["algebra_dim"],
        entries,
        undefined,
        tuple(data.get("module_basis", ())),
        tuple(data.get("algebra_basis", ())),
    )


def dumps(document: Dict[str, Any], pretty: bool = False) -> str:
    if pretty:
        return json.dumps(document, indent=2, ensure_ascii=False)
    return json.dumps(document, separators=(",", ":"), ensure_ascii=False)


def dumps_tensor(T: StructureTensor, pretty: bool = False) -> str:
    return dumps(tensor_to_dict(T), pretty)


def loads_tensor(text: str) -> StructureTensor:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"Invalid JSON: {e}")
    return tensor_from_dict(data)


def save_tensor(T: StructureTensor, filepath: str, pretty: bool = True) -> str:
    """Write a tensor document, creating parent directories. Returns the path."""
    directory = os.path.dirname(filepath)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(filepath, "w", encoding="utf-8") as f:
        f.write(dumps_tensor(T, pretty))
        f.write("\n")
    logger.info(f"Saved {T.dim}-dimensional tensor to {filepath}")
    return filepath


def load_tensor(filepath: str) -> StructureTensor:
    if not os.path.exists(filepath):
        logger.error(f"Tensor file not found: {filepath}")
        raise FileNotFoundError(f"Missing tensor file at {filepath}")
    with open(filepath, "r", encoding="utf-8") as f:
        return loads_tensor(f.read())
