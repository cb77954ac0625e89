"""JSON definition files for groups, modules and short exact sequences.

A group is a corpus name, a path to a JSON file, or an inline object::

    {"name": "S3", "kind": "table", "table": [[...], ...]}
    {"name": "S3", "kind": "perm", "degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]}

Element numbers in action tables and maps refer to the rows of the input
table (or, for permutation groups, to breadth-first discovery order).
Reports use the internal numbering, where the identity is moved to 0 and the
other elements keep their relative order.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Optional, Union

from .config import limits
from .corpus import get_group, get_module, index_two_subgroups, inversion_module
from .errors import InputError, SizeLimitExceeded
from .gmodule import GModule, conjugation_module, make_module, make_module_hom, trivial_module
from .group import FiniteGroup, make_group_from_permutations, make_group_from_table, make_hom

PathLike = Union[str, Path]


def load_json(path: PathLike) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc})") from exc
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc


def _resolve(defn: Any, base: Optional[Path]):
    """A string is a file path when such a file exists, otherwise a name."""
    if isinstance(defn, str):
        p = Path(defn)
        if base is not None and not p.is_absolute():
            p = base / p
        if p.is_file():
            return load_json(p), p.parent
    return defn, base


def to_internal(G: FiniteGroup, x: Any) -> int:
    """Input label of an element to its internal index."""
    if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < G.order:
        raise InputError(f"{x!r} is not an element index of a group of order {G.order}")
    order = getattr(G, "input_order", None)
    return order.index(x) if order is not None else x


def group_from_definition(defn: Any, base: Optional[Path] = None) -> FiniteGroup:
    defn, base = _resolve(defn, base)
    if isinstance(defn, str):
        return get_group(defn)
    if not isinstance(defn, dict):
        raise InputError("a group must be a name, a file path or an object")
    kind = defn.get("kind")
    has_table = "table" in defn
    has_perm = "degree" in defn or "generators" in defn
    if has_table == has_perm:
        raise InputError("give exactly one of 'table' or 'degree'/'generators'")
    if kind is not None and kind != ("table" if has_table else "perm"):
        raise InputError(f"kind {kind!r} does not match the fields given")
    name = defn.get("name")
    cap = limits().max_order
    if has_table:
        table = defn["table"]
        if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
            raise InputError("'table' must be a list of lists")
        if len(table) > cap:
            raise SizeLimitExceeded(f"table of order {len(table)} exceeds the cap {cap}")
        return make_group_from_table(table, name)
    if "degree" not in defn or "generators" not in defn:
        raise InputError("permutation groups need both 'degree' and 'generators'")
    return make_group_from_permutations(defn["degree"], defn["generators"], name, cap)


def _action_from_definition(G: FiniteGroup, A: FiniteGroup, action: Any) -> GModule:
    if action == "trivial":
        return trivial_module(G, A)
    if action == "conjugation":
        if G != A:
            raise InputError("conjugation needs the coefficients to be the acting group")
        return conjugation_module(G)
    if action == "inversion":
        subs = index_two_subgroups(G)
        if not subs or not A.is_abelian:
            raise InputError("inversion needs an index-2 subgroup and abelian coefficients")
        return inversion_module(G, A, subs[0])
    if not isinstance(action, list) or len(action) != G.order:
        raise InputError(f"action must have one row per element of G ({G.order})")
    rows = [None] * G.order
    for g_in, row in enumerate(action):
        if not isinstance(row, list) or len(row) != A.order:
            raise InputError(f"action row {g_in} must list {A.order} elements")
        rows[to_internal(G, g_in)] = [None] * A.order
        for a_in, v in enumerate(row):
            rows[to_internal(G, g_in)][to_internal(A, a_in)] = to_internal(A, v)
    return make_module(G, A, rows)


def module_from_definition(defn: Any, base: Optional[Path] = None) -> GModule:
    defn, base = _resolve(defn, base)
    if isinstance(defn, str):
        return get_module(defn)
    if not isinstance(defn, dict) or "group" not in defn or "coefficients" not in defn:
        raise InputError("a module needs 'group', 'coefficients' and 'action'")
    G = group_from_definition(defn["group"], base)
    A = group_from_definition(defn["coefficients"], base)
    return _action_from_definition(G, A, defn.get("action", "trivial"))


def _map_from_definition(M: GModule, N: GModule, values: Any):
    if not isinstance(values, list) or len(values) != M.A.order:
        raise InputError(f"a map must list {M.A.order} images")
    image = [0] * M.A.order
    for a_in, v in enumerate(values):
        image[to_internal(M.A, a_in)] = to_internal(N.A, v)
    return make_module_hom(M, N, make_hom(M.A, N.A, image))


def sequence_from_definition(defn: Any, base: Optional[Path] = None):
    from .sequences import make_ses

    defn, base = _resolve(defn, base)
    if not isinstance(defn, dict):
        raise InputError("a sequence must be an object")
    missing = [k for k in ("module_A", "module_B", "module_C", "iota", "pi") if k not in defn]
    if missing:
        raise InputError(f"sequence is missing {', '.join(missing)}")
    MA = module_from_definition(defn["module_A"], base)
    MB = module_from_definition(defn["module_B"], base)
    MC = module_from_definition(defn["module_C"], base)
    iota = _map_from_definition(MA, MB, defn["iota"])
    pi = _map_from_definition(MB, MC, defn["pi"])
    return make_ses(iota, pi)


def detect_kind(defn: Any) -> str:
    if isinstance(defn, dict):
        if "module_A" in defn:
            return "sequence"
        if "coefficients" in defn:
            return "module"
        return "group"
    raise InputError("cannot tell what kind of definition this is")


# -- writing --------------------------------------------------------------------


def group_to_dict(G: FiniteGroup) -> dict:
    d = {"kind": "table", "table": [list(r) for r in G.mul]}
    if G.label:
        d = {"name": G.label, **d}
    return d


def module_to_dict(M: GModule) -> dict:
    return {
        "group": group_to_dict(M.G),
        "coefficients": group_to_dict(M.A),
        "action": [list(r) for r in M.act],
    }


def sequence_to_dict(S) -> dict:
    return {
        "module_A": module_to_dict(S.A),
        "module_B": module_to_dict(S.B),
        "module_C": module_to_dict(S.C),
        "iota": list(S.iota.hom.image),
        "pi": list(S.pi.hom.image),
    }


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def parse_elements(text: str) -> list[int]:
    """``"0,2"`` or ``"0 2"`` to a list of element indices."""
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError as exc:
        raise InputError(f"cannot read element list {text!r}") from exc

