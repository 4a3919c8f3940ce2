"""YAML documents for ordered semigroups and homomorphisms.

Semigroup file::

    name: b2-plus
    elements: [a, b, ab, ba, "0"]
    table:            # row x, column y holds x*y; names (strings) or indices (ints)
      - [ "0", ab, a, "0", "0" ]
      ...
    order:            # optional list of [x, y] meaning x <= y; closed on load
      - ["0", a]

Homomorphism file::

    semigroup: b2-plus.semigroup.yaml   # path relative to this file, or an inline mapping
    alphabet: [a, b]
    map: {a: a, b: b}
"""
from __future__ import annotations

from pathlib import Path
from typing import Any

import yaml

from .algebra import OrderedSemigroup, validate_order, validate_semigroup
from .words import Homomorphism, make_homomorphism
from .zoo import ZooEntry


class FormatError(ValueError):
    """The document is not well formed (as opposed to failing algebraic validation)."""


def _load_yaml(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return yaml.safe_load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    except yaml.YAMLError as exc:
        raise FormatError(f"{path}: not valid YAML ({exc})") from None


def _resolve(value, names: list[str], where: str) -> int:
    if isinstance(value, bool):
        raise FormatError(f"{where}: {value!r} is not an element")
    if isinstance(value, int):
        if not 0 <= value < len(names):
            raise FormatError(f"{where}: index {value} out of range")
        return value
    if isinstance(value, (str, float)):
        key = str(value)
        if key in names:
            return names.index(key)
    raise FormatError(f"{where}: unknown element {value!r}")


def semigroup_from_dict(doc: Any) -> tuple[str, OrderedSemigroup]:
    """Parse and validate; raises FormatError or an algebra error."""
    if not isinstance(doc, dict):
        raise FormatError("a semigroup document must be a mapping")
    elements = doc.get("elements")
    if not isinstance(elements, list) or not elements:
        raise FormatError("'elements' must be a non-empty list")
    names = [str(e) for e in elements]
    if len(set(names)) != len(names):
        raise FormatError("'elements' contains duplicates")
    table = doc.get("table")
    if not isinstance(table, list) or len(table) != len(names):
        raise FormatError(f"'table' must be a list of {len(names)} rows")
    rows = []
    for i, row in enumerate(table):
        if not isinstance(row, list) or len(row) != len(names):
            raise FormatError(f"table row {i} must have {len(names)} entries")
        rows.append([_resolve(v, names, f"table[{names[i]}][{names[j]}]") for j, v in enumerate(row)])
    pairs = []
    for k, pair in enumerate(doc.get("order") or []):
        if not isinstance(pair, list) or len(pair) != 2:
            raise FormatError(f"order entry {k} must be a pair [x, y]")
        pairs.append((_resolve(pair[0], names, f"order[{k}]"), _resolve(pair[1], names, f"order[{k}]")))
    S = validate_semigroup(names, rows)
    name = str(doc.get("name", "unnamed"))
    return name, OrderedSemigroup(S, validate_order(S, pairs))


def semigroup_to_dict(name: str, S: OrderedSemigroup) -> dict:
    e = list(S.elements)
    return {
        "name": name,
        "elements": e,
        "table": [[e[x] for x in row] for row in S.table],
        "order": [[e[x], e[y]] for x, y in S.order.covers()],
    }


def load_semigroup(path: str | Path) -> tuple[str, OrderedSemigroup]:
    return semigroup_from_dict(_load_yaml(path))


def load_homomorphism(path: str | Path) -> Homomorphism:
    doc = _load_yaml(path)
    if not isinstance(doc, dict):
        raise FormatError("a homomorphism document must be a mapping")
    ref = doc.get("semigroup")
    if isinstance(ref, dict):
        _, S = semigroup_from_dict(ref)
    elif isinstance(ref, str):
        _, S = load_semigroup(Path(path).parent / ref)
    else:
        raise FormatError("'semigroup' must be a path or an inline mapping")
    alphabet = doc.get("alphabet")
    mapping = doc.get("map")
    if not isinstance(alphabet, list) or not alphabet:
        raise FormatError("'alphabet' must be a non-empty list")
    if not isinstance(mapping, dict):
        raise FormatError("'map' must be a mapping from letters to elements")
    letters = [str(a) for a in alphabet]
    images = {str(k): (v if isinstance(v, int) and not isinstance(v, bool) else str(v))
              for k, v in mapping.items()}
    return make_homomorphism(S, letters, images)


def homomorphism_to_dict(hom: Homomorphism, semigroup_ref: str | dict) -> dict:
    return {
        "semigroup": semigroup_ref,
        "alphabet": list(hom.alphabet),
        "map": {a: hom.target.elements[hom.letter_map[a]] for a in hom.alphabet},
    }


def dump(doc: dict) -> str:
    return yaml.safe_dump(doc, sort_keys=False, allow_unicode=True, default_flow_style=None)


def write_zoo_entry(entry: ZooEntry, directory: str | Path) -> tuple[Path, Path]:
    """Write ``<name>.semigroup.yaml`` and ``<name>.hom.yaml`` into ``directory``."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    sg_path = out / f"{entry.name}.semigroup.yaml"
    hom_path = out / f"{entry.name}.hom.yaml"
    sg_path.write_text(dump(semigroup_to_dict(entry.name, entry.semigroup)), encoding="utf-8")
    hom_path.write_text(dump(homomorphism_to_dict(entry.hom(), sg_path.name)), encoding="utf-8")
    return sg_path, hom_path
