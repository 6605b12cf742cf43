"""JSON file formats for categories, filtrations, and functors.

Category file: top-level fields ``objects`` (list of strings),
``morphisms`` (list of {id, src, tgt}), ``identities`` (object -> id map)
and ``compose`` (list of {g, f, gf}), plus an optional ``filtration``
(object -> level map). A functor file has ``source_file``,
``target_file``, ``object_map`` and ``morphism_map``; the two paths are
resolved relative to the functor file. Unknown fields are rejected so a
typo cannot silently drop an axiom; the composition table must list every
composable pair exactly once. Serialization is deterministic: identical
categories produce byte-identical files.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import IO, Any

from .category import CatFunctor, FiniteCategory, validate_category, validate_functor
from .errors import InputError
from .filtered import Filtration, validate_filtration


class FormatError(InputError):
    """The file does not match the documented grammar."""


_CATEGORY_FIELDS = {"objects", "morphisms", "identities", "compose", "filtration"}
_FUNCTOR_FIELDS = {"source_file", "target_file", "object_map", "morphism_map"}


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise FormatError(message)


def _check_fields(data: dict, allowed: set[str], required: set[str], kind: str) -> None:
    _require(isinstance(data, dict), f"{kind} file must be a JSON object")
    unknown = set(data) - allowed
    _require(not unknown, f"{kind} file has unknown fields: {', '.join(sorted(unknown))}")
    missing = required - set(data)
    _require(not missing, f"{kind} file is missing fields: {', '.join(sorted(missing))}")


def category_to_dict(cat: FiniteCategory, filtration: Filtration | None = None) -> dict:
    compose = sorted(
        cat.composition_table().items(),
        key=lambda item: (cat.morphism_index(item[0][0]), cat.morphism_index(item[0][1])),
    )
    data: dict[str, Any] = {
        "objects": list(cat.objects),
        "morphisms": [{"id": m.name, "src": m.src, "tgt": m.tgt} for m in cat.morphisms],
        "identities": {x: cat.identity[x] for x in cat.objects},
        "compose": [{"g": g, "f": f, "gf": gf} for (g, f), gf in compose],
    }
    if filtration is not None:
        data["filtration"] = {x: filtration.levels[x] for x in cat.objects}
    return data


def parse_category_dict(data: dict) -> tuple[FiniteCategory, Filtration | None]:
    """Validate a parsed category file; returns the category and, when the
    file carries one, its filtration."""
    _check_fields(data, _CATEGORY_FIELDS, _CATEGORY_FIELDS - {"filtration"}, "category")
    _require(isinstance(data["objects"], list), "objects must be a list")
    _require(all(isinstance(x, str) for x in data["objects"]), "objects must be strings")
    _require(isinstance(data["morphisms"], list), "morphisms must be a list")
    morphisms = []
    for entry in data["morphisms"]:
        _require(isinstance(entry, dict), "each morphism must be an object")
        _require(set(entry) == {"id", "src", "tgt"}, "morphism entries need exactly the fields id, src, tgt")
        _require(all(isinstance(entry[k], str) for k in ("id", "src", "tgt")), "morphism fields must be strings")
        morphisms.append((entry["id"], entry["src"], entry["tgt"]))
    _require(isinstance(data["identities"], dict), "identities must be a map")
    _require(
        all(isinstance(k, str) and isinstance(v, str) for k, v in data["identities"].items()),
        "identities must map strings to strings",
    )
    _require(isinstance(data["compose"], list), "compose must be a list")
    table: dict[tuple[str, str], str] = {}
    for entry in data["compose"]:
        _require(isinstance(entry, dict), "each compose entry must be an object")
        _require(set(entry) == {"g", "f", "gf"}, "compose entries need exactly the fields g, f, gf")
        _require(all(isinstance(entry[k], str) for k in ("g", "f", "gf")), "compose fields must be strings")
        key = (entry["g"], entry["f"])
        _require(key not in table, f"compose lists the pair (g={key[0]!r}, f={key[1]!r}) twice")
        table[key] = entry["gf"]

    cat = validate_category(data["objects"], morphisms, data["identities"], table)
    filtration = None
    if "filtration" in data:
        levels = data["filtration"]
        _require(isinstance(levels, dict), "filtration must be a map")
        _require(
            all(isinstance(k, str) and isinstance(v, int) and not isinstance(v, bool) for k, v in levels.items()),
            "filtration must map object ids to natural numbers",
        )
        filtration = validate_filtration(cat, dict(levels))
    return cat, filtration


def functor_to_dict(functor: CatFunctor, source_file: str, target_file: str) -> dict:
    return {
        "source_file": source_file,
        "target_file": target_file,
        "object_map": {x: functor.object_map[x] for x in functor.source.objects},
        "morphism_map": {m.name: functor.morphism_map[m.name] for m in functor.source.morphisms},
    }


def parse_functor_dict(data: dict, source: FiniteCategory, target: FiniteCategory) -> CatFunctor:
    _check_fields(data, _FUNCTOR_FIELDS, _FUNCTOR_FIELDS, "functor")
    for key in ("object_map", "morphism_map"):
        _require(isinstance(data[key], dict), f"{key} must be a map")
        _require(
            all(isinstance(k, str) and isinstance(v, str) for k, v in data[key].items()),
            f"{key} must map strings to strings",
        )
    return validate_functor(source, target, data["object_map"], data["morphism_map"])


def _load_json(source: str | Path | IO[str]) -> dict:
    try:
        if source == "-":
            return json.load(sys.stdin)
        if isinstance(source, (str, Path)):
            with open(source, "r", encoding="utf-8") as fh:
                return json.load(fh)
        return json.load(source)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from None
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc}") from None


def _dump_json(data: dict, dest: str | Path | IO[str] | None) -> str:
    text = json.dumps(data, indent=2) + "\n"
    if dest is None:
        return text
    if isinstance(dest, (str, Path)):
        with open(dest, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        dest.write(text)
    return text


def read_category(source: str | Path | IO[str]) -> tuple[FiniteCategory, Filtration | None]:
    """Load and validate a category file ('-' reads standard input)."""
    return parse_category_dict(_load_json(source))


def write_category(
    cat: FiniteCategory,
    dest: str | Path | IO[str] | None = None,
    filtration: Filtration | None = None,
) -> str:
    """Serialize a category (optionally filtered); returns the text."""
    return _dump_json(category_to_dict(cat, filtration), dest)


def read_functor(
    source: str | Path,
    total: FiniteCategory | None = None,
    base: FiniteCategory | None = None,
) -> CatFunctor:
    """Load a functor file, pulling in its endpoint categories if not given.

    ``source_file``/``target_file`` inside the functor file are resolved
    relative to the functor file's directory.
    """
    data = _load_json(source)
    _check_fields(data, _FUNCTOR_FIELDS, _FUNCTOR_FIELDS, "functor")
    if total is None or base is None:
        root = Path(source).parent if isinstance(source, (str, Path)) and source != "-" else Path(".")
        for key in ("source_file", "target_file"):
            _require(isinstance(data[key], str), f"{key} must be a path string")
        if total is None:
            total, _ = read_category(root / data["source_file"])
        if base is None:
            base, _ = read_category(root / data["target_file"])
    return parse_functor_dict(data, total, base)


def write_functor(
    functor: CatFunctor,
    source_file: str,
    target_file: str,
    dest: str | Path | IO[str] | None = None,
) -> str:
    return _dump_json(functor_to_dict(functor, source_file, target_file), dest)
