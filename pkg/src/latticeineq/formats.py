"""Line-oriented text formats for lattices, weights and selections.

Lattice file::

    lattice
    elements: e1 e2 e3
    cover: e1 e2
    cover: e1 e3

Weight file, one ``element value`` line per element, values ``p`` or
``p/q``.  In both formats blank lines and lines starting with ``#`` are
ignored.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .errors import FormatError, LatticeIneqError
from .inequalities import WeightFunction, selection
from .lattice import Lattice, build_lattice
from .polynomial import QPolynomial, format_rational, parse_rational
from .reduction import SliceResult
from .verdict import Verdict

__all__ = [
    "parse_lattice",
    "format_lattice",
    "load_lattice",
    "parse_weights",
    "format_weights",
    "load_weights",
    "parse_selection",
    "split_elements",
    "to_jsonable",
    "dump_json",
]


def _lines(text):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield number, line


def parse_lattice(text: str, path=None) -> Lattice:
    elements = None
    covers = []
    header = False
    for number, line in _lines(text):
        if not header:
            if line != "lattice":
                raise FormatError(f"expected header 'lattice', got {line!r}", path, number)
            header = True
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in ("elements", "cover"):
            raise FormatError(f"expected 'elements:' or 'cover:', got {line!r}", path, number)
        fields = rest.split()
        if key == "elements":
            if elements is not None:
                raise FormatError("second 'elements:' line", path, number)
            if not fields:
                raise FormatError("'elements:' line lists no elements", path, number)
            elements = fields
            known = set(fields)
            if len(known) != len(fields):
                raise FormatError("duplicate element ids", path, number)
        else:
            if elements is None:
                raise FormatError("'cover:' before 'elements:'", path, number)
            if len(fields) != 2:
                raise FormatError(f"cover needs two elements, got {len(fields)}", path, number)
            for e in fields:
                if e not in known:
                    raise FormatError(f"unknown element {e!r}", path, number)
            covers.append(tuple(fields))
    if not header:
        raise FormatError("empty lattice file", path)
    if elements is None:
        raise FormatError("missing 'elements:' line", path)
    try:
        return build_lattice(elements, covers)
    except LatticeIneqError as exc:
        raise FormatError(str(exc), path) from None


def format_lattice(L: Lattice) -> str:
    lines = ["lattice", "elements: " + " ".join(L.elements)]
    lines += [f"cover: {lo} {hi}" for lo, hi in L.covers]
    return "\n".join(lines) + "\n"


def _read(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read file: {exc.strerror}", path) from None


def load_lattice(path) -> Lattice:
    return parse_lattice(_read(path), path)


def parse_weights(text: str, L: Lattice, path=None) -> WeightFunction:
    values = {}
    for number, line in _lines(text):
        fields = line.split()
        if len(fields) != 2:
            raise FormatError(f"expected 'element value', got {line!r}", path, number)
        element, literal = fields
        if element not in L:
            raise FormatError(f"unknown element {element!r}", path, number)
        if element in values:
            raise FormatError(f"element {element!r} given twice", path, number)
        try:
            value = parse_rational(literal)
        except ValueError as exc:
            raise FormatError(str(exc), path, number) from None
        if value < 0:
            raise FormatError(f"negative weight {literal}", path, number)
        values[element] = value
    missing = [x for x in L if x not in values]
    if missing:
        raise FormatError(f"no weight for element {missing[0]!r}", path)
    return WeightFunction(L, values)


def format_weights(w: WeightFunction) -> str:
    return "".join(f"{x} {format_rational(v)}\n" for x, v in w.items())


def load_weights(path, L: Lattice) -> WeightFunction:
    return parse_weights(_read(path), L, path)


def split_elements(text: str) -> list[str]:
    """Split on commas and whitespace, except inside ``{}`` or ``()``.

    Power-set and product element ids contain commas, e.g. ``{1,2}``.
    """
    out, depth, current = [], 0, []
    for ch in text:
        if ch in "{(":
            depth += 1
        elif ch in "})":
            depth -= 1
        if depth == 0 and (ch == "," or ch.isspace()):
            if current:
                out.append("".join(current))
            current = []
        else:
            current.append(ch)
    if current:
        out.append("".join(current))
    return out


def parse_selection(spec: str, L: Lattice) -> tuple[str, ...]:
    """``all``, a comma-separated element list, or ``@file`` listing elements."""
    spec = spec.strip()
    if spec == "all":
        return L.elements
    if spec.startswith("@"):
        path = spec[1:]
        text = _read(path)
        members = [e for _, line in _lines(text) for e in split_elements(line)]
    else:
        path = None
        members = split_elements(spec)
    unknown = [e for e in members if e not in L]
    if unknown:
        raise FormatError(f"selection names unknown element {unknown[0]!r}", path)
    return selection(L, members)


def to_jsonable(obj):
    """Convert verdict payloads to JSON-friendly values; rationals as ``p/q``."""
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, QPolynomial):
        return obj.serialize()
    if isinstance(obj, Verdict):
        return {
            "holds": obj.holds,
            "condition": obj.condition,
            "witness": to_jsonable(obj.witness),
            "lhs": to_jsonable(obj.lhs),
            "rhs": to_jsonable(obj.rhs),
            "details": to_jsonable(obj.details),
        }
    if isinstance(obj, SliceResult):
        return {"F": obj.F, "G": obj.G, "skipped": obj.skipped,
                "lhs": to_jsonable(obj.lhs), "rhs": to_jsonable(obj.rhs)}
    if isinstance(obj, WeightFunction):
        return {x: format_rational(v) for x, v in obj.items()}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(to_jsonable(v) for v in obj)
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dump_json(data, path) -> None:
    text = json.dumps(to_jsonable(data), indent=2, ensure_ascii=False, sort_keys=True)
    Path(path).write_text(text + "\n", encoding="utf-8")

