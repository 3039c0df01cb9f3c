"""Reading, writing and hashing of complexes.

Two input grammars:

* JSON: ``{"name": str, "dim": int, "vertices": [{"id": str, "coords":
  ["p/q", ...] | null}], "facets": [[vertex-ids]]}`` with rationals as
  fraction strings;
* plain text: one facet per line, whitespace-separated vertex labels,
  no coordinates.  Lines starting with ``#`` are comments.

``parse_complex`` also resolves ``builtin:<name>`` pseudo-paths against the
bundled library so the CLI can be exercised without data files.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path

from . import library
from .simplicial import Complex, SimplicialError, _lkey


class ParseError(ValueError):
    """Malformed input file; the message names the offending element."""


def _parse_rational(text, where) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational literal {text!r} at {where}") from None


def complex_from_dict(data: dict, source="<dict>") -> Complex:
    if not isinstance(data, dict):
        raise ParseError(f"{source}: top level must be an object")
    try:
        vertices_spec = data["vertices"]
        facets_spec = data["facets"]
    except KeyError as exc:
        raise ParseError(f"{source}: missing field {exc}") from None
    ids = []
    coords = {}
    has_coords = None
    for item in vertices_spec:
        if isinstance(item, dict):
            vid = item.get("id")
            cs = item.get("coords")
        else:
            vid, cs = item, None
        if vid is None:
            raise ParseError(f"{source}: vertex entry without an id")
        if vid in set(ids):
            raise ParseError(f"{source}: duplicate vertex id {vid!r}")
        ids.append(vid)
        if cs is None:
            if has_coords is True:
                raise ParseError(
                    f"{source}: vertex {vid!r} missing coordinates while "
                    "others have them")
            has_coords = False
        else:
            if has_coords is False:
                raise ParseError(
                    f"{source}: vertex {vid!r} has coordinates while "
                    "others do not")
            has_coords = True
            coords[vid] = tuple(
                _parse_rational(x, f"vertex {vid!r}") for x in cs)
    if has_coords:
        lengths = {len(c) for c in coords.values()}
        if len(lengths) > 1:
            raise ParseError(f"{source}: ragged coordinates")
    facets = []
    seen = set()
    known = set(ids)
    for facet in facets_spec:
        fs = frozenset(facet)
        if len(fs) != len(list(facet)):
            raise ParseError(
                f"{source}: facet {sorted(facet, key=_lkey)} repeats a "
                "vertex")
        for v in fs:
            if v not in known:
                raise ParseError(
                    f"{source}: facet references unknown vertex {v!r}")
        if fs in seen:
            raise ParseError(
                f"{source}: duplicate facet {sorted(fs, key=_lkey)}")
        seen.add(fs)
        facets.append(fs)
    try:
        cx = Complex(facets, vertices=tuple(ids),
                     coords=coords if has_coords else None,
                     name=str(data.get("name", "")))
    except SimplicialError as exc:
        raise ParseError(f"{source}: {exc}") from None
    if "dim" in data and data["dim"] != cx.dim:
        raise ParseError(
            f"{source}: declared dim {data['dim']} but facets give "
            f"{cx.dim}")
    return cx


def _parse_text(text: str, source: str) -> Complex:
    facets = []
    seen = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        labels = line.split()
        fs = frozenset(labels)
        if len(fs) != len(labels):
            raise ParseError(
                f"{source}:{lineno}: facet repeats a vertex")
        if fs in seen:
            raise ParseError(f"{source}:{lineno}: duplicate facet")
        seen.add(fs)
        facets.append(fs)
    if not facets:
        raise ParseError(f"{source}: no facets found")
    try:
        return Complex(facets, name=Path(source).stem)
    except SimplicialError as exc:
        raise ParseError(f"{source}: {exc}") from None


def parse_complex(path) -> Complex:
    """Parse a complex from a JSON or facet-list file.

    ``builtin:<name>`` resolves against the bundled library instead of the
    filesystem.
    """
    path = str(path)
    if path.startswith("builtin:"):
        try:
            return library.builtin(path[len("builtin:"):])
        except KeyError as exc:
            raise ParseError(str(exc.args[0])) from None
    raw = Path(path).read_text(encoding="utf-8")
    stripped = raw.lstrip()
    if stripped.startswith("{"):
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}:{exc.lineno}: {exc.msg}") from None
        return complex_from_dict(data, source=path)
    return _parse_text(raw, path)


def complex_to_dict(cx: Complex) -> dict:
    """Canonical JSON-ready form; serializes rationals as fraction strings."""
    vertices = []
    for v in cx.vertices:
        entry = {"id": v if isinstance(v, str) else str(v)}
        entry["coords"] = ([str(x) for x in cx.coords[v]]
                           if cx.coords is not None else None)
        vertices.append(entry)
    label = {v: e["id"] for v, e in zip(cx.vertices, vertices)}
    facets = sorted(
        [sorted(label[v] for v in F) for F in cx.facets],
        key=lambda f: (len(f), f))
    return {
        "name": cx.name,
        "dim": cx.dim,
        "vertices": vertices,
        "facets": facets,
    }


def dumps_complex(cx: Complex) -> str:
    return json.dumps(complex_to_dict(cx), indent=2, sort_keys=True) + "\n"


def write_complex(cx: Complex, path) -> None:
    Path(path).write_text(dumps_complex(cx), encoding="utf-8")


def input_sha(cx: Complex) -> str:
    """SHA-256 of the canonical serialization; ties certificates to inputs."""
    canonical = json.dumps(complex_to_dict(cx), sort_keys=True,
                           separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
