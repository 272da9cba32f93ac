"""Text and JSON formats for hypergraphs with boundary.

Text format, one hypergraph per file::

    # comments run to end of line
    boundary: a b
    interior: u
    edge e1: a u
    edge e2: u b

The JSON mirror is ``{"boundary": [...], "interior": [...], "edges": {id: [...]}}``.
"""
from __future__ import annotations

import json
import re
from pathlib import Path

from .errors import ParseError
from .hypergraph import HypergraphWithBoundary

_ID = re.compile(r"^[A-Za-z0-9_.+\-]+$")


def _ids(tokens: list[str], lineno: int, source: str | None) -> list[str]:
    for t in tokens:
        if not _ID.match(t):
            raise ParseError(f"bad identifier {t!r}", lineno, source)
    return tokens


def parse_hypergraph_text(text: str, source: str | None = None) -> HypergraphWithBoundary:
    boundary: list[str] | None = None
    interior: list[str] = []
    edges: dict[str, list[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        if not sep:
            raise ParseError(f"expected '<keyword>: ...', got {raw.strip()!r}", lineno, source)
        words = head.split()
        body = rest.split()
        if words == ["boundary"]:
            if boundary is not None:
                raise ParseError("repeated 'boundary:' line", lineno, source)
            boundary = _ids(body, lineno, source)
        elif words == ["interior"]:
            interior.extend(_ids(body, lineno, source))
        elif len(words) == 2 and words[0] == "edge":
            eid = _ids([words[1]], lineno, source)[0]
            if eid in edges:
                raise ParseError(f"duplicate edge id {eid!r}", lineno, source)
            if not body:
                raise ParseError(f"edge {eid!r} lists no vertices", lineno, source)
            edges[eid] = _ids(body, lineno, source)
        else:
            raise ParseError(f"unknown line kind {head.strip()!r}", lineno, source)
    if boundary is None:
        raise ParseError("missing 'boundary:' line", None, source)
    return HypergraphWithBoundary.from_edges(boundary, interior, edges)


def parse_hypergraph_json(text: str, source: str | None = None) -> HypergraphWithBoundary:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, source) from None
    if not isinstance(data, dict) or "boundary" not in data or "edges" not in data:
        raise ParseError("JSON hypergraph needs 'boundary' and 'edges'", None, source)
    edges = data["edges"]
    if not isinstance(edges, dict):
        raise ParseError("'edges' must map edge ids to vertex lists", None, source)
    return HypergraphWithBoundary.from_edges(
        [str(v) for v in data["boundary"]],
        [str(v) for v in data.get("interior", [])],
        {str(e): [str(v) for v in vs] for e, vs in edges.items()},
    )


def load_hypergraph(path: str | Path) -> HypergraphWithBoundary:
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json" or text.lstrip().startswith("{"):
        return parse_hypergraph_json(text, str(path))
    return parse_hypergraph_text(text, str(path))


def to_text(h: HypergraphWithBoundary) -> str:
    lines = [f"boundary: {' '.join(h.boundary)}"]
    if h.interior:
        lines.append(f"interior: {' '.join(h.interior)}")
    for e, vs in h.edge_map.items():
        lines.append(f"edge {e}: {' '.join(vs)}")
    return "\n".join(lines) + "\n"


def to_json_dict(h: HypergraphWithBoundary) -> dict:
    return {
        "boundary": list(h.boundary),
        "interior": list(h.interior),
        "edges": {e: list(vs) for e, vs in h.edge_map.items()},
    }
