"""Graph, weight and report file formats.

Edge list: header ``n m`` then m lines ``u v`` (0-based, u != v).
DIMACS: ``c`` comment lines, ``p edge n m``, then ``e u v`` lines (1-based).
Weights: ``v value`` lines (vertex weights) or ``u v value`` (edge weights).
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
from pathlib import Path

from .graph import Graph, vertex_weights

FORMATS = ("edgelist", "dimacs")


class ParseError(ValueError):
    def __init__(self, line: int | None, message: str):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


def _ints(tokens, lineno):
    try:
        return [int(x) for x in tokens]
    except ValueError:
        raise ParseError(lineno, f"expected integers, got {' '.join(tokens)!r}") from None


def _add_edge(edges, seen, n, u, v, lineno):
    if not (0 <= u < n and 0 <= v < n):
        raise ParseError(lineno, f"vertex out of range in edge ({u}, {v}) for n={n}")
    if u == v:
        raise ParseError(lineno, f"self-loop at {u}")
    key = (min(u, v), max(u, v))
    if key in seen:
        raise ParseError(lineno, f"duplicate edge {key}")
    seen.add(key)
    edges.append(key)


def parse_edgelist(text: str) -> Graph:
    lines = [(i + 1, ln.split()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, toks) for i, toks in lines if toks]
    if not lines:
        raise ParseError(1, "missing header 'n m'")
    lineno, head = lines[0]
    if len(head) != 2:
        raise ParseError(lineno, "header must be 'n m'")
    n, m = _ints(head, lineno)
    if n < 0 or m < 0:
        raise ParseError(lineno, "negative size in header")
    edges, seen = [], set()
    for lineno, toks in lines[1:]:
        if len(toks) != 2:
            raise ParseError(lineno, "edge line must be 'u v'")
        u, v = _ints(toks, lineno)
        _add_edge(edges, seen, n, u, v, lineno)
    if len(edges) != m:
        raise ParseError(lines[-1][0], f"header declares {m} edges, found {len(edges)}")
    return Graph(n, edges)


def parse_dimacs(text: str) -> Graph:
    n = m = None
    edges, seen = [], set()
    last = 0
    for i, raw in enumerate(text.splitlines()):
        lineno = i + 1
        toks = raw.split()
        if not toks or toks[0] == "c":
            continue
        last = lineno
        if toks[0] == "p":
            if n is not None or len(toks) != 4:
                raise ParseError(lineno, "expected a single 'p edge n m' line")
            n, m = _ints(toks[2:], lineno)
        elif toks[0] == "e":
            if n is None:
                raise ParseError(lineno, "edge before problem line")
            if len(toks) != 3:
                raise ParseError(lineno, "edge line must be 'e u v'")
            u, v = _ints(toks[1:], lineno)
            _add_edge(edges, seen, n, u - 1, v - 1, lineno)
        else:
            raise ParseError(lineno, f"unknown line type {toks[0]!r}")
    if n is None:
        raise ParseError(max(last, 1), "missing 'p edge n m' line")
    if len(edges) != m:
        raise ParseError(last, f"problem line declares {m} edges, found {len(edges)}")
    return Graph(n, edges)


def parse_graph_text(text: str, fmt: str = "edgelist") -> Graph:
    if fmt == "edgelist":
        return parse_edgelist(text)
    if fmt == "dimacs":
        return parse_dimacs(text)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def parse_graph(path, fmt: str = "edgelist") -> Graph:
    return parse_graph_text(Path(path).read_text(), fmt)


def format_edgelist(g: Graph) -> str:
    out = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(out) + "\n"


def format_dimacs(g: Graph) -> str:
    out = [f"p edge {g.n} {g.m}"] + [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(out) + "\n"


def write_graph(g: Graph, path, fmt: str = "edgelist") -> None:
    Path(path).write_text(format_edgelist(g) if fmt == "edgelist" else format_dimacs(g))


def parse_weights(text: str, g: Graph):
    """Vertex weight list or edge weight dict, depending on the line shape."""
    vertex, edge = {}, {}
    for i, raw in enumerate(text.splitlines()):
        toks = raw.split()
        if not toks:
            continue
        vals = _ints(toks, i + 1)
        if len(vals) == 2:
            v, wt = vals
            if not 0 <= v < g.n:
                raise ParseError(i + 1, f"unknown vertex {v}")
            vertex[v] = wt
        elif len(vals) == 3:
            u, v, wt = vals
            if not (0 <= u < g.n and 0 <= v < g.n and g.has_edge(u, v)):
                raise ParseError(i + 1, f"({u}, {v}) is not an edge")
            edge[(min(u, v), max(u, v))] = wt
        else:
            raise ParseError(i + 1, "weight line must be 'v w' or 'u v w'")
        if vals[-1] < 0:
            raise ParseError(i + 1, "weights must be non-negative")
    if vertex and edge:
        raise ValueError("weight file mixes vertex and edge weights")
    if edge:
        return edge
    if vertex:
        return vertex_weights(g, {v: vertex.get(v, 1) for v in range(g.n)})
    return None


def read_weights(path, g: Graph):
    return parse_weights(Path(path).read_text(), g)


def _plain(record):
    if dataclasses.is_dataclass(record):
        return dataclasses.asdict(record)
    return dict(record)


def dumps_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def format_csv(records) -> str:
    rows = [_plain(r) for r in records]
    fields = []
    for r in rows:
        for k in r:
            if k not in fields:
                fields.append(k)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: json.dumps(v, sort_keys=True) if isinstance(v, (list, dict, tuple)) else v for k, v in r.items()})
    return buf.getvalue()


def write_report(path, records) -> None:
    """JSON array for ``.json`` paths, CSV with a header row otherwise."""
    path = Path(path)
    if path.suffix == ".json":
        path.write_text(dumps_json([_plain(r) for r in records]))
    else:
        path.write_text(format_csv(records))


def load_json(path):
    return json.loads(Path(path).read_text())
