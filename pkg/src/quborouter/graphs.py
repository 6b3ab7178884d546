"""Weighted directed graphs, their JSON document format, and the classical
shortest-path routines used as verification oracles.

Vertex and arc insertion order is load-bearing: every compiler assigns
binary-variable indices in that order, so two loads of the same document
always produce the same variable numbering.
"""
from __future__ import annotations

import heapq
import json
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


class GraphFormatError(ValueError):
    """A graph document violates the schema or a graph invariant."""


@dataclass(frozen=True)
class Arc:
    source: str
    target: str
    weight: float


@dataclass(frozen=True)
class RouteQuery:
    """An origin/destination pair; the endpoints must differ."""

    origin: str
    destination: str

    def __post_init__(self):
        if self.origin == self.destination:
            raise ValueError("origin and destination must differ")

    def validate(self, g: "WeightedDigraph") -> None:
        for v, role in ((self.origin, "origin"), (self.destination, "destination")):
            if not g.has_vertex(v):
                raise ValueError(f"{role} {v!r} is not a vertex of the graph")


class WeightedDigraph:
    """Immutable digraph with strictly positive arc weights.

    ``zero_weight_ok`` lists (source, target) pairs that are allowed to carry
    weight zero; the only sanctioned use is the waiting self-loop added at a
    destination by the time expansion preprocessing.
    """

    def __init__(
        self,
        vertices: Iterable[str],
        arcs: Iterable[Arc | tuple],
        zero_weight_ok: Iterable[tuple[str, str]] = (),
    ):
        verts = tuple(str(v) for v in vertices)
        seen = set()
        for v in verts:
            if v in seen:
                raise GraphFormatError(f"duplicate vertex {v!r}")
            seen.add(v)
        self._vertices = verts
        self._vertex_set = seen
        self._zero_ok = frozenset((str(s), str(t)) for s, t in zero_weight_ok)

        normalized = []
        positions: dict[tuple[str, str], int] = {}
        for k, a in enumerate(arcs):
            if not isinstance(a, Arc):
                a = Arc(*a)
            where = f"arcs[{k}]"
            for end, role in ((a.source, "source"), (a.target, "target")):
                if end not in self._vertex_set:
                    raise GraphFormatError(f"{where}: {role} {end!r} is not a declared vertex")
            w = float(a.weight)
            if (a.source, a.target) in self._zero_ok:
                if w < 0.0:
                    raise GraphFormatError(f"{where}: negative weight {w}")
            elif w <= 0.0:
                raise GraphFormatError(f"{where}: non-positive weight {w}")
            pair = (a.source, a.target)
            if pair in positions:
                raise GraphFormatError(f"{where}: duplicate arc {a.source!r}->{a.target!r}")
            positions[pair] = k
            normalized.append(Arc(a.source, a.target, w))
        self._arcs = tuple(normalized)
        self._positions = positions
        self._out: dict[str, list[Arc]] = {v: [] for v in verts}
        self._in: dict[str, list[Arc]] = {v: [] for v in verts}
        for a in self._arcs:
            self._out[a.source].append(a)
            self._in[a.target].append(a)

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def arcs(self) -> tuple[Arc, ...]:
        return self._arcs

    @property
    def zero_weight_ok(self) -> frozenset[tuple[str, str]]:
        return self._zero_ok

    def has_vertex(self, v: str) -> bool:
        return v in self._vertex_set

    def has_arc(self, s: str, t: str) -> bool:
        return (s, t) in self._positions

    def arc(self, s: str, t: str) -> Optional[Arc]:
        pos = self._positions.get((s, t))
        return None if pos is None else self._arcs[pos]

    def arc_position(self, s: str, t: str) -> int:
        return self._positions[(s, t)]

    def out_arcs(self, v: str) -> tuple[Arc, ...]:
        return tuple(self._out[v])

    def in_arcs(self, v: str) -> tuple[Arc, ...]:
        return tuple(self._in[v])

    def total_weight(self) -> float:
        return sum(a.weight for a in self._arcs)

    def vertex_order(self, v: str) -> int:
        return self._vertices.index(v)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedDigraph):
            return NotImplemented
        return (
            self._vertices == other._vertices
            and self._arcs == other._arcs
            and self._zero_ok == other._zero_ok
        )

    def __hash__(self):
        return hash((self._vertices, self._arcs, self._zero_ok))

    def __repr__(self):
        return f"WeightedDigraph({len(self._vertices)} vertices, {len(self._arcs)} arcs)"


def induced_subgraph(g: WeightedDigraph, keep: Iterable[str]) -> WeightedDigraph:
    """Subgraph on ``keep`` with every arc of ``g`` between retained vertices."""
    keep_set = set(keep)
    verts = [v for v in g.vertices if v in keep_set]
    arcs = [a for a in g.arcs if a.source in keep_set and a.target in keep_set]
    zero = [(s, t) for s, t in g.zero_weight_ok if s in keep_set and t in keep_set]
    return WeightedDigraph(verts, arcs, zero_weight_ok=zero)


def parse_graph(text: str) -> WeightedDigraph:
    """Parse the JSON graph document format.

    The document is an object with keys ``vertices`` (list of strings),
    ``arcs`` (list of ``{"s", "t", "w"}`` records) and ``directed`` (bool,
    default true).  With ``directed: false`` every record is doubled into the
    two opposite arcs.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"malformed JSON document: {exc}") from exc
    if not isinstance(doc, dict):
        raise GraphFormatError("top-level value must be an object")
    if "vertices" not in doc or "arcs" not in doc:
        raise GraphFormatError("document must define 'vertices' and 'arcs'")
    vertices = doc["vertices"]
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise GraphFormatError("'vertices' must be a list of strings")
    directed = doc.get("directed", True)
    if not isinstance(directed, bool):
        raise GraphFormatError("'directed' must be a boolean")
    zero_ok = [tuple(p) for p in doc.get("zero_weight_arcs", [])]

    arcs: list[Arc] = []
    raw = doc["arcs"]
    if not isinstance(raw, list):
        raise GraphFormatError("'arcs' must be a list")
    for k, rec in enumerate(raw):
        where = f"arcs[{k}]"
        if not isinstance(rec, dict) or not {"s", "t", "w"} <= set(rec):
            raise GraphFormatError(f"{where}: expected an object with keys s, t, w")
        s, t, w = rec["s"], rec["t"], rec["w"]
        if not isinstance(s, str) or not isinstance(t, str):
            raise GraphFormatError(f"{where}: endpoints must be strings")
        if not isinstance(w, (int, float)) or isinstance(w, bool):
            raise GraphFormatError(f"{where}: weight must be a number")
        arcs.append(Arc(s, t, float(w)))
        if not directed and s != t:
            arcs.append(Arc(t, s, float(w)))
    return WeightedDigraph(vertices, arcs, zero_weight_ok=zero_ok)


def graph_to_doc(g: WeightedDigraph) -> dict:
    doc = {
        "directed": True,
        "vertices": list(g.vertices),
        "arcs": [{"s": a.source, "t": a.target, "w": a.weight} for a in g.arcs],
    }
    if g.zero_weight_ok:
        doc["zero_weight_arcs"] = sorted([s, t] for s, t in g.zero_weight_ok)
    return doc


def graph_from_doc(doc: dict) -> WeightedDigraph:
    return parse_graph(json.dumps(doc))


def emit_graph(g: WeightedDigraph) -> str:
    """Canonical document text; ``parse_graph(emit_graph(g)) == g``."""
    return json.dumps(graph_to_doc(g), sort_keys=True, indent=2) + "\n"


def shortest_distances(g: WeightedDigraph, source: str, reverse: bool = False) -> dict[str, float]:
    """Single-source Dijkstra distances; ``reverse`` follows arcs backwards."""
    step = g.in_arcs if reverse else g.out_arcs
    dist: dict[str, float] = {source: 0.0}
    order = {v: k for k, v in enumerate(g.vertices)}
    heap: list[tuple[float, int, str]] = [(0.0, order[source], source)]
    done: set[str] = set()
    while heap:
        d, _, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        for a in step(u):
            v = a.source if reverse else a.target
            nd = d + a.weight
            if v not in dist or nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, order[v], v))
    return dist


def dijkstra(g: WeightedDigraph, q: RouteQuery) -> Optional[tuple[list[Arc], float]]:
    """Minimum-weight path, or None if the destination is unreachable.

    Ties between equal-weight paths are broken by the lexicographic order of
    their arc-index sequences, so the result is deterministic.
    """
    q.validate(g)
    to_dest = shortest_distances(g, q.destination, reverse=True)
    if q.origin not in to_dest:
        return None
    path: list[Arc] = []
    u = q.origin
    guard = 0
    while u != q.destination:
        # the relaxation that set to_dest[u] makes at least one arc match exactly
        for a in g.out_arcs(u):
            rest = to_dest.get(a.target)
            if rest is not None and to_dest[u] == a.weight + rest:
                path.append(a)
                u = a.target
                break
        else:  # pragma: no cover - unreachable if distances are consistent
            raise RuntimeError("shortest-path reconstruction failed")
        guard += 1
        if guard > len(g.vertices):  # pragma: no cover
            raise RuntimeError("shortest-path reconstruction cycled")
    return path, to_dest[q.origin]


def enumerate_simple_paths(
    g: WeightedDigraph, q: RouteQuery, max_len: int
) -> list[list[Arc]]:
    """All simple origin->destination paths with at most ``max_len`` arcs.

    Paths are produced in depth-first order following arc insertion order,
    which makes the output deterministic.  Intended as a brute-force oracle
    for small graphs; the search is exponential in general.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    q.validate(g)
    found: list[list[Arc]] = []
    stack: list[Arc] = []
    visited = {q.origin}

    def walk(u: str):
        if len(stack) == max_len:
            return
        for a in g.out_arcs(u):
            if a.target == q.destination:
                found.append(stack + [a])
                continue
            if a.target in visited:
                continue
            visited.add(a.target)
            stack.append(a)
            walk(a.target)
            stack.pop()
            visited.remove(a.target)

    walk(q.origin)
    return found


def path_weight(path: Sequence[Arc]) -> float:
    return sum(a.weight for a in path)
