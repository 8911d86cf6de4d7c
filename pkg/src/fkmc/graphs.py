"""Star-like graphs, their line-hypergraph duals, and finite test graphs.

A star-like graph is stored as a finite core (vertices + edges) plus finitely
many infinite rays, each attached to a core vertex.  This is a complete,
canonical description: any countably infinite connected planar graph with
finite degrees and finitely many vertices of degree > 2 can be folded into
this form by absorbing finite chains into the core.

Vertex addresses are plain strings: a core vertex keeps its id, the k-th
vertex out on ray "r" (k >= 1) is addressed "r.k".  Edge addresses are
lexicographically sorted pairs of vertex addresses.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .errors import BadOrigin, DisconnectedGraph, DuplicateEdge, KindMismatch

Edge = tuple[str, str]


def edge_address(u: str, v: str) -> Edge:
    """Canonical (sorted) address of the undirected edge between u and v."""
    return (u, v) if u <= v else (v, u)


def _check_id(name: str, kind: str) -> None:
    if not name or "." in name or "|" in name:
        raise ValueError(f"bad {kind} id {name!r}: must be nonempty, without '.' or '|'")


@dataclass(frozen=True)
class Ray:
    id: str
    attach: str


@dataclass(frozen=True)
class StarLikeGraph:
    """Finite core plus finitely many infinite rays; the whole graph is implicit."""

    core_vertices: tuple[str, ...]
    core_edges: tuple[Edge, ...]
    rays: tuple[Ray, ...]
    origin: str

    # -- address helpers ---------------------------------------------------

    def is_core(self, v: str) -> bool:
        return "." not in v

    def ray_vertex(self, ray_id: str, k: int) -> str:
        if k == 0:
            return self._ray_by_id(ray_id).attach
        return f"{ray_id}.{k}"

    def split_ray_address(self, v: str) -> tuple[str, int]:
        rid, k = v.rsplit(".", 1)
        return rid, int(k)

    def _ray_by_id(self, ray_id: str) -> Ray:
        for r in self.rays:
            if r.id == ray_id:
                return r
        raise KeyError(ray_id)

    # -- structure ---------------------------------------------------------

    def core_degree(self, v: str) -> int:
        deg = sum(1 for e in self.core_edges if v in e)
        deg += sum(1 for r in self.rays if r.attach == v)
        return deg

    def degree(self, v: str) -> int:
        if self.is_core(v):
            return self.core_degree(v)
        return 2  # every ray vertex has one neighbour inward, one outward

    def incident_edges(self, v: str) -> tuple[Edge, ...]:
        if self.is_core(v):
            edges = [e for e in self.core_edges if v in e]
            edges += [
                edge_address(v, self.ray_vertex(r.id, 1))
                for r in self.rays
                if r.attach == v
            ]
            return tuple(sorted(edges))
        rid, k = self.split_ray_address(v)
        inner = self.ray_vertex(rid, k - 1)
        outer = self.ray_vertex(rid, k + 1)
        return tuple(sorted([edge_address(inner, v), edge_address(v, outer)]))

    def distance(self, v: str) -> int:
        """Graph distance from the origin."""
        if self.is_core(v):
            return self._core_distances()[v]
        rid, k = self.split_ray_address(v)
        return self._core_distances()[self._ray_by_id(rid).attach] + k

    def _core_distances(self) -> dict[str, int]:
        # Rays are dead ends, so shortest paths between core vertices stay in
        # the core; plain BFS on the core suffices.
        dist = {self.origin: 0}
        queue = deque([self.origin])
        adj: dict[str, list[str]] = {v: [] for v in self.core_vertices}
        for u, w in self.core_edges:
            adj[u].append(w)
            adj[w].append(u)
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def ball(self, n: int) -> tuple[list[str], list[Edge]]:
        """Vertices within graph distance n of the origin, and every edge with
        at least one endpoint among them (so boundary edges dangle outward)."""
        cdist = self._core_distances()
        vertices = [v for v in self.core_vertices if cdist[v] <= n]
        for r in self.rays:
            reach = n - cdist[r.attach]
            vertices += [self.ray_vertex(r.id, k) for k in range(1, reach + 1)]
        inside = set(vertices)
        edges = set()
        for v in vertices:
            edges.update(self.incident_edges(v))
        return sorted(inside), sorted(edges)


@dataclass(frozen=True)
class FiniteGraph:
    """Plain finite graph, used by the exact-diagonalization oracle and by
    periodic-time (finite inverse temperature) simulation windows."""

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def incident_edges(self, v: str) -> tuple[Edge, ...]:
        return tuple(sorted(e for e in self.edges if v in e))

    def degree(self, v: str) -> int:
        return len(self.incident_edges(v))


@dataclass(frozen=True)
class LineHypergraph:
    """Dual incidence structure: one site per edge of the base graph, one
    hyperedge per vertex (its incident edge set).  Hyperedges of size > 2
    occur exactly at vertices of degree > 2, of which there are finitely many."""

    sites: tuple[Edge, ...]
    hyperedges: dict[str, tuple[Edge, ...]]


def build_star_like(
    core_vertices: Iterable[str],
    core_edges: Iterable[tuple[str, str]],
    rays: Iterable[tuple[str, str]],
    origin: str,
) -> StarLikeGraph:
    """Validate and build a star-like graph.

    Raises DuplicateEdge on repeated core edges or ray ids, DisconnectedGraph
    if the core is not connected (or a ray attaches to a missing vertex), and
    BadOrigin if the origin is absent or has degree < 2.
    """
    core_vertices = tuple(core_vertices)
    for v in core_vertices:
        _check_id(v, "vertex")
    if len(set(core_vertices)) != len(core_vertices):
        raise DuplicateEdge("duplicate core vertex id")

    canon_edges = []
    for u, v in core_edges:
        if u == v:
            raise DuplicateEdge(f"self-loop at {u!r}")
        if u not in core_vertices or v not in core_vertices:
            raise DisconnectedGraph(f"core edge ({u!r},{v!r}) references unknown vertex")
        canon_edges.append(edge_address(u, v))
    if len(set(canon_edges)) != len(canon_edges):
        raise DuplicateEdge("duplicate core edge")

    ray_objs = []
    for rid, attach in rays:
        _check_id(rid, "ray")
        if attach not in core_vertices:
            raise DisconnectedGraph(f"ray {rid!r} attaches to unknown vertex {attach!r}")
        ray_objs.append(Ray(rid, attach))
    ids = [r.id for r in ray_objs]
    if len(set(ids)) != len(ids):
        raise DuplicateEdge("duplicate ray id")
    if not ray_objs:
        raise DisconnectedGraph("a star-like graph needs at least one ray")

    g = StarLikeGraph(core_vertices, tuple(canon_edges), tuple(ray_objs), origin)

    if origin not in core_vertices:
        raise BadOrigin(f"origin {origin!r} is not a core vertex")
    if len(g._core_distances()) != len(core_vertices):
        raise DisconnectedGraph("core is not connected")
    if g.core_degree(origin) < 2:
        raise BadOrigin(f"origin {origin!r} has degree {g.core_degree(origin)} < 2")
    return g


def line_hypergraph(g: StarLikeGraph | FiniteGraph, radius: int | None = None) -> LineHypergraph:
    """Line-hypergraph of g.  For a star-like graph the structure is infinite,
    so `radius` bounds the materialized portion (default: core plus one step
    onto each ray, which already contains every hyperedge of size > 2)."""
    if isinstance(g, FiniteGraph):
        hyper = {v: g.incident_edges(v) for v in g.vertices}
        sites = tuple(sorted(g.edges))
        return LineHypergraph(sites, hyper)
    if radius is None:
        radius = max((g.distance(v) for v in g.core_vertices), default=0) + 1
    vertices, edges = g.ball(radius)
    hyper = {v: g.incident_edges(v) for v in vertices}
    return LineHypergraph(tuple(edges), hyper)


# -- standard shapes -------------------------------------------------------


def star_graph(arms: int, origin: str = "O") -> StarLikeGraph:
    """Junction of `arms` copies of a half-line at a single vertex; arms=2 is
    the two-sided infinite chain."""
    return build_star_like(
        [origin], [], [(f"arm{i}", origin) for i in range(1, arms + 1)], origin
    )


def chain_graph() -> StarLikeGraph:
    """The two-sided infinite chain (a star with two arms)."""
    return star_graph(2)


def is_chain_shaped(g: StarLikeGraph) -> bool:
    """True when g is a single core vertex with exactly two rays: the shape on
    which boxes, half-plane boxes, wedges, and strips are defined."""
    return (
        len(g.core_vertices) == 1
        and len(g.rays) == 2
        and all(r.attach == g.origin for r in g.rays)
    )


class ChainCoordinates:
    """Integer coordinates on a chain-shaped graph: 0 at the origin, positive
    along the first ray, negative along the second."""

    def __init__(self, g: StarLikeGraph):
        if not is_chain_shaped(g):
            raise KindMismatch("graph is not chain-shaped (one core vertex, two rays)")
        self.graph = g
        self._pos = g.rays[0].id
        self._neg = g.rays[1].id

    def vertex(self, a: int) -> str:
        if a == 0:
            return self.graph.origin
        if a > 0:
            return f"{self._pos}.{a}"
        return f"{self._neg}.{-a}"

    def edge(self, a: int) -> Edge:
        """Edge between coordinates a and a+1."""
        return edge_address(self.vertex(a), self.vertex(a + 1))

    def coord(self, v: str) -> int:
        if v == self.graph.origin:
            return 0
        rid, k = self.graph.split_ray_address(v)
        return k if rid == self._pos else -k

    def edge_coord(self, e: Edge) -> int:
        """Left coordinate of an edge (a, a+1)."""
        return min(self.coord(e[0]), self.coord(e[1]))


def truncate_to_ball(g: StarLikeGraph, radius: int) -> FiniteGraph:
    """Finite subgraph induced by the radius-`radius` ball around the origin
    (dangling boundary edges are dropped)."""
    vertices, edges = g.ball(radius)
    inside = set(vertices)
    kept = tuple(e for e in edges if e[0] in inside and e[1] in inside)
    return FiniteGraph(tuple(vertices), kept)


# -- JSON ------------------------------------------------------------------


def graph_to_json(g: StarLikeGraph) -> str:
    doc = {
        "core_vertices": list(g.core_vertices),
        "core_edges": [list(e) for e in g.core_edges],
        "rays": [{"id": r.id, "attach": r.attach} for r in g.rays],
        "origin": g.origin,
    }
    return json.dumps(doc, indent=2, sort_keys=True)


def graph_from_json(text: str) -> StarLikeGraph | FiniteGraph:
    doc = json.loads(text)
    if "core_vertices" in doc:
        return build_star_like(
            doc["core_vertices"],
            [tuple(e) for e in doc["core_edges"]],
            [(r["id"], r["attach"]) for r in doc["rays"]],
            doc["origin"],
        )
    if "vertices" in doc:
        return FiniteGraph(
            tuple(doc["vertices"]),
            tuple(edge_address(u, v) for u, v in doc["edges"]),
        )
    raise ValueError("unrecognized graph document")


def load_graph(path_or_name: str) -> StarLikeGraph | FiniteGraph:
    """Load a graph from a JSON file, or build a named one: "Z" (the chain)
    or "starK" for a K-armed star, e.g. "star3"."""
    name = path_or_name.strip()
    if name in ("Z", "z", "chain"):
        return chain_graph()
    if name.startswith("star") and name[4:].isdigit():
        return star_graph(int(name[4:]))
    with open(path_or_name, "r", encoding="utf-8") as fh:
        return graph_from_json(fh.read())
