"""Finite simulation windows over graph x time.

A region is a finite set of vertex lines and edge lines, each carrying one or
more disjoint time intervals, together with a boundary convention:

* free      -- nothing identified; dangling bridges connect nothing outward.
* wired     -- one boundary "supernode": every segment whose closure touches
               the global top/bottom of the window, every segment on a
               designated side-boundary line, and the inner endpoint of every
               bridge protruding through the side all merge with it.
* periodic  -- per line, the two window endpoints are identified (circles).

Kinds:

* lambda    -- graph ball of radius n around the origin, every edge with at
               least one endpoint inside (those edges dangle outward), time
               window [-T, T].
* box       -- on a chain-shaped graph, coordinates a in [m-n, m+n] and time
               in [s-n, s+n]; the two extreme lines are side boundary.
* halfbox   -- box on the nonnegative half of a chain: a in [0, width],
               |t| <= halfheight; both extreme lines are side boundary.
* wedge     -- a in [0, a_max], time window [0, a/2 + 1] per line; the only
               boundary target is the line a = a_max.
* strip     -- a in [0, a_max], |t| <= 2n+1; boundary target a = a_max.
* torus     -- a whole finite graph with every line a circle of length beta.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import KindMismatch, PointOutsideRegion
from .graphs import (
    ChainCoordinates,
    Edge,
    FiniteGraph,
    StarLikeGraph,
    edge_address,
)

Interval = tuple[float, float]

FREE, WIRED, PERIODIC = "free", "wired", "periodic"


@dataclass(eq=False)
class Region:
    """Immutable after construction; share freely across threads."""

    kind: str
    graph: StarLikeGraph | FiniteGraph
    bc: str
    n: int
    vertex_lines: dict[str, tuple[Interval, ...]]
    edge_lines: dict[Edge, tuple[Interval, ...]]
    side_boundary: frozenset[str] = frozenset()
    target_lines: frozenset[str] = frozenset()
    time_boundary: bool = True
    params: dict = field(default_factory=dict)
    _layout: "RegionLayout | None" = field(default=None, repr=False)

    def __post_init__(self):
        if self.bc not in (FREE, WIRED, PERIODIC):
            raise ValueError(f"unknown boundary condition {self.bc!r}")

    @property
    def t_lo(self) -> float:
        return min(iv[0] for ivs in self.vertex_lines.values() for iv in ivs)

    @property
    def t_hi(self) -> float:
        return max(iv[1] for ivs in self.vertex_lines.values() for iv in ivs)

    @property
    def n_lines(self) -> int:
        return len(self.vertex_lines) + len(self.edge_lines)

    @property
    def vertex_length(self) -> float:
        """Total vertex-line length (the paper-independent L_D)."""
        return sum(hi - lo for ivs in self.vertex_lines.values() for lo, hi in ivs)

    @property
    def edge_length(self) -> float:
        return sum(hi - lo for ivs in self.edge_lines.values() for lo, hi in ivs)

    def covers_vertex(self, v: str, t: float) -> bool:
        for lo, hi in self.vertex_lines.get(v, ()):
            if lo <= t <= hi:
                return True
        return False

    def covers_edge(self, e: Edge, t: float) -> bool:
        for lo, hi in self.edge_lines.get(e, ()):
            if lo <= t <= hi:
                return True
        return False

    def require_point(self, v: str, t: float) -> None:
        if not self.covers_vertex(v, t):
            raise PointOutsideRegion(f"({v!r}, {t}) is not in this region")

    def layout(self) -> "RegionLayout":
        if self._layout is None:
            object.__setattr__(self, "_layout", RegionLayout(self))
        return self._layout


class RegionLayout:
    """Flat array form of a region, shared by the numba kernels.

    Lines are indexed in lexicographic address order; intervals per line are
    flattened with CSR-style pointers.
    """

    def __init__(self, region: Region):
        self.region = region
        self.vkeys: list[str] = sorted(region.vertex_lines)
        self.vindex = {v: i for i, v in enumerate(self.vkeys)}
        self.ekeys: list[Edge] = sorted(region.edge_lines)
        self.eindex = {e: i for i, e in enumerate(self.ekeys)}

        ptr, lo, hi = [0], [], []
        for v in self.vkeys:
            for a, b in region.vertex_lines[v]:
                lo.append(a)
                hi.append(b)
            ptr.append(len(lo))
        self.vwin_ptr = np.asarray(ptr, dtype=np.int64)
        self.vwin_lo = np.asarray(lo, dtype=np.float64)
        self.vwin_hi = np.asarray(hi, dtype=np.float64)

        t_lo, t_hi = region.t_lo, region.t_hi
        if region.time_boundary and region.bc != PERIODIC:
            self.bnd_lo = self.vwin_lo == t_lo
            self.bnd_hi = self.vwin_hi == t_hi
        else:
            self.bnd_lo = np.zeros(len(lo), dtype=bool)
            self.bnd_hi = np.zeros(len(lo), dtype=bool)

        self.side = np.array(
            [v in region.side_boundary for v in self.vkeys], dtype=bool
        )
        self.target = np.array(
            [v in region.target_lines for v in self.vkeys], dtype=bool
        )

        e_u, e_v = [], []
        ptr, lo, hi = [0], [], []
        for e in self.ekeys:
            ends = [self.vindex[x] for x in e if x in self.vindex]
            if not ends:
                raise ValueError(f"edge {e} has no endpoint line in the region")
            e_u.append(ends[0])
            e_v.append(ends[1] if len(ends) == 2 else -1)
            for a, b in region.edge_lines[e]:
                lo.append(a)
                hi.append(b)
            ptr.append(len(lo))
        self.e_u = np.asarray(e_u, dtype=np.int64)
        self.e_v = np.asarray(e_v, dtype=np.int64)
        self.ewin_ptr = np.asarray(ptr, dtype=np.int64)
        self.ewin_lo = np.asarray(lo, dtype=np.float64)
        self.ewin_hi = np.asarray(hi, dtype=np.float64)

        self.periodic = region.bc == PERIODIC
        self.wired = region.bc == WIRED
        self.v_length = float(np.sum(self.vwin_hi - self.vwin_lo))
        self.e_length = float(np.sum(self.ewin_hi - self.ewin_lo))

    @property
    def nv(self) -> int:
        return len(self.vkeys)

    @property
    def ne(self) -> int:
        return len(self.ekeys)


def _single(lo: float, hi: float) -> tuple[Interval, ...]:
    return ((float(lo), float(hi)),)


def lambda_region(
    g: StarLikeGraph, n: int, bc: str = FREE, time_halfheight: float | None = None
) -> Region:
    """Ball of radius n with time window [-T, T]; edges with one endpoint at
    distance n+1 are included and dangle outward."""
    if not isinstance(g, StarLikeGraph):
        raise KindMismatch("lambda regions need a star-like graph")
    T = float(n if time_halfheight is None else time_halfheight)
    if T <= 0:
        raise ValueError("time half-height must be positive")
    vertices, edges = g.ball(n)
    vlines = {v: _single(-T, T) for v in vertices}
    elines = {e: _single(-T, T) for e in edges}
    return Region(
        kind="lambda", graph=g, bc=bc, n=n,
        vertex_lines=vlines, edge_lines=elines,
        params={"n": n, "time_halfheight": T},
    )


def _chain_box(
    g: StarLikeGraph, a_lo: int, a_hi: int, t_lo: float, t_hi: float,
    bc: str, kind: str, n: int, params: dict,
) -> Region:
    coords = ChainCoordinates(g)
    vlines = {coords.vertex(a): _single(t_lo, t_hi) for a in range(a_lo, a_hi + 1)}
    elines = {coords.edge(a): _single(t_lo, t_hi) for a in range(a_lo, a_hi)}
    side = frozenset({coords.vertex(a_lo), coords.vertex(a_hi)})
    return Region(
        kind=kind, graph=g, bc=bc, n=n,
        vertex_lines=vlines, edge_lines=elines,
        side_boundary=side, params=params,
    )


def box_region(
    g: StarLikeGraph, n: int, bc: str = FREE, m: int = 0, s: float = 0.0
) -> Region:
    """Box of radius n centered at (m, s): coordinates within n of m, time
    within n of s.  The two extreme vertex lines are side boundary."""
    if n < 1:
        raise ValueError("box needs n >= 1")
    return _chain_box(
        g, m - n, m + n, s - n, s + n, bc, "box", n,
        {"n": n, "m": m, "s": s},
    )


def halfbox_region(
    g: StarLikeGraph, n: int, bc: str = FREE,
    width: int | None = None, halfheight: float | None = None,
) -> Region:
    """Box on the nonnegative half of the chain.  With defaults this is the
    half-plane box spanning [0, 2n] x [-n, n]; width/halfheight override the
    extent (for windows that must contain taller dual events)."""
    w = 2 * n if width is None else width
    hh = float(n if halfheight is None else halfheight)
    if w < 1 or hh <= 0:
        raise ValueError("halfbox needs width >= 1 and positive halfheight")
    return _chain_box(
        g, 0, w, -hh, hh, bc, "halfbox", n,
        {"n": n, "width": w, "halfheight": hh},
    )


def wedge_region(g: StarLikeGraph, a_max: int) -> Region:
    """Truncated wedge: line a carries [0, a/2 + 1]; the boundary target is
    the right edge a = a_max.  Only the free condition makes sense here."""
    if a_max < 1:
        raise ValueError("wedge needs a_max >= 1")
    coords = ChainCoordinates(g)
    vlines = {coords.vertex(a): _single(0.0, a / 2.0 + 1.0) for a in range(a_max + 1)}
    elines = {coords.edge(a): _single(0.0, a / 2.0 + 1.0) for a in range(a_max)}
    return Region(
        kind="wedge", graph=g, bc=FREE, n=a_max,
        vertex_lines=vlines, edge_lines=elines,
        target_lines=frozenset({coords.vertex(a_max)}),
        time_boundary=False, params={"a_max": a_max},
    )


def strip_region(g: StarLikeGraph, n: int, a_max: int) -> Region:
    """Horizontal strip [0, a_max] x [-(2n+1), 2n+1] on the nonnegative half;
    boundary target is the right edge."""
    coords = ChainCoordinates(g)
    h = 2 * n + 1.0
    vlines = {coords.vertex(a): _single(-h, h) for a in range(a_max + 1)}
    elines = {coords.edge(a): _single(-h, h) for a in range(a_max)}
    return Region(
        kind="strip", graph=g, bc=FREE, n=n,
        vertex_lines=vlines, edge_lines=elines,
        target_lines=frozenset({coords.vertex(a_max)}),
        time_boundary=False, params={"n": n, "a_max": a_max},
    )


def torus_region(g: FiniteGraph, beta: float) -> Region:
    """Whole finite graph with periodic time of circumference beta."""
    if not isinstance(g, FiniteGraph):
        raise KindMismatch("torus regions need a finite graph")
    if beta <= 0:
        raise ValueError("beta must be positive")
    vlines = {v: _single(0.0, beta) for v in g.vertices}
    elines = {e: _single(0.0, beta) for e in g.edges}
    return Region(
        kind="torus", graph=g, bc=PERIODIC, n=0,
        vertex_lines=vlines, edge_lines=elines,
        time_boundary=False, params={"beta": beta},
    )


def span_region(
    g: StarLikeGraph, a_lo: int, a_hi: int, t_halfheight: float, bc: str = FREE,
    include_dangling: bool = False, side_is_boundary: bool = False, kind: str = "span",
) -> Region:
    """General chain-coordinate window [a_lo, a_hi] x [-T, T].  With
    include_dangling the two outward edges are carried (their bridges dangle,
    and wire to the supernode under the wired condition); dual windows of
    boxes are built this way."""
    coords = ChainCoordinates(g)
    T = float(t_halfheight)
    vlines = {coords.vertex(a): _single(-T, T) for a in range(a_lo, a_hi + 1)}
    lo_e = a_lo - 1 if include_dangling else a_lo
    hi_e = a_hi if include_dangling else a_hi - 1
    elines = {coords.edge(a): _single(-T, T) for a in range(lo_e, hi_e + 1)}
    side = (
        frozenset({coords.vertex(a_lo), coords.vertex(a_hi)})
        if side_is_boundary
        else frozenset()
    )
    return Region(
        kind=kind, graph=g, bc=bc, n=a_hi - a_lo,
        vertex_lines=vlines, edge_lines=elines, side_boundary=side,
        params={"a_lo": a_lo, "a_hi": a_hi, "t_halfheight": T},
    )


_KINDS = {
    "lambda": lambda_region,
    "box": box_region,
    "halfbox": halfbox_region,
    "wedge": wedge_region,
    "strip": strip_region,
    "torus": torus_region,
}


def make_region(g, kind: str, n: int | None = None, bc: str = FREE, **kwargs) -> Region:
    """Uniform front door over the per-kind constructors."""
    if kind == "lambda":
        return lambda_region(g, n, bc, **kwargs)
    if kind == "box":
        return box_region(g, n, bc, **kwargs)
    if kind == "halfbox":
        return halfbox_region(g, n, bc, **kwargs)
    if kind == "wedge":
        if bc != FREE:
            raise KindMismatch("wedge regions are free-boundary only")
        return wedge_region(g, kwargs.get("a_max", n))
    if kind == "strip":
        if bc != FREE:
            raise KindMismatch("strip regions are free-boundary only")
        return strip_region(g, n, **kwargs)
    if kind == "torus":
        return torus_region(g, kwargs["beta"])
    raise KindMismatch(f"unknown region kind {kind!r}")


def clip_intervals(
    intervals: Iterable[Interval], forbidden: Interval
) -> tuple[Interval, ...]:
    """Remove a closed time band from a list of disjoint intervals."""
    f_lo, f_hi = forbidden
    out = []
    for lo, hi in intervals:
        if hi <= f_lo or lo >= f_hi:
            out.append((lo, hi))
            continue
        if lo < f_lo:
            out.append((lo, f_lo))
        if hi > f_hi:
            out.append((f_hi, hi))
    return tuple(out)
