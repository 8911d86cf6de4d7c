"""Space-time configurations and their cluster structure.

A configuration is a pair (bridges, deaths): per edge line a sorted list of
bridge times, per vertex line a sorted list of death/cut times.  Deaths are
missing points: each vertex line decomposes into maximal death-free open
segments, bridges glue the two endpoint segments at their time, and the
boundary condition of a region closes the picture (see regions module).

Cluster counting runs on flat arrays through the numba kernels; the
ClusterLabeling wrapper answers point queries against that structure.
"""

from __future__ import annotations

import json
from bisect import bisect_left, bisect_right, insort
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np

from . import _kernels
from .errors import NotFound, QueryAtDeath, TimestampCollision
from .graphs import Edge, edge_address
from .regions import Region, RegionLayout


class Bridge(NamedTuple):
    edge: Edge
    time: float


class Death(NamedTuple):
    vertex: str
    time: float


class SpacePoint(NamedTuple):
    vertex: str
    time: float


@dataclass(frozen=True)
class Configuration:
    bridges: dict[Edge, tuple[float, ...]] = field(default_factory=dict)
    deaths: dict[str, tuple[float, ...]] = field(default_factory=dict)

    @property
    def n_bridges(self) -> int:
        return sum(len(ts) for ts in self.bridges.values())

    @property
    def n_deaths(self) -> int:
        return sum(len(ts) for ts in self.deaths.values())

    def iter_bridges(self) -> Iterable[Bridge]:
        for e in sorted(self.bridges):
            for t in self.bridges[e]:
                yield Bridge(e, t)

    def iter_deaths(self) -> Iterable[Death]:
        for v in sorted(self.deaths):
            for t in self.deaths[v]:
                yield Death(v, t)

    def death_at(self, v: str, t: float) -> bool:
        ts = self.deaths.get(v, ())
        i = bisect_left(ts, t)
        return i < len(ts) and ts[i] == t


def empty_configuration() -> Configuration:
    return Configuration({}, {})


def _has_time(sorted_times, t: float) -> bool:
    i = bisect_left(sorted_times, t)
    return i < len(sorted_times) and sorted_times[i] == t


def insert_event(c: Configuration, event: Bridge | Death) -> Configuration:
    """Return c with the event added; collisions with an existing event on the
    same or an incident line raise TimestampCollision."""
    if isinstance(event, Bridge):
        e, t = edge_address(*event.edge), event.time
        if _has_time(c.bridges.get(e, ()), t):
            raise TimestampCollision(f"bridge already present at {e}, t={t}")
        for v in e:
            if _has_time(c.deaths.get(v, ()), t):
                raise TimestampCollision(f"death at endpoint {v!r} shares t={t}")
        bridges = dict(c.bridges)
        times = list(bridges.get(e, ()))
        insort(times, t)
        bridges[e] = tuple(times)
        return Configuration(bridges, c.deaths)

    v, t = event.vertex, event.time
    if _has_time(c.deaths.get(v, ()), t):
        raise TimestampCollision(f"death already present at {v!r}, t={t}")
    for e, ts in c.bridges.items():
        if v in e and _has_time(ts, t):
            raise TimestampCollision(f"bridge on {e} shares t={t}")
    deaths = dict(c.deaths)
    times = list(deaths.get(v, ()))
    insort(times, t)
    deaths[v] = tuple(times)
    return Configuration(c.bridges, deaths)


def remove_event(c: Configuration, event: Bridge | Death) -> Configuration:
    if isinstance(event, Bridge):
        e, t = edge_address(*event.edge), event.time
        ts = c.bridges.get(e, ())
        if not _has_time(ts, t):
            raise NotFound(f"no bridge at {e}, t={t}")
        bridges = dict(c.bridges)
        bridges[e] = tuple(x for x in ts if x != t)
        if not bridges[e]:
            del bridges[e]
        return Configuration(bridges, c.deaths)

    v, t = event.vertex, event.time
    ts = c.deaths.get(v, ())
    if not _has_time(ts, t):
        raise NotFound(f"no death at {v!r}, t={t}")
    deaths = dict(c.deaths)
    deaths[v] = tuple(x for x in ts if x != t)
    if not deaths[v]:
        del deaths[v]
    return Configuration(c.bridges, deaths)


def _filter_window(times, intervals) -> list[float]:
    out = []
    for lo, hi in intervals:
        a = bisect_left(times, lo)
        b = bisect_right(times, hi)
        out.extend(times[a:b])
    return out


def restrict(c: Configuration, r: Region) -> Configuration:
    """Free embedding of c into r: every event off r's lines or outside their
    time windows is dropped."""
    deaths = {}
    for v, ivs in r.vertex_lines.items():
        kept = _filter_window(c.deaths.get(v, ()), ivs)
        if kept:
            deaths[v] = tuple(kept)
    bridges = {}
    for e, ivs in r.edge_lines.items():
        kept = _filter_window(c.bridges.get(e, ()), ivs)
        if kept:
            bridges[e] = tuple(kept)
    return Configuration(bridges, deaths)


class ClusterLabeling:
    """Union-find over death-free vertical segments of a region, plus the
    boundary supernode closure.  Built once per configuration; queries are
    O(alpha) finds."""

    def __init__(self, region: Region, d_ptr, d_time, j_ptr, j_lines, j_time, j_dangle):
        self.region = region
        self.layout = region.layout()
        self.d_ptr, self.d_time = d_ptr, d_time
        self.j_ptr, self.j_lines, self.j_time, self.j_dangle = (
            j_ptr, j_lines, j_time, j_dangle,
        )
        lay = self.layout
        (
            self.int_seg_off,
            self.int_d_start,
            self.int_d_count,
            self.line_seg_start,
            self.parent,
            self.k,
        ) = _kernels.build_labeling(
            lay.vwin_ptr, lay.vwin_lo, lay.vwin_hi, lay.bnd_lo, lay.bnd_hi, lay.side,
            d_ptr, d_time, j_ptr, j_lines, j_time, j_dangle,
            lay.periodic, lay.wired,
        )
        self._boundary_mask = None

    @property
    def n_segments(self) -> int:
        return int(self.line_seg_start[-1])

    def _check_point(self, p: SpacePoint) -> int:
        self.region.require_point(p.vertex, p.time)
        i = self.layout.vindex[p.vertex]
        a, b = self.d_ptr[i], self.d_ptr[i + 1]
        pos = np.searchsorted(self.d_time[a:b], p.time)
        if pos < b - a and self.d_time[a + pos] == p.time:
            raise QueryAtDeath(f"({p.vertex!r}, {p.time}) is exactly at a death")
        return i

    def segment_at(self, line: int, t: float) -> int:
        """Segment id at (line index, t); -1 outside every interval.  No
        validity checks: internal fast path."""
        lay = self.layout
        return int(
            _kernels._find_segment(
                lay.vwin_ptr, lay.vwin_lo, lay.vwin_hi,
                self.int_seg_off, self.int_d_start, self.int_d_count, self.d_time,
                lay.periodic, line, t,
            )
        )

    def root_of(self, p: SpacePoint) -> int:
        i = self._check_point(p)
        lay = self.layout
        return int(
            _kernels.point_root(
                lay.vwin_ptr, lay.vwin_lo, lay.vwin_hi,
                self.int_seg_off, self.int_d_start, self.int_d_count, self.d_time,
                self.parent, lay.periodic, i, p.time,
            )
        )

    def connected(self, p: SpacePoint, q: SpacePoint) -> bool:
        return self.root_of(p) == self.root_of(q)

    def boundary_mask(self):
        if self._boundary_mask is None:
            lay = self.layout
            self._boundary_mask = _kernels.boundary_root_mask(
                lay.vwin_ptr, lay.vwin_lo, lay.vwin_hi,
                lay.bnd_lo, lay.bnd_hi, lay.side, lay.target,
                self.int_seg_off, self.int_d_start, self.int_d_count,
                self.line_seg_start, self.d_time, self.parent,
                self.j_ptr, self.j_lines, self.j_time, self.j_dangle,
                lay.periodic, lay.wired,
            )
        return self._boundary_mask

    def reaches_boundary(self, p: SpacePoint) -> bool:
        return bool(self.boundary_mask()[self.root_of(p)])

    def lines_share_component(self, vertices: Iterable[str]) -> bool:
        lay = self.layout
        lines = np.asarray([lay.vindex[v] for v in vertices], dtype=np.int64)
        return bool(
            _kernels.lines_share_component(self.parent, self.line_seg_start, lines)
        )


def flatten_events(c: Configuration, layout: RegionLayout):
    """Flat per-line death arrays and bridge joins for the kernels, with the
    restriction to the region applied."""
    region = layout.region
    d_counts = np.zeros(layout.nv, dtype=np.int64)
    d_times = []
    for i, v in enumerate(layout.vkeys):
        kept = _filter_window(c.deaths.get(v, ()), region.vertex_lines[v])
        d_counts[i] = len(kept)
        d_times.extend(kept)
    d_ptr = np.zeros(layout.nv + 1, dtype=np.int64)
    np.cumsum(d_counts, out=d_ptr[1:])
    d_time = np.asarray(d_times, dtype=np.float64)

    j_time, j_lines, j_ptr, j_dangle = [], [], [0], []
    for ei, e in enumerate(layout.ekeys):
        kept = _filter_window(c.bridges.get(e, ()), region.edge_lines[e])
        u, v = layout.e_u[ei], layout.e_v[ei]
        for t in kept:
            j_time.append(t)
            j_lines.append(u)
            if v >= 0:
                j_lines.append(v)
            j_ptr.append(len(j_lines))
            j_dangle.append(v < 0)
    return (
        d_ptr,
        d_time,
        np.asarray(j_ptr, dtype=np.int64),
        np.asarray(j_lines, dtype=np.int64),
        np.asarray(j_time, dtype=np.float64),
        np.asarray(j_dangle, dtype=np.bool_),
    )


def labeling_from_joins(region: Region, deaths_by_line: dict[str, Iterable[float]], joins):
    """Build a labeling from explicit per-line deaths and join events; each
    join is (time, member vertex addresses, dangle flag).  Used for dual
    configurations, whose joins may touch more than two lines."""
    layout = region.layout()
    d_counts = np.zeros(layout.nv, dtype=np.int64)
    d_times = []
    for i, v in enumerate(layout.vkeys):
        ts = sorted(deaths_by_line.get(v, ()))
        kept = _filter_window(ts, region.vertex_lines[v])
        d_counts[i] = len(kept)
        d_times.extend(kept)
    d_ptr = np.zeros(layout.nv + 1, dtype=np.int64)
    np.cumsum(d_counts, out=d_ptr[1:])

    j_time, j_lines, j_ptr, j_dangle = [], [], [0], []
    for t, members, dangle in joins:
        idx = [layout.vindex[m] for m in members if m in layout.vindex]
        if not idx:
            continue
        j_time.append(t)
        j_lines.extend(idx)
        j_ptr.append(len(j_lines))
        j_dangle.append(dangle)
    return ClusterLabeling(
        region,
        d_ptr,
        np.asarray(d_times, dtype=np.float64),
        np.asarray(j_ptr, dtype=np.int64),
        np.asarray(j_lines, dtype=np.int64),
        np.asarray(j_time, dtype=np.float64),
        np.asarray(j_dangle, dtype=np.bool_),
    )


def count_clusters(c: Configuration, r: Region) -> tuple[int, ClusterLabeling]:
    """Component count of c in r under r's boundary condition."""
    labeling = ClusterLabeling(r, *flatten_events(c, r.layout()))
    return labeling.k, labeling


def connected(c: Configuration, r: Region, p: SpacePoint, q: SpacePoint) -> bool:
    _, lab = count_clusters(c, r)
    return lab.connected(p, q)


def connected_to_boundary(c: Configuration, r: Region, p: SpacePoint) -> bool:
    _, lab = count_clusters(c, r)
    return lab.reaches_boundary(p)


# -- snapshots ---------------------------------------------------------------


def config_to_json(c: Configuration) -> str:
    doc = {
        "deaths": {v: list(ts) for v, ts in sorted(c.deaths.items())},
        "bridges": {"|".join(e): list(ts) for e, ts in sorted(c.bridges.items())},
    }
    return json.dumps(doc, indent=2, sort_keys=True)


def config_from_json(text: str) -> Configuration:
    doc = json.loads(text)
    deaths = {v: tuple(ts) for v, ts in doc["deaths"].items()}
    bridges = {}
    for key, ts in doc["bridges"].items():
        u, v = key.split("|")
        bridges[edge_address(u, v)] = tuple(ts)
    return Configuration(bridges, deaths)
