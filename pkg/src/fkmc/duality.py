"""Configuration duality on the line-hypergraph.

Swapping the two event families of a configuration -- every bridge becomes a
death on the dual site (the primal edge), every death becomes a hyperbridge
across the dual sites incident to its vertex -- maps the random-cluster
measure with parameters (q, lam, delta) and boundary b to the one with
(q, q*delta, lam/q) and boundary 1-b.  On the chain the dual lattice is again
a chain, so dual configurations can be rehosted on the primal coordinates
(site between a and a+1 takes coordinate a) and every primal estimator
applies unchanged.

Finite windows only realize the duality up to boundary corrections, so the
statistical check compares bulk events, keeping a margin of n/4 from every
side of the window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import ClusterLabeling, Configuration, SpacePoint, labeling_from_joins
from .errors import KindMismatch
from .graphs import ChainCoordinates, Edge, StarLikeGraph, edge_address, is_chain_shaped
from .regions import FREE, PERIODIC, WIRED, Region, span_region
from .sampler import RCParams, Schedule, run_chain


@dataclass(frozen=True)
class DualConfiguration:
    """Deaths on sites (one site per primal edge) and hyperbridges on
    hyperedges (one per primal vertex, joining all incident sites)."""

    site_deaths: dict[Edge, tuple[float, ...]]
    hyper_bridges: dict[str, tuple[float, ...]]

    @property
    def n_site_deaths(self) -> int:
        return sum(len(ts) for ts in self.site_deaths.values())

    @property
    def n_hyper_bridges(self) -> int:
        return sum(len(ts) for ts in self.hyper_bridges.values())


def dualize(c: Configuration, g=None) -> DualConfiguration:
    """Swap roles: bridges -> site deaths, deaths -> hyperbridges.  Timestamps
    are preserved exactly; the map is a bijection on event multisets."""
    return DualConfiguration(dict(c.bridges), dict(c.deaths))


def undualize(dc: DualConfiguration) -> Configuration:
    """Inverse of dualize under the canonical identification (the
    line-hypergraph of the line-hypergraph is the original graph)."""
    return Configuration(dict(dc.site_deaths), dict(dc.hyper_bridges))


def dual_parameters(p: RCParams) -> RCParams:
    """(q, lam, delta, b) -> (q, q*delta, lam/q, 1-b)."""
    flip = {FREE: WIRED, WIRED: FREE, PERIODIC: PERIODIC}
    return RCParams(lam=p.q * p.delta, delta=p.lam / p.q, q=p.q, bc=flip[p.bc])


def dual_sites_region(
    g: StarLikeGraph, sites: list[Edge], t_halfheight: float, bc: str = FREE
) -> Region:
    """Region whose vertical lines are dual sites (primal edges), used to run
    cluster queries on general star-like duals.  Joins come from hyperbridges
    and are supplied per labeling, so the region itself carries no edge lines."""
    T = float(t_halfheight)
    return Region(
        kind="dualsites", graph=g, bc=bc, n=0,
        vertex_lines={e: ((-T, T),) for e in sites},
        edge_lines={},
        params={"t_halfheight": T},
    )


def dual_labeling(
    dc: DualConfiguration, g: StarLikeGraph, region: Region
) -> ClusterLabeling:
    """Cluster structure of a dual configuration with polygon semantics: a
    hyperbridge at (v, t) joins the segments of every incident site line at
    time t."""
    joins = []
    for v, times in sorted(dc.hyper_bridges.items()):
        members = g.incident_edges(v)
        for t in times:
            joins.append((t, members, False))
    return labeling_from_joins(region, dc.site_deaths, joins)


# -- chain-shaped host form ----------------------------------------------------


def dual_on_host(c: Configuration, coords: ChainCoordinates) -> Configuration:
    """Rehost the dual of a chain configuration on the primal coordinates:
    site (a, a+1) becomes vertex a, the hyperedge at vertex a becomes edge
    (a-1, a).  Boundary hyperedges whose far line is absent simply produce
    bridges on edges the query region does not carry."""
    deaths: dict[str, tuple[float, ...]] = {}
    for e, ts in c.bridges.items():
        a = coords.edge_coord(e)
        deaths[coords.vertex(a)] = tuple(ts)
    bridges: dict[Edge, tuple[float, ...]] = {}
    for v, ts in c.deaths.items():
        a = coords.coord(v)
        bridges[coords.edge(a - 1)] = tuple(ts)
    return Configuration(bridges, deaths)


def dual_box_region(g: StarLikeGraph, n: int, bc: str, t_halfheight: float | None = None) -> Region:
    """Host region for duals of box(n) samples: lines [-n, n-1], the two
    outward edges included so that primal boundary deaths become protruding
    dual bridges (wired to the supernode under the wired condition)."""
    T = float(n if t_halfheight is None else t_halfheight)
    return span_region(
        g, -n, n - 1, T, bc=bc, include_dangling=True, kind="dualbox"
    )


# -- statistical verification ---------------------------------------------------


@dataclass(frozen=True)
class DualityRow:
    event_id: str
    primal_est: float
    primal_se: float
    dual_est: float
    dual_se: float
    z: float


@dataclass(frozen=True)
class DualityReport:
    params: RCParams
    dual_params: RCParams
    n: int
    rows: tuple[DualityRow, ...]

    @property
    def fraction_within_3(self) -> float:
        ok = sum(1 for r in self.rows if abs(r.z) <= 3)
        return ok / len(self.rows)


def bulk_event_family(coords: ChainCoordinates, n: int) -> list[tuple[str, SpacePoint, SpacePoint]]:
    """Twenty deterministic two-point connection events within the bulk of a
    dual box of size n (margin at least n/4 from every side)."""
    margin = max(1.0, n / 4)
    a_lo, a_hi = int(-n + margin), int(n - 1 - margin)
    t_max = n - margin
    events = []
    specs = [
        (0, 0.0, 0, 0.5), (0, -0.5, 0, 0.5), (0, -1.0, 0, 1.0), (0, 0.0, 0, 2.0),
        (a_lo, 0.0, a_lo, 1.0), (a_hi, 0.0, a_hi, 1.0),
        (0, 0.0, 1, 0.0), (0, 0.0, 2, 0.0), (-1, 0.0, 1, 0.0), (-2, 0.0, 1, 0.0),
        (a_lo, 0.0, a_lo + 1, 0.0), (a_hi - 1, 0.0, a_hi, 0.0),
        (0, 0.0, 1, 0.5), (0, 0.0, 1, 1.0), (-1, -0.5, 1, 0.5), (0, 0.0, 2, 1.0),
        (0, t_max / 2, 0, t_max / 2 + 1), (0, -t_max / 2, 1, -t_max / 2),
        (-1, t_max / 2, 0, t_max / 2), (0, 0.0, 3, 0.0),
    ]
    for i, (a1, t1, a2, t2) in enumerate(specs):
        a1 = min(max(a1, a_lo), a_hi)
        a2 = min(max(a2, a_lo), a_hi)
        events.append(
            (
                f"e{i:02d}_{a1}_{t1}_{a2}_{t2}",
                SpacePoint(coords.vertex(a1), t1),
                SpacePoint(coords.vertex(a2), t2),
            )
        )
    return events


def _estimate_events(labelings, events):
    hits = np.zeros(len(events), dtype=np.int64)
    count = 0
    for lab in labelings:
        count += 1
        for j, (_, p, q) in enumerate(events):
            if lab.connected(p, q):
                hits[j] += 1
    means = hits / count
    ses = np.sqrt(np.maximum(means * (1 - means), 1e-12) / count)
    return means, ses


def duality_check(
    g: StarLikeGraph, p: RCParams, n: int, schedule: Schedule,
    events=None,
) -> DualityReport:
    """Compare bulk connection probabilities of dualized samples at p with
    direct samples at dual_parameters(p); reports one z per event."""
    if not is_chain_shaped(g):
        raise KindMismatch("the statistical duality check runs on the chain only")
    coords = ChainCoordinates(g)
    if events is None:
        events = bulk_event_family(coords, n)
    p_dual = dual_parameters(p)

    from .regions import box_region  # local to avoid cycle at import time
    from .config import count_clusters

    primal_region = box_region(g, n, bc=p.bc)
    host_region = dual_box_region(g, n, bc=p_dual.bc)

    def dualized_labelings():
        for sample in run_chain(primal_region, p, schedule):
            host = dual_on_host(sample.configuration, coords)
            _, lab = count_clusters(host, host_region)
            yield lab

    direct_schedule = Schedule(
        schedule.burn_in, schedule.n_samples, schedule.thinning,
        schedule.seed + 1, schedule.method,
    )

    def direct_labelings():
        for sample in run_chain(host_region, p_dual, direct_schedule):
            yield sample.labeling

    m1, s1 = _estimate_events(dualized_labelings(), events)
    m2, s2 = _estimate_events(direct_labelings(), events)

    rows = []
    for j, (event_id, _, _) in enumerate(events):
        z = (m1[j] - m2[j]) / math.hypot(s1[j], s2[j])
        rows.append(DualityRow(event_id, m1[j], s1[j], m2[j], s2[j], z))
    return DualityReport(p, p_dual, n, tuple(rows))
