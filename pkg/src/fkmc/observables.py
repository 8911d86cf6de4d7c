"""Estimators over sample streams.

Every estimator is a plug-in mean with a binomial/sample standard error, held
in an EstimateCI; accumulators merge exactly, so streams from parallel chains
can be pooled.  The half-plane proxies (wedge and off-box events) evaluate
dual configurations obtained by dualizing primal wired-window samples, which
is how the dual measures are accessed throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import SpacePoint, count_clusters
from .duality import dual_on_host
from .errors import KindMismatch, NoBracketing, NonPositiveEstimate, PointOutsideRegion
from .graphs import ChainCoordinates, StarLikeGraph
from .regions import (
    FREE,
    Region,
    clip_intervals,
    lambda_region,
    wedge_region,
)
from .sampler import RCParams, Schedule, run_chain, spawn_seeds


@dataclass(frozen=True)
class EstimateCI:
    mean: float
    stderr: float
    n_samples: int
    observable: str
    params: dict = field(default_factory=dict)

    def z_against(self, other: "EstimateCI") -> float:
        return (self.mean - other.mean) / math.hypot(self.stderr, other.stderr)


class Accumulator:
    """Streaming mean/variance; merging two accumulators gives exactly the
    pooled estimate."""

    __slots__ = ("n", "total", "total_sq")

    def __init__(self, n: int = 0, total: float = 0.0, total_sq: float = 0.0):
        self.n = n
        self.total = total
        self.total_sq = total_sq

    def add(self, x: float):
        self.n += 1
        self.total += x
        self.total_sq += x * x

    def merge(self, other: "Accumulator") -> "Accumulator":
        return Accumulator(
            self.n + other.n, self.total + other.total, self.total_sq + other.total_sq
        )

    def estimate(self, observable: str, params: dict | None = None) -> EstimateCI:
        if self.n < 2:
            raise ValueError("need at least 2 samples for a standard error")
        mean = self.total / self.n
        var = max(self.total_sq / self.n - mean * mean, 0.0) * self.n / (self.n - 1)
        return EstimateCI(
            mean, math.sqrt(var / self.n), self.n, observable, dict(params or {})
        )


def estimate_event(stream, event, observable: str, params: dict | None = None) -> EstimateCI:
    acc = Accumulator()
    for sample in stream:
        acc.add(1.0 if event(sample) else 0.0)
    return acc.estimate(observable, params)


def estimate_connection(
    stream, r: Region, p: SpacePoint, q: SpacePoint, params: dict | None = None
) -> EstimateCI:
    """Monte Carlo probability that p and q lie in one cluster."""
    r.require_point(*p)
    r.require_point(*q)
    return estimate_event(
        stream,
        lambda sample: sample.labeling.connected(p, q),
        f"conn_{p.vertex}_{p.time}_{q.vertex}_{q.time}",
        params,
    )


def estimate_theta(stream, r: Region, params: dict | None = None) -> EstimateCI:
    """Finite-volume stand-in for the percolation probability: the chance
    that the space-time origin reaches the window boundary."""
    origin = SpacePoint(_origin_vertex(r), 0.0)
    r.require_point(*origin)
    return estimate_event(
        stream,
        lambda sample: sample.labeling.reaches_boundary(origin),
        "theta_proxy",
        params,
    )


def _origin_vertex(r: Region) -> str:
    g = r.graph
    if isinstance(g, StarLikeGraph):
        return g.origin
    return sorted(r.vertex_lines)[0]


# -- exponential decay ---------------------------------------------------------


@dataclass(frozen=True)
class DecayFit:
    alpha_hat: float
    alpha_se: float
    intercept: float
    window: tuple[int, int]
    reduced_chisq: float

    @property
    def looks_exponential(self) -> bool:
        return self.reduced_chisq < 4.0


def fit_decay(estimates: list[tuple[int, EstimateCI]]) -> DecayFit:
    """Weighted least squares of log-mean against n; alpha_hat = -slope."""
    if len(estimates) < 4:
        raise ValueError("need at least 4 sizes for a decay fit")
    ns = np.array([n for n, _ in estimates], dtype=float)
    means = np.array([e.mean for _, e in estimates], dtype=float)
    ses = np.array([e.stderr for _, e in estimates], dtype=float)
    if np.any(means <= 0):
        raise NonPositiveEstimate("cannot fit a decay rate through zero estimates")
    y = np.log(means)
    sigma = ses / means
    w = 1.0 / sigma**2

    sw = w.sum()
    sx = (w * ns).sum()
    sxx = (w * ns * ns).sum()
    sy = (w * y).sum()
    sxy = (w * ns * y).sum()
    det = sw * sxx - sx * sx
    slope = (sw * sxy - sx * sy) / det
    intercept = (sxx * sy - sx * sxy) / det
    slope_var = sw / det

    resid = y - (intercept + slope * ns)
    chisq = float((w * resid**2).sum())
    dof = len(ns) - 2
    return DecayFit(
        alpha_hat=-slope,
        alpha_se=math.sqrt(slope_var),
        intercept=intercept,
        window=(int(ns.min()), int(ns.max())),
        reduced_chisq=chisq / dof,
    )


# -- dual half-plane proxies -----------------------------------------------------


def _dual_clipped_region(r: Region, n: int) -> Region:
    """Dual window of a half-plane box with the band around the size-n half
    box removed: dual lines 0..2n keep only |t| > n, dual edges crossing the
    box are forbidden the same way."""
    g = r.graph
    coords = ChainCoordinates(g)
    width = r.params["width"]
    hh = r.params["halfheight"]
    if hh <= 2 * n + 1:
        raise PointOutsideRegion("window is not tall enough for the off-box points")
    band = (-float(n), float(n))
    vlines = {}
    for j in range(width):
        full = ((-hh, hh),)
        vlines[coords.vertex(j)] = clip_intervals(full, band) if j <= 2 * n else full
    elines = {}
    for j in range(width - 1):
        full = ((-hh, hh),)
        elines[coords.edge(j)] = (
            clip_intervals(full, band) if j <= 2 * n - 1 else full
        )
    return Region(
        kind="dualclip", graph=g, bc=FREE, n=n,
        vertex_lines=vlines, edge_lines=elines,
        time_boundary=False, params={"n": n, "width": width, "halfheight": hh},
    )


def off_box_connection(stream, r: Region, n: int, params: dict | None = None) -> EstimateCI:
    """Probability, under the dual of the sampled law, that the two points on
    the first dual line at heights +-(2n+1) are connected while avoiding the
    size-n half box."""
    if r.kind != "halfbox":
        raise KindMismatch("off-box events need a half-plane box window")
    coords = ChainCoordinates(r.graph)
    dual_region = _dual_clipped_region(r, n)
    p = SpacePoint(coords.vertex(0), 2 * n + 1.0)
    q = SpacePoint(coords.vertex(0), -(2 * n + 1.0))
    dual_region.require_point(*p)

    def event(sample):
        host = dual_on_host(sample.configuration, coords)
        _, lab = count_clusters(host, dual_region)
        return lab.connected(p, q)

    return estimate_event(stream, event, f"offbox_n{n}", params)


def wedge_connection(stream, r: Region, params: dict | None = None) -> EstimateCI:
    """Probability, under the dual of the sampled law, that the wedge corner
    reaches the truncation edge inside the wedge."""
    if r.kind != "wedge":
        raise KindMismatch("wedge events need a wedge region")
    coords = ChainCoordinates(r.graph)
    origin = SpacePoint(coords.vertex(0), 0.0)

    def event(sample):
        host = dual_on_host(sample.configuration, coords)
        _, lab = count_clusters(host, r)
        return lab.reaches_boundary(origin)

    return estimate_event(stream, event, f"wedge_a{r.params['a_max']}", params)


# -- critical-ratio scan ----------------------------------------------------------


def crossing_tips(r: Region) -> list[str]:
    """For a ball window on a star-like graph: the outermost vertex of each
    ray inside the window.  The crossing event asks for two distinct rays
    whose outermost lines are connected."""
    g = r.graph
    if not isinstance(g, StarLikeGraph) or r.kind != "lambda":
        raise KindMismatch("the crossing event is defined on ball windows")
    n = r.params["n"]
    tips = []
    for ray in g.rays:
        reach = n - g.distance(ray.attach)
        if reach >= 1:
            tips.append(g.ray_vertex(ray.id, reach))
    if len(tips) < 2:
        raise KindMismatch("crossing needs at least two rays inside the window")
    return tips


def crossing_probability(stream, r: Region, params: dict | None = None) -> EstimateCI:
    tips = crossing_tips(r)
    return estimate_event(
        stream,
        lambda sample: sample.labeling.lines_share_component(tips),
        f"crossing_n{r.params['n']}",
        params,
    )


@dataclass(frozen=True)
class ScanRow:
    ratio: float
    n: int
    mean: float
    stderr: float
    n_samples: int


@dataclass(frozen=True)
class ScanResult:
    rho_hat: float
    crossings: tuple[float, ...]
    bracket: tuple[float, float]
    rows: tuple[ScanRow, ...]


def _pair_crossing(ratios, p_small, p_big):
    """First grid cell where the larger-size curve overtakes the smaller one,
    located by linear interpolation of the difference."""
    d = np.asarray(p_big) - np.asarray(p_small)
    for j in range(len(d) - 1):
        if d[j] < 0 <= d[j + 1]:
            frac = -d[j] / (d[j + 1] - d[j])
            return ratios[j] + frac * (ratios[j + 1] - ratios[j])
    raise NoBracketing("size curves do not cross on the ratio grid")


def scan_critical(
    g: StarLikeGraph,
    q: float,
    ratios: list[float],
    sizes: list[int],
    schedule: Schedule,
    delta: float = 1.0,
    bc: str = FREE,
) -> ScanResult:
    """Locate the critical coupling ratio by the crossing of arm-to-arm
    connection curves at successive window sizes."""
    if len(sizes) < 3 or len(ratios) < 5:
        raise ValueError("need at least 3 sizes and 5 ratio grid points")
    ratios = sorted(ratios)
    sizes = sorted(sizes)
    seeds = spawn_seeds(schedule.seed, len(ratios) * len(sizes))
    rows = []
    table = {}
    idx = 0
    for n in sizes:
        region = lambda_region(g, n, bc=bc)
        for ratio in ratios:
            params = RCParams(lam=ratio * delta, delta=delta, q=q, bc=bc)
            sched = Schedule(
                schedule.burn_in, schedule.n_samples, schedule.thinning,
                seeds[idx], schedule.method,
            )
            idx += 1
            est = crossing_probability(
                run_chain(region, params, sched), region,
                {"ratio": ratio, "n": n},
            )
            rows.append(ScanRow(ratio, n, est.mean, est.stderr, est.n_samples))
            table[(ratio, n)] = est.mean

    crossings = []
    for n_small, n_big in zip(sizes, sizes[1:]):
        p_small = [table[(r, n_small)] for r in ratios]
        p_big = [table[(r, n_big)] for r in ratios]
        crossings.append(_pair_crossing(ratios, p_small, p_big))
    rho_hat = float(np.mean(crossings))
    return ScanResult(
        rho_hat=rho_hat,
        crossings=tuple(crossings),
        bracket=(min(crossings), max(crossings)),
        rows=tuple(rows),
    )


# -- positive association -----------------------------------------------------------


def association_gap(stream, event_a, event_b, n_batches: int = 20):
    """Batch-mean estimate of P(A and B) - P(A)P(B) with its standard error;
    positive association makes the gap nonnegative for increasing events."""
    a_hits, b_hits, ab_hits = [], [], []
    for sample in stream:
        hit_a = 1.0 if event_a(sample) else 0.0
        hit_b = 1.0 if event_b(sample) else 0.0
        a_hits.append(hit_a)
        b_hits.append(hit_b)
        ab_hits.append(hit_a * hit_b)
    a = np.array_split(np.asarray(a_hits), n_batches)
    b = np.array_split(np.asarray(b_hits), n_batches)
    ab = np.array_split(np.asarray(ab_hits), n_batches)
    gaps = np.array(
        [abi.mean() - ai.mean() * bi.mean() for ai, bi, abi in zip(a, b, ab)]
    )
    return float(gaps.mean()), float(gaps.std(ddof=1) / math.sqrt(len(gaps)))
