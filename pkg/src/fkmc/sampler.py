"""Samplers for the continuum random-cluster measure on a region.

Three lanes:

* direct    -- independent Poisson configurations (exact when q = 1).
* metropolis-- birth/death Metropolis-Hastings with stationary density
               proportional to q^k against the Poisson measure.  Move menu is
               uniform over {insert bridge, delete bridge, insert death,
               delete death}; insertions propose a uniform location on the
               total line length.
* sw        -- q = 2 cluster sweep: color components +-1 uniformly, keep the
               deaths where the coloring flips, then resample deaths and
               bridges as Poisson processes thinned by the spin function
               (bridges need agreeing endpoints).  One sweep refreshes every
               event and mixes far faster than single moves.

All randomness flows through an injected numpy Generator; chains seeded from
the same 64-bit seed reproduce their sample streams exactly.
"""

from __future__ import annotations

from bisect import bisect_left, insort
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .config import ClusterLabeling, Configuration
from .errors import UnsupportedQ
from .graphs import Edge
from .regions import FREE, PERIODIC, WIRED, Region

MOVE_NAMES = ("insert_bridge", "delete_bridge", "insert_death", "delete_death")


@dataclass(frozen=True)
class RCParams:
    lam: float
    delta: float
    q: float = 1.0
    bc: str = FREE

    def __post_init__(self):
        if self.lam < 0 or self.delta <= 0 or self.q < 1:
            raise ValueError("need lam >= 0, delta > 0, q >= 1")

    @property
    def ratio(self) -> float:
        return self.lam / self.delta


@dataclass(frozen=True)
class Schedule:
    burn_in: int
    n_samples: int
    thinning: int
    seed: int
    method: str = "auto"

    def __post_init__(self):
        if self.burn_in < 0 or self.thinning < 0 or self.n_samples < 0:
            raise ValueError("burn_in, thinning, n_samples must be >= 0")


def default_schedule(region: Region, n_samples: int, seed: int, method: str = "auto") -> Schedule:
    """Conservative defaults: Metropolis budgets scale with the number of
    lines; sweep and direct methods need far less."""
    lines = region.n_lines
    if method in ("metropolis", "auto"):
        return Schedule(10_000 * lines, n_samples, lines, seed, method)
    if method == "sw":
        return Schedule(200, n_samples, 2, seed, method)
    return Schedule(0, n_samples, 1, seed, method)


def resolve_method(method: str, q: float) -> str:
    if method != "auto":
        return method
    if q == 1:
        return "direct"
    if q == 2:
        return "sw"
    return "metropolis"


# -- acceptance probabilities (unit-testable pieces of the MH kernel) --------


def insert_acceptance(rate: float, total_len: float, n_current: int, q: float, dk: int) -> float:
    return min(1.0, rate * total_len / (n_current + 1) * q**dk)


def delete_acceptance(rate: float, total_len: float, n_current: int, q: float, dk: int) -> float:
    if rate == 0.0:
        return 1.0  # deleting from a zero-rate line is always an improvement
    return min(1.0, n_current / (rate * total_len) * q**dk)


# -- flat array form ---------------------------------------------------------


class FlatConfig:
    """Per-line sorted flat arrays; the sampler-internal twin of Configuration."""

    __slots__ = ("d_line", "d_time", "b_eline", "b_time")

    def __init__(self, d_line, d_time, b_eline, b_time):
        self.d_line = d_line
        self.d_time = d_time
        self.b_eline = b_eline
        self.b_time = b_time

    @classmethod
    def empty(cls) -> "FlatConfig":
        z = np.zeros(0, dtype=np.int64)
        f = np.zeros(0, dtype=np.float64)
        return cls(z, f, z.copy(), f.copy())

    def death_ptr(self, nv: int):
        counts = np.bincount(self.d_line, minlength=nv)
        ptr = np.zeros(nv + 1, dtype=np.int64)
        np.cumsum(counts, out=ptr[1:])
        return ptr

    def to_configuration(self, layout) -> Configuration:
        deaths: dict[str, tuple[float, ...]] = {}
        ptr = self.death_ptr(layout.nv)
        for i, v in enumerate(layout.vkeys):
            if ptr[i + 1] > ptr[i]:
                deaths[v] = tuple(self.d_time[ptr[i] : ptr[i + 1]])
        bridges: dict[Edge, tuple[float, ...]] = {}
        counts = np.bincount(self.b_eline, minlength=layout.ne)
        eptr = np.zeros(layout.ne + 1, dtype=np.int64)
        np.cumsum(counts, out=eptr[1:])
        for i, e in enumerate(layout.ekeys):
            if eptr[i + 1] > eptr[i]:
                bridges[e] = tuple(self.b_time[eptr[i] : eptr[i + 1]])
        return Configuration(bridges, deaths)

    @classmethod
    def from_configuration(cls, c: Configuration, layout) -> "FlatConfig":
        d_line, d_time = [], []
        for i, v in enumerate(layout.vkeys):
            for t in c.deaths.get(v, ()):
                d_line.append(i)
                d_time.append(t)
        b_eline, b_time = [], []
        for i, e in enumerate(layout.ekeys):
            for t in c.bridges.get(e, ()):
                b_eline.append(i)
                b_time.append(t)
        return cls(
            np.asarray(d_line, dtype=np.int64),
            np.asarray(d_time, dtype=np.float64),
            np.asarray(b_eline, dtype=np.int64),
            np.asarray(b_time, dtype=np.float64),
        )


def _sort_by_line(line, time):
    order = np.lexsort((time, line))
    return line[order], time[order]


def _interval_rates(lo, hi, rate):
    return rate * (hi - lo)


def _edge_rate_mask(layout, zero_bridge_edges):
    """Per edge-interval rate multiplier (0 for suppressed edges)."""
    mult = np.ones(len(layout.ewin_lo), dtype=np.float64)
    if zero_bridge_edges:
        for ei, e in enumerate(layout.ekeys):
            if e in zero_bridge_edges:
                mult[layout.ewin_ptr[ei] : layout.ewin_ptr[ei + 1]] = 0.0
    return mult


def draw_flat_poisson(layout, lam, delta, rng, edge_mult=None) -> FlatConfig:
    """Vectorized independent Poisson draw over all line intervals."""
    vlens = layout.vwin_hi - layout.vwin_lo
    vint_line = np.repeat(np.arange(layout.nv), np.diff(layout.vwin_ptr))
    counts = rng.poisson(delta * vlens)
    total = int(counts.sum())
    d_line = np.repeat(vint_line, counts)
    d_time = np.repeat(layout.vwin_lo, counts) + rng.random(total) * np.repeat(vlens, counts)

    elens = layout.ewin_hi - layout.ewin_lo
    eint_line = np.repeat(np.arange(layout.ne), np.diff(layout.ewin_ptr))
    erate = lam * elens if edge_mult is None else lam * elens * edge_mult
    counts = rng.poisson(erate)
    total = int(counts.sum())
    b_eline = np.repeat(eint_line, counts)
    b_time = np.repeat(layout.ewin_lo, counts) + rng.random(total) * np.repeat(elens, counts)

    d_line, d_time = _sort_by_line(d_line, d_time)
    b_eline, b_time = _sort_by_line(b_eline, b_time)
    return FlatConfig(d_line, d_time, b_eline, b_time)


def _has_adjacent_duplicate(line, time) -> bool:
    if len(time) < 2:
        return False
    same = (line[1:] == line[:-1]) & (time[1:] == time[:-1])
    return bool(same.any())


def sample_poisson(
    r: Region, params: RCParams, rng: np.random.Generator,
    zero_bridge_edges: frozenset[Edge] = frozenset(),
) -> Configuration:
    """One draw from the free measure (independent Poisson processes);
    coincident timestamps on a line are resampled."""
    layout = r.layout()
    mult = _edge_rate_mask(layout, zero_bridge_edges)
    while True:
        flat = draw_flat_poisson(layout, params.lam, params.delta, rng, mult)
        if not (
            _has_adjacent_duplicate(flat.d_line, flat.d_time)
            or _has_adjacent_duplicate(flat.b_eline, flat.b_time)
        ):
            return flat.to_configuration(layout)


def labeling_of_flat(region: Region, flat: FlatConfig) -> ClusterLabeling:
    layout = region.layout()
    d_ptr = flat.death_ptr(layout.nv)
    j_time = flat.b_time
    arity = np.where(layout.e_v[flat.b_eline] >= 0, 2, 1)
    j_ptr = np.zeros(len(j_time) + 1, dtype=np.int64)
    np.cumsum(arity, out=j_ptr[1:])
    j_lines = np.empty(int(j_ptr[-1]), dtype=np.int64)
    starts = j_ptr[:-1]
    j_lines[starts] = layout.e_u[flat.b_eline]
    two = arity == 2
    j_lines[starts[two] + 1] = layout.e_v[flat.b_eline[two]]
    j_dangle = ~two
    return ClusterLabeling(region, d_ptr, flat.d_time, j_ptr, j_lines, j_time, j_dangle)


# -- sample stream ------------------------------------------------------------


class Sample:
    """One emitted configuration with its cluster labeling (built lazily for
    paths that never query it)."""

    def __init__(self, region: Region, flat: FlatConfig, labeling=None, index=0):
        self.region = region
        self._flat = flat
        self._labeling = labeling
        self.index = index

    @property
    def configuration(self) -> Configuration:
        return self._flat.to_configuration(self.region.layout())

    @property
    def flat(self) -> FlatConfig:
        return self._flat

    @property
    def labeling(self) -> ClusterLabeling:
        if self._labeling is None:
            self._labeling = labeling_of_flat(self.region, self._flat)
        return self._labeling

    @property
    def k(self) -> int:
        return self.labeling.k


@dataclass
class ChainDiagnostics:
    proposed: dict = field(default_factory=lambda: {m: 0 for m in MOVE_NAMES})
    accepted: dict = field(default_factory=lambda: {m: 0 for m in MOVE_NAMES})
    k_trace: list = field(default_factory=list)

    def acceptance_rates(self) -> dict:
        return {
            m: (self.accepted[m] / self.proposed[m] if self.proposed[m] else float("nan"))
            for m in MOVE_NAMES
        }


# -- Metropolis chain ---------------------------------------------------------


class MetropolisChain:
    """Single birth/death MH chain.  Holds its configuration as per-line
    sorted lists; the cluster labeling is rebuilt only when the segment
    structure changed and q != 1 (at q = 1 the acceptance has no q^dk factor,
    so no labeling is kept at all)."""

    def __init__(
        self, region: Region, params: RCParams, rng: np.random.Generator,
        zero_bridge_edges: frozenset[Edge] = frozenset(),
    ):
        if params.bc != region.bc:
            raise ValueError("params.bc and region.bc disagree")
        self.region = region
        self.params = params
        self.rng = rng
        self.layout = region.layout()
        self.diagnostics = ChainDiagnostics()

        self.deaths: list[list[float]] = [[] for _ in range(self.layout.nv)]
        self.bridges: list[list[float]] = [[] for _ in range(self.layout.ne)]
        self.n_deaths = 0
        self.n_bridges = 0
        self.step_count = 0

        self._v_intervals = [
            (i, lo, hi)
            for i in range(self.layout.nv)
            for lo, hi in zip(
                self.layout.vwin_lo[self.layout.vwin_ptr[i] : self.layout.vwin_ptr[i + 1]],
                self.layout.vwin_hi[self.layout.vwin_ptr[i] : self.layout.vwin_ptr[i + 1]],
            )
        ]
        allowed = [
            (i, lo, hi)
            for i in range(self.layout.ne)
            for lo, hi in zip(
                self.layout.ewin_lo[self.layout.ewin_ptr[i] : self.layout.ewin_ptr[i + 1]],
                self.layout.ewin_hi[self.layout.ewin_ptr[i] : self.layout.ewin_ptr[i + 1]],
            )
            if self.layout.ekeys[i] not in zero_bridge_edges
        ]
        self._e_intervals = allowed
        self.L_D = sum(hi - lo for _, lo, hi in self._v_intervals)
        self.L_B = sum(hi - lo for _, lo, hi in self._e_intervals)
        self._v_cum = np.cumsum([hi - lo for _, lo, hi in self._v_intervals])
        self._e_cum = np.cumsum([hi - lo for _, lo, hi in self._e_intervals])

        self._labeling: ClusterLabeling | None = None
        self._k: int | None = None

    # -- configuration access

    def flat(self) -> FlatConfig:
        d_line = np.repeat(
            np.arange(self.layout.nv), [len(x) for x in self.deaths]
        )
        d_time = np.asarray([t for x in self.deaths for t in x], dtype=np.float64)
        b_eline = np.repeat(
            np.arange(self.layout.ne), [len(x) for x in self.bridges]
        )
        b_time = np.asarray([t for x in self.bridges for t in x], dtype=np.float64)
        return FlatConfig(d_line, d_time, b_eline, b_time)

    def labeling(self) -> ClusterLabeling:
        if self._labeling is None:
            self._labeling = labeling_of_flat(self.region, self.flat())
            self._k = self._labeling.k
        return self._labeling

    @property
    def k(self) -> int:
        if self._k is None:
            self.labeling()
        return self._k

    def _invalidate(self):
        self._labeling = None
        self._k = None

    def set_configuration(self, c: Configuration):
        from .config import restrict

        c = restrict(c, self.region)
        self.deaths = [list(c.deaths.get(v, ())) for v in self.layout.vkeys]
        self.bridges = [list(c.bridges.get(e, ())) for e in self.layout.ekeys]
        self.n_deaths = sum(len(x) for x in self.deaths)
        self.n_bridges = sum(len(x) for x in self.bridges)
        self._invalidate()

    # -- dk evaluation

    def _k_if(self, deaths=None, bridges=None) -> int:
        saved_d, saved_b = self.deaths, self.bridges
        if deaths is not None:
            self.deaths = deaths
        if bridges is not None:
            self.bridges = bridges
        lab = labeling_of_flat(self.region, self.flat())
        self.deaths, self.bridges = saved_d, saved_b
        return lab.k

    def _dk_insert_bridge(self, eline: int, t: float) -> int:
        lab = self.labeling()
        lay = self.layout
        u, v = lay.e_u[eline], lay.e_v[eline]
        ru = int(
            _kernels.point_root(
                lay.vwin_ptr, lay.vwin_lo, lay.vwin_hi,
                lab.int_seg_off, lab.int_d_start, lab.int_d_count, lab.d_time,
                lab.parent, lay.periodic, u, t,
            )
        )
        if v < 0:
            if self.region.bc != WIRED:
                return 0
            rv = _find_root(lab.parent, len(lab.parent) - 1)
        else:
            rv = int(
                _kernels.point_root(
                    lay.vwin_ptr, lay.vwin_lo, lay.vwin_hi,
                    lab.int_seg_off, lab.int_d_start, lab.int_d_count, lab.d_time,
                    lab.parent, lay.periodic, v, t,
                )
            )
        return -1 if ru != rv else 0

    # -- proposals

    def _locate(self, cum, intervals, u: float):
        idx = int(np.searchsorted(cum, u, side="right"))
        idx = min(idx, len(intervals) - 1)
        line, lo, hi = intervals[idx]
        prev = cum[idx - 1] if idx > 0 else 0.0
        return line, lo + (u - prev)

    def step(self):
        """One Metropolis-Hastings move; rejected moves leave the state unchanged."""
        rng = self.rng
        move = MOVE_NAMES[int(rng.integers(4))]
        self.diagnostics.proposed[move] += 1
        self.step_count += 1
        q = self.params.q

        if move == "insert_bridge":
            if self.L_B == 0:
                return self
            eline, t = self._locate(self._e_cum, self._e_intervals, rng.random() * self.L_B)
            dk = self._dk_insert_bridge(eline, t) if q != 1 else 0
            if rng.random() < insert_acceptance(self.params.lam, self.L_B, self.n_bridges, q, dk):
                insort(self.bridges[eline], t)
                self.n_bridges += 1
                self.diagnostics.accepted[move] += 1
                if q != 1 and self._labeling is not None:
                    self._apply_bridge_union(eline, t, dk)
            return self

        if move == "delete_bridge":
            if self.n_bridges == 0:
                return self
            flat_idx = int(rng.integers(self.n_bridges))
            eline, pos = self._nth_event(self.bridges, flat_idx)
            t = self.bridges[eline][pos]
            if q != 1:
                trial = [list(x) for x in self.bridges]
                trial[eline].pop(pos)
                dk = self._k_if(bridges=trial) - self.k
            else:
                dk = 0
            if rng.random() < delete_acceptance(self.params.lam, self.L_B, self.n_bridges, q, dk):
                self.bridges[eline].pop(pos)
                self.n_bridges -= 1
                self.diagnostics.accepted[move] += 1
                self._invalidate()
            return self

        if move == "insert_death":
            if self.L_D == 0:
                return self
            vline, t = self._locate(self._v_cum, self._v_intervals, rng.random() * self.L_D)
            if q != 1:
                trial = [list(x) for x in self.deaths]
                insort(trial[vline], t)
                dk = self._k_if(deaths=trial) - self.k
            else:
                dk = 0
            if rng.random() < insert_acceptance(self.params.delta, self.L_D, self.n_deaths, q, dk):
                insort(self.deaths[vline], t)
                self.n_deaths += 1
                self.diagnostics.accepted[move] += 1
                self._invalidate()
            return self

        # delete_death
        if self.n_deaths == 0:
            return self
        flat_idx = int(rng.integers(self.n_deaths))
        vline, pos = self._nth_event(self.deaths, flat_idx)
        t = self.deaths[vline][pos]
        if q != 1:
            lab = self.labeling()
            left, right = lab_segments_at_death(lab, vline, t)
            dk = -1 if _find_root(lab.parent, left) != _find_root(lab.parent, right) else 0
        else:
            dk = 0
        if rng.random() < delete_acceptance(self.params.delta, self.L_D, self.n_deaths, q, dk):
            self.deaths[vline].pop(pos)
            self.n_deaths -= 1
            self.diagnostics.accepted[move] += 1
            self._invalidate()
        return self

    def _apply_bridge_union(self, eline: int, t: float, dk: int):
        """Bridge insertion keeps the segment structure, so the labeling stays
        valid after one in-place union."""
        lab = self._labeling
        lay = self.layout
        u, v = lay.e_u[eline], lay.e_v[eline]
        su = lab.segment_at(u, t)
        if v >= 0:
            sv = lab.segment_at(v, t)
        elif self.region.bc == WIRED:
            sv = len(lab.parent) - 1
        else:
            sv = -1
        if su >= 0 and sv >= 0:
            _union_roots(lab.parent, su, sv)
        self._k = self._k + dk

    def _nth_event(self, per_line: list[list[float]], idx: int):
        for line, times in enumerate(per_line):
            if idx < len(times):
                return line, idx
            idx -= len(times)
        raise IndexError("event index out of range")


def _find_root(parent, x):
    x = int(x)
    while parent[x] != x:
        x = int(parent[x])
    return x


def _union_roots(parent, a, b):
    ra, rb = _find_root(parent, a), _find_root(parent, b)
    if ra != rb:
        parent[rb] = ra


def lab_segments_at_death(lab: ClusterLabeling, line: int, t: float):
    """Segment ids immediately below and above an existing death (line, t)."""
    lay = lab.layout
    for kk in range(lay.vwin_ptr[line], lay.vwin_ptr[line + 1]):
        if lay.vwin_lo[kk] <= t <= lay.vwin_hi[kk]:
            d0, cnt = lab.int_d_start[kk], lab.int_d_count[kk]
            local = int(np.searchsorted(lab.d_time[d0 : d0 + cnt], t))
            if lay.periodic:
                left = lab.int_seg_off[kk] + (local - 1) % cnt
                right = lab.int_seg_off[kk] + local % cnt
            else:
                left = lab.int_seg_off[kk] + local
                right = left + 1
            return int(left), int(right)
    raise ValueError("death not inside any interval")


# -- q = 2 cluster sweep ------------------------------------------------------


class SweepChain:
    """Cluster-sweep chain at q = 2.  Each sweep builds the labeling of the
    current configuration (reused for measurement), colors the clusters, and
    resamples every event by Poisson thinning against the spin function."""

    def __init__(
        self, region: Region, params: RCParams, rng: np.random.Generator,
        zero_bridge_edges: frozenset[Edge] = frozenset(),
    ):
        if params.q != 2:
            raise UnsupportedQ("the cluster sweep is specific to q = 2")
        if params.bc != region.bc:
            raise ValueError("params.bc and region.bc disagree")
        self.region = region
        self.params = params
        self.rng = rng
        self.layout = region.layout()
        self.diagnostics = ChainDiagnostics()
        self._edge_mult = _edge_rate_mask(self.layout, zero_bridge_edges)
        self.flat = FlatConfig.empty()
        self._labeling: ClusterLabeling | None = None

    def labeling(self) -> ClusterLabeling:
        if self._labeling is None:
            self._labeling = labeling_of_flat(self.region, self.flat)
        return self._labeling

    def sweep(self):
        lab = self.labeling()
        lay = self.layout
        rng = self.rng

        nseg = lab.n_segments
        colors = rng.random(nseg + 1)

        candidates = draw_flat_poisson(
            lay, self.params.lam, self.params.delta, rng, self._edge_mult
        )
        d_ptr = self.flat.death_ptr(lay.nv)
        keep_death, keep_bridge = _kernels.sweep_masks(
            lay.vwin_ptr, lay.vwin_lo, lay.vwin_hi,
            lab.int_seg_off, lab.int_d_start, lab.int_d_count,
            d_ptr, lab.d_time, lab.parent,
            colors,
            candidates.b_eline, candidates.b_time, lay.e_u, lay.e_v,
            lay.periodic, lay.wired,
        )

        d_line = np.concatenate([self.flat.d_line[keep_death], candidates.d_line])
        d_time = np.concatenate([self.flat.d_time[keep_death], candidates.d_time])
        d_line, d_time = _sort_by_line(d_line, d_time)
        self.flat = FlatConfig(
            d_line, d_time,
            candidates.b_eline[keep_bridge], candidates.b_time[keep_bridge],
        )
        self._labeling = None
        return self


# -- chain runner -------------------------------------------------------------


class ChainRun:
    """One-shot iterable over the samples of a configured chain."""

    def __init__(self, region, params, schedule, zero_bridge_edges=frozenset()):
        self.region = region
        self.params = params
        self.schedule = schedule
        self.method = resolve_method(schedule.method, params.q)
        self.zero_bridge_edges = zero_bridge_edges
        self.diagnostics: ChainDiagnostics | None = None

    def manifest(self) -> dict:
        return {
            "params": {
                "lambda": self.params.lam,
                "delta": self.params.delta,
                "q": self.params.q,
                "bc": self.params.bc,
            },
            "region": {
                "kind": self.region.kind,
                "n": self.region.n,
                "bc": self.region.bc,
                **self.region.params,
            },
            "schedule": {
                "burn_in": self.schedule.burn_in,
                "n_samples": self.schedule.n_samples,
                "thinning": self.schedule.thinning,
                "method": self.method,
            },
            "seed": self.schedule.seed,
        }

    def __iter__(self):
        rng = np.random.default_rng(self.schedule.seed)
        sched = self.schedule
        if self.method == "direct":
            if self.params.q != 1:
                raise UnsupportedQ("direct sampling is exact only at q = 1")
            layout = self.region.layout()
            mult = _edge_rate_mask(layout, self.zero_bridge_edges)
            diag = ChainDiagnostics()
            self.diagnostics = diag
            for i in range(sched.n_samples):
                flat = draw_flat_poisson(layout, self.params.lam, self.params.delta, rng, mult)
                sample = Sample(self.region, flat, index=i)
                diag.k_trace.append(sample.k)
                yield sample
            return

        if self.method == "sw":
            chain = SweepChain(self.region, self.params, rng, self.zero_bridge_edges)
            self.diagnostics = chain.diagnostics
            for _ in range(sched.burn_in):
                chain.sweep()
            for i in range(sched.n_samples):
                # measure-then-update: the labeling built for this sweep
                # describes the configuration being emitted
                sample = Sample(self.region, chain.flat, chain.labeling(), index=i)
                chain.diagnostics.k_trace.append(sample.labeling.k)
                yield sample
                for _ in range(max(sched.thinning, 1)):
                    chain.sweep()
            return

        if self.method == "metropolis":
            chain = MetropolisChain(self.region, self.params, rng, self.zero_bridge_edges)
            self.diagnostics = chain.diagnostics
            for _ in range(sched.burn_in):
                chain.step()
            for i in range(sched.n_samples):
                sample = Sample(self.region, chain.flat(), index=i)
                chain.diagnostics.k_trace.append(sample.k if self.params.q != 1 else -1)
                yield sample
                for _ in range(max(sched.thinning, 1)):
                    chain.step()
            return

        raise ValueError(f"unknown method {self.method!r}")


def run_chain(
    r: Region, params: RCParams, schedule: Schedule,
    zero_bridge_edges: frozenset[Edge] = frozenset(),
) -> ChainRun:
    """Deterministic-by-seed sample stream from the finite-volume measure."""
    return ChainRun(r, params, schedule, zero_bridge_edges)


def mcmc_step(chain: MetropolisChain) -> MetropolisChain:
    """Advance one Metropolis-Hastings birth/death move."""
    return chain.step()


def sw_sweep(chain: SweepChain) -> SweepChain:
    """Advance one q = 2 cluster sweep."""
    return chain.sweep()


def spawn_seeds(seed: int, n: int) -> list[int]:
    """Independent 64-bit substream seeds for parallel chains."""
    ss = np.random.SeedSequence(seed)
    return [int(s.generate_state(1, dtype=np.uint64)[0]) for s in ss.spawn(n)]
