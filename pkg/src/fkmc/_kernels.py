"""Numba kernels for segment decomposition, union-find labeling, and the
q=2 cluster-sweep resampling filter.

Conventions shared by every kernel:

* Lines are the region layout's vertex lines, indexed 0..nv-1; their time
  intervals are flattened CSR-style (vwin_ptr/vwin_lo/vwin_hi).
* Deaths are per-line sorted times (d_ptr/d_time), already restricted to the
  line intervals.
* Joins are bridge-like events: j_time[i] with member lines
  j_lines[j_ptr[i]:j_ptr[i+1]]; a member whose line does not cover the time
  contributes nothing.  j_dangle marks joins on edges whose far endpoint is
  outside the region.
* Segment ids are dense, per line and interval in time order; node nseg is
  the wired-boundary supernode.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


@njit(cache=True)
def _union(parent, a, b):
    ra = _find(parent, a)
    rb = _find(parent, b)
    if ra != rb:
        parent[rb] = ra


@njit(cache=True)
def _segment_tables(vwin_ptr, vwin_lo, vwin_hi, d_ptr, d_time, periodic):
    """Per-interval segment offsets and death ranges, plus per-line segment
    starts.  Returns (int_seg_off, int_d_start, int_d_count, line_seg_start,
    nseg)."""
    nv = len(vwin_ptr) - 1
    nint = len(vwin_lo)
    int_seg_off = np.empty(nint, dtype=np.int64)
    int_d_start = np.empty(nint, dtype=np.int64)
    int_d_count = np.empty(nint, dtype=np.int64)
    line_seg_start = np.empty(nv + 1, dtype=np.int64)
    nseg = 0
    for i in range(nv):
        line_seg_start[i] = nseg
        dpos = d_ptr[i]
        dend = d_ptr[i + 1]
        for k in range(vwin_ptr[i], vwin_ptr[i + 1]):
            int_d_start[k] = dpos
            cnt = 0
            while dpos < dend and d_time[dpos] <= vwin_hi[k]:
                dpos += 1
                cnt += 1
            int_d_count[k] = cnt
            int_seg_off[k] = nseg
            if periodic:
                nseg += cnt if cnt > 0 else 1
            else:
                nseg += cnt + 1
    line_seg_start[nv] = nseg
    return int_seg_off, int_d_start, int_d_count, line_seg_start, nseg


@njit(cache=True)
def _find_segment(
    vwin_ptr, vwin_lo, vwin_hi,
    int_seg_off, int_d_start, int_d_count, d_time,
    periodic, line, t,
):
    """Segment id containing (line, t), or -1 if t is outside every interval."""
    for k in range(vwin_ptr[line], vwin_ptr[line + 1]):
        if vwin_lo[k] <= t <= vwin_hi[k]:
            d0 = int_d_start[k]
            cnt = int_d_count[k]
            pos = np.searchsorted(d_time[d0 : d0 + cnt], t)
            if periodic and cnt > 0:
                return int_seg_off[k] + (pos - 1) % cnt
            return int_seg_off[k] + pos
    return np.int64(-1)


@njit(cache=True)
def build_labeling(
    vwin_ptr, vwin_lo, vwin_hi, bnd_lo, bnd_hi, side,
    d_ptr, d_time,
    j_ptr, j_lines, j_time, j_dangle,
    periodic, wired,
):
    """Segment decomposition plus union-find closure; k counts distinct roots
    over segment nodes (a pure, unattached supernode is not a component)."""
    int_seg_off, int_d_start, int_d_count, line_seg_start, nseg = _segment_tables(
        vwin_ptr, vwin_lo, vwin_hi, d_ptr, d_time, periodic
    )
    parent = np.arange(nseg + 1, dtype=np.int64)
    supernode = nseg
    nv = len(vwin_ptr) - 1

    if wired:
        for i in range(nv):
            if side[i]:
                for s in range(line_seg_start[i], line_seg_start[i + 1]):
                    _union(parent, supernode, s)
            for k in range(vwin_ptr[i], vwin_ptr[i + 1]):
                nseg_k = int_d_count[k] + 1
                if bnd_lo[k]:
                    _union(parent, supernode, int_seg_off[k])
                if bnd_hi[k]:
                    _union(parent, supernode, int_seg_off[k] + nseg_k - 1)

    nj = len(j_time)
    for idx in range(nj):
        t = j_time[idx]
        prev = np.int64(-1)
        found = 0
        for p in range(j_ptr[idx], j_ptr[idx + 1]):
            s = _find_segment(
                vwin_ptr, vwin_lo, vwin_hi,
                int_seg_off, int_d_start, int_d_count, d_time,
                periodic, j_lines[p], t,
            )
            if s < 0:
                continue
            found += 1
            if prev >= 0:
                _union(parent, prev, s)
            prev = s
        if wired and j_dangle[idx] and prev >= 0:
            _union(parent, supernode, prev)

    k = 0
    seen = np.zeros(nseg + 1, dtype=np.bool_)
    for s in range(nseg):
        r = _find(parent, s)
        if not seen[r]:
            seen[r] = True
            k += 1
    return int_seg_off, int_d_start, int_d_count, line_seg_start, parent, k


@njit(cache=True)
def boundary_root_mask(
    vwin_ptr, vwin_lo, vwin_hi, bnd_lo, bnd_hi, side, target,
    int_seg_off, int_d_start, int_d_count, line_seg_start, d_time, parent,
    j_ptr, j_lines, j_time, j_dangle,
    periodic, wired,
):
    """Marks the union-find roots whose component counts as boundary-reaching:
    window top/bottom touches, side-boundary and target lines, the supernode
    under wired, and dangling-bridge attachment segments under free."""
    nseg = len(parent) - 1
    mask = np.zeros(nseg + 1, dtype=np.bool_)
    nv = len(vwin_ptr) - 1
    if wired:
        mask[_find(parent, nseg)] = True
    for i in range(nv):
        if side[i] or target[i]:
            for s in range(line_seg_start[i], line_seg_start[i + 1]):
                mask[_find(parent, s)] = True
        for k in range(vwin_ptr[i], vwin_ptr[i + 1]):
            nseg_k = int_d_count[k] + 1
            if bnd_lo[k]:
                mask[_find(parent, int_seg_off[k])] = True
            if bnd_hi[k]:
                mask[_find(parent, int_seg_off[k] + nseg_k - 1)] = True
    if not wired:
        for idx in range(len(j_time)):
            if not j_dangle[idx]:
                continue
            for p in range(j_ptr[idx], j_ptr[idx + 1]):
                s = _find_segment(
                    vwin_ptr, vwin_lo, vwin_hi,
                    int_seg_off, int_d_start, int_d_count, d_time,
                    periodic, j_lines[p], j_time[idx],
                )
                if s >= 0:
                    mask[_find(parent, s)] = True
    return mask


@njit(cache=True)
def point_root(
    vwin_ptr, vwin_lo, vwin_hi,
    int_seg_off, int_d_start, int_d_count, d_time,
    parent, periodic, line, t,
):
    s = _find_segment(
        vwin_ptr, vwin_lo, vwin_hi,
        int_seg_off, int_d_start, int_d_count, d_time,
        periodic, line, t,
    )
    if s < 0:
        return np.int64(-1)
    return _find(parent, s)


@njit(cache=True)
def lines_share_component(parent, line_seg_start, lines):
    """True when two distinct listed lines carry segments in one component."""
    nseg = len(parent) - 1
    stamp = np.full(nseg + 1, -1, dtype=np.int64)
    for li in range(len(lines)):
        i = lines[li]
        for s in range(line_seg_start[i], line_seg_start[i + 1]):
            r = _find(parent, s)
            if stamp[r] >= 0 and stamp[r] != li:
                return True
            stamp[r] = li
    return False


@njit(cache=True)
def sweep_masks(
    vwin_ptr, vwin_lo, vwin_hi,
    int_seg_off, int_d_start, int_d_count, d_ptr, d_time, parent,
    color_u01,
    cb_eline, cb_time, e_u, e_v,
    periodic, wired,
):
    """Cluster-sweep resampling filter.

    color_u01 holds one uniform per union-find node; a node's spin is the
    sign of (color_u01[root] - 0.5).  Returns (keep_death, keep_bridge):
    existing deaths survive only where the adjacent segment spins differ
    (forced flips), candidate bridges survive only where the endpoint spins
    agree (dangling edges: agreement with the supernode spin under wired,
    unconditional keep under free).
    """
    nseg = len(parent) - 1
    keep_death = np.zeros(len(d_time), dtype=np.bool_)
    nv = len(vwin_ptr) - 1
    for i in range(nv):
        for k in range(vwin_ptr[i], vwin_ptr[i + 1]):
            d0 = int_d_start[k]
            cnt = int_d_count[k]
            for j in range(cnt):
                if periodic:
                    left = int_seg_off[k] + (j - 1) % cnt
                    right = int_seg_off[k] + j
                else:
                    left = int_seg_off[k] + j
                    right = left + 1
                cl = color_u01[_find(parent, left)] < 0.5
                cr = color_u01[_find(parent, right)] < 0.5
                if cl != cr:
                    keep_death[d0 + j] = True

    super_color = color_u01[_find(parent, nseg)] < 0.5
    keep_bridge = np.zeros(len(cb_time), dtype=np.bool_)
    for idx in range(len(cb_time)):
        e = cb_eline[idx]
        t = cb_time[idx]
        su = _find_segment(
            vwin_ptr, vwin_lo, vwin_hi,
            int_seg_off, int_d_start, int_d_count, d_time,
            periodic, e_u[e], t,
        )
        if su < 0:
            continue
        cu = color_u01[_find(parent, su)] < 0.5
        if e_v[e] < 0:
            keep_bridge[idx] = (cu == super_color) if wired else True
            continue
        sv = _find_segment(
            vwin_ptr, vwin_lo, vwin_hi,
            int_seg_off, int_d_start, int_d_count, d_time,
            periodic, e_v[e], t,
        )
        if sv < 0:
            continue
        cv = color_u01[_find(parent, sv)] < 0.5
        keep_bridge[idx] = cu == cv
    return keep_death, keep_bridge
