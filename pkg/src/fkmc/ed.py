"""Dense exact diagonalization of the transverse-field Ising Hamiltonian on
tiny graphs.

    H = -(lam/2) * sum_{xy in E} Z_x Z_y  -  delta * sum_x X_x

on the 2^|V|-dimensional product basis (|+>, |->) per vertex, Z = diag(1,-1),
X the spin flip.  Everything is dense and built from explicit Kronecker
products: this module is the ground truth the samplers are checked against,
so clarity beats speed, and |V| is capped at 12.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import DegenerateGroundState, TooLarge
from .graphs import FiniteGraph

MAX_VERTICES = 12

_I = np.eye(2)
_Z = np.array([[1.0, 0.0], [0.0, -1.0]])
_X = np.array([[0.0, 1.0], [1.0, 0.0]])


@dataclass(frozen=True)
class DenseOperator:
    matrix: np.ndarray
    vertices: tuple[str, ...]

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]


def _site_op(op: np.ndarray, site: int, nv: int) -> np.ndarray:
    mats = [_I] * nv
    mats[site] = op
    return reduce(np.kron, mats)


def build_hamiltonian(g: FiniteGraph, lam: float, delta: float) -> DenseOperator:
    """Assemble H in the product basis; vertices are ordered as in g."""
    nv = len(g.vertices)
    if nv > MAX_VERTICES:
        raise TooLarge(f"{nv} vertices exceed the dense-diagonalization cap")
    index = {v: i for i, v in enumerate(g.vertices)}
    dim = 2**nv
    H = np.zeros((dim, dim))
    for u, w in g.edges:
        H -= (lam / 2.0) * (_site_op(_Z, index[u], nv) @ _site_op(_Z, index[w], nv))
    for v in g.vertices:
        H -= delta * _site_op(_X, index[v], nv)
    return DenseOperator(H, tuple(g.vertices))


def _zz_diagonal(g: FiniteGraph, x: str, y: str) -> np.ndarray:
    nv = len(g.vertices)
    index = {v: i for i, v in enumerate(g.vertices)}
    op = _site_op(_Z, index[x], nv) @ _site_op(_Z, index[y], nv)
    return np.diag(op)


def ground_state_correlation(
    g: FiniteGraph, lam: float, delta: float, x: str, y: str,
    degeneracy_tol: float = 1e-9,
) -> float:
    """<psi0| Z_x Z_y |psi0> from a full dense eigensolve; a (numerically)
    degenerate ground state is reported, not resolved."""
    if x == y:
        return 1.0
    H = build_hamiltonian(g, lam, delta).matrix
    energies, states = np.linalg.eigh(H)
    scale = max(1.0, abs(energies[0]))
    if energies[1] - energies[0] < degeneracy_tol * scale:
        raise DegenerateGroundState(
            f"gap {energies[1] - energies[0]:.3e} below tolerance"
        )
    psi0 = states[:, 0]
    zz = _zz_diagonal(g, x, y)
    return float(np.sum(zz * psi0**2))


def finite_beta_correlation(
    g: FiniteGraph, lam: float, delta: float, beta: float, x: str, y: str
) -> float:
    """tr(e^{-beta H} Z_x Z_y) / tr(e^{-beta H}) via eigendecomposition."""
    if beta <= 0:
        raise ValueError("beta must be positive")
    if x == y:
        return 1.0
    H = build_hamiltonian(g, lam, delta).matrix
    energies, states = np.linalg.eigh(H)
    weights = np.exp(-beta * (energies - energies[0]))
    zz = _zz_diagonal(g, x, y)
    expectations = np.einsum("i,is->s", zz, states**2)
    return float(np.sum(weights * expectations) / np.sum(weights))
