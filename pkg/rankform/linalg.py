# rankform/linalg.py
"""Dense linear algebra on (I - cA^T): LU solves, inversion, blockwise inversion."""
import warnings
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.linalg
from scipy.sparse import csr_matrix

from .errors import InvalidN, InvalidParams, Singular
from .graph import DirectedGraph
from .helpers.utils import check_damping

DenseMatrix = np.ndarray

PIVOT_THRESHOLD = 1e-14


def link_matrix(g: DirectedGraph) -> DenseMatrix:
    """A with a_ij = 1/r_i for each edge i -> j; dangling rows stay zero."""
    a = np.zeros((g.n, g.n))
    for i, targets in enumerate(g.out_links):
        if targets:
            a[i, [j - 1 for j in targets]] = 1.0 / len(targets)
    return a


def sparse_link_matrix(g: DirectedGraph) -> csr_matrix:
    rows, cols, data = [], [], []
    for i, targets in enumerate(g.out_links):
        for j in targets:
            rows.append(i)
            cols.append(j - 1)
            data.append(1.0 / len(targets))
    return csr_matrix((data, (rows, cols)), shape=(g.n, g.n))


def system_matrix(g: DirectedGraph, c: float) -> DenseMatrix:
    """I - cA^T"""
    c = check_damping(c)
    return np.eye(g.n) - c * link_matrix(g).T


def _factor(m: DenseMatrix, block: str) -> Tuple[np.ndarray, np.ndarray]:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidParams(f"expected a square matrix, got shape {m.shape}")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(m, check_finite=True)
    if np.min(np.abs(np.diag(lu))) < PIVOT_THRESHOLD:
        raise Singular(block)
    return lu, piv


def lu_solve(m: DenseMatrix, rhs: np.ndarray) -> np.ndarray:
    """Solve m x = rhs by LU with partial pivoting."""
    lu_piv = _factor(m, "matrix")
    return scipy.linalg.lu_solve(lu_piv, np.asarray(rhs, dtype=float))


def invert(m: DenseMatrix, block: str = "matrix") -> DenseMatrix:
    lu_piv = _factor(m, block)
    return scipy.linalg.lu_solve(lu_piv, np.eye(lu_piv[0].shape[0]))


@dataclass(frozen=True)
class BlockPartition:
    """Split index k: B is the leading k x k block, E the trailing one."""
    split: int

    def blocks(self, m: DenseMatrix) -> Tuple[DenseMatrix, DenseMatrix, DenseMatrix, DenseMatrix]:
        n = m.shape[0]
        k = self.split
        if m.ndim != 2 or m.shape[1] != n:
            raise InvalidParams(f"expected a square matrix, got shape {m.shape}")
        if not 1 <= k < n:
            raise InvalidParams(f"split must satisfy 1 <= split < {n}, got {k}")
        return m[:k, :k], m[:k, k:], m[k:, :k], m[k:, k:]


def block_invert(m: DenseMatrix, p: BlockPartition) -> DenseMatrix:
    """
    Invert [[B, C], [D, E]] blockwise through the Schur complement of E.

    With S = B - C E^-1 D the inverse is
        [[ S^-1,           -S^-1 C E^-1                ],
         [ -E^-1 D S^-1,    E^-1 + E^-1 D S^-1 C E^-1  ]]

    Raises:
        Singular: block "E" or "schur" names the inverse that failed.
    """
    m = np.asarray(m, dtype=float)
    b, c, d, e = p.blocks(m)

    e_inv = invert(e, "E")
    schur = b - c @ e_inv @ d
    s_inv = invert(schur, "schur")

    top_right = -s_inv @ c @ e_inv
    bottom_left = -e_inv @ d @ s_inv
    bottom_right = e_inv + e_inv @ d @ s_inv @ c @ e_inv
    return np.block([[s_inv, top_right], [bottom_left, bottom_right]])


def complete_graph_inverse(n: int, c: float) -> DenseMatrix:
    """Analytic (I - cA^T)^-1 of the complete graph on n nodes."""
    if n < 2:
        raise InvalidN(n)
    c = check_damping(c)
    den = (n - 1) - c * (n - 2) - c * c
    a_d = ((n - 1) - c * (n - 2)) / den
    a_ij = c / den
    inv = np.full((n, n), a_ij)
    np.fill_diagonal(inv, a_d)
    return inv


def line_inverse(n_L: int, c: float) -> DenseMatrix:
    """Inverse for the simple line: entry (i, j) is c^(j-i) for j >= i."""
    if n_L < 1:
        raise InvalidParams(f"line needs n_L >= 1, got {n_L}")
    c = check_damping(c)
    idx = np.arange(n_L)
    powers = np.maximum(idx[None, :] - idx[:, None], 0)
    return np.triu(c ** powers)
