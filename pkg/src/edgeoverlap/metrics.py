"""Per-edge and graph-averaged overlap for all three graph kinds.

The overlap of a connected pair is the fraction of "shared neighborhood"
they realize:

* unweighted: common neighbors over the union of other ties,
  ``n_ij / ((k_i - 1) + (k_j - 1) - n_ij)``, defined when ``k_i + k_j > 2``;
* weighted: weight carried by ties to common neighbors over combined
  strength excluding the connecting tie,
  ``sum(w_ik + w_jk) / (s_i + s_j - 2 w_ij)``, defined when the denominator
  is positive;
* directed: realized two-step paths between the endpoints over the
  min-degree bound,
  ``sum_k(A_ik A_kj + A_jk A_ki) / (min(kin_i, kout_j) + min(kin_j, kout_i) - 1)``,
  defined when the denominator is positive. Each arc of a reciprocated pair
  is evaluated separately.

Undefined edges are reported with an explicit reason and excluded from
averages (never counted as zeros).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import IO

import numpy as np

from .graphs import DirectedGraph, UndirectedGraph, WeightedGraph

__all__ = [
    "UndefinedReason",
    "EdgeOverlapRecord",
    "OverlapSummary",
    "OverlapArrays",
    "edge_overlap",
    "weighted_edge_overlap",
    "directed_edge_overlap",
    "overlap_arrays",
    "average_overlap",
    "write_per_edge_csv",
]

# above this node count the adjacency products switch to scipy.sparse
_DENSE_MAX_N = 2048


class UndefinedReason(Enum):
    DENOMINATOR_ZERO_OR_NEGATIVE = "denominator_zero_or_negative"
    CONSTRAINT_VIOLATED = "constraint_violated"
    NOT_AN_EDGE = "not_an_edge"


@dataclass(frozen=True)
class EdgeOverlapRecord:
    """Overlap of one edge, or the reason it is undefined."""

    i: int
    j: int
    value: float | None
    undefined_reason: UndefinedReason | None = None

    @property
    def defined(self) -> bool:
        return self.value is not None


@dataclass(frozen=True)
class OverlapSummary:
    """Arithmetic mean of overlap across the defined edges of one graph."""

    mean: float | None
    defined_edge_count: int
    undefined_edge_count: int
    per_edge: tuple[EdgeOverlapRecord, ...] | None = None

    @property
    def has_defined_edges(self) -> bool:
        return self.defined_edge_count > 0


@dataclass(frozen=True)
class OverlapArrays:
    """Vectorized per-edge overlap, aligned with the graph's edge arrays.

    ``value`` is NaN where ``defined`` is False; ``reason`` is the single
    in-band undefinedness reason for the variant.
    """

    src: np.ndarray
    dst: np.ndarray
    numerator: np.ndarray
    denominator: np.ndarray
    value: np.ndarray
    defined: np.ndarray
    reason: UndefinedReason

    @property
    def defined_values(self) -> np.ndarray:
        return self.value[self.defined]


def _pair_values(product, rows, cols) -> np.ndarray:
    """Entries ``product[rows, cols]`` as a float array (dense or sparse)."""
    if isinstance(product, np.ndarray):
        return product[rows, cols].astype(np.float64)
    return np.asarray(product[rows, cols]).ravel().astype(np.float64)


def _square(g) -> "np.ndarray | object":
    """A @ A for the graph's binary adjacency (dense below _DENSE_MAX_N)."""
    if g.n <= _DENSE_MAX_N:
        a = g.dense_adjacency()
        if isinstance(g, WeightedGraph):
            a = (a > 0).astype(np.float64)
        return a @ a
    if isinstance(g, WeightedGraph):
        a = g.unweighted().sparse_adjacency()
    elif isinstance(g, UndirectedGraph):
        a = g.sparse_adjacency()
    else:
        import scipy.sparse as sp
        a = sp.csr_array((np.ones(len(g.src)), (g.src, g.dst)), shape=(g.n, g.n))
    return a @ a


def overlap_arrays(g) -> OverlapArrays:
    """Compute overlap for every edge (or arc) of ``g`` in one pass."""
    if isinstance(g, WeightedGraph):
        return _weighted_arrays(g)
    if isinstance(g, DirectedGraph):
        return _directed_arrays(g)
    if isinstance(g, UndirectedGraph):
        return _unweighted_arrays(g)
    raise TypeError(f"unsupported graph type {type(g).__name__}")


def _finish(src, dst, num, den, defined, reason) -> OverlapArrays:
    value = np.full(len(num), np.nan)
    np.divide(num, den, out=value, where=defined)
    return OverlapArrays(src=src, dst=dst, numerator=num, denominator=den,
                         value=value, defined=defined, reason=reason)


def _unweighted_arrays(g: UndirectedGraph) -> OverlapArrays:
    p = _square(g)
    num = _pair_values(p, g.src, g.dst)
    k = g.degrees
    ksum = k[g.src] + k[g.dst]
    den = ksum - 2.0 - num
    defined = ksum > 2
    return _finish(g.src, g.dst, num, den, defined,
                   UndefinedReason.CONSTRAINT_VIOLATED)


def _weighted_arrays(g: WeightedGraph) -> OverlapArrays:
    if g.n <= _DENSE_MAX_N:
        w = g.dense_adjacency()
        b = (w > 0).astype(np.float64)
        wb = w @ b
    else:
        import scipy.sparse as sp
        rows = np.concatenate([g.src, g.dst])
        cols = np.concatenate([g.dst, g.src])
        wvals = np.concatenate([g.weights, g.weights]).astype(np.float64)
        w = sp.csr_array((wvals, (rows, cols)), shape=(g.n, g.n))
        b = sp.csr_array((np.ones(len(rows)), (rows, cols)), shape=(g.n, g.n))
        wb = w @ b
    # (B @ W)[i, j] == (W @ B)[j, i] for symmetric W, B
    num = _pair_values(wb, g.src, g.dst) + _pair_values(wb, g.dst, g.src)
    s = g.strengths
    den = (s[g.src] + s[g.dst] - 2 * g.weights).astype(np.float64)
    defined = den > 0
    return _finish(g.src, g.dst, num, den, defined,
                   UndefinedReason.DENOMINATOR_ZERO_OR_NEGATIVE)


def _directed_arrays(g: DirectedGraph) -> OverlapArrays:
    p = _square(g)
    num = _pair_values(p, g.src, g.dst) + _pair_values(p, g.dst, g.src)
    kin, kout = g.in_degrees, g.out_degrees
    den = (np.minimum(kin[g.src], kout[g.dst])
           + np.minimum(kin[g.dst], kout[g.src]) - 1.0)
    defined = den > 0
    return _finish(g.src, g.dst, num, den, defined,
                   UndefinedReason.CONSTRAINT_VIOLATED)


# ---------------------------------------------------------------------------
# single-edge operations


def edge_overlap(g: UndirectedGraph, i: int, j: int) -> EdgeOverlapRecord:
    """Overlap of edge (i, j) of a simple graph."""
    if not g.has_edge(i, j):
        return EdgeOverlapRecord(i, j, None, UndefinedReason.NOT_AN_EDGE)
    ki, kj = g.degree(i), g.degree(j)
    if ki + kj <= 2:
        return EdgeOverlapRecord(i, j, None, UndefinedReason.CONSTRAINT_VIOLATED)
    nij = len(np.intersect1d(g.neighbors(i), g.neighbors(j), assume_unique=True))
    return EdgeOverlapRecord(i, j, nij / (ki + kj - 2 - nij))


def weighted_edge_overlap(g: WeightedGraph, i: int, j: int) -> EdgeOverlapRecord:
    """Overlap of weighted edge (i, j)."""
    wij = g.edge_weight(i, j)
    if wij == 0:
        return EdgeOverlapRecord(i, j, None, UndefinedReason.NOT_AN_EDGE)
    den = g.strength(i) + g.strength(j) - 2 * wij
    if den <= 0:
        return EdgeOverlapRecord(i, j, None,
                                 UndefinedReason.DENOMINATOR_ZERO_OR_NEGATIVE)
    common, ii, jj = np.intersect1d(g.neighbors(i), g.neighbors(j),
                                    assume_unique=True, return_indices=True)
    num = int(g.neighbor_weights(i)[ii].sum() + g.neighbor_weights(j)[jj].sum())
    return EdgeOverlapRecord(i, j, num / den)


def directed_edge_overlap(g: DirectedGraph, i: int, j: int) -> EdgeOverlapRecord:
    """Overlap of arc i -> j; the reciprocal arc is a separate record."""
    if not g.has_arc(i, j):
        return EdgeOverlapRecord(i, j, None, UndefinedReason.NOT_AN_EDGE)
    den = (min(g.in_degree(i), g.out_degree(j))
           + min(g.in_degree(j), g.out_degree(i)) - 1)
    if den <= 0:
        return EdgeOverlapRecord(i, j, None, UndefinedReason.CONSTRAINT_VIOLATED)
    # endpoints cannot appear: self-arcs are banned
    fwd = len(np.intersect1d(g.successors(i), g.predecessors(j),
                             assume_unique=True))
    bwd = len(np.intersect1d(g.successors(j), g.predecessors(i),
                             assume_unique=True))
    return EdgeOverlapRecord(i, j, (fwd + bwd) / den)


def average_overlap(g, *, per_edge: bool = False) -> OverlapSummary:
    """Mean overlap across all edges (arcs for directed graphs).

    Undefined edges are excluded from the mean and counted separately; a
    graph with zero defined edges yields ``mean=None`` rather than NaN.
    """
    arrays = overlap_arrays(g)
    defined_count = int(arrays.defined.sum())
    undefined_count = len(arrays.value) - defined_count
    mean = float(arrays.defined_values.mean()) if defined_count else None
    records = None
    if per_edge:
        records = tuple(
            EdgeOverlapRecord(int(a), int(b), float(v))
            if ok else EdgeOverlapRecord(int(a), int(b), None, arrays.reason)
            for a, b, v, ok in zip(arrays.src, arrays.dst, arrays.value,
                                   arrays.defined))
    return OverlapSummary(mean=mean, defined_edge_count=defined_count,
                          undefined_edge_count=undefined_count,
                          per_edge=records)


def write_per_edge_csv(dest, arrays: OverlapArrays, layer: str = "") -> None:
    """Export per-edge records as ``i,j,layer,value,undefined_reason``."""
    own = isinstance(dest, (str, Path))
    fh: IO[str] = open(dest, "w", encoding="utf-8", newline="") if own else dest
    try:
        fh.write("i,j,layer,value,undefined_reason\n")
        for a, b, v, ok in zip(arrays.src, arrays.dst, arrays.value,
                               arrays.defined):
            if ok:
                fh.write(f"{int(a)},{int(b)},{layer},{float(v)!r},\n")
            else:
                fh.write(f"{int(a)},{int(b)},{layer},,{arrays.reason.value}\n")
    finally:
        if own:
            fh.close()
