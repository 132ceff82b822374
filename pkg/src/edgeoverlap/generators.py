"""Seeded random generation of the three null-model graph families.

Every dyad (node pair, or ordered pair for the directed family) owns one
logical draw from a counter-based Philox stream keyed by (seed, family).
Dyad outcomes therefore depend only on the dyad's index, not on how the
index space is chunked, which makes generation bit-reproducible under any
partitioning. Philox advances its counter in ticks of four 64-bit outputs,
so chunk boundaries must be multiples of four.

For very sparse graphs (p below 1%) a geometric gap-skipping pass over the
dyad sequence replaces the dense scan; it consumes one draw per realized
edge instead of one per dyad and is deterministic for a fixed seed (it is
a different, equally seeded sampling path, so its edge sets differ from
the dense path's at the same seed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.random import Generator, Philox

from .errors import ConfigError
from .graphs import DirectedGraph, UndirectedGraph, WeightedGraph

__all__ = [
    "Family",
    "GeneratorSpec",
    "generate",
    "generate_er",
    "generate_wrg",
    "generate_directed_er",
]

_CHUNK = 1 << 18  # dyads per RNG chunk; must stay a multiple of 4
_SPARSE_P = 0.01

_FAMILY_TAG = {"er": 1, "wrg": 2, "dir-er": 3, "wrg-weights": 4}


class Family(Enum):
    ER = "er"
    WRG = "wrg"
    DIRECTED_ER = "dir-er"


@dataclass(frozen=True)
class GeneratorSpec:
    """Deterministic recipe: (family, n, p, seed) fixes the graph exactly."""

    family: Family
    n: int
    p: float
    seed: int

    def __post_init__(self):
        _validate(self.n, self.p)


def generate(spec: GeneratorSpec):
    """Dispatch on the spec's family."""
    fn = {
        Family.ER: generate_er,
        Family.WRG: generate_wrg,
        Family.DIRECTED_ER: generate_directed_er,
    }[spec.family]
    return fn(spec.n, spec.p, spec.seed)


def _validate(n: int, p: float) -> None:
    if n < 1:
        raise ConfigError(f"n must be at least 1, got {n}")
    if not 0.0 <= p < 1.0:
        raise ConfigError(f"p must lie in [0, 1), got {p}")


def _keyed_bitgen(seed: int, family: str) -> Philox:
    key = np.array([np.uint64(seed & 0xFFFFFFFFFFFFFFFF),
                    np.uint64(_FAMILY_TAG[family])], dtype=np.uint64)
    return Philox(key=key)


def _dyad_uniforms(seed: int, family: str, start: int, count: int) -> np.ndarray:
    """Uniforms for dyads [start, start+count); start must be 4-aligned."""
    assert start % 4 == 0, "chunk boundaries must align with the counter"
    bg = _keyed_bitgen(seed, family)
    if start:
        bg.advance(start // 4)
    return Generator(bg).random(count)


def _bernoulli_indices(seed: int, family: str, total: int, p: float,
                       chunk: int) -> np.ndarray:
    """Indices of successful dyads in one full scan of the index space."""
    hits = []
    for start in range(0, total, chunk):
        count = min(chunk, total - start)
        u = _dyad_uniforms(seed, family, start, count)
        hits.append(start + np.nonzero(u < p)[0])
    return (np.concatenate(hits) if hits
            else np.array([], dtype=np.int64)).astype(np.int64)


def _gap_skip_indices(seed: int, family: str, total: int, p: float) -> np.ndarray:
    """Sparse-regime scan: geometric gaps between successes."""
    log_q = math.log1p(-p)
    gen = Generator(_keyed_bitgen(seed, family))
    tiny = np.finfo(float).tiny
    positions = []
    pos = -1
    draw = max(1024, int(total * p * 1.1) + 16)
    while pos < total:
        u = np.maximum(gen.random(draw), tiny)
        gaps = np.floor(np.log(u) / log_q).astype(np.int64)
        idx = pos + np.cumsum(gaps + 1)
        positions.append(idx)
        pos = int(idx[-1])
        draw = 1024
    out = np.concatenate(positions)
    return out[out < total]


def _triu_unrank(d: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Map linear dyad index to (i, j), i < j, row-major upper triangle."""
    b = 2 * n - 1
    i = ((b - np.sqrt(b * b - 8.0 * d)) // 2).astype(np.int64)
    # float sqrt can land one row off; correct against exact offsets
    for _ in range(2):
        off = i * n - i * (i + 1) // 2
        i = np.where(d < off, i - 1, i)
        off_next = (i + 1) * n - (i + 1) * (i + 2) // 2
        i = np.where(d >= off_next, i + 1, i)
    off = i * n - i * (i + 1) // 2
    j = d - off + i + 1
    return i, j


def _pair_unrank(d: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Map linear index to ordered pair (i, j), j != i."""
    i = d // (n - 1)
    r = d - i * (n - 1)
    j = r + (r >= i)
    return i, j


def generate_er(n: int, p: float, seed: int) -> UndirectedGraph:
    """G(n, p): each of the C(n, 2) dyads present independently."""
    _validate(n, p)
    total = n * (n - 1) // 2
    if p == 0.0 or total == 0:
        empty = np.array([], dtype=np.int64)
        return UndirectedGraph(n=n, src=empty, dst=empty)
    if p < _SPARSE_P:
        d = _gap_skip_indices(seed, "er", total, p)
    else:
        d = _bernoulli_indices(seed, "er", total, p, _CHUNK)
    src, dst = _triu_unrank(d, n)
    return UndirectedGraph(n=n, src=src, dst=dst)


def generate_wrg(n: int, p: float, seed: int) -> WeightedGraph:
    """Weighted G(n, p): dyad weight counts successes before first failure.

    Weight w occurs with probability p^w (1 - p); zero weight means no
    stored edge, so stored weights are at least 1.
    """
    _validate(n, p)
    total = n * (n - 1) // 2
    empty = np.array([], dtype=np.int64)
    if p == 0.0 or total == 0:
        return WeightedGraph(n=n, src=empty, dst=empty, weights=empty)
    log_p = math.log(p)
    tiny = np.finfo(float).tiny
    if p < _SPARSE_P:
        d = _gap_skip_indices(seed, "wrg", total, p)
        # same stream continues: conditional weight is 1 + geometric
        gen = Generator(_keyed_bitgen(seed, "wrg-weights"))
        u = np.maximum(gen.random(len(d)), tiny)
        w = 1 + np.floor(np.log(u) / log_p).astype(np.int64)
    else:
        hits = []
        weights = []
        for start in range(0, total, _CHUNK):
            count = min(_CHUNK, total - start)
            u = np.maximum(_dyad_uniforms(seed, "wrg", start, count), tiny)
            wts = np.floor(np.log(u) / log_p).astype(np.int64)
            nz = np.nonzero(wts > 0)[0]
            hits.append(start + nz)
            weights.append(wts[nz])
        d = (np.concatenate(hits) if hits else empty).astype(np.int64)
        w = np.concatenate(weights) if weights else empty
    src, dst = _triu_unrank(d, n)
    return WeightedGraph(n=n, src=src, dst=dst, weights=w)


def generate_directed_er(n: int, p: float, seed: int) -> DirectedGraph:
    """Directed G(n, p): each of the n(n-1) ordered pairs independent."""
    _validate(n, p)
    total = n * (n - 1)
    if p == 0.0 or total == 0:
        empty = np.array([], dtype=np.int64)
        return DirectedGraph(n=n, src=empty, dst=empty)
    if p < _SPARSE_P:
        d = _gap_skip_indices(seed, "dir-er", total, p)
    else:
        d = _bernoulli_indices(seed, "dir-er", total, p, _CHUNK)
    src, dst = _pair_unrank(d, n)
    return DirectedGraph(n=n, src=src, dst=dst)
