"""Graph containers and edge-list CSV ingestion.

Nodes are dense integer ids ``0..n-1``. All containers are immutable after
construction (degree and adjacency lookups are served from cached arrays),
so any number of concurrent readers is safe.

CSV dialect
-----------
Edge lists: optional header ``src,dst[,weight][,layer]``, UTF-8, ``#``
comment lines ignored. The serializer writes an ``# n=<count>`` comment so
graphs with trailing isolated nodes survive a round trip.

Attributes: header ``node_id,sex,caste,age``; an empty field means the
attribute is missing for that node.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import IO, Iterator

import numpy as np

from .errors import ConfigError, EmptyInputError, ParseError

__all__ = [
    "UndirectedGraph",
    "WeightedGraph",
    "DirectedGraph",
    "MultiplexEdgeList",
    "NodeAttributes",
    "load_edge_list",
    "load_attributes",
    "write_edge_list",
    "natural_layer_key",
]


def _as_id_array(values) -> np.ndarray:
    return np.asarray(values, dtype=np.int64)


def _check_ids(src: np.ndarray, dst: np.ndarray, n: int) -> None:
    if len(src) and (src.min() < 0 or dst.min() < 0):
        raise ValueError("node ids must be non-negative")
    if len(src) and (src.max() >= n or dst.max() >= n):
        raise ValueError(f"node id out of range for n={n}")


def natural_layer_key(label: str):
    """Sort key that orders numeric layer labels numerically."""
    return (0, int(label), "") if label.isdigit() else (1, 0, label)


@dataclass(frozen=True, eq=False)
class UndirectedGraph:
    """Simple undirected graph: no self-loops, no duplicate edges.

    ``src``/``dst`` hold the edge list in canonical form: ``src[k] < dst[k]``
    and rows sorted lexicographically.
    """

    n: int
    src: np.ndarray
    dst: np.ndarray
    self_loops_dropped: int = 0
    id_map: np.ndarray | None = None

    @classmethod
    def from_edges(cls, src, dst, *, n: int | None = None,
                   self_loops_dropped: int = 0,
                   id_map: np.ndarray | None = None) -> "UndirectedGraph":
        """Build from raw endpoint arrays: strips self-loops, merges duplicates."""
        src, dst = _as_id_array(src), _as_id_array(dst)
        keep = src != dst
        dropped = self_loops_dropped + int((~keep).sum())
        src, dst = src[keep], dst[keep]
        if n is None:
            n = int(max(src.max(initial=-1), dst.max(initial=-1))) + 1
            n = max(n, 0)
        _check_ids(src, dst, n)
        lo, hi = np.minimum(src, dst), np.maximum(src, dst)
        key = np.unique(lo * np.int64(n) + hi)
        return cls(n=n, src=key // n, dst=key % n,
                   self_loops_dropped=dropped, id_map=id_map)

    @property
    def num_edges(self) -> int:
        return len(self.src)

    @cached_property
    def degrees(self) -> np.ndarray:
        return (np.bincount(self.src, minlength=self.n)
                + np.bincount(self.dst, minlength=self.n))

    @cached_property
    def _csr(self) -> tuple[np.ndarray, np.ndarray]:
        rows = np.concatenate([self.src, self.dst])
        cols = np.concatenate([self.dst, self.src])
        order = np.lexsort((cols, rows))
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=self.n), out=indptr[1:])
        return indptr, cols[order]

    def degree(self, i: int) -> int:
        self._check_node(i)
        return int(self.degrees[i])

    def neighbors(self, i: int) -> np.ndarray:
        """Sorted neighbor ids of node ``i``."""
        self._check_node(i)
        indptr, adj = self._csr
        return adj[indptr[i]:indptr[i + 1]]

    def has_edge(self, i: int, j: int) -> bool:
        self._check_node(i)
        self._check_node(j)
        nbrs = self.neighbors(i)
        pos = np.searchsorted(nbrs, j)
        return pos < len(nbrs) and nbrs[pos] == j

    def dense_adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        a[self.src, self.dst] = 1.0
        a[self.dst, self.src] = 1.0
        return a

    def sparse_adjacency(self):
        import scipy.sparse as sp
        rows = np.concatenate([self.src, self.dst])
        cols = np.concatenate([self.dst, self.src])
        return sp.csr_array((np.ones(len(rows)), (rows, cols)),
                            shape=(self.n, self.n))

    def _check_node(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise IndexError(f"node {i} out of range for n={self.n}")

    def __eq__(self, other) -> bool:
        return (isinstance(other, UndirectedGraph)
                and self.n == other.n
                and np.array_equal(self.src, other.src)
                and np.array_equal(self.dst, other.dst))

    def __repr__(self) -> str:
        return f"UndirectedGraph(n={self.n}, edges={self.num_edges})"


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """Undirected graph with strictly positive integer edge weights."""

    n: int
    src: np.ndarray
    dst: np.ndarray
    weights: np.ndarray
    self_loops_dropped: int = 0
    id_map: np.ndarray | None = None

    @classmethod
    def from_edges(cls, src, dst, weights, *, n: int | None = None,
                   self_loops_dropped: int = 0,
                   id_map: np.ndarray | None = None) -> "WeightedGraph":
        """Build from raw arrays; duplicate rows have their weights summed."""
        src, dst = _as_id_array(src), _as_id_array(dst)
        raw = np.asarray(weights)
        if raw.dtype.kind == "f" and len(raw) and not np.equal(np.mod(raw, 1), 0).all():
            raise ValueError("edge weights must be integers")
        weights = raw.astype(np.int64)
        if len(weights) and weights.min() <= 0:
            raise ValueError("edge weights must be positive integers")
        keep = src != dst
        dropped = self_loops_dropped + int((~keep).sum())
        src, dst, weights = src[keep], dst[keep], weights[keep]
        if n is None:
            n = int(max(src.max(initial=-1), dst.max(initial=-1))) + 1
            n = max(n, 0)
        _check_ids(src, dst, n)
        lo, hi = np.minimum(src, dst), np.maximum(src, dst)
        key, inverse = np.unique(lo * np.int64(n) + hi, return_inverse=True)
        merged = np.bincount(inverse, weights=weights.astype(np.float64))
        return cls(n=n, src=key // n, dst=key % n,
                   weights=merged.astype(np.int64),
                   self_loops_dropped=dropped, id_map=id_map)

    @property
    def num_edges(self) -> int:
        return len(self.src)

    @property
    def total_weight(self) -> int:
        return int(self.weights.sum())

    @cached_property
    def degrees(self) -> np.ndarray:
        return (np.bincount(self.src, minlength=self.n)
                + np.bincount(self.dst, minlength=self.n))

    @cached_property
    def strengths(self) -> np.ndarray:
        out = np.zeros(self.n, dtype=np.int64)
        np.add.at(out, self.src, self.weights)
        np.add.at(out, self.dst, self.weights)
        return out

    @cached_property
    def _csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        rows = np.concatenate([self.src, self.dst])
        cols = np.concatenate([self.dst, self.src])
        wts = np.concatenate([self.weights, self.weights])
        order = np.lexsort((cols, rows))
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=self.n), out=indptr[1:])
        return indptr, cols[order], wts[order]

    def degree(self, i: int) -> int:
        self._check_node(i)
        return int(self.degrees[i])

    def strength(self, i: int) -> int:
        self._check_node(i)
        return int(self.strengths[i])

    def neighbors(self, i: int) -> np.ndarray:
        self._check_node(i)
        indptr, adj, _ = self._csr
        return adj[indptr[i]:indptr[i + 1]]

    def neighbor_weights(self, i: int) -> np.ndarray:
        """Weights aligned with :meth:`neighbors`."""
        self._check_node(i)
        indptr, _, wts = self._csr
        return wts[indptr[i]:indptr[i + 1]]

    def edge_weight(self, i: int, j: int) -> int:
        """Weight of edge (i, j); 0 when absent."""
        nbrs = self.neighbors(i)
        pos = np.searchsorted(nbrs, j)
        if pos < len(nbrs) and nbrs[pos] == j:
            return int(self.neighbor_weights(i)[pos])
        return 0

    def unweighted(self) -> UndirectedGraph:
        return UndirectedGraph(n=self.n, src=self.src, dst=self.dst)

    def dense_adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        a[self.src, self.dst] = self.weights
        a[self.dst, self.src] = self.weights
        return a

    def _check_node(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise IndexError(f"node {i} out of range for n={self.n}")

    def __eq__(self, other) -> bool:
        return (isinstance(other, WeightedGraph)
                and self.n == other.n
                and np.array_equal(self.src, other.src)
                and np.array_equal(self.dst, other.dst)
                and np.array_equal(self.weights, other.weights))

    def __repr__(self) -> str:
        return (f"WeightedGraph(n={self.n}, edges={self.num_edges}, "
                f"total_weight={self.total_weight})")


@dataclass(frozen=True, eq=False)
class DirectedGraph:
    """Directed graph of ordered arcs; reciprocated pairs are two arcs."""

    n: int
    src: np.ndarray
    dst: np.ndarray
    self_loops_dropped: int = 0
    id_map: np.ndarray | None = None

    @classmethod
    def from_arcs(cls, src, dst, *, n: int | None = None,
                  self_loops_dropped: int = 0,
                  id_map: np.ndarray | None = None) -> "DirectedGraph":
        """Build from raw arc arrays: strips self-arcs, collapses duplicates."""
        src, dst = _as_id_array(src), _as_id_array(dst)
        keep = src != dst
        dropped = self_loops_dropped + int((~keep).sum())
        src, dst = src[keep], dst[keep]
        if n is None:
            n = int(max(src.max(initial=-1), dst.max(initial=-1))) + 1
            n = max(n, 0)
        _check_ids(src, dst, n)
        key = np.unique(src * np.int64(n) + dst)
        return cls(n=n, src=key // n, dst=key % n,
                   self_loops_dropped=dropped, id_map=id_map)

    @property
    def num_arcs(self) -> int:
        return len(self.src)

    @cached_property
    def out_degrees(self) -> np.ndarray:
        return np.bincount(self.src, minlength=self.n)

    @cached_property
    def in_degrees(self) -> np.ndarray:
        return np.bincount(self.dst, minlength=self.n)

    @cached_property
    def _out_csr(self) -> tuple[np.ndarray, np.ndarray]:
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(self.out_degrees, out=indptr[1:])
        return indptr, self.dst  # canonical order is already (src, dst) sorted

    @cached_property
    def _in_csr(self) -> tuple[np.ndarray, np.ndarray]:
        order = np.lexsort((self.src, self.dst))
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(self.in_degrees, out=indptr[1:])
        return indptr, self.src[order]

    def in_degree(self, i: int) -> int:
        self._check_node(i)
        return int(self.in_degrees[i])

    def out_degree(self, i: int) -> int:
        self._check_node(i)
        return int(self.out_degrees[i])

    def successors(self, i: int) -> np.ndarray:
        self._check_node(i)
        indptr, adj = self._out_csr
        return adj[indptr[i]:indptr[i + 1]]

    def predecessors(self, i: int) -> np.ndarray:
        self._check_node(i)
        indptr, adj = self._in_csr
        return adj[indptr[i]:indptr[i + 1]]

    def has_arc(self, i: int, j: int) -> bool:
        self._check_node(i)
        self._check_node(j)
        nbrs = self.successors(i)
        pos = np.searchsorted(nbrs, j)
        return pos < len(nbrs) and nbrs[pos] == j

    def dense_adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        a[self.src, self.dst] = 1.0
        return a

    def _check_node(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise IndexError(f"node {i} out of range for n={self.n}")

    def __eq__(self, other) -> bool:
        return (isinstance(other, DirectedGraph)
                and self.n == other.n
                and np.array_equal(self.src, other.src)
                and np.array_equal(self.dst, other.dst))

    def __repr__(self) -> str:
        return f"DirectedGraph(n={self.n}, arcs={self.num_arcs})"


@dataclass(frozen=True, eq=False)
class MultiplexEdgeList:
    """Several undirected edge layers over one node set.

    Records are stored endpoint-normalized (``src <= dst``) but otherwise as
    read: the same pair may appear twice within a layer (reported from both
    sides); per-layer de-duplication happens in :meth:`layer_graph`.
    """

    n: int
    src: np.ndarray
    dst: np.ndarray
    layer_codes: np.ndarray
    layers: tuple[str, ...]
    weights: np.ndarray | None = None
    self_loops_dropped: int = 0
    id_map: np.ndarray | None = None

    @property
    def num_records(self) -> int:
        return len(self.src)

    def layer_graph(self, label: str) -> UndirectedGraph:
        """The de-duplicated undirected graph of one layer."""
        try:
            code = self.layers.index(label)
        except ValueError:
            raise ConfigError(f"unknown layer {label!r}") from None
        mask = self.layer_codes == code
        return UndirectedGraph.from_edges(self.src[mask], self.dst[mask], n=self.n)

    def layer_graphs(self) -> Iterator[tuple[str, UndirectedGraph]]:
        for label in self.layers:
            yield label, self.layer_graph(label)

    def __eq__(self, other) -> bool:
        if not (isinstance(other, MultiplexEdgeList) and self.n == other.n
                and self.layers == other.layers):
            return False
        mine = self._canonical_records()
        theirs = other._canonical_records()
        return all(np.array_equal(a, b) for a, b in zip(mine, theirs))

    def _canonical_records(self) -> tuple[np.ndarray, ...]:
        w = self.weights if self.weights is not None else np.ones(len(self.src), dtype=np.int64)
        order = np.lexsort((w, self.layer_codes, self.dst, self.src))
        return self.src[order], self.dst[order], self.layer_codes[order], w[order]

    def __repr__(self) -> str:
        return (f"MultiplexEdgeList(n={self.n}, records={self.num_records}, "
                f"layers={len(self.layers)})")


@dataclass(frozen=True)
class NodeAttributes:
    """Per-node optional attribute records; absence means attribute-unknown."""

    sex: dict[int, str] = field(default_factory=dict)
    caste: dict[int, str] = field(default_factory=dict)
    age: dict[int, int] = field(default_factory=dict)
    known: frozenset[int] = frozenset()

    @classmethod
    def empty(cls) -> "NodeAttributes":
        return cls()

    def has_record(self, i: int) -> bool:
        return i in self.known

    def translate(self, id_map: np.ndarray) -> "NodeAttributes":
        """Re-key to local ids given ``id_map[local] = original``."""
        inv = {int(orig): local for local, orig in enumerate(id_map)}
        pick = lambda d: {inv[k]: v for k, v in d.items() if k in inv}
        return NodeAttributes(
            sex=pick(self.sex), caste=pick(self.caste), age=pick(self.age),
            known=frozenset(inv[k] for k in self.known if k in inv))


# ---------------------------------------------------------------------------
# CSV ingestion


def _open_text(source) -> Iterator[str]:
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            yield from fh
        return
    if isinstance(source, bytes):
        yield from io.StringIO(source.decode("utf-8"))
        return
    data = source.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    yield from io.StringIO(data)


_EDGE_HEADERS = {
    ("src", "dst"): (),
    ("src", "dst", "weight"): ("weight",),
    ("src", "dst", "layer"): ("layer",),
    ("src", "dst", "weight", "layer"): ("weight", "layer"),
}


def _parse_int(text: str, what: str, line_no: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"{what} {text!r} is not an integer", line_no) from None


def _parse_rows(source, weighted: bool, layered: bool):
    """Common row scan; self-loops are kept so their ids count toward n.

    Returns (src, dst, weights|None, layers|None, lines, declared_n).
    """
    src: list[int] = []
    dst: list[int] = []
    wts: list[int] = []
    lays: list[str] = []
    lines: list[int] = []
    declared_n = None
    extras: tuple[str, ...] | None = None
    saw_data = False

    for line_no, raw in enumerate(_open_text(source), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            directive = line[1:].strip()
            if directive.startswith("n="):
                declared_n = _parse_int(directive[2:].strip(), "declared n", line_no)
            continue
        fields = next(csv.reader([line]))
        fields = [f.strip() for f in fields]
        if extras is None:
            header = tuple(f.lower() for f in fields)
            if header in _EDGE_HEADERS:
                extras = _EDGE_HEADERS[header]
                continue
            # headerless input: infer the schema from arity and options
            if len(fields) == 2:
                extras = ()
            elif len(fields) == 3 and weighted and not layered:
                extras = ("weight",)
            elif len(fields) == 3 and layered and not weighted:
                extras = ("layer",)
            elif len(fields) == 4:
                extras = ("weight", "layer")
            else:
                raise ParseError(
                    "cannot infer columns; expected header "
                    "src,dst[,weight][,layer]", line_no)
        expected = 2 + len(extras)
        if len(fields) != expected:
            raise ParseError(
                f"expected {expected} fields, got {len(fields)}", line_no)
        saw_data = True
        a = _parse_int(fields[0], "node id", line_no)
        b = _parse_int(fields[1], "node id", line_no)
        if a < 0 or b < 0:
            raise ParseError("node ids must be non-negative", line_no)
        w = 1
        lay = ""
        idx = 2
        if "weight" in extras:
            text = fields[idx]
            idx += 1
            try:
                w = int(text)
            except ValueError:
                raise ParseError(
                    f"weight {text!r} is not an integer", line_no) from None
            if w <= 0:
                raise ParseError(f"weight must be positive, got {w}", line_no)
        if "layer" in extras:
            lay = fields[idx]
            if not lay:
                raise ParseError("empty layer label", line_no)
        src.append(a)
        dst.append(b)
        wts.append(w)
        lays.append(lay)
        lines.append(line_no)

    if not saw_data:
        raise EmptyInputError("no data rows in edge-list input")
    has_weight = extras is not None and "weight" in extras
    has_layer = extras is not None and "layer" in extras
    return (np.asarray(src, dtype=np.int64), np.asarray(dst, dtype=np.int64),
            np.asarray(wts, dtype=np.int64) if has_weight else None,
            lays if has_layer else None,
            lines, declared_n)


def load_edge_list(source, *, directed: bool = False, weighted: bool = False,
                   layered: bool = False, n: int | None = None,
                   remap: bool = False):
    """Load an edge-list CSV into the requested graph kind.

    ``source`` may be a path, a text or byte stream, or raw bytes. Self-loops
    are dropped (the count is recorded on the result), duplicate undirected
    edges are collapsed (weighted duplicates: weights summed; directed
    duplicate arcs: collapsed to one).

    With ``remap=True`` sparse input ids are densified; ``id_map`` on the
    result maps local ids back to the originals. Otherwise ``n`` is the
    declared value (argument or ``# n=`` comment) or ``max id + 1``.
    """
    if directed and weighted:
        raise ConfigError("directed weighted graphs are not supported")
    if directed and layered:
        raise ConfigError("layered inputs are undirected")
    if remap and n is not None:
        raise ConfigError("remap and explicit n are mutually exclusive")

    src, dst, wts, lays, lines, declared_n = _parse_rows(source, weighted, layered)
    if weighted and wts is None:
        raise ParseError("weighted load requires a weight column")
    if layered and lays is None:
        # a plain edge list is a single-layer multiplex
        lays = ["1"] * len(src)

    id_map = None
    if remap:
        id_map = np.unique(np.concatenate([src, dst]))
        src = np.searchsorted(id_map, src)
        dst = np.searchsorted(id_map, dst)
        n = len(id_map)
    elif n is None:
        n = declared_n
    if n is not None and len(src):
        bad = np.nonzero((src >= n) | (dst >= n))[0]
        if len(bad):
            raise ParseError(f"node id exceeds declared n={n}", lines[bad[0]])
    if n is None:
        n = int(max(src.max(initial=-1), dst.max(initial=-1))) + 1
        n = max(n, 0)

    # a layer keeps its label even if self-loop stripping empties it
    labels = sorted(set(lays), key=natural_layer_key) if lays is not None else []

    # self-loops contribute to n above but never to edges
    keep = src != dst
    dropped = int((~keep).sum())
    src, dst = src[keep], dst[keep]
    if wts is not None:
        wts = wts[keep]
    if lays is not None:
        lays = [lay for lay, k in zip(lays, keep) if k]

    if layered:
        code_of = {lab: k for k, lab in enumerate(labels)}
        codes = np.asarray([code_of[lab] for lab in lays], dtype=np.int64)
        return MultiplexEdgeList(
            n=n, src=np.minimum(src, dst), dst=np.maximum(src, dst),
            layer_codes=codes, layers=tuple(labels), weights=wts,
            self_loops_dropped=dropped, id_map=id_map)
    if directed:
        return DirectedGraph.from_arcs(src, dst, n=n,
                                       self_loops_dropped=dropped, id_map=id_map)
    if weighted:
        return WeightedGraph.from_edges(src, dst, wts, n=n,
                                        self_loops_dropped=dropped, id_map=id_map)
    return UndirectedGraph.from_edges(src, dst, n=n,
                                      self_loops_dropped=dropped, id_map=id_map)


def write_edge_list(g, dest) -> None:
    """Serialize a graph or multiplex edge list to the CSV dialect.

    Rows are sorted (src, dst, layer) for byte-determinism; original ids are
    written when the object carries a remap table.
    """
    own = isinstance(dest, (str, Path))
    fh: IO[str] = open(dest, "w", encoding="utf-8", newline="") if own else dest
    try:
        back = g.id_map if g.id_map is not None else None
        ident = (lambda x: int(back[x])) if back is not None else int
        fh.write(f"# n={g.n}\n")
        if isinstance(g, MultiplexEdgeList):
            if g.weights is not None:
                fh.write("src,dst,weight,layer\n")
                rows = sorted(
                    (ident(a), ident(b), int(w), g.layers[c])
                    for a, b, w, c in zip(g.src, g.dst, g.weights, g.layer_codes))
                for a, b, w, lab in rows:
                    fh.write(f"{a},{b},{w},{lab}\n")
            else:
                fh.write("src,dst,layer\n")
                rows = sorted(
                    (ident(a), ident(b), g.layers[c])
                    for a, b, c in zip(g.src, g.dst, g.layer_codes))
                for a, b, lab in rows:
                    fh.write(f"{a},{b},{lab}\n")
        elif isinstance(g, WeightedGraph):
            fh.write("src,dst,weight\n")
            for a, b, w in zip(g.src, g.dst, g.weights):
                fh.write(f"{ident(a)},{ident(b)},{int(w)}\n")
        else:
            fh.write("src,dst\n")
            for a, b in zip(g.src, g.dst):
                fh.write(f"{ident(a)},{ident(b)}\n")
    finally:
        if own:
            fh.close()


def load_attributes(source) -> NodeAttributes:
    """Load a ``node_id,sex,caste,age`` CSV; empty fields mean missing."""
    sex: dict[int, str] = {}
    caste: dict[int, str] = {}
    age: dict[int, int] = {}
    known: set[int] = set()
    saw_header = False
    for line_no, raw in enumerate(_open_text(source), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in next(csv.reader([line]))]
        if not saw_header:
            if tuple(f.lower() for f in fields) != ("node_id", "sex", "caste", "age"):
                raise ParseError("expected header node_id,sex,caste,age", line_no)
            saw_header = True
            continue
        if len(fields) != 4:
            raise ParseError(f"expected 4 fields, got {len(fields)}", line_no)
        node = _parse_int(fields[0], "node id", line_no)
        if node < 0:
            raise ParseError("node ids must be non-negative", line_no)
        known.add(node)
        if fields[1]:
            sex[node] = fields[1]
        if fields[2]:
            caste[node] = fields[2]
        if fields[3]:
            age[node] = _parse_int(fields[3], "age", line_no)
    if not saw_header:
        raise EmptyInputError("no data rows in attribute input")
    return NodeAttributes(sex=sex, caste=caste, age=age, known=frozenset(known))
