"""Empirical multiplex workflow: per-layer overlap, null-parameter
estimation, z-score standardization, attribute stratification, and
layer aggregation into a weighted graph.

Conventions that matter for comparability:

* the null's connection probability is estimated once per village graph
  with the full C(n, 2) dyad denominator and reused for every stratum;
  stratum-specific dyad counts are deliberately not used, since edges
  touching attribute-less nodes would otherwise be ignored;
* overlap values are always computed on the full graph; stratification
  only groups edges, it never recomputes degrees on induced subgraphs;
* z-scores standardize by the per-edge null standard deviation, not the
  standard error of the mean, so large graphs produce large |z|.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Mapping, Sequence

import numpy as np

from .errors import ConfigError, DomainError, ZeroDensityError
from .graphs import (DirectedGraph, MultiplexEdgeList, NodeAttributes,
                     UndirectedGraph, WeightedGraph, load_attributes,
                     load_edge_list, natural_layer_key)
from .metrics import overlap_arrays
from .nullmodels import Approach, NullSpec, Variant, moments

__all__ = [
    "DEFAULT_AGE_BANDS",
    "DEFAULT_CASTE_GROUPS",
    "STRATIFIABLE_ATTRIBUTES",
    "AnalysisConfig",
    "Village",
    "StratumReport",
    "estimate_p",
    "standardize",
    "stratify_edges",
    "collapse_layers",
    "load_villages",
    "run_analysis",
    "write_report_csv",
    "write_report_json",
]

DEFAULT_AGE_BANDS: tuple[tuple[int, int], ...] = (
    (10, 29), (30, 39), (40, 49), (50, 99))

# castes other than OBC are scarce in survey data; group them as "Other"
DEFAULT_CASTE_GROUPS: Mapping[str, str] = {"OBC": "OBC"}

STRATIFIABLE_ATTRIBUTES = ("availability", "sex", "caste", "age")

_UNKNOWN = "U"


@dataclass(frozen=True)
class AnalysisConfig:
    """Options for :func:`run_analysis`."""

    variant: str = "unweighted"  # "unweighted", "weighted", or "both"
    approach: Approach = Approach.TAYLOR
    stratify: tuple[str, ...] = STRATIFIABLE_ATTRIBUTES
    age_bands: tuple[tuple[int, int], ...] = DEFAULT_AGE_BANDS
    caste_groups: Mapping[str, str] = field(
        default_factory=lambda: dict(DEFAULT_CASTE_GROUPS))

    def __post_init__(self):
        if self.variant not in ("unweighted", "weighted", "both"):
            raise ConfigError(f"unknown analysis variant {self.variant!r}")
        for attribute in self.stratify:
            if attribute not in STRATIFIABLE_ATTRIBUTES:
                raise ConfigError(f"unknown attribute {attribute!r}")


@dataclass(frozen=True)
class Village:
    name: str
    multiplex: MultiplexEdgeList
    attributes: NodeAttributes


@dataclass(frozen=True)
class StratumReport:
    """One (village, layer, attribute, stratum) result row."""

    village: str
    layer: str
    attribute: str
    stratum: str
    n: int
    defined_edges: int
    undefined_edges: int
    p_hat: float | None
    obs_mean: float | None
    null_mean: float | None
    null_sd: float | None
    z: float | None
    status: str = "ok"


def estimate_p(g, variant: Variant | None = None) -> float:
    """Null-model density estimate for a graph.

    Unweighted: edge count over C(n, 2). Directed: arc count over n(n-1).
    Weighted: moment match of the mean dyad weight W to p/(1-p), i.e.
    p = W / (1 + W), with W averaged over all C(n, 2) dyads.
    """
    inferred = _variant_of(g)
    if variant is not None and variant is not inferred:
        raise ConfigError(
            f"graph is {inferred.value}, but variant {variant.value} requested")
    if g.n < 2:
        raise ZeroDensityError("need at least two nodes to estimate density")
    dyads = g.n * (g.n - 1) // 2
    if inferred is Variant.DIRECTED:
        if g.num_arcs == 0:
            raise ZeroDensityError("no arcs; directed density undefined")
        return g.num_arcs / (g.n * (g.n - 1))
    if inferred is Variant.WEIGHTED:
        if g.total_weight == 0:
            raise ZeroDensityError("no weight; weighted density undefined")
        wbar = g.total_weight / dyads
        return wbar / (1.0 + wbar)
    if g.num_edges == 0:
        raise ZeroDensityError("no edges; density undefined")
    return g.num_edges / dyads


def standardize(observed_mean: float, n: int, p_hat: float, variant: Variant,
                approach: Approach, covariance: float = 0.0) -> float:
    """z-score of an observed mean overlap against the null at (n, p_hat).

    Standardizes by the per-edge null standard deviation.
    """
    m = moments(NullSpec(variant=variant, approach=approach, n=n, p=p_hat),
                covariance)
    return (observed_mean - m.mean) / float(np.sqrt(m.variance))


def _variant_of(g) -> Variant:
    if isinstance(g, WeightedGraph):
        return Variant.WEIGHTED
    if isinstance(g, DirectedGraph):
        return Variant.DIRECTED
    if isinstance(g, UndirectedGraph):
        return Variant.UNWEIGHTED
    raise TypeError(f"unsupported graph type {type(g).__name__}")


# ---------------------------------------------------------------------------
# stratification


def _age_label(age: int | None, bands) -> str:
    if age is None:
        return _UNKNOWN
    for lo, hi in bands:
        if lo <= age <= hi:
            return f"{lo}-{hi}"
    return _UNKNOWN


def _node_categories(n: int, attrs: NodeAttributes, attribute: str,
                     age_bands, caste_groups) -> list[str]:
    if attribute == "sex":
        return [attrs.sex.get(i, _UNKNOWN) for i in range(n)]
    if attribute == "caste":
        return [caste_groups.get(attrs.caste[i], "Other")
                if i in attrs.caste else _UNKNOWN for i in range(n)]
    if attribute == "age":
        return [_age_label(attrs.age.get(i), age_bands) for i in range(n)]
    if attribute == "availability":
        return ["A" if attrs.has_record(i) else _UNKNOWN for i in range(n)]
    raise ConfigError(f"unknown attribute {attribute!r}")


def _category_rank(attribute: str, age_bands) -> dict[str, int]:
    if attribute == "sex":
        listed = ["M", "F"]
    elif attribute == "caste":
        listed = ["OBC", "Other"]
    elif attribute == "age":
        listed = [f"{lo}-{hi}" for lo, hi in age_bands]
    else:
        listed = ["A"]
    return {c: k for k, c in enumerate(listed)}


def _pair_label(a: str, b: str, rank: dict[str, int]) -> str:
    def key(c):
        if c == _UNKNOWN:
            return (2, 0, "")
        if c in rank:
            return (0, rank[c], "")
        return (1, 0, c)

    first, second = sorted((a, b), key=key)
    return f"{first}/{second}"


def stratify_edges(g, attrs: NodeAttributes, attribute: str, *,
                   age_bands=DEFAULT_AGE_BANDS,
                   caste_groups: Mapping[str, str] = DEFAULT_CASTE_GROUPS,
                   ) -> dict[str, np.ndarray]:
    """Partition edge indices by the unordered endpoint category pair.

    Every edge lands in exactly one stratum; nodes without the attribute
    fall in category ``U``. Labels are order-normalized (an edge between a
    male and a female node is ``M/F`` regardless of storage order).
    """
    if attribute not in STRATIFIABLE_ATTRIBUTES:
        raise ConfigError(f"unknown attribute {attribute!r}")
    cats = _node_categories(g.n, attrs, attribute, age_bands, caste_groups)
    rank = _category_rank(attribute, age_bands)
    labels = [_pair_label(cats[a], cats[b], rank)
              for a, b in zip(g.src, g.dst)]
    groups: dict[str, list[int]] = {}
    for idx, label in enumerate(labels):
        groups.setdefault(label, []).append(idx)
    ordered = sorted(groups)
    return {label: np.asarray(groups[label], dtype=np.int64)
            for label in ordered}


def collapse_layers(m: MultiplexEdgeList) -> WeightedGraph:
    """Aggregate layers into one weighted graph.

    The weight of a pair is the number of distinct layers containing it;
    duplicate reports within a layer count once.
    """
    per_layer = []
    nq = np.int64(max(m.n, 1))
    for code in range(len(m.layers)):
        mask = m.layer_codes == code
        per_layer.append(np.unique(m.src[mask] * nq + m.dst[mask]))
    if per_layer:
        all_keys = np.concatenate(per_layer)
    else:
        all_keys = np.array([], dtype=np.int64)
    keys, counts = np.unique(all_keys, return_counts=True)
    return WeightedGraph(n=m.n, src=keys // nq, dst=keys % nq,
                         weights=counts.astype(np.int64))


# ---------------------------------------------------------------------------
# full pipeline


def load_villages(data_dir=None, attrs_path=None, manifest=None) -> list[Village]:
    """Load villages from a directory of edge CSVs or a manifest JSON.

    Directory mode: every ``*.csv`` under ``data_dir`` (except the
    attribute file) is one village, named by file stem, with sparse global
    ids densified per village. Manifest mode: a JSON object
    ``{"villages": [{"name", "edges", "n"?}, ...], "attributes"?: path}``
    with paths resolved relative to the manifest.
    """
    if (data_dir is None) == (manifest is None):
        raise ConfigError("provide exactly one of data_dir or manifest")
    entries: list[tuple[str, Path, int | None]] = []
    if manifest is not None:
        mpath = Path(manifest)
        spec = json.loads(mpath.read_text(encoding="utf-8"))
        for item in spec.get("villages", []):
            entries.append((item["name"],
                            mpath.parent / item["edges"],
                            item.get("n")))
        if attrs_path is None and spec.get("attributes"):
            attrs_path = mpath.parent / spec["attributes"]
    else:
        base = Path(data_dir)
        skip = Path(attrs_path).resolve() if attrs_path else None
        for path in sorted(base.glob("*.csv")):
            if skip is not None and path.resolve() == skip:
                continue
            entries.append((path.stem, path, None))
    attrs = load_attributes(attrs_path) if attrs_path else NodeAttributes.empty()
    villages = []
    for name, path, declared_n in sorted(entries):
        if declared_n is not None:
            multiplex = load_edge_list(path, layered=True, n=declared_n)
            local = attrs
        else:
            multiplex = load_edge_list(path, layered=True, remap=True)
            local = attrs.translate(multiplex.id_map)
        villages.append(Village(name=name, multiplex=multiplex, attributes=local))
    return villages


def _stratum_row(village: str, layer: str, attribute: str, stratum: str,
                 g, values, defined, idx, p_hat, null_mean, null_sd,
                 status: str) -> StratumReport:
    sel_defined = defined[idx]
    defined_count = int(sel_defined.sum())
    undefined_count = len(idx) - defined_count
    obs = float(values[idx][sel_defined].mean()) if defined_count else None
    z = None
    row_status = status
    if obs is None:
        row_status = status if status != "ok" else "no defined edges"
    elif null_mean is not None and null_sd is not None and null_sd > 0:
        z = (obs - null_mean) / null_sd
    return StratumReport(
        village=village, layer=layer, attribute=attribute, stratum=stratum,
        n=g.n, defined_edges=defined_count, undefined_edges=undefined_count,
        p_hat=p_hat, obs_mean=obs, null_mean=null_mean, null_sd=null_sd,
        z=z, status=row_status)


def _graph_reports(village: Village, layer: str, g, variant: Variant,
                   config: AnalysisConfig) -> list[StratumReport]:
    status = "ok"
    p_hat = null_mean = null_sd = None
    try:
        p_hat = estimate_p(g, variant)
    except ZeroDensityError as exc:
        status = f"no edges: {exc}"
    if p_hat is not None:
        try:
            m = moments(NullSpec(variant=variant, approach=config.approach,
                                 n=g.n, p=p_hat))
            null_mean, null_sd = m.mean, float(np.sqrt(m.variance))
        except DomainError as exc:
            status = f"null undefined: {exc}"
    arrays = overlap_arrays(g)
    values, defined = arrays.value, arrays.defined
    everything = np.arange(len(values), dtype=np.int64)
    rows = [_stratum_row(village.name, layer, "none", "all", g, values,
                         defined, everything, p_hat, null_mean, null_sd,
                         status)]
    for attribute in config.stratify:
        groups = stratify_edges(g, village.attributes, attribute,
                                age_bands=config.age_bands,
                                caste_groups=config.caste_groups)
        for stratum, idx in groups.items():
            rows.append(_stratum_row(village.name, layer, attribute, stratum,
                                     g, values, defined, idx, p_hat,
                                     null_mean, null_sd, status))
    return rows


def _village_reports(village: Village, config: AnalysisConfig) -> list[StratumReport]:
    reports: list[StratumReport] = []
    if config.variant in ("unweighted", "both"):
        for label in sorted(village.multiplex.layers, key=natural_layer_key):
            g = village.multiplex.layer_graph(label)
            reports.extend(_graph_reports(village, label, g,
                                          Variant.UNWEIGHTED, config))
    if config.variant in ("weighted", "both"):
        wg = collapse_layers(village.multiplex)
        reports.extend(_graph_reports(village, "aggregate", wg,
                                      Variant.WEIGHTED, config))
    return reports


def run_analysis(villages: Sequence[Village],
                 config: AnalysisConfig | None = None,
                 threads: int | None = None) -> list[StratumReport]:
    """Per village x layer x attribute x stratum overlap report.

    Unweighted rows cover every layer; the weighted variant adds rows for
    the layer-aggregated graph under layer label ``aggregate``. Villages
    are independent and may be processed in parallel; the merge is an
    ordered concatenation (villages by name, layers in natural order,
    the unstratified row first within each layer), so the report does not
    depend on the worker count.
    """
    config = config or AnalysisConfig()
    ordered = sorted(villages, key=lambda v: v.name)
    if threads and threads > 1 and len(ordered) > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(lambda v: _village_reports(v, config), ordered))
    else:
        chunks = [_village_reports(v, config) for v in ordered]
    return [row for chunk in chunks for row in chunk]


_CSV_HEADER = ("village,layer,attribute,stratum,n,defined_edges,"
               "undefined_edges,p_hat,obs_mean,null_mean,null_sd,z")


def _fmt(x) -> str:
    return "" if x is None else repr(float(x))


def write_report_csv(dest, reports: Sequence[StratumReport]) -> None:
    own = isinstance(dest, (str, Path))
    fh: IO[str] = open(dest, "w", encoding="utf-8", newline="") if own else dest
    try:
        fh.write(_CSV_HEADER + "\n")
        for r in reports:
            fh.write(",".join([
                r.village, r.layer, r.attribute, r.stratum, str(r.n),
                str(r.defined_edges), str(r.undefined_edges),
                _fmt(r.p_hat), _fmt(r.obs_mean), _fmt(r.null_mean),
                _fmt(r.null_sd), _fmt(r.z)]) + "\n")
    finally:
        if own:
            fh.close()


def write_report_json(dest, reports: Sequence[StratumReport]) -> None:
    own = isinstance(dest, (str, Path))
    fh: IO[str] = open(dest, "w", encoding="utf-8") if own else dest
    try:
        json.dump([r.__dict__ for r in reports], fh, indent=2, sort_keys=True)
        fh.write("\n")
    finally:
        if own:
            fh.close()
