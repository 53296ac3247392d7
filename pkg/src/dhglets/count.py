"""Exact and sampled counting of class instances over incident arc pairs.

Count vectors are length-91 numpy arrays indexed by class − 1.  The exact
counter returns integers; the three estimators return floats and are all
unbiased: each sampled pair's class gains 1/(n·p) where p is the pair's
per-trial sampling probability.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .classify import NUM_CLASSES, ClassTable, _mask_and_overlap, default_table
from .core import DirectedHypergraph, PreconditionError
from .rng import STREAM_BATCH, derive_seed, make_rng


class EmptySampleSpaceError(PreconditionError):
    """The graph has nothing to sample (no incident arc pairs)."""


@dataclass(frozen=True)
class SampleBudget:
    """Number of sampling trials plus the seed that drives them.

    ``n`` is conventionally q·|E| rounded, never below 1; build via
    :meth:`from_ratio` to apply that rule.
    """

    q: float
    n: int
    seed: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("sample count n must be at least 1")

    @classmethod
    def from_ratio(cls, G: DirectedHypergraph, q: float, seed: int) -> "SampleBudget":
        if q <= 0:
            raise ValueError("sampling ratio q must be positive")
        return cls(q=q, n=max(1, round(q * G.num_arcs)), seed=seed)


@dataclass(frozen=True)
class LineGraph:
    """All unordered incident arc pairs (j, k) with j < k, each once."""

    pairs: list

    def __len__(self) -> int:
        return len(self.pairs)


def build_line_graph(G: DirectedHypergraph) -> LineGraph:
    """Enumerate incident pairs through the incidence index: for each arc j
    and node v in it, every arc k > j containing v, deduplicated per j."""
    pairs = []
    for j, arc in enumerate(G.arcs):
        seen: set = set()
        for v in arc.nodes():
            for k in G.incidence[v]:
                if k > j and k not in seen:
                    seen.add(k)
                    pairs.append((j, k))
    return LineGraph(pairs)


@dataclass(frozen=True)
class NodeWeightTable:
    """Per-node pair weights w[v] = C(d_v, 2) with prefix sums.

    The total W equals the sum of |ē ∩ ē'| over all incident pairs, which is
    what makes intersection-proportional pair sampling work.
    """

    weights: np.ndarray
    prefix: np.ndarray
    total: float

    @classmethod
    def from_graph(cls, G: DirectedHypergraph) -> "NodeWeightTable":
        d = G.degrees.astype(np.float64)
        w = d * (d - 1.0) / 2.0
        prefix = np.cumsum(w)
        total = float(prefix[-1]) if len(w) else 0.0
        return cls(w, prefix, total)


def _count_exact_range(G, table, lo, hi):
    counts = [0] * NUM_CLASSES
    arcs = G.arcs
    incidence = G.incidence
    p2c = table.pattern_to_class
    for j in range(lo, hi):
        arc = arcs[j]
        seen: set = set()
        for v in arc.nodes():
            for k in incidence[v]:
                if k > j and k not in seen:
                    seen.add(k)
                    mask, _ = _mask_and_overlap(arc, arcs[k])
                    cls = p2c.get(mask)
                    if cls is not None:  # None: duplicate arcs, no class
                        counts[cls - 1] += 1
    return np.array(counts, dtype=np.int64)


def count_exact(
    G: DirectedHypergraph, table: Optional[ClassTable] = None, threads: int = 1
) -> np.ndarray:
    """Exact per-class instance counts (int64 vector of length 91).

    Every incident pair is classified exactly once.  With threads > 1 the
    arc range is partitioned across workers, each owning the pairs (j, k)
    with j in its shard, and the partial vectors are summed; the result is
    identical to the single-threaded one.
    """
    table = table if table is not None else default_table()
    if threads <= 1:
        return _count_exact_range(G, table, 0, G.num_arcs)
    bounds = np.linspace(0, G.num_arcs, threads + 1).astype(int)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(
            pool.map(
                lambda b: _count_exact_range(G, table, int(bounds[b]), int(bounds[b + 1])),
                range(threads),
            )
        )
    return np.sum(parts, axis=0)


def count_dmochy(
    G: DirectedHypergraph,
    table: Optional[ClassTable] = None,
    budget: Optional[SampleBudget] = None,
    line_graph: Optional[LineGraph] = None,
) -> np.ndarray:
    """Uniform line-graph sampling estimate.

    Materializes all incident pairs, draws n of them uniformly with
    replacement, and adds |Ω|/n to the drawn pair's class.  The class total
    equals |Ω| exactly on duplicate-free graphs.  A precomputed line graph
    may be passed to amortize construction across repeated runs.
    """
    if budget is None:
        raise ValueError("a SampleBudget is required")
    table = table if table is not None else default_table()
    lg = line_graph if line_graph is not None else build_line_graph(G)
    total = len(lg)
    if total == 0:
        raise EmptySampleSpaceError("graph has no incident arc pairs")
    rng = make_rng(budget.seed)
    picks = rng.integers(0, total, size=budget.n)
    hits = [0] * NUM_CLASSES
    arcs = G.arcs
    pairs = lg.pairs
    p2c = table.pattern_to_class
    for t in picks:
        j, k = pairs[t]
        mask, _ = _mask_and_overlap(arcs[j], arcs[k])
        cls = p2c.get(mask)
        if cls is not None:
            hits[cls - 1] += 1
    return np.array(hits, dtype=np.float64) * (total / budget.n)


def _weighted_pair_stream(G, wt, rng, n) -> Iterator[tuple]:
    """n unordered incident pairs, each drawn with probability |ē∩ē'|/W:
    a node v with probability w[v]/W by binary search on the prefix sums,
    then a uniform unordered pair of distinct arcs containing v."""
    nodes = np.searchsorted(wt.prefix, rng.random(n) * wt.total, side="right")
    ua = rng.random(n)
    ub = rng.random(n)
    incidence = G.incidence
    for t in range(n):
        ev = incidence[int(nodes[t])]
        d = len(ev)
        a = int(ua[t] * d)
        b = int(ub[t] * (d - 1))
        if b >= a:  # unordered-pair index trick, rejection-free
            b += 1
        i, j = ev[a], ev[b]
        yield (i, j) if i < j else (j, i)


def sample_weighted_pairs(G: DirectedHypergraph, n: int, seed: int) -> list:
    """The intersection-weighted pair draws behind :func:`count_coda_a`,
    exposed for distribution checks."""
    wt = NodeWeightTable.from_graph(G)
    if wt.total <= 0:
        raise EmptySampleSpaceError("no node lies in two or more arcs")
    return list(_weighted_pair_stream(G, wt, make_rng(seed), n))


def count_coda_a(
    G: DirectedHypergraph,
    table: Optional[ClassTable] = None,
    budget: Optional[SampleBudget] = None,
) -> np.ndarray:
    """Intersection-weighted sampling estimate; never builds the line graph.

    Each drawn pair's class gains W/(n·|ē∩ē'|), the reciprocal of n times
    its sampling probability.  Space stays O(Σ|ē| + |V|).
    """
    if budget is None:
        raise ValueError("a SampleBudget is required")
    table = table if table is not None else default_table()
    wt = NodeWeightTable.from_graph(G)
    if wt.total <= 0:
        raise EmptySampleSpaceError("no node lies in two or more arcs")
    rng = make_rng(budget.seed)
    counts = np.zeros(NUM_CLASSES, dtype=np.float64)
    arcs = G.arcs
    p2c = table.pattern_to_class
    scale = wt.total / budget.n
    for i, j in _weighted_pair_stream(G, wt, rng, budget.n):
        mask, overlap = _mask_and_overlap(arcs[i], arcs[j])
        cls = p2c.get(mask)
        if cls is not None:
            counts[cls - 1] += scale / overlap
    return counts


def count_a2a(
    G: DirectedHypergraph,
    table: Optional[ClassTable] = None,
    budget: Optional[SampleBudget] = None,
) -> np.ndarray:
    """Arc-then-neighbor sampling estimate (baseline).

    Per trial: an arc e with at least one incident arc, uniformly; then e'
    uniformly from e's neighbor set, computed on the fly.  The pair's class
    gains |E≥1|/(2n) · HM(|N_e|, |N_e'|), the reciprocal of n times the
    pair's sampling probability (1/|N_e| + 1/|N_e'|)/|E≥1|.
    """
    if budget is None:
        raise ValueError("a SampleBudget is required")
    table = table if table is not None else default_table()
    degrees = G.degrees
    eligible = [
        j
        for j, arc in enumerate(G.arcs)
        if any(degrees[v] >= 2 for v in arc.nodes())
    ]
    if not eligible:
        raise EmptySampleSpaceError("graph has no incident arc pairs")
    rng = make_rng(budget.seed)
    first = rng.integers(0, len(eligible), size=budget.n)
    counts = np.zeros(NUM_CLASSES, dtype=np.float64)
    nbr_size: dict = {}
    scale = len(eligible) / (2.0 * budget.n)
    p2c = table.pattern_to_class
    for t in range(budget.n):
        e = eligible[int(first[t])]
        nbrs = sorted(G.neighbors(e))
        nbr_size[e] = a = len(nbrs)
        ep = nbrs[int(rng.integers(0, a))]
        b = nbr_size.get(ep)
        if b is None:
            nbr_size[ep] = b = len(G.neighbors(ep))
        mask, _ = _mask_and_overlap(G.arcs[e], G.arcs[ep])
        cls = p2c.get(mask)
        if cls is not None:
            counts[cls - 1] += scale * (2.0 * a * b / (a + b))
    return counts


def feature_vector_arc(
    G: DirectedHypergraph, table: Optional[ClassTable], arc_index: int
) -> np.ndarray:
    """Exact per-class counts of the incident pairs containing one arc."""
    table = table if table is not None else default_table()
    counts = np.zeros(NUM_CLASSES, dtype=np.int64)
    arc = G.arcs[arc_index]
    for k in G.neighbors(arc_index):
        mask, _ = _mask_and_overlap(arc, G.arcs[k])
        cls = table.pattern_to_class.get(mask)
        if cls is not None:
            counts[cls - 1] += 1
    return counts


def feature_vector_node(
    G: DirectedHypergraph, table: Optional[ClassTable], node: int
) -> np.ndarray:
    """Exact per-class counts of the incident pairs whose node union covers
    the given node (it need not be a shared node of the pair)."""
    table = table if table is not None else default_table()
    if not 0 <= node < G.num_nodes:
        raise KeyError(f"unknown node id {node}")
    pairs: set = set()
    for i in G.incidence[node]:
        for k in G.neighbors(i):
            pairs.add((i, k) if i < k else (k, i))
    counts = np.zeros(NUM_CLASSES, dtype=np.int64)
    for i, k in pairs:
        mask, _ = _mask_and_overlap(G.arcs[i], G.arcs[k])
        cls = table.pattern_to_class.get(mask)
        if cls is not None:
            counts[cls - 1] += 1
    return counts


def required_samples(
    epsilon: float, delta: float, ratio: float, mode: str = "dmochy", gamma: int = 1
) -> int:
    """Hoeffding bound on the trial count for relative error ε at confidence
    1 − δ: ⌈(ratio/γ)² · ln(2/δ) / (2ε²)⌉.

    ``ratio`` is the estimator's deviation scale, supplied by the caller:
    |Ω|/|Ω_i| for uniform pair sampling ("dmochy"), or W/(γ_i·|Ω_i|) for
    weighted sampling ("coda_a").  In coda_a mode a W/|Ω_i| ratio may be
    passed with the minimum pair intersection γ_i given separately.
    Non-increasing in both ε and δ.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    if ratio < 1:
        raise ValueError("ratio must be at least 1")
    mode_key = mode.replace("-", "_")
    if mode_key not in ("dmochy", "coda_a"):
        raise ValueError(f"unknown mode {mode!r}")
    if gamma < 1 or int(gamma) != gamma:
        raise ValueError("gamma must be a positive integer")
    if mode_key == "dmochy" and gamma != 1:
        raise ValueError("gamma applies to coda_a mode only")
    r = ratio / gamma
    return math.ceil(r * r * math.log(2.0 / delta) / (2.0 * epsilon * epsilon))


ALGORITHMS = ("exact", "dmochy", "coda-a", "a2a")


def run_algorithm(
    name: str,
    G: DirectedHypergraph,
    table: Optional[ClassTable] = None,
    budget: Optional[SampleBudget] = None,
    threads: int = 1,
) -> np.ndarray:
    """Dispatch a count by algorithm name ("exact", "dmochy", "coda-a",
    "a2a"); estimators run batched when threads > 1."""
    key = name.replace("_", "-").lower()
    if key == "exact":
        return count_exact(G, table, threads=threads)
    if key not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {name!r}")
    if budget is None:
        raise ValueError(f"algorithm {name!r} needs a SampleBudget")
    if threads > 1:
        return run_batched(key, G, table, budget, batches=threads)
    fn = {"dmochy": count_dmochy, "coda-a": count_coda_a, "a2a": count_a2a}[key]
    return fn(G, table, budget)


def run_batched(
    name: str,
    G: DirectedHypergraph,
    table: Optional[ClassTable],
    budget: SampleBudget,
    batches: int,
) -> np.ndarray:
    """Mean of `batches` independent estimates with per-batch derived seeds.

    The trial budget is split as evenly as possible; unbiasedness is
    preserved because each batch estimate is itself unbiased.
    """
    if batches < 1:
        raise ValueError("batches must be at least 1")
    if budget.n < batches:
        raise ValueError("budget.n must be at least the number of batches")
    base, extra = divmod(budget.n, batches)
    total = np.zeros(NUM_CLASSES, dtype=np.float64)
    for b in range(batches):
        nb = base + (1 if b < extra else 0)
        sub = SampleBudget(q=budget.q, n=nb, seed=derive_seed(budget.seed, STREAM_BATCH, b))
        total += run_algorithm(name, G, table, sub)
    return total / batches
