"""Characteristic profiles, similarity analytics, estimator-quality metrics,
and temporal snapshot analysis.

A graph's characteristic profile (CP) is the unit-normalized vector of
per-class significances, where significance compares the class's instance
count in the real graph against the mean count over randomized copies.
CPs are size-independent, so graphs of very different scales can be
compared directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .classify import NUM_CLASSES, ClassTable, default_table
from .core import DirectedHypergraph, PreconditionError
from .count import SampleBudget, count_exact, run_algorithm
from .randomize import randomize
from .rng import STREAM_COUNT, STREAM_RANDOMIZE, derive_seed


class DegenerateProfileError(PreconditionError):
    """All significances are zero; no direction exists to normalize."""


class MissingTimestampError(PreconditionError):
    """Snapshot analysis needs a timestamp on every arc."""


def significance(real_counts, rand_counts, epsilon: float = 1.0) -> np.ndarray:
    """Per-class significance (real − rand) / (real + rand + ε), in (−1, 1).

    ε > 0 guards classes absent from both graphs (0/ε = 0).
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    real = np.asarray(real_counts, dtype=np.float64)
    rand = np.asarray(rand_counts, dtype=np.float64)
    if real.shape != (NUM_CLASSES,) or rand.shape != (NUM_CLASSES,):
        raise ValueError(f"count vectors must have length {NUM_CLASSES}")
    if (real < 0).any() or (rand < 0).any():
        raise ValueError("counts must be non-negative")
    return (real - rand) / (real + rand + epsilon)


def characteristic_profile(mu) -> np.ndarray:
    """L2-normalized significance vector (unit norm)."""
    mu = np.asarray(mu, dtype=np.float64)
    norm = float(np.linalg.norm(mu))
    if norm == 0.0:
        raise DegenerateProfileError("significance vector is all-zero")
    return mu / norm


@dataclass(frozen=True)
class CpResult:
    """A characteristic profile together with the pieces it was built from."""

    cp: np.ndarray
    mu: np.ndarray
    real_counts: np.ndarray
    rand_counts: np.ndarray  # per-class mean over the randomized copies
    epsilon: float
    num_randomizations: int
    algorithm: str
    seed: int


def cp_from_graph(
    G: DirectedHypergraph,
    table: Optional[ClassTable] = None,
    algorithm: str = "exact",
    q: Optional[float] = None,
    num_randomizations: int = 10,
    epsilon: float = 1.0,
    seed: int = 0,
) -> CpResult:
    """Characteristic profile of a graph.

    Counts the graph with the chosen algorithm, generates
    ``num_randomizations`` randomized copies with seeds derived from the
    master seed, uses their per-class mean count (kept as reals) as the
    null, and composes significance and normalization.  Deterministic per
    (graph, seed).
    """
    if num_randomizations < 1:
        raise ValueError("need at least one randomization")
    table = table if table is not None else default_table()

    def run(graph, stream_index):
        budget = None
        if algorithm.replace("_", "-").lower() != "exact":
            if q is None:
                raise ValueError("sampling algorithms need a ratio q")
            budget = SampleBudget.from_ratio(
                graph, q, derive_seed(seed, STREAM_COUNT, stream_index)
            )
        return run_algorithm(algorithm, graph, table, budget)

    real = run(G, 0)
    rand_total = np.zeros(NUM_CLASSES, dtype=np.float64)
    for k in range(num_randomizations):
        Gp = randomize(G, derive_seed(seed, STREAM_RANDOMIZE, k))
        rand_total += run(Gp, k + 1)
    rand_mean = rand_total / num_randomizations
    mu = significance(real, rand_mean, epsilon)
    cp = characteristic_profile(mu)
    return CpResult(
        cp=cp,
        mu=mu,
        real_counts=np.asarray(real, dtype=np.float64),
        rand_counts=rand_mean,
        epsilon=epsilon,
        num_randomizations=num_randomizations,
        algorithm=algorithm,
        seed=seed,
    )


def pearson_similarity(a, b) -> float:
    """Pearson correlation of two profiles."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError("profiles must have equal length")
    da = a - a.mean()
    db = b - b.mean()
    na = float(np.linalg.norm(da))
    nb = float(np.linalg.norm(db))
    if na == 0.0 or nb == 0.0:
        raise ValueError("Pearson correlation is undefined for constant input")
    return float(np.dot(da, db) / (na * nb))


def similarity_matrix(profiles) -> np.ndarray:
    """Symmetric Pearson-similarity matrix with an exact unit diagonal."""
    profiles = [np.asarray(p, dtype=np.float64) for p in profiles]
    if len(profiles) < 2:
        raise ValueError("need at least two profiles")
    k = len(profiles)
    out = np.ones((k, k), dtype=np.float64)
    for i in range(k):
        for j in range(i + 1, k):
            out[i, j] = out[j, i] = pearson_similarity(profiles[i], profiles[j])
    return out


def err_metric(exact, estimate) -> float:
    """Normalized L1 count error: Σ|estimate − exact| / Σ exact."""
    exact = np.asarray(exact, dtype=np.float64)
    estimate = np.asarray(estimate, dtype=np.float64)
    denom = float(exact.sum())
    if denom <= 0:
        raise ValueError("exact counts sum to zero")
    return float(np.abs(estimate - exact).sum() / denom)


def cos_metric(cp_exact, cp_estimate) -> float:
    """Cosine similarity of two (already unit-norm) profiles."""
    return float(np.dot(np.asarray(cp_exact), np.asarray(cp_estimate)))


@dataclass(frozen=True)
class SnapshotSeries:
    """Prefix snapshots of a timestamped graph: strictly increasing
    thresholds (the last equals the max timestamp), per-snapshot arc counts,
    exact class counts, and occurrence ratios (zero vectors when a snapshot
    has no incident pairs)."""

    thresholds: list
    arc_counts: list
    counts: list
    ratios: list


def snapshots(
    G: DirectedHypergraph,
    s: int = 10,
    table: Optional[ClassTable] = None,
    yearly: bool = False,
) -> SnapshotSeries:
    """Split a timestamped graph into s nested prefix snapshots and count
    classes in each.

    Thresholds are evenly spaced: t_i = min τ + i·(max τ − min τ)/s for
    i = 1..s, so snapshot i holds the arcs with τ ≤ t_i plus their nodes.
    With ``yearly`` one threshold per distinct timestamp value is used
    instead (s is ignored).
    """
    if any(arc.timestamp is None for arc in G.arcs):
        raise MissingTimestampError("every arc needs a timestamp")
    if not G.arcs:
        raise MissingTimestampError("graph has no arcs")
    table = table if table is not None else default_table()
    stamps = [arc.timestamp for arc in G.arcs]
    tmin, tmax = min(stamps), max(stamps)
    if yearly:
        thresholds: list = sorted(set(stamps))
    else:
        if s < 1:
            raise ValueError("snapshot count must be at least 1")
        if tmax == tmin and s > 1:
            raise ValueError(
                "timestamp range is zero; only a single snapshot is possible"
            )
        span = tmax - tmin
        thresholds = [tmin + i * span / s for i in range(1, s)]
        thresholds.append(tmax)  # exact, avoids float edge at the last cut
    arc_counts, counts, ratios = [], [], []
    for t in thresholds:
        idx = [j for j, arc in enumerate(G.arcs) if arc.timestamp <= t]
        sub = G.subgraph(idx)
        c = count_exact(sub, table)
        total = int(c.sum())
        arc_counts.append(len(idx))
        counts.append(c)
        ratios.append(c / total if total > 0 else np.zeros(NUM_CLASSES))
    return SnapshotSeries(thresholds, arc_counts, counts, ratios)
