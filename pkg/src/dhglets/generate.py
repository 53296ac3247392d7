"""Synthetic directed-hypergraph generation for scalability and property
testing.

Each arc draws a total size d uniform in {2..k}, a uniform d-subset of the
nodes, and a uniform split into a ⌊d/2⌋ tail and ⌈d/2⌉ head.  Arcs are
self-loop-free by construction; duplicates can occur and are retained
unless deduplication is requested.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DirectedHypergraph, Hyperarc
from .rng import make_rng


@dataclass(frozen=True)
class GenSpec:
    """Size knobs of a synthetic graph: node count, arcs-per-node ratio,
    maximum arc size, and RNG seed."""

    num_nodes: int
    ratio: float
    max_size: int
    seed: int = 0

    def __post_init__(self):
        if self.num_nodes < 2:
            raise ValueError("need at least 2 nodes")
        if self.max_size < 2 or self.max_size > self.num_nodes:
            raise ValueError("max arc size must lie in [2, num_nodes]")
        if self.num_arcs < 1:
            raise ValueError("ratio·num_nodes must be at least 1")

    @property
    def num_arcs(self) -> int:
        return int(round(self.ratio * self.num_nodes))


def _distinct_nodes(rng: np.random.Generator, n: int, d: int) -> list:
    """First d distinct values of a uniform id stream (a uniform d-subset,
    in draw order)."""
    seen: set = set()
    out: list = []
    while len(out) < d:
        block = rng.integers(0, n, size=max(16, 2 * (d - len(out))))
        for x in block:
            v = int(x)
            if v not in seen:
                seen.add(v)
                out.append(v)
                if len(out) == d:
                    break
    return out


def generate(spec: GenSpec, dedup: bool = False) -> DirectedHypergraph:
    """Generate a random graph with round(ratio·num_nodes) arcs.

    Deterministic per seed.  With ``dedup`` duplicate (tail, head) arcs are
    collapsed to the first occurrence (the same rule the parser applies), so
    the arc count may drop below the nominal one.
    """
    rng = make_rng(spec.seed)
    n = spec.num_nodes
    sizes = rng.integers(2, spec.max_size + 1, size=spec.num_arcs)
    arcs: list = []
    seen: set = set()
    for d in sizes:
        d = int(d)
        chosen = _distinct_nodes(rng, n, d)
        order = rng.permutation(d)
        tail = frozenset(chosen[int(i)] for i in order[: d // 2])
        head = frozenset(chosen[int(i)] for i in order[d // 2 :])
        if dedup:
            if (tail, head) in seen:
                continue
            seen.add((tail, head))
        arcs.append(Hyperarc(tail, head))
    return DirectedHypergraph(arcs, [str(i) for i in range(n)])
