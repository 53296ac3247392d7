"""Degree- and size-preserving randomization (directed configuration model).

Arcs are paired uniformly at random and their head sets shuffled pairwise,
then the same is done for tail sets.  The shuffle conserves each set's size
and the multiset union of the two sets, and never moves a node into an arc
whose opposite role already holds it — so per-node head-degrees, per-node
tail-degrees, the multiset of (|T|, |H|) size pairs, and self-loop-freeness
are all preserved exactly.  Duplicate arcs may appear in the output and are
retained (count comparisons need the same |E|).
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .core import DirectedHypergraph, Hyperarc, PreconditionError
from .rng import make_rng


def _draw_subset(pool: list, k: int, rng: np.random.Generator) -> set:
    # partial Fisher-Yates over the (sorted) pool: deterministic per seed
    arr = list(pool)
    for t in range(k):
        r = t + int(rng.integers(0, len(arr) - t))
        arr[t], arr[r] = arr[r], arr[t]
    return set(arr[:k])


def shuffle_sets(s1, s2, f1, f2, rng: np.random.Generator) -> tuple:
    """Redistribute the movable elements of two same-role sets.

    ``s1``/``s2`` are the sets being shuffled (two heads or two tails);
    ``f1``/``f2`` are the fixed opposite-role sets of the same two arcs
    (``s1`` must avoid ``f1``, ``s2`` avoid ``f2``).  Shared elements stay in
    both outputs; an element of s1 lying in f2 is pinned to output 1 (and
    symmetrically); the rest are dealt randomly so that output sizes and the
    multiset union are conserved and no output touches its own fixed set.
    """
    s1, s2, f1, f2 = frozenset(s1), frozenset(s2), frozenset(f1), frozenset(f2)
    if s1 & f1:
        raise PreconditionError("s1 intersects its own fixed set f1")
    if s2 & f2:
        raise PreconditionError("s2 intersects its own fixed set f2")
    common = s1 & s2
    pool = sorted((s1 | s2) - common - f1 - f2)
    k = len(s1 - common - f2)
    picked = _draw_subset(pool, k, rng)
    out1 = common | (s1 & f2) | picked
    out2 = common | (s2 & f1) | (set(pool) - picked)
    return frozenset(out1), frozenset(out2)


def _shuffle_role(records: list, rng: np.random.Generator, heads: bool) -> list:
    """One pairing pass over (tail, head) records, shuffling one role."""

    def shuffle_two(r1, r2):
        (t1, h1), (t2, h2) = r1, r2
        if heads:
            h1, h2 = shuffle_sets(h1, h2, t1, t2, rng)
        else:
            t1, t2 = shuffle_sets(t1, t2, h1, h2, rng)
        return (t1, h1), (t2, h2)

    m = len(records)
    order = [int(x) for x in rng.permutation(m)]
    done: list = []
    for p in range(m // 2):
        a, b = shuffle_two(records[order[2 * p]], records[order[2 * p + 1]])
        done.append(a)
        done.append(b)
    if m % 2:
        # odd leftover: re-shuffle against a random already-shuffled arc
        partner_at = int(rng.integers(0, len(done)))
        partner = done.pop(partner_at)
        a, b = shuffle_two(records[order[-1]], partner)
        done.append(a)
        done.append(b)
    return done


def randomize(G: DirectedHypergraph, seed: int) -> DirectedHypergraph:
    """Randomized copy of the graph under the configuration model.

    Shuffles head sets pairwise, then tail sets on the intermediate arcs.
    Deterministic per seed; needs at least two arcs.  Timestamps are not
    carried over (the shuffled node sets belong to neither source arc).
    """
    if G.num_arcs < 2:
        raise PreconditionError("randomization needs at least 2 arcs")
    rng = make_rng(seed)
    records = [(arc.tail, arc.head) for arc in G.arcs]
    records = _shuffle_role(records, rng, heads=True)
    records = _shuffle_role(records, rng, heads=False)
    arcs = [Hyperarc(t, h) for t, h in records]
    return DirectedHypergraph(arcs, G.labels)
