"""Directed-hypergraph data model: hyperarcs, node interning, incidence index,
and tab-separated text I/O.

A graph is a list of hyperarcs over densely interned node ids plus an
incidence index ``E_v`` (node id -> sorted arc indices).  Instances are
immutable after construction and safe to read from concurrent workers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence, Union

import numpy as np


class ParseError(ValueError):
    """Malformed input line; carries the 1-based line number when known."""

    def __init__(self, message: str, line_no: Optional[int] = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class PreconditionError(ValueError):
    """An operation was invoked on input that violates its contract."""


@dataclass(frozen=True)
class Hyperarc:
    """A directed hyperedge: an ordered pair of disjoint, non-empty node sets.

    ``tail`` holds the source nodes and ``head`` the target nodes, both as
    frozensets of interned node ids.  ``timestamp`` is an optional
    dataset-defined epoch value.
    """

    tail: frozenset
    head: frozenset
    timestamp: Optional[int] = None

    def __post_init__(self):
        if not self.tail or not self.head:
            raise ValueError("hyperarc tail and head must both be non-empty")
        if not self.tail.isdisjoint(self.head):
            raise ValueError("hyperarc tail and head must be disjoint")

    @property
    def size(self) -> int:
        # tail and head are disjoint, so this equals |tail ∪ head|
        return len(self.tail) + len(self.head)

    def nodes(self) -> Iterator[int]:
        """All node ids of the arc (tail first, then head)."""
        return itertools.chain(self.tail, self.head)

    def key(self) -> tuple:
        """Identity of the arc as an unordered-duplicate check key."""
        return (self.tail, self.head)


@dataclass(frozen=True)
class GraphStats:
    """Headline sizes of a graph; the pair count is opt-in (it can dominate
    runtime on large graphs)."""

    num_nodes: int
    num_arcs: int
    total_incidence: int
    line_graph_size: Optional[int] = None


class DirectedHypergraph:
    """A directed hypergraph over interned nodes, with an incidence index.

    Graphs built by :func:`parse` are duplicate-free and self-loop-free.
    Graphs produced by randomization or synthetic generation may contain
    duplicate arcs (identical tail/head pairs) and keep them; all counting
    code tolerates that.
    """

    __slots__ = ("labels", "label_ids", "arcs", "incidence", "degrees")

    def __init__(self, arcs: Sequence[Hyperarc], labels: Sequence[str]):
        self.labels = list(labels)
        self.label_ids = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.label_ids) != len(self.labels):
            raise ValueError("node labels must be unique")
        self.arcs = list(arcs)
        n = len(self.labels)
        incidence: list[list[int]] = [[] for _ in range(n)]
        for j, arc in enumerate(self.arcs):
            for v in arc.nodes():
                if not 0 <= v < n:
                    raise ValueError(f"arc {j} references unknown node id {v}")
                incidence[v].append(j)
        self.incidence = incidence
        self.degrees = np.array([len(lst) for lst in incidence], dtype=np.int64)

    @property
    def num_nodes(self) -> int:
        return len(self.labels)

    @property
    def num_arcs(self) -> int:
        return len(self.arcs)

    def neighbors(self, arc_index: int) -> set:
        """Indices of arcs sharing at least one node with the given arc."""
        if not 0 <= arc_index < len(self.arcs):
            raise IndexError(f"arc index {arc_index} out of range")
        out: set = set()
        for v in self.arcs[arc_index].nodes():
            out.update(self.incidence[v])
        out.discard(arc_index)
        return out

    def count_incident_pairs(self) -> int:
        """Number of unordered incident arc pairs (the line-graph size)."""
        total = 0
        for j, arc in enumerate(self.arcs):
            seen = set()
            for v in arc.nodes():
                for k in self.incidence[v]:
                    if k > j:
                        seen.add(k)
            total += len(seen)
        return total

    def stats(self, with_line_graph: bool = False) -> GraphStats:
        return GraphStats(
            num_nodes=self.num_nodes,
            num_arcs=self.num_arcs,
            total_incidence=sum(arc.size for arc in self.arcs),
            line_graph_size=self.count_incident_pairs() if with_line_graph else None,
        )

    def subgraph(self, arc_indices: Iterable[int]) -> "DirectedHypergraph":
        """Sub-hypergraph of the given arcs, nodes re-interned densely in
        first-appearance order (arcs in the given order, ids sorted within
        each arc)."""
        remap: dict = {}
        labels: list[str] = []
        arcs: list[Hyperarc] = []
        for j in arc_indices:
            old = self.arcs[j]
            for v in sorted(old.tail) + sorted(old.head):
                if v not in remap:
                    remap[v] = len(labels)
                    labels.append(self.labels[v])
            arcs.append(
                Hyperarc(
                    frozenset(remap[v] for v in old.tail),
                    frozenset(remap[v] for v in old.head),
                    old.timestamp,
                )
            )
        return DirectedHypergraph(arcs, labels)


def parse(source: Union[str, Iterable[str]], dedup: bool = True) -> DirectedHypergraph:
    """Parse hyperarc lines into a graph.

    Format, one arc per line: ``tail_labels<TAB>head_labels[<TAB>timestamp]``
    where the label lists are comma-separated and the timestamp is a base-10
    integer.  Lines starting with ``#`` and blank lines are skipped.  Labels
    may be any strings free of TAB and comma.

    Preprocessing: nodes are interned in first-appearance order; self-loop
    arcs (tail and head sharing a label) are dropped; exact duplicate
    (tail, head) arcs collapse to the first occurrence, keeping its
    timestamp.  A missing or empty tail/head field is an error, not a drop —
    silently losing those lines would hide data corruption.

    ``dedup=False`` keeps duplicate arcs, for reloading written randomized or
    generated graphs verbatim (those retain duplicates by design).
    """
    lines = source.splitlines() if isinstance(source, str) else source
    labels: list[str] = []
    ids: dict = {}
    arcs: list[Hyperarc] = []
    seen: set = set()
    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip(" \r\n")  # keep tabs: they delimit (possibly empty) fields
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) not in (2, 3):
            raise ParseError(
                f"expected 2 or 3 tab-separated fields, got {len(fields)}", line_no
            )
        tail_labels = [t for t in fields[0].split(",") if t]
        head_labels = [t for t in fields[1].split(",") if t]
        if not tail_labels:
            raise ParseError("empty tail set", line_no)
        if not head_labels:
            raise ParseError("empty head set", line_no)
        ts: Optional[int] = None
        if len(fields) == 3:
            try:
                ts = int(fields[2])
            except ValueError:
                raise ParseError(f"bad timestamp {fields[2]!r}", line_no) from None
        tset, hset = set(tail_labels), set(head_labels)
        if tset & hset:
            continue  # self-loop: dropped before interning
        for lab in tail_labels + head_labels:
            if lab not in ids:
                ids[lab] = len(labels)
                labels.append(lab)
        tail = frozenset(ids[lab] for lab in tset)
        head = frozenset(ids[lab] for lab in hset)
        if dedup:
            if (tail, head) in seen:
                continue  # duplicate: earliest line wins
            seen.add((tail, head))
        arcs.append(Hyperarc(tail, head, ts))
    return DirectedHypergraph(arcs, labels)


def serialize(G: DirectedHypergraph) -> str:
    """Graph as input-format text, labels sorted lexicographically within
    each set.  Re-parsing yields an isomorphic graph."""
    lines = []
    for arc in G.arcs:
        t = ",".join(sorted(G.labels[v] for v in arc.tail))
        h = ",".join(sorted(G.labels[v] for v in arc.head))
        if arc.timestamp is None:
            lines.append(f"{t}\t{h}")
        else:
            lines.append(f"{t}\t{h}\t{arc.timestamp}")
    return "\n".join(lines) + ("\n" if lines else "")


def read_file(path, dedup: bool = True) -> DirectedHypergraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh, dedup=dedup)


def write_file(G: DirectedHypergraph, path) -> None:
    Path(path).write_text(serialize(G), encoding="utf-8")
