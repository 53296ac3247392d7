"""The 91-class taxonomy of incident hyperarc pairs.

Two incident hyperarcs e = <T, H> and e' = <T', H'> are classified by which
of eight node regions are non-empty:

    1: H \\ H' \\ T'    2: H ∩ H'     3: H ∩ T'    4: H' \\ H \\ T
    5: T' \\ H \\ T     6: H' ∩ T     7: T ∩ T'    8: T \\ H' \\ T'

Because each arc's tail and head are disjoint, regions 1-3 partition H,
regions 4/2/6 partition H', regions 5/3/7 partition T', and regions 6-8
partition T.  A pattern is encoded as an 8-bit mask with region 1 as the
most significant bit.  Exchanging the two arcs permutes regions as
(1 4)(3 6)(5 8); a class is an orbit of that swap over the realizable
patterns, minus the pattern of a pair of identical arcs (only regions 2 and
7 non-empty).  Exactly 91 classes survive; they are numbered 1..91 in
ascending canonical-mask order.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .core import DirectedHypergraph, Hyperarc

NUM_CLASSES = 91

#: Pattern of two identical arcs: only H∩H' and T∩T' are non-empty.  Such
#: pairs (possible in randomized/generated graphs that keep duplicate arcs)
#: belong to no class.
DUPLICATE_MASK = 0b01000010

_BIT = tuple(1 << (7 - i) for i in range(8))  # _BIT[0] is region 1


class NotIncidentError(ValueError):
    """The two hyperarcs share no node."""


class DuplicatePairError(ValueError):
    """The two hyperarcs are identical (tail, head) pairs; the taxonomy
    excludes such pairs."""


class RegionPattern(NamedTuple):
    """Non-emptiness flags of the eight regions, b1..b8 as 0/1 ints."""

    b1: int
    b2: int
    b3: int
    b4: int
    b5: int
    b6: int
    b7: int
    b8: int

    @classmethod
    def from_mask(cls, mask: int) -> "RegionPattern":
        return cls(*((mask >> (7 - i)) & 1 for i in range(8)))

    @property
    def mask(self) -> int:
        m = 0
        for b in self:
            m = (m << 1) | (1 if b else 0)
        return m

    def swapped(self) -> "RegionPattern":
        """Pattern of the pair with the two arcs exchanged."""
        return RegionPattern.from_mask(SWAP_MASK[self.mask])


def _swap_mask_slow(mask: int) -> int:
    b1, b2, b3, b4, b5, b6, b7, b8 = ((mask >> (7 - i)) & 1 for i in range(8))
    out = 0
    for bit in (b4, b2, b6, b1, b8, b3, b7, b5):
        out = (out << 1) | bit
    return out


#: swap(mask) for all 256 masks, precomputed.
SWAP_MASK = tuple(_swap_mask_slow(m) for m in range(256))


def four_sets_nonempty(mask: int) -> bool:
    """True when the pattern admits non-empty H, T, H', and T'."""
    return bool(
        mask & (_BIT[0] | _BIT[1] | _BIT[2])      # H = 1 ∪ 2 ∪ 3
        and mask & (_BIT[5] | _BIT[6] | _BIT[7])  # T = 6 ∪ 7 ∪ 8
        and mask & (_BIT[1] | _BIT[3] | _BIT[5])  # H' = 2 ∪ 4 ∪ 6
        and mask & (_BIT[2] | _BIT[4] | _BIT[6])  # T' = 3 ∪ 5 ∪ 7
    )


def is_incident(mask: int) -> bool:
    """True when some overlap region (2, 3, 6 or 7) is non-empty."""
    return bool(mask & (_BIT[1] | _BIT[2] | _BIT[5] | _BIT[6]))


def canonical_mask(mask: int) -> int:
    return min(mask, SWAP_MASK[mask])


def canonicalize(p) -> RegionPattern:
    """Representative of {p, swap(p)}: the smaller 8-bit encoding with b1 as
    the most significant bit.  Idempotent and swap-invariant."""
    if not isinstance(p, RegionPattern):
        p = RegionPattern(*p)
    return RegionPattern.from_mask(canonical_mask(p.mask))


def _mask_and_overlap(e: Hyperarc, ep: Hyperarc) -> tuple:
    """8-bit region mask and |ē ∩ ē'| for a pair of arcs.

    Costs O(min(|ē|, |ē'|)) expected set lookups: the four overlap regions
    are intersection counts (set & iterates its smaller operand) and the
    four difference regions follow by cardinality arithmetic, e.g.
    |H \\ H' \\ T'| = |H| − |H∩H'| − |H∩T'|.
    """
    t, h, tp, hp = e.tail, e.head, ep.tail, ep.head
    c2 = len(h & hp)
    c3 = len(h & tp)
    c6 = len(hp & t)
    c7 = len(t & tp)
    mask = 0
    if len(h) - c2 - c3:
        mask |= 0b10000000  # 1: H \ H' \ T'
    if c2:
        mask |= 0b01000000
    if c3:
        mask |= 0b00100000
    if len(hp) - c2 - c6:
        mask |= 0b00010000  # 4: H' \ H \ T
    if len(tp) - c3 - c7:
        mask |= 0b00001000  # 5: T' \ H \ T
    if c6:
        mask |= 0b00000100
    if c7:
        mask |= 0b00000010
    if len(t) - c6 - c7:
        mask |= 0b00000001  # 8: T \ H' \ T'
    return mask, c2 + c3 + c6 + c7


def region_pattern(e: Hyperarc, ep: Hyperarc) -> RegionPattern:
    """Region pattern of an incident pair of arcs.

    Raises NotIncidentError when the arcs share no node; callers scanning
    arbitrary pairs may treat that as "not an instance".
    """
    mask, overlap = _mask_and_overlap(e, ep)
    if overlap == 0:
        raise NotIncidentError("hyperarcs share no node")
    return RegionPattern.from_mask(mask)


@dataclass(frozen=True)
class ClassTable:
    """Immutable mapping between realizable region patterns and class
    indices 1..91.

    ``pattern_to_class`` covers every realizable incident non-duplicate mask
    (159 of them); ``class_to_canonical[i-1]`` is class i's canonical mask.
    ``reference_index`` optionally maps class index to an externally defined
    numbering loaded from a mapping file.
    """

    pattern_to_class: dict
    class_to_canonical: tuple
    reference_index: Optional[dict] = None

    def class_of_mask(self, mask: int) -> Optional[int]:
        """Class index for a mask produced by an incident pair; None for the
        duplicate-pair mask."""
        cls = self.pattern_to_class.get(mask)
        if cls is None:
            if mask == DUPLICATE_MASK:
                return None
            raise ValueError(
                f"pattern {mask:08b} cannot arise from an incident arc pair"
            )
        return cls

    def canonical_pattern(self, cls: int) -> RegionPattern:
        return RegionPattern.from_mask(self.class_to_canonical[cls - 1])

    def pattern_string(self, cls: int) -> str:
        return f"{self.class_to_canonical[cls - 1]:08b}"

    def reference_of(self, cls: int) -> Optional[int]:
        if self.reference_index is None:
            return None
        return self.reference_index.get(cls)

    def with_reference_numbering(self, mapping: dict) -> "ClassTable":
        """Copy of the table carrying an external numbering, given a
        mask -> number mapping (masks are canonicalized first)."""
        ref = {}
        for mask, number in mapping.items():
            cls = self.pattern_to_class.get(canonical_mask(mask))
            if cls is None:
                raise ValueError(f"mapped pattern {mask:08b} is not a valid class pattern")
            ref[cls] = int(number)
        return ClassTable(self.pattern_to_class, self.class_to_canonical, ref)


def enumerate_classes() -> ClassTable:
    """Derive the class table by brute force over all 256 region patterns.

    Keeps patterns with all four sets non-empty and at least one overlap
    region set, drops the duplicate-pair pattern, and folds each survivor
    onto its canonical (swap-minimal) mask.  Classes are numbered 1..91 in
    ascending canonical-mask order.
    """
    survivors = [
        m
        for m in range(256)
        if m != DUPLICATE_MASK and four_sets_nonempty(m) and is_incident(m)
    ]
    canonical = sorted({canonical_mask(m) for m in survivors})
    if len(canonical) != NUM_CLASSES:
        raise AssertionError(
            f"class enumeration produced {len(canonical)} classes, expected {NUM_CLASSES}"
        )
    index = {c: i + 1 for i, c in enumerate(canonical)}
    pattern_to_class = {m: index[canonical_mask(m)] for m in survivors}
    return ClassTable(pattern_to_class, tuple(canonical))


@functools.lru_cache(maxsize=1)
def default_table() -> ClassTable:
    return enumerate_classes()


def classify_pair(
    G: DirectedHypergraph, i: int, j: int, table: Optional[ClassTable] = None
) -> int:
    """Class index in 1..91 of the incident pair (arc i, arc j).

    Symmetric in (i, j).  Raises on equal indices, non-incident pairs, and
    duplicate arcs.
    """
    if i == j:
        raise ValueError("a pair needs two distinct arcs")
    table = table if table is not None else default_table()
    mask, overlap = _mask_and_overlap(G.arcs[i], G.arcs[j])
    if overlap == 0:
        raise NotIncidentError(f"arcs {i} and {j} share no node")
    cls = table.class_of_mask(mask)
    if cls is None:
        raise DuplicatePairError(f"arcs {i} and {j} are identical")
    return cls


def load_reference_numbering(path) -> dict:
    """Read a ``b1..b8 bits<TAB>number`` mapping file into mask -> number."""
    mapping = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                bits, number = line.split("\t")
                if len(bits) != 8 or set(bits) - {"0", "1"}:
                    raise ValueError
                mapping[int(bits, 2)] = int(number)
            except ValueError:
                raise ValueError(f"{path}: bad mapping line {line_no}: {raw!r}") from None
    return mapping
