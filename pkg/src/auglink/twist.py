"""Twist regions: detect bigon chains, validate annotated regions, reduce.

A 2-strand twist region is a maximal chain of bigon faces arranged end to
end; a lone crossing adjacent to no bigon is a twist region of one crossing.
Generalized regions (m >= 3 strands twisting together) cannot be recovered
reliably from a PD code, so they arrive as annotations and are validated
here: a half-twist of m strands contains m(m-1)/2 crossings, and exactly 2m
strand-endpoints must leave the region.

A selection partitions every crossing of the diagram into regions.  Regions
must be alternating (uniform crossing sign); a detected chain with mixed
signs gets ``sign == 0`` and must be passed through
:func:`reduce_twist_region`, which cancels adjacent opposite-sign pairs
(Reidemeister II) until the chain is uniform.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, replace

from .diagram import Diagram, _DisjointSets, _check_euler, compute_faces
from .errors import (
    AlreadyAlternatingError,
    NonAlternatingRegionError,
    RegionError,
)


@dataclass(frozen=True)
class RegionAnnotation:
    """A user-declared generalized twist region, not yet validated."""

    crossing_ids: frozenset[int]
    strand_count: int
    half_twists: int


@dataclass(frozen=True)
class TwistRegion:
    """A validated twist region.

    ``crossing_ids`` is ordered: detected 2-strand chains list their
    crossings in chain order (ends first/last), validated annotations sort
    by id.  ``sign`` is the common crossing sign, or 0 for a detected chain
    with mixed signs (which must be reduced before selection) and for a
    region whose crossings all cancelled away.
    """

    id: int
    crossing_ids: tuple[int, ...]
    strand_count: int
    half_twists: int
    sign: int

    def __post_init__(self):
        if self.strand_count < 2:
            raise RegionError(f"region {self.id}: strand count must be >= 2")
        expected = self.half_twists * self.strand_count * (self.strand_count - 1) // 2
        if len(self.crossing_ids) != expected:
            raise RegionError(
                f"region {self.id}: {len(self.crossing_ids)} crossings cannot make "
                f"{self.half_twists} half-twists of {self.strand_count} strands "
                f"(needs {expected})"
            )

    @property
    def crossing_count(self) -> int:
        return len(self.crossing_ids)


@dataclass(frozen=True)
class TwistSelection:
    """A partition of all crossings of a diagram into twist regions."""

    regions: tuple[TwistRegion, ...]
    diagram: Diagram

    @property
    def region_count(self) -> int:
        """tw(D), the number of regions in the selection."""
        return len(self.regions)

    def region(self, region_id: int) -> TwistRegion:
        for r in self.regions:
            if r.id == region_id:
                return r
        raise KeyError(f"no region with id {region_id}")


# ============================================================================
# Detection
# ============================================================================


def _bigon_bonds(diagram: Diagram, scope: frozenset[int]):
    """Bonds between crossings joined by a bigon face, as a corner map.

    Returns ``bonds[(crossing, corner)] = (other crossing, other corner)``.
    Degree-2 faces whose corners sit on a single crossing (the face inside a
    Reidemeister-I kink) are not bonds: a twist chain needs two strands.
    """
    bonds: dict[tuple[int, int], tuple[int, int]] = {}
    for face in compute_faces(diagram):
        if face.degree != 2:
            continue
        (c1, k1), (c2, k2) = face.boundary
        if c1 == c2 or c1 not in scope or c2 not in scope:
            continue
        bonds[(c1, k1)] = (c2, k2)
        bonds[(c2, k2)] = (c1, k1)
    return bonds


def detect_bigon_chains(
    diagram: Diagram,
    *,
    within: frozenset[int] | None = None,
    first_id: int = 1,
) -> list[TwistRegion]:
    """Detect maximal 2-strand twist regions among ``within`` (default: all).

    Every crossing in scope ends up in exactly one returned region: bigon
    chains are grown greedily from the smallest unused crossing id, extending
    through opposite corners in both directions (a chain may close into a
    cycle, as in the standard trefoil code); crossings adjacent to no usable
    bigon become single-crossing regions.  Regions are returned ordered by
    their smallest crossing id and numbered from ``first_id``.
    """
    scope = frozenset(diagram.crossing_ids) if within is None else frozenset(within)
    bonds = _bigon_bonds(diagram, scope)

    bonded = {c for c, _ in bonds}
    unused = set(bonded)
    region_of: dict[int, int] = {}
    chains: list[list[int]] = []

    def walk(chain: list[int], c: int, k: int) -> None:
        # Extend through the bond at corner (c, k), then keep crossing the
        # chain via opposite corners until it ends or closes up.
        while (c, k) in bonds:
            c2, k2 = bonds[(c, k)]
            if c2 not in unused:
                break  # chain closed into a cycle (or hit a finished chain)
            unused.remove(c2)
            chain.append(c2)
            c, k = c2, (k2 + 2) % 4
        return

    while unused:
        start = min(unused)
        unused.remove(start)
        chain = [start]
        corners = sorted(k for k in range(4) if (start, k) in bonds)
        if corners:
            walk(chain, start, corners[0])
            backward: list[int] = []
            walk(backward, start, (corners[0] + 2) % 4)
            chain = backward[::-1] + chain
        chains.append(chain)

    regions: list[list[int]] = chains + [[c] for c in sorted(scope - bonded)]
    regions.sort(key=min)

    result = []
    for offset, ids in enumerate(regions):
        signs = {diagram.crossing(c).sign for c in ids}
        sign = signs.pop() if len(signs) == 1 else 0
        region = TwistRegion(
            id=first_id + offset,
            crossing_ids=tuple(ids),
            strand_count=2,
            half_twists=len(ids),
            sign=sign,
        )
        result.append(region)
        for c in ids:
            region_of[c] = region.id

    # Maximality: a bigon joining two distinct regions would mean two chains
    # that should have merged; the greedy growth never leaves one behind.
    for (c1, _), (c2, _) in bonds.items():
        assert region_of[c1] == region_of[c2], (
            f"bigon joins two twist regions ({c1} and {c2}); detection is not maximal"
        )
    return result


# ============================================================================
# Reduction
# ============================================================================


def reduce_twist_region(diagram: Diagram, region: TwistRegion) -> Diagram:
    """Cancel opposite-sign pairs in a mixed 2-strand chain (Reidemeister II).

    Removes 2 * min(#positive, #negative) crossings — adjacent opposite
    pairs, cancelled until the remaining chain is uniform — and reconnects
    the strands through the gaps.  Surviving crossings keep their ids.
    Raises :class:`AlreadyAlternatingError` if there is nothing to cancel.
    A component whose crossings all cancel vanishes from the code (a
    crossing-free circle has no PD representation); a diagram that empties
    entirely becomes the 0-crossing unknot.
    """
    if region.strand_count != 2:
        raise RegionError("reduction is defined for 2-strand twist regions only")
    signs = [diagram.crossing(c).sign for c in region.crossing_ids]
    if len(set(signs)) <= 1:
        raise AlreadyAlternatingError(
            f"region {region.id} is already alternating; nothing to reduce"
        )

    # Stack cancellation over the chain order: every adjacent opposite-sign
    # pair annihilates, leaving a uniform run.
    stack: list[int] = []  # crossing ids
    for cid in region.crossing_ids:
        if stack and diagram.crossing(stack[-1]).sign == -diagram.crossing(cid).sign:
            stack.pop()
        else:
            stack.append(cid)
    removed = set(region.crossing_ids) - set(stack)
    return _splice_out(diagram, removed)


def _splice_out(diagram: Diagram, removed: set[int]) -> Diagram:
    """Drop ``removed`` crossings, reconnecting each strand straight through."""
    labels = _DisjointSets(diagram.arc_labels)
    for x in diagram.crossings:
        if x.id in removed:
            labels.union(x.arcs[0], x.arcs[2])
            labels.union(x.arcs[1], x.arcs[3])

    survivors = []
    for x in diagram.crossings:
        if x.id not in removed:
            arcs = tuple(labels.find(a) for a in x.arcs)
            survivors.append(replace(x, arcs=arcs))
    reduced = Diagram(crossings=tuple(survivors), name=diagram.name)
    _check_euler(reduced)
    return reduced


# ============================================================================
# Validation of annotated generalized regions
# ============================================================================


def boundary_arc_count(diagram: Diagram, crossing_ids: frozenset[int]) -> int:
    """Number of arcs with exactly one endpoint on the given crossings."""
    hits: dict[int, int] = defaultdict(int)
    for x in diagram.crossings:
        if x.id in crossing_ids:
            for arc in x.arcs:
                hits[arc] += 1
    return sum(1 for n in hits.values() if n == 1)


def validate_generalized_region(
    diagram: Diagram, annotation: RegionAnnotation, *, region_id: int = 1
) -> TwistRegion:
    """Check an annotated m-strand region and return it as a TwistRegion.

    Checks: the crossing count equals half_twists * m(m-1)/2, all crossings
    carry one sign, and exactly 2m strand-endpoints leave the crossing set.
    """
    m, c = annotation.strand_count, annotation.half_twists
    ids = annotation.crossing_ids
    if m < 2:
        raise RegionError(f"region {region_id}: strand count must be >= 2, got {m}")
    if c < 1:
        raise RegionError(f"region {region_id}: half-twist count must be >= 1, got {c}")
    known = set(diagram.crossing_ids)
    missing = sorted(ids - known)
    if missing:
        raise RegionError(f"region {region_id}: unknown crossing ids {missing}")
    expected = c * m * (m - 1) // 2
    if len(ids) != expected:
        raise RegionError(
            f"region {region_id}: {len(ids)} crossings cannot make {c} half-twists "
            f"of {m} strands (needs {expected} = c*m(m-1)/2)"
        )
    signs = {diagram.crossing(i).sign for i in ids}
    if len(signs) != 1:
        raise NonAlternatingRegionError(
            f"region {region_id}: crossings have mixed signs {sorted(signs)}"
        )
    boundary = boundary_arc_count(diagram, ids)
    if boundary != 2 * m:
        raise RegionError(
            f"region {region_id}: {boundary} strand-endpoints leave the region, "
            f"expected 2m = {2 * m}"
        )
    return TwistRegion(
        id=region_id,
        crossing_ids=tuple(sorted(ids)),
        strand_count=m,
        half_twists=c,
        sign=signs.pop(),
    )


# ============================================================================
# Selection
# ============================================================================


def build_selection(
    diagram: Diagram, annotations: tuple[RegionAnnotation, ...] | list[RegionAnnotation] = ()
) -> TwistSelection:
    """Partition all crossings: annotated regions first, then detected chains.

    Annotations keep their input order (region ids 1..k); the rest of the
    diagram is covered by :func:`detect_bigon_chains` restricted to the
    complement.  A detected chain with mixed signs is rejected — reduce it
    first (see :func:`resolve_selection`).
    """
    seen: set[int] = set()
    for idx, a in enumerate(annotations):
        overlap = sorted(seen & a.crossing_ids)
        if overlap:
            raise RegionError(f"region {idx + 1} overlaps an earlier one at crossings {overlap}")
        seen |= a.crossing_ids

    regions = [
        validate_generalized_region(diagram, a, region_id=idx + 1)
        for idx, a in enumerate(annotations)
    ]
    complement = frozenset(diagram.crossing_ids) - seen
    detected = detect_bigon_chains(diagram, within=complement, first_id=len(regions) + 1)
    for r in detected:
        if r.sign == 0:
            raise NonAlternatingRegionError(
                f"detected twist region with mixed signs at crossings "
                f"{sorted(r.crossing_ids)}; reduce it before building a selection"
            )
    regions.extend(detected)

    covered = [c for r in regions for c in r.crossing_ids]
    assert sorted(covered) == sorted(diagram.crossing_ids), "selection is not a partition"
    return TwistSelection(regions=tuple(regions), diagram=diagram)


def resolve_selection(
    diagram: Diagram, annotations: tuple[RegionAnnotation, ...] | list[RegionAnnotation] = ()
) -> tuple[Diagram, TwistSelection]:
    """Reduce mixed detected chains until a valid selection exists.

    Returns the (possibly reduced) diagram together with its selection.
    Annotated crossings are never touched by the reduction.
    """
    annotated = frozenset(c for a in annotations for c in a.crossing_ids)
    while True:
        complement = frozenset(diagram.crossing_ids) - annotated
        mixed = [r for r in detect_bigon_chains(diagram, within=complement) if r.sign == 0]
        if not mixed:
            break
        diagram = reduce_twist_region(diagram, mixed[0])
    return diagram, build_selection(diagram, annotations)
