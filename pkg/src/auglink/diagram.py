"""Planar diagram codes: parsing, validation, faces, strand components.

A diagram is a list of crossings; each crossing carries a quadruple of arc
labels read counterclockwise starting at the incoming under-strand, plus a
sign (+1/-1).  Arc labels are positive integers and every label appears
exactly twice in the whole code.  The implicit cyclic order of each quadruple
is the rotation system of the underlying 4-valent plane graph, which is what
face traversal uses.

Slot conventions (slot = index within the quadruple):

* slot 0 = incoming under-strand, slot 2 = outgoing under-strand;
* slots 1 and 3 carry the over-strand: a positive crossing enters at slot 3
  and leaves at slot 1, a negative one enters at slot 1 and leaves at slot 3.

Input files are JSON, either a bare PD array or an object::

    {"name": "trefoil",
     "pd": [[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]],
     "signs": [1, 1, 1],
     "regions": [{"crossings": [0, 1, 2], "strands": 2, "half_twists": 3}]}

``signs`` is optional; without it the parser infers signs assuming the
standard convention that labels are numbered consecutively along each
oriented component.  ``regions`` declares generalized twist regions (see
:mod:`auglink.twist`); ``crossings`` lists 0-based crossing ids.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .errors import DiagramSyntaxError, InvalidDiagramError

Dart = tuple[int, int]  # (crossing id, slot)

_KNOWN_KEYS = {"name", "pd", "signs", "regions"}
_KNOWN_REGION_KEYS = {"crossings", "strands", "half_twists"}


# ============================================================================
# Core types
# ============================================================================


@dataclass(frozen=True)
class Crossing:
    """One 4-valent vertex of the diagram.

    ``arcs`` lists the incident arc labels counterclockwise from the incoming
    under-strand.  ``id`` is stable across operations that drop other
    crossings, so region annotations keep meaning after a reduction.
    """

    id: int
    arcs: tuple[int, int, int, int]
    sign: int

    def __post_init__(self):
        if len(self.arcs) != 4:
            raise InvalidDiagramError(
                f"crossing {self.id}: expected 4 arc labels, got {len(self.arcs)}"
            )
        if any((not isinstance(a, int)) or isinstance(a, bool) or a < 1 for a in self.arcs):
            raise InvalidDiagramError(
                f"crossing {self.id}: arc labels must be positive integers, got {self.arcs!r}"
            )
        if self.sign not in (-1, 1):
            raise InvalidDiagramError(
                f"crossing {self.id}: sign must be +1 or -1, got {self.sign!r}"
            )

    def arc_at(self, slot: int) -> int:
        return self.arcs[slot % 4]

    @property
    def over_in_slot(self) -> int:
        return 3 if self.sign > 0 else 1

    @property
    def over_out_slot(self) -> int:
        return 1 if self.sign > 0 else 3

    def is_in_slot(self, slot: int) -> bool:
        """True if the strand flows *into* the crossing at this slot."""
        return slot == 0 or slot == self.over_in_slot


@dataclass(frozen=True)
class Face:
    """A complementary region of the diagram in the plane.

    ``boundary`` lists corners in traversal order as (crossing id, corner
    index); corner k is the wedge between slots k and k+1 mod 4.  Every
    corner of the diagram belongs to exactly one face.  Faces of the
    0-crossing unknot have an empty boundary by convention.
    """

    boundary: tuple[tuple[int, int], ...]

    @property
    def degree(self) -> int:
        return len(self.boundary)

    @property
    def crossing_ids(self) -> tuple[int, ...]:
        return tuple(c for c, _ in self.boundary)


@dataclass(frozen=True)
class ComponentMap:
    """Arc label -> link component index (0-based), plus the count."""

    assignment: Mapping[int, int]
    component_count: int


@dataclass(frozen=True)
class Diagram:
    """An immutable planar diagram code. Build one with :meth:`from_pd`."""

    crossings: tuple[Crossing, ...]
    name: str | None = None

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    @property
    def arc_count(self) -> int:
        return 2 * len(self.crossings)

    @property
    def arc_labels(self) -> frozenset[int]:
        return frozenset(a for x in self.crossings for a in x.arcs)

    @property
    def crossing_ids(self) -> tuple[int, ...]:
        return tuple(x.id for x in self.crossings)

    def crossing(self, crossing_id: int) -> Crossing:
        for x in self.crossings:
            if x.id == crossing_id:
                return x
        raise KeyError(f"no crossing with id {crossing_id}")

    @property
    def is_connected(self) -> bool:
        """Connectivity of the underlying 4-valent graph (split link test)."""
        return len(_graph_components(self)) <= 1

    @classmethod
    def from_pd(
        cls,
        pd: list[list[int]] | tuple,
        signs: list[int] | None = None,
        name: str | None = None,
    ) -> "Diagram":
        """Validate a PD code and build the diagram.

        Checks the quadruple shapes, the exactly-twice rule for arc labels,
        and the Euler formula V - E + F = 2 on every connected component of
        the underlying graph (which rejects non-planar or corrupted codes).
        When ``signs`` is omitted they are inferred; see module docstring.
        """
        quads = []
        for i, quad in enumerate(pd):
            if not isinstance(quad, (list, tuple)) or len(quad) != 4:
                got = len(quad) if isinstance(quad, (list, tuple)) else type(quad).__name__
                raise InvalidDiagramError(f"crossing {i}: expected 4 arc labels, got {got}")
            quads.append(tuple(quad))

        _check_arc_multiplicity(quads)

        if signs is None:
            signs = _infer_signs(quads) if quads else []
        else:
            signs = list(signs)
            if len(signs) != len(quads):
                raise InvalidDiagramError(
                    f"signs list has {len(signs)} entries for {len(quads)} crossings"
                )

        diagram = cls(
            crossings=tuple(
                Crossing(id=i, arcs=quads[i], sign=signs[i]) for i in range(len(quads))
            ),
            name=name,
        )
        _check_euler(diagram)
        return diagram


@dataclass(frozen=True)
class DiagramDocument:
    """A parsed input file: the diagram plus any region annotations."""

    diagram: Diagram
    annotations: tuple  # of auglink.twist.RegionAnnotation
    warnings: tuple[str, ...] = ()


# ============================================================================
# Parsing and serialization
# ============================================================================


def parse_document(text: str, *, allow_unknown_keys: bool = False) -> DiagramDocument:
    """Parse an input file (object form or bare PD array).

    Unknown keys are rejected unless ``allow_unknown_keys`` is set, in which
    case they are reported in ``warnings`` instead.
    """
    from .twist import RegionAnnotation  # deferred: twist imports this module

    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DiagramSyntaxError(
            f"not valid JSON: {e.msg} at line {e.lineno} column {e.colno}", position=e.pos
        ) from e

    if isinstance(data, list):
        data = {"pd": data}
    if not isinstance(data, dict):
        raise InvalidDiagramError(
            f"top level must be an object or a PD array, got {type(data).__name__}"
        )

    warnings: list[str] = []
    unknown = sorted(set(data) - _KNOWN_KEYS)
    if unknown:
        if not allow_unknown_keys:
            raise InvalidDiagramError(f"unknown keys: {', '.join(unknown)}")
        warnings.extend(f"ignoring unknown key {k!r}" for k in unknown)

    if "pd" not in data:
        raise InvalidDiagramError('missing required key "pd"')
    pd = data["pd"]
    if not isinstance(pd, list):
        raise InvalidDiagramError('"pd" must be an array of quadruples')

    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise InvalidDiagramError('"name" must be a string')

    signs = data.get("signs")
    if signs is not None:
        if not isinstance(signs, list) or any(s not in (-1, 1) for s in signs):
            raise InvalidDiagramError('"signs" must be an array of +1/-1')

    diagram = Diagram.from_pd(pd, signs, name)

    annotations = []
    regions = data.get("regions", [])
    if not isinstance(regions, list):
        raise InvalidDiagramError('"regions" must be an array')
    for i, region in enumerate(regions):
        if not isinstance(region, dict):
            raise InvalidDiagramError(f"region {i}: must be an object")
        unknown = sorted(set(region) - _KNOWN_REGION_KEYS)
        if unknown:
            if not allow_unknown_keys:
                raise InvalidDiagramError(f"region {i}: unknown keys: {', '.join(unknown)}")
            warnings.extend(f"region {i}: ignoring unknown key {k!r}" for k in unknown)
        try:
            crossings = region["crossings"]
            strands = region["strands"]
            half_twists = region["half_twists"]
        except KeyError as e:
            raise InvalidDiagramError(f"region {i}: missing key {e.args[0]!r}") from e
        if (
            not isinstance(crossings, list)
            or any((not isinstance(c, int)) or isinstance(c, bool) for c in crossings)
        ):
            raise InvalidDiagramError(f'region {i}: "crossings" must be an array of crossing ids')
        if len(set(crossings)) != len(crossings):
            raise InvalidDiagramError(f"region {i}: duplicate crossing ids")
        for key, value in (("strands", strands), ("half_twists", half_twists)):
            if not isinstance(value, int) or isinstance(value, bool):
                raise InvalidDiagramError(f'region {i}: "{key}" must be an integer')
        annotations.append(
            RegionAnnotation(
                crossing_ids=frozenset(crossings),
                strand_count=strands,
                half_twists=half_twists,
            )
        )

    return DiagramDocument(diagram=diagram, annotations=tuple(annotations), warnings=tuple(warnings))


def parse_diagram(text: str, *, allow_unknown_keys: bool = False) -> Diagram:
    """Parse input text and return just the diagram."""
    return parse_document(text, allow_unknown_keys=allow_unknown_keys).diagram


def serialize_diagram(diagram: Diagram) -> str:
    """Serialize to the object form, always with explicit signs.

    Deterministic: the same diagram always yields the same bytes, and
    parse(serialize(parse(s))) == parse(s).
    """
    doc: dict = {
        "pd": [list(x.arcs) for x in diagram.crossings],
        "signs": [x.sign for x in diagram.crossings],
    }
    if diagram.name is not None:
        doc["name"] = diagram.name
    return json.dumps(doc, sort_keys=True)


# ============================================================================
# Faces and components
# ============================================================================


def mate_map(diagram: Diagram) -> dict[Dart, Dart]:
    """Map each dart (crossing id, slot) to the other end of its arc."""
    places: dict[int, list[Dart]] = defaultdict(list)
    for x in diagram.crossings:
        for slot, arc in enumerate(x.arcs):
            places[arc].append((x.id, slot))
    mates: dict[Dart, Dart] = {}
    for ends in places.values():
        a, b = ends
        mates[a] = b
        mates[b] = a
    return mates


def compute_faces(diagram: Diagram) -> tuple[Face, ...]:
    """Enumerate the complementary regions via the rotation system.

    Faces are orbits of darts under "cross the arc, then rotate one slot
    counterclockwise"; the corner recorded at each step is the wedge the
    walk pivots through.  For a connected diagram F = V + 2; in general
    V - E + F = 2 per connected component of the underlying graph.

    The 0-crossing unknot yields two faces with empty boundary (the disk on
    either side of the crossing-free circle).
    """
    if not diagram.crossings:
        return (Face(boundary=()), Face(boundary=()))

    mates = mate_map(diagram)
    faces: list[Face] = []
    seen: set[Dart] = set()
    for x in diagram.crossings:
        for slot in range(4):
            start = (x.id, slot)
            if start in seen:
                continue
            corners: list[tuple[int, int]] = []
            dart = start
            while dart not in seen:
                seen.add(dart)
                c, s = mates[dart]
                corners.append((c, s))
                dart = (c, (s + 1) % 4)
            pivot = corners.index(min(corners))
            faces.append(Face(boundary=tuple(corners[pivot:] + corners[:pivot])))
    faces.sort(key=lambda f: f.boundary[0])
    return tuple(faces)


def link_components(diagram: Diagram) -> ComponentMap:
    """Partition arcs into link components by following strands through.

    The under-strand connects slots 0 and 2, the over-strand slots 1 and 3;
    this is independent of crossing signs.  The crossing-free unknot counts
    as one component.
    """
    if not diagram.crossings:
        return ComponentMap(assignment={}, component_count=1)

    dsu = _DisjointSets(diagram.arc_labels)
    for x in diagram.crossings:
        dsu.union(x.arcs[0], x.arcs[2])
        dsu.union(x.arcs[1], x.arcs[3])
    classes = dsu.classes()
    classes.sort(key=min)
    assignment = {arc: idx for idx, cls in enumerate(classes) for arc in cls}
    return ComponentMap(assignment=assignment, component_count=len(classes))


# ============================================================================
# Validation internals
# ============================================================================


class _DisjointSets:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb

    def classes(self) -> list[list]:
        groups = defaultdict(list)
        for x in self.parent:
            groups[self.find(x)].append(x)
        return list(groups.values())


def _check_arc_multiplicity(quads: list[tuple]) -> None:
    counts = defaultdict(int)
    for quad in quads:
        for arc in quad:
            if (not isinstance(arc, int)) or isinstance(arc, bool) or arc < 1:
                raise InvalidDiagramError(
                    f"arc labels must be positive integers, got {arc!r}"
                )
            counts[arc] += 1
    bad = sorted(a for a, n in counts.items() if n != 2)
    if bad:
        detail = ", ".join(f"{a} (x{counts[a]})" for a in bad[:8])
        raise InvalidDiagramError(f"each arc label must appear exactly twice; offenders: {detail}")


def _graph_components(diagram: Diagram) -> list[list[int]]:
    """Connected components of the underlying 4-valent graph (crossing ids)."""
    if not diagram.crossings:
        return []
    dsu = _DisjointSets(diagram.crossing_ids)
    incident: dict[int, int] = {}
    for x in diagram.crossings:
        for arc in x.arcs:
            if arc in incident:
                dsu.union(incident[arc], x.id)
            else:
                incident[arc] = x.id
    return dsu.classes()


def _check_euler(diagram: Diagram) -> None:
    if not diagram.crossings:
        return
    components = _graph_components(diagram)
    comp_of: dict[int, int] = {}
    for idx, comp in enumerate(components):
        for cid in comp:
            comp_of[cid] = idx
    v = [0] * len(components)
    e = [0] * len(components)
    f = [0] * len(components)
    for x in diagram.crossings:
        v[comp_of[x.id]] += 1
        e[comp_of[x.id]] += 2  # four slot endpoints, two per arc
    for face in compute_faces(diagram):
        f[comp_of[face.boundary[0][0]]] += 1
    for idx in range(len(components)):
        if v[idx] - e[idx] + f[idx] != 2:
            raise InvalidDiagramError(
                "Euler formula violated (non-planar or corrupted code): "
                f"component with crossings {sorted(components[idx])} has "
                f"V={v[idx]} E={e[idx]} F={f[idx]}"
            )


# ============================================================================
# Sign inference
# ============================================================================


def _infer_signs(quads: list[tuple]) -> list[int]:
    """Infer crossing signs from arc labels.

    Two stages.  First, orientation propagation: slot 0 is always an inflow
    and slot 2 an outflow, so every arc touching an under-slot has a forced
    direction; pushing directions across arcs pins down the over-slot roles
    (hence the sign) of every crossing they touch, transitively.  Second, any
    crossing still free gets the standard consecutive-numbering reading: for
    over pair (b, d) = (slot 1, slot 3), the crossing is positive when b is
    d's successor along its component.  A final pass checks that every arc
    ends up with one head and one tail.
    """
    n = len(quads)
    places: dict[int, list[Dart]] = defaultdict(list)
    for ci, quad in enumerate(quads):
        for slot, arc in enumerate(quad):
            places[arc].append((ci, slot))

    signs: dict[int, int] = {}

    def role(ci: int, slot: int) -> str | None:
        # "in" / "out" / None when it hinges on an unknown sign
        if slot == 0:
            return "in"
        if slot == 2:
            return "out"
        sign = signs.get(ci)
        if sign is None:
            return None
        if slot == 3:
            return "in" if sign > 0 else "out"
        return "out" if sign > 0 else "in"

    def force(ci: int, slot: int, r: str) -> bool:
        # record the sign implied by giving this over-slot the role r
        implied = 1 if (slot == 3) == (r == "in") else -1
        if signs.get(ci) is None:
            signs[ci] = implied
            return True
        return False

    changed = True
    while changed:
        changed = False
        for arc, ends in places.items():
            (c1, s1), (c2, s2) = ends
            r1, r2 = role(c1, s1), role(c2, s2)
            if r1 is not None and r2 is None:
                changed |= force(c2, s2, "out" if r1 == "in" else "in")
            elif r2 is not None and r1 is None:
                changed |= force(c1, s1, "out" if r2 == "in" else "in")

    if len(signs) < n:
        component = _arc_components(quads)
        for ci in range(n):
            if ci in signs:
                continue
            b, d = quads[ci][1], quads[ci][3]
            labels = sorted(component[d])
            succ = {a: labels[(k + 1) % len(labels)] for k, a in enumerate(labels)}
            if succ[d] == b:
                signs[ci] = 1
            elif succ[b] == d:
                signs[ci] = -1
            else:
                raise InvalidDiagramError(
                    f"cannot infer the sign of crossing {ci} from arc labels; "
                    'supply explicit "signs"'
                )

    for arc, ends in places.items():
        roles = sorted(role(c, s) for c, s in ends)
        if roles != ["in", "out"]:
            raise InvalidDiagramError(
                f"cannot infer consistent signs (arc {arc} has no coherent "
                'direction); supply explicit "signs"'
            )
    return [signs[ci] for ci in range(n)]


def _arc_components(quads: list[tuple]) -> dict[int, frozenset[int]]:
    """Arc -> set of arcs in its link component (sign-independent)."""
    labels = {a for quad in quads for a in quad}
    dsu = _DisjointSets(labels)
    for quad in quads:
        dsu.union(quad[0], quad[2])
        dsu.union(quad[1], quad[3])
    result: dict[int, frozenset[int]] = {}
    for cls in dsu.classes():
        fs = frozenset(cls)
        for arc in cls:
            result[arc] = fs
    return result
