"""
lagrangian_dga.py

Ng resolution of a front diagram and the Chekanov-Eliashberg algebra read
off from it.

The resolved diagram keeps the slice structure of the front:
  Cap(q)                       a left cusp becomes a smooth cap on strands q, q+1
  LagCrossing(c, id, kind)     kind "ng" (front crossing), "twist" (half-twist
                               block from a resolved singularity) or "loop"
                               (the crossing of a resolved right cusp)
  Close(q)                     the loop of a right cusp closes strands q, q+1
  Vertex(p, in, out, id)       a singular point

A disk is walked from left to right as an interval of strands (lo, hi)
between its lower and upper boundary. It starts at a cap, at the right
side of a crossing ('l' corner) or at a vertex, may turn at crossings
('u' on its upper boundary, 'd' on its lower one), and ends at a loop
closure, at the left side of a crossing ('r' corner) or at a vertex.
At an included vertex the upper boundary may also turn under it from an
in-strand to an out-strand (a winding-1 chord) and the lower boundary
over its top from an out-strand to an in-strand (a winding-0 chord).
Disks never reach the borders of a bordered diagram.

Usage:
    asm = assemble(theta(3), mode="stopped")
    asm.dga.differential["c[L.1>L.3]^0"]
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Collection, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from boundary_algebra import (
    SPHERE,
    STOP,
    BoundaryCircle,
    MarkedPoint,
    MarkedSurface,
    SurfaceComponent,
    internal_dga,
)
from front_diagram import (
    Crossing,
    FrontDiagram,
    FrontError,
    LeftCusp,
    MaslovPotential,
    Node,
    RightCusp,
    Singularity,
    Trace,
    check,
    compute_maslov,
    trace,
)
from quiver_dga import FormalSum, Generator, QuiverDGA, Word, ZERO, idempotent

LOG = logging.getLogger(__name__)

NG = "ng"
TWIST = "twist"
LOOP = "loop"

MODES = ("crossings", "stopped", "full")


class LagrangianError(ValueError):
    pass


class DiskModelError(LagrangianError):
    pass


# =========================
# Resolved diagram
# =========================
@dataclass(frozen=True)
class Cap:
    pos: int


@dataclass(frozen=True)
class Close:
    pos: int


@dataclass(frozen=True)
class LagCrossing:
    pos: int
    id: str
    kind: str
    lower: Node
    upper: Node


@dataclass(frozen=True)
class Vertex:
    pos: int
    in_valency: int
    out_valency: int
    id: str
    side: str

    def out_label(self, x: int) -> int:
        return x - self.pos + 1

    def in_label(self, x: int) -> int:
        return self.out_valency + (self.pos + self.in_valency - 1 - x) + 1


LagEvent = Union[Cap, Close, LagCrossing, Vertex]


@dataclass
class LagrangianDiagram:
    front: FrontDiagram
    trace: Trace
    events: Tuple[LagEvent, ...]
    counts: List[int]
    vertex_ends: Dict[str, List[Tuple[int, Node]]] = field(default_factory=dict)

    def crossings(self) -> List[LagCrossing]:
        return [e for e in self.events if isinstance(e, LagCrossing)]

    def vertices(self) -> List[Vertex]:
        return [e for e in self.events if isinstance(e, Vertex)]

    @property
    def bordered(self) -> bool:
        return bool(self.front.left_ends or self.front.right_ends)


def _lag_delta(e: LagEvent) -> int:
    if isinstance(e, Cap):
        return 2
    if isinstance(e, Close):
        return -2
    if isinstance(e, Vertex):
        return e.out_valency - e.in_valency
    return 0


def _auto_ids(f: FrontDiagram) -> Dict[int, str]:
    """Ids for unnamed crossings (a1, a2, ...) and right cusps (b1, b2, ...)."""
    taken = {e.id for e in f.events if isinstance(e, (Crossing, Singularity)) and e.id}
    out: Dict[int, str] = {}
    counters = {"a": 0, "b": 0}
    for k, e in enumerate(f.events):
        prefix = "b" if isinstance(e, RightCusp) else "a" if isinstance(e, Crossing) and not e.id else None
        if prefix is None:
            continue
        while True:
            counters[prefix] += 1
            gid = f"{prefix}{counters[prefix]}"
            if gid not in taken:
                break
        taken.add(gid)
        out[k] = gid
    return out


def ng_resolve(f: FrontDiagram) -> LagrangianDiagram:
    check(f)
    tr = trace(f)
    ids = _auto_ids(f)
    events: List[LagEvent] = []
    ends: Dict[str, List[Tuple[int, Node]]] = {}
    for k, e in enumerate(f.events):
        if isinstance(e, LeftCusp):
            events.append(Cap(e.pos))
        elif isinstance(e, RightCusp):
            events.append(LagCrossing(e.pos, ids[k], LOOP, (k, e.pos), (k, e.pos + 1)))
            events.append(Close(e.pos))
        elif isinstance(e, Crossing):
            kind = TWIST if e.twist else NG
            events.append(LagCrossing(e.pos, e.id or ids[k], kind, (k, e.pos), (k, e.pos + 1)))
        else:
            v = Vertex(e.pos, e.in_valency, e.out_valency, e.id, e.side)
            events.append(v)
            outs = [(v.out_label(e.pos + i), (k + 1, e.pos + i)) for i in range(e.out_valency)]
            ins = [(v.in_label(e.pos + i), (k, e.pos + i)) for i in range(e.in_valency)]
            ends[e.id] = sorted(outs + ins)
    counts = [len(f.left_ends)]
    for e in events:
        counts.append(counts[-1] + _lag_delta(e))
    ids_seen = [c.id for c in events if isinstance(c, LagCrossing)]
    if len(set(ids_seen)) != len(ids_seen):
        raise LagrangianError(f"crossing ids repeat in {f.name or 'front'}")
    LOG.debug("%s: %d crossings, %d vertices", f.name or "front", len(ids_seen), len(ends))
    return LagrangianDiagram(f, tr, tuple(events), counts, ends)


def grade(f: FrontDiagram, m: MaslovPotential, d: LagrangianDiagram) -> Dict[str, Generator]:
    """
    Crossing generators with endpoints and degrees (weights are filled in
    later from the disks):
      ng     lower -> upper, |a| = m(lower) - m(upper)
      twist  upper -> lower, |a| = 1 + m(upper) - m(lower)
      loop   lower -> upper on one component, |b| = -1
    """
    out: Dict[str, Generator] = {}
    for c in d.crossings():
        lo, up = d.trace.component(c.lower), d.trace.component(c.upper)
        if c.kind == NG:
            out[c.id] = Generator(c.id, lo, up, m.m(c.lower) - m.m(c.upper), Fraction(1))
        elif c.kind == TWIST:
            out[c.id] = Generator(c.id, up, lo, 1 + m.m(c.upper) - m.m(c.lower), Fraction(1))
        else:
            out[c.id] = Generator(c.id, lo, up, -1, Fraction(1))
    return out


def vertex_surface(d: LagrangianDiagram, m: MaslovPotential, included: Collection[str]) -> Optional[MarkedSurface]:
    """
    One disk component per included vertex, its boundary circle carrying
    the ends in counter-clockwise order. A strand component with one
    included end is a stop, with two a sphere.
    """
    if not included:
        return None
    uses: Dict[str, int] = {}
    for vid in included:
        for _, node in d.vertex_ends[vid]:
            c = d.trace.component(node)
            uses[c] = uses.get(c, 0) + 1
    comps = []
    pots: List[Tuple[str, int]] = []
    for v in d.vertices():
        if v.id not in included:
            continue
        points = []
        for label, node in d.vertex_ends[v.id]:
            c = d.trace.component(node)
            kind = SPHERE if uses[c] == 2 else STOP
            points.append(MarkedPoint(f"{v.id}.{label}", c, kind))
            # in-ends sit past the vertical through the vertex: one extra half turn
            shift = 1 if label > v.out_valency else 0
            pots.append((f"{v.id}.{label}", m.m(node) + shift))
        comps.append(SurfaceComponent(0, (BoundaryCircle(v.id, tuple(points)),)))
    return MarkedSurface(tuple(comps), tuple(pots))


def vertex_chord_id(vid: str, i: int, j: int, winding: int = 0) -> str:
    return f"c[{vid}.{i}>{vid}.{j}]^{winding}"


# =========================
# Disks
# =========================
@dataclass(frozen=True)
class Corner:
    generator: str
    kind: str
    event: int
    positive: bool


@dataclass(frozen=True)
class AdmissibleDisk:
    positive: str
    corners: Tuple[Corner, ...]
    word: Word
    area: int
    span: Tuple[int, int]
    # (slice, gap) cells covered; gap g lies between strands g - 1 and g
    cells: Tuple[Tuple[int, int], ...] = ()

    def negatives(self) -> List[str]:
        return [c.generator for c in self.corners if not c.positive]

    def as_dict(self) -> Dict[str, Any]:
        return {
            "positive": self.positive,
            "corners": [{"generator": c.generator, "kind": c.kind, "event": c.event, "sign": "+" if c.positive else "-"}
                        for c in self.corners],
            "word": list(self.word.letters) if self.word.letters else [f"e:{self.word.source}"],
            "area": self.area,
            "span": list(self.span),
        }


def _positive(kind: str, corner: str) -> bool:
    if kind == TWIST:
        return corner in "ud"
    return corner in "lr"


def _initial(e: LagEvent, s: int, included: Collection[str]) -> Iterator[Tuple[int, int, Optional[Corner]]]:
    if isinstance(e, Cap):
        yield e.pos, e.pos + 1, None
    elif isinstance(e, LagCrossing):
        yield e.pos, e.pos + 1, Corner(e.id, "l", s, _positive(e.kind, "l"))
    elif isinstance(e, Vertex) and e.id in included:
        top = e.pos + e.out_valency - 1
        for lo in range(e.pos, top + 1):
            for hi in range(lo + 1, top + 1):
                gid = vertex_chord_id(e.id, e.out_label(lo), e.out_label(hi))
                yield lo, hi, Corner(gid, "v", s, False)


def _terminal(e: LagEvent, s: int, lo: int, hi: int, included: Collection[str]) -> Optional[Tuple[str, Optional[Corner]]]:
    if isinstance(e, Close):
        return ("close", None) if (lo, hi) == (e.pos, e.pos + 1) else None
    if isinstance(e, LagCrossing):
        if (lo, hi) == (e.pos, e.pos + 1):
            return "r", Corner(e.id, "r", s, _positive(e.kind, "r"))
        return None
    if isinstance(e, Vertex) and e.id in included:
        if e.pos <= lo < hi <= e.pos + e.in_valency - 1:
            gid = vertex_chord_id(e.id, e.in_label(hi), e.in_label(lo))
            return "v", Corner(gid, "v", s, False)
    return None


def _through(e: LagEvent, s: int, lo: int, hi: int, included: Collection[str] = (),
             max_winding: int = 0) -> List[Tuple[int, int, Optional[Corner]]]:
    if isinstance(e, Cap):
        q = e.pos
        return [(lo if lo < q else lo + 2, hi if hi < q else hi + 2, None)]
    if isinstance(e, Close):
        q = e.pos
        if {lo, hi} & {q, q + 1}:
            return []
        return [(lo if lo < q else lo - 2, hi if hi < q else hi - 2, None)]
    if isinstance(e, LagCrossing):
        c = e.pos
        if not {lo, hi} & {c, c + 1}:
            return [(lo, hi, None)]
        if hi == c + 1 and lo <= c - 1:
            return [(lo, c, None)]
        if hi == c and lo <= c - 1:
            return [(lo, c + 1, None), (lo, c, Corner(e.id, "u", s, _positive(e.kind, "u")))]
        if lo == c + 1 and hi >= c + 2:
            return [(c, hi, None), (c + 1, hi, Corner(e.id, "d", s, _positive(e.kind, "d")))]
        if lo == c and hi >= c + 2:
            return [(c + 1, hi, None)]
        return []
    p, a, b = e.pos, e.in_valency, e.out_valency
    top = p + a - 1
    if not (p <= lo <= top or p <= hi <= top):
        if lo <= p - 1 and hi >= p + a:
            return []
        return [(lo if lo < p else lo - a + b, hi if hi < p else hi - a + b, None)]
    if e.id not in included or (p <= lo and hi <= top):
        return []
    out: List[Tuple[int, int, Optional[Corner]]] = []
    for x in range(p, p + b):
        if hi <= top and max_winding >= 1:
            # upper boundary turns under the vertex onto an out-strand
            gid = vertex_chord_id(e.id, e.in_label(hi), e.out_label(x), 1)
            out.append((lo, x, Corner(gid, "u", s, False)))
        elif lo >= p and hi > top:
            # lower boundary comes over the top of the vertex
            gid = vertex_chord_id(e.id, e.out_label(x), e.in_label(lo))
            out.append((x, hi - a + b, Corner(gid, "d", s, False)))
    return out


def _cells(s: int, lo: int, hi: int) -> Tuple[Tuple[int, int], ...]:
    return tuple((s, g) for g in range(lo + 1, hi + 1))


def _walk(d: LagrangianDiagram, included: Collection[str], max_winding: int = 0
          ) -> Iterator[Tuple[List[Corner], Tuple[Tuple[int, int], ...], Tuple[int, int]]]:
    """Yield (corners counter-clockwise, covered cells, (first event, last event)) for every disk."""
    evs = d.events
    for s0, e in enumerate(evs):
        for lo, hi, first in _initial(e, s0, included):
            stack = [(s0 + 1, lo, hi, (), _cells(s0 + 1, lo, hi))]
            while stack:
                s, lo_, hi_, turns, cells = stack.pop()
                if s >= len(evs):
                    continue
                ev = evs[s]
                end = _terminal(ev, s, lo_, hi_, included)
                if end is not None:
                    yield _boundary_order(first, list(turns), end[1]), cells, (s0, s)
                for nlo, nhi, turn in _through(ev, s, lo_, hi_, included, max_winding):
                    stack.append((s + 1, nlo, nhi, turns + ((turn,) if turn else ()), cells + _cells(s + 1, nlo, nhi)))


def _boundary_order(first: Optional[Corner], turns: List[Corner], last: Optional[Corner]) -> List[Corner]:
    """Lower boundary left to right, then the upper boundary back."""
    lower = sorted((c for c in turns if c.kind == "d"), key=lambda c: c.event)
    upper = sorted((c for c in turns if c.kind == "u"), key=lambda c: -c.event)
    return ([first] if first else []) + lower + ([last] if last else []) + upper


def enumerate_disks(d: LagrangianDiagram, generators: Dict[str, Generator],
                    included: Collection[str] = (), max_winding: int = 0) -> Dict[str, List[AdmissibleDisk]]:
    """Rigid disks with exactly one positive corner, grouped by that corner."""
    out: Dict[str, List[AdmissibleDisk]] = {}
    for order, cells, span in _walk(d, included, max_winding):
        pos = [c for c in order if c.positive]
        if len(pos) != 1:
            continue
        i = order.index(pos[0])
        negatives = order[i + 1:] + order[:i]
        g = generators[pos[0].generator]
        for c in negatives:
            if c.generator not in generators:
                raise DiskModelError(f"disk corner {c.generator} is not a generator")
        if not negatives:
            if g.source != g.target:
                raise DiskModelError(f"disk at {g.id} has no negative corners but {g.id} is not a loop")
            word = idempotent(g.source)
        else:
            letters = tuple(c.generator for c in negatives)
            for later, earlier in zip(letters, letters[1:]):
                if generators[earlier].target != generators[later].source:
                    raise DiskModelError(f"disk at {g.id} reads the non-composable word {' '.join(letters)}")
            word = Word(letters, generators[letters[-1]].source, generators[letters[0]].target)
        if (word.source, word.target) != (g.source, g.target):
            raise DiskModelError(f"disk at {g.id} has output {word} with the wrong endpoints")
        out.setdefault(g.id, []).append(AdmissibleDisk(g.id, tuple(order), word, len(cells), span, cells))
    for gid in out:
        out[gid].sort(key=lambda disk: (disk.span, [c.event for c in disk.corners], disk.word.letters))
    return out


def _weights(generators: Dict[str, Generator], disks: Dict[str, List[AdmissibleDisk]],
             fixed: Collection[str]) -> Dict[str, Fraction]:
    """w(g) = 1 + max over disks at g of the summed weights of its negative corners."""
    memo: Dict[str, Fraction] = {gid: Fraction(generators[gid].weight) for gid in fixed}
    active: set = set()

    def weight(gid: str) -> Fraction:
        if gid in memo:
            return memo[gid]
        if gid in active:
            raise DiskModelError(f"disks run in a cycle through {gid}; no action filtration")
        active.add(gid)
        best = Fraction(0)
        for disk in disks.get(gid, []):
            best = max(best, sum((weight(x) for x in disk.negatives()), Fraction(0)))
        active.discard(gid)
        memo[gid] = best + 1
        return memo[gid]

    for gid in generators:
        weight(gid)
    return memo


# =========================
# Assembly
# =========================
@dataclass
class Assembly:
    dga: QuiverDGA
    disks: Dict[str, List[AdmissibleDisk]]
    diagram: LagrangianDiagram
    surface: Optional[MarkedSurface]
    maslov: MaslovPotential
    mode: str
    max_winding: int


def included_vertices(f: FrontDiagram, mode: str) -> List[str]:
    sings = [e for e in f.events if isinstance(e, Singularity)]
    if mode == "crossings":
        if sings:
            raise LagrangianError(f"{f.name or 'front'} still has singularities {[s.id for s in sings]}; open or resolve them")
        return []
    if mode == "stopped":
        return [s.id for s in sings if s.side == "left"]
    if mode == "full":
        return [s.id for s in sings]
    raise LagrangianError(f"unknown mode {mode!r}; expected one of {MODES}")


def assemble(f: FrontDiagram, mode: str = "full", max_winding: int = 2,
             seeds: Optional[Dict[str, int]] = None, name: str = "") -> Assembly:
    """
    CE algebra of f:
      crossings  crossing generators only (no singularities allowed)
      stopped    adds the winding-0 chords of the left singularities
      full       adds all chords of all singularities up to max_winding
    """
    if max_winding < 0:
        raise LagrangianError("max_winding must be >= 0")
    included = included_vertices(f, mode)
    winding = 0 if mode == "stopped" else max_winding
    m = compute_maslov(f, seeds)
    lag = ng_resolve(f)
    surface = vertex_surface(lag, m, included)
    internal = internal_dga(surface, winding) if surface is not None else None

    gens = grade(f, m, lag)
    fixed = set()
    if internal is not None:
        clash = set(gens) & set(internal.generators)
        if clash:
            raise LagrangianError(f"generator ids used twice: {sorted(clash)}")
        gens.update(internal.generators)
        fixed = set(internal.generators)
    disks = enumerate_disks(lag, gens, included, winding)
    weights = _weights(gens, disks, fixed)
    gens = {gid: Generator(g.id, g.source, g.target, g.degree, weights[gid]) for gid, g in gens.items()}
    diff: Dict[str, FormalSum] = {}
    for gid in gens:
        acc = FormalSum(disk.word for disk in disks.get(gid, []))
        if internal is not None and gid in internal.differential:
            acc = acc + internal.differential[gid]
        diff[gid] = acc if acc else ZERO
    vertices = tuple(lag.trace.components())
    dga = QuiverDGA(vertices, gens, diff, name=name or f"{f.name or 'front'}:{mode}")
    LOG.info("%s: %d vertices, %d generators, %d disks", dga.name, len(vertices), len(gens),
             sum(len(v) for v in disks.values()))
    return Assembly(dga, disks, lag, surface, m, mode, winding)


def assemble_ce(f: FrontDiagram, mode: str = "full", max_winding: int = 2,
                seeds: Optional[Dict[str, int]] = None) -> QuiverDGA:
    return assemble(f, mode, max_winding, seeds).dga


def crossing_quiver(f: FrontDiagram) -> frozenset:
    """Arrows (source, target) of the crossing algebra, loops excluded."""
    dga = assemble_ce(f, "crossings")
    return frozenset((g.source, g.target) for g in dga.generators.values() if g.source != g.target)


# =========================
# Planar map
# =========================
Cell = Tuple[int, int]
Slot = Tuple[int, int]


class _Classes:
    """Plain union-find over hashable keys."""

    def __init__(self):
        self.parent: Dict[Any, Any] = {}

    def add(self, x: Any) -> None:
        self.parent.setdefault(x, x)

    def find(self, x: Any) -> Any:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: Any, b: Any) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass
class PlanarMap:
    """
    Vertices are crossings, singular points and border ends; edges are strand
    pieces between them; faces are the regions between strands, each a union
    of (slice, gap) cells of unit area.
    """

    vertices: List[Dict[str, Any]]
    edges: List[Dict[str, Any]]
    faces: List[Dict[str, Any]]
    cell_face: Dict[Cell, str]

    def face_area(self, fid: str) -> Optional[int]:
        return next(f["area"] for f in self.faces if f["id"] == fid)

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def as_dict(self) -> Dict[str, Any]:
        return {"vertices": self.vertices, "edges": self.edges, "faces": self.faces}


def _gaps_across(e: LagEvent, g: int) -> List[int]:
    """Gaps right of e that the region in gap g left of e runs into."""
    if isinstance(e, Cap):
        q = e.pos
        return [g] if g < q else [q, q + 2] if g == q else [g + 2]
    if isinstance(e, Close):
        q = e.pos
        if g == q + 1:
            return []
        return [g] if g < q else [q] if g in (q, q + 2) else [g - 2]
    if isinstance(e, LagCrossing):
        return [] if g == e.pos + 1 else [g]
    p, a, b = e.pos, e.in_valency, e.out_valency
    if g < p:
        return [g]
    if a == 0 and g == p:
        return [p, p + b]
    if g == p:
        return [p]
    if g < p + a:
        return []
    return [g - a + b]


def _slots_across(e: LagEvent, x: int) -> Optional[int]:
    if isinstance(e, Cap):
        return x if x < e.pos else x + 2
    if isinstance(e, Close):
        return None if x in (e.pos, e.pos + 1) else x if x < e.pos else x - 2
    if isinstance(e, LagCrossing):
        return None if x in (e.pos, e.pos + 1) else x
    if e.pos <= x < e.pos + e.in_valency:
        return None
    return x if x < e.pos else x - e.in_valency + e.out_valency


def _front_slices(d: LagrangianDiagram) -> List[int]:
    """Front slice holding the strands of each resolved slice."""
    out = [0]
    for k, e in enumerate(d.front.events):
        if isinstance(e, RightCusp):
            out.append(k)
        out.append(k + 1)
    return out


def planar_map(d: LagrangianDiagram) -> PlanarMap:
    last = len(d.events)
    cells = _Classes()
    slots = _Classes()
    for s, n in enumerate(d.counts):
        for g in range(n + 1):
            cells.add((s, g))
        for x in range(n):
            slots.add((s, x))
    # (slot, vertex id, position in the vertex's cyclic order)
    ends: List[Tuple[Slot, str, int]] = []
    vertices: List[Dict[str, Any]] = []
    for s, e in enumerate(d.events):
        for g in range(d.counts[s] + 1):
            for h in _gaps_across(e, g):
                cells.union((s, g), (s + 1, h))
        for x in range(d.counts[s]):
            y = _slots_across(e, x)
            if y is not None:
                slots.union((s, x), (s + 1, y))
        if isinstance(e, Cap):
            slots.union((s + 1, e.pos), (s + 1, e.pos + 1))
        elif isinstance(e, Close):
            slots.union((s, e.pos), (s, e.pos + 1))
        elif isinstance(e, LagCrossing):
            c = e.pos
            # counter-clockwise from the north-east
            for k, slot in enumerate(((s + 1, c + 1), (s, c + 1), (s, c), (s + 1, c))):
                ends.append((slot, e.id, k))
            vertices.append({"id": e.id, "type": "crossing", "kind": e.kind, "event": s})
        else:
            for x in range(e.pos, e.pos + e.out_valency):
                ends.append(((s + 1, x), e.id, e.out_label(x) - 1))
            for x in range(e.pos, e.pos + e.in_valency):
                ends.append(((s, x), e.id, e.in_label(x) - 1))
            vertices.append({"id": e.id, "type": "singular", "event": s, "valency": e.in_valency + e.out_valency,
                             "base_point": "before end 1"})
    for side, s in (("left", 0), ("right", last)):
        if d.counts[s] and d.bordered:
            for x in range(d.counts[s]):
                ends.append(((s, x), f"{side}:{x}", 0))
                vertices.append({"id": f"{side}:{x}", "type": "border", "event": s})

    front_slice = _front_slices(d)
    edge_id: Dict[Slot, str] = {}
    edges: List[Dict[str, Any]] = []
    for slot in sorted(slots.parent):
        root = slots.find(slot)
        if root not in edge_id:
            edge_id[root] = f"e{len(edges) + 1}"
            comp = d.trace.component((front_slice[root[0]], root[1]))
            edges.append({"id": edge_id[root], "component": comp, "ends": []})
    by_id = {e["id"]: e for e in edges}
    around: Dict[str, Dict[int, str]] = {}
    for slot, vid, k in ends:
        eid = edge_id[slots.find(slot)]
        by_id[eid]["ends"].append(vid)
        around.setdefault(vid, {})[k] = eid
    for v in vertices:
        v["edges"] = [around[v["id"]][k] for k in sorted(around[v["id"]])]

    face_id: Dict[Cell, str] = {}
    faces: List[Dict[str, Any]] = []
    for cell in sorted(cells.parent):
        root = cells.find(cell)
        if root not in face_id:
            face_id[root] = f"f{len(faces) + 1}"
            faces.append({"id": face_id[root], "area": 0, "unbounded": False})
    by_face = {f["id"]: f for f in faces}
    cell_face: Dict[Cell, str] = {}
    for s, g in sorted(cells.parent):
        f = by_face[face_id[cells.find((s, g))]]
        cell_face[(s, g)] = f["id"]
        f["area"] += 1
        if g in (0, d.counts[s]) or s in (0, last):
            f["unbounded"] = True
    for f in faces:
        if f["unbounded"]:
            f["area"] = None
    return PlanarMap(vertices, edges, faces, cell_face)


def disk_faces(pm: PlanarMap, disk: AdmissibleDisk) -> Dict[str, int]:
    """Face multiset of a disk; it must cover every face it meets a whole number of times."""
    seen: Dict[str, int] = {}
    for cell in disk.cells:
        fid = pm.cell_face[cell]
        seen[fid] = seen.get(fid, 0) + 1
    out: Dict[str, int] = {}
    for fid, k in sorted(seen.items()):
        area = pm.face_area(fid)
        if area is None or k % area:
            raise DiskModelError(f"disk at {disk.positive} covers {k} cells of face {fid} (area {area})")
        out[fid] = k // area
    return out


# =========================
# JSON
# =========================
def _lag_event_to_json(e: LagEvent) -> Dict[str, Any]:
    if isinstance(e, Cap):
        return {"type": "cap", "pos": e.pos}
    if isinstance(e, Close):
        return {"type": "close", "pos": e.pos}
    if isinstance(e, LagCrossing):
        return {"type": "crossing", "pos": e.pos, "id": e.id, "kind": e.kind,
                "lower": list(e.lower), "upper": list(e.upper)}
    return {"type": "vertex", "pos": e.pos, "in": e.in_valency, "out": e.out_valency, "id": e.id, "side": e.side}


def diagram_to_json(d: LagrangianDiagram) -> Dict[str, Any]:
    """Slice dump of a resolved diagram plus its planar map."""
    return {
        "front": d.front.name,
        "slices": list(d.counts),
        "events": [_lag_event_to_json(e) for e in d.events],
        "components": d.trace.components(),
        "vertex_ends": {vid: [{"label": k, "component": d.trace.component(n)} for k, n in ends]
                        for vid, ends in d.vertex_ends.items()},
        "bordered": d.bordered,
        "planar_map": planar_map(d).as_dict(),
    }


def disks_to_json(disks: Dict[str, List[AdmissibleDisk]], pm: Optional[PlanarMap] = None) -> Dict[str, Any]:
    """With a planar map, every disk also carries its face multiset."""
    out: Dict[str, Any] = {}
    for gid, ds in sorted(disks.items()):
        out[gid] = [disk.as_dict() for disk in ds]
        if pm is not None:
            for row, disk in zip(out[gid], ds):
                row["faces"] = disk_faces(pm, disk)
    return out


def assembly_summary(asm: Assembly) -> Dict[str, Any]:
    return {
        "mode": asm.mode,
        "max_winding": asm.max_winding,
        "maslov": asm.maslov.by_component(),
        "underdetermined": list(asm.maslov.underdetermined),
        "generators": len(asm.dga.generators),
        "disks": sum(len(v) for v in asm.disks.values()),
    }


def require_front(obj: Any) -> FrontDiagram:
    if not isinstance(obj, FrontDiagram):
        raise FrontError(f"expected a front diagram, got {type(obj).__name__}")
    return obj
