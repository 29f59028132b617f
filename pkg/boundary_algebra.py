"""
boundary_algebra.py

Internal Chekanov-Eliashberg algebra of a 0-dimensional Legendrian (spheres
and stops) in the boundary of a Weinstein surface, plus the surgered surface
obtained by attaching handles and half-handles.

Conventions:
  - each boundary circle lists its marked points counter-clockwise, with the
    base point sitting after the last listed point (between the highest and
    the lowest index);
  - a chord c[i>j]^p leaves point i, runs counter-clockwise for
    (j - i) + p * N steps on a circle with N points, and crosses the base
    point p times; its weight is that step count;
  - standalone degree: |c[i>j]^p| = 1 - 2p + m(i) - m(j), with m = 0 unless
    the surface carries point potentials.

Usage:
    s = MarkedSurface.disk_with_stops(3)
    dga = internal_dga(s, max_winding=2)
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from ainfty import AInfinityAlgebra, BasisElement
from quiver_dga import (
    FormalSum,
    Generator,
    QuiverDGA,
    Word,
    ZERO,
    idempotent,
    sort_key,
)

LOG = logging.getLogger(__name__)

SPHERE = "sphere"
STOP = "stop"


class SurfaceError(ValueError):
    pass


class NullHomotopicCocore(SurfaceError):
    def __init__(self, piece: str):
        self.piece = piece
        super().__init__(f"co-core of {piece} is null-homotopic; remove that piece first")


# =========================
# Surfaces
# =========================
@dataclass(frozen=True)
class MarkedPoint:
    id: str
    piece: str
    kind: str


@dataclass(frozen=True)
class BoundaryCircle:
    id: str
    points: Tuple[MarkedPoint, ...]


@dataclass(frozen=True)
class SurfaceComponent:
    genus: int
    circles: Tuple[BoundaryCircle, ...]

    @property
    def simply_connected(self) -> bool:
        return self.genus == 0 and len(self.circles) == 1

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - len(self.circles)


@dataclass(frozen=True)
class MarkedSurface:
    components: Tuple[SurfaceComponent, ...]
    potentials: Tuple[Tuple[str, int], ...] = ()

    def __post_init__(self):
        seen: Dict[str, List[MarkedPoint]] = {}
        circle_ids = set()
        for comp in self.components:
            if comp.genus < 0:
                raise SurfaceError("negative genus")
            for c in comp.circles:
                if c.id in circle_ids:
                    raise SurfaceError(f"duplicate circle id {c.id}")
                circle_ids.add(c.id)
                for p in c.points:
                    seen.setdefault(p.piece, []).append(p)
        point_ids = [p.id for pts in seen.values() for p in pts]
        if len(set(point_ids)) != len(point_ids):
            raise SurfaceError("duplicate marked point ids")
        for piece, pts in seen.items():
            kinds = {p.kind for p in pts}
            if len(kinds) != 1:
                raise SurfaceError(f"piece {piece} mixes sphere and stop points")
            kind = kinds.pop()
            want = 2 if kind == SPHERE else 1
            if kind not in (SPHERE, STOP):
                raise SurfaceError(f"unknown point kind {kind!r}")
            if len(pts) != want:
                raise SurfaceError(f"{kind} {piece} owns {len(pts)} points, expected {want}")

    # -- lookups
    def circles(self) -> List[Tuple[int, BoundaryCircle]]:
        return [(k, c) for k, comp in enumerate(self.components) for c in comp.circles]

    def pieces(self) -> List[str]:
        out: List[str] = []
        for _, c in self.circles():
            for p in c.points:
                if p.piece not in out:
                    out.append(p.piece)
        return out

    def piece_kind(self, piece: str) -> str:
        for _, c in self.circles():
            for p in c.points:
                if p.piece == piece:
                    return p.kind
        raise SurfaceError(f"unknown piece {piece}")

    def points_of(self, piece: str) -> List[MarkedPoint]:
        return [p for _, c in self.circles() for p in c.points if p.piece == piece]

    def locate(self, point_id: str) -> Tuple[int, BoundaryCircle, int]:
        for k, c in self.circles():
            for pos, p in enumerate(c.points):
                if p.id == point_id:
                    return k, c, pos
        raise SurfaceError(f"unknown point {point_id}")

    def potential(self, point_id: str) -> int:
        return dict(self.potentials).get(point_id, 0)

    # -- common shapes
    @staticmethod
    def disk(points: Sequence[Tuple[str, str, str]], genus: int = 0) -> "MarkedSurface":
        circle = BoundaryCircle("C0", tuple(MarkedPoint(*p) for p in points))
        return MarkedSurface((SurfaceComponent(genus, (circle,)),))

    @staticmethod
    def disk_with_stops(n: int) -> "MarkedSurface":
        return MarkedSurface.disk([(str(i), f"s{i}", STOP) for i in range(1, n + 1)])


# =========================
# Chords
# =========================
@dataclass(frozen=True)
class BoundaryChord:
    circle: str
    start: int
    end: int
    winding: int
    length: int

    def steps(self) -> int:
        return self.end - self.start + self.winding * self.length


def chord_between(length: int, circle: str, start: int, steps: int) -> BoundaryChord:
    if steps < 1:
        raise SurfaceError("chords have positive length")
    return BoundaryChord(circle, start, (start + steps) % length, (start + steps) // length, length)


class ChordSystem:
    """Chords of one surface with their ids, degrees and differentials."""

    def __init__(self, surface: MarkedSurface):
        self.surface = surface
        self.circle = {c.id: (k, c) for k, c in surface.circles()}

    def point(self, ch: BoundaryChord, end: bool = False) -> MarkedPoint:
        _, c = self.circle[ch.circle]
        return c.points[ch.end if end else ch.start]

    def chord_id(self, ch: BoundaryChord) -> str:
        return f"c[{self.point(ch).id}>{self.point(ch, True).id}]^{ch.winding}"

    def degree(self, ch: BoundaryChord) -> int:
        return 1 - 2 * ch.winding + self.surface.potential(self.point(ch).id) - self.surface.potential(self.point(ch, True).id)

    def generator(self, ch: BoundaryChord) -> Generator:
        return Generator(
            self.chord_id(ch),
            self.point(ch).piece,
            self.point(ch, True).piece,
            self.degree(ch),
            Fraction(ch.steps()),
        )

    def word(self, chords: Sequence[BoundaryChord]) -> Word:
        """Word c_k ... c_1 from chords listed as written (last one first)."""
        if not chords:
            raise SurfaceError("empty chord word")
        return Word(tuple(self.chord_id(c) for c in chords), self.point(chords[-1]).piece, self.point(chords[0], True).piece)

    def enumerate(self, max_winding: int) -> List[BoundaryChord]:
        if max_winding < 0:
            raise SurfaceError("max_winding must be >= 0")
        out: List[BoundaryChord] = []
        for _, c in self.surface.circles():
            n = len(c.points)
            for i in range(n):
                for j in range(n):
                    for p in range(max_winding + 1):
                        if j - i + p * n >= 1:
                            out.append(BoundaryChord(c.id, i, j, p, n))
        return sorted(out, key=lambda ch: (ch.circle, ch.start, ch.winding, ch.end))

    def splittings(self, ch: BoundaryChord) -> List[Tuple[BoundaryChord, BoundaryChord]]:
        """All (second, first) with ch = second * first, split at an interior passage."""
        out = []
        for t in range(1, ch.steps()):
            first = chord_between(ch.length, ch.circle, ch.start, t)
            second = chord_between(ch.length, ch.circle, first.end, ch.steps() - t)
            out.append((second, first))
        return out

    def d0(self, ch: BoundaryChord) -> FormalSum:
        return FormalSum(self.word([b, a]) for b, a in self.splittings(ch))

    def bounds_disk(self, ch: BoundaryChord) -> bool:
        k, _ = self.circle[ch.circle]
        return ch.start == ch.end and ch.winding == 1 and self.surface.components[k].simply_connected

    def d1(self, ch: BoundaryChord) -> FormalSum:
        if self.bounds_disk(ch):
            return FormalSum([idempotent(self.point(ch).piece)])
        return ZERO

    def concatenable(self, second: BoundaryChord, first: BoundaryChord) -> bool:
        return second.circle == first.circle and first.end == second.start

    def concatenate(self, second: BoundaryChord, first: BoundaryChord) -> BoundaryChord:
        if not self.concatenable(second, first):
            raise SurfaceError("chords do not concatenate")
        return chord_between(first.length, first.circle, first.start, first.steps() + second.steps())

    def is_short(self, ch: BoundaryChord) -> bool:
        return ch.steps() == 1

    def short_chords(self) -> List[BoundaryChord]:
        return [ch for ch in self.enumerate(1) if self.is_short(ch)]


def enumerate_chords(s: MarkedSurface, max_winding: int) -> List[BoundaryChord]:
    return ChordSystem(s).enumerate(max_winding)


def d0(s: MarkedSurface, ch: BoundaryChord) -> FormalSum:
    return ChordSystem(s).d0(ch)


def d1(s: MarkedSurface, ch: BoundaryChord) -> FormalSum:
    return ChordSystem(s).d1(ch)


def internal_dga(s: MarkedSurface, max_winding: int, with_d1: bool = True, name: str = "") -> QuiverDGA:
    cs = ChordSystem(s)
    gens: Dict[str, Generator] = {}
    diff: Dict[str, FormalSum] = {}
    for ch in cs.enumerate(max_winding):
        g = cs.generator(ch)
        gens[g.id] = g
        diff[g.id] = cs.d0(ch) + (cs.d1(ch) if with_d1 else ZERO)
    LOG.debug("internal algebra: %d pieces, %d chords (winding <= %d)", len(s.pieces()), len(gens), max_winding)
    return QuiverDGA(tuple(s.pieces()), gens, diff, name=name or "internal")


# =========================
# Word combinatorics
# =========================
def _chords_of(cs: ChordSystem, chords: Sequence[BoundaryChord]) -> None:
    for second, first in zip(chords, chords[1:]):
        if cs.point(first, True).piece != cs.point(second).piece:
            raise SurfaceError("word is not composable")


def total_concatenation(s: MarkedSurface, chords: Sequence[BoundaryChord]) -> List[BoundaryChord]:
    cs = ChordSystem(s)
    _chords_of(cs, chords)
    out: List[BoundaryChord] = []
    for ch in reversed(list(chords)):
        if out and cs.concatenable(ch, out[-1]):
            out[-1] = cs.concatenate(ch, out[-1])
        else:
            out.append(ch)
    return list(reversed(out))


def total_splitting(s: MarkedSurface, chords: Sequence[BoundaryChord]) -> List[BoundaryChord]:
    cs = ChordSystem(s)
    _chords_of(cs, chords)
    out: List[BoundaryChord] = []
    for ch in chords:
        pieces = [chord_between(ch.length, ch.circle, (ch.start + t) % ch.length, 1) for t in range(ch.steps())]
        out.extend(reversed(pieces))
    return out


def is_unconcatable(s: MarkedSurface, chords: Sequence[BoundaryChord]) -> bool:
    cs = ChordSystem(s)
    _chords_of(cs, chords)
    return not any(cs.concatenable(b, a) for b, a in zip(chords, chords[1:]))


def short_chords(s: MarkedSurface) -> List[BoundaryChord]:
    return ChordSystem(s).short_chords()


def _short_words(cs: ChordSystem, max_winding: int, max_length: int) -> List[List[BoundaryChord]]:
    """Unconcatable composable words of short chords (as written), within bounds."""
    shorts = cs.short_chords()
    out: List[List[BoundaryChord]] = []
    stack: List[List[BoundaryChord]] = [[c] for c in shorts if c.winding <= max_winding]
    while stack:
        w = stack.pop()
        out.append(w)
        if len(w) >= max_length:
            continue
        used = sum(c.winding for c in w)
        last = w[0]
        for c in shorts:
            if used + c.winding > max_winding:
                continue
            if cs.point(last, True).piece != cs.point(c).piece or cs.concatenable(c, last):
                continue
            stack.append([c] + w)
    return out


def unconcatable_short_basis(s: MarkedSurface, max_winding: int, max_length: int) -> List[Word]:
    cs = ChordSystem(s)
    words = [idempotent(v) for v in s.pieces()]
    words += [cs.word(w) for w in _short_words(cs, max_winding, max_length)]
    return sorted(words, key=sort_key)


@dataclass(frozen=True)
class DiskSequence:
    chords: Tuple[BoundaryChord, ...]
    word: Word


def disk_sequences(s: MarkedSurface, max_length: int) -> List[DiskSequence]:
    cs = ChordSystem(s)
    out: List[DiskSequence] = []
    for k, comp in enumerate(s.components):
        if not comp.simply_connected:
            continue
        circle = comp.circles[0]
        n = len(circle.points)
        for start in range(n):
            for parts in range(1, min(n, max_length) + 1):
                for cuts in _compositions(n, parts):
                    pos = start
                    seq: List[BoundaryChord] = []
                    for steps in cuts:
                        ch = chord_between(n, circle.id, pos, steps)
                        seq.append(ch)
                        pos = ch.end
                    written = tuple(reversed(seq))
                    out.append(DiskSequence(written, cs.word(written)))
    return sorted(out, key=lambda d: sort_key(d.word))


def _compositions(total: int, parts: int) -> Iterable[Tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


# =========================
# Handles
# =========================
@dataclass(frozen=True)
class Handle:
    piece: str
    kind: str
    points: Tuple[str, ...]


@dataclass
class SurgeredSurface:
    surface: MarkedSurface
    handles: Tuple[Handle, ...]
    euler: Dict[int, int]
    boundary_cycles: List[List[Tuple[str, int]]] = field(default_factory=list)
    empty_circles: int = 0
    component_of: Dict[int, int] = field(default_factory=dict)

    @property
    def boundary_circle_count(self) -> int:
        return len(self.boundary_cycles) + self.empty_circles

    def cocores(self) -> List[str]:
        return [h.piece for h in self.handles]


def attach_handles(s: MarkedSurface) -> SurgeredSurface:
    parent = list(range(len(s.components)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    handles: List[Handle] = []
    for piece in s.pieces():
        pts = s.points_of(piece)
        handles.append(Handle(piece, pts[0].kind, tuple(p.id for p in pts)))
        if len(pts) == 2:
            a, _, _ = s.locate(pts[0].id)
            b, _, _ = s.locate(pts[1].id)
            parent[find(a)] = find(b)

    euler: Dict[int, int] = {}
    for k, comp in enumerate(s.components):
        euler[find(k)] = euler.get(find(k), 0) + comp.euler_characteristic
    for h in handles:
        if h.kind == SPHERE:
            k, _, _ = s.locate(h.points[0])
            euler[find(k)] -= 1

    # boundary arcs (circle, t) run from point t to point t+1; follow them
    # through the handle sides to trace the new boundary circles
    arc_after: Dict[str, Tuple[str, int]] = {}
    arc_into: Dict[str, Tuple[str, int]] = {}
    empty = 0
    for _, c in s.circles():
        n = len(c.points)
        if n == 0:
            empty += 1
        for t, p in enumerate(c.points):
            arc_after[p.id] = (c.id, t)
            arc_into[c.points[(t + 1) % n].id] = (c.id, t)
    partner: Dict[str, str] = {}
    for h in handles:
        if h.kind == SPHERE:
            partner[h.points[0]] = h.points[1]
            partner[h.points[1]] = h.points[0]
        else:
            partner[h.points[0]] = h.points[0]
    end_point: Dict[Tuple[str, int], str] = {arc: pid for pid, arc in arc_into.items()}
    following = {arc: arc_after[partner[end_point[arc]]] for arc in end_point}
    cycles: List[List[Tuple[str, int]]] = []
    seen = set()
    for arc in sorted(following):
        if arc in seen:
            continue
        cyc = []
        cur = arc
        while cur not in seen:
            seen.add(cur)
            cyc.append(cur)
            cur = following[cur]
        cycles.append(cyc)
    comp_of = {k: find(k) for k in range(len(s.components))}
    return SurgeredSurface(s, tuple(handles), euler, cycles, empty, comp_of)


def cocore_null_homotopic(ss: SurgeredSurface, piece: str) -> bool:
    """
    True iff the co-core of `piece` cobounds a disk with a boundary arc:
    one foot of the handle is the only marked point on a circle that bounds
    a disk component.
    """
    if piece not in ss.cocores():
        raise SurfaceError(f"{piece} has no co-core in this surface")
    s = ss.surface
    for p in s.points_of(piece):
        k, circle, _ = s.locate(p.id)
        if len(circle.points) == 1 and s.components[k].simply_connected:
            return True
    return False


def null_homotopic_pieces(s: MarkedSurface) -> List[str]:
    ss = attach_handles(s)
    return [p for p in ss.cocores() if cocore_null_homotopic(ss, p)]


@dataclass(frozen=True)
class SurgeredChord:
    start: str
    end: str
    word: Word
    passes: int
    weight: int


def surgered_boundary_chords(ss: SurgeredSurface, max_passes: int, max_length: int = 6) -> List[SurgeredChord]:
    """
    Reeb chords of the co-core ends along the surgered boundary.

    A chord leaves a co-core end on the handle side ending at point q, runs
    along the old boundary arcs, and jumps across a sphere handle whenever it
    continues past a foot; it must stop at a stop. Its reading is the word
    of the old short arcs it covered.
    """
    s = ss.surface
    cs = ChordSystem(s)
    kind = {h.piece: h.kind for h in ss.handles}
    partner: Dict[str, str] = {}
    for h in ss.handles:
        if h.kind == SPHERE:
            partner[h.points[0]] = h.points[1]
            partner[h.points[1]] = h.points[0]
    out: List[SurgeredChord] = []
    for h in ss.handles:
        for q in h.points:
            # the co-core end sitting just before the chord leaves q
            stack: List[Tuple[str, List[BoundaryChord]]] = [(q, [])]
            while stack:
                at, seq = stack.pop()
                if len(seq) >= max_length:
                    continue
                _, circle, pos = s.locate(at)
                n = len(circle.points)
                arc = chord_between(n, circle.id, pos, 1)
                if sum(c.winding for c in seq) + arc.winding > max_passes:
                    continue
                walked = [arc] + seq
                arrived = circle.points[arc.end]
                out.append(SurgeredChord(q, arrived.id, cs.word(walked), sum(c.winding for c in walked), len(walked)))
                if kind[arrived.piece] == SPHERE:
                    stack.append((partner[arrived.id], walked))
    return sorted(out, key=lambda c: sort_key(c.word))


# =========================
# Removing a null-homotopic sphere
# =========================
def surger_away(s: MarkedSurface, piece: str) -> MarkedSurface:
    """Attach the handle at `piece` and drop its points (the surface V_piece)."""
    if s.piece_kind(piece) != SPHERE:
        raise SurfaceError("only spheres carry 1-handles")
    p, q = s.points_of(piece)
    kp, cp, ip = s.locate(p.id)
    kq, cq, iq = s.locate(q.id)

    def after(c: BoundaryCircle, i: int, stop: Optional[int] = None) -> List[MarkedPoint]:
        n = len(c.points)
        out = []
        t = (i + 1) % n
        while t != i and t != stop:
            out.append(c.points[t])
            t = (t + 1) % n
        return out

    comps = list(s.components)
    if cp.id == cq.id:
        first = BoundaryCircle(cp.id, tuple(after(cp, ip, iq)))
        second = BoundaryCircle(cp.id + "'", tuple(after(cp, iq, ip)))
        comp = comps[kp]
        circles = tuple(c for c in comp.circles if c.id != cp.id) + (first, second)
        comps[kp] = SurfaceComponent(comp.genus, circles)
    else:
        merged = BoundaryCircle(cp.id, tuple(after(cp, ip)) + tuple(after(cq, iq)))
        if kp == kq:
            comp = comps[kp]
            circles = tuple(c for c in comp.circles if c.id not in (cp.id, cq.id)) + (merged,)
            comps[kp] = SurfaceComponent(comp.genus + 1, circles)
        else:
            a, b = comps[kp], comps[kq]
            circles = tuple(c for c in a.circles if c.id != cp.id) + tuple(c for c in b.circles if c.id != cq.id) + (merged,)
            comps[kp] = SurfaceComponent(a.genus + b.genus, circles)
            del comps[kq]
    pots = tuple((k, v) for k, v in s.potentials if k not in (p.id, q.id))
    return MarkedSurface(tuple(comps), pots)


# =========================
# Closed-form minimal model
# =========================
def closed_form_minimal_model(s: MarkedSurface, max_winding: int, max_length: int,
                              arity_bound: int = 6) -> AInfinityAlgebra:
    bad = null_homotopic_pieces(s)
    if bad:
        raise NullHomotopicCocore(bad[0])
    cs = ChordSystem(s)
    short_by_id = {cs.chord_id(c): c for c in cs.short_chords()}

    words: Dict[str, List[BoundaryChord]] = {}
    basis: Dict[str, BasisElement] = {}
    reps: Dict[str, FormalSum] = {}
    for v in s.pieces():
        basis[str(idempotent(v))] = BasisElement(str(idempotent(v)), 0, v, v)
        reps[str(idempotent(v))] = FormalSum([idempotent(v)])
    for w in sorted(_short_words(cs, max_winding, max_length), key=lambda w: sort_key(cs.word(w))):
        word = cs.word(w)
        words[str(word)] = w
        basis[str(word)] = BasisElement(str(word), sum(cs.degree(c) for c in w), word.source, word.target)
        reps[str(word)] = FormalSum([word])
    units = {v: str(idempotent(v)) for v in s.pieces()}

    def key(seq: List[BoundaryChord], src: str) -> Optional[str]:
        if not seq:
            return units[src]
        k = str(cs.word(seq))
        return k if k in basis else None

    def reduce(seq: List[BoundaryChord], src: str) -> Optional[List[BoundaryChord]]:
        # rewrite c2 c1 -> d_{-1}(c2 * c1) until no adjacent pair concatenates
        seq = list(seq)
        i = 0
        while i + 1 < len(seq):
            second, first = seq[i], seq[i + 1]
            if cs.concatenable(second, first):
                if not cs.bounds_disk(cs.concatenate(second, first)):
                    return None
                del seq[i:i + 2]
                i = max(i - 1, 0)
            else:
                i += 1
        return seq

    mu: Dict[int, Dict[Tuple[str, ...], FrozenSet[str]]] = {2: {}}
    elements = list(basis.values())
    for x2, x1 in product(elements, elements):
        if x1.target != x2.source:
            continue
        seq = words.get(x2.id, []) + words.get(x1.id, [])
        red = reduce(seq, x1.source)
        if red is None:
            continue
        k = key(red, x1.source)
        if k is None:
            LOG.debug("product %s . %s leaves the basis bounds", x2.id, x1.id)
            continue
        mu[2][(x2.id, x1.id)] = frozenset([k])

    for ds in disk_sequences(s, max_length=arity_bound):
        chords = list(ds.chords)
        k = len(chords)
        if k < 3 or k > arity_bound or not all(cs.is_short(c) for c in chords):
            continue
        table = mu.setdefault(k, {})
        inner = [str(cs.word([c])) for c in chords]
        if any(x not in basis for x in inner):
            continue
        hits: Dict[Tuple[str, ...], set] = {}
        for c in elements:
            cw = words.get(c.id, [])
            # pattern one: c_k x ... x (c_1 c)
            if c.target == cs.point(chords[-1]).piece and not (cw and cs.concatenable(chords[-1], cw[0])):
                last = key([chords[-1]] + cw, c.source)
                if last is not None:
                    hits.setdefault(tuple(inner[:-1] + [last]), set()).add(c.id)
            # pattern two: (c c_k) x ... x c_1
            if c.source == cs.point(chords[0], True).piece and not (cw and cs.concatenable(cw[-1], chords[0])):
                first = key(cw + [chords[0]], cs.point(chords[0]).piece)
                if first is not None:
                    hits.setdefault(tuple([first] + inner[1:]), set()).add(c.id)
        for tensor, outs in hits.items():
            # the same c matched by both patterns counts once
            table[tensor] = frozenset(outs)
    model = AInfinityAlgebra(basis, mu, units, arity_bound, name="closed-form", representatives=reps)
    LOG.info("closed-form model: %d basis elements, arities %s", len(basis), sorted(k for k, t in mu.items() if t))
    return model


# =========================
# JSON
# =========================
def surface_to_json(s: MarkedSurface) -> Dict[str, Any]:
    spheres: Dict[str, List[str]] = {}
    stops: Dict[str, str] = {}
    comps = []
    for comp in s.components:
        circles = []
        for c in comp.circles:
            pts = [{"id": p.id, "piece": p.piece, "kind": p.kind} for p in c.points]
            circles.append({"id": c.id, "points": pts, "basepoint_after": c.points[-1].id if c.points else None})
            for p in c.points:
                if p.kind == SPHERE:
                    spheres.setdefault(p.piece, []).append(p.id)
                else:
                    stops[p.piece] = p.id
        comps.append({"genus": comp.genus, "circles": circles})
    out: Dict[str, Any] = {"components": comps, "spheres": spheres, "stops": stops}
    if s.potentials:
        out["potentials"] = dict(s.potentials)
    return out


def surface_from_json(obj: Dict[str, Any]) -> MarkedSurface:
    try:
        comps = []
        n = 0
        for comp in obj["components"]:
            circles = []
            for c in comp["circles"]:
                pts = [MarkedPoint(str(p["id"]), str(p["piece"]), str(p["kind"])) for p in c["points"]]
                after = c.get("basepoint_after")
                if after is not None and pts:
                    ids = [p.id for p in pts]
                    if after not in ids:
                        raise SurfaceError(f"basepoint_after {after} is not on its circle")
                    cut = ids.index(after) + 1
                    pts = pts[cut:] + pts[:cut]
                circles.append(BoundaryCircle(str(c.get("id", f"C{n}")), tuple(pts)))
                n += 1
            comps.append(SurfaceComponent(int(comp.get("genus", 0)), tuple(circles)))
        pots = tuple(sorted((str(k), int(v)) for k, v in (obj.get("potentials") or {}).items()))
        return MarkedSurface(tuple(comps), pots)
    except (KeyError, TypeError) as e:
        raise SurfaceError(f"malformed surface JSON: {e}") from e
