"""
front_diagram.py

Front projections of singular bordered Legendrians in R^3 as slice-event
lists.

A diagram is read left to right. Between two events there is a vertical
slice of strands numbered 0 (bottom) upward. Events:

  LeftCusp(q)          inserts strands q, q+1
  RightCusp(q)         joins strands q, q+1
  Crossing(c)          swaps strands c, c+1 (twist=True for half-twist blocks)
  Singularity(p, a, b) consumes a strands at p and emits b strands at p

Ends of a singularity are labelled counter-clockwise from a base point
below it: emitted ends bottom to top, then consumed ends top to bottom.
Singularity.labels lists component labels for the emitted ends bottom to
top followed by the consumed ends bottom to top.

Usage:
    f = theta(3)
    m = compute_maslov(f)
    g = open_at(f, {"R"})
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

LOG = logging.getLogger(__name__)

Node = Tuple[int, int]


class FrontError(ValueError):
    pass


class SideError(FrontError):
    pass


class MaslovError(FrontError):
    def __init__(self, message: str, witness: Sequence[Any] = ()):
        self.witness = list(witness)
        super().__init__(message)


# =========================
# Events and diagrams
# =========================
@dataclass(frozen=True)
class LeftCusp:
    pos: int
    label: str = ""


@dataclass(frozen=True)
class RightCusp:
    pos: int
    label: str = ""


@dataclass(frozen=True)
class Crossing:
    pos: int
    id: str = ""
    twist: bool = False


@dataclass(frozen=True)
class Singularity:
    pos: int
    in_valency: int
    out_valency: int
    id: str
    labels: Tuple[str, ...] = ()

    @property
    def valency(self) -> int:
        return self.in_valency + self.out_valency

    @property
    def side(self) -> str:
        if self.in_valency == 0:
            return "left"
        if self.out_valency == 0:
            return "right"
        return "interior"

    def out_label(self, i: int) -> str:
        return self.labels[i] if self.labels else ""

    def in_label(self, i: int) -> str:
        return self.labels[self.out_valency + i] if self.labels else ""


Event = Union[LeftCusp, RightCusp, Crossing, Singularity]


@dataclass(frozen=True)
class BorderEnd:
    label: str = ""
    group: str = ""
    index: int = 0

    def name(self) -> str:
        return f"{self.group}.{self.index}" if self.group else self.label


@dataclass(frozen=True)
class FrontDiagram:
    left_ends: Tuple[BorderEnd, ...] = ()
    events: Tuple[Event, ...] = ()
    right_ends: Tuple[BorderEnd, ...] = ()
    name: str = ""
    seeds: Tuple[Tuple[str, int], ...] = ()

    @property
    def initial_strands(self) -> int:
        return len(self.left_ends)

    def counts(self) -> List[int]:
        """Strand count of every slice (slice k sits before event k)."""
        n = len(self.left_ends)
        out = [n]
        for e in self.events:
            n += _delta(e)
            out.append(n)
        return out

    @property
    def final_strands(self) -> int:
        return self.counts()[-1]

    @property
    def is_closed(self) -> bool:
        return not self.left_ends and not self.right_ends

    def singularities(self) -> Dict[str, Tuple[int, Singularity]]:
        return {e.id: (k, e) for k, e in enumerate(self.events) if isinstance(e, Singularity)}

    def crossings(self) -> List[Tuple[int, Crossing]]:
        return [(k, e) for k, e in enumerate(self.events) if isinstance(e, Crossing)]


def _delta(e: Event) -> int:
    if isinstance(e, LeftCusp):
        return 2
    if isinstance(e, RightCusp):
        return -2
    if isinstance(e, Singularity):
        return e.out_valency - e.in_valency
    return 0


# =========================
# Validation
# =========================
@dataclass(frozen=True)
class FrontIssue:
    event: int
    message: str

    def __str__(self) -> str:
        return f"event {self.event}: {self.message}"


def validate(f: FrontDiagram) -> List[FrontIssue]:
    """Bookkeeping problems, stopping at the first broken event."""
    issues: List[FrontIssue] = []
    n = len(f.left_ends)
    ids = set()
    for k, e in enumerate(f.events):
        problem = None
        if not isinstance(e, (LeftCusp, RightCusp, Crossing, Singularity)):
            problem = f"unknown event {e!r}"
        elif e.pos < 0:
            problem = f"negative position {e.pos}"
        elif isinstance(e, LeftCusp) and e.pos > n:
            problem = f"left cusp at {e.pos} above the {n} strands"
        elif isinstance(e, RightCusp) and e.pos + 2 > n:
            problem = f"right cusp at {e.pos} needs strands {e.pos}, {e.pos + 1} of {n}"
        elif isinstance(e, Crossing) and e.pos + 2 > n:
            problem = f"crossing at {e.pos} needs strands {e.pos}, {e.pos + 1} of {n}"
        elif isinstance(e, Singularity):
            if e.in_valency < 0 or e.out_valency < 0 or e.valency < 1:
                problem = f"singularity {e.id} has valencies ({e.in_valency}, {e.out_valency})"
            elif e.pos + e.in_valency > n or (e.in_valency == 0 and e.pos > n):
                problem = f"singularity {e.id} consumes strands {e.pos}..{e.pos + e.in_valency - 1} of {n}"
            elif not e.id or e.id in ids:
                problem = f"singularity id {e.id!r} is empty or repeated"
            elif e.labels and len(e.labels) != e.valency:
                problem = f"singularity {e.id} has {len(e.labels)} labels for {e.valency} ends"
            ids.add(e.id)
        if problem:
            issues.append(FrontIssue(k, problem))
            return issues
        n += _delta(e)
    if f.right_ends and len(f.right_ends) != n:
        issues.append(FrontIssue(len(f.events), f"{n} final strands but {len(f.right_ends)} right ends"))
    elif not f.right_ends and n:
        issues.append(FrontIssue(len(f.events), f"{n} strands reach the right border without right ends"))
    return issues


def check(f: FrontDiagram) -> FrontDiagram:
    issues = validate(f)
    if issues:
        raise FrontError(f"{f.name or 'front'}: {issues[0]}")
    return f


# =========================
# Strand tracing and Maslov potentials
# =========================
class _OffsetUnion:
    """Union-find carrying offsets: value(x) = value(root(x)) + offset(x)."""

    def __init__(self):
        self.parent: Dict[Node, Node] = {}
        self.off: Dict[Node, int] = {}

    def add(self, x: Node) -> None:
        self.parent[x] = x
        self.off[x] = 0

    def find(self, x: Node) -> Tuple[Node, int]:
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        acc = 0
        for y in reversed(path):
            acc += self.off[y]
            self.off[y] = acc
            self.parent[y] = x
        return x, (self.off[path[0]] if path else 0)

    def union(self, a: Node, b: Node, delta: int) -> bool:
        """Impose value(b) = value(a) + delta; False on a contradiction."""
        ra, oa = self.find(a)
        rb, ob = self.find(b)
        if ra == rb:
            return ob - oa == delta
        self.parent[rb] = ra
        self.off[rb] = oa + delta - ob
        return True


@dataclass
class Trace:
    counts: List[int]
    roots: Dict[Node, Tuple[Node, int]]
    names: Dict[Node, str]
    conflicts: List[Tuple[int, Node, Node]] = field(default_factory=list)

    def component(self, node: Node) -> str:
        return self.names[self.roots[node][0]]

    def offset(self, node: Node) -> int:
        return self.roots[node][1]

    def components(self) -> List[str]:
        seen: List[str] = []
        for node in sorted(self.roots):
            c = self.component(node)
            if c not in seen:
                seen.append(c)
        return seen

    def nodes_of(self, label: str) -> List[Node]:
        return [n for n in sorted(self.roots) if self.component(n) == label]


def _continuations(e: Event, n: int) -> List[Tuple[int, int]]:
    if isinstance(e, LeftCusp):
        return [(x, x if x < e.pos else x + 2) for x in range(n)]
    if isinstance(e, RightCusp):
        return [(x, x if x < e.pos else x - 2) for x in range(n) if x not in (e.pos, e.pos + 1)]
    if isinstance(e, Crossing):
        swap = {e.pos: e.pos + 1, e.pos + 1: e.pos}
        return [(x, swap.get(x, x)) for x in range(n)]
    lo, hi = e.pos, e.pos + e.in_valency
    return [(x, x if x < lo else x - e.in_valency + e.out_valency) for x in range(n) if not lo <= x < hi]


def trace(f: FrontDiagram) -> Trace:
    """Follow strands through the slices; components are cut at singularities."""
    check(f)
    counts = f.counts()
    uf = _OffsetUnion()
    for k, n in enumerate(counts):
        for x in range(n):
            uf.add((k, x))
    labels: Dict[Node, str] = {}
    conflicts: List[Tuple[int, Node, Node]] = []
    for x, end in enumerate(f.left_ends):
        if end.label:
            labels[(0, x)] = end.label
    for k, e in enumerate(f.events):
        if isinstance(e, LeftCusp):
            if not uf.union((k + 1, e.pos), (k + 1, e.pos + 1), 1):
                conflicts.append((k, (k + 1, e.pos), (k + 1, e.pos + 1)))
            if e.label:
                labels[(k + 1, e.pos)] = labels[(k + 1, e.pos + 1)] = e.label
        elif isinstance(e, RightCusp):
            if not uf.union((k, e.pos), (k, e.pos + 1), 1):
                conflicts.append((k, (k, e.pos), (k, e.pos + 1)))
            if e.label:
                labels[(k, e.pos)] = labels[(k, e.pos + 1)] = e.label
        elif isinstance(e, Singularity) and e.labels:
            for i in range(e.out_valency):
                if e.out_label(i):
                    labels[(k + 1, e.pos + i)] = e.out_label(i)
            for i in range(e.in_valency):
                if e.in_label(i):
                    labels[(k, e.pos + i)] = e.in_label(i)
        for xb, xa in _continuations(e, counts[k]):
            if not uf.union((k, xb), (k + 1, xa), 0):
                conflicts.append((k, (k, xb), (k + 1, xa)))
    last = len(f.events)
    for x, end in enumerate(f.right_ends):
        if end.label:
            labels[(last, x)] = end.label

    roots = {node: uf.find(node) for node in uf.parent}
    names: Dict[Node, str] = {}
    used: Dict[str, int] = {}
    for node in sorted(labels):
        root = roots[node][0]
        if root in names:
            if names[root].split("#")[0] != labels[node]:
                LOG.debug("component at %s also carries label %s; keeping %s", node, labels[node], names[root])
            continue
        base = labels[node]
        used[base] = used.get(base, 0) + 1
        names[root] = base if used[base] == 1 else f"{base}#{used[base]}"
    auto = 0
    for node in sorted(roots):
        root = roots[node][0]
        if root not in names:
            auto += 1
            while f"k{auto}" in used:
                auto += 1
            names[root] = f"k{auto}"
    return Trace(counts, roots, names, conflicts)


@dataclass
class MaslovPotential:
    trace: Trace
    base: Dict[str, Optional[int]]
    minima: Dict[str, int]
    underdetermined: Tuple[str, ...] = ()

    def m(self, node: Node) -> int:
        c = self.trace.component(node)
        b = self.base[c]
        if b is None:
            raise MaslovError(f"component {c} has no Maslov potential", [node])
        return b + self.trace.offset(node) - self.minima[c]

    def by_component(self) -> Dict[str, List[int]]:
        out: Dict[str, List[int]] = {}
        for node in sorted(self.trace.roots):
            c = self.trace.component(node)
            if self.base[c] is not None:
                out.setdefault(c, [])
                v = self.m(node)
                if v not in out[c]:
                    out[c].append(v)
        return {c: sorted(vs) for c, vs in out.items()}


def compute_maslov(f: FrontDiagram, seeds: Optional[Dict[str, int]] = None,
                   fill_free: bool = True) -> MaslovPotential:
    """
    Maslov potential from seeds: component label -> minimum value on that
    component. At every cusp the upper branch is one more than the lower
    one. Unseeded components are reported and, with fill_free, get
    minimum 0.
    """
    tr = trace(f)
    if tr.conflicts:
        k, a, b = tr.conflicts[0]
        raise MaslovError(f"inconsistent cusp constraints around event {k}", [a, b])
    given = dict(f.seeds)
    given.update(seeds or {})
    comps = tr.components()
    unknown = sorted(set(given) - set(comps))
    if unknown:
        raise FrontError(f"Maslov seeds for unknown components {unknown}")
    minima: Dict[str, int] = {}
    for node in tr.roots:
        c = tr.component(node)
        minima[c] = min(minima.get(c, tr.offset(node)), tr.offset(node))
    free = tuple(c for c in comps if c not in given)
    base: Dict[str, Optional[int]] = {c: given.get(c, 0 if fill_free else None) for c in comps}
    if free:
        LOG.debug("%s: components without seeds %s", f.name or "front", free)
    return MaslovPotential(tr, base, minima, free)


# =========================
# Moving singularities to the sides
# =========================
def _swap_left(prev: Event, s: Singularity) -> Tuple[Singularity, Event]:
    """[prev, s] -> [s', prev'] for a left singularity s emitting k strands."""
    p, k = s.pos, s.out_valency
    if isinstance(prev, LeftCusp):
        if p <= prev.pos:
            return s, replace(prev, pos=prev.pos + k)
        if p >= prev.pos + 2:
            return replace(s, pos=p - 2), prev
    elif isinstance(prev, RightCusp):
        if p <= prev.pos:
            return s, replace(prev, pos=prev.pos + k)
        return replace(s, pos=p + 2), prev
    elif isinstance(prev, Crossing):
        if p <= prev.pos:
            return s, replace(prev, pos=prev.pos + k)
        if p >= prev.pos + 2:
            return s, prev
    else:
        if p <= prev.pos:
            return s, replace(prev, pos=prev.pos + k)
        if p >= prev.pos + prev.out_valency:
            return replace(s, pos=p - prev.out_valency + prev.in_valency), prev
    raise SideError(f"singularity {s.id} is blocked by {prev}")


def _swap_right(s: Singularity, nxt: Event) -> Tuple[Event, Singularity]:
    """[s, nxt] -> [nxt', s'] for a right singularity s consuming k strands."""
    p, k = s.pos, s.in_valency
    if isinstance(nxt, LeftCusp):
        if nxt.pos <= p:
            return nxt, replace(s, pos=p + 2)
        return replace(nxt, pos=nxt.pos + k), s
    if isinstance(nxt, RightCusp):
        if nxt.pos + 1 < p:
            return nxt, replace(s, pos=p - 2)
        if nxt.pos >= p:
            return replace(nxt, pos=nxt.pos + k), s
    elif isinstance(nxt, Crossing):
        if nxt.pos + 1 < p:
            return nxt, s
        if nxt.pos >= p:
            return replace(nxt, pos=nxt.pos + k), s
    else:
        if nxt.pos + nxt.in_valency <= p:
            return nxt, replace(s, pos=p - nxt.in_valency + nxt.out_valency)
        if nxt.pos >= p:
            return replace(nxt, pos=nxt.pos + k), s
    raise SideError(f"singularity {s.id} is blocked by {nxt}")


def to_side(f: FrontDiagram, sid: str) -> FrontDiagram:
    """Isotope the singularity `sid` to the first (left) or last (right) event."""
    sings = f.singularities()
    if sid not in sings:
        raise FrontError(f"no singularity {sid!r} in {f.name or 'front'}")
    i, s = sings[sid]
    if s.side == "interior":
        raise SideError(f"singularity {sid} has ends on both sides")
    evs = list(f.events)
    if s.side == "left":
        while i > 0:
            evs[i - 1], evs[i] = _swap_left(evs[i - 1], evs[i])
            i -= 1
    else:
        while i < len(evs) - 1:
            evs[i], evs[i + 1] = _swap_right(evs[i], evs[i + 1])
            i += 1
    return replace(f, events=tuple(evs))


def at_side(f: FrontDiagram, sid: str) -> bool:
    try:
        to_side(f, sid)
    except SideError:
        return False
    return True


def _reversal_word(k: int) -> List[int]:
    """Lexicographically smallest adjacent-transposition word reversing k strands."""
    return [c for j in range(1, k) for c in range(j - 1, -1, -1)]


def _replace_side(f: FrontDiagram, sid: str, resolve: bool) -> FrontDiagram:
    f = to_side(f, sid)
    i, s = f.singularities()[sid]
    rest = f.events[:i] + f.events[i + 1:]
    if s.side == "left":
        k, p = s.out_valency, s.pos
        ends = [BorderEnd(s.out_label(j), sid, j + 1) for j in range(k)]
        if not resolve:
            left = f.left_ends[:p] + tuple(ends) + f.left_ends[p:]
            return replace(f, left_ends=left, events=rest)
        order = [j + 1 for j in range(k)][::-1]
        block: List[Event] = []
        for c in _reversal_word(k):
            low, up = order[c], order[c + 1]
            block.append(Crossing(p + c, f"a[{sid}.{up}>{sid}.{low}]", twist=True))
            order[c], order[c + 1] = up, low
        left = f.left_ends[:p] + tuple(ends[::-1]) + f.left_ends[p:]
        return replace(f, left_ends=left, events=tuple(block) + rest)

    k, p = s.in_valency, s.pos
    # bottom-to-top ccw labels of the consumed ends
    order = [k - i for i in range(k)]
    labels = {k - i: s.in_label(i) for i in range(k)}
    block = []
    if resolve:
        for twist in (False, True):
            for c in _reversal_word(k):
                low, up = order[c], order[c + 1]
                gid = f"a[{sid}.{up}>{sid}.{low}]" if twist else f"p[{sid}.{low}>{sid}.{up}]"
                block.append(Crossing(p + c, gid, twist=twist))
                order[c], order[c + 1] = up, low
    ends = tuple(BorderEnd(labels[j], sid, j) for j in order)
    right = f.right_ends[:p] + ends + f.right_ends[p:]
    return replace(f, events=rest + tuple(block), right_ends=right)


def open_at(f: FrontDiagram, singularities: Iterable[str]) -> FrontDiagram:
    """Remove the given side singularities; their ends become border ends."""
    for sid in sorted(set(singularities)):
        f = _replace_side(f, sid, resolve=False)
    return check(f)


def resolve_at(f: FrontDiagram, singularities: Iterable[str]) -> FrontDiagram:
    """
    Replace side singularities by twist blocks: a negative half twist of
    the ends of a left singularity, a positive then a negative half twist
    for a right one.
    """
    for sid in sorted(set(singularities)):
        f = _replace_side(f, sid, resolve=True)
    return check(f)


def reflect(f: FrontDiagram) -> FrontDiagram:
    evs: List[Event] = []
    for e in reversed(f.events):
        if isinstance(e, LeftCusp):
            evs.append(RightCusp(e.pos, e.label))
        elif isinstance(e, RightCusp):
            evs.append(LeftCusp(e.pos, e.label))
        elif isinstance(e, Singularity):
            labels = e.labels[e.out_valency:] + e.labels[:e.out_valency] if e.labels else ()
            evs.append(Singularity(e.pos, e.out_valency, e.in_valency, e.id, labels))
        else:
            evs.append(e)
    return replace(f, left_ends=f.right_ends, events=tuple(evs), right_ends=f.left_ends)


# =========================
# Handle permutations
# =========================
@dataclass(frozen=True)
class HandlePermutation:
    word: Tuple[int, ...]

    def __post_init__(self):
        if not self.word or len(self.word) % 2:
            raise FrontError("a handle permutation has even positive length")
        n = len(self.word) // 2
        for i in range(1, n + 1):
            if self.word.count(i) != 2:
                raise FrontError(f"handle {i} must appear exactly twice in {self.word}")
        if set(self.word) != set(range(1, n + 1)):
            raise FrontError(f"letters of {self.word} are not 1..{n}")

    @classmethod
    def parse(cls, text: str) -> "HandlePermutation":
        text = text.strip()
        parts = text.replace(",", " ").split() if ("," in text or " " in text) else list(text)
        try:
            return cls(tuple(int(p) for p in parts))
        except ValueError as e:
            raise FrontError(f"cannot read handle permutation {text!r}") from e

    def __str__(self) -> str:
        if self.n < 10:
            return "".join(str(i) for i in self.word)
        return ",".join(str(i) for i in self.word)

    @property
    def n(self) -> int:
        return len(self.word) // 2

    def minus(self, i: int) -> int:
        return self.word.index(i) + 1

    def plus(self, i: int) -> int:
        return len(self.word) - self.word[::-1].index(i)

    def interleaved(self, i: int, j: int) -> bool:
        return self.minus(i) < self.minus(j) < self.plus(i) < self.plus(j)

    def interleaved_pairs(self) -> List[Tuple[int, int]]:
        r = range(1, self.n + 1)
        return [(i, j) for i in r for j in r if i != j and self.interleaved(i, j)]

    def interleaving_is_acyclic(self) -> bool:
        succ: Dict[int, List[int]] = {}
        for i, j in self.interleaved_pairs():
            succ.setdefault(i, []).append(j)
        state: Dict[int, int] = {}

        def visit(v: int) -> bool:
            state[v] = 1
            for w in succ.get(v, []):
                if state.get(w) == 1 or (w not in state and not visit(w)):
                    return False
            state[v] = 2
            return True

        return all(visit(v) for v in range(1, self.n + 1) if v not in state)

    def canonical(self) -> Tuple["HandlePermutation", Dict[int, int]]:
        relabel: Dict[int, int] = {}
        for x in self.word:
            relabel.setdefault(x, len(relabel) + 1)
        return HandlePermutation(tuple(relabel[x] for x in self.word)), relabel


def shift_with_map(sigma: HandlePermutation, k: int) -> Tuple[HandlePermutation, Dict[int, int]]:
    w = sigma.word
    k %= len(w)
    rotated = HandlePermutation(w[len(w) - k:] + w[:len(w) - k]) if k else sigma
    return rotated.canonical()


def shift(sigma: HandlePermutation, k: int) -> HandlePermutation:
    """sigma[k]_i = sigma_{i-k}, indices mod 2n, relabelled by first appearance."""
    return shift_with_map(sigma, k)[0]


def quiver_of(sigma: HandlePermutation) -> FrozenSet[Tuple[str, str]]:
    return frozenset((str(i), str(j)) for i, j in sigma.interleaved_pairs())


def quiver_flip_oracle(sigma: HandlePermutation) -> FrozenSet[Tuple[str, str]]:
    """Quiver of sigma[1] predicted by reversing the arrows into handle sigma_2n."""
    h = str(sigma.word[-1])
    _, relabel = shift_with_map(sigma, 1)
    out = set()
    for a, b in quiver_of(sigma):
        if b == h:
            a, b = b, a
        out.add((str(relabel[int(a)]), str(relabel[int(b)])))
    return frozenset(out)


# =========================
# Family builders
# =========================
def _uniform(f: FrontDiagram) -> FrontDiagram:
    return check(f)


def unknot() -> FrontDiagram:
    return _uniform(FrontDiagram(events=(LeftCusp(0, "u"), RightCusp(0, "u")), name="unknot"))


def handle_unknot(side: str = "left") -> FrontDiagram:
    """Standard unknot whose cusp on `side` is replaced by a 2-valent singularity."""
    if side == "left":
        evs: Tuple[Event, ...] = (Singularity(0, 0, 2, "L", ("u", "u")), RightCusp(0, "u"))
    elif side == "right":
        evs = (LeftCusp(0, "u"), Singularity(0, 2, 0, "R", ("u", "u")))
    else:
        raise FrontError(f"side must be 'left' or 'right', got {side!r}")
    return _uniform(FrontDiagram(events=evs, name=f"unknot-handle-{side}"))


def permutation(sigma: Union[HandlePermutation, str]) -> FrontDiagram:
    """
    Permutation Legendrian of sigma: handle i is a half unknot opening from
    a left cusp whose lower branch ends at position sigma(i-) - 1 and upper
    branch at sigma(i+) - 1 of a right singularity R. Upper branch of i
    crosses lower branch of j exactly for interleaved pairs (i, j).
    """
    if isinstance(sigma, str):
        sigma = HandlePermutation.parse(sigma)
    n = sigma.n
    L = {i: Fraction(sigma.minus(i) - 1) for i in range(1, n + 1)}
    U = {i: Fraction(sigma.plus(i) - 1) for i in range(1, n + 1)}

    def z(strand: Tuple[int, str], x: Fraction) -> Fraction:
        i, branch = strand
        return L[i] - x / 2 if branch == "-" else U[i] + x / 2

    # (x, kind, height, payload); crossings sort before caps at equal x
    plan: List[Tuple[Fraction, int, Fraction, Tuple[int, int]]] = []
    for i in range(1, n + 1):
        plan.append((L[i] - U[i], 1, (L[i] + U[i]) / 2, (i, 0)))
    for i, j in sigma.interleaved_pairs():
        x = L[j] - U[i]
        plan.append((x, 0, U[i] + x / 2, (i, j)))
    plan.sort()
    sep = "." if n >= 10 else ""
    order: List[Tuple[int, str]] = []
    evs: List[Event] = []
    for x, kind, height, (i, j) in plan:
        if kind == 1:
            at = sum(1 for s in order if z(s, x) < height)
            order[at:at] = [(i, "-"), (i, "+")]
            evs.append(LeftCusp(at, str(i)))
            continue
        a, b = order.index((i, "+")), order.index((j, "-"))
        if abs(a - b) != 1:
            raise FrontError(f"crossing of {i}+ and {j}- is not between adjacent strands")
        c = min(a, b)
        order[c], order[c + 1] = order[c + 1], order[c]
        evs.append(Crossing(c, f"a{i}{sep}{j}"))
    labels = tuple(str(i) for i, _ in order)
    evs.append(Singularity(0, 2 * n, 0, "R", labels))
    return _uniform(FrontDiagram(events=tuple(evs), name=f"permutation({sigma})"))


def a_n_word(n: int) -> HandlePermutation:
    if n < 1:
        raise FrontError("A_n needs n >= 1")
    return HandlePermutation(tuple(range(1, n + 1)) * 2)


def a_prime_n_word(n: int) -> HandlePermutation:
    if n < 2:
        raise FrontError("A'_n needs n >= 2")
    pos: Dict[int, int] = {1: 1, n: 2 * n - 2}
    for i in range(2, n):
        pos[i] = 2 * i - 2
    plus = {1: 3, n: 2 * n}
    for i in range(2, n):
        plus[i] = 2 * i + 1
    word = [0] * (2 * n)
    for i in range(1, n + 1):
        word[pos[i] - 1] = i
        word[plus[i] - 1] = i
    return HandlePermutation(tuple(word))


def a_n(n: int) -> FrontDiagram:
    return replace(permutation(a_n_word(n)), name=f"A_{n}")


def a_prime_n(n: int) -> FrontDiagram:
    return replace(permutation(a_prime_n_word(n)), name=f"A'_{n}")


def theta(n: int) -> FrontDiagram:
    """n parallel edges between a left singularity L and a right singularity R."""
    if n < 2:
        raise FrontError("theta needs n >= 2")
    labels = tuple(str(i) for i in range(1, n + 1))
    evs = (Singularity(0, 0, n, "L", labels), Singularity(0, n, 0, "R", labels))
    return _uniform(FrontDiagram(events=evs, name=f"theta_{n}"))


def theta_prime(n: int) -> FrontDiagram:
    """
    theta_n with an extra edge Pi from the top of L to the top of R, zigzag
    stabilized: its right-cusp chord b1 has d(b1) = e_Pi.
    """
    if n < 2:
        raise FrontError("theta' needs n >= 2")
    labels = tuple(str(i) for i in range(1, n + 1)) + ("Pi",)
    evs = (
        Singularity(0, 0, n + 1, "L", labels),
        LeftCusp(n, "Pi"),
        RightCusp(n + 1, "Pi"),
        Singularity(0, n + 1, 0, "R", labels),
    )
    return _uniform(FrontDiagram(events=evs, name=f"theta'_{n}"))


def cyc(n: int) -> FrontDiagram:
    """
    n nested half unknots; the lower branches and the upper branches each
    reverse their order, giving one chord for every ordered pair.
    """
    if n < 1:
        raise FrontError("cyc needs n >= 1")
    evs: List[Event] = [LeftCusp(i, str(i + 1)) for i in range(n)]
    lower = list(range(1, n + 1))
    upper = list(range(n, 0, -1))
    for c in _reversal_word(n):
        b, t = lower[c], lower[c + 1]
        evs.append(Crossing(c, f"a{b}{t}"))
        lower[c], lower[c + 1] = t, b
    for c in _reversal_word(n):
        b, t = upper[c], upper[c + 1]
        evs.append(Crossing(n + c, f"a{b}{t}"))
        upper[c], upper[c + 1] = t, b
    labels = tuple(str(i) for i in lower + upper)
    evs.append(Singularity(0, 2 * n, 0, "R", labels))
    return _uniform(FrontDiagram(events=tuple(evs), name=f"cyc_{n}"))


def _tag(e: Event, suffix: str) -> Event:
    if isinstance(e, (LeftCusp, RightCusp)) and e.label:
        return replace(e, label=e.label + suffix)
    if isinstance(e, Singularity):
        return replace(e, id=e.id + suffix, labels=tuple(x + suffix if x else x for x in e.labels))
    if isinstance(e, Crossing) and e.id:
        return replace(e, id=e.id + suffix)
    return e


def rainbow_sum(f1: FrontDiagram, f2: FrontDiagram, k: Optional[int] = None, name: str = "") -> FrontDiagram:
    """
    Place f2 above f1 and join the m-th left singularity of f1 to the m-th
    left singularity of f2 by a handle Pi<m>: a new bottom end of the f1
    singularity and a new top end of the f2 singularity, running below and
    above everything and closing in nested right cusps.
    """
    lefts = [[e for e in g.events if isinstance(e, Singularity) and e.side == "left"] for g in (f1, f2)]
    k = len(lefts[0]) if k is None else k
    if k < 1 or len(lefts[0]) < k or len(lefts[1]) < k:
        raise FrontError(f"both factors need {k} left singularities")
    for g in (f1, f2):
        check(g)
        if g.left_ends or g.right_ends:
            raise FrontError("rainbow sums take closed diagrams")
    handles = {id(e): m + 1 for side in lefts for m, e in enumerate(side[:k])}

    evs: List[Event] = []
    bottoms = 0
    size = [0, 0]
    for which, g in enumerate((f1, f2)):
        suffix = f"@{which + 1}"
        for e in g.events:
            m = handles.get(id(e)) if isinstance(e, Singularity) else None
            offset = bottoms + (size[0] if which else 0)
            t = _tag(e, suffix)
            if m is None:
                evs.append(replace(t, pos=t.pos + offset))
                size[which] += _delta(e)
                continue
            pi = f"Pi{m}"
            P = offset + e.pos
            if which == 0:
                evs.append(Singularity(P, 0, e.out_valency + 1, t.id, (pi,) + tuple(t.labels or ("",) * e.out_valency)))
                for c in range(P - 1, bottoms - 1, -1):
                    evs.append(Crossing(c))
                bottoms += 1
            else:
                evs.append(Singularity(P, 0, e.out_valency + 1, t.id, tuple(t.labels or ("",) * e.out_valency) + (pi,)))
                above = size[1] - e.pos
                for c in range(P + e.out_valency, P + e.out_valency + above):
                    evs.append(Crossing(c))
            size[which] += e.out_valency
    if size != [0, 0]:
        raise FrontError("rainbow factors must close up on the right")
    for m in range(k, 0, -1):
        evs.append(RightCusp(m - 1, f"Pi{m}"))
    return _uniform(FrontDiagram(events=tuple(evs), name=name or f"{f1.name} # {f2.name}"))


def handcuff() -> FrontDiagram:
    return rainbow_sum(handle_unknot("left"), handle_unknot("left"), 1, name="handcuff")


def pinched_eight() -> FrontDiagram:
    """
    Figure-eight pinched at its double point: a left lobe l and a right lobe
    r meeting at the 4-valent singularity V, each lobe twisted once.
    """
    evs = (
        LeftCusp(0, "l"),
        Crossing(0, "d"),
        Singularity(0, 2, 2, "V", ("r", "r", "l", "l")),
        Crossing(0, "c"),
        RightCusp(0, "r"),
    )
    return _uniform(FrontDiagram(events=evs, name="pinched-eight"))


FAMILIES = {
    "unknot": lambda *a: unknot(),
    "handle-unknot": lambda side="left", *a: handle_unknot(side),
    "permutation": lambda sigma, *a: permutation(sigma),
    "a_n": lambda n, *a: a_n(int(n)),
    "a_prime_n": lambda n, *a: a_prime_n(int(n)),
    "theta": lambda n, *a: theta(int(n)),
    "theta_prime": lambda n, *a: theta_prime(int(n)),
    "cyc": lambda n, *a: cyc(int(n)),
    "handcuff": lambda *a: handcuff(),
    "pinched-eight": lambda *a: pinched_eight(),
}


def build(family: str, *params: str) -> FrontDiagram:
    if family not in FAMILIES:
        raise FrontError(f"unknown family {family!r}; known: {', '.join(sorted(FAMILIES))}")
    try:
        return FAMILIES[family](*params)
    except TypeError as e:
        raise FrontError(f"bad parameters for {family}: {params}") from e


# =========================
# JSON
# =========================
def _event_to_json(e: Event) -> Dict[str, Any]:
    if isinstance(e, LeftCusp):
        return {"type": "left_cusp", "pos": e.pos, "label": e.label}
    if isinstance(e, RightCusp):
        return {"type": "right_cusp", "pos": e.pos, "label": e.label}
    if isinstance(e, Crossing):
        return {"type": "crossing", "pos": e.pos, "id": e.id, "twist": e.twist}
    return {"type": "singularity", "pos": e.pos, "in": e.in_valency, "out": e.out_valency,
            "id": e.id, "labels": list(e.labels)}


def _event_from_json(obj: Dict[str, Any]) -> Event:
    kind = obj.get("type")
    pos = int(obj["pos"])
    if kind == "left_cusp":
        return LeftCusp(pos, str(obj.get("label", "")))
    if kind == "right_cusp":
        return RightCusp(pos, str(obj.get("label", "")))
    if kind == "crossing":
        return Crossing(pos, str(obj.get("id", "")), bool(obj.get("twist", False)))
    if kind == "singularity":
        return Singularity(pos, int(obj["in"]), int(obj["out"]), str(obj["id"]), tuple(obj.get("labels") or ()))
    raise FrontError(f"unknown event type {kind!r}")


def _end_to_json(e: BorderEnd) -> Dict[str, Any]:
    return {"label": e.label, "group": e.group, "index": e.index}


def front_to_json(f: FrontDiagram) -> Dict[str, Any]:
    return {
        "name": f.name,
        "initial_strands": f.initial_strands,
        "left_ends": [_end_to_json(e) for e in f.left_ends],
        "events": [_event_to_json(e) for e in f.events],
        "right_ends": [_end_to_json(e) for e in f.right_ends],
        "maslov_seeds": dict(f.seeds),
    }


def front_from_json(obj: Dict[str, Any]) -> FrontDiagram:
    try:
        left = obj.get("left_ends")
        if left is None:
            left = [{} for _ in range(int(obj.get("initial_strands", 0)))]
        ends = [BorderEnd(str(e.get("label", "")), str(e.get("group", "")), int(e.get("index", 0))) for e in left]
        right = [BorderEnd(str(e.get("label", "")), str(e.get("group", "")), int(e.get("index", 0)))
                 for e in obj.get("right_ends") or []]
        f = FrontDiagram(
            left_ends=tuple(ends),
            events=tuple(_event_from_json(e) for e in obj.get("events") or []),
            right_ends=tuple(right),
            name=str(obj.get("name", "")),
            seeds=tuple(sorted((str(k), int(v)) for k, v in (obj.get("maslov_seeds") or {}).items())),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise FrontError(f"malformed front JSON: {e}") from e
    return f
