"""
quiver_dga.py

Semi-free dg-algebras over quiver path algebras with Z/2 coefficients.

A word g_k ... g_1 is stored left to right exactly as written, so g_1 is
applied first: target(g_m) == source(g_{m+1}). Idempotents are words with
no letters. A FormalSum is a set of words (coefficient 1 = presence).

Outputs of this module:
  - QuiverDGA / Word / FormalSum values and their JSON form
  - finite truncated complexes with cohomology over GF(2)
  - d^2 reports, exact-generator removal, corner complexes, products, HH_0
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

import gf2

LOG = logging.getLogger(__name__)


# =========================
# Errors
# =========================
class DGAError(ValueError):
    pass


class TruncationEscape(DGAError):
    """d of an in-truncation element has a word outside the truncation."""

    def __init__(self, source: "Word", escaped: "Word"):
        self.source = source
        self.escaped = escaped
        super().__init__(f"truncation escape: d({source}) contains {escaped}")


class ExactRemovalError(DGAError):
    def __init__(self, message: str, witness: str):
        self.witness = witness
        super().__init__(f"{message} (witness: {witness})")


class WeightFiltrationError(DGAError):
    """d raises weight: some word of d(g) weighs more than g."""

    def __init__(self, gid: str, word: "Word", weight: Fraction, bound: Fraction):
        self.gid = gid
        self.word = word
        super().__init__(f"d({gid}) contains {word} of weight {weight} > {bound}")


# =========================
# Words and formal sums
# =========================
@dataclass(frozen=True)
class Generator:
    id: str
    source: str
    target: str
    degree: int
    weight: Fraction

    def __post_init__(self):
        if Fraction(self.weight) <= 0:
            raise DGAError(f"generator {self.id} must have positive weight, got {self.weight}")


@dataclass(frozen=True, order=True)
class Word:
    letters: Tuple[str, ...]
    source: str
    target: str

    @property
    def is_idempotent(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return f"e[{self.source}]"
        return " ".join(self.letters)


def idempotent(vertex: str) -> Word:
    return Word((), vertex, vertex)


def sort_key(w: Word) -> Tuple[int, Tuple[str, ...], str]:
    return (len(w.letters), w.letters, w.source)


class FormalSum:
    """Z/2 linear combination of words sharing one source and one target."""

    __slots__ = ("_words",)

    def __init__(self, words: Iterable[Word] = ()):
        acc: set = set()
        for w in words:
            acc ^= {w}
        self._words = frozenset(acc)

    def __add__(self, other: "FormalSum") -> "FormalSum":
        out = FormalSum()
        out._words = self._words ^ other._words
        return out

    def __iter__(self) -> Iterator[Word]:
        return iter(sorted(self._words, key=sort_key))

    def __len__(self) -> int:
        return len(self._words)

    def __bool__(self) -> bool:
        return bool(self._words)

    def __contains__(self, w: Word) -> bool:
        return w in self._words

    def __eq__(self, other) -> bool:
        return isinstance(other, FormalSum) and self._words == other._words

    def __hash__(self) -> int:
        return hash(self._words)

    def __repr__(self) -> str:
        return "0" if not self._words else " + ".join(str(w) for w in self)


ZERO = FormalSum()


def compose(w1: Word, w2: Word) -> Optional[Word]:
    """w1 . w2 (w2 first); None when target(w2) != source(w1)."""
    if w2.target != w1.source:
        return None
    return Word(w1.letters + w2.letters, w2.source, w1.target)


def multiply(s1: FormalSum, s2: FormalSum) -> FormalSum:
    out: List[Word] = []
    for a in s1:
        for b in s2:
            ab = compose(a, b)
            if ab is not None:
                out.append(ab)
    return FormalSum(out)


# =========================
# The dg-algebra
# =========================
@dataclass(frozen=True)
class TruncationPolicy:
    max_length: Optional[int] = None
    max_weight: Optional[Fraction] = None
    degree_window: Optional[Tuple[int, int]] = None

    def bounded(self) -> bool:
        return self.max_length is not None or self.max_weight is not None

    def describe(self) -> Dict[str, Any]:
        return {
            "max_length": self.max_length,
            "max_weight": None if self.max_weight is None else str(self.max_weight),
            "degree_window": list(self.degree_window) if self.degree_window else None,
        }


@dataclass
class QuiverDGA:
    vertices: Tuple[str, ...]
    generators: Dict[str, Generator]
    differential: Dict[str, FormalSum] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        self.vertices = tuple(self.vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise DGAError("duplicate vertex ids")
        vs = set(self.vertices)
        for g in self.generators.values():
            if g.source not in vs or g.target not in vs:
                raise DGAError(f"generator {g.id} has an endpoint outside the quiver")
        for gid in self.generators:
            self.differential.setdefault(gid, ZERO)
        for gid, dg in self.differential.items():
            if gid not in self.generators:
                raise DGAError(f"differential given for unknown generator {gid}")
            g = self.generators[gid]
            for w in dg:
                self._check_word(w)
                if (w.source, w.target) != (g.source, g.target):
                    raise DGAError(f"d({gid}) contains {w} with the wrong endpoints")
                if self.degree(w) != g.degree + 1:
                    raise DGAError(f"d({gid}) contains {w} of degree {self.degree(w)}, expected {g.degree + 1}")
                if self.weight(w) > Fraction(g.weight):
                    raise WeightFiltrationError(gid, w, self.weight(w), Fraction(g.weight))

    # -- word bookkeeping
    def _check_word(self, w: Word) -> None:
        if w.is_idempotent:
            if w.source not in self.vertices or w.source != w.target:
                raise DGAError(f"bad idempotent {w}")
            return
        prev = None
        for gid in reversed(w.letters):
            g = self.generators.get(gid)
            if g is None:
                raise DGAError(f"unknown generator id {gid!r}")
            if prev is not None and prev.target != g.source:
                raise DGAError(f"word {w} is not composable at {prev.id}, {gid}")
            prev = g
        first = self.generators[w.letters[-1]]
        last = self.generators[w.letters[0]]
        if (first.source, last.target) != (w.source, w.target):
            raise DGAError(f"word {w} has stale endpoints")

    def word(self, *letters: str) -> Word:
        """Word g_k ... g_1 from letters written left to right."""
        if not letters:
            raise DGAError("use idempotent(v) for empty words")
        w = Word(tuple(letters), self.generators[letters[-1]].source, self.generators[letters[0]].target)
        self._check_word(w)
        return w

    def degree(self, w: Word) -> int:
        return sum(self.generators[g].degree for g in w.letters)

    def weight(self, w: Word) -> Fraction:
        return sum((Fraction(self.generators[g].weight) for g in w.letters), Fraction(0))

    def arrows_from(self, vertex: str) -> List[Generator]:
        return [g for g in self.generators.values() if g.source == vertex]

    def is_acyclic(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        for g in self.generators.values():
            indeg[g.target] += 1
        ready = [v for v, k in indeg.items() if k == 0]
        seen = 0
        while ready:
            v = ready.pop()
            seen += 1
            for g in self.arrows_from(v):
                indeg[g.target] -= 1
                if indeg[g.target] == 0:
                    ready.append(g.target)
        return seen == len(self.vertices)

    def has_zero_differential(self) -> bool:
        return not any(self.differential.values())


# =========================
# Leibniz rule and d^2
# =========================
def differential_of_word(dga: QuiverDGA, w: Word) -> FormalSum:
    if w.is_idempotent:
        return ZERO
    out: List[Word] = []
    letters = w.letters
    for i, gid in enumerate(letters):
        if gid not in dga.generators:
            raise DGAError(f"unknown generator id {gid!r}")
        for u in dga.differential[gid]:
            out.append(Word(letters[:i] + u.letters + letters[i + 1:], w.source, w.target))
    return FormalSum(out)


def differential_of_sum(dga: QuiverDGA, s: FormalSum) -> FormalSum:
    acc = ZERO
    for w in s:
        acc = acc + differential_of_word(dga, w)
    return acc


def within(dga: QuiverDGA, w: Word, policy: TruncationPolicy) -> bool:
    if policy.max_length is not None and len(w) > policy.max_length:
        return False
    if policy.max_weight is not None and dga.weight(w) > Fraction(policy.max_weight):
        return False
    return True


@dataclass
class DSquaredReport:
    checked: List[str]
    residues: Dict[str, FormalSum]
    escapes: List[Tuple[str, Word]]

    @property
    def ok(self) -> bool:
        return not self.residues and not self.escapes

    def as_dict(self) -> Dict[str, Any]:
        return {
            "ok": self.ok,
            "checked": len(self.checked),
            "residues": {g: [list(w.letters) for w in s] for g, s in self.residues.items()},
            "escapes": [{"generator": g, "word": list(w.letters)} for g, w in self.escapes],
        }


def check_d_squared(dga: QuiverDGA, policy: Optional[TruncationPolicy] = None) -> DSquaredReport:
    policy = policy or TruncationPolicy()
    checked: List[str] = []
    residues: Dict[str, FormalSum] = {}
    escapes: List[Tuple[str, Word]] = []
    for gid, g in dga.generators.items():
        single = Word((gid,), g.source, g.target)
        if not within(dga, single, policy):
            continue
        checked.append(gid)
        for w in dga.differential[gid]:
            if not within(dga, w, policy):
                escapes.append((gid, w))
        dd = differential_of_sum(dga, dga.differential[gid])
        if dd:
            residues[gid] = dd
    if residues:
        LOG.warning("d^2 != 0 on %d generators of %s", len(residues), dga.name or "dga")
    return DSquaredReport(checked, residues, escapes)


# =========================
# Finite truncated complexes
# =========================
def enumerate_words(dga: QuiverDGA, policy: TruncationPolicy,
                    corner: Optional[Sequence[str]] = None) -> List[Word]:
    """All words inside the bounds; with `corner`, only those starting and ending in it."""
    if not policy.bounded() and not dga.is_acyclic():
        raise DGAError("a length or weight bound is needed for a quiver with oriented cycles")
    out: List[Word] = [idempotent(v) for v in dga.vertices]
    stack: List[Word] = []
    for g in dga.generators.values():
        w = Word((g.id,), g.source, g.target)
        if within(dga, w, policy):
            stack.append(w)
    while stack:
        w = stack.pop()
        out.append(w)
        for g in dga.arrows_from(w.target):
            longer = Word((g.id,) + w.letters, w.source, g.target)
            if within(dga, longer, policy):
                stack.append(longer)
    if corner is not None:
        keep = set(corner)
        out = [w for w in out if w.source in keep and w.target in keep]
    return sorted(out, key=sort_key)


@dataclass
class GradedComplex:
    """Finite Z/2 complex: basis[d] words in degree d, matrices[d]: C_d -> C_{d+1}."""

    basis: Dict[int, List[Word]]
    matrices: Dict[int, np.ndarray]
    window: Tuple[int, int]
    policy: TruncationPolicy

    def dimension(self, d: int) -> int:
        return len(self.basis.get(d, []))

    def vector(self, d: int, s: FormalSum) -> np.ndarray:
        idx = {w: k for k, w in enumerate(self.basis.get(d, []))}
        v = np.zeros(len(idx), dtype=np.uint8)
        for w in s:
            if w not in idx:
                raise DGAError(f"{w} is not a basis word in degree {d}")
            v[idx[w]] ^= 1
        return v

    def formal_sum(self, d: int, v: np.ndarray) -> FormalSum:
        words = self.basis.get(d, [])
        return FormalSum(words[k] for k in np.nonzero(np.asarray(v) & 1)[0])


def build_complex(dga: QuiverDGA, policy: TruncationPolicy,
                  corner: Optional[Sequence[str]] = None,
                  words: Optional[List[Word]] = None) -> GradedComplex:
    """
    Truncated complex of `dga` (optionally the corner e_S A e_S).

    The degree window [lo, hi] asks for H^lo..H^hi, so degrees lo-1..hi+1
    are kept; d of everything in degrees lo-1..hi must stay inside.
    """
    words = words if words is not None else enumerate_words(dga, policy, corner)
    degrees = sorted({dga.degree(w) for w in words}) or [0]
    lo, hi = policy.degree_window or (degrees[0], degrees[-1])
    if hi < lo:
        raise DGAError(f"empty degree window [{lo}, {hi}]")
    basis: Dict[int, List[Word]] = {d: [] for d in range(lo - 1, hi + 2)}
    for w in words:
        d = dga.degree(w)
        if lo - 1 <= d <= hi + 1:
            basis[d].append(w)
    index = {d: {w: k for k, w in enumerate(ws)} for d, ws in basis.items()}
    matrices: Dict[int, np.ndarray] = {}
    for d in range(lo - 1, hi + 1):
        M = np.zeros((len(basis[d + 1]), len(basis[d])), dtype=np.uint8)
        for col, w in enumerate(basis[d]):
            for u in differential_of_word(dga, w):
                row = index[d + 1].get(u)
                if row is None:
                    raise TruncationEscape(w, u)
                M[row, col] ^= 1
        matrices[d] = M
    return GradedComplex(basis, matrices, (lo, hi), policy)


def corner_subcomplex(dga: QuiverDGA, vertices: Sequence[str], policy: TruncationPolicy) -> GradedComplex:
    missing = set(vertices) - set(dga.vertices)
    if missing:
        raise DGAError(f"corner vertices not in the quiver: {sorted(missing)}")
    return build_complex(dga, policy, corner=list(vertices))


@dataclass
class Cohomology:
    dims: Dict[int, int]
    representatives: Dict[int, List[FormalSum]]

    @property
    def total(self) -> int:
        return sum(self.dims.values())

    def as_dict(self) -> Dict[str, Any]:
        return {
            "dims": {str(d): n for d, n in sorted(self.dims.items())},
            "representatives": {
                str(d): [[list(w.letters) if w.letters else ["e:" + w.source] for w in s] for s in reps]
                for d, reps in sorted(self.representatives.items())
            },
        }


def image_basis(M: np.ndarray) -> np.ndarray:
    """Rows = images of the pivot columns of M (a basis of im M)."""
    if M.size == 0:
        return np.zeros((0, M.shape[0]), dtype=np.uint8)
    cols = gf2.pivot_columns(M)
    return M[:, cols].T.copy()


def harmonic_representatives(complex_: GradedComplex, d: int,
                             preferred: Sequence[np.ndarray] = ()) -> np.ndarray:
    """Cycles completing im(d_{d-1}) to ker(d_d); preferred vectors are tried first."""
    n = complex_.dimension(d)
    if n == 0:
        return np.zeros((0, 0), dtype=np.uint8)
    D_out = complex_.matrices.get(d, np.zeros((0, n), dtype=np.uint8))
    D_in = complex_.matrices.get(d - 1)
    span = image_basis(D_in) if D_in is not None else np.zeros((0, n), dtype=np.uint8)
    span = span.reshape(-1, n)
    chosen: List[np.ndarray] = []
    candidates = list(preferred) + list(gf2.nullspace(D_out)) if n else []
    for v in candidates:
        v = gf2.as_gf2(v).reshape(-1)
        if D_out.size and (D_out.dot(v) & 1).any():
            continue
        if not gf2.in_span(v, span):
            chosen.append(v)
            span = np.concatenate([span, v.reshape(1, -1)], axis=0)
    return np.array(chosen, dtype=np.uint8).reshape(-1, n)


def cohomology(complex_: GradedComplex) -> Cohomology:
    lo, hi = complex_.window
    dims: Dict[int, int] = {}
    reps: Dict[int, List[FormalSum]] = {}
    for d in range(lo, hi + 1):
        H = harmonic_representatives(complex_, d)
        dims[d] = H.shape[0]
        reps[d] = [complex_.formal_sum(d, v) for v in H]
    return Cohomology(dims, reps)


def persistent_dims(small: GradedComplex, large: GradedComplex) -> Dict[int, int]:
    """
    Rank of H(small) -> H(large) per degree, for a truncation `small`
    contained in `large`. Classes that only exist because of the
    truncation edge die in the larger complex.
    """
    lo, hi = small.window
    out: Dict[int, int] = {}
    for d in range(lo, hi + 1):
        H = harmonic_representatives(small, d)
        if H.shape[0] == 0:
            out[d] = 0
            continue
        lifted = np.array([large.vector(d, small.formal_sum(d, v)) for v in H], dtype=np.uint8)
        D_in = large.matrices.get(d - 1)
        B = image_basis(D_in) if D_in is not None else np.zeros((0, lifted.shape[1]), dtype=np.uint8)
        B = B.reshape(-1, lifted.shape[1])
        out[d] = gf2.rank(np.concatenate([B, lifted], axis=0)) - gf2.rank(B)
    return out


# =========================
# Algebra-level constructions
# =========================
def _touches(dga: QuiverDGA, w: Word, vertex: str) -> bool:
    if w.source == vertex or w.target == vertex:
        return True
    return any(dga.generators[g].source == vertex or dga.generators[g].target == vertex for g in w.letters)


def remove_exact_generator(dga: QuiverDGA, a: str, vertex: str) -> QuiverDGA:
    """Quotient by the ideal of all arrows touching `vertex`, given d(a) = e_vertex."""
    g = dga.generators.get(a)
    if g is None:
        raise ExactRemovalError("unknown generator", a)
    if g.source != vertex or g.target != vertex:
        raise ExactRemovalError(f"{a} is not a loop at {vertex}", a)
    if dga.differential[a] != FormalSum([idempotent(vertex)]):
        raise ExactRemovalError(f"d({a}) is {dga.differential[a]!r}, not e[{vertex}]", a)
    for other, dg in dga.differential.items():
        if other != a and any(a in w.letters for w in dg):
            raise ExactRemovalError(f"{a} occurs in another differential", other)
    vertices = tuple(v for v in dga.vertices if v != vertex)
    gens = {k: v for k, v in dga.generators.items() if vertex not in (v.source, v.target)}
    diff = {k: FormalSum(w for w in dga.differential[k] if not _touches(dga, w, vertex)) for k in gens}
    LOG.info("removed exact generator %s at %s: %d -> %d generators", a, vertex, len(dga.generators), len(gens))
    return QuiverDGA(vertices, gens, diff, name=dga.name)


def relabel(dga: QuiverDGA, vmap: Dict[str, str], gmap: Dict[str, str], name: str = "") -> QuiverDGA:
    def rw(w: Word) -> Word:
        return Word(tuple(gmap.get(x, x) for x in w.letters), vmap.get(w.source, w.source), vmap.get(w.target, w.target))

    gens = {}
    for gid, g in dga.generators.items():
        nid = gmap.get(gid, gid)
        gens[nid] = Generator(nid, vmap.get(g.source, g.source), vmap.get(g.target, g.target), g.degree, g.weight)
    diff = {gmap.get(k, k): FormalSum(rw(w) for w in s) for k, s in dga.differential.items()}
    return QuiverDGA(tuple(vmap.get(v, v) for v in dga.vertices), gens, diff, name=name or dga.name)


def structural_differences(d1: QuiverDGA, d2: QuiverDGA,
                           gmap: Optional[Dict[str, str]] = None,
                           vmap: Optional[Dict[str, str]] = None) -> List[str]:
    """
    Ways in which d1, renamed by gmap/vmap, differs from d2: vertices,
    generator endpoints and degrees, differentials. Weights are ignored.
    """
    gmap = gmap or {}
    vmap = vmap or {}
    renamed = relabel(d1, vmap, gmap)
    out: List[str] = []
    if set(renamed.vertices) != set(d2.vertices):
        out.append(f"vertices {sorted(renamed.vertices)} != {sorted(d2.vertices)}")
    only1 = sorted(set(renamed.generators) - set(d2.generators))
    only2 = sorted(set(d2.generators) - set(renamed.generators))
    if only1 or only2:
        out.append(f"generators only on the left {only1}, only on the right {only2}")
    for gid in sorted(set(renamed.generators) & set(d2.generators)):
        g1, g2 = renamed.generators[gid], d2.generators[gid]
        if (g1.source, g1.target, g1.degree) != (g2.source, g2.target, g2.degree):
            out.append(f"{gid}: {g1.source}->{g1.target} |{g1.degree}| vs {g2.source}->{g2.target} |{g2.degree}|")
        if renamed.differential[gid] != d2.differential[gid]:
            out.append(f"d({gid}) = {renamed.differential[gid]!r} vs {d2.differential[gid]!r}")
    return out


def direct_product(d1: QuiverDGA, d2: QuiverDGA) -> QuiverDGA:
    taken_v = set(d1.vertices)
    taken_g = set(d1.generators)
    vmap = {v: (f"{v}#2" if v in taken_v else v) for v in d2.vertices}
    gmap = {g: (f"{g}#2" if g in taken_g else g) for g in d2.generators}
    right = relabel(d2, vmap, gmap)
    gens = dict(d1.generators)
    gens.update(right.generators)
    diff = dict(d1.differential)
    diff.update(right.differential)
    return QuiverDGA(d1.vertices + right.vertices, gens, diff, name=f"{d1.name} x {d2.name}".strip())


def hh0_truncated(dga: QuiverDGA, max_length: int, ignore_differential: bool = False) -> Dict[int, int]:
    """
    dim (A / [A, A]) in each word length 0..max_length. Needs d = 0 unless
    ignore_differential, which computes it for the underlying path algebra.
    """
    if not ignore_differential and not dga.has_zero_differential():
        raise DGAError("HH_0 is only computed for algebras with zero differential")
    words = enumerate_words(dga, TruncationPolicy(max_length=max_length))
    by_len: Dict[int, List[Word]] = {}
    for w in words:
        by_len.setdefault(len(w), []).append(w)
    out: Dict[int, int] = {}
    for length in range(max_length + 1):
        basis = by_len.get(length, [])
        idx = {w: k for k, w in enumerate(basis)}
        rels: List[np.ndarray] = []
        for w in basis:
            if w.source != w.target:
                # [e_target, w] = w
                v = np.zeros(len(basis), dtype=np.uint8)
                v[idx[w]] = 1
                rels.append(v)
                continue
            for cut in range(1, length):
                x, y = w.letters[:cut], w.letters[cut:]
                rotated = Word(y + x, w.source, w.target)
                v = np.zeros(len(basis), dtype=np.uint8)
                v[idx[w]] ^= 1
                v[idx[rotated]] ^= 1
                rels.append(v)
        r = gf2.rank(np.array(rels, dtype=np.uint8)) if rels else 0
        out[length] = len(basis) - r
    return out


# =========================
# JSON
# =========================
def dga_to_json(dga: QuiverDGA) -> Dict[str, Any]:
    return {
        "name": dga.name,
        "vertices": list(dga.vertices),
        "generators": [
            {"id": g.id, "src": g.source, "tgt": g.target, "degree": g.degree, "weight": str(Fraction(g.weight))}
            for g in dga.generators.values()
        ],
        "differential": {gid: [list(w.letters) for w in s] for gid, s in dga.differential.items()},
    }


def dga_from_json(obj: Dict[str, Any]) -> QuiverDGA:
    try:
        gens = {}
        for g in obj["generators"]:
            gens[g["id"]] = Generator(str(g["id"]), str(g["src"]), str(g["tgt"]), int(g["degree"]), Fraction(str(g["weight"])))
        diff: Dict[str, FormalSum] = {}
        for gid, words in (obj.get("differential") or {}).items():
            g = gens[gid]
            diff[gid] = FormalSum(
                Word(tuple(w), g.source, g.target) if w else idempotent(g.source) for w in words
            )
        return QuiverDGA(tuple(str(v) for v in obj["vertices"]), gens, diff, name=obj.get("name", ""))
    except (KeyError, TypeError, ZeroDivisionError) as e:
        raise DGAError(f"malformed DGA JSON: {e}") from e
