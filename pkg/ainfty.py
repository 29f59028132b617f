"""
ainfty.py

Minimal A-infinity models over Z/2.

A model is a graded basis with quiver endpoints plus tables mu[k] mapping
composable basis tensors to sets of basis ids. Tensors are written like
words: (x_k, ..., x_1), x_1 applied first, so target(t[m+1]) == source(t[m]).

transfer() builds a model from a truncated QuiverDGA by homotopy transfer
along a contraction chosen by Gaussian elimination on each (source, target)
block of the truncated complex:

    H_1 = incl,  H_s = h . lambda_s,
    lambda_k(t) = sum_s m2(H(t[:s]), H(t[s:])),   mu_k = proj . lambda_k
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import product
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

import gf2
from quiver_dga import (
    DGAError,
    FormalSum,
    GradedComplex,
    QuiverDGA,
    TruncationPolicy,
    Word,
    ZERO,
    build_complex,
    enumerate_words,
    harmonic_representatives,
    idempotent,
    image_basis,
    multiply,
    sort_key,
)

LOG = logging.getLogger(__name__)

Tensor = Tuple[str, ...]


class AInfinityError(ValueError):
    pass


class TransferEscape(AInfinityError):
    """An intermediate term of the transfer left the truncated complex."""


# =========================
# Models
# =========================
@dataclass(frozen=True)
class BasisElement:
    id: str
    degree: int
    source: str
    target: str


@dataclass
class AInfinityAlgebra:
    basis: Dict[str, BasisElement]
    mu: Dict[int, Dict[Tensor, FrozenSet[str]]]
    units: Dict[str, str]
    arity_bound: int
    name: str = ""
    representatives: Dict[str, FormalSum] = field(default_factory=dict)

    def op(self, tensor: Sequence[str]) -> FrozenSet[str]:
        return self.mu.get(len(tensor), {}).get(tuple(tensor), frozenset())

    def composable(self, tensor: Sequence[str]) -> bool:
        return all(self.basis[tensor[m + 1]].target == self.basis[tensor[m]].source for m in range(len(tensor) - 1))

    def tensors(self, k: int) -> Iterable[Tensor]:
        """Composable basis tensors of arity k, x_1 chosen first."""
        by_source: Dict[str, List[str]] = {}
        for b in self.basis.values():
            by_source.setdefault(b.source, []).append(b.id)
        stack: List[Tensor] = [(b,) for b in sorted(self.basis)]
        while stack:
            t = stack.pop()
            if len(t) == k:
                yield t
                continue
            for nxt in sorted(by_source.get(self.basis[t[0]].target, [])):
                stack.append((nxt,) + t)

    def nonzero_arities(self) -> List[int]:
        return sorted(k for k, table in self.mu.items() if any(table.values()))

    def higher_operations(self) -> Dict[Tensor, FrozenSet[str]]:
        return {t: out for k, table in self.mu.items() if k >= 3 for t, out in table.items() if out}


# =========================
# Contractions
# =========================
@dataclass
class Contraction:
    """
    Deformation retract of one finite complex onto representatives of its
    cohomology. In degree d the basis is split as B + H + L: B spans the
    image of d_{d-1}, H the chosen cycle representatives, L the standard
    vectors at the pivot columns of d_d. h sends the k-th B vector to the
    pivot column it is the image of and kills H and L.
    """

    complex: GradedComplex
    harmonic: Dict[int, np.ndarray]
    change: Dict[int, np.ndarray]
    sizes: Dict[int, Tuple[int, int]]
    lift: Dict[int, np.ndarray]

    @property
    def degrees(self) -> range:
        lo, hi = self.complex.window
        return range(lo, hi + 1)

    def _coords(self, d: int, v: np.ndarray) -> np.ndarray:
        if d not in self.change:
            if np.asarray(v).any():
                raise TransferEscape(f"degree {d} lies outside the contraction window {self.complex.window}")
            return np.zeros(0, dtype=np.uint8)
        return self.change[d].dot(gf2.as_gf2(v)) & 1

    def proj(self, d: int, v: np.ndarray) -> np.ndarray:
        if d not in self.change:
            self._coords(d, v)
            return np.zeros(0, dtype=np.uint8)
        nb, nh = self.sizes[d]
        return self._coords(d, v)[nb:nb + nh]

    def incl(self, d: int, coords: np.ndarray) -> np.ndarray:
        H = self.harmonic.get(d, np.zeros((0, self.complex.dimension(d)), dtype=np.uint8))
        return gf2.as_gf2(H.T.dot(gf2.as_gf2(coords)))

    def homotopy(self, d: int, v: np.ndarray) -> np.ndarray:
        if d not in self.change:
            self._coords(d, v)
            return np.zeros(self.complex.dimension(d - 1), dtype=np.uint8)
        nb, _ = self.sizes[d]
        beta = self._coords(d, v)[:nb]
        return gf2.as_gf2(self.lift[d].T.dot(beta)).reshape(-1) if nb else np.zeros(self.complex.dimension(d - 1), dtype=np.uint8)

    def differential(self, d: int, v: np.ndarray) -> np.ndarray:
        M = self.complex.matrices.get(d)
        if M is None:
            return np.zeros(self.complex.dimension(d + 1), dtype=np.uint8)
        return M.dot(gf2.as_gf2(v)) & 1

    def violations(self) -> List[str]:
        """Basis vectors where dh + hd = 1 - incl.proj or a side condition fails."""
        out: List[str] = []
        for d in self.degrees:
            n = self.complex.dimension(d)
            for k in range(n):
                v = np.zeros(n, dtype=np.uint8)
                v[k] = 1
                hv = self.homotopy(d, v)
                lhs = (self.differential(d - 1, hv) + self.homotopy(d + 1, self.differential(d, v))) & 1
                rhs = (v + self.incl(d, self.proj(d, v))) & 1
                label = f"{self.complex.basis[d][k]} (degree {d})"
                if not np.array_equal(lhs, rhs):
                    out.append(f"dh + hd != 1 - ip on {label}")
                if d - 1 in self.change and self.homotopy(d - 1, hv).any():
                    out.append(f"h.h != 0 on {label}")
                if d - 1 in self.change and self.proj(d - 1, hv).any():
                    out.append(f"p.h != 0 on {label}")
            for r, row in enumerate(self.harmonic.get(d, [])):
                if self.homotopy(d, row).any():
                    out.append(f"h.i != 0 on class {r} in degree {d}")
        return out


def contraction_from_complex(cx: GradedComplex,
                             preferred: Optional[Dict[int, Sequence[np.ndarray]]] = None) -> Contraction:
    """
    Contraction of a finite complex, deterministic for a fixed basis order.
    Preferred cycles are used as representatives first.
    """
    lo, hi = cx.window
    if cx.dimension(hi + 1):
        raise AInfinityError(f"degree {hi + 1} is populated but has no outgoing differential in the window")
    preferred = preferred or {}
    harmonic: Dict[int, np.ndarray] = {}
    change: Dict[int, np.ndarray] = {}
    sizes: Dict[int, Tuple[int, int]] = {}
    lift: Dict[int, np.ndarray] = {}
    for d in range(lo, hi + 1):
        n = cx.dimension(d)
        D_in = cx.matrices.get(d - 1, np.zeros((n, cx.dimension(d - 1)), dtype=np.uint8))
        D_out = cx.matrices.get(d, np.zeros((0, n), dtype=np.uint8))
        in_pivots = gf2.pivot_columns(D_in) if D_in.size else []
        B = image_basis(D_in).reshape(-1, n) if D_in.size else np.zeros((0, n), dtype=np.uint8)
        H = harmonic_representatives(cx, d, preferred.get(d, ()))
        out_pivots = gf2.pivot_columns(D_out) if D_out.size else []
        L = np.zeros((len(out_pivots), n), dtype=np.uint8)
        for r, c in enumerate(out_pivots):
            L[r, c] = 1
        if B.shape[0] + H.shape[0] + L.shape[0] != n:
            raise AInfinityError(f"degree {d}: B + H + L does not split a space of dimension {n}")
        harmonic[d] = H
        sizes[d] = (B.shape[0], H.shape[0])
        if n:
            change[d] = gf2.inverse(np.concatenate([B, H, L], axis=0).T)
        else:
            change[d] = np.zeros((0, 0), dtype=np.uint8)
        m = cx.dimension(d - 1)
        lifts = np.zeros((len(in_pivots), m), dtype=np.uint8)
        for r, c in enumerate(in_pivots):
            lifts[r, c] = 1
        lift[d] = lifts
    return Contraction(cx, harmonic, change, sizes, lift)


# =========================
# Homotopy transfer
# =========================
def _block_words(dga: QuiverDGA, policy: TruncationPolicy, salt: int) -> Dict[Tuple[str, str], List[Word]]:
    words = enumerate_words(dga, policy)
    rng = random.Random(salt) if salt else None
    blocks: Dict[Tuple[str, str], List[Word]] = {}
    for w in words:
        blocks.setdefault((w.source, w.target), []).append(w)
    for key, ws in blocks.items():
        ws.sort(key=lambda w: (dga.weight(w), sort_key(w)))
        if rng is not None:
            # reshuffle inside each weight class only
            groups: Dict[Fraction, List[Word]] = {}
            for w in ws:
                groups.setdefault(dga.weight(w), []).append(w)
            ws[:] = [w for wt in sorted(groups) for w in rng.sample(groups[wt], len(groups[wt]))]
    return blocks


def _sum_degree(dga: QuiverDGA, s: FormalSum) -> Optional[int]:
    degrees = {dga.degree(w) for w in s}
    if len(degrees) > 1:
        raise AInfinityError(f"inhomogeneous element {s!r}")
    return degrees.pop() if degrees else None


class _Transfer:
    def __init__(self, dga: QuiverDGA, policy: TruncationPolicy, classes: Optional[Dict[str, FormalSum]], salt: int):
        self.dga = dga
        self.blocks: Dict[Tuple[str, str], Contraction] = {}
        self.incl: Dict[str, FormalSum] = {}
        self.basis: Dict[str, BasisElement] = {}
        self.slots: Dict[Tuple[Tuple[str, str], int], List[Optional[str]]] = {}
        self.memo: Dict[Tensor, FormalSum] = {}

        wanted: Dict[Tuple[Tuple[str, str], int], List[Tuple[str, FormalSum]]] = {}
        for cid, rep in (classes or {}).items():
            words = list(rep)
            if not words:
                raise AInfinityError(f"class {cid} has a zero representative")
            d = _sum_degree(dga, rep)
            wanted.setdefault(((words[0].source, words[0].target), d), []).append((cid, rep))
        if classes is None:
            for v in dga.vertices:
                e = idempotent(v)
                wanted.setdefault(((v, v), 0), []).append((str(e), FormalSum([e])))

        for key, words in _block_words(dga, policy, salt).items():
            cx = build_complex(dga, replace(policy, degree_window=None), words=words)
            preferred: Dict[int, List[np.ndarray]] = {}
            for (k2, d), reps in wanted.items():
                if k2 == key:
                    try:
                        preferred[d] = [cx.vector(d, rep) for _, rep in reps]
                    except DGAError as e:
                        raise TransferEscape(f"class representative outside the truncation: {e}") from e
            c = contraction_from_complex(cx, preferred)
            self.blocks[key] = c
            for d in c.degrees:
                H = c.harmonic.get(d)
                if H is None or not H.shape[0]:
                    continue
                names: List[Optional[str]] = []
                given = {rep: cid for cid, rep in wanted.get((key, d), [])}
                for r, row in enumerate(H):
                    rep = cx.formal_sum(d, row)
                    if rep in given:
                        cid = given[rep]
                    elif classes is not None:
                        names.append(None)
                        continue
                    else:
                        only = list(rep)
                        cid = str(only[0]) if len(only) == 1 else f"h[{key[0]}>{key[1]}]{d}.{r}"
                    names.append(cid)
                    self.incl[cid] = rep
                    self.basis[cid] = BasisElement(cid, d, key[0], key[1])
                self.slots[(key, d)] = names
        if classes is not None:
            missing = sorted(set(classes) - set(self.basis))
            if missing:
                raise AInfinityError(f"classes exact or dependent in the truncated complex: {missing}")

    def h(self, s: FormalSum) -> FormalSum:
        d = _sum_degree(self.dga, s)
        if d is None:
            return ZERO
        key = (next(iter(s)).source, next(iter(s)).target)
        c = self.blocks.get(key)
        if c is None:
            raise TransferEscape(f"no truncated complex for block {key}")
        try:
            v = c.complex.vector(d, s)
        except DGAError as e:
            raise TransferEscape(str(e)) from e
        return c.complex.formal_sum(d - 1, c.homotopy(d, v))

    def proj(self, s: FormalSum) -> FrozenSet[str]:
        d = _sum_degree(self.dga, s)
        if d is None:
            return frozenset()
        key = (next(iter(s)).source, next(iter(s)).target)
        c = self.blocks.get(key)
        if c is None:
            raise TransferEscape(f"no truncated complex for block {key}")
        try:
            v = c.complex.vector(d, s)
        except DGAError as e:
            raise TransferEscape(str(e)) from e
        coords = c.proj(d, v)
        names = self.slots.get((key, d), [])
        out = set()
        for r in np.nonzero(coords)[0]:
            cid = names[r]
            if cid is None:
                raise AInfinityError(f"{s!r} projects onto a class outside the supplied basis")
            out.add(cid)
        return frozenset(out)

    def lam(self, t: Tensor) -> FormalSum:
        acc = ZERO
        for s in range(1, len(t)):
            acc = acc + multiply(self.H(t[:s]), self.H(t[s:]))
        return acc

    def H(self, t: Tensor) -> FormalSum:
        if len(t) == 1:
            return self.incl[t[0]]
        if t not in self.memo:
            self.memo[t] = self.h(self.lam(t))
        return self.memo[t]


def transfer(dga: QuiverDGA, policy: TruncationPolicy, arity_bound: int = 6,
             classes: Optional[Dict[str, FormalSum]] = None, salt: int = 0,
             max_rounds: int = 6, name: str = "") -> AInfinityAlgebra:
    """
    Minimal model of `dga` up to `arity_bound`.

    When an intermediate product leaves the truncation the bounds grow by
    one and the transfer restarts, at most `max_rounds` times. `classes`
    fixes the cohomology basis (id -> representative cycle); outputs on any
    other class are an error.
    """
    if arity_bound < 2:
        raise AInfinityError("arity_bound must be at least 2")
    attempt = replace(policy, degree_window=None)
    for rounds in range(max_rounds + 1):
        try:
            model = _transfer_once(dga, attempt, arity_bound, classes, salt, name)
            LOG.info("transfer of %s: %d classes, arities %s, bounds %s",
                     dga.name or "dga", len(model.basis), model.nonzero_arities(), attempt.describe())
            return model
        except TransferEscape as e:
            if not attempt.bounded() or rounds == max_rounds:
                raise AInfinityError(f"truncation is not closed enough for arity {arity_bound}: {e}") from e
            LOG.info("transfer escaped (%s); enlarging bounds", e)
            attempt = replace(
                attempt,
                max_length=None if attempt.max_length is None else attempt.max_length + 1,
                max_weight=None if attempt.max_weight is None else Fraction(attempt.max_weight) + 1,
            )
    raise AInfinityError("unreachable")


def _transfer_once(dga: QuiverDGA, policy: TruncationPolicy, arity_bound: int,
                   classes: Optional[Dict[str, FormalSum]], salt: int, name: str) -> AInfinityAlgebra:
    tr = _Transfer(dga, policy, classes, salt)
    units = {b.source: b.id for b in tr.basis.values() if tr.incl[b.id] == FormalSum([idempotent(b.source)])}
    model = AInfinityAlgebra(dict(tr.basis), {}, units, arity_bound, name=name or f"transfer({dga.name})",
                             representatives=dict(tr.incl))
    unit_ids = set(units.values())
    populated = {(key, d) for (key, d), names in tr.slots.items() if names}
    for k in range(2, arity_bound + 1):
        table: Dict[Tensor, FrozenSet[str]] = {}
        for t in model.tensors(k):
            if k >= 3 and unit_ids.intersection(t):
                continue
            src, tgt = model.basis[t[-1]].source, model.basis[t[0]].target
            degree = sum(model.basis[x].degree for x in t) + 2 - k
            if ((src, tgt), degree) not in populated:
                continue
            out = tr.proj(tr.lam(t))
            if out:
                table[t] = out
        model.mu[k] = table
    return model


# =========================
# Checks
# =========================
@dataclass
class RelationsReport:
    checked: int
    failures: List[Dict[str, Any]]

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> Dict[str, Any]:
        return {"ok": self.ok, "checked": self.checked, "failures": self.failures[:20]}


def _relation(A: AInfinityAlgebra, t: Tensor) -> FrozenSet[str]:
    n = len(t)
    acc: set = set()
    for s in range(2, n):
        for i in range(0, n - s + 1):
            for y in A.op(t[i:i + s]):
                outer = t[:i] + (y,) + t[i + s:]
                acc ^= set(A.op(outer))
    return frozenset(acc)


def check_relations(A: AInfinityAlgebra, arity_bound: Optional[int] = None) -> RelationsReport:
    bound = arity_bound or A.arity_bound
    failures: List[Dict[str, Any]] = []
    checked = 0
    for k, table in A.mu.items():
        for t, out in table.items():
            if not A.composable(t):
                failures.append({"kind": "not composable", "tensor": list(t)})
                continue
            want = sum(A.basis[x].degree for x in t) + 2 - k
            for y in out:
                b = A.basis[y]
                if b.degree != want or b.source != A.basis[t[-1]].source or b.target != A.basis[t[0]].target:
                    failures.append({"kind": "degree or endpoints", "tensor": list(t), "output": y})
    unit_ids = set(A.units.values())
    for v, u in A.units.items():
        for b in A.basis.values():
            if b.target == v and A.op((u, b.id)) != frozenset([b.id]):
                failures.append({"kind": "left unit", "tensor": [u, b.id]})
            if b.source == v and A.op((b.id, u)) != frozenset([b.id]):
                failures.append({"kind": "right unit", "tensor": [b.id, u]})
    for k, table in A.mu.items():
        if k >= 3:
            for t, out in table.items():
                if out and unit_ids.intersection(t):
                    failures.append({"kind": "unit in higher operation", "tensor": list(t)})
    for n in range(3, bound + 2):
        for t in A.tensors(n):
            checked += 1
            residue = _relation(A, t)
            if residue:
                failures.append({"kind": "relation", "arity": n, "tensor": list(t), "residue": sorted(residue)})
    if failures:
        LOG.warning("A-infinity check on %s: %d failures", A.name or "model", len(failures))
    return RelationsReport(checked, failures)


@dataclass(frozen=True)
class ModelDiscrepancy:
    arity: int
    tensor: Tensor
    left: FrozenSet[str]
    right: FrozenSet[str]

    def __str__(self) -> str:
        return f"mu_{self.arity}{list(self.tensor)}: {sorted(self.left)} vs {sorted(self.right)}"


def compare_models(A: AInfinityAlgebra, B: AInfinityAlgebra, correspondence: Optional[Dict[str, str]] = None,
                   arity_bound: int = 6, vertex_map: Optional[Dict[str, str]] = None) -> Optional[ModelDiscrepancy]:
    """First tensor where A and B differ under the basis bijection, or None."""
    corr = dict(correspondence) if correspondence is not None else {b: b for b in A.basis}
    vmap = vertex_map or {}
    if set(corr) != set(A.basis) or set(corr.values()) != set(B.basis) or len(set(corr.values())) != len(corr):
        raise AInfinityError("correspondence is not a bijection between the two bases")
    for a, b in corr.items():
        x, y = A.basis[a], B.basis[b]
        if x.degree != y.degree or vmap.get(x.source, x.source) != y.source or vmap.get(x.target, x.target) != y.target:
            raise AInfinityError(f"correspondence {a} -> {b} does not preserve degree and endpoints")
    back = {b: a for a, b in corr.items()}
    for k in range(2, arity_bound + 1):
        keys = set(A.mu.get(k, {})) | {tuple(back[x] for x in t) for t in B.mu.get(k, {})}
        for t in sorted(keys):
            left = A.op(t)
            right = frozenset(back[y] for y in B.op(tuple(corr[x] for x in t)))
            if left != right:
                return ModelDiscrepancy(k, t, left, right)
    return None


def path_algebra_model(vertices: Sequence[str], arrows: Dict[str, Tuple[str, str, int]],
                       zero_relations: Iterable[Tuple[str, str]] = (), max_length: int = 8,
                       name: str = "path algebra") -> AInfinityAlgebra:
    """
    Associative path algebra with monomial relations, as a model with no
    higher operations. A relation (b, a) kills every path containing b a.
    """
    zero = set(zero_relations)
    basis: Dict[str, BasisElement] = {}
    paths: Dict[str, Tuple[str, ...]] = {}
    for v in vertices:
        e = str(idempotent(v))
        basis[e] = BasisElement(e, 0, v, v)
        paths[e] = ()
    frontier = [(a,) for a in arrows]
    while frontier:
        p = frontier.pop()
        if len(p) > max_length:
            continue
        pid = " ".join(p)
        basis[pid] = BasisElement(pid, sum(arrows[a][2] for a in p), arrows[p[-1]][0], arrows[p[0]][1])
        paths[pid] = p
        for a, (src, _, _) in arrows.items():
            if src == arrows[p[0]][1] and (a, p[0]) not in zero:
                frontier.append((a,) + p)
    mu2: Dict[Tensor, FrozenSet[str]] = {}
    for x, y in product(basis.values(), basis.values()):
        if y.target != x.source:
            continue
        px, py = paths[x.id], paths[y.id]
        if px and py and (px[-1], py[0]) in zero:
            continue
        joined = px + py
        key = " ".join(joined) if joined else str(idempotent(y.source))
        if key in basis:
            mu2[(x.id, y.id)] = frozenset([key])
    units = {v: str(idempotent(v)) for v in vertices}
    return AInfinityAlgebra(basis, {2: mu2}, units, 2, name=name)


# =========================
# JSON
# =========================
def model_to_json(A: AInfinityAlgebra) -> Dict[str, Any]:
    return {
        "name": A.name,
        "arity_bound": A.arity_bound,
        "basis": [{"id": b.id, "degree": b.degree, "src": b.source, "tgt": b.target} for b in A.basis.values()],
        "units": dict(A.units),
        "mu": {
            str(k): [{"in": list(t), "out": sorted(out)} for t, out in sorted(table.items()) if out]
            for k, table in sorted(A.mu.items())
        },
    }


def model_from_json(obj: Dict[str, Any]) -> AInfinityAlgebra:
    try:
        basis = {
            str(b["id"]): BasisElement(str(b["id"]), int(b["degree"]), str(b["src"]), str(b["tgt"]))
            for b in obj["basis"]
        }
        mu: Dict[int, Dict[Tensor, FrozenSet[str]]] = {}
        for k, entries in (obj.get("mu") or {}).items():
            mu[int(k)] = {tuple(e["in"]): frozenset(e["out"]) for e in entries}
        return AInfinityAlgebra(basis, mu, dict(obj.get("units") or {}), int(obj.get("arity_bound", 2)),
                                name=obj.get("name", ""))
    except (KeyError, TypeError, ValueError) as e:
        raise AInfinityError(f"malformed model JSON: {e}") from e
