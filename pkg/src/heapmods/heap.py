"""Finite abelian groups and heaps, their morphisms, translations and quotients.

Elements are dense integer ids ``0..n-1``; user-facing names live in ``labels``.
All tables are numpy integer arrays made read-only once validated.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, reduce
from itertools import product as iproduct
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    AxiomViolation,
    ElementNotInCarrier,
    EmptyHeap,
    NotAMorphism,
    NotASubheap,
    TableNotTotal,
)


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=np.intp, copy=True)
    arr.setflags(write=False)
    return arr


def _first(mask: np.ndarray) -> tuple | None:
    """Lexicographically first index where ``mask`` is true, or None."""
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return None
    return tuple(int(v) for v in hits[0])


def _default_labels(n: int, labels: Sequence[str] | None) -> tuple[str, ...]:
    if labels is None:
        return tuple(str(i) for i in range(n))
    labels = tuple(str(x) for x in labels)
    if len(labels) != n or len(set(labels)) != n:
        raise ValueError("labels must be distinct and match the carrier size")
    return labels


def _check_total(table: np.ndarray, n: int, arity: int, name: str) -> None:
    if table.shape != (n,) * arity:
        raise TableNotTotal(name, f"expected shape {(n,) * arity}, got {table.shape}")
    if table.size and (table.min() < 0 or table.max() >= n):
        bad = _first((table < 0) | (table >= n))
        raise TableNotTotal(name, f"entry at {bad} is outside the carrier")


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite abelian group given by its addition table."""

    add: np.ndarray
    neg: np.ndarray
    zero: int
    labels: tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.neg)

    def __len__(self) -> int:
        return self.size

    @cached_property
    def orders(self) -> np.ndarray:
        out = np.zeros(self.size, dtype=np.intp)
        for x in range(self.size):
            k, y = 1, x
            while y != self.zero:
                y = int(self.add[y, x])
                k += 1
            out[x] = k
        return out

    @cached_property
    def exponent(self) -> int:
        return reduce(lcm, (int(o) for o in self.orders), 1)

    @cached_property
    def multiples(self) -> np.ndarray:
        """``multiples[k, x] = k*x`` for ``0 <= k < exponent``."""
        out = np.empty((self.exponent, self.size), dtype=np.intp)
        out[0] = self.zero
        for k in range(1, self.exponent):
            out[k] = self.add[out[k - 1], np.arange(self.size)]
        out.setflags(write=False)
        return out

    def plus(self, a, b):
        return self.add[a, b]

    def minus(self, a, b):
        return self.add[a, self.neg[b]]

    def scale(self, k, x):
        """``k*x`` for integer (possibly huge or negative) ``k``; vectorized."""
        k = np.asarray(np.mod(np.asarray(k), self.exponent)).astype(np.intp)
        return self.multiples[k, x]

    def total(self, xs: Iterable[int]) -> int:
        acc = self.zero
        for x in xs:
            acc = int(self.add[acc, x])
        return acc

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by decreasing order."""
        gens: list[int] = []
        span = {self.zero}
        for x in sorted(range(self.size), key=lambda v: (-int(self.orders[v]), v)):
            if x in span:
                continue
            gens.append(x)
            span = set(subgroup_generated(self, gens))
            if len(span) == self.size:
                break
        return tuple(gens)

    def relabel_index(self, label: str) -> int:
        return self.labels.index(label)


def validate_group(add, zero: int | None = None, labels: Sequence[str] | None = None) -> FiniteGroup:
    """Exhaustively validate an abelian group table."""
    add = np.asarray(add, dtype=np.intp)
    n = add.shape[0] if add.ndim == 2 else 0
    if n == 0:
        raise EmptyHeap("a group needs at least one element")
    _check_total(add, n, 2, "add")
    idx = np.arange(n)
    if zero is None:
        cands = [e for e in range(n) if np.array_equal(add[e], idx) and np.array_equal(add[:, e], idx)]
        if not cands:
            raise AxiomViolation("identity", (), "no two-sided identity")
        zero = cands[0]
    w = _first(add[zero] != idx)
    if w is None:
        w = _first(add[:, zero] != idx)
    if w is not None:
        raise AxiomViolation("identity", (zero, w[0]))
    w = _first(add != add.T)
    if w is not None:
        raise AxiomViolation("commutativity", w)
    w = _first(add[add[:, :, None], idx[None, None, :]] != add[idx[:, None, None], add[None, :, :]])
    if w is not None:
        raise AxiomViolation("associativity", w)
    neg = np.full(n, -1, dtype=np.intp)
    for x in range(n):
        hits = np.flatnonzero(add[x] == zero)
        if len(hits) == 0:
            raise AxiomViolation("inverse", (x,))
        neg[x] = hits[0]
    return FiniteGroup(_frozen(add), _frozen(neg), int(zero), _default_labels(n, labels))


def cyclic_group(n: int) -> FiniteGroup:
    idx = np.arange(n)
    return validate_group((idx[:, None] + idx[None, :]) % n, 0)


def trivial_group() -> FiniteGroup:
    return cyclic_group(1)


def product_group(*groups: FiniteGroup) -> tuple[FiniteGroup, np.ndarray]:
    """Direct product; returns the group and an ``(N, k)`` array of component ids.

    Element ``i`` of the product corresponds to ``coords[i]`` in row-major order.
    """
    sizes = [g.size for g in groups]
    coords = np.array(list(iproduct(*[range(s) for s in sizes])), dtype=np.intp).reshape(-1, len(groups))
    N = len(coords)
    strides = np.array([int(np.prod(sizes[i + 1:])) for i in range(len(sizes))], dtype=np.intp)
    comps = [g.add[coords[:, None, i], coords[None, :, i]] for i, g in enumerate(groups)]
    add = sum(c * s for c, s in zip(comps, strides)) if groups else np.zeros((1, 1), dtype=np.intp)
    zero = int(sum(g.zero * s for g, s in zip(groups, strides)))
    labels = ["(" + ",".join(g.labels[c] for g, c in zip(groups, row)) + ")" for row in coords]
    grp = FiniteGroup(_frozen(add), _frozen(np.zeros(N, dtype=np.intp)), zero, tuple(labels))
    neg = np.array([int(np.flatnonzero(grp.add[x] == zero)[0]) for x in range(N)], dtype=np.intp)
    grp = FiniteGroup(grp.add, _frozen(neg), zero, tuple(labels))
    return grp, _frozen(coords)


def subgroup_generated(G: FiniteGroup, xs: Iterable[int]) -> list[int]:
    seen = {G.zero}
    frontier = [G.zero]
    xs = list(xs)
    while frontier:
        nxt = []
        for y in frontier:
            for x in xs:
                for z in (int(G.add[y, x]), int(G.add[y, G.neg[x]])):
                    if z not in seen:
                        seen.add(z)
                        nxt.append(z)
        frontier = nxt
    return sorted(seen)


def is_group_hom(G: FiniteGroup, H: FiniteGroup, f) -> tuple | None:
    """Return the first pair ``(a, b)`` breaking additivity, or None."""
    f = np.asarray(f, dtype=np.intp)
    return _first(f[G.add] != H.add[f[:, None], f[None, :]])


# ---------------------------------------------------------------------------
# heaps


@dataclass(frozen=True, eq=False)
class FiniteHeap:
    """A finite abelian heap. Non-empty heaps carry a basepoint and its retract."""

    bracket: np.ndarray
    labels: tuple[str, ...]
    basepoint: int | None = None
    abelian: bool = True

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return self.size

    @property
    def is_empty(self) -> bool:
        return self.size == 0

    @cached_property
    def stored_retract(self) -> FiniteGroup | None:
        return None if self.is_empty else retract(self, self.basepoint)

    def br(self, a, b, c):
        return self.bracket[a, b, c]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise ElementNotInCarrier(label) from None


LITERAL_H1_LIMIT = 16


def _group_route_ok(bracket: np.ndarray) -> bool:
    """Abelian heap iff the retract at 0 is an abelian group and ``[x,y,z] = x - y + z`` in it."""
    n = bracket.shape[0]
    i = np.arange(n)
    add = bracket[:, 0, :]
    if not (np.array_equal(add[0], i) and np.array_equal(add[:, 0], i) and np.array_equal(add, add.T)):
        return False
    if not np.array_equal(add[add[:, :, None], i[None, None, :]], add[i[:, None, None], add[None, :, :]]):
        return False
    neg = np.argmax(add == 0, axis=1)
    if not (add[i, neg] == 0).all():
        return False
    return bool(np.array_equal(bracket, add[add[:, neg][:, :, None], i[None, None, :]]))


def heap_axiom_witness(bracket: np.ndarray) -> tuple[str, tuple] | None:
    """First failing axiom among H1, H2, Abelian with its witness tuple.

    Above ``LITERAL_H1_LIMIT`` elements a passing table is recognized through the
    equivalent cubic criterion of ``_group_route_ok``; witnesses are still
    searched literally.
    """
    n = bracket.shape[0]
    if n == 0:
        return None
    if n > LITERAL_H1_LIMIT and _group_route_ok(bracket):
        return None
    i = np.arange(n)
    # H1: [a,b,[c,d,e]] = [[a,b,c],d,e] over all 5-tuples, chunked over a
    for a in range(n):
        lhs = bracket[a, i[:, None, None, None], bracket[None, :, :, :]]
        rhs = bracket[bracket[a][:, :, None, None], i[None, None, :, None], i[None, None, None, :]]
        w = _first(lhs != rhs)
        if w is not None:
            return "H1", (a,) + w
    # H2: [a,b,b] = a, then [b,b,a] = a; witnesses reported as the bracket arguments
    diag = bracket[:, i, i]  # [a,b,b] indexed (a,b)
    w = _first(diag.T != i[None, :])  # indexed (b,a)
    if w is not None:
        b, a = w
        return "H2", (a, b, b)
    left = bracket[i, i, :]  # [b,b,a] indexed (b,a)
    w = _first(left != i[None, :])
    if w is not None:
        b, a = w
        return "H2", (b, b, a)
    w = _first(bracket != bracket.transpose(2, 1, 0))
    if w is not None:
        return "Abelian", w
    return None


def validate_heap(bracket, labels: Sequence[str] | None = None, basepoint: int | None = None) -> FiniteHeap:
    """Exhaustively validate a ternary table as an abelian heap."""
    bracket = np.asarray(bracket, dtype=np.intp)
    if bracket.size == 0:
        return FiniteHeap(_frozen(np.zeros((0, 0, 0))), _default_labels(0, labels), None)
    n = bracket.shape[0]
    _check_total(bracket, n, 3, "bracket")
    bad = heap_axiom_witness(bracket)
    if bad is not None:
        raise AxiomViolation(*bad)
    if basepoint is None:
        basepoint = 0
    if not 0 <= basepoint < n:
        raise ElementNotInCarrier(basepoint)
    H = FiniteHeap(_frozen(bracket), _default_labels(n, labels), int(basepoint))
    G = H.stored_retract
    # redundancy layer: the stored retract must rebuild the ternary table
    if not np.array_equal(heap_from_group(G).bracket, H.bracket):
        raise AxiomViolation("retract", (basepoint,), "retract does not reproduce the bracket")
    return H


def empty_heap() -> FiniteHeap:
    return validate_heap(np.zeros((0, 0, 0)))


def singleton_heap(label: str = "*") -> FiniteHeap:
    return validate_heap(np.zeros((1, 1, 1)), [label])


def heap_from_group(G: FiniteGroup) -> FiniteHeap:
    """The heap with ``[x,y,z] = x - y + z``."""
    br = G.add[G.add[:, G.neg][:, :, None], np.arange(G.size)[None, None, :]]
    return FiniteHeap(_frozen(br), G.labels, G.zero)


def retract(H: FiniteHeap, e: int) -> FiniteGroup:
    """The group G(H;e): ``x + y = [x,e,y]``, zero ``e``, ``-x = [e,x,e]``."""
    if H.is_empty:
        raise EmptyHeap("the empty heap has no retract")
    if not 0 <= e < H.size:
        raise ElementNotInCarrier(e)
    return FiniteGroup(_frozen(H.bracket[:, e, :]), _frozen(H.bracket[e, :, e]), int(e), H.labels)


# ---------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True, eq=False)
class Morphism:
    dom: object
    cod: object
    map: np.ndarray
    kind: str = "map"

    def __call__(self, x):
        return self.map[x]

    @property
    def is_injective(self) -> bool:
        return len(np.unique(self.map)) == len(self.map)

    @property
    def is_surjective(self) -> bool:
        return len(np.unique(self.map)) == len(self.cod)

    def image(self) -> list[int]:
        return sorted(set(int(v) for v in self.map))


@dataclass(frozen=True, eq=False)
class HeapMorphism(Morphism):
    kind: str = "heap"


def heap_morphism_witness(dom: FiniteHeap, cod: FiniteHeap, f) -> tuple | None:
    f = np.asarray(f, dtype=np.intp)
    if dom.is_empty:
        return None
    return _first(f[dom.bracket] != cod.bracket[f[:, None, None], f[None, :, None], f[None, None, :]])


def _check_map(dom_size: int, cod_size: int, f) -> np.ndarray:
    f = np.asarray(f, dtype=np.intp).reshape(-1)
    if len(f) != dom_size:
        raise TableNotTotal("morphism", f"expected {dom_size} entries, got {len(f)}")
    if len(f) and (f.min() < 0 or f.max() >= cod_size):
        raise ElementNotInCarrier(int(f[(f < 0) | (f >= cod_size)][0]))
    return f


def heap_morphism(dom: FiniteHeap, cod: FiniteHeap, f) -> HeapMorphism:
    f = _check_map(dom.size, cod.size, f)
    w = heap_morphism_witness(dom, cod, f)
    if w is not None:
        raise NotAMorphism(w, "heap")
    return HeapMorphism(dom, cod, _frozen(f))


@dataclass(frozen=True)
class MorphismReport:
    ok: bool
    witness: tuple | None
    retract_pair: tuple[int, int] | None


def validate_heap_morphism(f: Morphism) -> MorphismReport:
    """Check the bracket condition; on success report the retract pair ``(e, f(e))``.

    For any ``e`` in the domain, ``f`` is then a group homomorphism
    ``G(dom;e) -> G(cod;f(e))``; the pair for ``e = dom.basepoint`` is checked.
    """
    w = heap_morphism_witness(f.dom, f.cod, f.map)
    if w is not None:
        raise NotAMorphism(w, "heap")
    if f.dom.is_empty:
        return MorphismReport(True, None, None)
    e = f.dom.basepoint
    fe = int(f.map[e])
    bad = is_group_hom(retract(f.dom, e), retract(f.cod, fe), f.map)
    if bad is not None:
        raise NotAMorphism(bad, "group", "retract pair check failed")
    return MorphismReport(True, None, (e, fe))


def identity(H: FiniteHeap) -> HeapMorphism:
    return HeapMorphism(H, H, _frozen(np.arange(H.size)))


def compose(g: Morphism, f: Morphism) -> Morphism:
    """``g ∘ f``."""
    return type(f)(f.dom, g.cod, _frozen(g.map[f.map]) if len(f.map) else _frozen([]))


def translation(H: FiniteHeap, a: int, b: int) -> HeapMorphism:
    """``τ_a^b : x ↦ [x,a,b]``."""
    for v in (a, b):
        if not 0 <= v < H.size:
            raise ElementNotInCarrier(v)
    return HeapMorphism(H, H, _frozen(H.bracket[:, a, b]))


# ---------------------------------------------------------------------------
# translation group and the pair-group realization


@dataclass(frozen=True, eq=False)
class TranslationGroup:
    heap: FiniteHeap
    group: FiniteGroup
    maps: np.ndarray  # (k, n): row i is the i-th translation

    def index(self, a: int, b: int) -> int:
        row = self.heap.bracket[:, a, b]
        return int(np.flatnonzero((self.maps == row).all(axis=1))[0])


def translation_group(H: FiniteHeap) -> TranslationGroup:
    """Distinct translations under composition; the identity has id 0."""
    rows: list[tuple] = [tuple(range(H.size))]
    for a in range(H.size):
        for b in range(H.size):
            r = tuple(int(v) for v in H.bracket[:, a, b])
            if r not in rows:
                rows.append(r)
    maps = np.array(rows, dtype=np.intp).reshape(len(rows), H.size)
    lookup = {r: i for i, r in enumerate(rows)}
    k = len(rows)
    comp = np.empty((k, k), dtype=np.intp)
    for i in range(k):
        for j in range(k):
            # i + j := τ_i ∘ τ_j
            comp[i, j] = lookup[tuple(int(v) for v in maps[i][maps[j]])] if H.size else 0
    labels = [f"tau{i}" for i in range(k)]
    return TranslationGroup(H, validate_group(comp, 0, labels), _frozen(maps))


def transport(f: HeapMorphism, src: TranslationGroup | None = None, dst: TranslationGroup | None = None) -> Morphism:
    """Tr(f): τ_a^b ↦ τ_{f(a)}^{f(b)}, checked to be well defined and additive."""
    src = src or translation_group(f.dom)
    dst = dst or translation_group(f.cod)
    out = np.full(src.group.size, -1, dtype=np.intp)
    out[0] = 0
    for a in range(f.dom.size):
        for b in range(f.dom.size):
            i, j = src.index(a, b), dst.index(int(f.map[a]), int(f.map[b]))
            if out[i] not in (-1, j):
                raise NotAMorphism((a, b), "translation-group", "transport is not well defined")
            out[i] = j
    bad = is_group_hom(src.group, dst.group, out)
    if bad is not None:
        raise NotAMorphism(bad, "group")
    return Morphism(src.group, dst.group, _frozen(out), "group")


@dataclass(frozen=True, eq=False)
class PairGroup:
    heap: FiniteHeap
    group: FiniteGroup
    classes: tuple[tuple[tuple[int, int], ...], ...]
    class_of: np.ndarray  # (n, n) -> class id
    iso_from_tr: np.ndarray  # translation id -> class id


def pair_group_realization(H: FiniteHeap, tr: TranslationGroup | None = None) -> PairGroup:
    """Classes of pairs with ``(x,y) ~ (x',y')`` iff ``y' = [x',x,y]``.

    The product is ``(x,y)(x',y') = (x,[y,x',y'])`` and ``τ_x^y ↦ [(x,y)]`` is
    checked to be an isomorphism from the opposite of Tr(H).
    """
    if H.is_empty:
        raise EmptyHeap("pair-group realization needs a non-empty heap")
    n = H.size
    class_of = np.full((n, n), -1, dtype=np.intp)
    classes: list[tuple[tuple[int, int], ...]] = []
    for x in range(n):
        for y in range(n):
            if class_of[x, y] >= 0:
                continue
            members = tuple((xp, int(H.bracket[xp, x, y])) for xp in range(n))
            for p in members:
                class_of[p] = len(classes)
            classes.append(members)
    # relation check: the class of (x,y) is exactly its ~-orbit
    for x, y, xp, yp in iproduct(range(n), repeat=4):
        if (class_of[x, y] == class_of[xp, yp]) != (yp == H.bracket[xp, x, y]):
            raise AxiomViolation("pair-relation", (x, y, xp, yp))
    k = len(classes)
    mul = np.empty((k, k), dtype=np.intp)
    for i, ci in enumerate(classes):
        for j, cj in enumerate(classes):
            vals = {int(class_of[x, H.bracket[y, xp, yp]]) for (x, y) in ci for (xp, yp) in cj}
            if len(vals) != 1:
                raise AxiomViolation("pair-product", (i, j), "product not well defined")
            mul[i, j] = vals.pop()
    G = validate_group(mul, int(class_of[0, 0]), [f"[{H.labels[c[0][0]]},{H.labels[c[0][1]]}]" for c in classes])
    tr = tr or translation_group(H)
    iso = np.full(tr.group.size, -1, dtype=np.intp)
    for x in range(n):
        for y in range(n):
            iso[tr.index(x, y)] = class_of[x, y]
    if len(set(iso.tolist())) != k or k != tr.group.size:
        raise AxiomViolation("pair-iso", (), "not a bijection")
    # opposite orientation: iso(b ∘ a) = iso(a) · iso(b)
    w = _first(iso[tr.group.add.T] != G.add[iso[:, None], iso[None, :]])
    if w is not None:
        raise AxiomViolation("pair-iso", w, "not an anti-homomorphism")
    return PairGroup(H, G, tuple(classes), _frozen(class_of), _frozen(iso))


# ---------------------------------------------------------------------------
# sub-heaps, congruences, quotients


def subheap_witness(H: FiniteHeap, S: Iterable[int]) -> tuple | None:
    S = np.array(sorted(set(int(s) for s in S)), dtype=np.intp)
    if len(S) == 0:
        return None
    inS = np.zeros(H.size, dtype=bool)
    inS[S] = True
    w = _first(~inS[H.bracket[np.ix_(S, S, S)]])
    return None if w is None else tuple(int(S[i]) for i in w)


def is_subheap(H: FiniteHeap, S: Iterable[int]) -> bool:
    return subheap_witness(H, S) is None


def subheap_generated(H: FiniteHeap, X: Iterable[int]) -> list[int]:
    cur = set(int(x) for x in X)
    while True:
        arr = np.array(sorted(cur), dtype=np.intp)
        new = set(np.unique(H.bracket[np.ix_(arr, arr, arr)]).tolist()) if len(arr) else set()
        if new <= cur:
            return sorted(cur)
        cur |= new


@dataclass(frozen=True, eq=False)
class SubheapCongruence:
    heap: FiniteHeap
    subheap: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]
    class_of: np.ndarray


def subheap_relation(H: FiniteHeap, S: Iterable[int]) -> np.ndarray:
    """Boolean matrix of ``a ~_S b`` iff ``[a,b,s] ∈ S`` for every ``s ∈ S``."""
    S = np.array(sorted(set(int(s) for s in S)), dtype=np.intp)
    inS = np.zeros(H.size, dtype=bool)
    inS[S] = True
    return inS[H.bracket[:, :, S]].all(axis=2)


def partition_from_relation(rel: np.ndarray) -> np.ndarray:
    n = rel.shape[0]
    cls = np.full(n, -1, dtype=np.intp)
    k = 0
    for a in range(n):
        if cls[a] < 0:
            cls[rel[a]] = k
            k += 1
    return cls


def sub_heap_congruence(H: FiniteHeap, S: Iterable[int]) -> SubheapCongruence:
    S = sorted(set(int(s) for s in S))
    if not S:
        raise NotASubheap(())
    w = subheap_witness(H, S)
    if w is not None:
        raise NotASubheap(w)
    rel = subheap_relation(H, S)
    cls = partition_from_relation(rel)
    k = int(cls.max()) + 1
    classes = tuple(tuple(int(a) for a in np.flatnonzero(cls == c)) for c in range(k))
    if not is_congruence(H, cls):
        raise AxiomViolation("congruence", tuple(S))
    return SubheapCongruence(H, tuple(S), classes, _frozen(cls))


def is_congruence(H: FiniteHeap, cls: np.ndarray) -> bool:
    """True if the partition ``cls`` (element -> class id) is compatible with the bracket."""
    cls = np.asarray(cls)
    k = int(cls.max()) + 1 if len(cls) else 0
    reps = np.array([int(np.flatnonzero(cls == c)[0]) for c in range(k)], dtype=np.intp)
    qbr = cls[H.bracket[np.ix_(reps, reps, reps)]]
    return bool(np.array_equal(cls[H.bracket], qbr[cls[:, None, None], cls[None, :, None], cls[None, None, :]]))


def quotient_by_partition(H: FiniteHeap, cls: np.ndarray, name: str = "quotient") -> tuple[FiniteHeap, HeapMorphism]:
    cls = np.asarray(cls, dtype=np.intp)
    if not is_congruence(H, cls):
        raise AxiomViolation("congruence", (), f"{name}: partition is not a congruence")
    k = int(cls.max()) + 1
    reps = np.array([int(np.flatnonzero(cls == c)[0]) for c in range(k)], dtype=np.intp)
    qbr = cls[H.bracket[np.ix_(reps, reps, reps)]]
    labels = ["{" + ",".join(H.labels[a] for a in np.flatnonzero(cls == c)) + "}" for c in range(k)]
    Q = validate_heap(qbr, labels)
    return Q, heap_morphism(H, Q, cls)


def heap_quotient(H: FiniteHeap, S: Iterable[int]) -> tuple[FiniteHeap, HeapMorphism]:
    """``H/S`` for a non-empty sub-heap ``S`` together with the projection."""
    cong = sub_heap_congruence(H, S)
    return quotient_by_partition(H, cong.class_of)


def set_partitions(n: int):
    """All set partitions of ``range(n)`` as restricted-growth label arrays."""
    if n == 0:
        yield np.zeros(0, dtype=np.intp)
        return
    a = [0] * n

    def rec(i: int, m: int):
        if i == n:
            yield np.array(a, dtype=np.intp)
            return
        for v in range(m + 2):
            a[i] = v
            yield from rec(i + 1, max(m, v))

    a[0] = 0
    yield from rec(1, 0)


def congruences(H: FiniteHeap) -> list[np.ndarray]:
    """Every congruence of ``H`` by brute force over set partitions."""
    return [p for p in set_partitions(H.size) if is_congruence(H, p)]
