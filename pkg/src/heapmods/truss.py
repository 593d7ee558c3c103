"""Finite rings and trusses."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import AxiomViolation, ElementNotInCarrier, NotATrussMorphism, NotClosed
from .heap import (
    FiniteGroup,
    FiniteHeap,
    HeapMorphism,
    _check_map,
    _check_total,
    _first,
    _frozen,
    cyclic_group,
    heap_from_group,
    heap_morphism_witness,
    retract,
    validate_heap,
)


@dataclass(frozen=True, eq=False)
class FiniteRing:
    """A finite (possibly non-unital) ring on an abelian group."""

    group: FiniteGroup
    mul: np.ndarray
    unit: int | None = None

    @property
    def size(self) -> int:
        return self.group.size

    @property
    def labels(self) -> tuple[str, ...]:
        return self.group.labels

    @property
    def zero(self) -> int:
        return self.group.zero


@dataclass(frozen=True, eq=False)
class FiniteTruss:
    """A finite truss: an abelian heap with a two-sided distributive multiplication."""

    heap: FiniteHeap
    mul: np.ndarray
    unit: int | None = None

    @property
    def size(self) -> int:
        return self.heap.size

    def __len__(self) -> int:
        return self.size

    @property
    def labels(self) -> tuple[str, ...]:
        return self.heap.labels

    @property
    def is_unital(self) -> bool:
        return self.unit is not None

    @property
    def is_empty(self) -> bool:
        return self.size == 0

    @property
    def default_basepoint(self) -> int | None:
        """``1_T`` when unital, else the smallest id."""
        if self.is_empty:
            return None
        return self.unit if self.unit is not None else 0

    def index(self, label) -> int:
        return self.heap.index(label)


def _mul_witnesses(br: np.ndarray, mul: np.ndarray) -> tuple[str, tuple] | None:
    n = mul.shape[0]
    i = np.arange(n)
    w = _first(mul[mul[:, :, None], i[None, None, :]] != mul[i[:, None, None], mul[None, :, :]])
    if w is not None:
        return "associativity", w
    # T1: t[s,s',s''] = [ts,ts',ts'']
    lhs = mul[i[:, None, None, None], br[None, :, :, :]]
    rhs = br[mul[:, :, None, None], mul[:, None, :, None], mul[:, None, None, :]]
    w = _first(lhs != rhs)
    if w is not None:
        return "T1", w
    # T2: [s,s',s'']t = [st,s't,s''t], witness ordered (s,s',s'',t)
    lhs = mul[br[:, :, :, None], i[None, None, None, :]]
    rhs = br[mul[:, None, None, :], mul[None, :, None, :], mul[None, None, :, :]]
    w = _first(lhs != rhs)
    if w is not None:
        return "T2", w
    return None


def validate_truss(heap: FiniteHeap, mul, unit: int | None = None) -> FiniteTruss:
    """Exhaustively check associativity, both distributive laws and the unit."""
    mul = np.asarray(mul, dtype=np.intp)
    n = heap.size
    if n == 0:
        if unit is not None:
            raise ElementNotInCarrier(unit)
        return FiniteTruss(heap, _frozen(np.zeros((0, 0))), None)
    _check_total(mul, n, 2, "mul")
    bad = _mul_witnesses(heap.bracket, mul)
    if bad is not None:
        raise AxiomViolation(*bad)
    if unit is not None:
        if not 0 <= unit < n:
            raise ElementNotInCarrier(unit)
        i = np.arange(n)
        w = _first((mul[:, unit] != i) | (mul[unit, :] != i))
        if w is not None:
            raise AxiomViolation("unit", (unit, w[0]))
    return FiniteTruss(heap, _frozen(mul), unit)


def find_unit(heap: FiniteHeap, mul) -> int | None:
    mul = np.asarray(mul)
    i = np.arange(heap.size)
    for u in range(heap.size):
        if np.array_equal(mul[:, u], i) and np.array_equal(mul[u, :], i):
            return u
    return None


def validate_ring(group: FiniteGroup, mul, unit: int | None = None) -> FiniteRing:
    mul = np.asarray(mul, dtype=np.intp)
    n = group.size
    _check_total(mul, n, 2, "mul")
    i = np.arange(n)
    add = group.add
    w = _first(mul[mul[:, :, None], i[None, None, :]] != mul[i[:, None, None], mul[None, :, :]])
    if w is not None:
        raise AxiomViolation("associativity", w)
    w = _first(mul[i[:, None, None], add[None, :, :]] != add[mul[:, :, None], mul[:, None, :]])
    if w is not None:
        raise AxiomViolation("left distributivity", w)
    w = _first(mul[add[:, :, None], i[None, None, :]] != add[mul[:, None, :], mul[None, :, :]])
    if w is not None:
        raise AxiomViolation("right distributivity", w)
    if unit is not None:
        w = _first((mul[:, unit] != i) | (mul[unit, :] != i))
        if w is not None:
            raise AxiomViolation("unit", (unit, w[0]))
    return FiniteRing(group, _frozen(mul), unit)


def ring_Zn(n: int, unital: bool = True) -> FiniteRing:
    i = np.arange(n)
    return validate_ring(cyclic_group(n), (i[:, None] * i[None, :]) % n, (1 % n) if unital else None)


def zero_mul_ring(G: FiniteGroup) -> FiniteRing:
    return validate_ring(G, np.full((G.size, G.size), G.zero), None)


def truss_from_ring(R: FiniteRing) -> FiniteTruss:
    """T(R): the heap of the additive group with the same multiplication."""
    return validate_truss(heap_from_group(R.group), R.mul, R.unit)


def subset_of_ring(R: FiniteRing, elements: Sequence[int], labels: Sequence[str] | None = None) -> FiniteTruss:
    """The sub-truss of T(R) on a subset closed under ``x - y + z`` and products.

    Raises ``NotClosed`` with the first escaping triple (in ring ids).
    """
    els = [int(e) for e in elements]
    pos = {e: k for k, e in enumerate(els)}
    G = R.group
    k = len(els)
    br = np.empty((k, k, k), dtype=np.intp)
    for a in range(k):
        for b in range(k):
            for c in range(k):
                v = int(G.add[G.add[els[a], G.neg[els[b]]], els[c]])
                if v not in pos:
                    raise NotClosed("bracket", (els[a], els[b], els[c]), f"value {R.labels[v]} escapes")
                br[a, b, c] = pos[v]
    mul = np.empty((k, k), dtype=np.intp)
    for a in range(k):
        for b in range(k):
            v = int(R.mul[els[a], els[b]])
            if v not in pos:
                raise NotClosed("mul", (els[a], els[b]), f"value {R.labels[v]} escapes")
            mul[a, b] = pos[v]
    labels = labels or [R.labels[e] for e in els]
    heap = validate_heap(br, labels)
    return validate_truss(heap, mul, find_unit(heap, mul))


def truss_morphism_witness(T: FiniteTruss, S: FiniteTruss, f) -> tuple[str, tuple] | None:
    f = np.asarray(f, dtype=np.intp)
    if T.is_empty:
        return None
    w = heap_morphism_witness(T.heap, S.heap, f)
    if w is not None:
        return "bracket", w
    w = _first(f[T.mul] != S.mul[f[:, None], f[None, :]])
    if w is not None:
        return "mul", w
    return None


def truss_morphism(T: FiniteTruss, S: FiniteTruss, f, unital: bool = False) -> HeapMorphism:
    f = _check_map(T.size, S.size, f)
    bad = truss_morphism_witness(T, S, f)
    if bad is not None:
        raise NotATrussMorphism(bad[1], bad[0])
    if unital and T.unit is not None and S.unit is not None and f[T.unit] != S.unit:
        raise NotATrussMorphism((T.unit,), "unit not preserved")
    return HeapMorphism(T, S, _frozen(f), "truss")


def truss_morphisms(T: FiniteTruss, S: FiniteTruss) -> list[np.ndarray]:
    """All truss morphisms ``T -> S`` by backtracking over a generating set."""
    from .iso import enumerate_homs

    return enumerate_homs(
        T.size, S.size,
        [(T.heap.bracket, S.heap.bracket, False), (T.mul, S.mul, False)],
    )


def empty_truss() -> FiniteTruss:
    return validate_truss(validate_heap(np.zeros((0, 0, 0))), np.zeros((0, 0)))


def truss_retract(T: FiniteTruss, o: int) -> FiniteGroup:
    return retract(T.heap, o)
