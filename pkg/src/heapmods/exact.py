"""Exactness of sequences of heaps of T-modules: the ring-theoretic notion, its
transfer to R(T)-modules, short exactness, kernel pairs and Barr exactness."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InconsistentDecomposition, NotIsomorphic, SizeMismatch
from .hom import HeapOfModules, HomMorphism, hom_morphism, product_hom
from .iso import iso_search
from .limits import coequalizer, decompose, kernel_pair


@dataclass(frozen=True)
class ExactReport:
    """``witnesses`` are all ``e ∈ g(N)`` with ``f(M) = g⁻¹(e)``, in increasing order."""

    exact: bool
    witnesses: tuple
    note: str = ""

    @property
    def witness(self) -> int | None:
        return self.witnesses[0] if self.witnesses else None


def check_exact_at(f: HomMorphism, g: HomMorphism) -> ExactReport:
    """Exactness in the middle term, with every witness."""
    if g.cod.size == 0:
        return ExactReport(False, (), "EmptyCodomain")
    img = set(np.asarray(f.map).tolist())
    gm = np.asarray(g.map)
    wit = tuple(int(e) for e in np.unique(gm) if set(np.flatnonzero(gm == e).tolist()) == img)
    return ExactReport(bool(wit), wit)


def is_short_exact(f: HomMorphism, g: HomMorphism) -> bool:
    return check_exact_at(f, g).exact and f.is_injective and g.is_surjective


@dataclass
class TransferReport:
    """Both sides of the comparison with R(T)-module exactness at chosen basepoints."""

    basepoints: tuple
    heap_exact: bool
    module_exact: bool
    route_ok: bool | None = None
    details: dict = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        return self.heap_exact == self.module_exact


def module_exact(f: HomMorphism, g: HomMorphism, oM: int, oN: int, oP: int) -> bool:
    """``Im(α) = ker(β)`` for the pointed parts of ``f`` and ``g`` at the given basepoints."""
    alpha, _ = decompose(f, oM, oN)
    beta, _ = decompose(g, oN, oP)
    return set(np.asarray(alpha).tolist()) == set(np.flatnonzero(np.asarray(beta) == oP).tolist())


def exactness_transfer(f: HomMorphism, g: HomMorphism, oM: int, oN: int, oP: int) -> TransferReport:
    """Heap exactness of ``(f, g)`` against exactness of ``α, β`` with ``f = α + h``, ``g = β + k``.

    Also checks the basepoint route: when the heap sequence is exact at ``e``,
    choosing ``o_P = e``, ``o_N ∈ g⁻¹(e)`` and ``o_M ∈ f⁻¹(o_N)`` makes ``f`` and
    ``g`` themselves an exact sequence of pointed maps.
    """
    if f.dom.size == 0 or g.cod.size == 0:
        raise InconsistentDecomposition("basepoints need non-empty objects")
    hx = check_exact_at(f, g)
    mx = module_exact(f, g, oM, oN, oP)
    rep = TransferReport((oM, oN, oP), hx.exact, mx)
    if hx.exact:
        e = hx.witness
        oN2 = int(np.flatnonzero(np.asarray(g.map) == e)[0])
        oM2 = int(np.flatnonzero(np.asarray(f.map) == oN2)[0])
        alpha, _ = decompose(f, oM2, oN2)
        beta, _ = decompose(g, oN2, e)
        route = (np.array_equal(alpha, f.map) and np.array_equal(beta, g.map)
                 and module_exact(f, g, oM2, oN2, e))
        rep.route_ok = bool(route)
        rep.details["route basepoints"] = (oM2, oN2, e)
    return rep


def perturb(f: HomMorphism, n: int, oN: int) -> HomMorphism:
    """``f + n`` in ``G(N;o_N)``, i.e. ``x ↦ [f(x), o_N, n]``."""
    N = f.cod
    return hom_morphism(f.dom, N, N.heap.bracket[f.map, oN, n])


def perturbation_failures(f: HomMorphism, g: HomMorphism, oN: int, oP: int) -> list[tuple[int, int]]:
    """Pairs ``(n, p)`` for which ``(f + n, g + p)`` is not exact (expected empty when ``(f, g)`` is)."""
    bad = []
    for n in range(f.cod.size):
        fn = perturb(f, n, oN)
        for p in range(g.cod.size):
            if not check_exact_at(fn, perturb(g, p, oP)).exact:
                bad.append((n, p))
    return bad


# ---------------------------------------------------------------------------
# Barr exactness


@dataclass(frozen=True, eq=False)
class Fork:
    """``f, g : M -> N`` and ``h : N -> P``."""

    f: HomMorphism
    g: HomMorphism
    h: HomMorphism
    name: str = "fork"

    @property
    def M(self) -> HeapOfModules:
        return self.f.dom

    @property
    def N(self) -> HeapOfModules:
        return self.f.cod

    @property
    def P(self) -> HeapOfModules:
        return self.h.cod


@dataclass
class BarrReport:
    kernel_pair: bool
    coequalizer: bool

    @property
    def exact(self) -> bool:
        return self.kernel_pair and self.coequalizer


def is_kernel_pair(fork: Fork) -> bool:
    """``(f, g)`` is isomorphic to the kernel pair of ``h`` by a map commuting with the projections."""
    kp = kernel_pair(fork.h)
    try:
        iso_search(fork.M, kp.obj, commute=[(fork.f.map, kp.legs[0]), (fork.g.map, kp.legs[1])])
        return True
    except (NotIsomorphic, SizeMismatch):
        return False


def is_coequalizer(fork: Fork) -> bool:
    """``h`` is the coequalizer of ``(f, g)``: an isomorphism ``coeq -> P`` carries the projection to ``h``."""
    if not np.array_equal(fork.h.map[fork.f.map], fork.h.map[fork.g.map]):
        return False
    c = coequalizer(fork.f, fork.g)
    fixed: dict[int, int] = {}
    for x, y in zip(np.asarray(c.legs[0]).tolist(), np.asarray(fork.h.map).tolist()):
        if fixed.setdefault(x, y) != y:
            return False
    try:
        iso_search(c.obj, fork.P, fixed=fixed)
        return True
    except (NotIsomorphic, SizeMismatch):
        return False


def is_barr_exact(fork: Fork) -> BarrReport:
    return BarrReport(is_kernel_pair(fork), is_coequalizer(fork))


@dataclass
class BarrEquivalence:
    """Both sides of the comparison for one ``o``."""

    o: int
    barr: bool
    sequence: bool
    exact_at_ho: bool
    fg_injective: bool
    ho_surjective: bool

    @property
    def agree(self) -> bool:
        return self.barr == self.sequence


def fork_sequence(fork: Fork, o: int) -> tuple[HomMorphism, HomMorphism]:
    """``(f, g) : M -> N x N`` and ``h_o(a, b) = h([a, b, o])``."""
    N = fork.N
    NN, (p, q) = product_hom(N, N)
    fg = fork.f.map * N.size + fork.g.map  # product ids are row-major
    ho = fork.h.map[N.heap.bracket[p, q, o]]
    return hom_morphism(fork.M, NN, fg), hom_morphism(NN, fork.P, ho)


def barr_equivalence(fork: Fork, o: int, barr: BarrReport | None = None) -> BarrEquivalence:
    barr = is_barr_exact(fork) if barr is None else barr
    fg, ho = fork_sequence(fork, o)
    ex = check_exact_at(fg, ho)
    at = int(fork.h.map[o]) in ex.witnesses
    seq = at and fg.is_injective and ho.is_surjective
    return BarrEquivalence(o, barr.exact, bool(seq), at, fg.is_injective, ho.is_surjective)


def barr_sweep(fork: Fork) -> list[BarrEquivalence]:
    """The comparison at every ``o ∈ N``."""
    barr = is_barr_exact(fork)
    return [barr_equivalence(fork, o, barr) for o in range(fork.N.size)]
