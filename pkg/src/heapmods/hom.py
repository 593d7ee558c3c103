"""Heaps of T-modules: validation, the pointed-module correspondence, the Δ form,
affine R(T)-modules and the isotropic extension to ``T_u``."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import (
    AxiomViolation,
    ConditionViolation,
    EmptyHeap,
    ElementNotInCarrier,
    NotAMorphism,
    NotIsotropic,
    TableNotTotal,
)
from .heap import (
    FiniteHeap,
    Morphism,
    _first,
    _frozen,
    heap_from_group,
    heap_morphism_witness,
    retract,
)
from .modules import PointedModule, TrussModule, module_axiom_witness, pointed_morphism, validate_pointed
from .symbolic import (
    Certificate,
    SymbolicTruss,
    _gcol,
    default_radius,
    finite_truss_as_symbolic,
    unital_truss_extension,
    universal_ring,
)
from .truss import FiniteTruss


@dataclass(frozen=True, eq=False)
class HeapOfModules:
    """``taction[t, m, n] = t ▷_m n``."""

    truss: FiniteTruss
    heap: FiniteHeap
    taction: np.ndarray

    @property
    def size(self) -> int:
        return self.heap.size

    def __len__(self) -> int:
        return self.size

    @property
    def is_empty(self) -> bool:
        return self.size == 0

    @property
    def is_isotropic(self) -> bool | None:
        """``1 ▷_m n = n``; None when the truss has no unit."""
        u = self.truss.unit
        if u is None:
            return None
        return bool((self.taction[u] == np.arange(self.size)[None, :]).all())

    def module_at(self, m: int) -> TrussModule:
        return TrussModule(self.truss, self.heap, _frozen(self.taction[:, m, :]))


def hom_axiom_witness(T: FiniteTruss, H: FiniteHeap, tact: np.ndarray) -> tuple[str, tuple] | None:
    """First failing axiom: HM1 (per basepoint, as ``M1@m`` etc.) then HM2 ``(t, m, n, e)``."""
    n = H.size
    if n == 0 or T.size == 0:
        return None
    for m in range(n):
        bad = module_axiom_witness(T, H, tact[:, m, :])
        if bad is not None:
            return f"HM1 ({bad[0]} at m={m})", (m,) + bad[1]
    # HM2: t ▷_m n = [t ▷_e n, t ▷_e m, m], array indexed (t, m, n, e)
    i = np.arange(n)
    A = tact.transpose(0, 2, 1)  # A[t, n, e] = t ▷_e n
    rhs = H.bracket[A[:, None, :, :], A[:, :, None, :], i[None, :, None, None]]
    w = _first(tact[:, :, :, None] != rhs)
    if w is not None:
        return "HM2", w
    return None


def validate_hom(T: FiniteTruss, H: FiniteHeap, taction) -> HeapOfModules:
    """Exhaustive HM1 and HM2 check."""
    n = H.size
    tact = np.asarray(taction, dtype=np.intp)
    if T.size * n == 0:
        tact = np.zeros((T.size, n, n), dtype=np.intp)
    if tact.shape != (T.size, n, n):
        raise TableNotTotal("taction", f"expected shape {(T.size, n, n)}, got {tact.shape}")
    if tact.size and (tact.min() < 0 or tact.max() >= n):
        raise TableNotTotal("taction", "entry outside the carrier")
    bad = hom_axiom_witness(T, H, tact)
    if bad is not None:
        raise AxiomViolation(*bad)
    return HeapOfModules(T, H, _frozen(tact))


def hom_from_module(M: TrussModule) -> HeapOfModules:
    """``t ▷_m n = [t·n, t·m, m]``."""
    act = M.action
    n = M.size
    tact = M.heap.bracket[act[:, None, :], act[:, :, None], np.arange(n)[None, :, None]]
    return validate_hom(M.truss, M.heap, tact)


def functor_H(P: PointedModule) -> HeapOfModules:
    """``t ▷_x y = t·y - t·x + x`` on the heap of the group."""
    G, act = P.group, P.action
    n = G.size
    diff = G.add[act[:, None, :], G.neg[act][:, :, None]]  # (t, x, y) -> t·y - t·x
    tact = G.add[diff, np.arange(n)[None, :, None]]
    return validate_hom(P.truss, heap_from_group(G), tact)


def functor_G(M: HeapOfModules, e: int) -> PointedModule:
    """``(G(M;e), ▷_e)``."""
    if M.is_empty:
        raise EmptyHeap("cannot retract the empty heap of modules")
    if not 0 <= e < M.size:
        raise ElementNotInCarrier(e)
    return validate_pointed(M.truss, retract(M.heap, e), M.taction[:, e, :])


@dataclass(frozen=True, eq=False)
class HomMorphism(Morphism):
    kind: str = "hom"


def hom_morphism_witness(M: HeapOfModules, N: HeapOfModules, f) -> tuple | None:
    f = np.asarray(f, dtype=np.intp)
    if M.is_empty:
        return None
    w = heap_morphism_witness(M.heap, N.heap, f)
    if w is not None:
        return ("bracket",) + w
    if M.truss.size:
        w = _first(f[M.taction] != N.taction[:, f[:, None], f[None, :]])
        if w is not None:
            return ("action",) + w
    return None


def hom_morphism(M: HeapOfModules, N: HeapOfModules, f) -> HomMorphism:
    f = np.asarray(f, dtype=np.intp).reshape(-1)
    if len(f) != M.size or (len(f) and (f.min() < 0 or f.max() >= N.size)):
        raise TableNotTotal("morphism", "map is not total into the codomain")
    w = hom_morphism_witness(M, N, f)
    if w is not None:
        raise NotAMorphism(w[1:], "heap of modules", w[0])
    return HomMorphism(M, N, _frozen(f))


def is_hom_morphism(M: HeapOfModules, N: HeapOfModules, f) -> bool:
    return hom_morphism_witness(M, N, f) is None


def hom_morphisms(M: HeapOfModules, N: HeapOfModules, limit: int | None = None) -> list[np.ndarray]:
    """Every morphism of heaps of modules ``M -> N``."""
    from .iso import enumerate_homs

    ops = [(M.heap.bracket, N.heap.bracket, False)]
    if M.truss.size and M.size:
        ops.append((M.taction, N.taction, True))
    return enumerate_homs(M.size, N.size, ops, limit=limit)


def transport_G(phi: HomMorphism, e: int, f: int) -> Morphism:
    """``τ_{φ(e)}^f ∘ φ : G(M;e) -> G(N;f)``, checked to be a pointed morphism."""
    N = phi.cod
    m = N.heap.bracket[phi.map, phi.map[e], f]
    return pointed_morphism(functor_G(phi.dom, e), functor_G(N, f), m)


def translation_hom(M: HeapOfModules, e: int, f: int) -> HomMorphism:
    return hom_morphism(M, M, M.heap.bracket[:, e, f])


# ---------------------------------------------------------------------------
# the Δ form


@dataclass
class DeltaReport:
    """Outcome of the Δ-form checks; ``failures`` maps a condition to its witness."""

    failures: dict = field(default_factory=dict)

    @property
    def truss_maps_ok(self) -> bool:
        return not any(k.startswith("truss map") for k in self.failures)

    @property
    def ab_ok(self) -> bool:
        return "a" not in self.failures and "b" not in self.failures

    @property
    def ok(self) -> bool:
        return not self.failures


def delta_form(M: HeapOfModules) -> np.ndarray:
    """``Δ[m, t]`` is the endomorphism ``n ↦ t ▷_m n`` (an array indexed ``[m, t, n]``)."""
    return M.taction.transpose(1, 0, 2).copy()


def check_delta_conditions(T: FiniteTruss, H: FiniteHeap, taction) -> DeltaReport:
    """Each Δ(m) a truss map into E(M), Δ a heap map, and conditions (a), (b)."""
    tact = np.asarray(taction, dtype=np.intp)
    rep = DeltaReport()
    n = H.size
    if n == 0 or T.size == 0:
        return rep
    for m in range(n):
        bad = module_axiom_witness(T, H, tact[:, m, :])
        if bad is not None:
            rep.failures.setdefault(f"truss map Δ({m})", (bad[0],) + bad[1])
    # Δ preserves brackets of basepoints: Δ([m,m',m''])(t) = [Δ(m)(t), Δ(m')(t), Δ(m'')(t)] pointwise
    D = tact.transpose(1, 0, 2)  # [m, t, n]
    lhs = D[H.bracket]  # (m,m',m'',t,n)
    rhs = H.bracket[D[:, None, None], D[None, :, None], D[None, None, :]]
    w = _first(lhs != rhs)
    if w is not None:
        rep.failures["heap map"] = w
    i = np.arange(n)
    # (a) t ▷_e e = e
    diag = tact[:, i, i]  # (t, e)
    w = _first(diag != i[None, :])
    if w is not None:
        rep.failures["a"] = w
    # (b) [t ▷_e [n,f,e], e, f] = t ▷_f n, indexed (t, e, f, n)
    inner = H.bracket.transpose(1, 2, 0)  # inner[f, e, n] = [n, f, e]
    moved = tact[:, i[:, None, None], inner.transpose(1, 0, 2)]  # (t, e, f, n): t ▷_e [n,f,e]
    lhs = H.bracket[moved, i[None, :, None, None], i[None, None, :, None]]
    rhs = tact[:, None, :, :]
    w = _first(lhs != np.broadcast_to(rhs, lhs.shape))
    if w is not None:
        rep.failures["b"] = w
    return rep


def delta_conditions_or_raise(M: HeapOfModules) -> DeltaReport:
    rep = check_delta_conditions(M.truss, M.heap, M.taction)
    for k in ("a", "b"):
        if k in rep.failures:
            raise ConditionViolation(k, rep.failures[k])
    return rep


# ---------------------------------------------------------------------------
# heaps of modules over symbolic trusses (T(R(T)) and T_u)


@dataclass(frozen=True, eq=False)
class SymbolicActionHom:
    """A finite heap with an action of a symbolic truss given by a formula."""

    name: str
    truss: SymbolicTruss
    heap: FiniteHeap
    tactfn: Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]  # (T rows, m, n) -> ids
    base: HeapOfModules | None = None

    @property
    def size(self) -> int:
        return self.heap.size

    def act(self, R, m, n):
        R = self.truss.group.arr(R)
        N = max(len(R), np.size(m), np.size(n))
        R = np.repeat(R, N, axis=0) if len(R) == 1 and N > 1 else R
        m = np.broadcast_to(np.asarray(m, dtype=np.intp), (N,))
        n = np.broadcast_to(np.asarray(n, dtype=np.intp), (N,))
        return self.tactfn(R, m, n)

    def table(self, R: np.ndarray) -> np.ndarray:
        """``out[k, m, n] = R[k] ▷_m n``."""
        n = self.size
        k = len(R)
        mm, nn = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
        Rr = np.repeat(R, n * n, axis=0)
        return self.tactfn(Rr, np.tile(mm.ravel(), k), np.tile(nn.ravel(), k)).reshape(k, n, n)


def certify_symbolic_hom(N: SymbolicActionHom, radius: int | None = None) -> Certificate:
    """HM1 and HM2 for an action of a symbolic truss, on the window."""
    S = N.truss
    H = N.heap
    n = H.size
    r = radius or default_radius(S.group.exponent)
    cert = Certificate(N.name, r)
    W = S.elements(r)
    if n == 0:
        cert.add("empty heap", True)
        return cert
    tab = N.table(W)  # (k, m, n)
    i = np.arange(n)
    # M3 at every basepoint: r ▷_m [a,b,c] = [r ▷_m a, r ▷_m b, r ▷_m c]
    bad = None
    for k in range(len(W)):
        A = tab[k]
        lhs = A[:, H.bracket]
        rhs = H.bracket[A[:, :, None, None], A[:, None, :, None], A[:, None, None, :]]
        w = _first(lhs != rhs)
        if w is not None:
            bad = (tuple(W[k]),) + w
            break
    cert.add("M3", bad is None, bad)
    # M2: r ↦ r ▷_m n is a heap map, i.e. (x+g) acts as x - o + g
    G = S.group
    gens = G.generators()
    O = G.O
    tg = N.table(gens)
    to = N.table(O)[0]
    bad = None
    for k in range(len(W)):
        X = np.broadcast_to(W[k:k + 1], gens.shape)
        lhs = N.table(G.add(X, gens))
        rhs = H.bracket[np.broadcast_to(tab[k], tg.shape), np.broadcast_to(to, tg.shape), tg]
        w = _first(lhs != rhs)
        if w is not None:
            bad = (tuple(W[k]),) + w
            break
    cert.add("M2", bad is None, bad)
    # M1: (rs) ▷_m n = r ▷_m (s ▷_m n)
    bad = None
    for k in range(len(W)):
        X = np.broadcast_to(W[k:k + 1], W.shape)
        lhs = N.table(S.mul(X, W))  # (s, m, n)
        rhs = tab[k][i[None, :, None], tab]  # r ▷_m (s ▷_m n)
        w = _first(lhs != rhs)
        if w is not None:
            bad = (tuple(W[k]),) + w
            break
    cert.add("M1", bad is None, bad)
    # HM2: r ▷_m n = [r ▷_e n, r ▷_e m, m]
    A = tab.transpose(0, 2, 1)  # [k, n, e]
    rhs = H.bracket[A[:, None, :, :], A[:, :, None, :], i[None, :, None, None]]
    w = _first(tab[:, :, :, None] != rhs)
    cert.add("HM2", w is None, w)
    return cert


# affine R(T)-modules

def to_affine(M: HeapOfModules, o: int | None = None, e: int | None = None) -> SymbolicActionHom:
    """Extend the action to ``T(R(T))``: ``(t,k) ▷_m n = t ▷_m n + (k-1)(o ▷_e (n - m))`` in ``G(M;e)``."""
    T = M.truss
    R, _ = universal_ring(T, o)
    S = R.as_truss()
    H = M.heap
    if T.is_empty:
        # R(∅) = 0 acts through its only element, the zero, which returns the basepoint
        return SymbolicActionHom(f"affine({R.name})", S, H, lambda X, m, n: np.asarray(m, dtype=np.intp), M)
    ob = R.meta["basepoint"][0]
    e0 = (H.basepoint if e is None else e) if H.size else 0
    tact = M.taction
    Ge = retract(H, e0) if H.size else None

    def fn(X, m, n):
        t = _gcol(X)
        k = X[:, 1]
        d = Ge.add[n, Ge.neg[m]]
        return Ge.add[tact[t, m, n], Ge.scale(k - 1, tact[ob, e0, d])]

    return SymbolicActionHom(f"affine({R.name})", S, H, fn, M)


def affine_via_pointed(M: HeapOfModules, o: int | None = None, e: int | None = None) -> SymbolicActionHom:
    """Same extension through the pointed route: ``(t,k)·x = t ▷_e x + (k-1)(o ▷_e x)``, then
    ``(t,k) ▷_m n = (t,k)·n - (t,k)·m + m``."""
    T = M.truss
    R, _ = universal_ring(T, o)
    H = M.heap
    ob = R.meta["basepoint"][0]
    e0 = H.basepoint if e is None else e
    Ge = retract(H, e0)
    tact = M.taction

    def dot(X, x):
        t = _gcol(X)
        return Ge.add[tact[t, e0, x], Ge.scale(X[:, 1] - 1, tact[ob, e0, x])]

    def fn(X, m, n):
        return Ge.add[Ge.add[dot(X, n), Ge.neg[dot(X, m)]], m]

    return SymbolicActionHom(f"affine-pointed({R.name})", R.as_truss(), H, fn, M)


def affine_condition(N: SymbolicActionHom) -> tuple | None:
    """The ring zero acts by returning the basepoint: ``0 ▷_m n = m``; returns a witness or None."""
    n = N.size
    if n == 0:
        return None
    tab = N.table(N.truss.group.O)[0]
    return _first(tab != np.arange(n)[:, None])


def from_affine(N: SymbolicActionHom) -> HeapOfModules:
    """Restrict along ``ι``: ``t ▷_m n = (t,1) ▷_m n``."""
    M = N.base
    T = M.truss
    if T.is_empty:
        return validate_hom(T, N.heap, np.zeros((0, N.size, N.size)))
    X = np.stack([np.arange(T.size), np.ones(T.size, dtype=np.int64)], axis=1)
    return validate_hom(T, N.heap, N.table(X))


def affine_tables_equal(A: SymbolicActionHom, B: SymbolicActionHom, radius: int | None = None) -> bool:
    W = A.truss.elements(radius)
    return bool(np.array_equal(A.table(W), B.table(W)))


# the isotropic correspondence over T_u

def isotropic_extension(M: HeapOfModules, o: int | None = None) -> SymbolicActionHom:
    """``(x,j) ▷_m n = x ▷_m n - o ▷_m n + n + j(o ▷_m n - n)`` in ``G(M;m)``; the unit acts trivially."""
    T = M.truss
    U, _ = unital_truss_extension(T, o)
    H = M.heap
    if T.is_empty:
        return SymbolicActionHom(f"Phi({U.name})", U, H, lambda X, m, n: np.asarray(n, dtype=np.intp), M)
    S = finite_truss_as_symbolic(T, o)
    ob = int(S.group.origin[0])
    tact = M.taction
    br = H.bracket

    def fn(X, m, n):
        x = _gcol(X)
        j = X[:, 1]
        on = tact[ob, m, n]
        # in G(M;m): a + b = [a,m,b], a - b = [a,b,m]
        base = br[br[tact[x, m, n], on, m], m, n]
        d = br[on, n, m]
        return br[base, m, _scale_at(H, m, j, d)]

    return SymbolicActionHom(f"Phi({U.name})", U, H, fn, M)


def _scale_at(H: FiniteHeap, m: np.ndarray, j: np.ndarray, d: np.ndarray) -> np.ndarray:
    """``j·d`` in ``G(H;m)``, vectorized over all three arguments."""
    out = np.empty(len(m), dtype=np.intp)
    for base in np.unique(m):
        sel = m == base
        out[sel] = retract(H, int(base)).scale(np.asarray(j)[sel], d[sel])
    return out


def xi(N: SymbolicActionHom) -> HeapOfModules:
    """Restrict a heap of ``T_u``-modules along ``ȷ``; the unit must act as the identity."""
    U = N.truss
    n = N.size
    if n:
        tab = N.table(np.array([U.unit], dtype=np.int64))[0]
        w = _first(tab != np.arange(n)[None, :])
        if w is not None:
            raise NotIsotropic(w)
    M = N.base
    T = M.truss
    if T.is_empty:
        return validate_hom(T, N.heap, np.zeros((0, n, n)))
    X = np.stack([np.arange(T.size), np.ones(T.size, dtype=np.int64)], axis=1)
    return validate_hom(T, N.heap, N.table(X))


def require_isotropic(M: HeapOfModules) -> HeapOfModules:
    """Reject a heap of modules over a unital truss on which ``1`` does not act trivially."""
    u = M.truss.unit
    if u is None:
        raise ValueError("truss is not unital")
    w = _first(M.taction[u] != np.arange(M.size)[None, :])
    if w is not None:
        raise NotIsotropic(w)
    return M


def as_symbolic_hom(M: HeapOfModules) -> SymbolicActionHom:
    """View a finite-truss heap of modules through the symbolic interface."""
    S = finite_truss_as_symbolic(M.truss)
    tact = M.taction
    return SymbolicActionHom("M", S, M.heap, lambda X, m, n: tact[_gcol(X), m, n], M)


# ---------------------------------------------------------------------------
# structural invariants


def induced_at_consistency(M: HeapOfModules) -> tuple | None:
    """``▷_f`` equals the f-induced action of ``(M, ▷_e)`` for all ``e, f``; returns a witness."""
    br = M.heap.bracket
    for e in range(M.size):
        act = M.taction[:, e, :]
        for f in range(M.size):
            ind = br[act, act[:, f][:, None], f]
            w = _first(ind != M.taction[:, f, :])
            if w is not None:
                return (e, f) + w
    return None


def product_hom(*Ms: HeapOfModules) -> tuple[HeapOfModules, list[np.ndarray]]:
    """Componentwise product with coordinate table; elements in row-major order."""
    from itertools import product as iproduct

    T = Ms[0].truss
    sizes = [M.size for M in Ms]
    coords = np.array(list(iproduct(*[range(s) for s in sizes])), dtype=np.intp).reshape(-1, len(Ms))
    N = len(coords)
    strides = np.array([int(np.prod(sizes[i + 1:])) for i in range(len(Ms))], dtype=np.intp)

    def enc(parts):
        return sum(p * s for p, s in zip(parts, strides)) if len(Ms) else np.zeros_like(parts[0])

    br = enc([M.heap.bracket[coords[:, None, None, i], coords[None, :, None, i], coords[None, None, :, i]]
              for i, M in enumerate(Ms)])
    tact = enc([M.taction[:, coords[:, None, i], coords[None, :, i]] for i, M in enumerate(Ms)]) if T.size else \
        np.zeros((0, N, N), dtype=np.intp)
    labels = ["(" + ",".join(M.heap.labels[c] for M, c in zip(Ms, row)) + ")" for row in coords]
    from .heap import validate_heap

    H = validate_heap(br if N else np.zeros((0, 0, 0)), labels)
    P = validate_hom(T, H, tact)
    projs = [coords[:, i].copy() for i in range(len(Ms))]
    return P, projs


def bracket_is_morphism(M: HeapOfModules) -> bool:
    """The bracket ``M x M x M -> M`` is a morphism for the componentwise structure."""
    P, projs = product_hom(M, M, M)
    f = M.heap.bracket[projs[0], projs[1], projs[2]]
    return is_hom_morphism(P, M, f)
