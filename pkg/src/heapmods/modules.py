"""Modules and pointed modules over trusses, R(T)-modules and free pointed modules."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import AxiomViolation, ElementNotInCarrier, NotAMorphism, NotInduced, TableNotTotal
from .heap import (
    FiniteGroup,
    FiniteHeap,
    Morphism,
    _first,
    _frozen,
    heap_morphism_witness,
    is_group_hom,
    product_group,
    quotient_by_partition,
    sub_heap_congruence,
    subheap_witness,
    trivial_group,
)
from .symbolic import (
    Certificate,
    SymbolicGroup,
    SymbolicMap,
    SymbolicRing,
    SymbolicTruss,
    _find_bad,
    _gcol,
    _grid,
    arithmetic_truss,
    arithmetic_value,
    as_symbolic_truss,
    certify_additive,
    default_radius,
    universal_ring,
)
from .truss import FiniteTruss


def _check_action(action, nT: int, nM: int, name="action") -> np.ndarray:
    action = np.asarray(action, dtype=np.intp).reshape(nT, nM) if nT * nM else np.zeros((nT, nM), dtype=np.intp)
    if action.size and (action.min() < 0 or action.max() >= nM):
        raise TableNotTotal(name, f"entry {_first((action < 0) | (action >= nM))} outside the carrier")
    return action


# ---------------------------------------------------------------------------
# T-modules


@dataclass(frozen=True, eq=False)
class TrussModule:
    truss: FiniteTruss
    heap: FiniteHeap
    action: np.ndarray  # (|T|, |M|)

    @property
    def size(self) -> int:
        return self.heap.size

    def __len__(self) -> int:
        return self.size

    @property
    def absorbers(self) -> list[int]:
        """Elements fixed by every ``t``."""
        if self.truss.size == 0:
            return list(range(self.size))
        return [int(e) for e in np.flatnonzero((self.action == np.arange(self.size)[None, :]).all(axis=0))]

    @property
    def is_unital(self) -> bool:
        u = self.truss.unit
        return u is None or bool(np.array_equal(self.action[u], np.arange(self.size)))


def module_axiom_witness(T: FiniteTruss, H: FiniteHeap, act: np.ndarray) -> tuple[str, tuple] | None:
    nT, n = T.size, H.size
    if nT == 0 or n == 0:
        return None
    m = np.arange(n)
    # M1: t·(t'·m) = (tt')·m
    w = _first(act[:, act] != act[T.mul][:, :, m])
    if w is not None:
        return "M1", w
    # M2: [t,t',t'']·m = [t·m, t'·m, t''·m]
    lhs = act[T.heap.bracket]  # (t,t',t'',m)
    rhs = H.bracket[act[:, None, None, :], act[None, :, None, :], act[None, None, :, :]]
    w = _first(lhs != rhs)
    if w is not None:
        return "M2", w
    # M3: t·[m,n,e] = [t·m, t·n, t·e]
    lhs = act[:, H.bracket]
    rhs = H.bracket[act[:, :, None, None], act[:, None, :, None], act[:, None, None, :]]
    w = _first(lhs != rhs)
    if w is not None:
        return "M3", w
    return None


def validate_module(T: FiniteTruss, H: FiniteHeap, action) -> TrussModule:
    """Exhaustive check of M1, M2, M3."""
    act = _check_action(action, T.size, H.size)
    bad = module_axiom_witness(T, H, act)
    if bad is not None:
        raise AxiomViolation(*bad)
    return TrussModule(T, H, _frozen(act))


def induced_action(M: TrussModule, e: int) -> TrussModule:
    """``t ▷_e m = [t·m, t·e, e]``."""
    if not 0 <= e < M.size:
        raise ElementNotInCarrier(e)
    act = M.heap.bracket[M.action, M.action[:, e][:, None], e]
    out = validate_module(M.truss, M.heap, act)
    assert all(out.action[t, e] == e for t in range(M.truss.size))
    return out


def induced_witness(M: TrussModule, N: Iterable[int]) -> tuple | None:
    """First ``(t, n, e)`` with ``t ▷_e n`` outside ``N``, or a sub-heap failure."""
    N = sorted(set(int(x) for x in N))
    w = subheap_witness(M.heap, N)
    if w is not None:
        return ("subheap",) + w
    inN = np.zeros(M.size, dtype=bool)
    inN[N] = True
    Na = np.array(N, dtype=np.intp)
    act = M.action
    # t ▷_e n = [t·n, t·e, e] indexed (t, n, e)
    vals = M.heap.bracket[act[:, Na][:, :, None], act[:, Na][:, None, :], Na[None, None, :]]
    w = _first(~inN[vals])
    if w is None:
        return None
    t, i, j = w
    return (t, int(Na[i]), int(Na[j]))


def is_induced_submodule(M: TrussModule, N: Iterable[int]) -> bool:
    return induced_witness(M, N) is None


def module_quotient(M: TrussModule, N: Iterable[int]) -> tuple[TrussModule, Morphism]:
    """Quotient by the sub-heap relation of an induced submodule ``N``."""
    N = sorted(set(int(x) for x in N))
    w = induced_witness(M, N)
    if w is not None:
        if w[0] == "subheap":
            from .errors import NotASubheap

            raise NotASubheap(w[1:])
        raise NotInduced(w)
    Q, proj = quotient_by_partition(M.heap, sub_heap_congruence(M.heap, N).class_of)
    p = proj.map
    k = Q.size
    reps = np.array([int(np.flatnonzero(p == c)[0]) for c in range(k)], dtype=np.intp)
    act = p[M.action[:, reps]]
    if not np.array_equal(p[M.action], act[:, p]):
        raise AxiomViolation("quotient action", (), "action not well defined on classes")
    QM = validate_module(M.truss, Q, act)
    return QM, module_morphism(M, QM, p)


def module_morphism(M: TrussModule, N: TrussModule, f) -> Morphism:
    f = np.asarray(f, dtype=np.intp)
    w = heap_morphism_witness(M.heap, N.heap, f)
    if w is not None:
        raise NotAMorphism(w, "module")
    if M.truss.size and M.size:
        w = _first(f[M.action] != N.action[:, f])
        if w is not None:
            raise NotAMorphism(w, "module", "action not preserved")
    return Morphism(M, N, _frozen(f), "module")


# ---------------------------------------------------------------------------
# pointed modules


@dataclass(frozen=True, eq=False)
class PointedModule:
    """An abelian group with a T-action satisfying the pointed-module laws."""

    truss: FiniteTruss
    group: FiniteGroup
    action: np.ndarray  # (|T|, |G|)

    @property
    def size(self) -> int:
        return self.group.size

    def __len__(self) -> int:
        return self.size

    def act(self, t, g):
        return self.action[t, g]


def pointed_axiom_witness(T: FiniteTruss, G: FiniteGroup, act: np.ndarray) -> tuple[str, tuple] | None:
    nT, n = T.size, G.size
    if nT == 0:
        return None
    g = np.arange(n)
    # t·(g+h) = t·g + t·h, witness (t,g,h)
    w = _first(act[:, G.add] != G.add[act[:, :, None], act[:, None, :]])
    if w is not None:
        return "additivity", w
    # [t,t',t'']·g = t·g - t'·g + t''·g, witness (t,t',t'',g)
    lhs = act[T.heap.bracket]
    rhs = G.add[G.add[act[:, None, None, :], G.neg[act][None, :, None, :]], act[None, None, :, :]]
    w = _first(lhs != rhs)
    if w is not None:
        return "bracket law", w
    w = _first(act[:, act] != act[T.mul][:, :, g])
    if w is not None:
        return "multiplicativity", w
    return None


def validate_pointed(T: FiniteTruss, G: FiniteGroup, action) -> PointedModule:
    act = _check_action(action, T.size, G.size)
    bad = pointed_axiom_witness(T, G, act)
    if bad is not None:
        raise AxiomViolation(*bad)
    return PointedModule(T, G, _frozen(act))


def action_truss_map_witness(P: PointedModule) -> tuple | None:
    """Check that ``t ↦ (g ↦ t·g)`` is a truss map into the endomorphism truss of the group.

    The endomorphism truss carries the pointwise bracket and composition.
    """
    T, G, act = P.truss, P.group, P.action
    for t in range(T.size):
        if is_group_hom(G, G, act[t]) is not None:
            return ("endomorphism", t)
    lhs = act[T.heap.bracket]
    rhs = G.add[G.add[act[:, None, None, :], G.neg[act][None, :, None, :]], act[None, None, :, :]]
    w = _first(lhs != rhs)
    if w is not None:
        return ("bracket",) + w
    w = _first(act[T.mul] != act[:, act].transpose(0, 1, 2))
    if w is not None:
        return ("composition",) + w
    return None


def pointed_morphism(G: PointedModule, H: PointedModule, f) -> Morphism:
    f = np.asarray(f, dtype=np.intp)
    w = is_group_hom(G.group, H.group, f)
    if w is not None:
        raise NotAMorphism(w, "pointed module")
    if G.truss.size:
        w = _first(f[G.action] != H.action[:, f])
        if w is not None:
            raise NotAMorphism(w, "pointed module", "not T-linear")
    return Morphism(G, H, _frozen(f), "pointed")


def is_T_linear(G: PointedModule, H: PointedModule, f) -> bool:
    f = np.asarray(f, dtype=np.intp)
    return G.truss.size == 0 or bool(np.array_equal(f[G.action], H.action[:, f]))


def group_homs(G: FiniteGroup, H: FiniteGroup) -> list[np.ndarray]:
    from .iso import enumerate_homs

    return enumerate_homs(G.size, H.size, [(G.add, H.add, False)], {G.zero: H.zero})


def pointed_morphisms(G: PointedModule, H: PointedModule) -> list[np.ndarray]:
    from .iso import enumerate_homs

    ops = [(G.group.add, H.group.add, False)]
    if G.truss.size:
        ops.append((G.action, H.action, True))
    return enumerate_homs(G.size, H.size, ops, {G.group.zero: H.group.zero})


# ---------------------------------------------------------------------------
# R(T)-modules


@dataclass(frozen=True, eq=False)
class RingModule:
    """A module over a (symbolic) ring on a finite abelian group."""

    ring: SymbolicRing
    group: FiniteGroup
    actfn: Callable[[np.ndarray, np.ndarray], np.ndarray]  # (ring rows, group ids) -> ids

    def act(self, R, g):
        R = self.ring.group.arr(R)
        g = np.broadcast_to(np.asarray(g, dtype=np.intp), (len(R),))
        return self.actfn(R, g)


def certify_ring_module(M: RingModule, radius: int | None = None) -> Certificate:
    """Module axioms over a symbolic ring on the window.

    Additivity in the ring argument is checked against additive generators,
    which makes ``(r, g) ↦ r·g`` biadditive; compatibility with products is
    then checked on generators.
    """
    R, G = M.ring, M.group
    RG = R.group
    r = radius or default_radius(max(RG.exponent, G.exponent))
    cert = Certificate("R-module", r)
    W = RG.window(r)
    gens = RG.generators()
    g_all = np.arange(G.size, dtype=np.int64).reshape(-1, 1)
    bad = None
    for X, S, g in _grid(W, gens, g_all):
        gi = g[:, 0].astype(np.intp)
        lhs = M.actfn(RG.add(X, S), gi)
        rhs = G.add[M.actfn(X, gi), M.actfn(S, gi)]
        bad = bad or _find_bad(lhs == rhs, X, S, g)
    cert.add("(r+s)·g = r·g + s·g", bad is None, bad)
    bad = None
    for X, g, h in _grid(W, g_all, g_all):
        gi, hi = g[:, 0].astype(np.intp), h[:, 0].astype(np.intp)
        lhs = M.actfn(X, G.add[gi, hi])
        rhs = G.add[M.actfn(X, gi), M.actfn(X, hi)]
        bad = bad or _find_bad(lhs == rhs, X, g, h)
    cert.add("r·(g+h) = r·g + r·h", bad is None, bad)
    bad = None
    for X, Y, g in _grid(gens, gens, g_all):
        gi = g[:, 0].astype(np.intp)
        lhs = M.actfn(R.mul(X, Y), gi)
        rhs = M.actfn(X, M.actfn(Y, gi))
        bad = bad or _find_bad(lhs == rhs, X, Y, g)
    cert.add("(rs)·g = r·(s·g)", bad is None, bad)
    return cert


def pointed_to_ring_module(P: PointedModule, o: int | None = None) -> RingModule:
    """``(t,n)·g = t·g + (n-1)(o·g)``."""
    T = P.truss
    R, _ = universal_ring(T, o)
    G = P.group
    if T.is_empty:
        return RingModule(R, G, lambda X, g: np.full(len(X), G.zero, dtype=np.intp))
    o = R.meta["basepoint"][0]
    act = P.action

    def actfn(X, g):
        t = _gcol(X)
        n = X[:, 1]
        return G.add[act[t, g], G.scale(n - 1, act[o, g])]

    return RingModule(R, G, actfn)


def ring_module_to_pointed(M: RingModule) -> PointedModule:
    """Restrict along ``ι``: ``t·g = (t,1)·g``."""
    S = M.ring.meta["truss"]
    T = S.finite
    G = M.group
    if T.is_empty:
        return validate_pointed(T, G, np.zeros((0, G.size)))
    nT, n = T.size, G.size
    tt, gg = np.meshgrid(np.arange(nT), np.arange(n), indexing="ij")
    X = np.stack([tt.ravel(), np.ones(nT * n, dtype=np.int64)], axis=1)
    act = M.actfn(X, gg.ravel()).reshape(nT, n)
    return validate_pointed(T, G, act)


def ring_linear(M: RingModule, N: RingModule, f, radius: int | None = None) -> bool:
    """Is the group map ``f`` R-linear? Checked on the window (the action is periodic in n)."""
    f = np.asarray(f, dtype=np.intp)
    W = M.ring.group.window(radius)
    for X, g in _grid(W, np.arange(M.group.size, dtype=np.int64).reshape(-1, 1)):
        gi = g[:, 0].astype(np.intp)
        if not np.array_equal(f[M.actfn(X, gi)], N.actfn(X, f[gi])):
            return False
    return True


# ---------------------------------------------------------------------------
# generated submodules


def generated_submodule(P: PointedModule, X: Iterable[int], e: int | None = None) -> list[int]:
    """Closed form: the sum over ``x ∈ X`` of ``{t·x + n(e·x) + m x}``."""

    G, T = P.group, P.truss
    X = [int(x) for x in X]
    if not X:
        return [G.zero]
    k = G.exponent
    parts = []
    for x in X:
        if T.is_empty:
            part = {int(G.scale(m, x)) for m in range(k)}
        else:
            e_ = T.default_basepoint if e is None else e
            ex = int(P.action[e_, x])
            part = set()
            for t in range(T.size):
                for n in range(k):
                    for m in range(k):
                        part.add(int(G.add[G.add[P.action[t, x], G.scale(n, ex)], G.scale(m, x)]))
        parts.append(part)
    acc = {G.zero}
    for part in parts:
        acc = {int(G.add[a, b]) for a in acc for b in part}
    return sorted(acc)


def submodule_closure(P: PointedModule, X: Iterable[int]) -> list[int]:
    """Oracle: close ``X ∪ {0}`` under ``+``, ``-`` and every ``t·``."""
    G, act = P.group, P.action
    cur = {G.zero} | {int(x) for x in X}
    while True:
        new = set(cur)
        for a in cur:
            new.add(int(G.neg[a]))
            for b in cur:
                new.add(int(G.add[a, b]))
            for t in range(P.truss.size):
                new.add(int(act[t, a]))
        if new == cur:
            return sorted(cur)
        cur = new


# ---------------------------------------------------------------------------
# symbolic pointed modules and free pointed modules


@dataclass(frozen=True, eq=False)
class SymbolicPointedModule:
    """A pointed module on ``gpart x Z^k`` with a closed-form action."""

    name: str
    truss: SymbolicTruss
    group: SymbolicGroup
    actfn: Callable[[np.ndarray, np.ndarray], np.ndarray]  # (T rows, M rows) -> M rows
    basis: np.ndarray | None = None
    descriptor: str = ""
    meta: dict = field(default_factory=dict)

    @property
    def width(self) -> int:
        return self.group.width

    def act(self, T, X):
        T, X = self.truss.group.arr(T), self.group.arr(X)
        if len(T) == 1 and len(X) != 1:
            T = np.repeat(T, len(X), axis=0)
        elif len(X) == 1 and len(T) != 1:
            X = np.repeat(X, len(T), axis=0)
        return self.actfn(T, X)

    def truss_elements(self, radius=None) -> np.ndarray:
        S = self.truss
        if S.empty:
            return np.zeros((0, S.width), dtype=np.int64)
        if S.finite is not None:
            return np.arange(S.finite.size, dtype=np.int64).reshape(-1, 1)
        return S.elements(radius)

    def fmt(self, x) -> str:
        return self.group.fmt(x)


def certify_symbolic_pointed(M: SymbolicPointedModule, radius: int | None = None) -> Certificate:
    """Pointed-module laws on the window: each ``t·`` additive, bracket law, multiplicativity."""
    G = M.group
    r = radius or default_radius(max(G.exponent, M.truss.group.exponent))
    cert = Certificate(M.name, r)
    Ts = M.truss_elements(r)
    if len(Ts) == 0:
        cert.add("no truss elements", True)
        return cert
    W = G.window(r)
    gens = G.generators()
    TG = M.truss.group
    bad = None
    for t, X, g in _grid(Ts, W, gens):
        bad = bad or _find_bad(G.eq(M.act(t, G.add(X, g)), G.add(M.act(t, X), M.act(t, g))), t, X, g)
    cert.add("t·(x+g) = t·x + t·g", bad is None, bad)
    bad = None
    Tg = Ts if M.truss.finite is not None else np.concatenate([TG.generators(), TG.O])
    for t, s, u, X in _grid(Ts, Tg, Tg, gens):
        lhs = M.act(TG.bracket(t, s, u), X)
        rhs = G.add(G.sub(M.act(t, X), M.act(s, X)), M.act(u, X))
        bad = bad or _find_bad(G.eq(lhs, rhs), t, s, u, X)
    cert.add("[t,t',t'']·x = t·x - t'·x + t''·x", bad is None, bad)
    bad = None
    for t, s, X in _grid(Ts, Ts, gens):
        bad = bad or _find_bad(G.eq(M.act(M.truss.mul(t, s), X), M.act(t, M.act(s, X))), t, s, X)
    cert.add("(ts)·x = t·(s·x)", bad is None, bad)
    return cert


def _free_single(T, o=None, unital: bool = False) -> tuple[SymbolicGroup, Callable, np.ndarray, str]:
    S = as_symbolic_truss(T, o if not unital else None)
    if S.empty:
        G = SymbolicGroup(trivial_group(), 1)
        return G, (lambda t, X: X), np.array([[0, 1]], dtype=np.int64), "Z"
    w = S.width
    TG = S.group
    if unital:
        if S.unit is None:
            raise ValueError("unital free module needs a unital truss")
        TG = TG.rebased(S.unit)
        G = TG.extended(1)

        def act(t, X):
            s, n = X[:, :w], X[:, w]
            g = TG.add(S.mul(t, s), TG.scale(n - 1, t))
            return np.concatenate([g, n.reshape(-1, 1)], axis=1)

        basis = np.array([tuple(S.unit) + (1,)], dtype=np.int64)
        return G, act, basis, "t·(s,n) = (ts + (n-1)t, n)"
    G = TG.extended(2)
    O = TG.O

    def act(t, X):
        s, n, p = X[:, :w], X[:, w], X[:, w + 1]
        g = TG.total(S.mul(t, s), TG.scale(n - 1, S.mul(t, np.broadcast_to(O, t.shape))), TG.scale(p, t))
        return np.concatenate([g, (n + p).reshape(-1, 1), np.zeros((len(X), 1), dtype=X.dtype)], axis=1)

    basis = np.array([tuple(O[0]) + (0, 1)], dtype=np.int64)
    return G, act, basis, "t·(s,n,p) = (ts + (n-1)to + pt, n+p, 0)"


def free_pointed_module(T, X: int | Sequence[str] = 1, o=None, unital: bool = False) -> SymbolicPointedModule:
    """Free pointed T-module on ``X`` generators (a direct sum of rank-one copies).

    Rank one: ``G(T;o) x Z x Z`` with basis ``(o,0,1)``; the unital variant is
    ``G(T;1) x Z`` with basis ``(1,1)``; for the empty truss it is ``Z``.
    """
    names = [f"x{i}" for i in range(X)] if isinstance(X, int) else list(X)
    k = len(names)
    S = as_symbolic_truss(T, o if not unital else None)
    G1, act1, b1, desc = _free_single(S, o, unital)
    if k == 1:
        return SymbolicPointedModule(f"F({names[0]})", S, G1, act1, b1, desc, {"names": names, "unital": unital})
    gp, coords = product_group(*([G1.gpart] * k))
    z1 = G1.zdim
    G = SymbolicGroup(gp, z1 * k, (int(_pid(coords, [G1.origin[0]] * k)),) + tuple(G1.origin[1:]) * k)
    split, join = _sum_codec(G1, k, gp, coords)

    def act(t, X):
        return join([act1(t, c) for c in split(X)])

    basis = []
    zero_parts = [np.array([G1.origin], dtype=np.int64)] * k
    for i in range(k):
        parts = list(zero_parts)
        parts[i] = b1
        basis.append(join(parts)[0])
    return SymbolicPointedModule(f"F({','.join(names)})", S, G, act, np.array(basis, dtype=np.int64),
                                 desc + " (componentwise)", {"names": names, "unital": unital, "split": split,
                                                             "join": join})


def _pid(coords: np.ndarray, comp: Sequence[int]) -> int:
    return int(np.flatnonzero((coords == np.asarray(comp)).all(axis=1))[0])


def _sum_codec(G1: SymbolicGroup, k: int, gp: FiniteGroup, coords: np.ndarray):
    """Split/join rows of a k-fold direct sum of ``G1``."""
    z1 = G1.zdim
    sizes = [G1.gpart.size] * k
    strides = np.array([int(np.prod(sizes[i + 1:])) for i in range(k)], dtype=np.int64)

    def split(X):
        g = _gcol(X)
        out = []
        for i in range(k):
            z = X[:, 1 + i * z1: 1 + (i + 1) * z1]
            out.append(np.concatenate([coords[g, i].reshape(-1, 1).astype(X.dtype), z], axis=1))
        return out

    def join(parts):
        g = sum(_gcol(p) * s for p, s in zip(parts, strides))
        zs = [p[:, 1:] for p in parts]
        dtype = object if any(p.dtype == object for p in parts) else np.int64
        return np.concatenate([np.asarray(g).reshape(-1, 1).astype(dtype)] + [z.astype(dtype) for z in zs], axis=1)

    return split, join


def free_universal_map(F: SymbolicPointedModule, P: PointedModule, targets: Sequence[int], o=None) -> SymbolicMap:
    """The pointed morphism ``F -> P`` sending the i-th basis element to ``targets[i]``.

    Rank one: ``(t,n,p) ↦ t·g + (n-1)(o·g) + p g``; unital: ``(s,n) ↦ s·g + (n-1)g``.
    """
    G = P.group
    k = len(F.basis)
    if len(targets) != k:
        raise ValueError("one target per basis element")
    S = F.truss
    unital = F.meta.get("unital", False)
    act = P.action
    parts_of = F.meta.get("split") if k > 1 else (lambda X: [X])
    ob = None if S.empty else int(S.group.origin[0])

    def one(X, g):
        if S.empty:
            return G.scale(X[:, 1], g)
        t = _gcol(X)
        if unital:
            return G.add[act[t, g], G.scale(X[:, 1] - 1, g)]
        return G.add[G.add[act[t, g], G.scale(X[:, 1] - 1, act[ob, g])], G.scale(X[:, 2], g)]

    def fn(X):
        X = F.group.arr(X)
        acc = np.full(len(X), G.zero, dtype=np.intp)
        for part, g in zip(parts_of(X), targets):
            acc = G.add[acc, one(part, int(g))]
        return acc.reshape(-1, 1).astype(np.int64)

    return SymbolicMap(F, P, fn, "universal")


def finite_pointed_as_symbolic(P: PointedModule, o: int | None = None) -> SymbolicPointedModule:
    S = as_symbolic_truss(P.truss, o)
    act = P.action

    def actfn(t, X):
        return act[_gcol(t), _gcol(X)].reshape(-1, 1).astype(np.int64)

    return SymbolicPointedModule("P", S, SymbolicGroup(P.group, 0), actfn, None, "finite table", {"finite": P})


def certify_pointed_map(A: SymbolicPointedModule, B: SymbolicPointedModule, f: Callable,
                        radius: int | None = None, name: str = "map") -> Certificate:
    """``f`` additive and T-linear (T-linearity on additive generators suffices)."""
    cert = certify_additive(A.group, B.group, f, radius, name)
    Ts = A.truss_elements(cert.radius)
    gens = A.group.generators()
    bad = None
    for t, X in _grid(Ts, gens) if len(Ts) else []:
        bad = bad or _find_bad(B.group.eq(f(A.act(t, X)), B.act(t, f(X))), t, X)
    cert.add("T-linear", bad is None, bad)
    return cert


def certify_free(F: SymbolicPointedModule, radius: int | None = None) -> Certificate:
    """Every element is a combination of ``t·b``, ``o·b`` and ``b`` over the basis (uniqueness)."""
    r = radius or default_radius(F.group.exponent)
    cert = Certificate(F.name + " basis decomposition", r)
    W = F.group.window(r)
    G = F.group
    S = F.truss
    unital = F.meta.get("unital", False)
    k = len(F.basis)
    split = F.meta.get("split") if k > 1 else (lambda X: [X])
    acc = np.broadcast_to(G.O, W.shape).copy()
    for i, part in enumerate(split(W)):
        b = np.broadcast_to(F.basis[i:i + 1], W.shape)
        if S.empty:
            term = G.scale(part[:, 1], b)
        elif unital:
            t = part[:, :S.width]
            term = G.add(F.act(t, b), G.scale(part[:, S.width] - 1, b))
        else:
            t = part[:, :S.width]
            ob = F.act(np.broadcast_to(S.group.O, t.shape), b)
            term = G.total(F.act(t, b), G.scale(part[:, S.width] - 1, ob), G.scale(part[:, S.width + 1], b))
        acc = G.add(acc, term)
    ok = G.eq(acc, W)
    cert.add("decomposition", bool(ok.all()), _find_bad(ok, W))
    return cert


def free_action_on_arithmetic(m: int, c: int, radius: int = 6) -> Certificate:
    """Free rank-one module over ``mZ + c``: the action in integer values against the expanded closed form.

    For ``t = mz + c`` acting on ``(ms + c, n, p)`` the first coordinate is
    ``t(ms+c) + (n-1)(tc - c) + p(t - c)``, i.e. ``(36zs+18s+18zn+6n+6pz+3, n+p, 0)`` for ``6Z+3``.
    """
    S = arithmetic_truss(m, c)
    F = free_pointed_module(S)
    cert = Certificate(f"free module over {S.name}", radius)
    r = np.arange(-radius, radius + 1, dtype=np.int64)
    z, s, n, p = (a.ravel() for a in np.meshgrid(r, r, r, r, indexing="ij"))
    zero = np.zeros_like(z)
    T = np.stack([zero, z], axis=1)
    X = np.stack([zero, s, n, p], axis=1)
    out = F.act(T, X)
    t, x = m * z + c, m * s + c
    expect = t * x + (n - 1) * (t * c - c) + p * (t - c)
    ok = (arithmetic_value(m, c, out) == expect) & (out[:, 2] == n + p) & (out[:, 3] == 0)
    cert.add("closed form", bool(ok.all()), _find_bad(ok, T, X))
    if (m, c) == (6, 3):
        lit = 36 * z * s + 18 * s + 18 * z * n + 6 * n + 6 * p * z + 3
        ok2 = arithmetic_value(m, c, out) == lit
        cert.add("6Z+3 literal", bool(ok2.all()), _find_bad(ok2, T, X))
    return cert
