"""Structures whose carrier is a finite abelian group times ``Z^k``.

Elements are rows ``(g, n_1, ..., n_k)``: ``g`` an id of the finite part,
``n_i`` exact integers. Operations act on 2D arrays of rows (vectorized).
Identities are certified on an integer window: every group-valued quantity
built from these formulas depends on each integer coordinate only through
its residue mod the exponent ``k`` of the finite part, and integer-valued
quantities are polynomials of degree at most 4 per coordinate. A window
of ``2r+1 >= max(k, 5)`` consecutive integers per coordinate therefore
decides any such identity over all of ``Z``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as iproduct
from typing import Callable, Iterator

import numpy as np

from .errors import ElementNotInCarrier, NotATrussMorphism, VerificationFailure
from .heap import FiniteGroup, retract, trivial_group
from .truss import FiniteRing, FiniteTruss, validate_ring

CHUNK = 400_000


def default_radius(exponent: int) -> int:
    """Smallest ``r >= 2`` with ``2r+1 >= exponent``."""
    return max(2, -(-(exponent - 1) // 2))


def rows(X, width: int) -> np.ndarray:
    """Coerce to a 2D row array; exact Python ints switch to ``object`` dtype."""
    if isinstance(X, np.ndarray) and X.ndim == 2:
        return X
    a = np.array(X, dtype=object)
    if a.ndim == 1:
        a = a.reshape(1, -1) if width else a.reshape(-1, 0)
    if a.size and all(isinstance(v, (int, np.integer)) and abs(int(v)) < 2**62 for v in a.ravel()):
        a = a.astype(np.int64)
    return a


def _join(g: np.ndarray, z: np.ndarray) -> np.ndarray:
    g = np.asarray(g).reshape(-1, 1)
    if z.dtype == object:
        return np.concatenate([g.astype(object), z], axis=1)
    return np.concatenate([g.astype(np.int64), z.astype(np.int64)], axis=1)


def _gcol(X: np.ndarray) -> np.ndarray:
    return X[:, 0].astype(np.intp)


@dataclass(frozen=True, eq=False)
class SymbolicGroup:
    """``gpart x Z^zdim`` with the zero moved to ``origin`` (``x + y = x - o + y``)."""

    gpart: FiniteGroup
    zdim: int
    origin: tuple | None = None

    def __post_init__(self):
        if self.origin is None:
            object.__setattr__(self, "origin", (self.gpart.zero,) + (0,) * self.zdim)
        object.__setattr__(self, "origin", tuple(int(v) for v in self.origin))

    @property
    def width(self) -> int:
        return 1 + self.zdim

    @property
    def exponent(self) -> int:
        return self.gpart.exponent

    def rebased(self, origin) -> "SymbolicGroup":
        return SymbolicGroup(self.gpart, self.zdim, tuple(origin))

    def extended(self, extra: int = 1) -> "SymbolicGroup":
        return SymbolicGroup(self.gpart, self.zdim + extra, self.origin + (0,) * extra)

    @cached_property
    def O(self) -> np.ndarray:
        return np.array([self.origin], dtype=np.int64)

    def arr(self, X) -> np.ndarray:
        return rows(X, self.width)

    # standard (origin-free) operations
    def sadd(self, X, Y):
        X, Y = np.broadcast_arrays(self.arr(X), self.arr(Y))
        return _join(self.gpart.add[_gcol(X), _gcol(Y)], X[:, 1:] + Y[:, 1:])

    def sneg(self, X):
        X = self.arr(X)
        return _join(self.gpart.neg[_gcol(X)], -X[:, 1:])

    def ssub(self, X, Y):
        return self.sadd(X, self.sneg(Y))

    def sscale(self, k, X):
        X = self.arr(X)
        k = np.asarray(k)
        if k.ndim == 0:
            k = np.full(len(X), k.item(), dtype=object if isinstance(k.item(), int) and abs(k.item()) >= 2**62 else np.int64)
        kk = k.reshape(-1, 1)
        return _join(self.gpart.scale(k, _gcol(X)), kk * X[:, 1:])

    # operations of the group with zero at origin
    def add(self, X, Y):
        return self.sadd(self.ssub(X, self.O), Y)

    def sub(self, X, Y):
        return self.sadd(self.ssub(X, Y), self.O)

    def neg(self, X):
        return self.sub(np.broadcast_to(self.O, self.arr(X).shape), X)

    def scale(self, k, X):
        return self.sadd(self.sscale(k, self.ssub(X, self.O)), self.O)

    def bracket(self, X, Y, Z):
        return self.sadd(self.ssub(X, Y), Z)

    def total(self, *Xs):
        acc = Xs[0]
        for X in Xs[1:]:
            acc = self.add(acc, X)
        return acc

    @property
    def zero(self) -> np.ndarray:
        return self.O

    def eq(self, X, Y) -> np.ndarray:
        X, Y = np.broadcast_arrays(self.arr(X), self.arr(Y))
        return (X == Y).all(axis=1)

    def window(self, radius: int | None = None) -> np.ndarray:
        r = default_radius(self.exponent) if radius is None else radius
        ints = range(-r, r + 1)
        pts = list(iproduct(range(self.gpart.size), *([ints] * self.zdim)))
        return np.array(pts, dtype=np.int64).reshape(-1, self.width)

    def std_generators(self) -> np.ndarray:
        gens = [(g,) + (0,) * self.zdim for g in self.gpart.generators]
        for i in range(self.zdim):
            v = [self.gpart.zero] + [0] * self.zdim
            v[1 + i] = 1
            gens.append(tuple(v))
        if not gens:
            gens = [self.origin_std_zero()]
        return np.array(gens, dtype=np.int64).reshape(-1, self.width)

    def origin_std_zero(self) -> tuple:
        return (self.gpart.zero,) + (0,) * self.zdim

    def generators(self) -> np.ndarray:
        """Additive generators of the group with zero at the origin."""
        return self.sadd(self.std_generators(), self.O)

    def fmt(self, x) -> str:
        x = list(np.asarray(x).ravel())
        lab = self.gpart.labels[int(x[0])]
        if self.zdim == 0:
            return lab
        return "(" + ",".join([lab] + [str(int(v)) for v in x[1:]]) + ")"

    def parse(self, text: str) -> np.ndarray:
        s = text.strip()
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
        parts = [p.strip() for p in s.split(",")]
        if len(parts) != self.width:
            raise ElementNotInCarrier(text)
        try:
            g = self.gpart.labels.index(parts[0])
        except ValueError:
            raise ElementNotInCarrier(text) from None
        return rows([[g] + [int(p) for p in parts[1:]]], self.width)


@dataclass(frozen=True, eq=False)
class SymbolicMap:
    """A map between symbolic (or finite, as width-1 rows) carriers."""

    dom: object
    cod: object
    fn: Callable[[np.ndarray], np.ndarray]
    name: str = "map"

    def __call__(self, X):
        return self.fn(X)


@dataclass(frozen=True, eq=False)
class SymbolicTruss:
    """A truss on the heap of a :class:`SymbolicGroup` with a closed-form product."""

    name: str
    group: SymbolicGroup
    mulfn: Callable[[np.ndarray, np.ndarray], np.ndarray]
    unit: tuple | None = None
    descriptor: str = ""
    finite: FiniteTruss | None = None
    empty: bool = False

    @property
    def width(self) -> int:
        return self.group.width

    @property
    def is_unital(self) -> bool:
        return self.unit is not None

    def mul(self, X, Y):
        X, Y = np.broadcast_arrays(self.group.arr(X), self.group.arr(Y))
        return self.mulfn(X, Y)

    def bracket(self, X, Y, Z):
        return self.group.bracket(X, Y, Z)

    def elements(self, radius: int | None = None) -> np.ndarray:
        if self.empty:
            return np.zeros((0, self.width), dtype=np.int64)
        return self.group.window(radius)

    def fmt(self, x) -> str:
        return self.group.fmt(x)

    def rebased(self, o) -> "SymbolicTruss":
        return SymbolicTruss(self.name, self.group.rebased(tuple(np.asarray(o).ravel())), self.mulfn,
                             self.unit, self.descriptor, self.finite, self.empty)


@dataclass(frozen=True, eq=False)
class SymbolicRing:
    """A ring on a :class:`SymbolicGroup` with a closed-form product."""

    name: str
    group: SymbolicGroup
    mulfn: Callable[[np.ndarray, np.ndarray], np.ndarray]
    unit: tuple | None = None
    descriptor: str = ""
    meta: dict = field(default_factory=dict)

    @property
    def width(self) -> int:
        return self.group.width

    @property
    def zero(self) -> np.ndarray:
        return self.group.O

    @property
    def unit_row(self) -> np.ndarray:
        return np.array([self.unit], dtype=np.int64)

    def mul(self, X, Y):
        X, Y = np.broadcast_arrays(self.group.arr(X), self.group.arr(Y))
        return self.mulfn(X, Y)

    def add(self, X, Y):
        return self.group.add(X, Y)

    def sub(self, X, Y):
        return self.group.sub(X, Y)

    def neg(self, X):
        return self.group.neg(X)

    def scale(self, k, X):
        return self.group.scale(k, X)

    def fmt(self, x) -> str:
        return self.group.fmt(x)

    def as_truss(self) -> SymbolicTruss:
        return SymbolicTruss(f"T({self.name})", self.group, self.mulfn, self.unit, self.descriptor)


# ---------------------------------------------------------------------------
# adapters for finite structures


def finite_truss_as_symbolic(T: FiniteTruss, o: int | None = None) -> SymbolicTruss:
    """View a finite truss as a symbolic one with no integer coordinates."""
    if T.is_empty:
        return SymbolicTruss("∅", SymbolicGroup(trivial_group(), 0), lambda X, Y: X, None, "empty", T, True)
    o = T.default_basepoint if o is None else o
    G = retract(T.heap, o)
    mul = T.mul

    def mulfn(X, Y):
        return mul[_gcol(X), _gcol(Y)].reshape(-1, 1).astype(np.int64)

    unit = (T.unit,) if T.unit is not None else None
    return SymbolicTruss("T", SymbolicGroup(G, 0), mulfn, unit, "finite table", T)


def finite_ring_as_symbolic(R: FiniteRing, name: str = "R") -> SymbolicRing:
    mul = R.mul

    def mulfn(X, Y):
        return mul[_gcol(X), _gcol(Y)].reshape(-1, 1).astype(np.int64)

    return SymbolicRing(name, SymbolicGroup(R.group, 0), mulfn, (R.unit,) if R.unit is not None else None,
                        "finite table")


def arithmetic_truss(m: int, c: int) -> SymbolicTruss:
    """The sub-truss ``mZ + c`` of ``T(Z)``; the element ``mz + c`` is encoded by ``z``.

    Needs ``c² ≡ c (mod m)``. The basepoint is ``c`` (``z = 0``).
    """
    if m <= 0 or (c * c - c) % m:
        raise ValueError(f"{m}Z+{c} is not closed under multiplication")
    k = (c * c - c) // m

    def mulfn(X, Y):
        z, w = X[:, 1], Y[:, 1]
        return np.stack([np.zeros_like(z), m * z * w + c * z + c * w + k], axis=1)

    return SymbolicTruss(f"{m}Z+{c}", SymbolicGroup(trivial_group(), 1), mulfn, None,
                         f"(mz+c)(mw+c) = m(mzw + cz + cw) + c², m={m}, c={c}")


def arithmetic_value(m: int, c: int, X) -> np.ndarray:
    """Integer value ``mz + c`` of encoded rows."""
    return m * np.asarray(X)[:, 1] + c


def as_symbolic_truss(T, o=None) -> SymbolicTruss:
    if isinstance(T, SymbolicTruss):
        if o is not None:
            return T.rebased(o)
        if T.unit is not None and not T.empty:
            return T.rebased(T.unit)
        return T
    if isinstance(T, FiniteTruss):
        return finite_truss_as_symbolic(T, None if o is None else int(np.asarray(o).ravel()[0]))
    if isinstance(T, SymbolicRing):
        return as_symbolic_truss(T.as_truss(), o)
    raise TypeError(type(T))


def _origin(S: SymbolicTruss) -> tuple:
    """The basepoint of ``S``, passed on so that derived objects do not rebase to the unit."""
    return tuple(int(v) for v in S.group.O[0])


def as_symbolic_ring(R) -> SymbolicRing:
    if isinstance(R, SymbolicRing):
        return R
    if isinstance(R, FiniteRing):
        return finite_ring_as_symbolic(R)
    raise TypeError(type(R))


def _basepoint_row(T: SymbolicTruss) -> np.ndarray:
    return T.group.O


# ---------------------------------------------------------------------------
# the universal ring, Dorroh extensions and the unital truss extension


def zero_ring() -> SymbolicRing:
    return SymbolicRing("0", SymbolicGroup(trivial_group(), 0), lambda X, Y: np.zeros_like(X), (0,),
                        "zero ring")


def universal_ring(T, o=None) -> tuple[SymbolicRing, SymbolicMap]:
    """R(T) on ``G(T;o) x Z`` and the embedding ``ι(t) = (t,1)``.

    ``(t,m)(s,n) = (ts + (n-1)to + (m-1)os + (m-1)(n-1)oo, mn)`` with sums in ``G(T;o)``.
    """
    S = as_symbolic_truss(T, o)
    if S.empty:
        R = zero_ring()
        R.meta.update(basepoint=None, truss=S)
        return R, SymbolicMap(S, R, lambda X: np.zeros((len(X), 1), dtype=np.int64), "iota")
    G = S.group  # zero at o
    w = S.width
    O = G.O

    def split(X):
        return X[:, :w], X[:, w]

    def mulfn(X, Y):
        t, m = split(X)
        s, n = split(Y)
        Ob = np.broadcast_to(O, t.shape)
        ts, to, os_, oo = S.mul(t, s), S.mul(t, Ob), S.mul(Ob, s), S.mul(Ob, Ob)
        g = G.total(ts, G.scale(n - 1, to), G.scale(m - 1, os_), G.scale((m - 1) * (n - 1), oo))
        return np.concatenate([g, (m * n).reshape(-1, 1)], axis=1)

    RG = G.extended(1)
    unit = None
    if S.unit is not None:
        unit = tuple(int(v) for v in S.unit) + (1,)
    desc = "(t,m)(s,n) = (ts + (n-1)to + (m-1)os + (m-1)(n-1)o^2, mn)"
    R = SymbolicRing(f"R({S.name})", RG, mulfn, unit, desc,
                     {"basepoint": tuple(int(v) for v in O[0]), "truss": S})

    def iota(X):
        X = G.arr(X)
        return np.concatenate([X, np.ones((len(X), 1), dtype=X.dtype)], axis=1)

    return R, SymbolicMap(S, R, iota, "iota")


def dorroh_ring(R) -> tuple[SymbolicRing, SymbolicMap]:
    """``R_u`` on ``R x Z``: ``(r,u)(s,v) = (rs + v r + u s, uv)``, unit ``(0,1)``, ``ȷ(r) = (r,0)``."""
    R = as_symbolic_ring(R)
    w = R.width
    G = R.group

    def mulfn(X, Y):
        r, u = X[:, :w], X[:, w]
        s, v = Y[:, :w], Y[:, w]
        g = G.total(R.mul(r, s), G.scale(v, r), G.scale(u, s))
        return np.concatenate([g, (u * v).reshape(-1, 1)], axis=1)

    unit = tuple(int(v) for v in G.O[0]) + (1,)
    Ru = SymbolicRing(f"{R.name}_u", G.extended(1), mulfn, unit, "(r,u)(s,v) = (rs + v r + u s, uv)",
                      {"base": R})

    def jmath(X):
        X = G.arr(X)
        return np.concatenate([X, np.zeros((len(X), 1), dtype=X.dtype)], axis=1)

    return Ru, SymbolicMap(R, Ru, jmath, "jmath")


def rtu(T, o=None) -> SymbolicRing:
    """``R(T)_u``, with elements ``(t, n, p)``."""
    R, _ = universal_ring(T, o)
    Ru, _ = dorroh_ring(R)
    Ru.meta.update(R=R)
    return Ru


def singleton_unital_truss() -> SymbolicTruss:
    return SymbolicTruss("{*}", SymbolicGroup(trivial_group(), 0), lambda X, Y: np.zeros_like(X), (0,),
                         "singleton")


def unital_truss_extension(T, o=None) -> tuple[SymbolicTruss, SymbolicMap]:
    """``T_u`` realized on pairs ``(x,m)`` sitting inside ``T(R(T)_u)`` as ``(x, m, 1-m)``.

    The unit is ``(o,0)`` and ``ȷ(t) = (t,1)``. For the empty truss this is
    the singleton unital truss.
    """
    S = as_symbolic_truss(T, o)
    if S.empty:
        U = singleton_unital_truss()
        return U, SymbolicMap(S, U, lambda X: np.zeros((len(X), 1), dtype=np.int64), "jmath")
    A = rtu(S, _origin(S))
    w = S.width
    G = S.group.extended(1)  # zero (o,0)

    def emb(X):
        return np.concatenate([X, (1 - X[:, w]).reshape(-1, 1)], axis=1)

    def mulfn(X, Y):
        return A.mul(emb(X), emb(Y))[:, :-1]

    unit = tuple(int(v) for v in S.group.O[0]) + (0,)
    U = SymbolicTruss(f"{S.name}_u", G, mulfn, unit, "(x,m) ~ ((x,m),1-m) in R(T)_u")

    def jmath(X):
        X = S.group.arr(X)
        return np.concatenate([X, np.ones((len(X), 1), dtype=X.dtype)], axis=1)

    return U, SymbolicMap(S, U, jmath, "jmath")


def tu_embedding(T, o=None) -> SymbolicMap:
    """The inclusion ``T_u -> T(R(T)_u)``, ``(x,m) ↦ (x,m,1-m)``."""
    S = as_symbolic_truss(T, o)
    U, _ = unital_truss_extension(S, _origin(S))
    A = rtu(S, _origin(S))
    w = S.width
    return SymbolicMap(U, A, lambda X: np.concatenate([X, (1 - X[:, w]).reshape(-1, 1)], axis=1), "emb")


def tu_closed_form(T, o=None) -> Callable:
    """Closed form of the ``T_u`` product, used as an independent cross-check."""
    S = as_symbolic_truss(T, o)
    G = S.group
    w = S.width
    O = G.O

    def mul(X, Y):
        x, m = X[:, :w], X[:, w]
        y, n = Y[:, :w], Y[:, w]
        Ob = np.broadcast_to(O, x.shape)
        g = G.total(S.mul(x, y), G.scale(n - 1, S.mul(x, Ob)), G.scale(m - 1, S.mul(Ob, y)),
                    G.scale((m - 1) * (n - 1), S.mul(Ob, Ob)), G.scale(1 - n, x), G.scale(1 - m, y))
        return np.concatenate([g, (m + n - m * n).reshape(-1, 1)], axis=1)

    return mul


# ---------------------------------------------------------------------------
# window certification


@dataclass
class Certificate:
    """Outcome of a window certification: named checks with optional witnesses."""

    subject: str
    radius: int
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c[1] for c in self.checks)

    def add(self, name: str, ok: bool, witness=None):
        self.checks.append((name, bool(ok), witness))

    def failures(self):
        return [c for c in self.checks if not c[1]]

    def raise_if_failed(self):
        bad = self.failures()
        if bad:
            name, _, wit = bad[0]
            raise VerificationFailure(f"{self.subject}: {name}", wit)
        return self


def _chunks(n: int, size: int) -> Iterator[slice]:
    for a in range(0, n, size):
        yield slice(a, min(n, a + size))


def _grid(*arrays: np.ndarray) -> Iterator[tuple[np.ndarray, ...]]:
    """All combinations of rows, chunked over the first array."""
    sizes = [len(a) for a in arrays]
    rest = int(np.prod(sizes[1:])) if len(sizes) > 1 else 1
    step = max(1, CHUNK // max(rest, 1))
    idx_rest = np.indices(sizes[1:]).reshape(len(sizes) - 1, -1) if len(sizes) > 1 else None
    for sl in _chunks(sizes[0], step):
        k = sl.stop - sl.start
        first = np.repeat(np.arange(sl.start, sl.stop), rest)
        out = [arrays[0][first]]
        for j in range(1, len(arrays)):
            out.append(arrays[j][np.tile(idx_rest[j - 1], k)])
        yield tuple(out)


def _find_bad(eqmask: np.ndarray, *cols: np.ndarray):
    if eqmask.all():
        return None
    i = int(np.flatnonzero(~eqmask)[0])
    return tuple(tuple(int(v) for v in c[i]) for c in cols)


def certify_ring(R: SymbolicRing, radius: int | None = None, assoc_window: bool = False) -> Certificate:
    """Ring axioms of a symbolic ring on the window.

    Distributivity is checked for ``x, y`` in the window against every additive
    generator ``g``; this makes the product biadditive, so associativity and
    the unit laws are checked on generators.
    """
    G = R.group
    r = default_radius(G.exponent) if radius is None else radius
    cert = Certificate(R.name, r)
    W = G.window(r)
    gens = G.generators()
    bad_l = bad_r = None
    for X, Y, g in _grid(W, W, gens):
        if bad_l is None:
            lhs = R.mul(X, G.add(Y, g))
            rhs = G.add(R.mul(X, Y), R.mul(X, g))
            bad_l = _find_bad(G.eq(lhs, rhs), X, Y, g)
        if bad_r is None:
            lhs = R.mul(G.add(Y, g), X)
            rhs = G.add(R.mul(Y, X), R.mul(g, X))
            bad_r = _find_bad(G.eq(lhs, rhs), Y, g, X)
        if bad_l is not None and bad_r is not None:
            break
    cert.add("left distributivity", bad_l is None, bad_l)
    cert.add("right distributivity", bad_r is None, bad_r)
    bad = None
    for X, Y, Z in _grid(gens, gens, gens):
        bad = bad or _find_bad(G.eq(R.mul(R.mul(X, Y), Z), R.mul(X, R.mul(Y, Z))), X, Y, Z)
    cert.add("associativity on generators", bad is None, bad)
    if assoc_window:
        bad = None
        for X, Y, Z in _grid(W, W, W):
            bad = bad or _find_bad(G.eq(R.mul(R.mul(X, Y), Z), R.mul(X, R.mul(Y, Z))), X, Y, Z)
        cert.add("associativity on window", bad is None, bad)
    if R.unit is not None:
        u = np.broadcast_to(np.array([R.unit], dtype=np.int64), W.shape)
        ok = G.eq(R.mul(u, W), W) & G.eq(R.mul(W, u), W)
        cert.add("unit", bool(ok.all()), _find_bad(ok, W))
    return cert


def certify_additive(A: SymbolicGroup, B: SymbolicGroup, f: Callable, radius: int | None = None,
                     name: str = "map") -> Certificate:
    """``f`` is a group homomorphism ``A -> B`` (zeros at the respective origins)."""
    r = default_radius(max(A.exponent, B.exponent)) if radius is None else radius
    cert = Certificate(name, r)
    W = A.window(r)
    gens = A.generators()
    ok0 = B.eq(f(A.O), B.O)
    cert.add("zero", bool(ok0.all()), None)
    bad = None
    for X, g in _grid(W, gens):
        bad = _find_bad(B.eq(f(A.add(X, g)), B.add(f(X), f(g))), X, g)
        if bad:
            break
    cert.add("additivity", bad is None, bad)
    return cert


def certify_ring_hom(A: SymbolicRing, B: SymbolicRing, f: Callable, radius: int | None = None,
                     unital: bool = False, name: str = "ring map") -> Certificate:
    cert = certify_additive(A.group, B.group, f, radius, name)
    gens = A.group.generators()
    bad = None
    for X, Y in _grid(gens, gens):
        bad = bad or _find_bad(B.group.eq(f(A.mul(X, Y)), B.mul(f(X), f(Y))), X, Y)
    cert.add("multiplicativity on generators", bad is None, bad)
    if unital:
        ok = B.group.eq(f(A.unit_row), B.unit_row)
        cert.add("unit", bool(ok.all()), None)
    return cert


def certify_heap_map(A: SymbolicGroup, B: SymbolicGroup, f: Callable, radius: int | None = None,
                     name: str = "map") -> Certificate:
    """``f`` preserves ``x - y + z``; equivalently ``f - f(o)`` is additive."""
    fo = f(A.O)
    Bc = B.rebased(tuple(int(v) for v in np.asarray(fo[0])))
    return certify_additive(A, Bc, f, radius, name)


def certify_truss(T: SymbolicTruss, radius: int | None = None, assoc_limit: int = 3_000_000,
                  seed: int = 0) -> Certificate:
    """Truss axioms: left/right multiplications are heap endomorphisms, plus associativity.

    Associativity is checked on all window triples when there are at most
    ``assoc_limit`` of them, else on a seeded sample of that size.
    """
    G = T.group
    r = default_radius(G.exponent) if radius is None else radius
    cert = Certificate(T.name, r)
    W = T.elements(r)
    if len(W) == 0:
        cert.add("empty", True)
        return cert
    gens = G.generators()
    O = G.O
    bad1 = bad2 = None
    for X, Y, g in _grid(W, W, gens):
        Ob = np.broadcast_to(O, X.shape)
        # x(y + g) = xy - xo + xg
        lhs = T.mul(X, G.add(Y, g))
        rhs = G.bracket(T.mul(X, Y), T.mul(X, Ob), T.mul(X, g))
        bad1 = bad1 or _find_bad(G.eq(lhs, rhs), X, Y, g)
        lhs = T.mul(G.add(Y, g), X)
        rhs = G.bracket(T.mul(Y, X), T.mul(Ob, X), T.mul(g, X))
        bad2 = bad2 or _find_bad(G.eq(lhs, rhs), Y, g, X)
    cert.add("T1 (left multiplication is a heap map)", bad1 is None, bad1)
    cert.add("T2 (right multiplication is a heap map)", bad2 is None, bad2)
    n = len(W)
    bad = None
    if n ** 3 <= assoc_limit:
        for X, Y, Z in _grid(W, W, W):
            bad = bad or _find_bad(G.eq(T.mul(T.mul(X, Y), Z), T.mul(X, T.mul(Y, Z))), X, Y, Z)
        cert.add("associativity on window", bad is None, bad)
    else:
        rng = np.random.default_rng(seed)
        idx = rng.integers(0, n, size=(assoc_limit, 3))
        X, Y, Z = W[idx[:, 0]], W[idx[:, 1]], W[idx[:, 2]]
        bad = _find_bad(G.eq(T.mul(T.mul(X, Y), Z), T.mul(X, T.mul(Y, Z))), X, Y, Z)
        cert.add("associativity on sampled window triples", bad is None, bad)
    if T.unit is not None:
        u = np.broadcast_to(np.array([T.unit], dtype=np.int64), W.shape)
        ok = G.eq(T.mul(u, W), W) & G.eq(T.mul(W, u), W)
        cert.add("unit", bool(ok.all()), _find_bad(ok, W))
    return cert


def certify_tu_closure(T, o=None, radius: int | None = None) -> Certificate:
    """``T_u`` is closed in ``T(R(T)_u)``: products of ``(x,m,1-m)`` keep the shape."""
    S = as_symbolic_truss(T, o)
    U, _ = unital_truss_extension(S, _origin(S))
    cert = Certificate(U.name, 0)
    if S.empty:
        cert.add("singleton", True)
        return cert
    A = rtu(S, _origin(S))
    emb = tu_embedding(S, _origin(S))
    w = S.width
    r = default_radius(U.group.exponent) if radius is None else radius
    cert.radius = r
    W = U.elements(r)
    bad = None
    for X, Y in _grid(W, W):
        P = A.mul(emb(X), emb(Y))
        ok = P[:, w + 1] == 1 - P[:, w]
        bad = bad or _find_bad(ok, X, Y)
    cert.add("product closed", bad is None, bad)
    c = certify_heap_map(U.group, A.group, emb.fn, r, "bracket closed")
    cert.add("bracket closed", c.ok, c.failures()[0][2] if not c.ok else None)
    closed = tu_closed_form(S, _origin(S))
    bad = None
    for X, Y in _grid(W, W):
        bad = bad or _find_bad(U.group.eq(U.mul(X, Y), closed(X, Y)), X, Y)
    cert.add("closed form agrees", bad is None, bad)
    return cert


# ---------------------------------------------------------------------------
# universal maps


def _truss_elements(S: SymbolicTruss, radius=None) -> np.ndarray:
    if S.finite is not None:
        return np.arange(S.finite.size, dtype=np.int64).reshape(-1, 1)
    return S.elements(radius)


def check_truss_map(S: SymbolicTruss, B, phi: Callable, radius=None, name="phi") -> Certificate:
    """``phi: S -> T(B)`` preserves brackets and products (exhaustive when ``S`` is finite)."""
    BG = B.group
    X = _truss_elements(S, radius)
    cert = Certificate(name, 0 if S.finite is not None else (radius or default_radius(S.group.exponent)))
    if len(X) == 0:
        cert.add("empty domain", True)
        return cert
    bad = None
    for A, Bx, C in _grid(X, X, X) if S.finite is not None else _grid(X, X, S.group.generators()):
        lhs = phi(S.group.bracket(A, Bx, C))
        rhs = BG.bracket(phi(A), phi(Bx), phi(C))
        bad = bad or _find_bad(BG.eq(lhs, rhs), A, Bx, C)
    cert.add("bracket", bad is None, bad)
    bad = None
    for A, Bx in _grid(X, X):
        bad = bad or _find_bad(BG.eq(phi(S.mul(A, Bx)), B.mul(phi(A), phi(Bx))), A, Bx)
    cert.add("product", bad is None, bad)
    return cert


@dataclass
class Lift:
    map: SymbolicMap
    certificate: Certificate


def lift_morphism(T, phi: Callable, R, o=None, radius: int | None = None, check: bool = True) -> Lift:
    """The ring map ``R(T) -> R`` with ``(t,n) ↦ φ(t) + (n-1)φ(o)``.

    Checks that ``φ`` is a truss morphism into ``T(R)``, that the lift is a ring
    homomorphism extending ``φ`` along ``ι``, and the decomposition
    ``(t,n) = ι(t) + (n-1)ι(o)`` which makes it the only such extension.
    """
    S = as_symbolic_truss(T, o)
    R = as_symbolic_ring(R)
    RT, iota = universal_ring(S, _origin(S))
    RG = R.group
    if S.empty:
        fhat = SymbolicMap(RT, R, lambda X: np.broadcast_to(RG.O, (len(X), RG.width)).copy(), "lift")
        cert = Certificate("lift", 0)
        cert.add("empty truss: zero map from the zero ring", True)
        return Lift(fhat, cert)
    w = S.width
    O = S.group.O

    def fn(X):
        X = RT.group.arr(X)
        t, n = X[:, :w], X[:, w]
        return RG.add(phi(t), RG.scale(n - 1, phi(np.broadcast_to(O, t.shape))))

    fhat = SymbolicMap(RT, R, fn, "lift")
    cert = Certificate("lift", radius or default_radius(max(RT.group.exponent, RG.exponent)))
    if not check:
        return Lift(fhat, cert)
    tm = check_truss_map(S, R, phi, radius)
    if not tm.ok:
        raise NotATrussMorphism(tm.failures()[0][2] or (), tm.failures()[0][0])
    hom = certify_ring_hom(RT, R, fn, radius, name="lift")
    cert.checks.extend(hom.checks)
    X = _truss_elements(S, radius)
    cert.add("extends phi", bool(RG.eq(fn(iota(X)), phi(X)).all()))
    W = RT.group.window(cert.radius)
    t, n = W[:, :w], W[:, w]
    dec = RT.group.add(iota(t), RT.group.scale(n - 1, iota(np.broadcast_to(O, t.shape))))
    cert.add("generated by iota (uniqueness)", bool(RT.group.eq(dec, W).all()))
    return Lift(fhat, cert)


def dorroh_lift(R, f: Callable, B: SymbolicRing) -> SymbolicMap:
    """Unital extension ``R_u -> B`` of a ring map ``f: R -> B``: ``(r,p) ↦ f(r) + p·1``."""
    R = as_symbolic_ring(R)
    w = R.width
    Ru, _ = dorroh_ring(R)

    def fn(X):
        X = Ru.group.arr(X)
        return B.group.add(f(X[:, :w]), B.group.scale(X[:, w], np.broadcast_to(B.unit_row, (len(X), B.width))))

    return SymbolicMap(Ru, B, fn, "dorroh-lift")


def unital_extension(T, f: Callable, target, o=None) -> SymbolicMap:
    """Extend a truss map ``f: T -> target`` (target unital) to ``T_u``.

    ``(x,m) ↦ f(x) + (m-1) f(o)`` computed in the retract of the target at its unit.
    """
    S = as_symbolic_truss(T, o)
    U, _ = unital_truss_extension(S, _origin(S))
    if isinstance(target, FiniteTruss):
        tgt = finite_truss_as_symbolic(target, target.unit)
    elif isinstance(target, SymbolicRing):
        tgt = target.as_truss()
    else:
        tgt = target
    one = np.array([tgt.unit], dtype=np.int64)
    G1 = tgt.group.rebased(tuple(tgt.unit))
    if S.empty:
        return SymbolicMap(U, tgt, lambda X: np.broadcast_to(one, (len(X), tgt.width)).copy(), "unital-ext")
    w = S.width
    O = S.group.O

    def fn(X):
        X = U.group.arr(X)
        x, m = X[:, :w], X[:, w]
        return G1.add(f(x), G1.scale(m - 1, f(np.broadcast_to(O, x.shape))))

    return SymbolicMap(U, tgt, fn, "unital-ext")


def certify_unital_extension(T, f: Callable, target, o=None, radius=None) -> Certificate:
    """The extension is a unital truss map, restricts to ``f`` and is forced by ``ȷ(T)`` and the unit."""
    S = as_symbolic_truss(T, o)
    U, jm = unital_truss_extension(S, _origin(S))
    ext = unital_extension(S, f, target, _origin(S))
    tgt = ext.cod
    r = radius or default_radius(max(U.group.exponent, tgt.group.exponent))
    cert = Certificate("unital extension", r)
    tm = check_truss_map(U, tgt, ext.fn, r, "extension")
    cert.checks.extend(tm.checks)
    one = np.array([tgt.unit], dtype=np.int64)
    cert.add("unit preserved", bool(tgt.group.eq(ext(np.array([U.unit], dtype=np.int64)), one).all()))
    if S.empty:
        return cert
    X = _truss_elements(S, r)
    cert.add("restricts to f", bool(tgt.group.eq(ext(jm(X)), f(X)).all()))
    # uniqueness: (x,m) = ȷ(x) + (m-1)ȷ(o) in G(T_u; 1)
    W = U.elements(r)
    w = S.width
    Gu = U.group.rebased(U.unit)
    x, m = W[:, :w], W[:, w]
    dec = Gu.add(jm(x), Gu.scale(m - 1, jm(np.broadcast_to(S.group.O, x.shape))))
    cert.add("generated by ȷ(T) and 1 (uniqueness)", bool(Gu.eq(dec, W).all()))
    return cert


@dataclass
class DorrohReport:
    truss: str
    A: SymbolicRing  # R(T)_u
    B: SymbolicRing  # R(T_u)
    phi_hat: SymbolicMap
    psi_hat: SymbolicMap
    certificate: Certificate

    @property
    def ok(self) -> bool:
        return self.certificate.ok


def check_dorroh_commutation(T, o=None, radius: int | None = None) -> DorrohReport:
    """``R(T)_u ≅ R(T_u)`` via the canonical unital maps, certified on the window."""
    S = as_symbolic_truss(T, o)
    RT, iota = universal_ring(S, _origin(S))
    A, jR = dorroh_ring(RT)
    U, jT = unital_truss_extension(S, _origin(S))
    B, iotaU = universal_ring(U, U.unit)
    # φ: R(T) -> R(T_u) lifts ι_{T_u} ∘ ȷ_T; φ̂ is its unital extension
    phi = lift_morphism(S, lambda X: iotaU(jT(X)), B, o=_origin(S), radius=radius)
    phi_hat = dorroh_lift(RT, phi.map.fn, B)
    # ψ: T_u -> T(R(T)_u) extends ȷ_R ∘ ι_T; ψ̂ lifts it to R(T_u)
    psi = unital_extension(S, lambda X: jR(iota(X)), A, _origin(S))
    psi_hat = lift_morphism(U, psi.fn, A, radius=radius)
    r = radius or default_radius(A.group.exponent)
    cert = Certificate(f"R({S.name})_u vs R({S.name}_u)", r)
    for c in (phi.certificate, psi_hat.certificate):
        cert.checks.extend(c.checks)
    c1 = certify_ring_hom(A, B, phi_hat.fn, r, unital=True, name="phi_hat")
    c2 = certify_ring_hom(B, A, psi_hat.map.fn, r, unital=True, name="psi_hat")
    cert.checks.extend(("phi_hat " + n, ok, w) for n, ok, w in c1.checks)
    cert.checks.extend(("psi_hat " + n, ok, w) for n, ok, w in c2.checks)
    WA, WB = A.group.window(r), B.group.window(r)
    ia = A.group.eq(psi_hat.map(phi_hat(WA)), WA)
    ib = B.group.eq(phi_hat(psi_hat.map(WB)), WB)
    cert.add("psi_hat ∘ phi_hat = id", bool(ia.all()), _find_bad(ia, WA))
    cert.add("phi_hat ∘ psi_hat = id", bool(ib.all()), _find_bad(ib, WB))
    return DorrohReport(S.name, A, B, phi_hat, psi_hat.map, cert)


def basepoint_change(T: FiniteTruss, o1: int, o2: int, radius=None) -> tuple[SymbolicMap, SymbolicMap, Certificate]:
    """The ι-compatible ring isomorphism ``R(T;o1) -> R(T;o2)`` and its inverse."""
    R1, i1 = universal_ring(T, o1)
    R2, i2 = universal_ring(T, o2)
    S1, S2 = finite_truss_as_symbolic(T, o1), finite_truss_as_symbolic(T, o2)
    f = lift_morphism(S1, i2.fn, R2, o=_origin(S1), radius=radius)
    g = lift_morphism(S2, i1.fn, R1, o=_origin(S2), radius=radius)
    r = f.certificate.radius
    cert = Certificate(f"R(T;{o1}) vs R(T;{o2})", r)
    cert.checks.extend(f.certificate.checks + g.certificate.checks)
    W1, W2 = R1.group.window(r), R2.group.window(r)
    cert.add("inverse 1", bool(R1.group.eq(g.map(f.map(W1)), W1).all()))
    cert.add("inverse 2", bool(R2.group.eq(f.map(g.map(W2)), W2).all()))
    if T.unit is not None:
        cert.add("unital", bool(R2.group.eq(f.map(R1.unit_row), R2.unit_row).all()))
    return f.map, g.map, cert


def unital_simplification(T: FiniteTruss, radius=None) -> Certificate:
    """For unital ``T`` and ``o = 1``: the general product equals ``(ts + (n-1)t + (m-1)s, mn)``,
    and ``R(T)`` is the Dorroh extension of the rng ``(G(T;1), t∘s = ts - t - s)``."""
    if T.unit is None:
        raise ValueError("truss is not unital")
    R, _ = universal_ring(T, T.unit)
    G = R.group
    S = finite_truss_as_symbolic(T, T.unit)
    TG = S.group
    r = radius or default_radius(G.exponent)
    cert = Certificate(f"unital simplification of {R.name}", r)
    W = G.window(r)

    def simple(X, Y):
        t, m = X[:, :1], X[:, 1]
        s, n = Y[:, :1], Y[:, 1]
        g = TG.total(S.mul(t, s), TG.scale(n - 1, t), TG.scale(m - 1, s))
        return np.concatenate([g, (m * n).reshape(-1, 1)], axis=1)

    bad = None
    for X, Y in _grid(W, W):
        bad = bad or _find_bad(G.eq(R.mul(X, Y), simple(X, Y)), X, Y)
    cert.add("simplified formula", bad is None, bad)
    g1 = retract(T.heap, T.unit)
    n = T.size
    circ = np.empty((n, n), dtype=np.intp)
    for a in range(n):
        for b in range(n):
            circ[a, b] = g1.add[g1.add[T.mul[a, b], g1.neg[a]], g1.neg[b]]
    rng_ = validate_ring(g1, circ, find_unit_in_group(g1, circ))
    D, _ = dorroh_ring(rng_)
    bad = None
    for X, Y in _grid(W, W):
        bad = bad or _find_bad(G.eq(R.mul(X, Y), D.mul(X, Y)), X, Y)
    cert.add("equals Dorroh extension of the rng", bad is None, bad)
    return cert


def find_unit_in_group(G: FiniteGroup, mul) -> int | None:
    i = np.arange(G.size)
    for u in range(G.size):
        if np.array_equal(mul[:, u], i) and np.array_equal(mul[u, :], i):
            return u
    return None
