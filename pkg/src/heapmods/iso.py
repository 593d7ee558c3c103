"""Backtracking search for homomorphisms and isomorphisms between finite structures.

A structure is described by a list of operation tables. An entry
``(tab_a, tab_b, param)`` asks that ``f(tab_a[args]) == tab_b[f(args)]``;
when ``param`` is true the first axis indexes a fixed parameter set (such as
the truss acting on a module) and is not mapped.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import NotIsomorphic, SizeMismatch

Op = tuple[np.ndarray, np.ndarray, bool]


def _propagate(f: np.ndarray, used: np.ndarray | None, ops: Sequence[Op]) -> bool:
    """Extend ``f`` (``-1`` = unassigned) by closure; False on contradiction."""
    changed = True
    while changed:
        changed = False
        S = np.flatnonzero(f >= 0)
        if len(S) == 0:
            return True
        for ta, tb, param in ops:
            arity = ta.ndim - (1 if param else 0)
            grids = np.ix_(*([np.arange(ta.shape[0])] if param else []), *([S] * arity))
            res = ta[grids]
            img_grids = np.ix_(*([np.arange(ta.shape[0])] if param else []), *([f[S]] * arity))
            want = tb[img_grids]
            cur = f[res]
            bad = (cur >= 0) & (cur != want)
            if bad.any():
                return False
            new = cur < 0
            if new.any():
                src = res[new]
                dst = want[new]
                # the same source may be forced to different targets
                for s in np.unique(src):
                    vals = np.unique(dst[src == s])
                    if len(vals) > 1:
                        return False
                    v = int(vals[0])
                    if used is not None:
                        if used[v]:
                            return False
                        used[v] = True
                    f[s] = v
                changed = True
    return True


def _search(n_a: int, n_b: int, ops: Sequence[Op], bijective: bool, fixed: dict[int, int] | None,
            allowed: np.ndarray | None, limit: int | None) -> list[np.ndarray]:
    out: list[np.ndarray] = []
    f0 = np.full(n_a, -1, dtype=np.intp)
    used0 = np.zeros(n_b, dtype=bool) if bijective else None
    for x, y in (fixed or {}).items():
        if f0[x] >= 0 and f0[x] != y:
            return out
        if used0 is not None:
            if used0[y] and f0[x] != y:
                return out
            used0[y] = True
        f0[x] = y
    if not _propagate(f0, used0, ops):
        return out

    def ok_allowed(f):
        if allowed is None:
            return True
        S = np.flatnonzero(f >= 0)
        return bool(allowed[S, f[S]].all())

    def rec(f, used):
        if limit is not None and len(out) >= limit:
            return
        if not ok_allowed(f):
            return
        free = np.flatnonzero(f < 0)
        if len(free) == 0:
            if _verify(f, ops):
                out.append(f.copy())
            return
        x = int(free[0])
        for y in range(n_b):
            if used is not None and used[y]:
                continue
            if allowed is not None and not allowed[x, y]:
                continue
            g = f.copy()
            u = used.copy() if used is not None else None
            g[x] = y
            if u is not None:
                u[y] = True
            if _propagate(g, u, ops):
                rec(g, u)

    rec(f0, used0)
    return out


def _verify(f: np.ndarray, ops: Sequence[Op]) -> bool:
    for ta, tb, param in ops:
        arity = ta.ndim - (1 if param else 0)
        if ta.size == 0:
            continue
        grids = [np.arange(ta.shape[0])] if param else []
        img = tb[np.ix_(*grids, *([f] * arity))]
        if not np.array_equal(f[ta], img):
            return False
    return True


def enumerate_homs(n_a: int, n_b: int, ops: Sequence[Op], fixed: dict[int, int] | None = None,
                   allowed: np.ndarray | None = None, limit: int | None = None) -> list[np.ndarray]:
    """All maps ``range(n_a) -> range(n_b)`` preserving every operation."""
    if n_a == 0:
        return [np.zeros(0, dtype=np.intp)]
    if n_b == 0:
        return []
    return _search(n_a, n_b, ops, False, fixed, allowed, limit)


def find_isomorphisms(n: int, ops: Sequence[Op], fixed: dict[int, int] | None = None,
                      allowed: np.ndarray | None = None, limit: int | None = None) -> list[np.ndarray]:
    if n == 0:
        return [np.zeros(0, dtype=np.intp)]
    return _search(n, n, ops, True, fixed, allowed, limit)


def structure_ops(A, B) -> tuple[int, int, list[Op], dict[int, int]]:
    """Operation tables of two structures of the same kind, plus forced constants."""
    from .heap import FiniteGroup, FiniteHeap
    from .truss import FiniteRing, FiniteTruss

    fixed: dict[int, int] = {}
    if isinstance(A, FiniteGroup) and isinstance(B, FiniteGroup):
        return A.size, B.size, [(A.add, B.add, False)], {A.zero: B.zero}
    if isinstance(A, FiniteHeap) and isinstance(B, FiniteHeap):
        return A.size, B.size, [(A.bracket, B.bracket, False)], fixed
    if isinstance(A, FiniteTruss) and isinstance(B, FiniteTruss):
        if A.unit is not None and B.unit is not None:
            fixed[A.unit] = B.unit
        return A.size, B.size, [(A.heap.bracket, B.heap.bracket, False), (A.mul, B.mul, False)], fixed
    if isinstance(A, FiniteRing) and isinstance(B, FiniteRing):
        fixed[A.zero] = B.zero
        if A.unit is not None and B.unit is not None:
            fixed[A.unit] = B.unit
        return A.size, B.size, [(A.group.add, B.group.add, False), (A.mul, B.mul, False)], fixed
    from .modules import PointedModule, TrussModule
    from .hom import HeapOfModules

    if isinstance(A, HeapOfModules) and isinstance(B, HeapOfModules):
        return A.size, B.size, [(A.heap.bracket, B.heap.bracket, False), (A.taction, B.taction, True)], fixed
    if isinstance(A, PointedModule) and isinstance(B, PointedModule):
        return A.size, B.size, [(A.group.add, B.group.add, False), (A.action, B.action, True)], {A.group.zero: B.group.zero}
    if isinstance(A, TrussModule) and isinstance(B, TrussModule):
        return A.size, B.size, [(A.heap.bracket, B.heap.bracket, False), (A.action, B.action, True)], fixed
    raise TypeError(f"iso_search: unsupported pair {type(A).__name__}, {type(B).__name__}")


def iso_search(A, B, fixed: dict[int, int] | None = None, commute: Sequence[tuple[np.ndarray, np.ndarray]] = ()):
    """Find an isomorphism ``A -> B`` or raise ``NotIsomorphic``.

    ``commute`` holds pairs ``(p_a, p_b)`` of maps out of A and B into a common
    set; the isomorphism must satisfy ``p_b[f(x)] == p_a[x]``.
    """
    from .heap import Morphism, _frozen

    n_a, n_b, ops, forced = structure_ops(A, B)
    if n_a != n_b:
        raise SizeMismatch(f"carriers of size {n_a} and {n_b}")
    forced = dict(forced)
    for x, y in (fixed or {}).items():
        forced[int(x)] = int(y)
    allowed = None
    if commute:
        allowed = np.ones((n_a, n_b), dtype=bool)
        for pa, pb in commute:
            allowed &= np.asarray(pa)[:, None] == np.asarray(pb)[None, :]
    found = find_isomorphisms(n_a, ops, forced, allowed, limit=1)
    if not found:
        raise NotIsomorphic(f"no isomorphism between structures of size {n_a}")
    return Morphism(A, B, _frozen(found[0]), "iso")


def is_isomorphic(A, B, **kw) -> bool:
    try:
        iso_search(A, B, **kw)
        return True
    except (NotIsomorphic, SizeMismatch):
        return False
