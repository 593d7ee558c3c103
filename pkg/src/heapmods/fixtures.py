"""The shipped fixture corpus and its seeded negative (mutated) counterpart.

``build_corpus`` constructs every fixture through the library; the shipped
``fixtures.heap`` is its printed form and ``load_fixtures`` parses it back.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Callable

import numpy as np

from .dsl import StructureFile, dump, load, parse
from .errors import HeapmodsError
from .exact import Fork
from .heap import (
    cyclic_group,
    empty_heap,
    heap_from_group,
    product_group,
    singleton_heap,
    validate_group,
    validate_heap,
)
from .hom import HeapOfModules, functor_H, hom_from_module, hom_morphism, translation_hom, validate_hom
from .limits import kernel_pair, terminal
from .modules import validate_module, validate_pointed
from .truss import empty_truss, ring_Zn, subset_of_ring, truss_from_ring, validate_ring, validate_truss, zero_mul_ring

NEGATIVE_SEED = 20240611
FIXTURE_FILE = "fixtures.heap"


def _relabel(G, labels):
    return validate_group(G.add, G.zero, labels)


def build_corpus() -> StructureFile:
    sf = StructureFile()
    Z = {n: cyclic_group(n) for n in (2, 3, 4, 5, 6, 8, 12)}
    V4, _ = product_group(Z[2], Z[2])
    V4 = _relabel(V4, ["00", "01", "10", "11"])

    for n in (2, 3, 4, 6):
        sf.add("group", f"Z{n}", Z[n])
    sf.add("group", "V4", V4)

    sf.add("heap", "E", empty_heap())
    sf.add("heap", "Star", singleton_heap())
    for n in (2, 3, 4, 5, 6, 8, 12):
        sf.add("heap", f"H{n}", heap_from_group(Z[n]))
    sf.add("heap", "HV4", heap_from_group(V4))
    sf.add("heap", "Habc", validate_heap(heap_from_group(Z[3]).bracket, ["a", "b", "c"], basepoint=1))

    R = {n: ring_Zn(n) for n in (2, 3, 4, 6, 12)}
    sf.add("ring", "R4", R[4])
    sf.add("ring", "R12", R[12])
    sf.add("ring", "V4zero", zero_mul_ring(V4))
    sf.add("ring", "R2x", validate_ring(Z[4], np.array([[(2 * a * b) % 4 for b in range(4)] for a in range(4)])))

    T = {n: truss_from_ring(R[n]) for n in (2, 3, 4, 6, 12)}
    for n in (2, 3, 4, 6, 12):
        sf.add("truss", f"T{n}", T[n])
    T39 = subset_of_ring(R[12], [3, 9], ["3", "9"])
    sf.add("truss", "T39", T39)
    TV4 = truss_from_ring(sf["V4zero"])
    sf.add("truss", "TV4z", TV4)
    Tc = validate_truss(heap_from_group(Z[2]), np.ones((2, 2), dtype=np.intp))
    sf.add("truss", "Tc2", Tc)
    T0 = empty_truss()
    sf.add("truss", "T0", T0)

    # modules without a chosen absorber
    sf.add("module", "M39s", validate_module(T39, heap_from_group(Z[2]), [[1, 0], [0, 1]]))
    sf.add("module", "Mc2", validate_module(Tc, heap_from_group(Z[2]), [[1, 1], [1, 1]]))
    i4 = np.arange(4)
    sf.add("module", "M4a", validate_module(T[4], heap_from_group(Z[4]),
                                            [(t * i4 + (1 - t)) % 4 for t in range(4)]))

    def pointed(name, Tr, G, act):
        return sf.add("pointed", name, validate_pointed(Tr, G, act))

    P4 = pointed("P4", T[4], Z[4], R[4].mul)
    P2 = pointed("P2", T[4], Z[2], [[(t * x) % 2 for x in range(2)] for t in range(4)])
    P4z = pointed("P4z", T[4], Z[4], np.zeros((4, 4), dtype=np.intp))
    Pstar = pointed("Pstar", T[4], cyclic_group(1), np.zeros((4, 1), dtype=np.intp))
    P2r = pointed("P2r", T[2], Z[2], R[2].mul)
    P3r = pointed("P3r", T[3], Z[3], R[3].mul)
    P6r = pointed("P6r", T[6], Z[6], R[6].mul)
    P39 = pointed("P39", T39, Z[4], [[(-x) % 4 for x in range(4)], list(range(4))])
    pointed("PV4", TV4, V4, np.zeros((4, 4), dtype=np.intp))
    pointed("P0", T0, Z[2], np.zeros((0, 2), dtype=np.intp))

    Hstar = sf.add("hom", "Hstar", terminal(T[4]))
    H2m = sf.add("hom", "H2m", functor_H(P2))
    H4m = sf.add("hom", "H4m", functor_H(P4))
    sf.add("hom", "H4z", functor_H(P4z))
    sf.add("hom", "H2r", functor_H(P2r))
    sf.add("hom", "H3m", functor_H(P3r))
    sf.add("hom", "H6m", functor_H(P6r))
    sf.add("hom", "H39", functor_H(P39))
    sf.add("hom", "HM39", hom_from_module(sf["M39s"]))
    sf.add("hom", "HM4a", hom_from_module(sf["M4a"]))
    sf.add("hom", "H0", validate_hom(T0, heap_from_group(Z[3]), np.zeros((0, 3, 3))))
    del Pstar

    red = sf.add("morphism", "red", hom_morphism(H4m, H2m, np.arange(4) % 2))
    dbl = sf.add("morphism", "dbl", hom_morphism(H2m, H4m, [0, 2]))
    id4 = sf.add("morphism", "id4", hom_morphism(H4m, H4m, np.arange(4)))
    id2 = sf.add("morphism", "id2", hom_morphism(H2m, H2m, np.arange(2)))
    ids = sf.add("morphism", "idstar", hom_morphism(Hstar, Hstar, [0]))
    sf.add("morphism", "tau02", translation_hom(H4m, 0, 2))
    sf.add("morphism", "bang4", hom_morphism(H4m, Hstar, np.zeros(4, dtype=np.intp)))
    sf.add("morphism", "pt2", hom_morphism(Hstar, H2m, [0]))
    kp = kernel_pair(red)
    KP = sf.add("hom", "KP", kp.obj)
    k1 = sf.add("morphism", "kp1", hom_morphism(KP, H4m, kp.legs[0]))
    k2 = sf.add("morphism", "kp2", hom_morphism(KP, H4m, kp.legs[1]))

    sf.add("fork", "fork_kp", Fork(k1, k2, red, "fork_kp"))
    sf.add("fork", "fork_id", Fork(id4, id4, id4, "fork_id"))
    sf.add("fork", "fork_star", Fork(ids, ids, ids, "fork_star"))
    sf.add("fork", "fork_idred", Fork(id4, id4, red, "fork_idred"))
    sf.add("fork", "fork_dbl", Fork(id2, id2, dbl, "fork_dbl"))
    sf.add("fork", "fork_kp_swap", Fork(k1, k1, red, "fork_kp_swap"))

    sf.add("sequence", "seq_main", (dbl, red))
    sf.add("sequence", "seq_star", (ids, ids))
    sf.add("sequence", "seq_ids", (id4, id4))
    return sf


def fixture_text() -> str:
    return dump(build_corpus())


def load_fixtures(path=None) -> StructureFile:
    """Parse the shipped corpus (or ``path``)."""
    if path is not None:
        return load(path)
    return parse(resources.files("heapmods").joinpath(FIXTURE_FILE).read_text(encoding="utf-8"))


def write_fixture_file(path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(fixture_text())


# ---------------------------------------------------------------------------
# negative corpus


@dataclass(frozen=True)
class Mutant:
    """One table entry of fixture ``fixture`` changed from ``old`` to ``new``."""

    fixture: str
    kind: str
    table: str
    index: tuple
    old: int
    new: int
    rebuild: Callable[[], object]

    def validate(self):
        return self.rebuild()

    def rejection(self) -> HeapmodsError | None:
        """The error raised by validation, or None when the mutant is (wrongly) accepted."""
        try:
            self.rebuild()
        except HeapmodsError as e:
            return e
        return None


def _tables(kind: str, obj) -> dict[str, tuple[np.ndarray, int]]:
    """Mutable tables of a fixture and the size of their value range."""
    if kind == "group":
        return {"add": (obj.add, obj.size)}
    if kind == "heap":
        return {"bracket": (obj.bracket, obj.size)}
    if kind == "ring":
        return {"add": (obj.group.add, obj.size), "mul": (obj.mul, obj.size)}
    if kind == "truss":
        return {"bracket": (obj.heap.bracket, obj.size), "mul": (obj.mul, obj.size)}
    if kind == "module":
        return {"bracket": (obj.heap.bracket, obj.size), "act": (obj.action, obj.size)}
    if kind == "pointed":
        return {"add": (obj.group.add, obj.size), "act": (obj.action, obj.size)}
    if kind == "hom":
        return {"bracket": (obj.heap.bracket, obj.size), "act": (obj.taction, obj.size)}
    if kind == "morphism":
        return {"map": (obj.map, obj.cod.size)}
    return {}


def _rebuilder(kind: str, obj, table: str, arr: np.ndarray) -> Callable[[], object]:
    from .dsl import make_morphism

    if kind == "group":
        return lambda: validate_group(arr, obj.zero, obj.labels)
    if kind == "heap":
        return lambda: validate_heap(arr, obj.labels, obj.basepoint)
    if kind == "ring":
        if table == "add":
            return lambda: validate_ring(validate_group(arr, obj.zero, obj.labels), obj.mul, obj.unit)
        return lambda: validate_ring(obj.group, arr, obj.unit)
    if kind == "truss":
        if table == "bracket":
            return lambda: validate_truss(validate_heap(arr, obj.labels, obj.heap.basepoint), obj.mul, obj.unit)
        return lambda: validate_truss(obj.heap, arr, obj.unit)
    if kind == "module":
        if table == "bracket":
            return lambda: validate_module(obj.truss, validate_heap(arr, obj.heap.labels), obj.action)
        return lambda: validate_module(obj.truss, obj.heap, arr)
    if kind == "pointed":
        if table == "add":
            return lambda: validate_pointed(obj.truss, validate_group(arr, obj.group.zero, obj.group.labels),
                                            obj.action)
        return lambda: validate_pointed(obj.truss, obj.group, arr)
    if kind == "hom":
        if table == "bracket":
            return lambda: validate_hom(obj.truss, validate_heap(arr, obj.heap.labels), obj.taction)
        return lambda: validate_hom(obj.truss, obj.heap, arr)
    return lambda: make_morphism(obj.dom, obj.cod, arr)


def negative_corpus(sf: StructureFile, seed: int = NEGATIVE_SEED, attempts: int = 64) -> list[Mutant]:
    """One mutant per fixture with at least one table entry.

    Entries are drawn with a seeded generator; a draw that still validates is
    redrawn. When the value range has a single element, or every draw stays
    valid, the new value lies outside the carrier.
    """
    rng = np.random.default_rng(seed)
    out = []
    for name in sf.names():
        d = sf.decls[name]
        tables = {k: v for k, v in _tables(d.kind, d.obj).items() if v[0].size}
        if not tables:
            continue
        keys = ["act"] if d.kind == "hom" and "act" in tables else sorted(tables)
        chosen = None
        for _ in range(attempts):
            key = keys[int(rng.integers(len(keys)))]
            arr, size = tables[key]
            idx = tuple(int(rng.integers(s)) for s in arr.shape)
            old = int(arr[idx])
            new = int((old + 1 + rng.integers(size - 1)) % size) if size > 1 else size
            mut = np.array(arr, dtype=np.intp)
            mut[idx] = new
            m = Mutant(name, d.kind, key, idx, old, new, _rebuilder(d.kind, d.obj, key, mut))
            if m.rejection() is not None:
                chosen = m
                break
        if chosen is None:
            # every draw stayed valid (e.g. maps out of a one- or two-element object)
            mut = np.array(arr, dtype=np.intp)
            mut[idx] = size
            chosen = Mutant(name, d.kind, key, idx, old, size, _rebuilder(d.kind, d.obj, key, mut))
        out.append(chosen)
    return out


def homs_over(sf: StructureFile, truss_name: str, max_size: int | None = None) -> list[str]:
    T = sf[truss_name]
    return [n for n in sf.names("hom")
            if sf[n].truss is T and (max_size is None or sf[n].size <= max_size)]


def is_hom(obj) -> bool:
    return isinstance(obj, HeapOfModules)
