"""Line-oriented text format for finite structures and morphisms.

A file is a list of declarations ``KIND NAME { statement; ... }``. Statements
end at ``;`` or at a line break. Tables are given one row per statement, with
the row key before ``:`` and one value per carrier element after it::

    truss T39 {
      carrier 3 9
      bracket 3 3 : 3 9
      ...
      mul 3 : 9 3
      mul 9 : 3 9
    }

``#`` starts a comment. Element names are arbitrary tokens without whitespace
or any of ``{ } ; : #``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .errors import DeclarationError, DslSyntaxError, HeapmodsError, NotAMorphism, TableNotTotal, UnresolvedReference
from .heap import FiniteGroup, FiniteHeap, heap_from_group, heap_morphism, is_group_hom, validate_group, validate_heap
from .hom import HeapOfModules, hom_morphism, validate_hom
from .modules import PointedModule, TrussModule, module_morphism, pointed_morphism, validate_module, validate_pointed
from .truss import FiniteRing, FiniteTruss, find_unit, truss_from_ring, truss_morphism, validate_ring, validate_truss

KINDS = ("group", "heap", "ring", "truss", "module", "pointed", "hom", "morphism", "fork", "sequence")
_TOKEN = re.compile(r"[{};:]|[^\s{};:#]+")


@dataclass(frozen=True)
class Tok:
    text: str
    line: int
    col: int


@dataclass
class Stmt:
    key: Tok
    head: list[Tok]  # tokens before ':' (or all tokens when there is no ':')
    values: list[Tok] | None  # tokens after ':'


@dataclass
class Decl:
    kind: str
    name: str
    obj: object
    refs: dict[str, object] = field(default_factory=dict)
    line: int = 0


@dataclass
class StructureFile:
    decls: dict[str, Decl] = field(default_factory=dict)

    def __getitem__(self, name: str):
        return self.decls[name].obj

    def __contains__(self, name: str) -> bool:
        return name in self.decls

    def names(self, kind: str | None = None) -> list[str]:
        return [n for n, d in self.decls.items() if kind is None or d.kind == kind]

    def add(self, kind: str, name: str, obj, **refs) -> object:
        if kind not in KINDS:
            raise ValueError(f"unknown kind {kind!r}")
        if name in self.decls:
            raise ValueError(f"duplicate declaration {name!r}")
        self.decls[name] = Decl(kind, name, obj, refs)
        return obj

    def name_of(self, obj) -> str:
        for n, d in self.decls.items():
            if d.obj is obj:
                return n
        raise UnresolvedReference(f"<unnamed {type(obj).__name__}>")


# ---------------------------------------------------------------------------
# Lexing and block structure


def _tokenize(text: str) -> list[list[Tok]]:
    lines = []
    for ln, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        lines.append([Tok(m.group(), ln, m.start() + 1) for m in _TOKEN.finditer(body)])
    return lines


def _blocks(text: str) -> list[tuple[Tok, Tok, list[Stmt]]]:
    out = []
    state = "top"
    hdr: list[Tok] = []
    stmts: list[Stmt] = []
    cur: list[Tok] = []
    last = Tok("", 1, 1)

    def flush():
        if not cur:
            return
        key = cur[0]
        if key.text == ":":
            raise DslSyntaxError("statement starts with ':'", key.line, key.col)
        rest = cur[1:]
        colons = [i for i, t in enumerate(rest) if t.text == ":"]
        if len(colons) > 1:
            t = rest[colons[1]]
            raise DslSyntaxError("more than one ':' in a statement", t.line, t.col)
        if colons:
            stmts.append(Stmt(key, rest[: colons[0]], rest[colons[0] + 1:]))
        else:
            stmts.append(Stmt(key, rest, None))
        cur.clear()

    for toks in _tokenize(text):
        for t in toks:
            last = t
            if state == "top":
                if t.text in "{};:":
                    raise DslSyntaxError(f"expected a declaration kind, got {t.text!r}", t.line, t.col)
                if t.text not in KINDS:
                    raise DslSyntaxError(f"unknown declaration kind {t.text!r}", t.line, t.col)
                hdr = [t]
                state = "name"
            elif state == "name":
                if t.text in "{};:":
                    raise DslSyntaxError("expected a declaration name", t.line, t.col)
                hdr.append(t)
                state = "open"
            elif state == "open":
                if t.text != "{":
                    raise DslSyntaxError("expected '{'", t.line, t.col)
                stmts = []
                state = "body"
            else:
                if t.text == "{":
                    raise DslSyntaxError("unexpected '{'", t.line, t.col)
                if t.text == "}":
                    flush()
                    out.append((hdr[0], hdr[1], stmts))
                    state = "top"
                elif t.text == ";":
                    flush()
                else:
                    cur.append(t)
        if state == "body":
            flush()
    if state != "top":
        raise DslSyntaxError("unexpected end of input (missing '}')", last.line, last.col + len(last.text))
    return out


# ---------------------------------------------------------------------------
# Materialization


class _Body:
    """Statements of one declaration, grouped by key, with usage tracking."""

    def __init__(self, kind: Tok, name: Tok, stmts: list[Stmt], allowed: set[str]):
        self.kind, self.name = kind.text, name.text
        self.at = kind
        self.by: dict[str, list[Stmt]] = {}
        for s in stmts:
            if s.key.text not in allowed:
                raise DslSyntaxError(f"{s.key.text!r} is not allowed in a {self.kind} declaration",
                                     s.key.line, s.key.col)
            self.by.setdefault(s.key.text, []).append(s)

    def has(self, key: str) -> bool:
        return key in self.by

    def single(self, key: str, required: bool = True) -> Stmt | None:
        ss = self.by.get(key, [])
        if len(ss) > 1:
            raise DslSyntaxError(f"{key!r} given more than once", ss[1].key.line, ss[1].key.col)
        if not ss:
            if required:
                raise DslSyntaxError(f"{self.kind} {self.name!r} needs a {key!r} statement", self.at.line, self.at.col)
            return None
        s = ss[0]
        if s.values is not None:
            raise DslSyntaxError(f"{key!r} takes no ':'", s.key.line, s.key.col)
        return s

    def word(self, key: str, required: bool = True) -> Tok | None:
        s = self.single(key, required)
        if s is None:
            return None
        if len(s.head) != 1:
            raise DslSyntaxError(f"{key!r} takes exactly one argument", s.key.line, s.key.col)
        return s.head[0]

    def table(self, key: str, row_sets: list[tuple[str, ...]], values: tuple[str, ...]) -> np.ndarray:
        shape = tuple(len(r) for r in row_sets) + (len(values),)
        out = np.full(shape, -1, dtype=np.intp)
        seen = set()
        for s in self.by.get(key, []):
            if s.values is None:
                raise DslSyntaxError(f"{key!r} row needs ':'", s.key.line, s.key.col)
            if len(s.head) != len(row_sets):
                raise DslSyntaxError(f"{key!r} row needs {len(row_sets)} key(s) before ':'", s.key.line, s.key.col)
            idx = tuple(_lookup(t, labels) for t, labels in zip(s.head, row_sets))
            if idx in seen:
                raise DslSyntaxError(f"duplicate {key!r} row", s.key.line, s.key.col)
            seen.add(idx)
            if len(s.values) > len(values):
                t = s.values[len(values)]
                raise DslSyntaxError(f"too many entries in {key!r} row", t.line, t.col)
            if len(s.values) < len(values):
                raise TableNotTotal(self.name, (key, *(t.text for t in s.head), values[len(s.values)]))
            out[idx] = [_lookup(t, values) for t in s.values]
        if out.size:
            miss = np.argwhere(out == -1)
            if len(miss):
                m = miss[0]
                names = [row_sets[i][j] for i, j in enumerate(m[:-1])]
                raise TableNotTotal(self.name, (key, *names))
        return out


def _lookup(t: Tok, labels: tuple[str, ...]) -> int:
    try:
        return labels.index(t.text)
    except ValueError:
        raise UnresolvedReference(t.text, t.line, t.col) from None


def _ref(sf: StructureFile, t: Tok, kinds: tuple[str, ...]):
    d = sf.decls.get(t.text)
    if d is None or d.kind not in kinds:
        raise UnresolvedReference(t.text, t.line, t.col)
    return d.obj


def _carrier(b: _Body) -> tuple[str, ...]:
    s = b.single("carrier")
    labels = tuple(t.text for t in s.head)
    if len(set(labels)) != len(labels):
        raise DslSyntaxError("duplicate element in carrier", s.key.line, s.key.col)
    return labels


def _element(b: _Body, key: str, labels: tuple[str, ...]) -> int | None:
    t = b.word(key, required=False)
    return None if t is None else _lookup(t, labels)


def _unit(b: _Body, carrier, mul: np.ndarray) -> int | None:
    """The declared unit, or the unique two-sided unit of ``mul`` when none is declared."""
    u = _element(b, "unit", carrier.labels)
    return find_unit(carrier, mul) if u is None else u


def _inline_group(b: _Body) -> FiniteGroup:
    labels = _carrier(b)
    add = b.table("add", [labels], labels)
    return validate_group(add, _element(b, "zero", labels), labels)


def _inline_heap(b: _Body) -> FiniteHeap:
    labels = _carrier(b)
    br = b.table("bracket", [labels, labels], labels)
    return validate_heap(br, labels, _element(b, "basepoint", labels))


def _group_of(b: _Body, sf: StructureFile) -> FiniteGroup:
    if b.has("group"):
        return _ref(sf, b.word("group"), ("group",))
    return _inline_group(b)


def _heap_of(b: _Body, sf: StructureFile) -> FiniteHeap:
    if b.has("heap"):
        return _ref(sf, b.word("heap"), ("heap",))
    if b.has("group") and not b.has("carrier"):
        return heap_from_group(_ref(sf, b.word("group"), ("group",)))
    return _inline_heap(b)


def _build(sf: StructureFile, kind: Tok, name: Tok, stmts: list[Stmt]) -> Decl:
    k = kind.text
    refs: dict[str, object] = {}
    if k == "group":
        b = _Body(kind, name, stmts, {"carrier", "add", "zero"})
        obj = _inline_group(b)
    elif k == "heap":
        b = _Body(kind, name, stmts, {"carrier", "bracket", "basepoint", "group"})
        obj = _heap_of(b, sf)
    elif k == "ring":
        b = _Body(kind, name, stmts, {"group", "carrier", "add", "zero", "mul", "unit"})
        G = _group_of(b, sf)
        mul = b.table("mul", [G.labels], G.labels)
        obj = validate_ring(G, mul, _unit(b, G, mul))
    elif k == "truss":
        b = _Body(kind, name, stmts, {"ring", "heap", "group", "carrier", "bracket", "basepoint", "mul", "unit"})
        if b.has("ring"):
            obj = truss_from_ring(_ref(sf, b.word("ring"), ("ring",)))
        else:
            H = _heap_of(b, sf)
            mul = b.table("mul", [H.labels], H.labels)
            obj = validate_truss(H, mul, _unit(b, H, mul))
    elif k in ("module", "pointed", "hom"):
        allowed = {"truss", "act", "carrier"} | ({"add", "zero", "group"} if k == "pointed"
                                                  else {"bracket", "basepoint", "heap", "group"})
        b = _Body(kind, name, stmts, allowed)
        T = _ref(sf, b.word("truss"), ("truss",))
        refs["truss"] = T
        if k == "pointed":
            G = _group_of(b, sf)
            obj = validate_pointed(T, G, b.table("act", [T.labels], G.labels))
        elif k == "module":
            H = _heap_of(b, sf)
            obj = validate_module(T, H, b.table("act", [T.labels], H.labels))
        else:
            H = _heap_of(b, sf)
            obj = validate_hom(T, H, b.table("act", [T.labels, H.labels], H.labels))
    elif k == "morphism":
        b = _Body(kind, name, stmts, {"from", "to", "map"})
        A = _ref(sf, b.word("from"), KINDS[:7])
        B = _ref(sf, b.word("to"), KINDS[:7])
        s = b.single("map")
        la, lb = labels_of(A), labels_of(B)
        if len(s.head) != len(la):
            t = s.head[len(la)] if len(s.head) > len(la) else s.key
            if len(s.head) < len(la):
                raise TableNotTotal(name.text, ("map", la[len(s.head)]))
            raise DslSyntaxError("too many entries in 'map'", t.line, t.col)
        f = np.array([_lookup(t, lb) for t in s.head], dtype=np.intp)
        obj = make_morphism(A, B, f)
        refs.update({"from": A, "to": B})
    elif k == "fork":
        from .exact import Fork

        b = _Body(kind, name, stmts, {"f", "g", "h"})
        maps = [_ref(sf, b.word(x), ("morphism",)) for x in "fgh"]
        obj = Fork(*maps, name=name.text)
        _check_fork(obj, name.text)
    else:  # sequence
        b = _Body(kind, name, stmts, {"maps"})
        s = b.single("maps")
        if len(s.head) < 2:
            raise DslSyntaxError("a sequence needs at least two maps", s.key.line, s.key.col)
        obj = tuple(_ref(sf, t, ("morphism",)) for t in s.head)
        for a, c in zip(obj, obj[1:]):
            if a.cod is not c.dom:
                raise DeclarationError(name.text, ValueError("maps are not composable"))
    return Decl(k, name.text, obj, refs, kind.line)


def _check_fork(fork, name: str) -> None:
    f, g, h = fork.f, fork.g, fork.h
    if f.dom is not g.dom or f.cod is not g.cod or h.dom is not f.cod:
        raise DeclarationError(name, ValueError("not a fork: need f, g : M -> N and h : N -> P"))


def labels_of(obj) -> tuple[str, ...]:
    if isinstance(obj, (FiniteGroup, FiniteHeap, FiniteTruss, FiniteRing)):
        return obj.labels
    if isinstance(obj, PointedModule):
        return obj.group.labels
    if isinstance(obj, (TrussModule, HeapOfModules)):
        return obj.heap.labels
    raise TypeError(f"no carrier for {type(obj).__name__}")


def make_morphism(A, B, f):
    """Validate ``f`` as a morphism of the kind shared by ``A`` and ``B``."""
    if type(A) is not type(B):
        raise NotAMorphism((), f"{type(A).__name__} -> {type(B).__name__}")
    if isinstance(A, HeapOfModules):
        return hom_morphism(A, B, f)
    if isinstance(A, PointedModule):
        return pointed_morphism(A, B, f)
    if isinstance(A, TrussModule):
        return module_morphism(A, B, f)
    if isinstance(A, FiniteTruss):
        return truss_morphism(A, B, f)
    if isinstance(A, FiniteHeap):
        return heap_morphism(A, B, f)
    if isinstance(A, FiniteRing):
        A, B = A.group, B.group
    w = is_group_hom(A, B, f)
    if w is not None:
        raise NotAMorphism(w, "group")
    from .heap import Morphism

    return Morphism(A, B, np.asarray(f, dtype=np.intp), "group")


def parse(text: str) -> StructureFile:
    """Parse and validate; errors carry line and column where a token is involved."""
    sf = StructureFile()
    for kind, name, stmts in _blocks(text):
        if name.text in sf:
            raise DslSyntaxError(f"duplicate declaration {name.text!r}", name.line, name.col)
        try:
            d = _build(sf, kind, name, stmts)
        except (DslSyntaxError, UnresolvedReference, TableNotTotal, DeclarationError):
            raise
        except HeapmodsError as e:
            raise DeclarationError(name.text, e) from e
        sf.decls[d.name] = d
    return sf


def load(path) -> StructureFile:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


# ---------------------------------------------------------------------------
# Printing


def _rows(key: str, table: np.ndarray, row_sets: list[tuple[str, ...]], values: tuple[str, ...]) -> list[str]:
    out = []
    for idx in np.ndindex(*table.shape[:-1]):
        keys = " ".join(row_sets[i][j] for i, j in enumerate(idx))
        vals = " ".join(values[v] for v in table[idx])
        out.append(f"  {key} {keys} : {vals}".rstrip())
    return out


def _heap_lines(H: FiniteHeap) -> list[str]:
    lines = [f"  carrier {' '.join(H.labels)}".rstrip()]
    lines += _rows("bracket", H.bracket, [H.labels, H.labels], H.labels)
    if H.basepoint not in (None, 0):
        lines.append(f"  basepoint {H.labels[H.basepoint]}")
    return lines


def _group_lines(G: FiniteGroup) -> list[str]:
    lines = [f"  carrier {' '.join(G.labels)}"]
    lines += _rows("add", G.add, [G.labels], G.labels)
    lines.append(f"  zero {G.labels[G.zero]}")
    return lines


def format_decl(sf: StructureFile, d: Decl) -> str:
    o = d.obj
    if d.kind == "group":
        body = _group_lines(o)
    elif d.kind == "heap":
        body = _heap_lines(o)
    elif d.kind == "ring":
        body = _group_lines(o.group) + _rows("mul", o.mul, [o.labels], o.labels)
        if o.unit is not None:
            body.append(f"  unit {o.labels[o.unit]}")
    elif d.kind == "truss":
        body = _heap_lines(o.heap) + _rows("mul", o.mul, [o.labels], o.labels)
        if o.unit is not None:
            body.append(f"  unit {o.labels[o.unit]}")
    elif d.kind in ("module", "pointed", "hom"):
        T = o.truss
        body = [f"  truss {sf.name_of(T)}"]
        if d.kind == "pointed":
            body += _group_lines(o.group) + _rows("act", o.action, [T.labels], o.group.labels)
        elif d.kind == "module":
            body += _heap_lines(o.heap) + _rows("act", o.action, [T.labels], o.heap.labels)
        else:
            body += _heap_lines(o.heap) + _rows("act", o.taction, [T.labels, o.heap.labels], o.heap.labels)
    elif d.kind == "morphism":
        lb = labels_of(o.cod)
        body = [f"  from {sf.name_of(o.dom)}", f"  to {sf.name_of(o.cod)}",
                f"  map {' '.join(lb[v] for v in o.map)}".rstrip()]
    elif d.kind == "fork":
        body = [f"  {x} {sf.name_of(getattr(o, x))}" for x in "fgh"]
    else:
        body = [f"  maps {' '.join(sf.name_of(m) for m in o)}"]
    return "\n".join([f"{d.kind} {d.name} {{", *body, "}"])


def dump(sf: StructureFile) -> str:
    return "\n\n".join(format_decl(sf, d) for d in sf.decls.values()) + "\n"


def same_structure(a, b) -> bool:
    """Table-for-table equality of two materialized declarations."""
    if type(a) is not type(b):
        return False
    if isinstance(a, tuple):
        return len(a) == len(b) and all(same_structure(x, y) for x, y in zip(a, b))
    if hasattr(a, "f") and hasattr(a, "h"):
        return all(same_structure(getattr(a, x), getattr(b, x)) for x in "fgh")
    if hasattr(a, "map") and hasattr(a, "dom"):
        return (np.array_equal(a.map, b.map) and same_structure(a.dom, b.dom)
                and same_structure(a.cod, b.cod))
    for fld in ("labels", "basepoint", "zero", "unit"):
        if getattr(a, fld, None) != getattr(b, fld, None):
            return False
    for fld in ("bracket", "add", "mul", "action", "taction"):
        x, y = getattr(a, fld, None), getattr(b, fld, None)
        if (x is None) != (y is None) or (x is not None and not np.array_equal(x, y)):
            return False
    for fld in ("heap", "group", "truss"):
        x, y = getattr(a, fld, None), getattr(b, fld, None)
        if (x is None) != (y is None) or (x is not None and not same_structure(x, y)):
            return False
    return True
