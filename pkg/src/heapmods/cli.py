"""Command-line driver: validation, derivations, exactness checks, the acceptance suite and iso_search.

Exit status: 0 on success, 1 when the verdict is false, 2 on error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .dsl import Decl, StructureFile, format_decl, labels_of
from .errors import DeclarationError, HeapmodsError, NotIsomorphic, TableNotTotal
from .exact import barr_sweep, check_exact_at, exactness_transfer, is_barr_exact, is_short_exact
from .fixtures import FIXTURE_FILE, NEGATIVE_SEED, load_fixtures, negative_corpus
from .hom import HeapOfModules, affine_condition, certify_symbolic_hom, to_affine
from .iso import iso_search
from .limits import (
    coequalizer,
    coproduct,
    equalizer,
    hom_quotient,
    product,
    pullback,
    pushout,
    slice_G,
    slice_M,
    verify_colimit,
    verify_coproduct,
    verify_limit,
    with_diagram,
)
from .modules import certify_symbolic_pointed, free_pointed_module
from .suite import COCONE_TARGET_CAP, SuiteOptions, run_suite
from .symbolic import (
    SymbolicGroup,
    certify_ring,
    certify_truss,
    rtu,
    universal_ring,
    unital_truss_extension,
)

DERIVE_TARGETS = ("rt", "rtu", "tu", "free", "quotient", "product", "equalizer", "pullback", "coproduct",
                  "coequalizer", "pushout", "slice-m", "slice-g", "affine")


class UsageError(Exception):
    """A usage problem (unknown name, wrong kind); reported with exit status 2."""


# ---------------------------------------------------------------------------
# corpus access


def open_file(path: str | None) -> tuple[StructureFile, str]:
    """``path`` if it exists; the shipped corpus for ``None`` or the bare shipped file name."""
    if path is None or (not os.path.exists(path) and os.path.basename(path) == FIXTURE_FILE):
        return load_fixtures(), f"<shipped {FIXTURE_FILE}>"
    if not os.path.exists(path):
        raise UsageError(f"no such file: {path}")
    return load_fixtures(path), path


def lookup(sf: StructureFile, name: str, *kinds: str):
    if name not in sf:
        raise UsageError(f"no declaration named {name!r}")
    d = sf.decls[name]
    if kinds and d.kind not in kinds:
        raise UsageError(f"{name!r} is a {d.kind}, expected {' or '.join(kinds)}")
    return d.obj


def element(obj, label: str | None, default: int | None = None) -> int | None:
    if label is None:
        return default
    labels = labels_of(obj)
    if label not in labels:
        raise UsageError(f"{label!r} is not an element of the carrier {list(labels)}")
    return labels.index(label)


def same_truss(sf: StructureFile, M: HeapOfModules) -> list[HeapOfModules]:
    """Fixture heaps of modules over the truss of ``M`` used as cone and cocone objects."""
    return [sf[n] for n in sf.names("hom") if sf[n].truss is M.truss and sf[n].size <= COCONE_TARGET_CAP]


# ---------------------------------------------------------------------------
# dumps


def group_dump(G: SymbolicGroup) -> dict:
    gp = G.gpart
    return {
        "carrier": f"{{{' '.join(gp.labels)}}}" + (f" x Z^{G.zdim}" if G.zdim else ""),
        "finite part": [f"{a} + {b} = {gp.labels[gp.add[i, j]]}" for i, a in enumerate(gp.labels)
                        for j, b in enumerate(gp.labels)],
        "zero": G.fmt(G.O[0]),
    }


def ring_dump(R, radius: int | None) -> tuple[dict, bool]:
    cert = certify_ring(R, radius)
    gens = R.group.generators()
    prods = [f"{R.group.fmt(x)} * {R.group.fmt(y)} = {R.group.fmt(R.mul(x[None], y[None])[0])}"
             for x in gens for y in gens]
    d = {"name": R.name, "product": R.descriptor, **group_dump(R.group),
         "unit": None if R.unit is None else R.group.fmt(np.array(R.unit)),
         "generator products": prods, "certificate radius": cert.radius, "certified": cert.ok}
    return d, cert.ok


def truss_dump(S, radius: int | None) -> tuple[dict, bool]:
    cert = certify_truss(S, radius)
    gens = S.group.generators()
    prods = [f"{S.fmt(x)} * {S.fmt(y)} = {S.fmt(S.mul(x[None], y[None])[0])}" for x in gens for y in gens]
    d = {"name": S.name, "product": S.descriptor, **group_dump(S.group),
         "unit": None if S.unit is None else S.fmt(np.array(S.unit)),
         "generator products": prods, "certificate radius": cert.radius, "certified": cert.ok}
    return d, cert.ok


def hom_text(sf: StructureFile, name: str, M: HeapOfModules) -> str:
    return format_decl(sf, Decl("hom", name, M))


def leg_dump(dom, cod, arr) -> str:
    la, lb = labels_of(dom), labels_of(cod)
    return " ".join(f"{la[i]}->{lb[int(v)]}" for i, v in enumerate(np.asarray(arr)))


# ---------------------------------------------------------------------------
# subcommands; each returns (report, verdict)


def cmd_validate(args) -> tuple[dict, bool]:
    try:
        sf, src = open_file(args.file)
    except DeclarationError as e:
        cause = e.cause
        w = getattr(cause, "witness", None) or getattr(cause, "missing", None)
        return {"declaration": e.name, "error": str(cause), "witness": _plain(w)}, False
    decls = [f"{d.kind} {d.name}" + (f" ({len(labels_of(d.obj))} elements)" if _has_labels(d.obj) else "")
             for d in sf.decls.values()]
    rep = {"file": src, "declarations": decls}
    ok = True
    if args.negative:
        rows = []
        for m in negative_corpus(sf, NEGATIVE_SEED if args.seed is None else args.seed):
            err = m.rejection()
            w = None if err is None else (err.missing if isinstance(err, TableNotTotal) else _witness_of(err))
            rows.append(f"{m.fixture} {m.table}{list(m.index)} {m.old}->{m.new}: "
                        + ("rejected, witness " + str(_plain(w)) if err is not None else "ACCEPTED"))
            ok &= err is not None and w is not None
        rep["negative corpus"] = rows
    return rep, ok


def _witness_of(err):
    w = getattr(err, "witness", None)
    if w is None and hasattr(err, "cause"):
        return _witness_of(err.cause)
    return w


def _has_labels(obj) -> bool:
    try:
        labels_of(obj)
        return True
    except Exception:
        return False


def _plain(x):
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.integer):
        return int(x)
    return x


def cmd_derive(args) -> tuple[dict, bool]:
    sf, _ = open_file(args.file)
    t, names = args.target, args.names
    need = {"rt": 1, "rtu": 1, "tu": 1, "free": 1, "affine": 1, "slice-g": 1, "slice-m": 1,
            "equalizer": 2, "pullback": 2, "coequalizer": 2, "pushout": 2}
    if t in need and len(names) != need[t]:
        raise UsageError(f"derive {t} takes {need[t]} name(s)")
    defaults: dict = {}
    if t in ("rt", "rtu", "tu"):
        T = lookup(sf, names[0], "truss")
        o = element(T, args.basepoint, None if T.is_empty else T.heap.basepoint)
        defaults["basepoint"] = None if o is None else T.labels[o]
        if t == "rt":
            d, ok = ring_dump(universal_ring(T, o)[0], args.window)
        elif t == "rtu":
            d, ok = ring_dump(rtu(T, o), args.window)
        else:
            d, ok = truss_dump(unital_truss_extension(T, o)[0], args.window)
        d["name"] = {"rt": "R({})", "rtu": "R({})_u", "tu": "{}_u"}[t].format(names[0])
        return {"defaults": defaults, "result": d}, ok
    if t == "free":
        T = lookup(sf, names[0], "truss")
        F = free_pointed_module(T, unital=args.unital)
        cert = certify_symbolic_pointed(F, args.window)
        d = {"name": F.name, "action": F.descriptor, **group_dump(F.group),
             "basis": [F.fmt(b) for b in F.basis], "certificate radius": cert.radius, "certified": cert.ok}
        return {"defaults": {"unital": args.unital}, "result": d}, cert.ok
    if t == "affine":
        M = lookup(sf, names[0], "hom")
        o = element(M.truss, args.basepoint, None if M.truss.is_empty else M.truss.heap.basepoint)
        N = to_affine(M, o)
        cert = certify_symbolic_hom(N, args.window)
        G = N.truss.group
        lab = M.heap.labels
        rows = []
        for r in G.generators():
            tab = N.table(r[None])[0]
            rows += [f"{G.fmt(r)} |>_{lab[m]} : {' '.join(lab[v] for v in tab[m])}" for m in range(M.size)]
        cond = affine_condition(N)
        d = {"name": N.name, "ring": N.truss.name, "generator actions": rows,
             "ring zero acts as basepoint projection": cond is None, "certificate radius": cert.radius,
             "certified": cert.ok}
        return {"defaults": {"basepoint": None if o is None else M.truss.labels[o]}, "result": d}, \
            cert.ok and cond is None
    if t == "quotient":
        if len(names) < 2:
            raise UsageError("derive quotient takes a heap of modules and the elements of a sub-heap of modules")
        M = lookup(sf, names[0], "hom")
        c = hom_quotient(M, [element(M, x) for x in names[1:]])
        return _finite_construction(sf, c, f"{names[0]}_quotient", verify_colimit, [], same_truss(sf, M))
    if t in ("product", "coproduct"):
        fam = [lookup(sf, n, "hom") for n in names]
        if t == "product":
            if not fam:
                raise UsageError("the empty product needs at least one named object (use its truss)")
            c = product(fam, fam[0].truss)
            return _finite_construction(sf, c, "product", verify_limit, [], same_truss(sf, fam[0]))
        if not fam:
            raise UsageError("derive coproduct takes at least one heap of modules")
        mode = "isotropic" if args.isotropic else "full"
        cop = coproduct(fam, mode=mode)
        rep = verify_coproduct(cop, same_truss(sf, fam[0]), radius=args.window)
        d = {"mode": mode, "i0": cop.i0, "basepoints": {names[i]: fam[i].heap.labels[e] for i, e in cop.basepoints.items()}}
        if cop.module is not None:
            d.update({"name": cop.module.name, "action": cop.module.descriptor, **group_dump(cop.module.group)})
            d["legs"] = [f"{names[i]}: " + " ".join(f"{M.heap.labels[x]}->{cop.module.fmt(r)}"
                                                     for x, r in enumerate(cop.legs[i](np.arange(M.size))))
                         for i, M in enumerate(fam)]
        d["universal property"] = {"checks": rep.checked, "ok": rep.ok}
        return {"defaults": {"mode": mode, "i0": cop.i0}, "result": d}, rep.ok
    if t in ("equalizer", "pullback", "coequalizer", "pushout"):
        f, g = (lookup(sf, n, "morphism") for n in names)
        if not (isinstance(f.dom, HeapOfModules) and isinstance(g.dom, HeapOfModules)):
            raise UsageError("constructions act on morphisms of heaps of modules")
        cache: dict = {}
        if t == "equalizer":
            return _finite_construction(sf, equalizer(f, g), "equalizer", verify_limit, [], same_truss(sf, f.dom), cache)
        if t == "pullback":
            return _finite_construction(sf, pullback(f, g), "pullback", verify_limit, [], same_truss(sf, f.dom), cache)
        e = element(f.dom, args.basepoint, 0)
        if t == "coequalizer":
            c = with_diagram(coequalizer(f, g, e), f, g)
        else:
            c = with_diagram(pushout(f, g, e), f, g)
            if not hasattr(c, "obj"):
                raise UsageError("pushout over an empty object is a coproduct; use derive coproduct")
        return _finite_construction(sf, c, t, verify_colimit, [("e", f.dom.heap.labels[e] if f.dom.size else None)],
                                    same_truss(sf, f.dom), cache)
    # slices
    M = lookup(sf, names[0], "hom")
    e = element(M, args.basepoint, 0)
    mode = "isotropic" if args.isotropic else "full"
    S = slice_G(M, e, mode)
    defaults = {"basepoint": M.heap.labels[e] if M.size else None, "mode": mode}
    if t == "slice-g":
        if S.is_zero:
            return {"defaults": defaults, "result": {"zero object": True}}, True
        cert = certify_symbolic_pointed(S.module, args.window)
        gens = S.module.group.generators()
        d = {"name": S.module.name, "action": S.module.descriptor, **group_dump(S.module.group),
             "target": S.target.name,
             "projection on generators": [f"{S.module.fmt(x)} -> {S.target.fmt(S.proj(x[None])[0])}" for x in gens],
             "unit": " ".join(f"{M.heap.labels[x]}->{S.module.fmt(r)}"
                              for x, r in enumerate(S.meta["zeta"](np.arange(M.size)))),
             "certified": cert.ok}
        return {"defaults": defaults, "result": d}, cert.ok
    back, fib = slice_M(S)
    try:
        iso = iso_search(M, back)
        found = leg_dump(M, back, iso.map)
    except NotIsomorphic:
        found = None
    d = {"dump": hom_text(sf, f"{names[0]}_slice", back), "isomorphism from the original": found}
    return {"defaults": defaults, "result": d}, found is not None


def _finite_construction(sf, c, name, verify, defaults, objs, cache=None):
    rep = verify(c, objs, cache if cache is not None else {})
    d = {"shape": c.shape, "dump": hom_text(sf, name, c.obj)}
    srcs = c.meta.get("diagram", ())
    legs = []
    for i, leg in enumerate(c.legs):
        if verify is verify_limit:
            cod = _leg_cod(c, i)
            legs.append(f"leg {i}: " + leg_dump(c.obj, cod, leg) if cod is not None else f"leg {i}")
        else:
            dom = _leg_dom(c, i, srcs)
            legs.append(f"leg {i}: " + leg_dump(dom, c.obj, leg) if dom is not None else f"leg {i}")
    d["legs"] = legs
    d["universal property"] = {"objects": len(objs), "checks": rep.checked, "ok": rep.ok}
    return {"defaults": dict(defaults), "result": d}, rep.ok


def _leg_cod(c, i):
    diag = c.meta.get("diagram", ())
    if c.shape == "product":
        return diag[i]
    if c.shape == "equalizer":
        return diag[0].dom
    if c.shape in ("pullback", "kernel pair"):
        return diag[i].dom if len(diag) > 1 else diag[0].dom
    return None


def _leg_dom(c, i, diag):
    if c.shape == "quotient":
        return diag[0]
    if c.shape == "coequalizer":
        return diag[0].cod
    if c.shape == "pushout":
        return diag[i].cod
    return None


def cmd_check_exact(args) -> tuple[dict, bool]:
    sf, _ = open_file(args.file)
    if len(args.names) == 1:
        maps = list(lookup(sf, args.names[0], "sequence"))
    else:
        maps = [lookup(sf, n, "morphism") for n in args.names]
    for a, b in zip(maps, maps[1:]):
        if a.cod is not b.dom:
            raise UsageError("maps are not composable")
    rows, ok = [], True
    for k, (f, g) in enumerate(zip(maps, maps[1:])):
        ex = check_exact_at(f, g)
        ok &= ex.exact
        P = g.cod
        row = {"position": k + 1, "exact": ex.exact, "witnesses": [P.heap.labels[w] for w in ex.witnesses]}
        if ex.note:
            row["note"] = ex.note
        if len(maps) == 2:
            row["short exact"] = is_short_exact(f, g)
        if f.dom.size and P.size:
            if args.all_basepoints:
                reps = [exactness_transfer(f, g, a, b, c) for a in range(f.dom.size)
                        for b in range(f.cod.size) for c in range(P.size)]
            else:
                o = element(P, args.basepoint, ex.witness if ex.exact else 0)
                reps = [exactness_transfer(f, g, 0, 0, o)]
            row["transfer"] = [f"(oM,oN,oP)={r.basepoints}: heap {r.heap_exact}, module {r.module_exact}"
                               + ("" if r.agree else " DISAGREE") for r in reps]
            row["transfer agrees"] = all(r.agree for r in reps)
            if ex.exact:
                row["basepoint route"] = bool(reps[0].route_ok)
        rows.append(row)
    return {"defaults": {"all basepoints": args.all_basepoints}, "result": rows}, ok


def cmd_check_barr(args) -> tuple[dict, bool]:
    sf, _ = open_file(args.file)
    fork = lookup(sf, args.fork, "fork")
    barr = is_barr_exact(fork)
    sweep = barr_sweep(fork)
    if not args.all_basepoints:
        o = element(fork.N, args.basepoint, 0)
        sweep = [r for r in sweep if r.o == o]
    lab = fork.N.heap.labels
    rows = [f"o={lab[r.o]}: sequence exact at h(o) {r.exact_at_ho}, (f,g) injective {r.fg_injective}, "
            f"h_o surjective {r.ho_surjective} -> {r.sequence}" + ("" if r.agree else " DISAGREE") for r in sweep]
    d = {"kernel pair": barr.kernel_pair, "coequalizer": barr.coequalizer, "barr exact": barr.exact,
         "per basepoint": rows, "equivalence holds": all(r.agree for r in sweep)}
    return {"defaults": {"all basepoints": args.all_basepoints}, "result": d}, barr.exact


def cmd_verify_suite(args) -> tuple[dict, bool]:
    sf, src = open_file(args.file)
    which = "all" if args.which == "all" else [int(x) for x in args.which.split(",")]
    opts = SuiteOptions.from_seed(args.seed)
    results = run_suite(sf, which, opts)
    d = {"file": src, "seeds": {"negative corpus": opts.negative_seed, "oracle": opts.oracle_seed},
         "criteria": [r.as_dict() for r in results], "lines": [r.line(timing=False) for r in results]}
    return d, all(r.ok for r in results)


def cmd_iso_search(args) -> tuple[dict, bool]:
    sf, _ = open_file(args.file)
    A, B = lookup(sf, args.a), lookup(sf, args.b)
    try:
        iso = iso_search(A, B)
    except NotIsomorphic as e:
        return {"isomorphic": False, "reason": str(e)}, False
    return {"isomorphic": True, "map": leg_dump(A, B, iso.map)}, True


# ---------------------------------------------------------------------------
# argument parsing and rendering


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--window", type=int, default=None, help="verification radius (default: derived)")
    common.add_argument("--seed", type=int, default=None, help="seed for sampled corpora")
    common.add_argument("--basepoint", default=None, help="basepoint label")
    common.add_argument("-f", "--file", default=None, help="structure file (default: shipped fixtures)")

    p = argparse.ArgumentParser(prog="heapmods", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("validate", parents=[common], help="parse and validate a structure file")
    v.add_argument("path", nargs="?", default=None)
    v.add_argument("--negative", action="store_true", help="also run the seeded negative corpus")
    d = sub.add_parser("derive", parents=[common], help="derive a construction")
    d.add_argument("target", choices=DERIVE_TARGETS)
    d.add_argument("names", nargs="*")
    d.add_argument("--unital", action="store_true", help="free module over the unital extension")
    d.add_argument("--isotropic", action="store_true", help="isotropic mode for coproducts and slices")
    e = sub.add_parser("check-exact", parents=[common], help="exactness of a sequence or of two maps")
    e.add_argument("names", nargs="+")
    e.add_argument("--all-basepoints", action="store_true")
    b = sub.add_parser("check-barr", parents=[common], help="Barr exactness of a fork")
    b.add_argument("fork")
    b.add_argument("--all-basepoints", action="store_true")
    s = sub.add_parser("verify-suite", parents=[common], help="run acceptance criteria")
    s.add_argument("which", help="'all' or a comma-separated list of criterion numbers")
    s.add_argument("path", nargs="?", default=None)
    i = sub.add_parser("iso-search", parents=[common], help="find an isomorphism between two declarations")
    i.add_argument("a")
    i.add_argument("b")
    return p


COMMANDS = {"validate": cmd_validate, "derive": cmd_derive, "check-exact": cmd_check_exact,
            "check-barr": cmd_check_barr, "verify-suite": cmd_verify_suite, "iso-search": cmd_iso_search}


def render_text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    out = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if k == "dump":
                out.append(f"{pad}{k}:")
                out += [f"{pad}  {ln}" for ln in v.splitlines()]
            elif isinstance(v, (dict, list)):
                out.append(f"{pad}{k}:")
                out += render_text(v, indent + 1)
            else:
                out.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                out.append(f"{pad}-")
                out += render_text(v, indent + 1)
            else:
                out.append(f"{pad}- {_scalar(v)}")
    else:
        out.append(f"{pad}{_scalar(obj)}")
    return out


def _scalar(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    if getattr(args, "path", None) is not None:
        args.file = args.path
    report: dict = {"command": " ".join(argv)}
    try:
        body, verdict = COMMANDS[args.command](args)
    except (UsageError, HeapmodsError, ValueError) as e:
        report.update({"error": type(e).__name__, "message": str(e)})
        _emit(report, args.json, sys.stderr if not args.json else sys.stdout)
        return 2
    report.update(body)
    report["verdict"] = bool(verdict)
    _emit(report, args.json, sys.stdout)
    return 0 if verdict else 1


def _emit(report: dict, as_json: bool, stream) -> None:
    if as_json:
        stream.write(json.dumps(_plain_tree(report), indent=2, ensure_ascii=False) + "\n")
    else:
        stream.write("\n".join(render_text(report)) + "\n")


def _plain_tree(x):
    if isinstance(x, dict):
        return {str(k): _plain_tree(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain_tree(v) for v in x]
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


if __name__ == "__main__":
    sys.exit(main())
