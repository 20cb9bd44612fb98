"""Command-line entry point: ``oaent <verb> ...``.

Exit codes: 0 success, 1 domain error, 2 budget exceeded.  ``--json``
switches every verb to machine-readable output (errors included).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import numpy as np

from .cone import (Budget, BudgetExceeded, NonexistenceCertificate, build_constraints, decompose,
                   export_basis, hilbert_basis, lattice_point_matrix, prove_nonexistence,
                   verify_conjecture)
from .oa import (CoefficientVector, OrthogonalArray, format_oa, generalized_resolution, index,
                 is_irredundant, j_characteristic, parse_oa, read_oa, strength)

__all__ = ["main", "build_parser"]


def _levels(text: str) -> tuple[int, ...]:
    try:
        out = tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad levels {text!r}; expected e.g. 2,2,2")
    if not out or any(d < 2 for d in out):
        raise argparse.ArgumentTypeError("every alphabet needs at least 2 symbols")
    return out


def _columns(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x != "")


def _budget(args) -> Budget:
    return Budget(max_seconds=args.budget, max_elements=None)


def _emit(args, doc, text: str):
    if args.json:
        print(json.dumps(doc, indent=1, sort_keys=False))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _read_state(path):
    """A state file (JSON) or an array file; returns a PureState."""
    from .quantum.states import PureState, state_from_oa

    text = sys.stdin.read() if path == "-" else open(path).read()
    if text.lstrip().startswith("{"):
        return PureState.from_json(text)
    return state_from_oa(parse_oa(text))


# ---------------------------------------------------------------- verbs

def cmd_verify(args):
    oa = read_oa(args.file)
    t = strength(oa)
    try:
        lam = str(index(oa, t))
    except ValueError:
        lam = "mixed"
    irr = is_irredundant(oa, t)
    gr = generalized_resolution(oa)
    doc = {"runs": oa.r, "levels": list(oa.levels), "strength": t, "index": lam,
           "irredundant": irr, "gr": str(gr)}
    _emit(args, doc, f"strength={t} index={lam} irredundant(k={t})={str(irr).lower()} gr={gr}")


def cmd_jchar(args):
    oa = read_oa(args.file)
    J = j_characteristic(oa, args.columns)
    doc = {"columns": list(args.columns), "J": str(J.exact), "value": J.value}
    _emit(args, doc, f"J{list(args.columns)}={J.exact} (~{J.value:.12g})")


def cmd_gr(args):
    oa = read_oa(args.file)
    rep = generalized_resolution(oa)
    doc = {"t": rep.t, "j_max": None if rep.j_max is None else str(rep.j_max), "gr": str(rep),
           "perms": None if rep.perms is None else [list(p) for p in rep.perms]}
    _emit(args, doc, f"gr={rep}" + ("" if rep.unbounded else f" t={rep.t} jmax={rep.j_max}"))


def cmd_hilbert(args):
    system = build_constraints(args.levels, args.strength)
    basis = hilbert_basis(system, _budget(args), method=args.method)
    written = export_basis(basis, args.out) if args.out else []
    doc = basis.to_json()
    doc["files"] = written
    lines = [f"{len(basis)} generators for levels={','.join(map(str, args.levels))} k={args.strength}"
             f" ({basis.seconds:.2f}s)"]
    for i, (g, r) in enumerate(zip(basis.matrix, basis.runs_per_generator), start=1):
        lines.append(f"{i:4d}  r={r:<3d} {' '.join(map(str, g))}")
    if written:
        lines.append(f"wrote {len(written) - 1} generator files to {args.out}")
    _emit(args, doc, "\n".join(lines))


def cmd_enumerate(args):
    system = build_constraints(args.levels, args.strength)
    P = lattice_point_matrix(system, args.rmax, budget=_budget(args))
    doc = {"levels": list(args.levels), "k": args.strength, "r_max": args.rmax,
           "points": P.tolist()}
    lines = [f"{len(P)} arrays with at most {args.rmax} runs"]
    lines += [f"r={int(row.sum()):<3d} {' '.join(map(str, row))}" for row in P]
    _emit(args, doc, "\n".join(lines))


def cmd_decompose(args):
    oa = read_oa(args.file)
    k = args.strength if args.strength is not None else strength(oa)
    basis = hilbert_basis(build_constraints(oa.levels, k), _budget(args))
    parts = decompose(oa, basis)
    doc = {"k": k, "terms": [{"generator": i + 1, "multiplicity": m} for i, m in parts]}
    text = " + ".join(f"{m}*g{i + 1}" if m > 1 else f"g{i + 1}" for i, m in parts)
    _emit(args, doc, f"k={k}: {text}")


def cmd_nonexist(args):
    res = prove_nonexistence(args.runs, args.levels, args.strength, _budget(args))
    if isinstance(res, NonexistenceCertificate):
        doc = {"exists": False, "reason": res.reason, "min_runs": res.min_runs,
               "generator_runs": sorted(set(res.generator_runs)), "verified": res.check()}
        _emit(args, doc, f"no OA({args.runs}, {','.join(map(str, args.levels))}, {args.strength}):"
                         f" {res.reason} (min runs {res.min_runs})")
    else:
        doc = {"exists": True, "witness": [list(u) for u in res.runs]}
        _emit(args, doc, "exists; witness:\n" + format_oa(res))


def cmd_conjecture(args):
    Ns = range(args.min, args.max + 1)
    out = []
    lines = []
    ok = True
    for N in Ns:
        tr = verify_conjecture(N, _budget(args))
        out.append(tr.to_json())
        ok &= tr.holds
        lines.append(f"N={N}: {'holds' if tr.holds else 'FAILS'} ({len(tr.basis)} generators,"
                     f" content {tr.content}, {tr.status})")
    _emit(args, {"all_hold": ok, "transcripts": out}, "\n".join(lines))
    return 0 if ok else 1


def cmd_state(args):
    from .quantum.states import format_ket, state_from_oa

    oa = read_oa(args.file)
    s = state_from_oa(oa)
    _emit(args, s.to_json(), format_ket(s))


def cmd_invariants(args):
    from .quantum.density import mean_bipartite_entropy, single_site_purities, uniformity

    s = _read_state(args.file)
    if s.levels == (2, 2, 2):
        from .quantum.invariants3 import sudbery_invariants

        doc = sudbery_invariants(s).to_json()
    elif s.levels == (2, 2, 2, 2):
        from .quantum.invariants4 import four_qubit_invariants

        doc = four_qubit_invariants(s).to_json()
    else:
        doc = {}
    doc["purities"] = [str(p) for p in single_site_purities(s)]
    doc["uniformity"] = uniformity(s)
    ent = mean_bipartite_entropy(s)
    doc["mean_entropy"] = ent.value
    doc["mean_entropy_error"] = ent.error
    _emit(args, doc, "\n".join(f"{k}: {v}" for k, v in doc.items()))


def cmd_iso(args):
    from .iso import isomorphism

    a, b = read_oa(args.a), read_oa(args.b)
    res = isomorphism(a, b, use_filters=not args.no_filters)
    text = (f"isomorphic: columns={list(res.witness.columns)} symbols={[list(s) for s in res.witness.symbols]}"
            if res.isomorphic else f"not isomorphic (decided by {res.decided_by})")
    _emit(args, res.to_json(), text)


def cmd_classify(args):
    from .classify import classify_full, classify_generators

    if args.full or args.deep:
        rmax = args.rmax
        if rmax is None:
            rmax = int(np.prod(args.levels))
        cat = classify_full(args.levels, args.strength, rmax, _budget(args), threads=args.threads,
                            checkpoint=args.checkpoint)
    else:
        cat = classify_generators(args.levels, args.strength, _budget(args))
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(cat.to_json(), fh, indent=1)
    _emit(args, cat.to_json(), cat.table())


def _appendix_a(args):
    docs, lines = {}, []
    for levels, ks in (((2, 2), (1,)), ((2, 2, 2), (1, 2)), ((2, 2, 2, 2), (1, 2, 3))):
        for k in ks:
            basis = hilbert_basis(build_constraints(levels, k), _budget(args))
            key = f"{len(levels)},{levels[0]},{k}"
            docs[key] = basis.to_json()
            if args.out:
                export_basis(basis, os.path.join(args.out, f"g_{len(levels)}_{levels[0]}_{k}"))
            lines.append(f"# OA({len(levels)},2,{k}): {len(basis)} generators")
            for i, oa in enumerate(basis.arrays, start=1):
                lines.append(f"OA({len(levels)},2,{k})[{i}]  r={oa.r}: "
                             + " ".join("".join(map(str, u)) for u in oa.runs))
    return docs, "\n".join(lines)


def _appendix_b(args):
    from .quantum.invariants4 import four_qubit_invariants
    from .quantum.states import state_from_oa

    docs, lines = {}, []
    for k in (1, 2, 3):
        basis = hilbert_basis(build_constraints((2, 2, 2, 2), k), _budget(args))
        for i, oa in enumerate(basis.arrays, start=1):
            rec = four_qubit_invariants(state_from_oa(oa))
            docs[f"4,{k},{i}"] = rec.to_json()
            lines.append(f"{{4,{k},{i}}}  Delta={rec.Delta} H={rec.H} L={rec.L} M={rec.M} "
                         f"D_xy={rec.D_xy} S={rec.S} T={rec.T} S1={rec.S1} S2={rec.S2} S3={rec.S3}")
    return docs, "\n".join(lines)


def cmd_catalog(args):
    if not (args.appendix_a or args.appendix_b):
        raise ValueError("choose --appendix-a and/or --appendix-b")
    doc, parts = {}, []
    if args.appendix_a:
        d, t = _appendix_a(args)
        doc["appendix_a"] = d
        parts.append(t)
    if args.appendix_b:
        d, t = _appendix_b(args)
        doc["appendix_b"] = d
        parts.append(t)
    _emit(args, doc, "\n".join(parts))


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized steps")
    common.add_argument("--threads", type=int, default=1, help="worker cap")
    common.add_argument("--budget", type=float, default=None, help="time budget in seconds")

    p = argparse.ArgumentParser(prog="oaent", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    def cone_args(sp):
        sp.add_argument("--levels", type=_levels, required=True, help="alphabet sizes, e.g. 2,2,3")
        sp.add_argument("--strength", type=int, required=True)

    sp = verb("verify", cmd_verify, "strength, index, irredundancy and GR of an array file")
    sp.add_argument("file")
    sp = verb("jchar", cmd_jchar, "J-characteristic of a column set")
    sp.add_argument("file")
    sp.add_argument("--columns", type=_columns, required=True)
    sp = verb("gr", cmd_gr, "generalized resolution")
    sp.add_argument("file")
    sp = verb("hilbert", cmd_hilbert, "generating arrays of the cone")
    cone_args(sp)
    sp.add_argument("--out", help="directory for basis.json and generator files")
    sp.add_argument("--method", default="project-and-lift", choices=["project-and-lift", "contejean-devie"])
    sp = verb("enumerate", cmd_enumerate, "all arrays up to a run count")
    cone_args(sp)
    sp.add_argument("--rmax", type=int, required=True)
    sp = verb("decompose", cmd_decompose, "write an array as a sum of generators")
    sp.add_argument("file")
    sp.add_argument("--strength", type=int, default=None)
    sp = verb("nonexist", cmd_nonexist, "existence witness or nonexistence certificate")
    cone_args(sp)
    sp.add_argument("--runs", type=int, required=True)
    sp = verb("conjecture", cmd_conjecture, "two-generator conjecture for strength N-1 qubits")
    sp.add_argument("--min", type=int, default=2)
    sp.add_argument("--max", type=int, default=8)
    sp = verb("state", cmd_state, "array-based state of an array file")
    sp.add_argument("file")
    sp = verb("invariants", cmd_invariants, "exact invariants of an array or state file")
    sp.add_argument("file")
    sp = verb("iso", cmd_iso, "isomorphism test with witness")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--no-filters", action="store_true")
    sp = verb("classify", cmd_classify, "generator or free-operation classes")
    cone_args(sp)
    sp.add_argument("--full", action="store_true", help="classify all arrays, not just generators")
    sp.add_argument("--rmax", type=int, default=None)
    sp.add_argument("--deep", action="store_true", help="full classification up to the full factorial")
    sp.add_argument("--checkpoint", default=None, help="checkpoint file for long runs")
    sp.add_argument("--out", help="write the catalog JSON here")
    sp = verb("catalog", cmd_catalog, "reproduce the generator and invariant tables")
    sp.add_argument("--appendix-a", action="store_true")
    sp.add_argument("--appendix-b", action="store_true")
    sp.add_argument("--out", help="directory for generator files")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = args.func(args)
        return 0 if code is None else code
    except BudgetExceeded as exc:
        if args.json:
            print(json.dumps({"error": "budget", "message": str(exc), "progress": exc.progress}))
        else:
            print(f"budget exceeded: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, KeyError) as exc:
        if args.json:
            print(json.dumps({"error": type(exc).__name__, "message": str(exc)}))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
