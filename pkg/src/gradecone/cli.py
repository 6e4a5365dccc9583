"""Command-line front end.

Exit codes: 0 success, PASS, PASS-ON-WINDOW or VACUOUS; 1 usage or input
errors; 2 NOT-APPLICABLE; 3 FAIL.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Sequence

from . import __version__
from .groebner import buchberger, normal_form
from .koszul import check_LM_homology_vanishing, depth_via_koszul, GradedModuleSource, graded_module, \
    koszul_homology, certified_top_degree
from .graded import QuotientModule
from .local import (
    LocalInstance,
    SuperficialSearchError,
    find_superficial,
    find_superficial_sequence,
    loewy_length,
    resolve_seed,
)
from .parser import ParseError
from .resolution import betti_table, homological_invariants
from .ring import ORDERS, field_from_spec
from .theorems import KINDS, THEOREMS, generate_corpus, run_check, run_corpus, summarize

EXIT_OK, EXIT_USAGE, EXIT_NA, EXIT_FAIL = 0, 1, 2, 3
VERDICT_EXIT = {"PASS": EXIT_OK, "PASS-ON-WINDOW": EXIT_OK, "VACUOUS": EXIT_OK,
                "NOT-APPLICABLE": EXIT_NA, "FAIL": EXIT_FAIL}


class UsageError(Exception):
    pass


def _window(text: str):
    try:
        a, b = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError("window must look like A:B") from None
    if a < 1 or b < a:
        raise argparse.ArgumentTypeError("window needs 1 <= A <= B")
    return (a, b)


def _field(text: str):
    try:
        return field_from_spec(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--seed", type=int, default=None, help="random seed (default $GRADECONE_SEED or 0)")
    common.add_argument("--field", type=_field, default=None, help="override the field: fp:<p> or q")
    common.add_argument("--cutoff", type=int, default=15, help="L(M) truncation degree")
    common.add_argument("--window", type=_window, default=(2, 12), help="superficiality window A:B")
    common.add_argument("--trials", type=int, default=20, help="random superficial candidates")
    common.add_argument("--stages", type=int, default=6, help="finite-stage resolution length")
    common.add_argument("--declare-cx", type=int, default=None, dest="declare_cx")

    p = argparse.ArgumentParser(prog="gradecone", description="Resolutions, tangent cones and Koszul homology.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, help_text, with_file=True):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        if with_file:
            sp.add_argument("instance", help="instance JSON file")
        return sp

    g = cmd("gb", "reduced Gröbner basis of the ideal")
    g.add_argument("--order", choices=sorted(ORDERS), default="grevlex")
    n = cmd("nf", "normal form of a polynomial modulo the ideal")
    n.add_argument("--order", choices=sorted(ORDERS), default="grevlex")
    n.add_argument("--poly", required=True)
    cmd("res", "minimal graded resolution of G(M)")
    cmd("betti", "Betti table of G(M)")
    cmd("hilbert", "Hilbert series data of G(M)")
    cmd("tc", "tangent cone (initial-form ideal)")
    k = cmd("koszul", "Koszul homology on the variables, or on L(M) with --lm")
    k.add_argument("--lm", action="store_true", help="truncated L(M) homology on a superficial sequence")
    cmd("depth", "depth, dimension and the Cohen-Macaulay test")
    cmd("superficial", "search a superficial linear form")
    cmd("loewy", "Loewy length of a finite-length quotient")
    c = cmd("check", "run a theorem checker", with_file=False)
    c.add_argument("theorem", choices=THEOREMS)
    c.add_argument("instance")
    cp = cmd("corpus", "generate a seeded corpus and optionally check it", with_file=False)
    cp.add_argument("--kind", choices=KINDS, required=True)
    cp.add_argument("--nvars", type=int, default=2)
    cp.add_argument("--max-degree", type=int, default=5, dest="max_degree")
    cp.add_argument("--count", type=int, default=10)
    cp.add_argument("--check", choices=THEOREMS, default=None)
    cp.add_argument("--workers", type=int, default=1)
    return p


# --------------------------------------------------------------------------
# subcommands; each returns (exit code, json payload, text)
# --------------------------------------------------------------------------

def _load(args) -> LocalInstance:
    return LocalInstance.from_file(args.instance, args.field)


def _indent(lines: Sequence[str], pad: str = "  ") -> List[str]:
    return [pad + s for s in lines]


def do_gb(args):
    inst = _load(args)
    if not inst.ideal:
        polys = []
    else:
        polys = buchberger(inst.ideal, ORDERS[args.order]).polys
    out = [str(p) for p in polys]
    return EXIT_OK, {"order": args.order, "basis": out}, "\n".join(out) + ("\n" if out else "")


def do_nf(args):
    inst = _load(args)
    f = inst.ring.parse(args.poly)
    if inst.ideal:
        r = normal_form(f.change_ring(inst.ring.with_order(ORDERS[args.order])),
                        buchberger(inst.ideal, ORDERS[args.order]))
    else:
        r = f
    return EXIT_OK, {"order": args.order, "input": str(f), "normal_form": str(r)}, f"{r}\n"


def do_res(args):
    inst = _load(args)
    res = inst.graded_resolution
    lines = ["twists:"] + _indent([f"{i}: " + " ".join(str(t) for t in tw) for i, tw in enumerate(res.twists())])
    maps = []
    for k in range(1, res.length + 1):
        rows = [[str(e) for e in row] for row in res.matrix(k)]
        maps.append(rows)
        lines.append(f"d{k}:")
        lines.extend(_indent(["[" + ", ".join(r) + "]" for r in rows]))
    data = {"tangent_cone": [str(p) for p in inst.tangent_cone.polys], "twists": res.twists(), "maps": maps}
    return EXIT_OK, data, "\n".join(lines) + "\n"


def do_betti(args):
    bt = betti_table(_load(args).graded_resolution)
    return EXIT_OK, bt.to_json(), bt.render()


def do_hilbert(args):
    H = _load(args).hilbert
    data = H.to_json()
    data["hilbert_function"] = H.hilbert_function(10)
    text = "\n".join([
        "h_poly: " + " ".join(str(c) for c in H.h_poly),
        f"dim: {H.dim}",
        "e: " + " ".join(str(c) for c in H.e),
        f"mu: {H.mu}",
        "hilbert_function: " + " ".join(str(c) for c in data["hilbert_function"]),
    ]) + "\n"
    return EXIT_OK, data, text


def do_tc(args):
    polys = [str(p) for p in _load(args).tangent_cone.polys]
    return EXIT_OK, {"tangent_cone": polys}, "\n".join(polys) + ("\n" if polys else "")


def do_koszul(args):
    inst = _load(args)
    if args.lm:
        seq = find_superficial_sequence(inst, inst.dim, args.trials, args.window, args.seed) if inst.dim else []
        rep = check_LM_homology_vanishing(inst, [s.form for s in seq], cutoff=args.cutoff, window=args.window)
        data = rep.to_json()
        data["seed"] = resolve_seed(args.seed)
        lines = [f"verdict: {rep.verdict}"]
        for part in rep.parts:
            lines.append(f"{part['claim']} on {', '.join(part['elements'])}; tail window "
                         f"{part['tail_window'][0]}..{part['tail_window'][1]}")
            top = part["tail_window"][1]
            for row in part["indices"]:
                last = row["last_nonzero"]
                lines.append(f"  H_{row['i']}: " + (f"zero in degrees 0..{top}" if last is None
                                                    else f"last nonzero degree {last}"))
        return VERDICT_EXIT[rep.verdict], data, "\n".join(lines) + "\n"
    if inst.is_homogeneous:
        module = graded_module(inst.ideal, inst.ring) if inst.ideal else QuotientModule(inst.ring, (0,))
        hi = certified_top_degree(module)
        H = koszul_homology(GradedModuleSource(module, inst.ring.gens()), (0, hi))
        rows = {}
        for (i, n), v in sorted(H.dims.items()):
            if v:
                rows.setdefault(i, []).append((n, v))
        lines = [f"H_{i}: " + " ".join(f"{n}:{v}" for n, v in r) for i, r in sorted(rows.items())]
        return EXIT_OK, {"graded": True, **H.to_json()}, "\n".join(lines) + "\n"
    tor = inst.tor_dims
    lines = [f"H_{i}: {v}" for i, v in enumerate(tor) if v]
    return EXIT_OK, {"graded": False, "dims": tor}, "\n".join(lines) + "\n"


def do_depth(args):
    inst = _load(args)
    d = depth_via_koszul(inst)
    bt = betti_table(inst.graded_resolution)
    g = homological_invariants(bt, inst.dim, inst.nvars)
    data = {"depth": d.depth, "dim": inst.dim, "cohen_macaulay": d.depth == inst.dim,
            "method": d.method, "G(M)": g.to_json()}
    text = (f"depth: {d.depth}\ndim: {inst.dim}\ncohen_macaulay: {str(d.depth == inst.dim).lower()}\n"
            f"G(M) depth: {g.depth}\nG(M) cohen_macaulay: {str(g.is_CM).lower()}\n")
    return EXIT_OK, data, text


def do_superficial(args):
    res = find_superficial(_load(args), args.trials, args.window, args.seed)
    data = res.to_json()
    return EXIT_OK, data, f"{res.form}\nwindow: {res.window[0]}:{res.window[1]}\nseed: {res.seed}\n"


def do_loewy(args):
    ll = loewy_length(_load(args))
    return EXIT_OK, {"loewy_length": ll}, f"{ll}\n"


def _report_text(rep: dict) -> str:
    lines = [f"theorem: {rep['theorem']}", f"verdict: {rep['verdict']}", "hypotheses:"]
    for h in rep["hypotheses"]:
        lines.append(f"  {h['name']}: {str(h['holds']).lower()}")
    inv = rep["invariants"]
    keys = [k for k in ("e0", "e1", "mu", "reg_G(A)", "c", "s", "cx", "cx_label", "alpha",
                        "e0_bound", "e1_bound") if k in inv]
    if keys:
        lines.append("invariants:")
        lines.extend(f"  {k}: {inv[k]}" for k in keys)
    if "G(M)" in inv:
        g = inv["G(M)"]
        lines.append(f"  G(M): pd {g['pd']}, depth {g['depth']}, dim {g['dim']}, reg {g['reg']}, "
                     f"cohen_macaulay {str(g['is_CM']).lower()}")
    for n in rep["notes"]:
        lines.append(f"note: {n}")
    if "betti_text" in inv:
        lines.append("betti:")
        lines.extend(_indent(inv["betti_text"].splitlines()))
    return "\n".join(lines) + "\n"


def do_check(args):
    inst = _load(args)
    rep = run_check(args.theorem, inst, args.seed, declared_cx=args.declare_cx, stages=args.stages).to_json()
    return VERDICT_EXIT[rep["verdict"]], rep, _report_text(rep)


def do_corpus(args):
    seed = resolve_seed(args.seed)
    spec = args.field.spec if args.field is not None else "fp:32003"
    insts = generate_corpus(args.nvars, args.max_degree, args.count, args.kind, seed, spec)
    data = {"kind": args.kind, "nvars": args.nvars, "max_degree": args.max_degree, "count": args.count,
            "seed": seed}
    if args.check is None:
        data["instances"] = [i.to_json() for i in insts]
        text = "\n".join(json.dumps(i.to_json(), sort_keys=True) for i in insts) + "\n"
        return EXIT_OK, data, text
    reports = run_corpus(args.check, insts, seed, args.workers,
                         declared_cx=args.declare_cx, stages=args.stages)
    summary = summarize(reports)
    data.update({"check": args.check, "summary": summary,
                 "verdicts": [r["verdict"] for r in reports]})
    v = summary["verdicts"]
    text = (f"theorem: {args.check}\ninstances: {summary['count']}\n"
            + "".join(f"{k}: {v[k]}\n" for k in ("PASS", "FAIL", "VACUOUS", "NOT-APPLICABLE")))
    return (EXIT_FAIL if v["FAIL"] else EXIT_OK), data, text


COMMANDS = {"gb": do_gb, "nf": do_nf, "res": do_res, "betti": do_betti, "hilbert": do_hilbert, "tc": do_tc,
            "koszul": do_koszul, "depth": do_depth, "superficial": do_superficial, "loewy": do_loewy,
            "check": do_check, "corpus": do_corpus}


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        code, data, text = COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"gradecone: parse error in {exc.text!r}: {exc}", file=stderr)
        return EXIT_USAGE
    except (json.JSONDecodeError, OSError, ValueError, SuperficialSearchError) as exc:
        print(f"gradecone: {exc}", file=stderr)
        return EXIT_USAGE
    if args.json:
        stdout.write(json.dumps(data, indent=2, ensure_ascii=False) + "\n")
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
