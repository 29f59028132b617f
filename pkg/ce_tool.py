#!/usr/bin/env python3
"""
ce_tool.py

Command line for Chekanov-Eliashberg algebras of singular Legendrians.

Stages read one JSON document (file argument, URL or stdin) and write one
to stdout, so they chain:

    python ce_tool.py build theta 3 | python ce_tool.py ce --stopped | python ce_tool.py minimal-model --both
    python ce_tool.py build a_n 3 | python ce_tool.py ce --stopped | python ce_tool.py d2check
    python ce_tool.py example pinched-figure-eight --verify
    python ce_tool.py example all --verify --report out/report.html

Exit codes: 0 all checks passed, 1 a verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import logging
import os
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from ainfty import AInfinityAlgebra, compare_models, model_to_json, transfer
from boundary_algebra import (
    MarkedSurface,
    attach_handles,
    closed_form_minimal_model,
    internal_dga,
    null_homotopic_pieces,
    surface_from_json,
    surface_to_json,
)
from front_diagram import (
    FAMILIES,
    FrontDiagram,
    build,
    compute_maslov,
    front_from_json,
    front_to_json,
    open_at,
    reflect,
    resolve_at,
)
from lagrangian_dga import (
    assemble,
    assembly_summary,
    diagram_to_json,
    disks_to_json,
    ng_resolve,
    planar_map,
)
from quiver_dga import (
    QuiverDGA,
    TruncationPolicy,
    build_complex,
    check_d_squared,
    cohomology,
    dga_from_json,
    dga_to_json,
    hh0_truncated,
    remove_exact_generator,
)
from registry import REGISTRY, RunOptions, check_surgery_bijection, verify_all
from reports import (
    DocumentError,
    dumps,
    make_document,
    read_document,
    summary_lines,
    write_json,
    write_report,
)

LOG = logging.getLogger("ce_tool")


# =========================
# Settings
# =========================
DEFAULT_WINDING = 2
DEFAULT_LENGTH = 8
DEFAULT_ARITY = 6

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_BAD_INPUT = 2


def env_salt() -> int:
    raw = os.environ.get("CE_SEED", "").strip()
    if not raw:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise DocumentError(f"CE_SEED must be an integer, got {raw!r}")


class VerificationFailed(Exception):
    def __init__(self, first: str, doc: Optional[Dict[str, Any]] = None):
        super().__init__(first)
        self.first = first
        self.doc = doc


# =========================
# Helper Functions
# =========================
def parse_degrees(text: str) -> tuple:
    m = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text or "")
    if not m:
        raise argparse.ArgumentTypeError(f"degree window must look like a..b, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty degree window {lo}..{hi}")
    return lo, hi


def truncation(args: argparse.Namespace, **extra: Any) -> Dict[str, Any]:
    out = {"max_winding": args.winding, "max_length": args.length, "arity": args.arity, "salt": env_salt()}
    out.update(extra)
    return out


def weight_policy(args: argparse.Namespace, window: Optional[tuple] = None) -> TruncationPolicy:
    """--length bounds the word weight; d lowers weight, so the truncation is a subcomplex."""
    return TruncationPolicy(max_weight=Fraction(args.length), degree_window=window)


def emit(args: argparse.Namespace, doc: Dict[str, Any], human: Sequence[str] = ()) -> None:
    """Pipeline stages always write JSON; reports only with --json (or -o)."""
    if args.output:
        write_json(Path(args.output), doc)
        print(f"📄 wrote {args.output}", file=sys.stderr)
    elif args.json or not human:
        print(dumps(doc))
    if human and not args.json:
        for line in human:
            print(line)


def load_front(args: argparse.Namespace) -> FrontDiagram:
    doc = read_document(args.input, expect=("front",))
    return front_from_json(doc.get("front", doc))


def load_dga(args: argparse.Namespace) -> Dict[str, Any]:
    """A dga document; a front is assembled on the fly with the command's mode and winding."""
    doc = read_document(args.input, expect=("dga", "front"))
    if doc["kind"] == "front":
        f = front_from_json(doc.get("front", doc))
        mode = "stopped" if getattr(args, "stopped", False) else default_mode(f)
        asm = assemble(f, mode, args.winding, name=f.name)
        return dga_document(asm.dga, asm.surface, asm.mode, asm.max_winding, args)
    if "dga" not in doc:
        raise DocumentError("dga document has no 'dga' entry")
    return doc


def load_surface(args: argparse.Namespace, source: Optional[str] = None) -> MarkedSurface:
    doc = read_document(source if source is not None else args.input, expect=("surface", "dga"))
    if doc["kind"] == "dga":
        if not doc.get("surface"):
            raise DocumentError("this dga document carries no vertex surface")
        return surface_from_json(doc["surface"])
    return surface_from_json(doc.get("surface", doc))


def default_mode(f: FrontDiagram) -> str:
    return "full" if f.singularities() else "crossings"


def front_document(f: FrontDiagram) -> Dict[str, Any]:
    return make_document("front", {"front": front_to_json(f)})


def dga_document(dga: QuiverDGA, surface: Optional[MarkedSurface], mode: str, winding: int,
                 args: argparse.Namespace, **extra: Any) -> Dict[str, Any]:
    return make_document(
        "dga",
        {
            "dga": dga_to_json(dga),
            "surface": surface_to_json(surface) if surface is not None else None,
            "mode": mode,
            "max_winding": winding,
        },
        truncation(args, max_winding=winding),
        **extra,
    )


# =========================
# Front stages
# =========================
def cmd_build(args: argparse.Namespace) -> int:
    f = build(args.family, *args.params)
    print(f"🧵 built {f.name}: {len(f.events)} events", file=sys.stderr)
    emit(args, front_document(f))
    return EXIT_OK


def cmd_open(args: argparse.Namespace) -> int:
    f = load_front(args)
    ids = args.singularities or sorted(f.singularities())
    emit(args, front_document(open_at(f, ids)))
    return EXIT_OK


def cmd_resolve(args: argparse.Namespace) -> int:
    f = load_front(args)
    ids = args.singularities or sorted(f.singularities())
    emit(args, front_document(resolve_at(f, ids)))
    return EXIT_OK


def cmd_reflect(args: argparse.Namespace) -> int:
    emit(args, front_document(reflect(load_front(args))))
    return EXIT_OK


def cmd_ng(args: argparse.Namespace) -> int:
    f = load_front(args)
    lag = ng_resolve(f)
    m = compute_maslov(f)
    doc = make_document("lagrangian", {"diagram": diagram_to_json(lag), "maslov": m.by_component(),
                                       "underdetermined": list(m.underdetermined)})
    emit(args, doc)
    return EXIT_OK


def cmd_ce(args: argparse.Namespace) -> int:
    f = load_front(args)
    mode = "stopped" if args.stopped else "crossings" if args.crossings else default_mode(f)
    asm = assemble(f, mode, args.winding, name=f.name)
    if args.emit_disks:
        write_json(Path(args.emit_disks), make_document(
            "lagrangian", {"diagram": diagram_to_json(asm.diagram), "disks": disks_to_json(asm.disks, planar_map(asm.diagram))},
            truncation(args, max_winding=asm.max_winding)))
        print(f"📄 disk certificates in {args.emit_disks}", file=sys.stderr)
    summary = assembly_summary(asm)
    if asm.maslov.underdetermined:
        print(f"⚠️  Maslov potential fixed by convention on {asm.maslov.underdetermined}", file=sys.stderr)
    print(f"✅ {asm.dga.name}: {summary['generators']} generators, {summary['disks']} disks", file=sys.stderr)
    emit(args, dga_document(asm.dga, asm.surface, asm.mode, asm.max_winding, args, summary=summary))
    return EXIT_OK


def cmd_internal(args: argparse.Namespace) -> int:
    s = load_surface(args, args.surface)
    dga = internal_dga(s, args.winding, with_d1=not args.no_d1, name="internal")
    emit(args, dga_document(dga, s, "internal", args.winding, args))
    return EXIT_OK


def cmd_remove_exact(args: argparse.Namespace) -> int:
    doc = load_dga(args)
    dga = dga_from_json(doc["dga"])
    g = dga.generators.get(args.generator)
    if g is None:
        raise DocumentError(f"no generator {args.generator!r} in {dga.name or 'dga'}")
    reduced = remove_exact_generator(dga, args.generator, g.source)
    print(f"✂️  removed {args.generator} and vertex {g.source}", file=sys.stderr)
    emit(args, dga_document(reduced, None, doc.get("mode", ""), doc.get("max_winding", args.winding), args))
    return EXIT_OK


# =========================
# Reports
# =========================
def cmd_d2check(args: argparse.Namespace) -> int:
    doc = load_dga(args)
    dga = dga_from_json(doc["dga"])
    report = check_d_squared(dga)
    out = make_document("d2check", {"name": dga.name, **report.as_dict()}, doc.get("meta", {}).get("truncation"))
    if not report.ok:
        if report.residues:
            gid, residue = next(iter(report.residues.items()))
            first = f"d^2({gid}) = {residue!r}"
        else:
            gid, w = report.escapes[0]
            first = f"d({gid}) leaves the truncation through {w}"
        raise VerificationFailed(first, out)
    emit(args, out, [f"✅ d^2 = 0 on all {len(report.checked)} generators of {dga.name or 'dga'}"])
    return EXIT_OK


def cmd_cohomology(args: argparse.Namespace) -> int:
    doc = load_dga(args)
    dga = dga_from_json(doc["dga"])
    policy = weight_policy(args, args.degrees)
    cx = build_complex(dga, policy)
    H = cohomology(cx)
    out = make_document("cohomology", {"name": dga.name, **H.as_dict(), "total": H.total},
                        truncation(args, policy=policy.describe()))
    human = [f"📐 H*({dga.name or 'dga'}) with weight <= {args.length}:"]
    human += [f"   H^{d} = {n}" for d, n in sorted(H.dims.items())]
    emit(args, out, human)
    return EXIT_OK


def closed_form_for(doc: Dict[str, Any], dga: QuiverDGA, args: argparse.Namespace) -> AInfinityAlgebra:
    if not doc.get("surface"):
        raise DocumentError("the closed form needs a vertex surface; run ce --stopped or internal first")
    s = surface_from_json(doc["surface"])
    winding = int(doc.get("max_winding", args.winding))
    internal = internal_dga(s, winding)
    extra = sorted(set(dga.generators) - set(internal.generators))
    if extra:
        raise DocumentError(f"the closed form covers internal algebras only; crossing generators {extra}")
    return closed_form_minimal_model(s, winding, args.length, arity_bound=args.arity)


def cmd_minimal_model(args: argparse.Namespace) -> int:
    doc = load_dga(args)
    dga = dga_from_json(doc["dga"])
    want_closed = args.method in ("closed-form", "both")
    want_transfer = args.method in ("transfer", "both")
    models: Dict[str, AInfinityAlgebra] = {}
    if want_closed:
        models["closed_form"] = closed_form_for(doc, dga, args)
    if want_transfer:
        classes = models["closed_form"].representatives if "closed_form" in models else None
        models["transfer"] = transfer(dga, weight_policy(args), arity_bound=args.arity,
                                      classes=classes, salt=env_salt())
    payload: Dict[str, Any] = {"models": {k: model_to_json(m) for k, m in models.items()}}
    human = []
    for k, m in models.items():
        human.append(f"🧮 {k}: {len(m.basis)} classes, nonzero arities {m.nonzero_arities()}")
    if len(models) == 2:
        gap = compare_models(models["closed_form"], models["transfer"], arity_bound=args.arity)
        payload["agree"] = gap is None
        payload["first_difference"] = None if gap is None else str(gap)
        out = make_document("model", payload, truncation(args))
        if gap is not None:
            raise VerificationFailed(f"closed form and transfer differ at {gap}", out)
        human.append(f"✅ closed form and transfer agree through arity {args.arity}")
    else:
        out = make_document("model", payload, truncation(args))
    emit(args, out, human)
    return EXIT_OK


def cmd_hh0(args: argparse.Namespace) -> int:
    doc = load_dga(args)
    dga = dga_from_json(doc["dga"])
    dims = hh0_truncated(dga, args.length, ignore_differential=args.ignore_differential)
    cumulative = sum(dims.values())
    out = make_document("hh0", {"name": dga.name, "dims": {str(k): v for k, v in dims.items()},
                                "cumulative": cumulative}, truncation(args))
    human = [f"🔁 HH_0({dga.name or 'dga'}) by word length:"]
    human += [f"   length {k}: {v}" for k, v in dims.items()]
    human.append(f"   cumulative: {cumulative}")
    emit(args, out, human)
    return EXIT_OK


def cmd_surgery_check(args: argparse.Namespace) -> int:
    s = load_surface(args)
    bad = null_homotopic_pieces(s)
    problems = check_surgery_bijection(s, args.passes, args.length)
    ss = attach_handles(s)
    out = make_document("surgery", {
        "boundary_circles": ss.boundary_circle_count,
        "null_homotopic_cocores": bad,
        "ok": not problems,
        "discrepancies": problems,
    }, truncation(args, passes=args.passes))
    if problems:
        raise VerificationFailed(problems[0], out)
    human = [f"✅ surgered chords match unconcatable short words (passes <= {args.passes})"]
    if bad:
        human.append(f"⚠️  null-homotopic co-cores: {bad}")
    emit(args, out, human)
    return EXIT_OK


def cmd_example(args: argparse.Namespace) -> int:
    if args.list or not args.name:
        for name in sorted(REGISTRY):
            print(f"{name:24s} {REGISTRY[name].description}")
        return EXIT_OK
    names = sorted(REGISTRY) if args.name == "all" else [args.name]
    unknown = [n for n in names if n not in REGISTRY]
    if unknown:
        raise DocumentError(f"unknown example {unknown[0]!r}; see `example --list`")
    entries = [REGISTRY[n] for n in names]
    if not args.verify:
        info = [{
            "name": e.name,
            "description": e.description,
            "builder": e.builder,
            "expectations": [{"key": x.key, "value": x.value, "provenance": x.provenance, "note": x.note}
                             for x in e.expectations],
        } for e in entries]
        emit(args, make_document("examples", {"examples": info}),
             [f"📚 {e.name}: {e.description} [{e.builder}]" for e in entries])
        return EXIT_OK
    opts = RunOptions(max_winding=args.winding, max_length=args.length, arity=args.arity, salt=env_salt())
    results = verify_all(names, opts)
    trunc = truncation(args)
    if args.report:
        write_report(Path(args.report), results, entries, trunc)
        print(f"📄 report in {args.report}", file=sys.stderr)
    out = make_document("examples", {"results": [r.as_dict() for r in results]}, trunc)
    failed = [r for r in results if not r.ok]
    if failed:
        first = failed[0]
        raise VerificationFailed(f"{first.name}: {first.discrepancies[0] if first.discrepancies else 'failed'}", out)
    emit(args, out, summary_lines(results))
    return EXIT_OK


# =========================
# Parser
# =========================
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-i", "--input", default=None, help="input JSON file or URL (default: stdin)")
    common.add_argument("-o", "--output", default=None, help="write the JSON document here instead of stdout")
    common.add_argument("--json", action="store_true", help="print the machine-readable report")
    common.add_argument("--winding", type=int, default=DEFAULT_WINDING, help="winding bound for vertex chords")
    common.add_argument("--length", type=int, default=DEFAULT_LENGTH, help="word weight/length bound")
    common.add_argument("--arity", type=int, default=DEFAULT_ARITY, help="highest A-infinity arity")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="ce_tool", description="CE dg-algebras of singular Legendrians over Z/2")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="build a front from a named family")
    p.add_argument("family", help=f"one of: {', '.join(sorted(FAMILIES))}")
    p.add_argument("params", nargs="*")
    p.set_defaults(func=cmd_build)

    for name, func, text in (("open", cmd_open, "open side singularities"),
                             ("resolve", cmd_resolve, "resolve side singularities into twist blocks")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("singularities", nargs="*", help="singularity ids (default: all)")
        p.set_defaults(func=func)

    p = sub.add_parser("reflect", parents=[common], help="mirror a front left-to-right")
    p.set_defaults(func=cmd_reflect)

    p = sub.add_parser("ng", parents=[common], help="Ng resolution and Maslov potential")
    p.set_defaults(func=cmd_ng)

    p = sub.add_parser("ce", parents=[common], help="assemble the CE algebra of a front")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--stopped", action="store_true", help="left singularities only, winding 0")
    g.add_argument("--crossings", action="store_true", help="crossing generators only")
    p.add_argument("--emit-disks", default=None, metavar="FILE", help="dump disk certificates")
    p.set_defaults(func=cmd_ce)

    p = sub.add_parser("d2check", parents=[common], help="check d^2 = 0 exactly")
    p.set_defaults(func=cmd_d2check)

    p = sub.add_parser("cohomology", parents=[common], help="truncated cohomology dimensions")
    p.add_argument("--degrees", type=parse_degrees, default=None, help="window a..b (use --degrees=-2..3)")
    p.add_argument("--stopped", action="store_true", help="when given a front, assemble the stopped algebra")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("minimal-model", parents=[common], help="minimal A-infinity model")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--closed-form", dest="method", action="store_const", const="closed-form")
    g.add_argument("--transfer", dest="method", action="store_const", const="transfer")
    g.add_argument("--both", dest="method", action="store_const", const="both")
    p.add_argument("--stopped", action="store_true", help="when given a front, assemble the stopped algebra")
    p.set_defaults(func=cmd_minimal_model, method="transfer")

    p = sub.add_parser("internal", parents=[common], help="internal algebra of a marked surface")
    p.add_argument("surface", nargs="?", default=None, help="surface JSON (default: stdin)")
    p.add_argument("--no-d1", action="store_true", help="drop the disk term of the differential")
    p.set_defaults(func=cmd_internal)

    p = sub.add_parser("hh0", parents=[common], help="truncated HH_0 by word length")
    p.add_argument("--ignore-differential", action="store_true", help="use the underlying path algebra")
    p.set_defaults(func=cmd_hh0)

    p = sub.add_parser("surgery-check", parents=[common], help="surgered chords vs unconcatable short words")
    p.add_argument("--passes", type=int, default=2, help="handle passes per chord")
    p.set_defaults(func=cmd_surgery_check, length=6)

    p = sub.add_parser("example", parents=[common], help="built-in examples")
    p.add_argument("name", nargs="?", default=None, help="example name or 'all'")
    p.add_argument("--verify", action="store_true", help="recompute and compare")
    p.add_argument("--list", action="store_true")
    p.add_argument("--report", default=None, help="write a .html, .xlsx or .json summary")
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("remove-exact", parents=[common], help="remove a vertex with an exact idempotent")
    p.add_argument("generator", help="loop generator a with d(a) = e_v")
    p.set_defaults(func=cmd_remove_exact)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_BAD_INPUT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except VerificationFailed as e:
        if e.doc is not None and (args.json or args.output):
            emit(args, e.doc)
        print(f"❌ {e.first}", file=sys.stderr)
        return EXIT_FAILED
    except (ValueError, KeyError) as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_BAD_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
