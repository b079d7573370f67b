"""Command-line front end.

Reports go to stdout (or ``--out``); progress goes to stderr.  Exit status:
0 all checks pass, 1 a check failed, 2 usage or configuration error,
3 a structural finding (a rank deficiency or an inconsistent solve).
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from fractions import Fraction

from .bases import gf_coefficients, wg_enumerate, zigzag_enumerate
from .errors import ConfigurationError, QOnsagerError
from .ncpoly import core_algebra
from .scalars import SpecializationPoint, format_coeff
from .tower import GenKind, delta_abstract
from .transition import check_invertible, transition_matrix
from .verify import EXIT_CODES, SUITES, Context, RunConfig, load_or_complete, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_STRUCTURAL = 0, 1, 2, 3


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def _rational_list(text: str) -> list[Fraction]:
    return [_rational(t) for t in text.split(",") if t.strip()]


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--mode", choices=("symbolic", "specialized"), default="symbolic")
    p.add_argument("--q", type=_rational, help="q for specialized mode, e.g. 5/3")
    p.add_argument("--rho", type=_rational, help="rho for specialized mode")
    p.add_argument("--delta", type=_rational_list, help="comma separated delta_1,delta_2,...")
    p.add_argument("--max-degree", type=int, default=8, help="degree bound of the rewrite system")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--cache", help="JSON file caching the completed rewrite system")
    p.add_argument("--quiet", action="store_true", help="suppress progress messages")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qonsager", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="print a tower generator in a, b")
    p.add_argument("--kind", choices=("Wm", "Wp", "G", "Gt"), required=True)
    p.add_argument("--k", type=int, required=True, help="Wm k -> W_{-k}; Wp k -> W_{k+1}; G k -> G_{k+1}")
    p.add_argument("--reduce", action="store_true", help="print the normal form instead")
    _add_common(p)

    p = sub.add_parser("delta", help="print a central element")
    p.add_argument("--k", type=int, required=True, help="k selects Delta_{k+1}")
    p.add_argument("--form", choices=("abstract", "expanded"), default="abstract")
    _add_common(p)

    p = sub.add_parser("reduce", help="normal form of a polynomial read from JSON")
    p.add_argument("--expr", required=True, help="polynomial JSON file, or - for stdin")
    _add_common(p)

    p = sub.add_parser("dims", help="graded dimensions of the quotient")
    _add_common(p)

    p = sub.add_parser("count", help="basis counts per weight")
    p.add_argument("--max-weight", type=int, required=True)
    p.add_argument("--which", choices=("zigzag", "wg", "gf"), default=None)
    p.add_argument("--items", action="store_true", help="list the basis elements too")
    _add_common(p)

    p = sub.add_parser("transition", help="zig-zag to WG transition matrix")
    p.add_argument("--max-weight", type=int, required=True)
    p.add_argument("--check-invertible", action="store_true")
    p.add_argument("--emit-matrix", metavar="FILE", help="write the full matrix as JSON")
    _add_common(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    p.add_argument("--max-weight", type=int, default=None)
    p.add_argument("--k", type=int, default=5, help="largest tower index available")
    _add_common(p)
    return parser


def _config(args) -> RunConfig:
    point = None
    given = any(x is not None for x in (args.q, args.rho, args.delta))
    if args.mode == "specialized":
        base = SpecializationPoint.default()
        point = SpecializationPoint(
            args.q if args.q is not None else base.q,
            args.rho if args.rho is not None else base.rho,
            tuple(args.delta) if args.delta is not None else base.deltas,
        )
    elif given:
        raise ConfigurationError("--q, --rho and --delta need --mode specialized")
    k_max = getattr(args, "k", 5) if args.command == "verify" else max(5, getattr(args, "k", 0) or 0)
    progress = None if args.quiet else (lambda msg: print(msg, file=sys.stderr, flush=True))
    return RunConfig(
        mode=args.mode,
        point=point,
        k_max=k_max,
        max_degree=args.max_degree,
        max_weight=getattr(args, "max_weight", None),
        cache=args.cache,
        progress=progress,
    )


def _poly_text(p) -> str:
    return str(p)


def _emit(args, payload: dict, text: str | None = None):
    if args.format == "json":
        out = json.dumps(payload, indent=2, sort_keys=False) + "\n"
    else:
        out = (text if text is not None else json.dumps(payload, indent=2)) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def cmd_gen(args, cfg: RunConfig) -> int:
    kind = GenKind(args.kind, args.k)
    ctx = Context(cfg)
    p = ctx.tower.gen(kind.family, kind.k)
    if args.reduce:
        p = ctx.nf(p)
    _emit(args, {"generator": kind.name, "reduced": args.reduce, "polynomial": p.to_json()}, f"{kind.name} = {_poly_text(p)}")
    return EXIT_OK


def cmd_delta(args, cfg: RunConfig) -> int:
    ctx = Context(cfg)
    name = f"Delta{args.k + 1}"
    abstract = delta_abstract(args.k, ctx.tower.modes)
    if args.form == "abstract":
        _emit(args, {"element": name, "form": "abstract", "polynomial": abstract.to_json()}, f"{name} = {abstract}")
        return EXIT_OK
    expanded = ctx.tower.substitute_modes(abstract)
    payload = {"element": name, "form": "expanded", "polynomial": expanded.to_json()}
    lines = [f"{name} = {expanded}"]
    if expanded.degree() <= cfg.max_degree:
        nf = ctx.nf(expanded)
        payload["normal_form"] = nf.to_json()
        lines.append(f"normal form: {nf}")
    else:
        payload["normal_form"] = None
        lines.append(f"normal form: needs --max-degree >= {int(expanded.degree())}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_reduce(args, cfg: RunConfig) -> int:
    ctx = Context(cfg)
    fh = sys.stdin if args.expr == "-" else open(args.expr)
    with fh:
        data = json.load(fh)
    p = core_algebra(ctx.field).from_json(data)
    nf = ctx.nf(p)
    _emit(args, {"input_terms": len(p), "normal_form": nf.to_json()}, str(nf))
    return EXIT_OK


def cmd_dims(args, cfg: RunConfig) -> int:
    rs = load_or_complete(cfg.max_degree, Context(cfg).field, cfg.cache, cfg.progress)
    dims = {str(d): rs.graded_dim(d) for d in range(cfg.max_degree + 1)}
    text = "\n".join(f"{d:>3} {n}" for d, n in dims.items())
    _emit(args, {"degree_bound": cfg.max_degree, "dims": dims}, text)
    return EXIT_OK


def cmd_count(args, cfg: RunConfig) -> int:
    N = args.max_weight
    if N < 0:
        raise ConfigurationError("--max-weight must be nonnegative")
    which = [args.which] if args.which else ["zigzag", "wg", "gf"]
    payload: dict = {}
    if "zigzag" in which:
        payload["zigzag"] = {str(n): len(zigzag_enumerate(n)) for n in range(N + 1)}
        if args.items:
            payload["zigzag_items"] = {str(n): [z.render() for z in zigzag_enumerate(n)] for n in range(N + 1)}
    if "wg" in which:
        payload["wg"] = {str(n): len(wg_enumerate(n)) for n in range(N + 1)}
        if args.items:
            payload["wg_items"] = {str(n): [i.render() for i in wg_enumerate(n)] for n in range(N + 1)}
    if "gf" in which:
        for name in ("overpartition", "verma"):
            payload[name] = {str(n): c for n, c in enumerate(gf_coefficients(name, N))}
    seqs = {k: v for k, v in payload.items() if not k.endswith("_items")}
    width = max(len(k) for k in seqs)
    text = "\n".join(f"{k:<{width}} " + " ".join(f"{c:>4}" for c in v.values()) for k, v in seqs.items())
    _emit(args, payload, text)
    return EXIT_OK


def cmd_transition(args, cfg: RunConfig) -> int:
    ctx = Context(cfg)
    if cfg.max_degree < args.max_weight:
        raise ConfigurationError(f"--max-weight {args.max_weight} needs --max-degree >= {args.max_weight}")
    rep = transition_matrix(args.max_weight, ctx.rs, ctx.tower, cfg.progress)
    if args.check_invertible:
        check_invertible(rep)
    full = rep.to_json()
    if args.emit_matrix:
        with open(args.emit_matrix, "w") as fh:
            json.dump(full, fh, indent=1)
    summary = {k: v for k, v in full.items() if k not in ("entries", "rows", "cols")}
    summary["size"] = [len(rep.rows), len(rep.cols)]
    text = "\n".join(f"{k}: {v}" for k, v in summary.items())
    _emit(args, summary, text)
    if rep.structural or (args.check_invertible and not rep.invertible):
        return EXIT_STRUCTURAL
    return EXIT_OK


def _report_text(report: dict) -> str:
    lines = []
    for suite in report["suites"]:
        lines.append(f"[{suite['suite']}] {suite['status']}")
        for c in suite["checks"]:
            tags = "".join([" (evidence)" if c["evidence"] else "", " (diagnostic)" if not c["gating"] else ""])
            lines.append(f"  {c['status']:<10} {c['name']}{tags}")
    lines.append(f"overall: {report['status']}")
    return "\n".join(lines)


def cmd_verify(args, cfg: RunConfig) -> int:
    report = run_suite(args.suite, cfg)
    envelope = {"generated_at": datetime.now(timezone.utc).isoformat(timespec="seconds"), "report": report}
    _emit(args, envelope, _report_text(report))
    return EXIT_CODES[report["status"]]


COMMANDS = {
    "gen": cmd_gen,
    "delta": cmd_delta,
    "reduce": cmd_reduce,
    "dims": cmd_dims,
    "count": cmd_count,
    "transition": cmd_transition,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg)
    except (QOnsagerError, OSError, json.JSONDecodeError) as exc:
        record = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        print(json.dumps(record), file=sys.stdout)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
