"""Command-line client.

Subcommands map one-to-one onto the service-layer handlers, so a shell
run and an HTTP call return the same payloads.  Exit codes: 0 ok or
confirmed, 1 usage error, 2 parse error, 3 counterexample found.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from typing import Sequence

from .errors import GraphFormatError, SpecxError
from .service import (
    AnalyzeRequest,
    ConstructRequest,
    SweepRequest,
    VerifyRequest,
    analyze_content,
    construct_family,
    run_sweep,
    run_verify,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_COUNTEREXAMPLE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: D102 - argparse hook
        raise UsageError(message)


def _fmt(x) -> str:
    if x is None:
        return "none"
    if isinstance(x, bool):
        return "yes" if x else "no"
    if isinstance(x, float):
        return f"{x:.10g}"
    return str(x)


def _num(key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise UsageError(f"{key} expects an integer, got {value!r}") from None


_RANGE_RE = re.compile(r"^(-?\d+)(?:\.\.(-?\d+))?$")


def _parse_kv(tokens: Sequence[str], ranged: bool) -> dict[str, tuple[int, int]]:
    out: dict[str, tuple[int, int]] = {}
    for tok in tokens:
        if "=" not in tok:
            raise UsageError(f"expected key=value, got {tok!r}")
        key, _, value = tok.partition("=")
        m = _RANGE_RE.match(value)
        if not m or (m.group(2) and not ranged):
            raise UsageError(f"bad value {value!r} for {key}")
        lo = int(m.group(1))
        hi = int(m.group(2)) if m.group(2) else lo
        out[key.strip()] = (lo, hi)
    return out


def _emit_pairs(pairs: list[tuple[str, object]], style: str) -> str:
    if style == "kv":
        return "\n".join(f"{k}={_fmt(v)}" for k, v in pairs)
    width = max(len(k) for k, _ in pairs)
    return "\n".join(f"{k.ljust(width)}  {_fmt(v)}" for k, v in pairs)


def _cmd_analyze(args) -> int:
    try:
        with open(args.path, "r", encoding="ascii") as fh:
            content = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    resp = analyze_content(
        AnalyzeRequest(
            content=content,
            format=args.input_format,
            directed=args.directed,
            tol=args.tol,
        )
    )
    pairs: list[tuple[str, object]] = [("kind", resp.kind), ("n", resp.n)]
    if resp.kind == "graph":
        pairs += [
            ("edges", resp.edges),
            ("connected", resp.connected),
            ("min_degree", resp.min_degree),
            ("max_degree", resp.max_degree),
            ("connectivity", resp.connectivity),
            ("edge_connectivity", resp.edge_connectivity),
            ("essential_connectivity", resp.essential_connectivity),
            ("essential_cut", resp.essential_cut),
            ("algebraic_connectivity", resp.algebraic_connectivity),
            ("spectral_radius", resp.spectral_radius),
        ]
    else:
        pairs += [
            ("arcs", resp.edges),
            ("strongly_connected", resp.strongly_connected),
            ("essential_connectivity", resp.essential_connectivity),
            ("essential_cut", resp.essential_cut),
            ("spectral_radius", resp.spectral_radius),
        ]
    if resp.note:
        pairs.append(("note", resp.note))
    print(_emit_pairs(pairs, args.format))
    return EXIT_OK


def _cmd_construct(args) -> int:
    resp = construct_family(ConstructRequest(family=args.family))
    payload = f"{resp.provenance}\n{resp.encoding}\n"
    if args.output:
        with open(args.output, "w", encoding="ascii") as fh:
            fh.write(payload)
        print(f"wrote {resp.kind} {resp.family} to {args.output} (rho={resp.spectral_radius:.10g})")
    else:
        sys.stdout.write(payload)
    return EXIT_OK


def _verify_request(args, kv) -> VerifyRequest:
    known = {"n", "delta", "kappa", "k"}
    for key in kv:
        if key not in known:
            raise UsageError(f"unknown parameter {key!r}")
    if "n" not in kv:
        raise UsageError("missing n=<order>")
    return VerifyRequest(
        theorem=args.theorem,
        n=kv["n"][0],
        delta=kv.get("delta", (None, None))[0],
        kappa=kv.get("kappa", (None, None))[0],
        k=kv.get("k", (None, None))[0],
        tol=args.tol,
        mode=args.mode,
        seed=args.seed,
        trials=args.trials,
        workers=args.workers,
    )


def _cmd_verify(args) -> int:
    kv = _parse_kv(args.params, ranged=False)
    report = run_verify(_verify_request(args, kv))
    print(report.kv if args.format == "kv" else report.text)
    return EXIT_COUNTEREXAMPLE if report.verdict == "counterexample" else EXIT_OK


def _cmd_sweep(args) -> int:
    kv = _parse_kv(args.params, ranged=True)
    for key in kv:
        if key not in {"n", "delta", "kappa", "k"}:
            raise UsageError(f"unknown parameter {key!r}")
    if "n" not in kv:
        raise UsageError("missing n=<lo>..<hi>")
    req = SweepRequest(
        theorem=args.theorem,
        n_range=kv["n"],
        delta_range=kv.get("delta"),
        kappa_range=kv.get("kappa"),
        k_range=kv.get("k"),
        tol=args.tol,
        mode=args.mode,
        seed=args.seed,
        trials=args.trials,
        workers=args.workers,
    )
    reports = run_sweep(req)
    blocks = [rep.kv if args.format == "kv" else rep.text for rep in reports]
    print("\n\n".join(blocks))
    summary = {"confirmed": 0, "counterexample": 0, "inconclusive-sampled": 0, "empty-class": 0}
    for rep in reports:
        summary[rep.verdict] = summary.get(rep.verdict, 0) + 1
    print(f"\nsweep: {len(reports)} runs, " + ", ".join(f"{k}={v}" for k, v in summary.items() if v))
    bad = any(rep.verdict == "counterexample" for rep in reports)
    return EXIT_COUNTEREXAMPLE if bad else EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def _build_parser() -> _Parser:
    parser = _Parser(prog="specx", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--tol", type=float, default=1e-8, help="verdict tolerance")
        p.add_argument("--seed", type=int, default=0, help="PRNG seed for sampled mode")
        p.add_argument(
            "--workers",
            type=int,
            default=int(os.environ.get("SPECX_WORKERS", "1")),
            help="worker processes (default SPECX_WORKERS or 1)",
        )
        p.add_argument("--format", choices=("text", "kv"), default="text")
        p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
        p.add_argument("--trials", type=int, default=10000, help="samples in sampled mode")

    p_analyze = sub.add_parser("analyze", help="invariants of a graph/digraph file")
    p_analyze.add_argument("path")
    p_analyze.add_argument(
        "--input-format", choices=("auto", "graph6", "digraph6", "edgelist"), default="auto"
    )
    p_analyze.add_argument("--directed", action="store_true", help="edge lists describe arcs")
    p_analyze.add_argument("--tol", type=float, default=1e-10)
    p_analyze.add_argument("--format", choices=("text", "kv"), default="text")
    p_analyze.set_defaults(fn=_cmd_analyze)

    p_construct = sub.add_parser("construct", help="build an extremal family member")
    p_construct.add_argument("--family", required=True, help="g(n,kappa,delta) or dg(n,k,m)")
    p_construct.add_argument("-o", "--output", help="write to file instead of stdout")
    p_construct.set_defaults(fn=_cmd_construct)

    p_verify = sub.add_parser("verify", help="certify one bound")
    p_verify.add_argument("theorem", choices=("t1", "t2"))
    p_verify.add_argument("params", nargs="+", help="n=8 delta=3 kappa=2 (t1) or n=5 k=1 (t2)")
    common(p_verify)
    p_verify.set_defaults(fn=_cmd_verify)

    p_sweep = sub.add_parser("sweep", help="certify bounds over parameter ranges")
    p_sweep.add_argument("theorem", choices=("t1", "t2"))
    p_sweep.add_argument("params", nargs="+", help="n=5..8 [delta=1..4] [kappa=1..4] [k=1..2]")
    common(p_sweep)
    p_sweep.set_defaults(fn=_cmd_sweep)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(fn=_cmd_serve)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GraphFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SpecxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
