"""Command line interface: ``sc <command> ...``.

Complex arguments are either a path to an ``sc-v1`` complex document or an
example name (``circle``, ``interval``, ``torus``, ``point``, ``simplexN``).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import catalog, io
from .complex import euler_characteristic, f_vector
from .constructions import ApproxPolicy, SizeBudgetExceeded, iterated_subdivision, ordered_product
from .cover import sc_upper_bound, verify_certificate
from .planner import PlannerError, make_path, sample_path


def load_complex(arg: str):
    path = Path(arg)
    if path.is_file():
        return io.read_complex(path.read_text())
    try:
        return catalog.example(arg)
    except KeyError:
        raise SystemExit(f"error: {arg!r} is neither a complex file nor a known example") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_info(args) -> int:
    K = load_complex(args.complex)
    print(json.dumps({
        "vertices": K.n_vertices,
        "maximal_simplices": len(K.maximal),
        "dim": K.dim,
        "f_vector": list(f_vector(K)),
        "euler_characteristic": euler_characteristic(K),
    }))
    return 0


def cmd_product(args) -> int:
    P = ordered_product(load_complex(args.a), load_complex(args.b))
    _emit(io.write_complex(P.complex), args.out)
    return 0


def cmd_subdivide(args) -> int:
    K = load_complex(args.complex)
    levels = iterated_subdivision(K, args.b, args.size_budget)
    _emit(io.write_complex(levels[-1].complex if levels else K), args.out)
    return 0


def cmd_example(args) -> int:
    try:
        K = catalog.example(args.name)
    except KeyError as exc:
        raise SystemExit(f"error: {exc.args[0]}") from None
    _emit(io.write_complex(K), args.out)
    if args.embedding:
        emb = catalog.example_embedding(args.name)
        if emb is None:
            raise SystemExit(f"error: no built-in embedding for {args.name!r}")
        Path(args.embedding).write_text(io.write_embedding(K, emb))
    return 0


def cmd_bound(args) -> int:
    K = load_complex(args.complex)
    report = sc_upper_bound(
        K,
        b=args.b,
        c_max=args.cmax,
        max_pieces=args.pieces,
        seed=args.seed,
        budget=args.budget,
        policy=ApproxPolicy(args.policy),
        strategy=args.strategy,
        b_max=args.bmax,
        size_budget=args.size_budget,
    )
    summary = {"status": report.status, "bound": report.bound, "b": report.b, "c": report.c}
    summary.update({k: v for k, v in report.stats.items() if k != "seconds"})
    if report.certificate is not None:
        text = io.write_certificate(report.certificate)
        # re-read and re-verify what is actually on disk
        check = verify_certificate(io.read_certificate(text))
        summary["verified"] = bool(check)
        if args.out:
            Path(args.out).write_text(text)
            check = verify_certificate(io.read_certificate(Path(args.out).read_text()))
            summary["verified"] = bool(check)
        if not check:
            print(json.dumps(summary))
            print(str(check), file=sys.stderr)
            return 2
    print(json.dumps(summary))
    return 0 if report.status == "found" else 1


def cmd_verify(args) -> int:
    try:
        cert = io.read_certificate(Path(args.certificate).read_text())
    except io.FormatError as exc:
        print(f"certificate rejected: {exc}")
        return 2
    check = verify_certificate(cert)
    print(str(check) + (f": SC^{cert.b}_{cert.c} <= {cert.bound}" if check else ""))
    return 0 if check else 2


def cmd_plan(args) -> int:
    cert = io.read_certificate(Path(args.certificate).read_text())
    check = verify_certificate(cert)
    if not check:
        print(str(check), file=sys.stderr)
        return 2
    if args.embedding:
        emb = io.read_embedding(Path(args.embedding).read_text(), cert.base)
    else:
        emb = catalog.example_embedding("circle") if cert.base == catalog.circle() else None
        if emb is None:
            raise SystemExit("error: --embedding is required for this complex")
    try:
        path = make_path(cert, emb, args.x, args.y)
    except PlannerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    samples = sample_path(path, args.samples) if args.samples else io.path_samples(path)
    _emit(io.write_path(samples), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sc", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="f-vector and Euler characteristic")
    p.add_argument("complex")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("product", help="ordered product of two complexes")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--out")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("subdivide", help="iterated barycentric subdivision")
    p.add_argument("complex")
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--size-budget", type=int, default=10_000_000)
    p.add_argument("--out")
    p.set_defaults(func=cmd_subdivide)

    p = sub.add_parser("bound", help="search for a cover certificate")
    p.add_argument("complex")
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--bmax", type=int, default=None, help="try finer subdivisions up to this level")
    p.add_argument("--cmax", type=int, default=16)
    p.add_argument("--pieces", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=1000, help="max chain searches per level")
    p.add_argument("--policy", choices=["min", "max"], default="max")
    p.add_argument("--strategy", choices=["auto", "bfs", "greedy", "random", "sat"], default="auto")
    p.add_argument("--size-budget", type=int, default=10_000_000)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("verify", help="re-check a certificate from scratch")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("plan", help="motion plan between two configurations")
    p.add_argument("certificate")
    p.add_argument("--embedding")
    p.add_argument("--x", type=float, nargs="+", required=True)
    p.add_argument("--y", type=float, nargs="+", required=True)
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("example", help="write a named example complex")
    p.add_argument("name")
    p.add_argument("--out")
    p.add_argument("--embedding", help="also write the built-in embedding here")
    p.set_defaults(func=cmd_example)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except SizeBudgetExceeded as exc:
        print(f"size-abort: {exc}", file=sys.stderr)
        return 3
    except io.FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
