"""Command line interface.

Exit codes: 0 success, 1 a check or suite failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import corpus
from .complex import SimplicialComplex, validate
from .homology import InsufficientSkeleton, abelianization, homology, pi1_presentation
from .localdim import local_homotopical_dimension
from .quotient import RegularityError, braid_model
from .retract import delta_model, minimal_delta_model
from .suite import DEFAULT_BUDGET, SUITES, run_suite


class InputError(Exception):
    pass


def _load(spec: str) -> SimplicialComplex:
    try:
        return corpus.load_complex(spec)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read complex {spec!r}: {exc}") from exc


def _load_model_file(path: str) -> tuple[SimplicialComplex, bool]:
    """A complex file, or a model file written by delta-model / braid-model."""
    try:
        doc = json.loads(Path(path).read_text()) if Path(path).exists() else None
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path!r}: {exc}") from exc
    if doc is None:
        return _load(path), True
    if "complex" in doc:
        return SimplicialComplex.from_json(doc["complex"]), doc.get("complete", True)
    return SimplicialComplex.from_json(doc), True


class _Bounded:
    def __init__(self, K, complete):
        self.complex, self.complete = K, complete


def cmd_validate(args) -> int:
    K = _load(args.input)
    report = validate(K)
    print("ok" if report.ok else f"invalid: {report.message}")
    print(f"f-vector {K.f_vector()}")
    return 0 if report.ok else 1


def _write_model(model, K: SimplicialComplex, out: str | None) -> None:
    doc = {"params": model.params, "complete": model.complete, "complex": K.to_json()}
    print(f"f-vector {K.f_vector()}  complete={model.complete}")
    if out:
        Path(out).write_text(json.dumps(doc))
        print(f"wrote {out}")


def cmd_delta_model(args) -> int:
    X = _load(args.input)
    build = minimal_delta_model if args.minimal else delta_model
    model = build(X, args.n, args.d, args.max_dim)
    _write_model(model, model.complex, args.out)
    return 0


def cmd_braid_model(args) -> int:
    X = _load(args.input)
    Q = braid_model(X, args.n, args.d, args.max_dim)
    _write_model(Q, Q.complex, args.out)
    return 0


def cmd_homology(args) -> int:
    K, complete = _load_model_file(args.input)
    h = homology(_Bounded(K, complete), args.up_to, reduced=args.reduced)
    print(h.table())
    return 0


def cmd_pi1(args) -> int:
    K, _ = _load_model_file(args.input)
    P = pi1_presentation(K)
    rank, torsion = abelianization(P)
    print(f"generators {len(P.generators)}  relators {len(P.relators)}")
    groups = ([f"Z^{rank}"] if rank else []) + [f"Z/{t}" for t in torsion]
    print(f"abelianization {' + '.join(groups) or '0'}")
    return 0


def cmd_localdim(args) -> int:
    X = _load(args.input)
    ld = local_homotopical_dimension(X)
    print(f"r {ld.r}")
    print(f"witness {X.labels(ld.witness)}")
    print(f"combinatorial r {ld.combinatorial_r} (decidable={ld.decidable})")
    proxy = ", ".join(str(X.labels(s)) for s in ld.proxy) or "none"
    print(f"proxy {proxy}")
    return 0


def cmd_verify(args) -> int:
    report = run_suite(args.suite, jobs=args.jobs, budget=args.budget, cases_path=args.cases)
    print(report.table())
    out = args.json or f"verify-{args.suite}.json"
    Path(out).write_text(json.dumps(report.to_json(), indent=1))
    print(f"report {out}")
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="diagconf", description="Simplicial models of diagonal complements.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a complex file")
    p.add_argument("input", nargs="?")
    p.add_argument("--input", dest="input_opt")
    p.set_defaults(func=cmd_validate)

    for name, func in (("delta-model", cmd_delta_model), ("braid-model", cmd_braid_model)):
        p = sub.add_parser(name, help=f"build the {name.split('-')[0]} model")
        p.add_argument("--input", required=True, help="complex JSON or builtin name")
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--d", type=int, required=True)
        p.add_argument("--max-dim", type=int, default=None)
        p.add_argument("--out")
        if name == "delta-model":
            p.add_argument("--minimal", action="store_true", help="stellar model instead of W")
        p.set_defaults(func=func)

    p = sub.add_parser("homology", help="integral homology table")
    p.add_argument("--input", required=True)
    p.add_argument("--up-to", type=int, default=None)
    p.add_argument("--reduced", action="store_true")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("pi1", help="edge-path presentation summary")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_pi1)

    p = sub.add_parser("localdim", help="local homotopical dimension")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_localdim)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget", type=float, default=None,
                   help=f"wall-clock seconds for the suite (defaults {DEFAULT_BUDGET})")
    p.add_argument("--json", help="where to write the JSON report")
    p.add_argument("--cases", help="alternative cases file")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.command == "validate":
        args.input = args.input_opt or args.input
        if not args.input:
            print("error: validate needs an input", file=sys.stderr)
            return 2
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, InsufficientSkeleton) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RegularityError as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
