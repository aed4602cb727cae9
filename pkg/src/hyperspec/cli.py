"""Command-line front end. Every invocation prints one JSON object."""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .beta import BETA, BetaDomainError, dagger_g, f_iter, solve_beta_F3, solve_symmetric
from .classify import admissibility, dagger_listed, structure_report
from .families import FamilyError, certificate_for, made
from .hypergraph import Hypergraph, HypergraphError, PartialHypergraph

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _default_tol(fallback: float) -> float:
    raw = os.environ.get("HYPERSPEC_TOL")
    if raw is None:
        return fallback
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"HYPERSPEC_TOL={raw!r} is not a number") from None


def _param(text: str):
    """Family parameters: integers, floats, 'inf', or bare strings such as 'E6' or 'H2:1:3'."""
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    return text


def _number(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"expected a number, got {text!r}") from None


def _jsonable(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    return x


def _load(path: str) -> Hypergraph:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: {exc}") from None
    try:
        return Hypergraph.from_json(data)
    except HypergraphError as exc:
        raise UsageError(f"invalid hypergraph in {path}: {exc}") from None


def _emit(obj, out=None) -> None:
    text = json.dumps(_jsonable(obj), indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_rho(args) -> int:
    from .spectral import spectral_radius

    h = _load(args.file)
    try:
        res = spectral_radius(h, args.method, args.tol)
    except HypergraphError as exc:
        raise UsageError(str(exc)) from None
    _emit(res.to_json())
    if not res.converged:
        print(f"no convergence: rho in [{res.lower!r}, {res.upper!r}]", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_classify(args) -> int:
    h = _load(args.file)
    if h.r == 2 or not args.spectral:
        _emit(structure_report(h).to_json())
        return EXIT_OK
    _emit(admissibility(h).to_json())
    return EXIT_OK


def _family(name: str, params):
    try:
        return made(name, *params)
    except FamilyError as exc:
        raise UsageError(str(exc)) from None
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad parameters for {name}: {exc}") from None


def cmd_certify(args) -> int:
    _family(args.name, args.params)
    try:
        cert = certificate_for(args.name, *args.params, tol=args.tol)
    except FamilyError as exc:
        _emit({"name": args.name, "params": args.params, "verified": False, "error": str(exc)})
        return EXIT_FAIL
    out = {"name": args.name, "params": args.params, "hypergraph": cert.base.to_json(), "certificate": cert.to_json()}
    if args.check:
        v = cert.verdict(args.tol)
        out["verdict"] = {"kind": cert.kind, **v.to_json()}
        out["verified"] = cert.verify(args.tol)
        if not out["verified"]:
            _emit(out)
            return EXIT_FAIL
    _emit(out)
    return EXIT_OK


def cmd_family(args) -> int:
    m = _family(args.name, args.params)
    h = m.hypergraph
    out = h.to_json()
    if args.certificate:
        if not isinstance(h, PartialHypergraph) and m.weights is None:
            raise UsageError(f"{args.name} has no closed-form certificate")
        try:
            out = {"hypergraph": out, "certificate": certificate_for(args.name, *args.params).to_json()}
        except FamilyError as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_FAIL
    _emit(out, args.output)
    return EXIT_OK


def cmd_beta(args) -> int:
    b = args.beta
    try:
        if args.op == "iter":
            x, n = args.values
            res = {"value": f_iter(b, _number(x), _number(n) if n == "inf" else int(n))}
        elif args.op == "symmetric":
            (n,) = args.values
            res = {"value": solve_symmetric(b, int(n))}
        elif args.op == "f3":
            m, n, k = (int(v) for v in args.values)
            beta_mnk, rho = solve_beta_F3(m, n, k)
            res = {"beta": beta_mnk, "rho": rho}
        else:
            lengths = [_number(v) for v in args.values]
            if len(lengths) != 4:
                raise UsageError("dagger-g needs four path lengths")
            g = dagger_g(*lengths, beta=b)
            res = {"value": g, "verdict": "admissible" if g >= b else "inadmissible",
                   "listed": dagger_listed(lengths)}
    except (ValueError, BetaDomainError) as exc:
        raise UsageError(str(exc)) from None
    _emit({"op": args.op, "beta": b, "args": args.values, **res})
    return EXIT_OK


def cmd_enumerate(args) -> int:
    from .enumeration import census_rows, write_census

    try:
        rows = census_rows(args.r, args.m, simple_only=args.simple, jobs=args.jobs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    per_size: dict[int, int] = {}
    verdicts: dict[str, int] = {}
    problems = []
    for h, a, p in rows:
        per_size[h.m] = per_size.get(h.m, 0) + 1
        verdicts[a.verdict] = verdicts.get(a.verdict, 0) + 1
        problems += [{"hypergraph": h.to_json(), "reason": x} for x in p]
    if args.census:
        write_census(args.census, rows)
    _emit({"r": args.r, "max_edges": args.m, "simple_only": args.simple, "total": len(rows),
           "by_edges": per_size, "verdicts": verdicts, "violations": problems})
    return EXIT_FAIL if problems else EXIT_OK


def cmd_verify(args) -> int:
    from .acceptance import CRITERIA

    results = []
    for crit in CRITERIA:
        res = crit()
        if not args.quiet:
            print(res.line(), file=sys.stderr)
        results.append(res)
    table = [{"criterion": r.number, "title": r.title, "passed": r.passed, "detail": r.detail,
              "seconds": round(r.seconds, 3)} for r in results]
    ok = all(r.passed for r in results)
    _emit({"passed": ok, "criteria": table})
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperspec", description="Spectral radius and structure tools for uniform hypergraphs.")
    p.add_argument("--quiet", action="store_true", help="no progress on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("rho", help="spectral radius of a hypergraph JSON file")
    s.add_argument("file")
    s.add_argument("--tol", type=float, default=None)
    s.add_argument("--method", choices=["auto", "power", "tree"], default="auto")
    s.set_defaults(func=cmd_rho)

    s = sub.add_parser("classify", help="structure report for a hypergraph JSON file")
    s.add_argument("file")
    s.add_argument("--spectral", action="store_true", help="also place the spectral radius against the threshold")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("certify", help="closed-form labeling of a named structure")
    s.add_argument("name")
    s.add_argument("params", nargs="*", type=_param)
    s.add_argument("--check", action="store_true", help="re-verify and report the verdict")
    s.add_argument("--tol", type=float, default=None)
    s.set_defaults(func=cmd_certify, fallback_tol=1e-9)

    s = sub.add_parser("family", help="build a named family member")
    s.add_argument("name")
    s.add_argument("params", nargs="*", type=_param)
    s.add_argument("-o", "--output")
    s.add_argument("--certificate", action="store_true")
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("beta", help="evaluate the scalar recursions")
    s.add_argument("op", choices=["iter", "symmetric", "f3", "dagger-g"])
    s.add_argument("values", nargs="+")
    s.add_argument("--beta", type=float, default=BETA)
    s.set_defaults(func=cmd_beta)

    s = sub.add_parser("enumerate", help="census of small connected hypergraphs")
    s.add_argument("-r", type=int, required=True)
    s.add_argument("-m", type=int, required=True, help="maximum number of edges")
    s.add_argument("--census", help="CSV output path")
    s.add_argument("--simple", action="store_true", help="only simple hypergraphs")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("verify-paper", help="run the acceptance criteria")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if getattr(args, "tol", "absent") is None:
            args.tol = _default_tol(getattr(args, "fallback_tol", 1e-10))
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
