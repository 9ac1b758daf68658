"""Command-line interface: ``kcomplete {lattice,expect,laplace,simulate,verify}``.

Every command prints one JSON document on stdout. Exit codes:
0 success, 1 identity violation (verify), 2 invalid or inapplicable
instance, 3 cross-method disagreement, 4 closed form requested on a
non-generic instance.
"""
from __future__ import annotations

import argparse
import csv
import json
import secrets
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .cover_lattice import build_lattice
from .errors import HypothesisError, InvalidInstance, NonGenericError, RepeatedPoleError
from .formulas import (
    ExpMixture,
    expectation_chain_form,
    expectation_interval_form,
    genericity,
    laplace_chain_form,
)
from .instances import instance_to_json, load_instance, random_instances
from .matrix_model import Hypothesis, MatrixSpec, hypothesis_class
from .recursion import expectation_recursive, laplace_recursive, partial_fractions, transform_moments
from .simulation import RNG_NAME, estimate_expectation, estimate_laplace, sample_values, z_score
from .verify import check_instance, shrink

EXIT_OK, EXIT_VIOLATION, EXIT_INVALID, EXIT_DISAGREE, EXIT_NONGENERIC = 0, 1, 2, 3, 4


class CommandFailed(Exception):
    def __init__(self, code: int, payload: dict):
        super().__init__(payload.get("error", ""))
        self.code = code
        self.payload = payload


def _fraction_arg(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc
    if value < 0:
        raise argparse.ArgumentTypeError("t must be nonnegative")
    return value


def parse_grid(text: str) -> list[float]:
    """``start:stop:step`` (inclusive stop) or a comma-separated list."""
    if ":" in text:
        start, stop, step = (float(x) for x in text.split(":"))
        if step <= 0:
            raise argparse.ArgumentTypeError("grid step must be positive")
        count = int(round((stop - start) / step)) + 1
        return [start + i * step for i in range(count)]
    return [float(x) for x in text.split(",") if x.strip()]


def _applicable(M: MatrixSpec) -> Hypothesis:
    cls = hypothesis_class(M)
    if cls is Hypothesis.INSUFFICIENT:
        raise CommandFailed(EXIT_INVALID, {
            "error": f"instance has fewer than k-1 = {M.k - 1} zeros in independent position",
            "hypothesis": cls.value,
        })
    return cls


def _cover_json(cover) -> dict:
    return {"rows": [i + 1 for i in sorted(cover.rows)], "cols": [j + 1 for j in sorted(cover.cols)]}


def lattice_report(M: MatrixSpec) -> dict:
    cls = _applicable(M)
    if cls is Hypothesis.ZERO_COST_K:
        return {"zero_cost": True, "hypothesis": cls.value}
    L = build_lattice(M)
    gen = genericity(L)
    return {
        "zero_cost": False,
        "hypothesis": cls.value,
        "elements": [
            {
                "cover": _cover_json(el.cover),
                "rowset": [i + 1 for i in sorted(el.rowset)],
                "colset": [j + 1 for j in sorted(el.colset)],
                "rate": str(el.rate),
            }
            for el in L.elements
        ],
        "hasse_edges": [list(e) for e in L.hasse_edges()],
        "bottom": L.bottom,
        "top": L.top,
        "generic": gen.generic,
        "violations": [list(v) for v in gen.violations],
    }


def expect_report(M: MatrixSpec, method: str) -> dict:
    if _applicable(M) is Hypothesis.ZERO_COST_K:
        return {"zero_cost": True, "method": method, "value": "0"}
    values: dict[str, Fraction] = {}
    if method in ("interval", "chains", "all"):
        L = build_lattice(M)
        if method in ("interval", "all"):
            values["interval"] = expectation_interval_form(L)
        if method in ("chains", "all"):
            values["chains"] = expectation_chain_form(L)
    if method in ("recursion", "all"):
        values["recursion"] = expectation_recursive(M)
    distinct = set(values.values())
    payload = {"zero_cost": False, "method": method, "values": {k: str(v) for k, v in values.items()}}
    if len(distinct) != 1:
        payload["error"] = "methods disagree"
        raise CommandFailed(EXIT_DISAGREE, payload)
    payload["value"] = str(distinct.pop())
    return payload


def _mixture_fields(mix: ExpMixture) -> dict:
    mean, second = mix.mean(), mix.second_moment()
    return {"terms": mix.to_json(), "sum_coeff": str(mix.total()), "mean": str(mean), "second_moment": str(second)}


def _write_density(path: str, mix: ExpMixture, grid: Sequence[float]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "pdf", "cdf"])
        for x in grid:
            writer.writerow([repr(float(x)), repr(mix.density(x)), repr(mix.cdf(x))])


def laplace_report(M: MatrixSpec, method: str, evals: Sequence[Fraction] = (),
                   density: Optional[Sequence[float]] = None, csv_path: Optional[str] = None) -> dict:
    if _applicable(M) is Hypothesis.ZERO_COST_K:
        payload = {"zero_cost": True, "method": method, "transform": {"num": ["1"], "den": ["1"]},
                   "evaluations": [{"t": str(t), "value": "1"} for t in evals]}
        return payload
    payload: dict = {"zero_cost": False, "method": method}
    mix: Optional[ExpMixture] = None
    if method == "closed":
        L = build_lattice(M)
        try:
            mix = laplace_chain_form(L)
        except NonGenericError as exc:
            raise CommandFailed(EXIT_NONGENERIC, {
                "error": str(exc),
                "violations": [list(v) for v in exc.report.violations],
            }) from exc
        payload.update(_mixture_fields(mix))
        payload["evaluations"] = [{"t": str(t), "value": str(mix.eval(t))} for t in evals]
    else:
        rf = laplace_recursive(M)
        mean, second = transform_moments(rf)
        payload["transform"] = rf.to_json()
        payload["mean"] = str(mean)
        payload["second_moment"] = str(second)
        try:
            mix = partial_fractions(rf)
            payload["mixture"] = mix.to_json()
        except RepeatedPoleError as exc:
            payload["mixture"] = None
            payload["repeated_pole"] = str(exc.root)
        payload["evaluations"] = [{"t": str(t), "value": str(rf(t))} for t in evals]
    if density is not None:
        if mix is None:
            raise CommandFailed(EXIT_NONGENERIC, {
                "error": "density export needs distinct poles; this transform has a repeated pole",
            })
        if csv_path:
            _write_density(csv_path, mix, density)
            payload["density_csv"] = csv_path
        else:
            payload["density"] = [{"x": x, "pdf": mix.density(x), "cdf": mix.cdf(x)} for x in density]
    return payload


def _exact_values(M: MatrixSpec):
    """Exact mean and transform when a zero (k-1)-assignment exists, else None."""
    cls = hypothesis_class(M)
    if cls is Hypothesis.INSUFFICIENT:
        return None, None
    return expectation_recursive(M), laplace_recursive(M)


def simulate_report(M: MatrixSpec, samples: int, seed: int, ts: Sequence[Fraction] = (),
                    workers: Optional[int] = None) -> dict:
    values = sample_values(M, samples, seed, workers)
    exact_mean, exact_rf = _exact_values(M)
    mean_est = estimate_expectation(M, samples, seed, values=values)
    mean_doc = mean_est.to_json()
    if exact_mean is not None:
        mean_doc["exact"] = str(exact_mean)
        mean_doc["z"] = z_score(mean_est, float(exact_mean))
    laplace_docs = []
    for t in ts:
        est = estimate_laplace(M, float(t), samples, seed, values=values)
        doc = est.to_json()
        if exact_rf is not None:
            exact = exact_rf(t)
            doc["exact"] = str(exact)
            doc["z"] = z_score(est, float(exact))
        laplace_docs.append(doc)
    return {
        "rng": RNG_NAME,
        "samples": samples,
        "seed": seed,
        "hypothesis": hypothesis_class(M).value,
        "expectation": mean_doc,
        "laplace": laplace_docs,
    }


def verify_report(instances: Sequence[MatrixSpec]) -> dict:
    results = []
    failure = None
    for idx, M in enumerate(instances):
        _applicable(M)
        report = check_instance(M)
        results.append({"index": idx, "hypothesis": report.hypothesis.value, "generic": report.generic,
                        "checks": len(report.passed) + len(report.failed), "failed": report.failed})
        if not report.ok and failure is None:
            failure = {"index": idx, "failed": report.failed, "reproducer": instance_to_json(shrink(M))}
    payload = {"instances": len(instances), "passed": failure is None, "results": results}
    if failure is not None:
        payload["first_failure"] = failure
        raise CommandFailed(EXIT_VIOLATION, payload)
    return payload


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kcomplete", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lattice", help="critical rectangles, order and genericity")
    p.add_argument("file")

    p = sub.add_parser("expect", help="exact expected optimal k-assignment value")
    p.add_argument("file")
    p.add_argument("--method", choices=["interval", "chains", "recursion", "all"], default="all")

    p = sub.add_parser("laplace", help="exact Laplace transform")
    p.add_argument("file")
    p.add_argument("--method", choices=["closed", "recursion"], default="closed")
    p.add_argument("--eval", dest="evals", type=_fraction_arg, nargs="+", default=[], metavar="T")
    p.add_argument("--density", type=parse_grid, metavar="GRID",
                   help="x grid as start:stop:step or a comma list")
    p.add_argument("--csv", metavar="PATH", help="write the density grid as CSV (x,pdf,cdf)")

    p = sub.add_parser("simulate", help="Monte Carlo estimates")
    p.add_argument("file")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int)
    p.add_argument("--t", dest="ts", type=_fraction_arg, nargs="+", default=[], metavar="T")

    p = sub.add_parser("verify", help="run all cross-method identities")
    p.add_argument("file", nargs="?")
    p.add_argument("--random", type=int, metavar="COUNT")
    p.add_argument("--max-dim", type=int, default=5)
    p.add_argument("--max-k", type=int, default=4)
    p.add_argument("--seed", type=int)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> tuple[int, dict]:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            if args.random is not None:
                seed = args.seed if args.seed is not None else secrets.randbits(32)
                payload = verify_report(random_instances(args.random, seed, args.max_dim, args.max_k))
                payload["seed"] = seed
                return EXIT_OK, payload
            if args.file is None:
                raise InvalidInstance("verify needs an instance file or --random COUNT")
            return EXIT_OK, verify_report([load_instance(args.file)])
        M = load_instance(args.file)
        if args.command == "lattice":
            return EXIT_OK, lattice_report(M)
        if args.command == "expect":
            return EXIT_OK, expect_report(M, args.method)
        if args.command == "laplace":
            return EXIT_OK, laplace_report(M, args.method, args.evals, args.density, args.csv)
        if args.command == "simulate":
            if args.samples < 2:
                raise InvalidInstance("--samples must be at least 2")
            seed = args.seed if args.seed is not None else secrets.randbits(32)
            return EXIT_OK, simulate_report(M, args.samples, seed, args.ts)
    except CommandFailed as exc:
        return exc.code, exc.payload
    except (InvalidInstance, HypothesisError) as exc:
        return EXIT_INVALID, {"error": str(exc)}
    raise AssertionError(f"unhandled command {args.command}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, payload = run(argv)
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")
    if code and "error" in payload:
        print(f"kcomplete: {payload['error']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
