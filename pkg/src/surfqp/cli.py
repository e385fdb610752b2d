"""Command-line front end.

Exit status: 0 success, 1 a theorem check failed, 2 invalid input,
3 the hypotheses of the theorems do not hold for the given scalars.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field

from .errors import HypothesisError, OracleMismatchError, SurfQPError
from .invariants import (
    algebra_dimension,
    cartan_matrix,
    cartan_vs_algebra,
    center_basis,
    hypothesis_report,
    jacobian_basis,
    nonrigidity_check,
    symmetry_check,
)
from .path_algebra import ScalarAssignment, truncated_quotient
from .path_algebra._backend import BACKEND
from .quiver import adjacency_quiver, orbit_partition, quiver_conditions, xy_transitivity
from .surface import (
    MarkedSurface,
    Triangulation,
    condition_report,
    euler_data,
    nice_triangulation,
    parse_triangulation,
    puncture_cycles,
    validate,
)

EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_HYPOTHESES = 0, 1, 2, 3

VERBS = ("validate", "construct", "quiver", "dimension", "cartan", "verify", "report", "batch")


class UsageError(SurfQPError):
    pass


# -- pipelines -----------------------------------------------------------------


def _surface_info(t: Triangulation) -> dict:
    e = euler_data(t)
    return {"genus": e["genus"], "punctures": e["punctures"], "arcs": e["arcs"], "triangles": e["triangles"]}


def _scalars(q, text):
    c = ScalarAssignment.default(q) if text is None else ScalarAssignment.parse(text)
    c.check(q)
    return c


def verify_triangulation(t: Triangulation, scalars: str | None = None, N: int | None = None, full: bool = False):
    """Run the theorem checks; returns ``(report, exit status)``."""
    q = adjacency_quiver(t)
    c = _scalars(q, scalars)
    hyp = hypothesis_report(q, c)
    report = {
        "surface": _surface_info(t),
        "hypothesis_report": hyp,
        "scalars": c.to_list(),
    }
    a = truncated_quotient(q, c, N)
    report["truncation"] = a.N
    if not hyp["theorems_apply"]:
        if hyp["diamond"] and not hyp["scalar_product_ok"]:
            msg = "hypotheses not met: product of scalars equals 1"
        else:
            msg = "hypotheses not met: neither (star) nor (diamond) holds"
        report["verdict"] = "not_applicable"
        report["message"] = msg
        report["informational"] = {
            "dims_per_degree": list(a.dims),
            "stabilized_up_to_truncation": a.stabilized,
        }
        return report, EXIT_HYPOTHESES

    checks = {}
    formula = algebra_dimension(t)
    checks["dimension"] = {
        "formula": formula,
        "oracle": a.dimension,
        "dims_per_degree": list(a.dims),
        "stabilized": a.stabilized,
        "passed": formula == a.dimension and a.stabilized,
    }
    try:
        b = jacobian_basis(q, c, a)
        checks["basis"] = dict(b.to_dict(), passed=b.count == formula)
    except OracleMismatchError as exc:
        checks["basis"] = {"passed": False, "error": str(exc)}
    C = cartan_matrix(t)
    matches = cartan_vs_algebra(t, a)
    checks["cartan"] = dict(C.to_dict(), matches_oracle=matches, passed=C.ok and matches)
    checks["nonrigidity"] = {"passed": nonrigidity_check(q, c, a)}
    if full:
        try:
            s = symmetry_check(q, c, a)
            checks["symmetry"] = dict(s.to_dict(), passed=s.verdict)
        except OracleMismatchError as exc:
            checks["symmetry"] = {"passed": False, "error": str(exc)}
        z = center_basis(q, c, a)
        checks["center"] = dict(
            z.to_dict(), expected_dimension=q.n_vertices + 1, passed=z.ok and z.dimension == q.n_vertices + 1
        )
        report["symmetric"] = checks["symmetry"]["passed"]
        report["center_dimension"] = z.dimension
    report["checks"] = checks
    report["dimension"] = a.dimension
    report["cartan_determinant"] = C.determinant
    ok = all(ch["passed"] for ch in checks.values())
    report["verdict"] = "verified" if ok else "failed"
    return report, EXIT_OK if ok else EXIT_FAILED


@dataclass
class Family:
    """Cases ``(genus, punctures, seed)``; spheres with fewer than 4 punctures are skipped."""

    genera: list[int] = field(default_factory=list)
    punctures: list[int] = field(default_factory=list)
    seeds: list = field(default_factory=lambda: [None])

    def cases(self):
        for g in self.genera:
            for p in self.punctures:
                if not MarkedSurface(g, p).triangulable:
                    continue
                for s in self.seeds:
                    yield g, p, s


def batch_verify(family: Family, full: bool = False, N: int | None = None) -> dict:
    rows = []
    for g, p, seed in family.cases():
        case = {"genus": g, "punctures": p, "seed": seed}
        try:
            rng = random.Random(seed) if seed is not None else None
            t = nice_triangulation(MarkedSurface(g, p), rng)
            rep, code = verify_triangulation(t, None, N, full)
            case["status"] = {EXIT_OK: "pass", EXIT_FAILED: "fail", EXIT_HYPOTHESES: "not_applicable"}[code]
            case["dimension"] = rep.get("dimension")
            case["hypothesis_report"] = rep["hypothesis_report"]
        except SurfQPError as exc:
            case["status"] = "error"
            case["error"] = str(exc)
        rows.append(case)
    rows.sort(key=lambda r: (r["genus"], r["punctures"], -1 if r["seed"] is None else r["seed"]))
    summary = {k: sum(1 for r in rows if r["status"] == k) for k in ("pass", "fail", "not_applicable", "error")}
    summary["total"] = len(rows)
    return {"cases": rows, "summary": summary}


# -- argument handling -----------------------------------------------------------


def _int_list(text: str) -> list[int]:
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def _load(args) -> Triangulation:
    if args.input:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc.strerror}") from exc
        return parse_triangulation(text)
    if args.genus is None or args.punctures is None:
        raise UsageError("give --input PATH or both --genus and --punctures")
    rng = random.Random(args.seed) if args.seed is not None else None
    return nice_triangulation(MarkedSurface(args.genus, args.punctures), rng)


def _require_valid(t: Triangulation) -> None:
    rep = validate(t)
    if not rep.ok:
        raise UsageError("invalid triangulation: " + "; ".join(rep.problems))


def _cmd_validate(args):
    t = _load(args)
    rep = validate(t)
    out = rep.to_dict()
    if rep.ok:
        out["surface"] = _surface_info(t)
        out["conditions"] = condition_report(t)
    return out, EXIT_OK if rep.ok else EXIT_INVALID


def _cmd_construct(args):
    t = _load(args)
    _require_valid(t)
    return t.to_dict(), EXIT_OK


def _cmd_quiver(args):
    t = _load(args)
    _require_valid(t)
    q = adjacency_quiver(t)
    out = q.to_dict()
    out["orbits"] = {k: [list(c) for c in orbit_partition(q, k).classes] for k in ("f", "g", "h")}
    out["conditions"] = quiver_conditions(q)
    out["xy_transitive"] = xy_transitivity(q)
    return out, EXIT_OK


def _cmd_dimension(args):
    t = _load(args)
    _require_valid(t)
    q = adjacency_quiver(t)
    c = _scalars(q, args.scalars)
    a = truncated_quotient(q, c, args.truncation)
    return {
        "formula_dimension": algebra_dimension(t),
        "hypothesis_report": hypothesis_report(q, c),
        "oracle": a.summary(),
        "scalars": c.to_list(),
    }, EXIT_OK


def _cmd_cartan(args):
    t = _load(args)
    _require_valid(t)
    C = cartan_matrix(t)
    q = adjacency_quiver(t)
    c = _scalars(q, args.scalars)
    out = C.to_dict()
    out["hypothesis_report"] = hypothesis_report(q, c)
    return out, EXIT_OK if C.ok else EXIT_FAILED


def _cmd_verify(args):
    t = _load(args)
    _require_valid(t)
    return verify_triangulation(t, args.scalars, args.truncation, args.all)


def _cmd_report(args):
    t = _load(args)
    _require_valid(t)
    q = adjacency_quiver(t)
    c = _scalars(q, args.scalars)
    return {
        "triangulation": t.to_dict(),
        "surface": _surface_info(t),
        "conditions": condition_report(t),
        "puncture_cycles": [p.to_dict() for p in puncture_cycles(t)],
        "quiver": {
            "vertices": q.n_vertices,
            "arrows": q.n_arrows,
            "g_orbit_sizes": [len(o) for o in q.g_orbits],
            "conditions": quiver_conditions(q),
        },
        "hypothesis_report": hypothesis_report(q, c),
        "formula_dimension": algebra_dimension(t),
        "cartan": cartan_matrix(t).to_dict(),
        "kernel_backend": BACKEND,
    }, EXIT_OK


def _cmd_batch(args):
    seeds = [None] if args.seeds is None else _int_list(args.seeds)
    fam = Family(_int_list(args.genera), _int_list(args.puncture_counts), seeds)
    out = batch_verify(fam, full=args.all, N=args.truncation)
    bad = out["summary"]["fail"] + out["summary"]["error"]
    return out, EXIT_OK if not bad else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", metavar="PATH", help="triangulation JSON {\"triangles\": [[a,b,c],...]}")
    common.add_argument("--genus", type=int)
    common.add_argument("--punctures", type=int)
    common.add_argument("--seed", type=int, help="random arc choice when inserting punctures")
    common.add_argument("--scalars", metavar="LIST", help="comma-separated nonzero rationals, one per g-orbit")
    common.add_argument("--truncation", type=int, metavar="N")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--output", metavar="PATH")

    parser = argparse.ArgumentParser(prog="surfqp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb in VERBS:
        p = sub.add_parser(verb, parents=[common])
        if verb in ("verify", "batch"):
            p.add_argument("--all", action="store_true", help="also check symmetry and the center")
        if verb == "batch":
            p.add_argument("--genera", default="", metavar="LIST", help="e.g. 0-2")
            p.add_argument("--puncture-counts", default="", metavar="LIST", help="e.g. 1-6")
            p.add_argument("--seeds", metavar="LIST")
    return parser


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _flatten(obj[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and obj and isinstance(obj[0], dict):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, json.dumps(obj, sort_keys=True, separators=(",", ":")) if isinstance(obj, (list, dict)) else (
            str(obj).lower() if isinstance(obj, bool) else str(obj)
        )


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    rows = list(_flatten(report))
    width = max((len(k) for k, _ in rows), default=0)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)


HANDLERS = {
    "validate": _cmd_validate,
    "construct": _cmd_construct,
    "quiver": _cmd_quiver,
    "dimension": _cmd_dimension,
    "cartan": _cmd_cartan,
    "verify": _cmd_verify,
    "report": _cmd_report,
    "batch": _cmd_batch,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        report, code = HANDLERS[args.verb](args)
    except HypothesisError as exc:
        print(str(exc), file=stderr)
        return EXIT_HYPOTHESES
    except OracleMismatchError as exc:
        print(f"check failed: {exc}", file=stderr)
        return EXIT_FAILED
    except (SurfQPError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INVALID
    if code == EXIT_HYPOTHESES and "message" in report:
        print(report["message"], file=stderr)
    text = render(report, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
