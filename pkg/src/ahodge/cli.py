"""Command line interface: manifest ingestion, orchestration, reports.

``ahodge run`` validates a manifold, computes the structural flags, the
three (p,0) tables with explicit bases, and the symplectic obstruction
verdict, then emits a deterministic text or JSON report.  Exit code 0 means
every space was computed exactly, 2 means something came back UNDETERMINED,
1 means the manifest failed validation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import fourier, hermitian, obstruction
from .builtins import builtin_names, get_builtin
from .fourier import EXACT, HarmonicReport, UNDETERMINED_STATUS
from .manifold import ManifoldSpec, load_spec
from .scalars import format_scalar


@dataclass
class RunConfig:
    source: str
    overrides: dict = field(default_factory=dict)
    degrees: list | None = None
    report_format: str = "text"
    modes_bound: int = 10**6
    prec: int = 128


def _load_source(source: str, overrides: dict) -> ManifoldSpec:
    if source.startswith("builtin:"):
        return get_builtin(source[len("builtin:") :], overrides)
    text = Path(source).read_text(encoding="utf-8")
    return load_spec(text, overrides)


THEORIES = ("dbar", "deltabar", "dol")


def compute_report(config: RunConfig) -> HarmonicReport:
    spec = _load_source(config.source, config.overrides)
    relations = spec.check_d2_relations()
    h = hermitian.metric_for(spec, config.prec)
    ak = h.is_almost_kahler
    laplacians_equal = hermitian.delta_laplacians_equal(h, spec)
    flags = {
        "d2_zero": True,
        "d2_relations_hold": all(ok for _name, ok, _w in relations),
        "integrable": spec.is_integrable(),
        "almost_kahler": ak,
        "delta_laplacians_equal": laplacians_equal,
        "ak_identity": laplacians_equal if ak else None,
    }
    degrees = config.degrees if config.degrees is not None else list(range(spec.n + 1))
    spaces = {}
    for p in degrees:
        spaces[("dbar", p)] = fourier.harmonic_basis_dbar(p, spec, config.modes_bound)
        spaces[("deltabar", p)] = fourier.harmonic_basis_deltabar(
            p, spec, h, config.modes_bound
        )
        spaces[("dol", p)] = fourier.dolbeault_basis(p, spec, config.modes_bound)
    verdict = obstruction.symplectic_obstruction(spec, config.modes_bound)
    status = EXACT
    if any(s.status != EXACT for s in spaces.values()):
        status = UNDETERMINED_STATUS
    params = {k: format_scalar(v) for k, v in sorted(spec.params.items())}
    report = HarmonicReport(
        manifold=spec.name,
        params=params,
        degrees=list(degrees),
        spaces=spaces,
        flags=flags,
        obstruction=verdict,
        status=status,
    )
    report.spec = spec  # for pretty-printing bases with the right symbol
    return report


def report_to_dict(report: HarmonicReport) -> dict:
    spec = report.spec
    tables = {}
    bases = {}
    statuses = {}
    for theory in THEORIES:
        tables[theory] = {}
        bases[theory] = {}
        statuses[theory] = {}
        for p in report.degrees:
            space = report.spaces[(theory, p)]
            tables[theory][str(p)] = space.dimension
            statuses[theory][str(p)] = space.status
            bases[theory][str(p)] = [
                mf.pretty(spec.symbol, spec.fibration.coords) for mf in space.basis
            ]
    verdict = report.obstruction
    obstruction_out = {
        "verdict": verdict.verdict,
        "rule": verdict.rule,
        "witness": (
            verdict.witness.pretty(spec.symbol, spec.fibration.coords)
            if verdict.witness is not None
            else None
        ),
    }
    return {
        "manifold": {"name": report.manifold, "params": report.params},
        "flags": report.flags,
        "tables": tables,
        "bases": bases,
        "space_status": statuses,
        "obstruction": obstruction_out,
        "status": report.status,
    }


def report_to_text(report: HarmonicReport) -> str:
    spec = report.spec
    lines = []
    params = ", ".join(f"{k} = {v}" for k, v in report.params.items())
    lines.append(f"manifold: {report.manifold}" + (f"  ({params})" if params else ""))
    f = report.flags
    lines.append(
        "validation: d^2 = 0 {}; bidegree relations {}".format(
            "ok" if f["d2_zero"] else "FAILED",
            "ok" if f["d2_relations_hold"] else "FAILED",
        )
    )
    ak_text = "n/a" if f["ak_identity"] is None else str(f["ak_identity"]).lower()
    lines.append(
        "flags: integrable = {}; almost_kahler = {}; "
        "delta_laplacians_equal = {}; ak_identity = {}".format(
            str(f["integrable"]).lower(),
            str(f["almost_kahler"]).lower(),
            str(f["delta_laplacians_equal"]).lower(),
            ak_text,
        )
    )
    lines.append("h^(p,0) table:")
    lines.append("  p | dbar | deltabar | dol | status")
    for p in report.degrees:
        row = []
        stat = []
        for theory in THEORIES:
            space = report.spaces[(theory, p)]
            row.append("?" if space.dimension is None else str(space.dimension))
            stat.append(space.status)
        overall = (
            EXACT if all(s == EXACT for s in stat) else UNDETERMINED_STATUS
        )
        lines.append(
            f"  {p} | {row[0]:>4} | {row[1]:>8} | {row[2]:>3} | {overall}"
        )
    lines.append("bases:")
    for theory in THEORIES:
        for p in report.degrees:
            space = report.spaces[(theory, p)]
            if not space.basis:
                continue
            rendered = ", ".join(
                mf.pretty(spec.symbol, spec.fibration.coords) for mf in space.basis
            )
            lines.append(f"  {theory} p={p}: {rendered}")
    verdict = report.obstruction
    if verdict.witness is not None:
        lines.append(
            "obstruction: {} (rule: {}, witness: {})".format(
                verdict.verdict,
                verdict.rule,
                verdict.witness.pretty(spec.symbol, spec.fibration.coords),
            )
        )
    else:
        lines.append(f"obstruction: {verdict.verdict}")
    lines.append(f"status: {report.status}")
    return "\n".join(lines) + "\n"


def run(config: RunConfig) -> tuple[str, int]:
    """Compute the report; returns (rendered text, exit code)."""
    report = compute_report(config)
    if config.report_format == "json":
        rendered = json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n"
    else:
        rendered = report_to_text(report)
    code = 0 if report.status == EXACT else 2
    return rendered, code


def check(source: str) -> tuple[str, int]:
    """Load, validate, and evaluate the seven bidegree relations."""
    spec = _load_source(source, {})
    lines = [f"manifold: {spec.name}", "d^2 = 0: ok"]
    ok_all = True
    for name, ok, witness in spec.check_d2_relations():
        mark = "ok" if ok else f"FAILED at {witness}"
        ok_all = ok_all and ok
        lines.append(f"relation {name}: {mark}")
    lines.append("result: " + ("pass" if ok_all else "fail"))
    return "\n".join(lines) + "\n", 0 if ok_all else 1


def _parse_degrees(text: str):
    return [int(part) for part in text.split(",") if part.strip() != ""]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ahodge",
        description=(
            "Exact (p,0) harmonic-form invariants for invariant almost-complex "
            "structures on solvmanifolds. Sources are manifest paths or "
            f"builtin:NAME with NAME one of {', '.join(builtin_names())}."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    runp = sub.add_parser("run", help="compute tables, bases, flags, obstruction")
    runp.add_argument("source")
    runp.add_argument("--a", help="override parameter a (scalar expression)")
    runp.add_argument("--b", help="override parameter b")
    runp.add_argument("--c", help="override parameter c")
    runp.add_argument("--p", help="comma-separated degrees, default 0..n")
    runp.add_argument("--report", choices=("text", "json"), default="text")
    runp.add_argument("--modes-bound", type=int, default=10**6)
    runp.add_argument("--prec", type=int, default=128)
    checkp = sub.add_parser("check", help="validate a manifest only")
    checkp.add_argument("source")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "check":
            out, code = check(args.source)
        else:
            overrides = {}
            for key in ("a", "b", "c"):
                value = getattr(args, key)
                if value is not None:
                    overrides[key] = value
            config = RunConfig(
                source=args.source,
                overrides=overrides,
                degrees=_parse_degrees(args.p) if args.p else None,
                report_format=args.report,
                modes_bound=args.modes_bound,
                prec=args.prec,
            )
            out, code = run(config)
    except Exception as exc:  # validation errors carry their own context
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
