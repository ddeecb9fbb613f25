"""Command-line surface and batch runner.

Subcommands mirror the library: ``regions``, ``weights``, ``group``,
``euler``, ``arch`` and ``report``.  Every command can also be driven
through a :class:`JobSpec` (``run``), which is what the tests use.

Configuration precedence: command-line flags beat the JSON config file,
which beats built-in defaults; ``GSPZETA_DIGITS`` sets the default numeric
precision.  Output JSON is deterministic (sorted keys, canonical scalar
rendering): identical jobs yield byte-identical documents.

Exit codes: 0 success, 2 schema errors, 3 domain errors, 4 numeric
failures.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import arch, euler, groups, regions, report, weyl
from .errors import DomainError, NumericFailure, SchemaError

_COMMANDS = (
    "regions.classify", "regions.critical",
    "weights.kappa", "weights.branch", "weights.ktype",
    "group.verify",
    "euler.compute", "euler.audit",
    "arch.verify", "arch.zeta", "arch.section", "arch.whittaker",
    "report.scan",
)


@dataclass(frozen=True)
class JobSpec:
    command: str
    inputs: dict = field(default_factory=dict)
    output_format: str = "json"
    precision: Optional[int] = None
    mode: str = "exact"

    def __post_init__(self):
        if self.command not in _COMMANDS:
            raise SchemaError(f"unknown command {self.command!r}")
        if self.output_format not in ("json", "csv", "tex"):
            raise SchemaError(f"unknown output format {self.output_format!r}")
        if self.mode not in ("exact", "numeric"):
            raise SchemaError(f"unknown mode {self.mode!r}")
        if self.mode == "numeric" and self.digits < 15:
            raise SchemaError("numeric mode requires precision >= 15")

    @property
    def digits(self) -> int:
        if self.precision is not None:
            return int(self.precision)
        return arch.default_digits()


def _require(inputs: dict, *keys):
    missing = [k for k in keys if k not in inputs]
    if missing:
        raise SchemaError(f"missing input field(s): {', '.join(missing)}")


def _int(inputs: dict, key: str) -> int:
    value = inputs[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"field {key!r} must be an integer")
    return value


def _fraction(inputs: dict, key: str, mode: str) -> Fraction:
    value = inputs[key]
    try:
        frac = Fraction(str(value))
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"field {key!r} is not a rational: {value!r}") \
            from exc
    if mode == "exact" and (2 * frac).denominator != 1:
        raise SchemaError(
            f"exact mode requires half-integral {key!r}, got {frac}")
    return frac


def _scalar(value):
    """Canonical JSON rendering for the numeric types we emit."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, complex):
        return {"re": repr(value.real), "im": repr(value.imag)}
    return value


def _canonical(doc) -> str:
    def default(value):
        try:
            return _scalar(value)
        except Exception:
            return str(value)
    return json.dumps(doc, sort_keys=True, default=default,
                      separators=(",", ": "), indent=1) + "\n"


# -- per-command handlers --------------------------------------------------

def _run_regions_classify(job: JobSpec):
    _require(job.inputs, "k1", "k2", "ell", "s")
    wt = regions.WeightTuple(
        _int(job.inputs, "k1"), _int(job.inputs, "k2"),
        _int(job.inputs, "ell"), _fraction(job.inputs, "s", job.mode))
    return regions.classify(wt).to_json()


def _run_regions_critical(job: JobSpec):
    _require(job.inputs, "k1", "k2", "ell")
    crit = regions.critical_s_set(
        _int(job.inputs, "k1"), _int(job.inputs, "k2"),
        _int(job.inputs, "ell"))
    return {"critical_s": [str(s) for s in crit], "count": len(crit)}


def _run_weights_kappa(job: JobSpec):
    _require(job.inputs, "i", "r1", "r2")
    out = weyl.kappa(_int(job.inputs, "i"),
                     weyl.Weight(_int(job.inputs, "r1"),
                                 _int(job.inputs, "r2")))
    return out.to_json()


def _run_weights_branch(job: JobSpec):
    _require(job.inputs, "k1", "k2")
    pairs = weyl.branch_restriction(_int(job.inputs, "k1"),
                                    _int(job.inputs, "k2"))
    return {"weights": [list(p) for p in pairs], "count": len(pairs)}


def _run_weights_ktype(job: JobSpec):
    _require(job.inputs, "r1", "r2")
    p = weyl.ktype_params(_int(job.inputs, "r1"), _int(job.inputs, "r2"))
    return {"lambda1": p.lambda1, "lambda2": p.lambda2, "d": p.d,
            "tau1": list(p.tau1), "tau2": list(p.tau2)}


def _run_group_verify(job: JobSpec):
    _require(job.inputs, "identity")
    which = job.inputs["identity"]
    if which == "decomposition":
        result = groups.verify_decomposition_identity()
        return {"status": "pass", "certificate": result}
    if which == "open_orbit":
        samples = job.inputs.get("samples", 100)
        seed = job.inputs.get("seed", 0)
        result = groups.verify_open_orbit_lemma(samples, seed)
        return {"status": "pass" if result["all_passed"] else "fail",
                "certificate": result}
    raise SchemaError(f"unknown identity {which!r}")


def _euler_params(job: JobSpec) -> euler.HeckeParams:
    bindings = job.inputs.get("bindings", {})
    if not isinstance(bindings, dict):
        raise SchemaError("bindings must be an object")
    return euler.HeckeParams(
        {k: Fraction(str(v)) for k, v in bindings.items()})


def _run_euler_compute(job: JobSpec):
    _require(job.inputs, "factor")
    h = _euler_params(job)
    which = job.inputs["factor"]
    if which == "delta":
        f = euler.delta_factor(h)
    elif which == "delta_prime":
        _require(job.inputs, "s")
        f = euler.delta_prime(h, _fraction(job.inputs, "s", "exact"))
    elif which == "euler_D":
        f = euler.euler_D(h)
    elif which == "euler_D_improved":
        f = euler.euler_D_improved(h)
    elif which == "depleted":
        f = euler.depleted_value(h)
    elif which == "iwahori":
        _require(job.inputs, "ell")
        f = euler.iwahori_value(h, _int(job.inputs, "ell"))
    elif which == "sixteen":
        shift = job.inputs.get("shift")
        f = euler.sixteen_factor(
            h, Fraction(str(job.inputs.get("s", "1/2"))),
            None if shift is None else Fraction(str(shift)))
    else:
        raise SchemaError(f"unknown factor {which!r}")
    return {"factor": which, "degree": f.degree, **f.to_json()}


def _run_euler_audit(job: JobSpec):
    return euler.normalization_audit()


def _arch_samples(job: JobSpec) -> list:
    _require(job.inputs, "samples")
    raw = job.inputs["samples"]
    if not isinstance(raw, list) or not raw:
        raise SchemaError("samples must be a non-empty list")
    out = []
    for item in raw:
        if isinstance(item, dict):
            out.append(complex(float(item.get("re", 0)),
                               float(item.get("im", 0))))
        elif isinstance(item, (int, float)):
            out.append(item)
        elif isinstance(item, str):
            out.append(Fraction(item))
        else:
            raise SchemaError(f"bad sample {item!r}")
    return out


def _run_arch_verify(job: JobSpec):
    _require(job.inputs, "region", "k1", "k2", "c1", "c2")
    region = job.inputs["region"]
    args = (_int(job.inputs, "k1"), _int(job.inputs, "k2"),
            _int(job.inputs, "c1"), _int(job.inputs, "c2"),
            _arch_samples(job), job.digits)
    if region == "D":
        return arch.verify_regionD_identity(*args)
    if region == "F":
        return arch.verify_regionF_identity(*args)
    raise SchemaError(f"unknown region {region!r}")


def _run_arch_zeta(job: JobSpec):
    _require(job.inputs, "region", "k1", "k2", "c1", "c2", "s")
    value = arch.zeta_value(
        job.inputs["region"], _int(job.inputs, "k1"),
        _int(job.inputs, "k2"), _int(job.inputs, "c1"),
        _int(job.inputs, "c2"), _fraction(job.inputs, "s", job.mode),
        job.digits)
    return {"value": complex(value), "digits": job.digits}


def _run_arch_section(job: JobSpec):
    _require(job.inputs, "c", "s")
    c = _int(job.inputs, "c")
    s = _fraction(job.inputs, "s", "numeric")
    closed = arch.siegel_section_value(c, s, job.digits)
    out = {"closed_form": complex(closed), "digits": job.digits}
    if job.inputs.get("oracle"):
        oracle = arch.siegel_section_quadrature(c, s, job.digits)
        rel = abs(complex(closed) - complex(oracle)) / abs(complex(closed))
        out["oracle"] = complex(oracle)
        out["rel_err"] = float(rel)
    return out


def _run_arch_whittaker(job: JobSpec):
    c = job.inputs.get("c", 2)
    if not isinstance(c, int) or isinstance(c, bool):
        raise SchemaError("field 'c' must be an integer")
    import mpmath as mp
    value = arch.whittaker_normalization_check(c, job.digits)
    ref = float(mp.e ** (-2 * mp.pi))
    return {"value": float(value), "reference": ref,
            "rel_err": abs(float(value) - ref) / ref}


def _run_report_scan(job: JobSpec):
    _require(job.inputs, "k1", "k2", "ell_max")
    k1, k2 = _int(job.inputs, "k1"), _int(job.inputs, "k2")
    ell_max = _int(job.inputs, "ell_max")
    rows = report.region_scan(k1, k2, range(1, ell_max + 1))
    out = {"rows": [{k: _scalar(v) for k, v in r.items()} for r in rows]}
    out_csv = job.inputs.get("out_csv")
    if out_csv:
        with open(out_csv, "w") as fh:
            fh.write(report.emit_table(rows, "csv"))
        out["csv_path"] = out_csv
        figure = os.path.splitext(out_csv)[0] + ".png"
        out["figure_path"] = report.render_region_diagram(
            k1, k2, ell_max, figure)
    return out, rows


_HANDLERS = {
    "regions.classify": _run_regions_classify,
    "regions.critical": _run_regions_critical,
    "weights.kappa": _run_weights_kappa,
    "weights.branch": _run_weights_branch,
    "weights.ktype": _run_weights_ktype,
    "group.verify": _run_group_verify,
    "euler.compute": _run_euler_compute,
    "euler.audit": _run_euler_audit,
    "arch.verify": _run_arch_verify,
    "arch.zeta": _run_arch_zeta,
    "arch.section": _run_arch_section,
    "arch.whittaker": _run_arch_whittaker,
    "report.scan": _run_report_scan,
}


def run(job: JobSpec) -> str:
    """Execute a job, returning the rendered output document.  Raises the
    error classes that ``main`` maps to exit codes."""
    result = _HANDLERS[job.command](job)
    rows = None
    if isinstance(result, tuple):
        result, rows = result
    if job.output_format == "json":
        return _canonical(result)
    if rows is None:
        rows = result.get("rows") if isinstance(result, dict) else None
        if rows is None:
            rows = [result]
    return report.emit_table(rows, job.output_format)


# -- argparse surface ------------------------------------------------------

def _load_config(path: Optional[str]) -> dict:
    if not path:
        return {}
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read config file {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("config file must hold a JSON object")
    return doc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gspzeta",
        description="Critical regions, branching data, Euler factors and "
                    "archimedean zeta integrals for GSp4 x GL2.")
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--digits", type=int, default=None,
                        help="decimal working precision")
    parser.add_argument("--format", choices=("json", "csv", "tex"),
                        default=None, help="output format (default json)")
    parser.add_argument("--mode", choices=("exact", "numeric"), default=None)
    parser.add_argument("--seed", type=int, default=None,
                        help="seed for randomized verification")
    sub = parser.add_subparsers(dest="group", required=True)

    p = sub.add_parser("regions", help="critical-region classification")
    ps = p.add_subparsers(dest="action", required=True)
    for name in ("classify", "critical"):
        q = ps.add_parser(name)
        q.add_argument("--k1", type=int, required=True)
        q.add_argument("--k2", type=int, required=True)
        q.add_argument("--ell", type=int, required=True)
        if name == "classify":
            q.add_argument("--s", required=True)

    p = sub.add_parser("weights", help="Weyl and branching data")
    ps = p.add_subparsers(dest="action", required=True)
    q = ps.add_parser("kappa")
    q.add_argument("--i", type=int, required=True)
    q.add_argument("--r1", type=int, required=True)
    q.add_argument("--r2", type=int, required=True)
    q = ps.add_parser("branch")
    q.add_argument("--k1", type=int, required=True)
    q.add_argument("--k2", type=int, required=True)
    q = ps.add_parser("ktype")
    q.add_argument("--r1", type=int, required=True)
    q.add_argument("--r2", type=int, required=True)

    p = sub.add_parser("group", help="exact matrix-identity verification")
    ps = p.add_subparsers(dest="action", required=True)
    q = ps.add_parser("verify")
    q.add_argument("--identity", required=True,
                   choices=("decomposition", "open_orbit"))
    q.add_argument("--samples", type=int, default=100)

    p = sub.add_parser("euler", help="non-archimedean Euler factors")
    ps = p.add_subparsers(dest="action", required=True)
    q = ps.add_parser("compute")
    q.add_argument("--factor", required=True)
    q.add_argument("--s", default=None)
    q.add_argument("--ell", type=int, default=None)
    q.add_argument("--shift", default=None)
    ps.add_parser("audit")

    p = sub.add_parser("arch", help="archimedean identities and values")
    ps = p.add_subparsers(dest="action", required=True)
    q = ps.add_parser("verify")
    q.add_argument("--region", required=True, choices=("D", "F"))
    for f in ("k1", "k2", "c1", "c2"):
        q.add_argument(f"--{f}", type=int, required=True)
    q.add_argument("--samples", required=True,
                   help="JSON list, inline or @file.json")
    q = ps.add_parser("zeta")
    q.add_argument("--region", required=True, choices=("D", "F"))
    for f in ("k1", "k2", "c1", "c2"):
        q.add_argument(f"--{f}", type=int, required=True)
    q.add_argument("--s", required=True)
    q = ps.add_parser("section")
    q.add_argument("--c", type=int, required=True)
    q.add_argument("--s", required=True)
    q.add_argument("--oracle", action="store_true")
    q = ps.add_parser("whittaker")
    q.add_argument("--c", type=int, default=2)

    p = sub.add_parser("report", help="scans with delimited output + figure")
    ps = p.add_subparsers(dest="action", required=True)
    q = ps.add_parser("scan")
    q.add_argument("--k1", type=int, required=True)
    q.add_argument("--k2", type=int, required=True)
    q.add_argument("--ell-max", type=int, required=True)
    q.add_argument("--out-csv", default=None)
    return parser


def _job_from_args(args: argparse.Namespace, config: dict) -> JobSpec:
    command = f"{args.group}.{args.action}"
    inputs = {}
    for key in ("k1", "k2", "ell", "s", "i", "r1", "r2", "c1", "c2", "c",
                "region", "identity", "factor", "shift"):
        value = getattr(args, key, None)
        if value is not None:
            inputs[key] = value
    if getattr(args, "ell_max", None) is not None:
        inputs["ell_max"] = args.ell_max
    if getattr(args, "out_csv", None) is not None:
        inputs["out_csv"] = args.out_csv
    if getattr(args, "oracle", False):
        inputs["oracle"] = True
    if getattr(args, "samples", None) is not None:
        if command == "group.verify":
            inputs["samples"] = args.samples
        else:
            raw = args.samples
            if raw.startswith("@"):
                with open(raw[1:]) as fh:
                    inputs["samples"] = json.load(fh)
            else:
                inputs["samples"] = json.loads(raw)
    seed = args.seed if args.seed is not None else config.get("seed")
    if seed is not None and command == "group.verify":
        inputs["seed"] = seed
    precision = args.digits if args.digits is not None \
        else config.get("digits")
    fmt = args.format or config.get("format", "json")
    mode = args.mode or config.get("mode", "exact")
    return JobSpec(command=command, inputs=inputs, output_format=fmt,
                   precision=precision, mode=mode)


def main(argv: Optional[list] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config)
        job = _job_from_args(args, config)
        sys.stdout.write(run(job))
        return 0
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 3
    except NumericFailure as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
