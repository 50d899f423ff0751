"""Command-line front end.

    fdmethod solve --coeffs -60,120 --mesh uniform:3 --n 1..2 --rank 10 --digits 120
    fdmethod reference --coeffs -60,120 --n 1..4 --digits 30

A run can also be described by a flat ``key = value`` file (``--config``);
flags given on the command line override the file.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from decimal import Decimal, InvalidOperation
from typing import Optional

import mpmath

from .driver import RANK_CAP, ProblemConfig, run_fd
from .errors import FDError
from .potential import PolynomialPotential
from .scalars import PrecisionContext
from .verify import (check_threshold, layer_checks, oracle_eigenvalue, reference_eigenvalue,
                     reports, residual_norm, residual_norm_quadrature)

CSV_COLUMNS = ("n", "m", "lambda", "delta", "omega", "r_n", "convergent")
FORMATS = ("table", "csv", "json")
REFERENCES = ("paper", "oracle", "none")


def _decimal(text: str) -> str:
    text = text.strip()
    try:
        Decimal(text)
    except InvalidOperation:
        raise ValueError(f"not a decimal number: {text!r}") from None
    return text


def _decimal_list(text: str) -> tuple:
    return tuple(_decimal(v) for v in text.split(",") if v.strip())


def parse_indices(text: str) -> tuple:
    """``"3"`` or ``"1..4"`` to a tuple of eigenvalue indices."""
    text = text.strip()
    if ".." in text:
        lo, hi = (int(v) for v in text.split(".."))
    else:
        lo = hi = int(text)
    if lo < 1 or hi < lo:
        raise ValueError(f"bad index range {text!r}")
    return tuple(range(lo, hi + 1))


@dataclass(frozen=True)
class RunSpec:
    A: str = "0"
    B: str = "1"
    coeffs: str = "-60,120"
    mesh: str = "uniform:1"
    base: str = "average"
    n: str = "1"
    rank: int = 5
    digits: int = 30
    format: str = "table"
    reference: str = "paper"
    check: bool = False

    def __post_init__(self):
        self.validate()

    def validate(self):
        A, B = Decimal(_decimal(self.A)), Decimal(_decimal(self.B))
        if not A < B:
            raise ValueError("need A < B")
        if not _decimal_list(self.coeffs):
            raise ValueError("no potential coefficients given")
        kind, points = self.mesh_points()
        if kind == "points" and any(not A < Decimal(p) < B for p in points):
            raise ValueError("interior mesh points must lie strictly inside (A, B)")
        self.base_values()
        parse_indices(self.n)
        if not 0 <= self.rank <= RANK_CAP:
            raise ValueError(f"rank must lie in [0, {RANK_CAP}]")
        if self.digits < 15:
            raise ValueError("digits must be >= 15")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")
        if self.reference not in REFERENCES:
            raise ValueError(f"reference must be one of {REFERENCES}")

    def mesh_points(self) -> tuple:
        kind, _, arg = self.mesh.partition(":")
        if kind == "uniform":
            N = int(arg)
            if N < 1:
                raise ValueError("uniform mesh needs N >= 1")
            return kind, N
        if kind == "points":
            pts = _decimal_list(arg)
            if any(Decimal(b) <= Decimal(a) for a, b in zip(pts, pts[1:])):
                raise ValueError("mesh points must be increasing")
            return kind, pts
        raise ValueError(f"mesh must be uniform:N or points:x1,x2,..., got {self.mesh!r}")

    def base_values(self) -> tuple:
        kind, _, arg = self.base.partition(":")
        if kind in ("average", "zero") and not arg:
            return kind, None
        if kind == "explicit":
            return kind, _decimal_list(arg)
        raise ValueError(f"base must be average, zero or explicit:v1,..., got {self.base!r}")

    @property
    def indices(self) -> tuple:
        return parse_indices(self.n)

    def problem(self, n: int) -> ProblemConfig:
        kind, mesh = self.mesh_points()
        policy, explicit = self.base_values()
        return ProblemConfig(
            coeffs=_decimal_list(self.coeffs), A=self.A, B=self.B,
            N=mesh if kind == "uniform" else len(mesh) + 1,
            points=mesh if kind == "points" else None,
            policy=policy, explicit=explicit, n=n, m=self.rank, digits=self.digits,
        )

    def dumps(self) -> str:
        return "".join(f"{f.name} = {_fmt_value(getattr(self, f.name))}\n" for f in fields(self))

    @classmethod
    def loads(cls, text: str) -> "RunSpec":
        return cls(**parse_config_text(text))


def _fmt_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _coerce(name: str, value: str):
    kind = {f.name: f.type for f in fields(RunSpec)}[name]
    if kind == "int":
        return int(value)
    if kind == "bool":
        if value.lower() not in ("true", "false", "1", "0", "yes", "no"):
            raise ValueError(f"{name} must be a boolean")
        return value.lower() in ("true", "1", "yes")
    return value


def parse_config_text(text: str) -> dict:
    known = {f.name for f in fields(RunSpec)}
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or key not in known:
            raise ValueError(f"config line {lineno}: expected one of {sorted(known)} = value")
        out[key] = _coerce(key, value)
    return out


# --- running ----------------------------------------------------------------------

def _num(x, digits: int) -> Optional[str]:
    return None if x is None else mpmath.nstr(x, digits)


def solve_one(spec: RunSpec, n: int) -> dict:
    """Rows and check results for one eigenpair; plain strings so it crosses processes."""
    try:
        result = run_fd(spec.problem(n))
        ref, source = reference_eigenvalue(result.q, result.mesh.A, result.mesh.B, n,
                                           result.ctx, spec.reference)
        th = result.theorem1
        rows = []
        for rep in reports(result, ref, source):
            rows.append({
                "n": str(n), "m": str(rep.m),
                "lambda": _num(rep.lam, spec.digits),
                "delta": _num(rep.delta, spec.digits),
                "omega": _num(rep.omega, spec.digits),
                "r_n": _num(th.r_n, spec.digits),
                "convergent": "true" if th.convergent else "false",
            })
        out = {"n": n, "rows": rows, "source": source.value if source else None, "error": None}
        if spec.check:
            out["checks"] = run_checks(result)
        return out
    except (FDError, ValueError, ZeroDivisionError) as exc:
        return {"n": n, "rows": [], "source": None, "error": f"{type(exc).__name__}: {exc}"}


def run_checks(result) -> list:
    """Worst violation per layer plus closed-form against quadrature residual norms."""
    limit = check_threshold(result.ctx)
    out = []
    for c in layer_checks(result):
        out.append({"what": f"layer {c.j}", "worst": mpmath.nstr(c.worst, 3), "ok": bool(c.worst <= limit)})
    for k in range(min(result.m, 3) + 1):
        closed = residual_norm(result, k)
        try:
            quad = residual_norm_quadrature(result, k)
            err = abs(closed - quad) / (1 + closed)
            ok = bool(err <= limit)
            worst = mpmath.nstr(err, 3)
        except FDError as exc:
            ok, worst = False, str(exc)
        out.append({"what": f"omega rank {k}", "worst": worst, "ok": ok})
    return out


def run_spec(spec: RunSpec, jobs: int = 1) -> list:
    if jobs > 1 and len(spec.indices) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(solve_one, [spec] * len(spec.indices), spec.indices))
    else:
        results = [solve_one(spec, n) for n in spec.indices]
    return sorted(results, key=lambda r: r["n"])


# --- output -----------------------------------------------------------------------

def _short(s: Optional[str]) -> str:
    return "-" if s is None else mpmath.nstr(mpmath.mpf(s), 3)


def format_table(spec: RunSpec, results: list) -> str:
    ok = [r for r in results if not r["error"]]
    lines = []
    for r in results:
        if r["error"]:
            lines.append(f"# n={r['n']}: {r['error']}")
            continue
        last = r["rows"][-1]
        conv = "yes" if last["convergent"] == "true" else "no"
        lines.append(f"# n={r['n']}  lambda~={last['lambda']}  "
                     f"r_n={_short(last['r_n'])}  convergent={conv}  reference={r['source'] or 'none'}")
    if ok:
        header = ["m"] + [f"{name}_{r['n']}" for r in ok for name in ("delta", "omega")]
        body = []
        for k in range(spec.rank + 1):
            body.append([str(k)] + [v for r in ok for v in (_short(r["rows"][k]["delta"]), _short(r["rows"][k]["omega"]))])
        widths = [max(len(row[c]) for row in [header] + body) for c in range(len(header))]
        for row in [header] + body:
            lines.append("  ".join(cell.rjust(w) for cell, w in zip(row, widths)))
    for r in results:
        for c in r.get("checks", []):
            lines.append(f"# check n={r['n']} {c['what']}: {c['worst']} {'ok' if c['ok'] else 'FAIL'}")
    return "\n".join(lines) + "\n"


def format_csv(results: list) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in results:
        for row in r["rows"]:
            writer.writerow({k: "" if row[k] is None else row[k] for k in CSV_COLUMNS})
    return buf.getvalue()


def format_json(spec: RunSpec, results: list) -> str:
    doc = {
        "spec": asdict(spec),
        "results": [row for r in results for row in r["rows"]],
        "errors": {str(r["n"]): r["error"] for r in results if r["error"]},
        "checks": {str(r["n"]): r["checks"] for r in results if r.get("checks")},
    }
    return json.dumps(doc, indent=2) + "\n"


def cmd_solve(spec: RunSpec, jobs: int = 1, out=None) -> int:
    out = out or sys.stdout
    results = run_spec(spec, jobs)
    if spec.format == "csv":
        out.write(format_csv(results))
    elif spec.format == "json":
        out.write(format_json(spec, results))
    else:
        out.write(format_table(spec, results))
    failed = False
    for r in results:
        if r["error"]:
            print(f"error for n={r['n']}: {r['error']}", file=sys.stderr)
            failed = True
        for c in r.get("checks", []):
            if not c["ok"]:
                print(f"check failed for n={r['n']}, {c['what']}: {c['worst']}", file=sys.stderr)
                failed = True
    return 1 if failed else 0


def cmd_reference(spec: RunSpec, out=None) -> int:
    """Oracle eigenvalues for the requested indices, printed to ``spec.digits`` digits."""
    out = out or sys.stdout
    ctx = PrecisionContext(max(spec.digits + 15, 30), 15)
    q = PolynomialPotential.from_values(_decimal_list(spec.coeffs), ctx)
    status = 0
    for n in spec.indices:
        try:
            lam = oracle_eigenvalue(q, (spec.A, spec.B), n, ctx)
            out.write(f"{n} {mpmath.nstr(lam, spec.digits)}\n")
        except (FDError, ValueError) as exc:
            print(f"error for n={n}: {type(exc).__name__}: {exc}", file=sys.stderr)
            status = 1
    return status


# --- argument handling ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fdmethod", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (("solve", "eigenvalue corrections with errors and residual norms"),
                            ("reference", "oracle eigenvalues from extrapolated base-problem solves")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="flat key = value file; flags override it")
        p.add_argument("--A", dest="A")
        p.add_argument("--B", dest="B")
        p.add_argument("--coeffs", help="c0,c1,... of q(x) = sum c_p x^p")
        p.add_argument("--mesh", help="uniform:N or points:x1,x2,... (interior points)")
        p.add_argument("--base", help="average, zero or explicit:v1,...,vN")
        p.add_argument("--n", help="index or range like 1..4")
        p.add_argument("--rank", type=int)
        p.add_argument("--digits", type=int)
        p.add_argument("--format", choices=FORMATS)
        p.add_argument("--reference", choices=REFERENCES)
        p.add_argument("--check", action="store_true", default=None,
                       help="run the per-layer invariant suite and compare residual norms with quadrature")
        p.add_argument("--jobs", type=int, default=1, help="parallel workers over n")
    return parser


def spec_from_args(args) -> RunSpec:
    values = {}
    if args.config:
        with open(args.config) as fh:
            values.update(parse_config_text(fh.read()))
    for f in fields(RunSpec):
        v = getattr(args, f.name, None)
        if v is not None:
            values[f.name] = v
    return RunSpec(**values)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = spec_from_args(args)
    except (ValueError, OSError) as exc:
        print(f"invalid run description: {exc}", file=sys.stderr)
        return 2
    if args.command == "reference":
        return cmd_reference(spec)
    return cmd_solve(spec, jobs=args.jobs)


if __name__ == "__main__":
    sys.exit(main())
