"""Command-line front end.

    diracbounds disk-spectrum --radius 1 --kmax 5 --per-fiber 3
    diracbounds analyze domain.json [more.json ...] --format json --out report.json
    diracbounds sweep --family ellipse --param x --from 0.01 --to 1.0 --steps 20
    diracbounds verify domain.json

Eigenvalue columns are in 1/length of the input coordinates. Floats are
written with 12 significant digits so identical runs give identical bytes.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import geometry
from .bounds import BoundsReport, easy_bound_audit, verify_chain
from .diskspec import MAX_PER_FIBER, disk_spectrum
from .geometry import DomainSpec, GeometryError
from .quadrature import DEFAULT_RADIAL_ORDER
from .specfun import MAX_ORDER

COMMANDS = ("disk-spectrum", "analyze", "sweep", "verify")
CSV_COLUMNS = (
    "param", "area", "perimeter", "r_i", "r_o", "r_c", "kappa_star", "rho_star", "inradius",
    "hardy_measured", "hardy_kovalev", "hardy_gaier", "lower", "easy", "transplant",
    "abstract", "fc", "fs", "fc_bound", "fs_bound", "chain_ok",
)
SPECTRUM_COLUMNS = ("k", "branch", "mu", "unit_mu", "secular_residual")
FAMILIES = {"ellipse": "x", "shifted_disk": "offset", "perturbed": "eps"}
RESOLUTION_RANGE = (64, 65536)
RADIAL_ORDER_RANGE = (8, 1024)
MAX_STEPS = 10_000


class DomainFileError(ValueError):
    """Domain JSON that does not match the schema; message names the field."""


@dataclass
class RunConfig:
    command: str
    inputs: list[str] = field(default_factory=list)
    resolution: int = geometry.DEFAULT_RESOLUTION
    radial_order: int = DEFAULT_RADIAL_ORDER
    fmt: str = "csv"
    out: str | None = None
    radius: float = 1.0
    kmax: int = 10
    per_fiber: int = 5
    family: str | None = None
    param: str | None = None
    start: float | None = None
    stop: float | None = None
    steps: int = 20
    wavenumber: int = 3
    jobs: int = 1


# --------------------------------------------------------------------------
# domain files


def _number(obj, key: str, where: str, positive: bool = False) -> float:
    if key not in obj:
        raise DomainFileError(f"{where}.{key}: missing")
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise DomainFileError(f"{where}.{key}: expected a finite number, got {v!r}")
    if positive and v <= 0:
        raise DomainFileError(f"{where}.{key}: must be positive, got {v!r}")
    return float(v)


def _number_list(obj, key: str, where: str) -> list[float]:
    v = obj.get(key, [])
    if not isinstance(v, list):
        raise DomainFileError(f"{where}.{key}: expected a list of numbers")
    for i, item in enumerate(v):
        if isinstance(item, bool) or not isinstance(item, (int, float)) or not math.isfinite(item):
            raise DomainFileError(f"{where}.{key}[{i}]: expected a finite number, got {item!r}")
    return [float(item) for item in v]


def domain_from_dict(data) -> DomainSpec:
    """Validate the domain schema and build a DomainSpec."""
    if not isinstance(data, dict):
        raise DomainFileError("top level: expected an object with 'shape' and 'offset'")
    unknown = set(data) - {"shape", "offset"}
    if unknown:
        raise DomainFileError(f"top level: unknown field(s) {sorted(unknown)}")
    shape = data.get("shape")
    if not isinstance(shape, dict):
        raise DomainFileError("shape: expected an object")
    kind = shape.get("kind")
    allowed = {"disk": {"radius"}, "ellipse": {"a", "b"}, "polar_fourier": {"a0", "cos", "sin"}}
    if kind not in allowed:
        raise DomainFileError(f"shape.kind: expected one of {sorted(allowed)}, got {kind!r}")
    extra = set(shape) - allowed[kind] - {"kind"}
    if extra:
        raise DomainFileError(f"shape: unknown field(s) {sorted(extra)} for kind {kind!r}")

    offset = data.get("offset", [0.0, 0.0])
    if (not isinstance(offset, list) or len(offset) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in offset)):
        raise DomainFileError(f"offset: expected [x, y], got {offset!r}")

    try:
        if kind == "disk":
            sh = geometry.Disk(_number(shape, "radius", "shape", positive=True))
        elif kind == "ellipse":
            a = _number(shape, "a", "shape", positive=True)
            b = _number(shape, "b", "shape", positive=True)
            if b > a:
                raise DomainFileError(f"shape.b: must not exceed shape.a ({b} > {a})")
            sh = geometry.Ellipse(a, b)
        else:
            sh = geometry.PolarFourier(
                _number(shape, "a0", "shape", positive=True),
                tuple(_number_list(shape, "cos", "shape")),
                tuple(_number_list(shape, "sin", "shape")),
            )
        spec = DomainSpec(sh, tuple(offset))
    except DomainFileError:
        raise
    except GeometryError as exc:
        raise DomainFileError(f"{'offset' if 'origin' in str(exc) else 'shape'}: {exc}") from exc
    try:
        geometry.ensure_star_shaped(spec)
    except geometry.NotStarShaped as exc:
        raise DomainFileError(f"shape: not star-shaped about the origin ({exc})") from exc
    return spec


def load_domain(path) -> DomainSpec:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise DomainFileError(f"{path}: invalid JSON ({exc})") from exc
    try:
        return domain_from_dict(data)
    except DomainFileError as exc:
        raise DomainFileError(f"{path}: {exc}") from exc


# --------------------------------------------------------------------------
# families


def family_spec(family: str, value: float, wavenumber: int = 3) -> DomainSpec:
    if family == "ellipse":
        return geometry.ellipse(1.0 + value, 1.0 / (1.0 + value))
    if family == "shifted_disk":
        return geometry.disk(1.0, (value, 0.0))
    if family == "perturbed":
        return DomainSpec(geometry.perturbed_circle(value, wavenumber))
    raise ValueError(f"unknown family {family!r}")


def sweep_values(start: float, stop: float, steps: int) -> list[float]:
    return [float(v) for v in np.linspace(start, stop, steps)]


# --------------------------------------------------------------------------
# formatting


def fmt_float(v) -> str:
    if v is None:
        return "nan"
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, str):
        return v
    return format(float(v), ".12g")


def _round(obj):
    """Recursively round floats to 12 significant digits for JSON output."""
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, complex):
        return [_round(obj.real), _round(obj.imag)]
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return float(format(v, ".12g")) if math.isfinite(v) else None
    return obj


def report_row(param, rep: BoundsReport) -> dict:
    g = rep.geometry
    return {
        "param": param,
        "area": g.area,
        "perimeter": g.perimeter,
        "r_i": g.r_i,
        "r_o": g.r_o,
        "r_c": g.r_c,
        "kappa_star": g.kappa_star,
        "rho_star": g.rho_star,
        "inradius": g.inradius,
        "hardy_measured": rep.hardy_measured,
        "hardy_kovalev": rep.kovalev_hardy,
        "hardy_gaier": rep.gaier_hardy,
        "lower": rep.lower,
        "easy": rep.easy,
        "transplant": rep.transplant_bound,
        "abstract": rep.abstract,
        "fc": rep.fc,
        "fs": rep.fs,
        "fc_bound": rep.fc_bound,
        "fs_bound": rep.fs_bound,
        "chain_ok": rep.chain_ok,
    }


def render_csv(rows: list[dict], columns) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([fmt_float(row[c]) for c in columns])
    return buf.getvalue()


def render_json(payload) -> str:
    return json.dumps(_round(payload), indent=2) + "\n"


def full_report(param, spec: DomainSpec, rep: BoundsReport) -> dict:
    out = {"param": param, "domain": spec.to_json()}
    out.update(rep.as_dict())
    return out


def summary_text(label: str, rep: BoundsReport) -> str:
    lines = [f"{label}: chain {'PASS' if rep.chain_ok else 'FAIL'} (n_modes={rep.n_modes})"]
    for link in rep.links:
        kind = "==" if link.equality_expected else ("<" if link.strict else "<=")
        lines.append(
            f"  [{'ok' if link.ok else 'FAIL'}] {link.name:24s} {fmt_float(link.lhs)} {kind} "
            f"{fmt_float(link.rhs)}  margin {fmt_float(link.margin)}"
        )
    return "\n".join(lines)


def audit_text() -> str:
    a = easy_bound_audit()
    return (
        f"easy-bound audit: j01 = {a['j01']:.6f} (|J0(j01)| = {a['j01_residual']:.1e}); "
        f"printed value {a['printed_value']} vs sqrt(lambda_1(D)) = {a['sqrt_lambda1_disk']:.6f}, "
        f"sqrt(j01) = {a['sqrt_j01']:.6f}; "
        + ("DISCREPANCY: printed value matches sqrt(j01), bounds use j01" if a["discrepancy"] else "consistent")
    )


# --------------------------------------------------------------------------
# argument parsing


def _bounded_int(lo: int, hi: int):
    def conv(text: str) -> int:
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
        if not lo <= v <= hi:
            raise argparse.ArgumentTypeError(f"must lie in [{lo}, {hi}], got {v}")
        return v
    return conv


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return v


def _finite_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"must be finite, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="diracbounds", description="Dirac eigenvalue bounds for planar domains.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt_default="csv"):
        sp.add_argument("--resolution", type=_bounded_int(*RESOLUTION_RANGE),
                        default=geometry.DEFAULT_RESOLUTION, help="boundary sampling grid")
        sp.add_argument("--radial-order", type=_bounded_int(*RADIAL_ORDER_RANGE),
                        default=DEFAULT_RADIAL_ORDER, help="Gauss-Legendre order for radial integrals")
        sp.add_argument("--format", choices=("csv", "json"), default=fmt_default, dest="fmt")
        sp.add_argument("--out", help="output file (default stdout)")

    ds = sub.add_parser("disk-spectrum", help="eigenvalues of a disk")
    ds.add_argument("--radius", type=_positive_float, default=1.0)
    ds.add_argument("--kmax", type=_bounded_int(0, MAX_ORDER), default=10)
    ds.add_argument("--per-fiber", type=_bounded_int(1, MAX_PER_FIBER), default=5)
    ds.add_argument("--format", choices=("csv", "json"), default="csv", dest="fmt")
    ds.add_argument("--out")

    an = sub.add_parser("analyze", help="all bounds for domain files")
    an.add_argument("inputs", nargs="+", metavar="DOMAIN.json")
    common(an)

    sw = sub.add_parser("sweep", help="all bounds along a one-parameter family")
    sw.add_argument("--family", choices=sorted(FAMILIES), required=True)
    sw.add_argument("--param", required=True, help="family parameter name (x, offset or eps)")
    sw.add_argument("--from", dest="start", type=_finite_float, required=True)
    sw.add_argument("--to", dest="stop", type=_finite_float, required=True)
    sw.add_argument("--steps", type=_bounded_int(1, MAX_STEPS), default=20)
    sw.add_argument("--wavenumber", type=_bounded_int(1, geometry.MAX_FOURIER_MODES), default=3,
                    help="k in rho = 1 + eps cos(k phi) for the perturbed family")
    sw.add_argument("--jobs", type=_bounded_int(1, 256), default=1)
    common(sw)

    vf = sub.add_parser("verify", help="check the bound chain; nonzero exit on failure")
    vf.add_argument("inputs", nargs="+", metavar="DOMAIN.json")
    common(vf, fmt_default="json")
    return p


def parse_args(argv=None) -> RunConfig:
    parser = build_parser()
    ns = parser.parse_args(argv)
    cfg = RunConfig(command=ns.command, fmt=ns.fmt, out=ns.out)
    if ns.command == "disk-spectrum":
        cfg.radius, cfg.kmax, cfg.per_fiber = ns.radius, ns.kmax, ns.per_fiber
        return cfg
    cfg.resolution, cfg.radial_order = ns.resolution, ns.radial_order
    if ns.command in ("analyze", "verify"):
        cfg.inputs = list(ns.inputs)
        return cfg
    expected = FAMILIES[ns.family]
    if ns.param != expected:
        parser.error(f"--param for family {ns.family!r} must be {expected!r}")
    cfg.family, cfg.param = ns.family, ns.param
    cfg.start, cfg.stop, cfg.steps = ns.start, ns.stop, ns.steps
    cfg.wavenumber, cfg.jobs = ns.wavenumber, ns.jobs
    return cfg


# --------------------------------------------------------------------------
# running


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _sweep_point(args):
    family, value, wavenumber, resolution, radial_order = args
    spec = family_spec(family, value, wavenumber)
    return value, spec, verify_chain(spec, resolution, radial_order)


def _run_disk_spectrum(cfg: RunConfig) -> int:
    pairs = disk_spectrum(cfg.radius, cfg.kmax, cfg.per_fiber)
    rows = [{"k": p.k, "branch": p.branch, "mu": p.mu, "unit_mu": p.unit_mu,
             "secular_residual": p.secular_residual} for p in pairs]
    if cfg.fmt == "json":
        _emit(render_json({"radius": cfg.radius, "kmax": cfg.kmax, "per_fiber": cfg.per_fiber,
                           "eigenpairs": rows}), cfg.out)
    else:
        _emit(render_csv(rows, SPECTRUM_COLUMNS), cfg.out)
    return 0


def _analyses(cfg: RunConfig):
    if cfg.command == "sweep":
        tasks = [(cfg.family, v, cfg.wavenumber, cfg.resolution, cfg.radial_order)
                 for v in sweep_values(cfg.start, cfg.stop, cfg.steps)]
        if cfg.jobs > 1:
            # map() preserves input order whatever the completion order
            with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
                return list(pool.map(_sweep_point, tasks))
        return [_sweep_point(t) for t in tasks]
    out = []
    for path in cfg.inputs:
        spec = load_domain(path)
        out.append((path, spec, verify_chain(spec, cfg.resolution, cfg.radial_order)))
    return out


def run(cfg: RunConfig) -> int:
    if cfg.command == "disk-spectrum":
        return _run_disk_spectrum(cfg)
    results = _analyses(cfg)
    ok = all(rep.chain_ok for _, _, rep in results)
    if cfg.fmt == "json":
        payload = {"audit": easy_bound_audit(),
                   "reports": [full_report(p, s, r) for p, s, r in results]}
        _emit(render_json(payload), cfg.out)
    else:
        _emit(render_csv([report_row(p, r) for p, _, r in results], CSV_COLUMNS), cfg.out)
    if cfg.command == "verify":
        for label, _, rep in results:
            print(summary_text(str(label), rep), file=sys.stderr)
        print(audit_text(), file=sys.stderr)
        return 0 if ok else 1
    return 0


def main(argv=None) -> int:
    try:
        cfg = parse_args(argv)
        return run(cfg)
    except (DomainFileError, OSError) as exc:
        print(f"diracbounds: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
