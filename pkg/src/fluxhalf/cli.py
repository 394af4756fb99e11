"""Command-line sweeps and figure-data emission.

Rows are computed possibly in parallel (``FLUXHALF_THREADS``) but always
emitted in grid order: z outer, then n, then eta, then field.
"""

from __future__ import annotations

import argparse
import io
import json
import logging
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import astuple, dataclass, fields
from typing import Iterator

import numpy as np

from . import closed_forms as cf
from .errors import DivergentLimit, FluxhalfError, NonConvergence, SurfaceDivergence
from .integrand import EVANESCENT_CONVENTIONS, IntegrandSpec
from .modes import Field, Medium
from .quadrature import QuadratureConfig, integrate_fluctuation
from .units import SPEED_OF_LIGHT, convert_units, eta_from_cutoff_frequency

log = logging.getLogger("fluxhalf")

FIGURE1_ETA_S = 5e-17  # 1/eta = 2e16 Hz
FIGURE2_ETAS = (1.0, 0.5, 0.25, 0.125)


@dataclass(frozen=True)
class SweepSpec:
    z_min: float = 0.0
    z_max: float = 1.0
    z_count: int = 11
    z_log: bool = False
    n_values: tuple = (math.inf,)
    eta_values: tuple = (1.0,)
    field: str = "E"
    renormalize: bool = False
    units: str = "natural"
    evanescent_k: str = "euclidean"

    def __post_init__(self):
        if self.z_count < 1:
            raise ValueError("z count must be >= 1")
        if not self.z_min >= 0 or not self.z_max >= self.z_min:
            raise ValueError("need 0 <= z_min <= z_max")
        if self.z_log and not self.z_min > 0:
            raise ValueError("log spacing requires z_min > 0")
        if any(not (n >= 1) for n in self.n_values):
            raise ValueError("refractive indices must be >= 1")
        if any(not (e >= 0) or math.isinf(e) for e in self.eta_values):
            raise ValueError("eta values must be finite and >= 0")
        if self.field not in ("E", "B", "both"):
            raise ValueError("field must be E, B or both")
        if self.units not in ("natural", "si"):
            raise ValueError("units must be natural or si")

    def z_grid(self):
        if self.z_count == 1:
            return np.array([self.z_min])
        if self.z_log:
            return np.geomspace(self.z_min, self.z_max, self.z_count)
        return np.linspace(self.z_min, self.z_max, self.z_count)

    def fields(self):
        return ("E", "B") if self.field == "both" else (self.field,)


@dataclass(frozen=True)
class OutputRecord:
    z: float
    n: float
    eta: float
    field: str
    value: float
    error_estimate: float
    channel_traveling: float
    channel_evanescent: float
    method: str
    status: str = "ok"


HEADER = tuple(f.name for f in fields(OutputRecord))


def _closed_form_row(z, n, eta, field, renormalize):
    if n == 1.0 and renormalize:
        return 0.0
    if eta == 0.0:
        if not renormalize:
            raise DivergentLimit("unrenormalized fluctuations diverge at eta = 0")
        return float(cf.ideal_renorm(z, field))
    if n == 1.0:
        return float(cf.vacuum_fluct(eta, field))
    if renormalize:
        return float(cf.conductor_renorm(eta, z, field))
    return float(cf.conductor_raw(eta, z, field))


def _compute_row(z, n, eta, field, spec: SweepSpec, config: QuadratureConfig) -> OutputRecord:
    si = spec.units == "si"
    z_nat = z
    eta_nat = eta * SPEED_OF_LIGHT if si else eta
    fld = Field(field)
    status = "ok"
    if math.isinf(n) or n == 1.0 or eta == 0.0:
        method = "closed_form"
        error = 0.0
        try:
            if eta == 0.0 and math.isfinite(n) and n != 1.0:
                raise DivergentLimit("finite-n fluctuations need eta > 0")
            value = _closed_form_row(z_nat, n, eta_nat, fld, spec.renormalize)
        except SurfaceDivergence:
            value, status = math.nan, "surface_divergence"
        except DivergentLimit:
            value, status = math.nan, "divergent"
        travel, evan = value, 0.0
    else:
        method = "quadrature"
        ispec = IntegrandSpec(fld, Medium(n, eta_nat), z_nat, spec.renormalize, spec.evanescent_k)
        try:
            res = integrate_fluctuation(ispec, config)
            value, error = res.value, res.error_estimate
            travel, evan = res.channels["traveling"], res.channels["evanescent"]
        except NonConvergence as exc:
            log.warning("no convergence at z=%g n=%g eta=%g: %s", z, n, eta, exc)
            value, error = exc.value, exc.error
            travel = evan = math.nan
            status = "nonconvergence"
    if si:
        value, error, travel, evan = (convert_units(v, "fluctuation") for v in (value, error, travel, evan))
    return OutputRecord(z, n, eta, field, value, error, travel, evan, method, status)


def _threads():
    try:
        return max(1, int(os.environ.get("FLUXHALF_THREADS", "1")))
    except ValueError:
        return 1


def run_sweep(spec: SweepSpec, config: QuadratureConfig | None = None) -> Iterator[OutputRecord]:
    config = config or QuadratureConfig()
    tasks = [
        (float(z), float(n), float(eta), f)
        for z in spec.z_grid() for n in spec.n_values for eta in spec.eta_values for f in spec.fields()
    ]
    threads = _threads()
    if threads == 1:
        for t in tasks:
            yield _compute_row(*t, spec, config)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        # map() yields in submission order whatever the completion order
        yield from pool.map(lambda t: _compute_row(*t, spec, config), tasks)


def format_number(x):
    if isinstance(x, str):
        return x
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.16e}"


def write_csv(header, rows, out):
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(format_number(v) for v in row) + "\n")


def _json_value(x):
    if isinstance(x, str):
        return x
    x = float(x)
    return x if math.isfinite(x) else format_number(x)


def write_json(header, rows, out):
    records = [{k: _json_value(v) for k, v in zip(header, row)} for row in rows]
    json.dump(records, out, indent=1)
    out.write("\n")


def figure_table(figure, units="natural", etas=None):
    """Columns and rows of the figure data.

    Figure 1 is always in SI: cutoff curve at 1/eta = 2e16 Hz against the
    ideal-conductor law, for z = j/100 * c*eta, j = 1..800 (the ideal
    curve is singular at z = 0). Figure 2 compares a decreasing sequence
    of cutoffs on z = j/400 * L, j = 0..8000, with L the largest cutoff
    length; in SI the default sequence starts at the figure-1 cutoff.
    """
    if figure == 1:
        length = SPEED_OF_LIGHT * FIGURE1_ETA_S
        header = ("z_m", "E2_cutoff_J_m3", "E2_ideal_J_m3")
        rows = []
        for j in range(1, 801):
            z = length * j / 100.0
            cut = convert_units(float(cf.conductor_renorm(length, z)), "fluctuation")
            ideal = convert_units(float(cf.ideal_renorm(z)), "fluctuation")
            rows.append((z, cut, ideal))
        return header, rows
    if figure != 2:
        raise ValueError("figure must be 1 or 2")
    si = units == "si"
    if etas is None:
        etas = tuple(FIGURE1_ETA_S * e for e in FIGURE2_ETAS) if si else FIGURE2_ETAS
    etas = tuple(sorted((float(e) for e in etas), reverse=True))
    to_len = SPEED_OF_LIGHT if si else 1.0
    length = etas[0] * to_len
    unit = "_J_m3" if si else ""
    header = ("z_m" if si else "z",) + tuple(f"E2_eta={e:.6g}{unit}" for e in etas) + ("E2_ideal" + unit,)
    conv = (lambda v: convert_units(v, "fluctuation")) if si else (lambda v: v)
    rows = []
    for j in range(0, 8001):
        z = length * j / 400.0
        vals = [conv(float(cf.conductor_renorm(e * to_len, z))) for e in etas]
        ideal = conv(float(cf.ideal_renorm(z))) if z > 0 else math.inf
        rows.append((z, *vals, ideal))
    return header, rows


def emit_figure_data(figure, out_path, units="natural", etas=None, output="csv"):
    header, rows = figure_table(figure, units, etas)
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        (write_json if output == "json" else write_csv)(header, rows, fh)
    return out_path


def _parse_n(text):
    try:
        n = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a refractive index: {text!r}") from None
    if not n >= 1:
        raise argparse.ArgumentTypeError("refractive index must be >= 1 (or 'inf')")
    return n


def build_parser():
    p = argparse.ArgumentParser(
        prog="fluxhalf",
        description="Vacuum field fluctuations near a dielectric half-space with an exponential cutoff.",
    )
    p.add_argument("--n", action="append", type=_parse_n, help="refractive index (repeatable; 'inf' = ideal conductor)")
    cut = p.add_mutually_exclusive_group()
    cut.add_argument("--eta", action="append", type=float, help="cutoff timescale (repeatable; s if --units si)")
    cut.add_argument("--cutoff-frequency", action="append", type=float, help="cutoff frequency 1/eta in Hz (repeatable)")
    p.add_argument("--z-min", type=float, default=0.0)
    p.add_argument("--z-max", type=float, default=None)
    p.add_argument("--z-count", type=int, default=1)
    p.add_argument("--z-log", action="store_true", help="logarithmic z spacing")
    p.add_argument("--field", choices=("E", "B", "both"), default="E")
    p.add_argument("--renormalize", action="store_true", help="subtract the free-space value")
    p.add_argument("--units", choices=("natural", "si"), default="natural")
    p.add_argument("--rel-tol", type=float, default=QuadratureConfig.rel_tol)
    p.add_argument("--evanescent-k", choices=EVANESCENT_CONVENTIONS, default="euclidean",
                   help="wavenumber used in the evanescent prefactor and cutoff")
    p.add_argument("--output", choices=("csv", "json"), default="csv")
    p.add_argument("--figure", type=int, choices=(1, 2), help="emit figure data instead of a sweep")
    p.add_argument("--out", default="-", help="output path ('-' for stdout)")
    return p


def _write(text, dest):
    if dest == "-":
        sys.stdout.write(text)
    else:
        with open(dest, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    writer = write_json if args.output == "json" else write_csv
    buf = io.StringIO()

    try:
        if args.figure:
            etas = None
            if args.cutoff_frequency:
                etas = [eta_from_cutoff_frequency(f) for f in args.cutoff_frequency]
            elif args.eta:
                etas = args.eta
            header, rows = figure_table(args.figure, args.units, etas)
            writer(header, rows, buf)
            _write(buf.getvalue(), args.out)
            return 0

        if args.cutoff_frequency:
            if args.units != "si":
                parser.error("--cutoff-frequency needs --units si")
            etas = tuple(eta_from_cutoff_frequency(f) for f in args.cutoff_frequency)
        else:
            etas = tuple(args.eta or (1.0,))
        spec = SweepSpec(
            z_min=args.z_min,
            z_max=args.z_min if args.z_max is None else args.z_max,
            z_count=args.z_count,
            z_log=args.z_log,
            n_values=tuple(args.n or (math.inf,)),
            eta_values=etas,
            field=args.field,
            renormalize=args.renormalize,
            units=args.units,
            evanescent_k=args.evanescent_k,
        )
        config = QuadratureConfig(rel_tol=args.rel_tol)
    except SystemExit:
        return 1
    except (ValueError, FluxhalfError) as exc:
        print(f"fluxhalf: error: {exc}", file=sys.stderr)
        return 1

    records = list(run_sweep(spec, config))
    writer(HEADER, [astuple(r) for r in records], buf)
    _write(buf.getvalue(), args.out)
    return 0 if all(r.status == "ok" for r in records) else 2


if __name__ == "__main__":
    sys.exit(main())
