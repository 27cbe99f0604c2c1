"""Experiment runner: noise sweeps, topology galleries, convergence scans.

Drives the full pipelines from a key-value config file or command-line
flags and writes plot-ready CSV tables (quantum_contrast, purity,
concurrence, fidelity, skyrmion_number columns).  Exit codes: 0 success,
1 validation error, 2 numerical warning (non-convergence or high
residual).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .biphoton import (
    HybridStateSpec,
    apply_isotropic_noise,
    contrast_from_p,
    contrast_to_p,
    pure_state,
)
from .lgmodes import GridSpec, coeff_field
from .stokesfield import normalize_stokes, stokes_field
from .tomography import (
    average_quantum_contrast,
    mle_reconstruct,
    noise_rate_for_contrast,
    record_to_csv,
    simulate_counts,
    witness_report,
)
from .topology import skyrmion_number, suggested_grid

RESIDUAL_WARN = 1e-2

DEFAULTS = {
    "delta": 0.0,
    "pipeline": "analytic",
    "samples": 256,
    "half_width": 5.0,  # in waist units; "auto" picks the tail-safe window
    "waist": 1.0,
    "pair_rate": 1e5,
    "window": 25e-9,
    "duration": 1.0,
    "seed": 1,
}


class ConfigError(ValueError):
    """Config validation failure with a line-level message."""

    def __init__(self, message: str, line: int | None = None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line


@dataclass
class SweepConfig:
    """Validated sweep description."""

    state: HybridStateSpec
    sweep_var: str  # "p" or "qc"
    points: list[float]
    pipeline: str  # "analytic" or "tomographic"
    samples: int
    half_width: float | None  # None = auto window
    waist: float
    pair_rate: float
    window: float
    duration: float
    seed: int
    out_dir: str | None = None

    def grid(self) -> GridSpec:
        if self.half_width is None:
            return suggested_grid(self.state, self.samples, waist=self.waist)
        return GridSpec(self.half_width * self.waist, self.samples)


@dataclass
class SweepRow:
    p: float
    quantum_contrast: float
    purity: float
    concurrence: float
    fidelity: float
    skyrmion_number: float
    residual: float
    masked_fraction: float


_KNOWN_KEYS = {
    "ell1", "ell2", "delta", "sweep", "values", "start", "stop", "step",
    "pipeline", "samples", "half_width", "waist", "pair_rate", "window",
    "duration", "seed", "out",
}


def _parse_scalar(raw: str, line: int, key: str, cast):
    try:
        return cast(raw)
    except ValueError:
        raise ConfigError(f"cannot parse {key} value {raw!r}", line) from None


def load_config(path) -> SweepConfig:
    """Parse a ``key = value`` config file into a SweepConfig.

    Lines may carry ``#`` comments; unknown keys, malformed values and
    out-of-range sweeps are reported with their line number.
    """
    entries: dict[str, tuple[str, int]] = {}
    text = Path(path).read_text()
    for lineno, rawline in enumerate(text.splitlines(), start=1):
        line = rawline.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {rawline!r}", lineno)
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"unknown key {key!r}", lineno)
        if key in entries:
            raise ConfigError(f"duplicate key {key!r}", lineno)
        if not value:
            raise ConfigError(f"empty value for {key!r}", lineno)
        entries[key] = (value, lineno)

    def take(key, cast=str, default=None, required=False):
        if key not in entries:
            if required:
                raise ConfigError(f"missing required key {key!r}")
            return default
        value, lineno = entries[key]
        return _parse_scalar(value, lineno, key, cast)

    ell1 = take("ell1", int, required=True)
    ell2 = take("ell2", int, required=True)
    delta = take("delta", float, DEFAULTS["delta"])
    state = HybridStateSpec(ell1, ell2, delta)

    sweep_var = take("sweep", str, "p").lower()
    if sweep_var not in ("p", "qc"):
        raise ConfigError(f"sweep must be 'p' or 'qc', got {sweep_var!r}",
                          entries["sweep"][1] if "sweep" in entries else None)

    has_values = "values" in entries
    has_range = any(k in entries for k in ("start", "stop", "step"))
    if has_values and has_range:
        raise ConfigError("give either 'values' or 'start'/'stop'/'step', not both",
                          entries["values"][1])
    if has_values:
        raw, lineno = entries["values"]
        try:
            points = [float(v) for v in raw.split(",") if v.strip()]
        except ValueError:
            raise ConfigError(f"cannot parse values list {raw!r}", lineno) from None
        if not points:
            raise ConfigError("values list is empty", lineno)
    elif has_range:
        for k in ("start", "stop", "step"):
            if k not in entries:
                raise ConfigError(f"range sweep needs 'start', 'stop' and 'step'; missing {k!r}")
        start = take("start", float)
        stop = take("stop", float)
        step = take("step", float)
        if step == 0:
            raise ConfigError("step must be nonzero", entries["step"][1])
        span = stop - start
        if span != 0 and (span / step) < 0:
            raise ConfigError("step direction does not reach stop from start",
                              entries["step"][1])
        count = int(round(span / step)) + 1 if span != 0 else 1
        points = [start + i * step for i in range(count)]
    else:
        raise ConfigError("sweep needs 'values' or 'start'/'stop'/'step'")

    for v in points:
        if sweep_var == "p" and not 0.0 <= v <= 1.0:
            raise ConfigError(f"sweep value p={v} outside [0, 1]")
        if sweep_var == "qc" and v < 1.0:
            raise ConfigError(f"sweep value qc={v} below 1")

    pipeline = take("pipeline", str, DEFAULTS["pipeline"]).lower()
    if pipeline not in ("analytic", "tomographic"):
        raise ConfigError(f"pipeline must be 'analytic' or 'tomographic', got {pipeline!r}",
                          entries["pipeline"][1] if "pipeline" in entries else None)

    raw_hw = take("half_width", str, None)
    if raw_hw is None:
        half_width: float | None = DEFAULTS["half_width"]
    elif raw_hw.lower() == "auto":
        half_width = None
    else:
        half_width = _parse_scalar(raw_hw, entries["half_width"][1], "half_width", float)
        if half_width <= 0:
            raise ConfigError("half_width must be positive", entries["half_width"][1])

    cfg = SweepConfig(
        state=state,
        sweep_var=sweep_var,
        points=points,
        pipeline=pipeline,
        samples=take("samples", int, DEFAULTS["samples"]),
        half_width=half_width,
        waist=take("waist", float, DEFAULTS["waist"]),
        pair_rate=take("pair_rate", float, DEFAULTS["pair_rate"]),
        window=take("window", float, DEFAULTS["window"]),
        duration=take("duration", float, DEFAULTS["duration"]),
        seed=take("seed", int, DEFAULTS["seed"]),
        out_dir=take("out", str, None),
    )
    if cfg.samples < 16:
        raise ConfigError("samples must be at least 16")
    for key in ("waist", "pair_rate", "window", "duration"):
        if getattr(cfg, key) <= 0:
            raise ConfigError(f"{key} must be positive")
    return cfg


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _texture_number(rho, coeffs):
    field = normalize_stokes(stokes_field(rho, coeffs))
    return skyrmion_number(field)


def _sweep_point(cfg: SweepConfig, coeffs, p: float, index: int, deterministic: bool):
    """One sweep row: channel (or simulate+reconstruct), witnesses, N."""
    rho_exact = apply_isotropic_noise(pure_state(cfg.state), p)
    if cfg.pipeline == "analytic":
        rho = rho_exact
        qc = contrast_from_p(p)
    else:
        # generator noise rate targeting the contrast this p implies
        qc_ceiling = 1.0 + 1.0 / (cfg.window * cfg.duration * cfg.pair_rate)
        target = min(max(contrast_from_p(p), 1.005), qc_ceiling)
        noise = noise_rate_for_contrast(
            target, pair_rate=cfg.pair_rate, window=cfg.window, duration=cfg.duration)
        record = simulate_counts(
            rho_exact,
            pair_rate=cfg.pair_rate, noise_rate_a=noise, noise_rate_b=noise,
            window=cfg.window, duration=cfg.duration,
            mode="deterministic" if deterministic else "poisson",
            seed=cfg.seed + index,
        )
        rho = mle_reconstruct(record).rho
        qc = average_quantum_contrast(record)
    witnesses = witness_report(rho, cfg.state)
    result = _texture_number(rho, coeffs)
    return SweepRow(
        p=p,
        quantum_contrast=qc,
        purity=witnesses.purity,
        concurrence=witnesses.concurrence,
        fidelity=witnesses.fidelity,
        skyrmion_number=result.number,
        residual=result.residual,
        masked_fraction=result.masked_fraction,
    )


def run_sweep(cfg: SweepConfig, deterministic: bool = False) -> list[SweepRow]:
    """Run the configured sweep; rows come back ordered by sweep variable.

    For a ``qc`` sweep each point is mapped to its channel weight first;
    every row carries both p and the contrast it implies.
    """
    grid = cfg.grid()
    coeffs = coeff_field(cfg.state, grid, waist=cfg.waist)
    rows = []
    for index, value in enumerate(cfg.points):
        p = value if cfg.sweep_var == "p" else contrast_to_p(value)
        rows.append(_sweep_point(cfg, coeffs, p, index, deterministic))
    return rows


def write_sweep_csv(rows: list[SweepRow], cfg: SweepConfig, path) -> None:
    lines = [
        f"# state = ({cfg.state.ell1}, {cfg.state.ell2}, delta={_fmt(cfg.state.delta)})",
        f"# pipeline = {cfg.pipeline}",
        f"# sweep = {cfg.sweep_var}",
        f"# grid = {cfg.grid().samples_per_axis} x {cfg.grid().samples_per_axis},"
        f" half_width = {_fmt(cfg.grid().half_width)}",
        f"# seed = {cfg.seed}",
        "p,quantum_contrast,purity,concurrence,fidelity,skyrmion_number,residual,masked_fraction",
    ]
    for r in rows:
        lines.append(",".join(_fmt(v) for v in (
            r.p, r.quantum_contrast, r.purity, r.concurrence, r.fidelity,
            r.skyrmion_number, r.residual, r.masked_fraction)))
    Path(path).write_text("\n".join(lines) + "\n")


@dataclass
class GalleryRow:
    state: HybridStateSpec
    number_clean: float
    number_noisy: float
    residual_clean: float
    residual_noisy: float

    @property
    def matched(self) -> bool:
        return round(self.number_clean) == round(self.number_noisy)


def _write_texture_csv(field, grid: GridSpec, path, header_lines) -> None:
    x = grid.axis()
    lines = list(header_lines)
    lines.append("x,y,s1,s2,s3")
    vec = field.vectors
    for i in range(grid.samples_per_axis):
        for j in range(grid.samples_per_axis):
            lines.append(",".join(_fmt(v) for v in (
                x[i], x[j], vec[i, j, 0], vec[i, j, 1], vec[i, j, 2])))
    Path(path).write_text("\n".join(lines) + "\n")


def run_topology_gallery(
    specs: list[HybridStateSpec],
    p: float,
    *,
    samples: int = 256,
    waist: float = 1.0,
    out_dir=None,
) -> list[GalleryRow]:
    """Textures and Skyrmion numbers for each spec, clean and noisy.

    Each state is evaluated at p = 1 and at the supplied channel weight on
    its tail-safe window; matching rounded numbers across the pair is the
    noise-invariance statement and is reported per row.  When ``out_dir``
    is set, the normalized textures (x, y, S1, S2, S3) and a summary table
    are written there.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rows = []
    out = Path(out_dir) if out_dir is not None else None
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
    for spec in specs:
        grid = suggested_grid(spec, samples, waist=waist)
        coeffs = coeff_field(spec, grid, waist=waist)
        results = {}
        for tag, weight in (("clean", 1.0), ("noisy", p)):
            rho = apply_isotropic_noise(pure_state(spec), weight)
            field = normalize_stokes(stokes_field(rho, coeffs))
            res = skyrmion_number(field)
            results[tag] = res
            if out is not None:
                name = f"texture_{spec.ell1}_{spec.ell2}_{tag}.csv"
                _write_texture_csv(field, grid, out / name, [
                    f"# state = ({spec.ell1}, {spec.ell2}, delta={_fmt(spec.delta)})",
                    f"# p = {_fmt(weight)}",
                    f"# skyrmion_number = {_fmt(res.number)}",
                    f"# half_width = {_fmt(grid.half_width)}",
                ])
        rows.append(GalleryRow(
            state=spec,
            number_clean=results["clean"].number,
            number_noisy=results["noisy"].number,
            residual_clean=results["clean"].residual,
            residual_noisy=results["noisy"].residual,
        ))
    if out is not None:
        lines = [
            f"# p = {_fmt(p)}",
            "ell1,ell2,delta,n_clean,n_noisy,residual_clean,residual_noisy,matched",
        ]
        for r in rows:
            lines.append(",".join([
                str(r.state.ell1), str(r.state.ell2), _fmt(r.state.delta),
                _fmt(r.number_clean), _fmt(r.number_noisy),
                _fmt(r.residual_clean), _fmt(r.residual_noisy),
                str(int(r.matched)),
            ]))
        (out / "gallery.csv").write_text("\n".join(lines) + "\n")
    return rows


def run_convergence(
    spec: HybridStateSpec,
    resolutions,
    *,
    p: float = 1.0,
    half_width: float | None = None,
    waist: float = 1.0,
    out=None,
):
    """Convergence table across resolutions, optionally persisted as CSV."""
    from .topology import convergence_scan

    rows = convergence_scan(spec, p, resolutions, half_width=half_width, waist=waist)
    if out is not None:
        lines = [
            f"# state = ({spec.ell1}, {spec.ell2}, delta={_fmt(spec.delta)})",
            f"# p = {_fmt(p)}",
            "resolution,skyrmion_number,residual",
        ]
        for row in rows:
            lines.append(f"{row.resolution},{_fmt(row.number)},{_fmt(row.residual)}")
        Path(out).write_text("\n".join(lines) + "\n")
    return rows


def _write_density_csv(result, path) -> None:
    grid = result.grid
    x = grid.axis()
    lines = [
        f"# samples_per_axis = {grid.samples_per_axis}",
        f"# half_width = {_fmt(grid.half_width)}",
        f"# skyrmion_number = {_fmt(result.number)}",
        "x,y,density",
    ]
    for i in range(grid.samples_per_axis):
        for j in range(grid.samples_per_axis):
            lines.append(f"{_fmt(x[i])},{_fmt(x[j])},{_fmt(result.density[i, j])}")
    Path(path).write_text("\n".join(lines) + "\n")


# --- command-line front-end -------------------------------------------------

class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on usage errors; remap to the validation code
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_state_args(p, with_p=True):
    p.add_argument("--ell1", type=int, required=True, help="first OAM charge")
    p.add_argument("--ell2", type=int, required=True, help="second OAM charge")
    p.add_argument("--delta", type=float, default=0.0, help="relative phase (rad)")
    if with_p:
        p.add_argument("--p", type=float, default=1.0,
                       help="isotropic channel weight in [0, 1]")


def _grid_from_args(args, state):
    if args.half_width == "auto":
        return suggested_grid(state, args.samples, waist=args.waist)
    return GridSpec(float(args.half_width) * args.waist, args.samples)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qskyrmion",
                     description="nonlocal skyrmionic biphoton states through isotropic noise")
    sub = parser.add_subparsers(dest="command", required=True)

    p_state = sub.add_parser("state", help="print the density matrix and witnesses")
    _add_state_args(p_state)

    p_sky = sub.add_parser("skyrmion", help="compute one Skyrmion number")
    _add_state_args(p_sky)
    p_sky.add_argument("--samples", type=int, default=DEFAULTS["samples"])
    p_sky.add_argument("--half-width", dest="half_width", default="auto",
                       help="window half-width in waist units, or 'auto'")
    p_sky.add_argument("--waist", type=float, default=DEFAULTS["waist"])
    p_sky.add_argument("--density-out", dest="density_out", default=None,
                       help="write the charge density as CSV")

    p_sweep = sub.add_parser("sweep", help="run a configured noise sweep")
    p_sweep.add_argument("--config", required=True, help="key = value config file")
    p_sweep.add_argument("--out", default=None, help="output directory")
    p_sweep.add_argument("--seed", type=int, default=None, help="override config seed")
    p_sweep.add_argument("--deterministic", action="store_true",
                         help="expectation-value counts instead of Poisson samples")

    p_gal = sub.add_parser("gallery", help="textures and N for a list of states")
    p_gal.add_argument("--state", action="append", required=True, metavar="L1,L2[,DELTA]",
                       help="repeatable state spec")
    p_gal.add_argument("--p", type=float, default=0.5)
    p_gal.add_argument("--samples", type=int, default=DEFAULTS["samples"])
    p_gal.add_argument("--waist", type=float, default=DEFAULTS["waist"])
    p_gal.add_argument("--out", default=None, help="output directory")

    p_tomo = sub.add_parser("tomo", help="simulate and reconstruct one record")
    _add_state_args(p_tomo)
    p_tomo.add_argument("--pair-rate", dest="pair_rate", type=float,
                        default=DEFAULTS["pair_rate"])
    p_tomo.add_argument("--window", type=float, default=DEFAULTS["window"])
    p_tomo.add_argument("--duration", type=float, default=DEFAULTS["duration"])
    p_tomo.add_argument("--seed", type=int, default=DEFAULTS["seed"])
    p_tomo.add_argument("--deterministic", action="store_true")
    p_tomo.add_argument("--out", default=None, help="write the record CSV here")

    p_conv = sub.add_parser("converge", help="Skyrmion number convergence scan")
    _add_state_args(p_conv)
    p_conv.add_argument("--resolutions", default="64,128,256",
                        help="comma-separated samples-per-axis list")
    p_conv.add_argument("--half-width", dest="half_width", default="auto")
    p_conv.add_argument("--waist", type=float, default=DEFAULTS["waist"])
    p_conv.add_argument("--out", default=None, help="output CSV path")

    return parser


def _cmd_state(args) -> int:
    state = HybridStateSpec(args.ell1, args.ell2, args.delta)
    rho = apply_isotropic_noise(pure_state(state), args.p)
    witnesses = witness_report(rho, state)
    np.set_printoptions(precision=4, suppress=True)
    print(f"state: ({state.ell1}, {state.ell2}), delta={state.delta:g}, p={args.p:g}")
    print("basis: {|l1,P1>, |l1,P2>, |l2,P1>, |l2,P2>}")
    print(rho.matrix)
    print(f"purity      = {witnesses.purity:.6f}")
    print(f"concurrence = {witnesses.concurrence:.6f}")
    print(f"fidelity    = {witnesses.fidelity:.6f}")
    return 0


def _cmd_skyrmion(args) -> int:
    state = HybridStateSpec(args.ell1, args.ell2, args.delta)
    grid = _grid_from_args(args, state)
    rho = apply_isotropic_noise(pure_state(state), args.p)
    coeffs = coeff_field(state, grid, waist=args.waist)
    result = skyrmion_number(normalize_stokes(stokes_field(rho, coeffs)))
    print(f"N = {result.number:.6f}  (rounded {result.rounded}, "
          f"residual {result.residual:.2e}, masked {result.masked_fraction:.3f})")
    if args.density_out:
        _write_density_csv(result, args.density_out)
        print(f"density written to {args.density_out}")
    return 2 if result.residual > RESIDUAL_WARN and result.masked_fraction < 1.0 else 0


def _cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg.seed = args.seed
    if args.out is not None:
        cfg.out_dir = args.out
    rows = run_sweep(cfg, deterministic=args.deterministic)
    print("p,quantum_contrast,purity,concurrence,fidelity,skyrmion_number,residual,masked_fraction")
    for r in rows:
        print(",".join(_fmt(v) for v in (
            r.p, r.quantum_contrast, r.purity, r.concurrence, r.fidelity,
            r.skyrmion_number, r.residual, r.masked_fraction)))
    if cfg.out_dir is not None:
        out = Path(cfg.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        write_sweep_csv(rows, cfg, out / "sweep.csv")
        print(f"sweep written to {out / 'sweep.csv'}")
    high = [r for r in rows if r.residual > RESIDUAL_WARN and r.masked_fraction < 1.0]
    return 2 if high else 0


def _parse_state_arg(raw: str) -> HybridStateSpec:
    parts = raw.split(",")
    if len(parts) not in (2, 3):
        raise ConfigError(f"state spec must be 'L1,L2' or 'L1,L2,DELTA', got {raw!r}")
    try:
        ell1, ell2 = int(parts[0]), int(parts[1])
        delta = float(parts[2]) if len(parts) == 3 else 0.0
    except ValueError:
        raise ConfigError(f"cannot parse state spec {raw!r}") from None
    return HybridStateSpec(ell1, ell2, delta)


def _cmd_gallery(args) -> int:
    specs = [_parse_state_arg(s) for s in args.state]
    rows = run_topology_gallery(specs, args.p, samples=args.samples,
                                waist=args.waist, out_dir=args.out)
    print("ell1,ell2,n_clean,n_noisy,matched")
    all_matched = True
    for r in rows:
        all_matched &= r.matched
        print(f"{r.state.ell1},{r.state.ell2},{_fmt(r.number_clean)},"
              f"{_fmt(r.number_noisy)},{int(r.matched)}")
    return 0 if all_matched else 2


def _cmd_tomo(args) -> int:
    state = HybridStateSpec(args.ell1, args.ell2, args.delta)
    rho_in = apply_isotropic_noise(pure_state(state), args.p)
    qc_ceiling = 1.0 + 1.0 / (args.window * args.duration * args.pair_rate)
    target = min(max(contrast_from_p(args.p), 1.005), qc_ceiling)
    noise = noise_rate_for_contrast(target, pair_rate=args.pair_rate,
                                    window=args.window, duration=args.duration)
    record = simulate_counts(
        rho_in, pair_rate=args.pair_rate, noise_rate_a=noise, noise_rate_b=noise,
        window=args.window, duration=args.duration,
        mode="deterministic" if args.deterministic else "poisson", seed=args.seed,
    )
    estimate = mle_reconstruct(record)
    witnesses = witness_report(estimate.rho, state)
    qc = average_quantum_contrast(record)
    np.set_printoptions(precision=4, suppress=True)
    print(f"average quantum contrast = {qc:.4f}")
    print(estimate.rho.matrix)
    print(f"purity      = {witnesses.purity:.6f}")
    print(f"concurrence = {witnesses.concurrence:.6f}")
    print(f"fidelity    = {witnesses.fidelity:.6f}")
    print(f"mle: iterations={estimate.iterations} converged={estimate.converged}")
    if args.out:
        record_to_csv(record, args.out)
        print(f"record written to {args.out}")
    return 0 if estimate.converged else 2


def _cmd_converge(args) -> int:
    state = HybridStateSpec(args.ell1, args.ell2, args.delta)
    try:
        resolutions = [int(v) for v in args.resolutions.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"cannot parse resolutions {args.resolutions!r}") from None
    if not resolutions:
        raise ConfigError("resolution list is empty")
    half_width = None if args.half_width == "auto" else float(args.half_width) * args.waist
    rows = run_convergence(state, resolutions, p=args.p, half_width=half_width,
                           waist=args.waist, out=args.out)
    print("resolution,skyrmion_number,residual")
    for row in rows:
        print(f"{row.resolution},{_fmt(row.number)},{_fmt(row.residual)}")
    return 2 if rows[-1].residual > RESIDUAL_WARN else 0


_COMMANDS = {
    "state": _cmd_state,
    "skyrmion": _cmd_skyrmion,
    "sweep": _cmd_sweep,
    "gallery": _cmd_gallery,
    "tomo": _cmd_tomo,
    "converge": _cmd_converge,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ConfigError, ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
