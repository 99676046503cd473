"""Command-line surface: mask | pattern | nearfield | rayleigh | simulate.

Every run writes UTF-8 CSV/JSON artifacts plus a manifest listing the
command, resolved parameters and output files. Outputs are computed
fully before anything is written, so a failed run leaves no partial
files. Angles are degrees at this surface, radians internally.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT

from . import __version__
from .codebook import CodebookConfig, generate_codeword, shift_index
from .classifier import (build_mask, project_channel, regular_or_boundary,
                         wideband_masks)
from .geometry import ArrayGeometry, near_field_channel, steering_from_wavenumbers
from .linksim import SimConfig, run_drops, selection_heatmap
from .pattern import analyze_lobes, synthesize_pattern
from .rayleigh import RayleighConfig, filter_evanescent, generate_rayleigh, \
    removed_energy_fraction

ENV_OUT_DIR = "KRONCB_OUT_DIR"
_ASCII_LEVELS = " .:-=+*#%@"


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _round_floats(obj):
    if isinstance(obj, float):
        return float(f"{obj:.12g}") if math.isfinite(obj) else obj
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


class _Run:
    """Collects output files in memory, then flushes them atomically-ish."""

    def __init__(self, command: str, params: dict, out_dir: Path):
        self.command = command
        self.params = params
        self.out_dir = out_dir
        self._files: list[tuple[str, str]] = []

    def add_csv(self, name: str, header: list[str], rows):
        lines = [",".join(header)]
        lines.extend(",".join(_fmt(v) for v in row) for row in rows)
        self._files.append((name, "\n".join(lines) + "\n"))

    def add_json(self, name: str, payload):
        text = json.dumps(_round_floats(payload), indent=2, sort_keys=True)
        self._files.append((name, text + "\n"))

    def flush(self):
        manifest = {
            "command": self.command,
            "parameters": _round_floats(self.params),
            "version": __version__,
            "outputs": [name for name, _ in self._files],
        }
        self._files.append(("manifest.json", json.dumps(manifest, indent=2, sort_keys=True) + "\n"))
        self.out_dir.mkdir(parents=True, exist_ok=True)
        for name, text in self._files:
            (self.out_dir / name).write_text(text, encoding="utf-8")
        return [str(self.out_dir / name) for name, _ in self._files]


def _resolve_alphas(args) -> tuple[float, float, float]:
    """Return (alpha1, alpha2, wavelength_m) from either alpha or spacing+frequency flags."""
    if args.alpha1 is not None or args.alpha2 is not None:
        if args.alpha1 is None or args.alpha2 is None:
            raise SystemExit2("--alpha1 and --alpha2 must be given together")
        return args.alpha1, args.alpha2, 1.0
    if args.d1_m is not None and args.d2_m is not None and args.freq_hz is not None:
        if args.freq_hz <= 0:
            raise ValueError("--freq-hz must be positive")
        lam = SPEED_OF_LIGHT / args.freq_hz
        return args.d1_m / lam, args.d2_m / lam, lam
    raise SystemExit2("give either --alpha1/--alpha2 or --d1-m/--d2-m/--freq-hz")


class SystemExit2(Exception):
    """Usage error surfaced with exit code 2."""


def _mask_rows(cfg: CodebookConfig, flags: np.ndarray):
    for l in range(cfg.size1):
        for m in range(cfg.size2):
            ls, ms = shift_index(cfg, l, m)
            yield l, m, ls, ms, int(flags[l, m])


def cmd_mask(args, out_dir: Path) -> list[str]:
    cfg = CodebookConfig(args.n1, args.n2, args.o1, args.o2)
    params = {"n1": args.n1, "n2": args.n2, "o1": args.o1, "o2": args.o2}
    run = _Run("mask", params, out_dir)
    if args.offsets_hz:
        if args.d1_m is None or args.d2_m is None or args.freq_hz is None:
            raise SystemExit2("--offsets-hz requires --d1-m, --d2-m and --freq-hz")
        params.update(d1_m=args.d1_m, d2_m=args.d2_m, freq_hz=args.freq_hz,
                      offsets_hz=list(args.offsets_hz))
        for f, mask, stats in wideband_masks(cfg, args.d1_m, args.d2_m,
                                             args.freq_hz, args.offsets_hz):
            tag = f"{f:.0f}hz"
            run.add_csv(f"mask_{tag}.csv",
                        ["l", "m", "l_shift", "m_shift", "evanescent"],
                        _mask_rows(cfg, mask.flags))
            run.add_json(f"stats_{tag}.json",
                         {"frequency_hz": f, "alpha1": mask.alpha1,
                          "alpha2": mask.alpha2, "total": stats.total,
                          "evanescent": stats.evanescent,
                          "redundancy": stats.redundancy})
    else:
        a1, a2, _ = _resolve_alphas(args)
        params.update(alpha1=a1, alpha2=a2)
        mask = build_mask(cfg, a1, a2)
        stats = mask.stats()
        run.add_csv("mask.csv", ["l", "m", "l_shift", "m_shift", "evanescent"],
                    _mask_rows(cfg, mask.flags))
        run.add_json("stats.json", {"total": stats.total,
                                    "evanescent": stats.evanescent,
                                    "redundancy": stats.redundancy})
    return run.flush()


def _ascii_heatmap(power_dbw: np.ndarray, rows: int = 18, cols: int = 36) -> str:
    ti = np.linspace(0, power_dbw.shape[0] - 1, rows).round().astype(int)
    pj = np.linspace(0, power_dbw.shape[1] - 1, cols, endpoint=False).round().astype(int)
    sub = power_dbw[np.ix_(ti, pj)]
    lo, hi = sub.max() - 40.0, sub.max()
    idx = np.clip((sub - lo) / (hi - lo) * (len(_ASCII_LEVELS) - 1), 0,
                  len(_ASCII_LEVELS) - 1).astype(int)
    return "\n".join("".join(_ASCII_LEVELS[v] for v in row) for row in idx)


def _report_payload(report) -> dict:
    return {
        "peak_theta_deg": report.peak_theta_deg,
        "peak_phi_deg": report.peak_phi_deg,
        "peak_power_dbw": report.peak_power_dbw,
        "directional": report.directional,
        "lobes": [{"theta_deg": lb.theta_deg, "phi_deg": lb.phi_deg,
                   "power_dbw": lb.power_dbw, "prominence_db": lb.prominence_db}
                  for lb in report.lobes],
    }


def cmd_pattern(args, out_dir: Path) -> list[str]:
    cfg = CodebookConfig(args.n1, args.n2, args.o1, args.o2)
    a1, a2, lam = _resolve_alphas(args)
    geom = ArrayGeometry(args.n1, args.n2, a1 * lam, a2 * lam, lam)
    params = {"n1": args.n1, "n2": args.n2, "o1": args.o1, "o2": args.o2,
              "alpha1": a1, "alpha2": a2, "wavelength_m": lam,
              "theta_step_deg": args.theta_step, "phi_step_deg": args.phi_step}
    if args.idx is not None:
        l, m = args.idx
        weights = generate_codeword(cfg, l, m)
        params.update(l=l, m=m)
    elif args.kx_over_k is not None and args.ky_over_k is not None:
        weights = steering_from_wavenumbers(geom, args.kx_over_k * geom.k,
                                            args.ky_over_k * geom.k)
        params.update(kx_over_k=args.kx_over_k, ky_over_k=args.ky_over_k)
    else:
        raise SystemExit2("give either --idx l,m or both --kx-over-k and --ky-over-k")
    grid = synthesize_pattern(geom, weights, radius=args.radius_m,
                              theta_step_deg=args.theta_step,
                              phi_step_deg=args.phi_step)
    report = analyze_lobes(grid)
    params.update(radius_m=grid.radius)
    run = _Run("pattern", params, out_dir)
    db = grid.power_dbw()
    rows = ((grid.theta_deg[i], grid.phi_deg[j], db[i, j])
            for i in range(grid.theta_deg.size) for j in range(grid.phi_deg.size))
    run.add_csv("pattern.csv", ["theta_deg", "phi_deg", "power_dbw"], rows)
    run.add_json("lobes.json", _report_payload(report))
    outputs = run.flush()
    if args.ascii:
        print(_ascii_heatmap(db))
    return outputs


def cmd_nearfield(args, out_dir: Path) -> list[str]:
    n1 = args.n1 or args.n
    n2 = args.n2 or args.n
    if n1 is None or n2 is None:
        raise SystemExit2("give --n or both --n1 and --n2")
    cfg = CodebookConfig(n1, n2, args.o, args.o)
    lam = 1.0
    geom = ArrayGeometry(n1, n2, args.alpha * lam, args.alpha * lam, lam)
    r = args.r_over_lambda * lam
    ch = near_field_channel(geom, r, math.radians(args.theta_deg),
                            math.radians(args.phi_deg))
    corr = project_channel(cfg, ch)
    mask = build_mask(cfg, geom.alpha1, geom.alpha2)
    confined = regular_or_boundary(mask)
    fraction = float(corr[confined].sum() / corr.sum())
    params = {"n1": n1, "n2": n2, "o": args.o, "alpha": args.alpha,
              "r_over_lambda": args.r_over_lambda, "theta_deg": args.theta_deg,
              "phi_deg": args.phi_deg}
    run = _Run("nearfield", params, out_dir)
    rows = ((l, m, corr[l, m]) for l in range(cfg.size1) for m in range(cfg.size2))
    run.add_csv("correlation.csv", ["l", "m", "correlation"], rows)
    run.add_json("summary.json", {
        "regular_plus_boundary_energy_fraction": fraction,
        "evanescent_cells": int(mask.flags.sum()),
        "total_cells": int(mask.flags.size),
    })
    return run.flush()


def cmd_rayleigh(args, out_dir: Path) -> list[str]:
    rcfg = RayleighConfig(n1=args.n1, n2=args.n2, alpha1=args.alpha1_v,
                          alpha2=args.alpha2_v, seed=args.seed,
                          realizations=args.realizations)
    channels = generate_rayleigh(rcfg)
    filtered = filter_evanescent(channels, rcfg.n1, rcfg.n2, rcfg.alpha1, rcfg.alpha2)
    frac = np.atleast_1d(removed_energy_fraction(channels, filtered)) \
        if rcfg.realizations else np.array([])
    params = {"n1": args.n1, "n2": args.n2, "alpha1": rcfg.alpha1,
              "alpha2": rcfg.alpha2, "seed": args.seed,
              "realizations": args.realizations}
    run = _Run("rayleigh", params, out_dir)
    run.add_json("summary.json", {
        "removed_energy_fraction_mean": float(frac.mean()) if frac.size else 0.0,
        "removed_energy_fraction_std": float(frac.std()) if frac.size else 0.0,
        "realizations": rcfg.realizations,
    })
    if args.dump_channels:
        def rows(data):
            for r in range(data.shape[0]):
                grid = data[r].reshape(rcfg.n1, rcfg.n2)
                for i1 in range(rcfg.n1):
                    for i2 in range(rcfg.n2):
                        yield r, i1, i2, grid[i1, i2].real, grid[i1, i2].imag
        run.add_csv("channels_before.csv", ["realization", "n1", "n2", "re", "im"],
                    rows(channels))
        run.add_csv("channels_after.csv", ["realization", "n1", "n2", "re", "im"],
                    rows(filtered))
    return run.flush()


def cmd_simulate(args, out_dir: Path) -> list[str]:
    cfg = CodebookConfig(args.n1, args.n2, args.o1, args.o2)
    lam = 1.0
    geom = ArrayGeometry(args.n1, args.n2, args.alpha1_v * lam, args.alpha2_v * lam, lam)
    sim = SimConfig(cfg=cfg, geometry=geom, snr_db_list=tuple(args.snr_db),
                    drops=args.drops, seed=args.seed,
                    restrict_evanescent=args.restrict_evanescent,
                    interference_power_db=args.interference_db)
    stats = run_drops(sim)
    params = {"n1": args.n1, "n2": args.n2, "o1": args.o1, "o2": args.o2,
              "alpha1": geom.alpha1, "alpha2": geom.alpha2,
              "snr_db": list(args.snr_db), "drops": args.drops, "seed": args.seed,
              "restrict_evanescent": args.restrict_evanescent,
              "interference_db": args.interference_db, "cap": args.cap}
    run = _Run("simulate", params, out_dir)
    payload = [{"snr_db": s.snr_db, "drops": s.drops,
                "evanescent_fraction": s.evanescent_fraction,
                "throughput_proxy": s.throughput_proxy,
                "restricted": s.restricted} for s in stats]
    run.add_json("stats.json", payload)
    for s in stats:
        hm = selection_heatmap(s, cfg, geom.alpha1, geom.alpha2, cap=args.cap)
        header = ["l", "m", "count"] + (["count_capped"] if args.cap is not None else [])
        def rows():
            for l in range(cfg.size1):
                for m in range(cfg.size2):
                    row = [l, m, int(hm["counts"][l, m])]
                    if args.cap is not None:
                        row.append(int(hm["counts_capped"][l, m]))
                    yield row
        tag = f"{s.snr_db:g}db".replace("-", "m")
        run.add_csv(f"heatmap_{tag}.csv", header, rows())
    boundary = selection_heatmap(stats[0], cfg, geom.alpha1, geom.alpha2)["boundary"]
    run.add_csv("boundary.csv", ["l_shift", "m_shift"],
                ((p[0], p[1]) for p in boundary))
    return run.flush()


def _parse_idx(text: str) -> tuple[int, int]:
    try:
        l, m = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected --idx L,M with integers")
    return l, m


def _add_geometry_flags(p: argparse.ArgumentParser):
    p.add_argument("--alpha1", type=float, default=None,
                   help="normalized x spacing d1/wavelength")
    p.add_argument("--alpha2", type=float, default=None,
                   help="normalized y spacing d2/wavelength")
    p.add_argument("--d1-m", type=float, default=None, help="x spacing in meters")
    p.add_argument("--d2-m", type=float, default=None, help="y spacing in meters")
    p.add_argument("--freq-hz", type=float, default=None, help="carrier frequency in Hz")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kroncb",
        description="Kronecker-product DFT codebook analysis for uniform planar arrays")
    parser.add_argument("--out-dir", default=None,
                        help=f"output directory (default: ${ENV_OUT_DIR} or cwd)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mask", help="evanescent-zone mask and redundancy stats")
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--o1", type=int, default=1)
    p.add_argument("--o2", type=int, default=1)
    _add_geometry_flags(p)
    p.add_argument("--offsets-hz", type=float, nargs="+", default=None,
                   help="sub-carrier offsets from --freq-hz for wideband masks")
    p.set_defaults(func=cmd_mask)

    p = sub.add_parser("pattern", help="hemisphere beam pattern and lobe report")
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--o1", type=int, default=4)
    p.add_argument("--o2", type=int, default=4)
    _add_geometry_flags(p)
    p.add_argument("--idx", type=_parse_idx, default=None, help="codeword index L,M")
    p.add_argument("--kx-over-k", type=float, default=None)
    p.add_argument("--ky-over-k", type=float, default=None)
    p.add_argument("--theta-step", type=float, default=0.5, help="degrees")
    p.add_argument("--phi-step", type=float, default=0.5, help="degrees")
    p.add_argument("--radius-m", type=float, default=None)
    p.add_argument("--ascii", action="store_true", help="print a coarse ASCII heatmap")
    p.set_defaults(func=cmd_pattern)

    p = sub.add_parser("nearfield", help="near-field channel projection onto the codebook")
    p.add_argument("--n", type=int, default=None, help="square array size")
    p.add_argument("--n1", type=int, default=None)
    p.add_argument("--n2", type=int, default=None)
    p.add_argument("--o", type=int, default=1)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--r-over-lambda", type=float, required=True)
    p.add_argument("--theta-deg", type=float, required=True)
    p.add_argument("--phi-deg", type=float, required=True)
    p.set_defaults(func=cmd_nearfield)

    p = sub.add_parser("rayleigh", help="filtered Rayleigh channel batch")
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--alpha", type=float, default=None,
                   help="shorthand for equal --alpha1/--alpha2")
    _add_geometry_flags(p)
    p.add_argument("--realizations", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dump-channels", action="store_true",
                   help="also write per-element before/after CSVs")
    p.set_defaults(func=cmd_rayleigh)

    p = sub.add_parser("simulate", help="codeword-selection Monte Carlo over an SNR ladder")
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--o1", type=int, default=4)
    p.add_argument("--o2", type=int, default=4)
    p.add_argument("--alpha", type=float, default=None,
                   help="shorthand for equal --alpha1/--alpha2")
    _add_geometry_flags(p)
    p.add_argument("--snr-db", type=float, nargs="+", required=True)
    p.add_argument("--drops", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restrict-evanescent", action="store_true")
    p.add_argument("--interference-db", type=float, default=None)
    p.add_argument("--cap", type=int, default=None, help="cap exported counts")
    p.set_defaults(func=cmd_simulate)
    return parser


def _fill_alpha_shorthand(args):
    if getattr(args, "alpha", None) is not None:
        args.alpha1_v = args.alpha
        args.alpha2_v = args.alpha
    elif getattr(args, "alpha1", None) is not None and getattr(args, "alpha2", None) is not None:
        args.alpha1_v = args.alpha1
        args.alpha2_v = args.alpha2
    elif getattr(args, "d1_m", None) is not None and getattr(args, "freq_hz", None) is not None:
        lam = SPEED_OF_LIGHT / args.freq_hz
        args.alpha1_v = args.d1_m / lam
        args.alpha2_v = (args.d2_m if args.d2_m is not None else args.d1_m) / lam
    else:
        raise SystemExit2("give --alpha, --alpha1/--alpha2 or --d1-m/--d2-m/--freq-hz")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out_dir = Path(args.out_dir or os.environ.get(ENV_OUT_DIR) or ".")
    try:
        if args.command in ("rayleigh", "simulate"):
            _fill_alpha_shorthand(args)
        args.func(args, out_dir)
    except SystemExit2 as exc:
        parser.print_usage(sys.stderr)
        print(f"kroncb {args.command}: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # runtime failure: exit 1, nothing written
        print(f"kroncb {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
