"""Command-line front end.

Subcommands: sixj, bound-scan, tv-state-sum, fsl-tv, growth, tetvol,
appendix-check, fill-bounds.  Exit codes: 0 success, 1 usage error,
2 invalid input data, 3 numeric failure (loss of significance or a
complex residue where a real value is required), 4 infeasible request.

Floats in text output are printed with 17 significant digits, so every
emitted value parses back to the exact binary64 it came from; JSON output
relies on the encoder's shortest round-trip representation, with non-finite
values mapped to null.
"""

import argparse
import json
import math
import sys
import warnings
from dataclasses import dataclass

from .asympt import (
    InfeasibleError,
    appendix_growth_check,
    appendix_limit,
    growth_series,
    model_growth,
)
from .cache import DiskBackedSixjEvaluator
from .fsl import filling_volume_bounds, fsl_tv_log, fsl_volume, load_fsl
from .lobachevsky import V8, AngleSextuple
from .qarith import Level, LossOfSignificanceWarning, NumericFailure
from .sixj import Sextuple, bound_scan, sixj_symbol, sixj_symbol_mp
from .tetvol import (
    DihedralAngles,
    angles_from_thetas,
    bao_bonahon_check,
    truncated_tet_volume,
)
from .tvstate import load_triangulation, tv_state_sum

TWO_PI = 2.0 * math.pi

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_NUMERIC = 3
EXIT_INFEASIBLE = 4


class UsageError(Exception):
    """Bad flag values (exit 1)."""


class InputError(Exception):
    """Bad input data: documents, tuples, angles (exit 2)."""


@dataclass(frozen=True)
class RunConfig:
    """Validated run parameters shared by the subcommands."""

    subcommand: str
    r_values: tuple
    input_path: str = None
    output_path: str = None
    fmt: str = "csv"
    cache_dir: str = None
    threads: int = 1
    ceiling: int = 17
    override: bool = False
    precision: str = "standard"
    digits: int = 50

    def __post_init__(self):
        for r in self.r_values:
            if r < 5 or r % 2 == 0:
                raise UsageError(f"r must be odd and >= 5, got {r}")
        if self.threads < 1:
            raise UsageError(f"thread count must be >= 1, got {self.threads}")
        if self.precision == "extended" and self.digits < 16:
            raise UsageError(f"extended precision needs >= 16 digits, got {self.digits}")


def _fmt(x) -> str:
    return format(float(x), ".17g")


def _json_num(x):
    x = float(x)
    return x if math.isfinite(x) else None


def _parse_r_range(text) -> tuple:
    """"5:51" -> (5, 7, ..., 51); a single "31" -> (31,)."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return (int(parts[0]),)
        if len(parts) == 2:
            lo, hi = int(parts[0]), int(parts[1])
        else:
            raise ValueError
    except ValueError:
        raise UsageError(f"bad r range {text!r}; expected START:STOP or a single odd integer")
    if lo > hi:
        raise UsageError(f"empty r range {text!r}")
    if lo % 2 == 0 or hi % 2 == 0:
        raise UsageError(f"r range endpoints must be odd, got {text!r}")
    return tuple(range(lo, hi + 1, 2))


def _parse_six(text, kind, name):
    items = [p.strip() for p in text.split(",")]
    if len(items) != 6:
        raise InputError(f"{name} needs 6 comma-separated values, got {len(items)}")
    try:
        return tuple(kind(p) for p in items)
    except ValueError:
        raise InputError(f"{name}: could not parse {text!r}")


def _read_doc(path) -> str:
    if path is None:
        raise UsageError("this subcommand requires --input")
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}")


def _emit(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# Subcommand handlers


def _cmd_sixj(cfg: RunConfig, args) -> int:
    lvl = Level(cfg.r_values[0])
    colors = _parse_six(args.tuple, int, "--tuple")
    try:
        s = Sextuple(*colors)
        if cfg.cache_dir is not None:
            ev = DiskBackedSixjEvaluator(lvl, cfg.cache_dir)
            val = ev.evaluate(s)
            ev.save()
        else:
            val = sixj_symbol(s, lvl)
    except ValueError as exc:
        raise InputError(str(exc))
    lines = []
    if val.is_zero:
        lines.append("value = 0 + 0j")
        lines.append("log_magnitude = -inf")
        lines.append("magnitude = 0")
        lines.append("growth = -inf")
    else:
        v = val.value()
        lines.append(f"value = {_fmt(v.real)} + {_fmt(v.imag)}j")
        lines.append(f"log_magnitude = {_fmt(val.log_magnitude)}")
        lines.append(f"magnitude = {_fmt(math.exp(val.log_magnitude))}")
        lines.append(f"growth = {_fmt(TWO_PI / lvl.r * val.log_magnitude)}")
    if cfg.precision == "extended":
        ext = sixj_symbol_mp(s, lvl, dps=cfg.digits)
        if ext.is_zero:
            lines.append("log_magnitude_extended = -inf")
        else:
            lines.append(f"log_magnitude_extended = {_fmt(ext.log_magnitude)}")
            if not val.is_zero:
                rel = abs(val.log_magnitude - ext.log_magnitude) / max(
                    1.0, abs(ext.log_magnitude)
                )
                lines.append(f"log_magnitude_rel_diff = {_fmt(rel)}")
    _emit("\n".join(lines), cfg.output_path)
    return EXIT_OK


def _cmd_bound_scan(cfg: RunConfig, args) -> int:
    lvl = Level(cfg.r_values[0])
    try:
        report = bound_scan(lvl, ceiling=cfg.ceiling, override=cfg.override,
                            threads=cfg.threads)
    except ValueError as exc:
        raise UsageError(str(exc))
    _emit(report.to_json(), cfg.output_path)
    return EXIT_OK


def _cmd_tv_state_sum(cfg: RunConfig, args) -> int:
    try:
        tri = load_triangulation(_read_doc(cfg.input_path))
    except ValueError as exc:
        raise InputError(str(exc))
    lvl = Level(cfg.r_values[0])
    res = tv_state_sum(tri, lvl, even_colors_only=args.even_colors_only,
                       threads=cfg.threads)
    doc = {"r": res.r, "value": _json_num(res.value),
           "colorings_counted": res.colorings_counted}
    _emit(json.dumps(doc, indent=2), cfg.output_path)
    return EXIT_OK


def _series_rows_csv(header, rows):
    out = [",".join(header)]
    for row in rows:
        out.append(",".join("" if v is None else (_fmt(v) if isinstance(v, float) else str(v))
                            for v in row))
    return "\n".join(out)


def _cmd_fsl_tv(cfg: RunConfig, args) -> int:
    try:
        p = load_fsl(_read_doc(cfg.input_path))
    except ValueError as exc:
        raise InputError(str(exc))
    target = fsl_volume(p)
    rows = []
    for r in cfg.r_values:
        lvl = Level(r)
        ev = DiskBackedSixjEvaluator(lvl, cfg.cache_dir) if cfg.cache_dir else None
        memo = dict(ev.table) if ev else None
        log_tv, nonzero, _ = fsl_tv_log(p, lvl, threads=cfg.threads, memo=memo)
        if ev:
            ev.absorb(memo)
            ev.save()
        growth = TWO_PI / r * log_tv if nonzero else -math.inf
        rows.append((r, float(log_tv), float(growth), float(growth - target)))
    if cfg.fmt == "csv":
        text = _series_rows_csv(("r", "log_tv", "growth", "gap_to_2cv8"), rows)
    else:
        text = json.dumps({"volume_target": _json_num(target), "rows": [
            {"r": r, "log_tv": _json_num(lt), "growth": _json_num(g),
             "gap_to_2cv8": _json_num(gap)} for r, lt, g, gap in rows]}, indent=2)
    _emit(text, cfg.output_path)
    return EXIT_OK


def _cmd_growth(cfg: RunConfig, args) -> int:
    params = None
    target = args.target
    if args.kind == "fsl":
        try:
            params = load_fsl(_read_doc(cfg.input_path))
        except ValueError as exc:
            raise InputError(str(exc))
        if target is None:
            target = fsl_volume(params)
    elif args.kind == "custom-sextuple-sequence":
        try:
            doc = json.loads(_read_doc(cfg.input_path))
            params = {int(k): tuple(int(c) for c in v) for k, v in doc.items()}
        except (json.JSONDecodeError, AttributeError, TypeError, ValueError) as exc:
            raise InputError(f"bad custom sequence document: {exc}")
        if target is None:
            target = math.nan
    else:
        if cfg.input_path is not None:
            raise UsageError("kind sixj-central takes no --input")
        if target is None:
            target = V8
    try:
        ser = growth_series(args.kind, params, cfg.r_values)
    except ValueError as exc:
        raise InputError(str(exc))
    rows = []
    for r, g in ser.points:
        if ser.fit is not None:
            m = model_growth(ser.fit, r)
            rows.append((r, float(g), float(m), float(g - m)))
        else:
            rows.append((r, float(g), None, None))
    fit = {
        "L": _json_num(ser.fit[0]) if ser.fit else None,
        "a": _json_num(ser.fit[1]) if ser.fit else None,
        "b": _json_num(ser.fit[2]) if ser.fit else None,
        "residual_rms": _json_num(ser.residual_rms),
        "target": _json_num(target),
        "gap": _json_num(ser.fit[0] - target) if ser.fit else None,
    }
    if cfg.fmt == "csv":
        text = _series_rows_csv(("r", "g", "model", "residual"), rows)
        if ser.gaps:
            text += "\n# gaps " + ",".join(str(r) for r in ser.gaps)
        text += "\n# fit " + json.dumps(fit)
    else:
        text = json.dumps({"rows": [
            {"r": r, "g": _json_num(g),
             "model": None if m is None else _json_num(m),
             "residual": None if d is None else _json_num(d)}
            for r, g, m, d in rows],
            "gaps": list(ser.gaps), "fit": fit}, indent=2)
    _emit(text, cfg.output_path)
    return EXIT_OK


def _cmd_tetvol(cfg: RunConfig, args) -> int:
    angles = _parse_six(args.angles, float, "--angles")
    try:
        d = DihedralAngles(angles)
        vol = truncated_tet_volume(d)  # refuses vertex sums above pi
    except ValueError as exc:
        raise InputError(str(exc))
    lines = [
        f"volume = {_fmt(vol)}",
        f"bao_bonahon_admissible = {str(bao_bonahon_check(d)).lower()}",
    ]
    _emit("\n".join(lines), cfg.output_path)
    return EXIT_OK


def _cmd_appendix_check(cfg: RunConfig, args) -> int:
    thetas = _parse_six(args.thetas, float, "--thetas")
    try:
        theta = AngleSextuple(thetas)
    except ValueError as exc:
        raise InputError(str(exc))
    try:
        angle_route = appendix_limit(theta)
    except InfeasibleError:
        raise
    except ValueError as exc:
        raise InfeasibleError(str(exc))
    try:
        dilog_route = truncated_tet_volume(angles_from_thetas(theta))
    except ValueError as exc:
        raise InputError(str(exc))
    lines = [
        f"angle_route = {_fmt(angle_route)}",
        f"dilog_route = {_fmt(dilog_route)}",
        f"abs_diff = {_fmt(abs(angle_route - dilog_route))}",
    ]
    if args.r_range is not None:
        ser = appendix_growth_check(theta, cfg.r_values)
        if not ser.points:
            raise InfeasibleError(
                f"no level in {args.r_range} admits a color sequence for these angles"
            )
        lines.append(f"series_points = {len(ser.points)}")
        lines.append("series_gaps = " + (",".join(str(r) for r in ser.gaps) or "none"))
        if ser.fit is not None:
            lines.append(f"fit_L = {_fmt(ser.fit[0])}")
            lines.append(f"fit_gap_to_angle_route = {_fmt(ser.fit[0] - angle_route)}")
    _emit("\n".join(lines), cfg.output_path)
    return EXIT_OK


def _cmd_fill_bounds(cfg: RunConfig, args) -> int:
    try:
        lo, hi = filling_volume_bounds(args.ltv, args.lmin)
    except ValueError as exc:
        raise InputError(str(exc))
    _emit(f"lower = {_fmt(lo)}\nupper = {_fmt(hi)}", cfg.output_path)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser / dispatch


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="sixjvol", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, r_default=None, range_default=None, fmt=False, cache=False):
        if range_default is not None:
            p.add_argument("--r-range", default=range_default,
                           help=f"odd START:STOP (default {range_default})")
        else:
            p.add_argument("--r", type=int, required=r_default is None,
                           default=r_default, help="level (odd, >= 5)")
        p.add_argument("--output", default=None, help="output path (default stdout)")
        p.add_argument("--threads", type=int, default=1)
        if fmt:
            p.add_argument("--format", choices=("csv", "json"), default="csv")
        if cache:
            p.add_argument("--cache-dir", default=None,
                           help="6j table directory (or set SIXJVOL_CACHE_DIR)")

    p = sub.add_parser("sixj", help="evaluate one 6j-symbol")
    common(p, cache=True)
    p.add_argument("--tuple", required=True, help="six comma-separated colors")
    p.add_argument("--precision", choices=("standard", "extended"), default="standard")
    p.add_argument("--digits", type=int, default=50,
                   help="working digits for --precision extended")

    p = sub.add_parser("bound-scan", help="exhaustive growth scan at one level")
    common(p)
    p.add_argument("--ceiling", type=int, default=17)
    p.add_argument("--override", action="store_true",
                   help="allow r above the ceiling")

    p = sub.add_parser("tv-state-sum", help="state sum of a triangulation document")
    common(p)
    p.add_argument("--input", required=True, help="triangulation JSON (- for stdin)")
    p.add_argument("--even-colors-only", action="store_true")

    p = sub.add_parser("fsl-tv", help="shadow-link invariant sweep over levels")
    common(p, range_default="5:51", fmt=True, cache=True)
    p.add_argument("--input", required=True, help="presentation JSON (- for stdin)")

    p = sub.add_parser("growth", help="growth series and limit fit")
    common(p, range_default="5:51", fmt=True)
    p.add_argument("--kind", required=True,
                   choices=("sixj-central", "fsl", "custom-sextuple-sequence"))
    p.add_argument("--input", default=None,
                   help="presentation JSON (fsl) or {r: colors} JSON (custom)")
    p.add_argument("--target", type=float, default=None,
                   help="limit to report the fit gap against")

    p = sub.add_parser("tetvol", help="truncated-tetrahedron volume from dihedral angles")
    p.add_argument("--angles", required=True, help="six comma-separated angles")
    p.add_argument("--output", default=None)

    p = sub.add_parser("appendix-check", help="angle-route vs dilog-route volume")
    p.add_argument("--thetas", required=True, help="six comma-separated angles")
    p.add_argument("--r-range", default=None,
                   help="also fit the realized color-sequence growth over odd START:STOP")
    p.add_argument("--output", default=None)

    p = sub.add_parser("fill-bounds", help="volume bounds after Dehn filling")
    p.add_argument("--ltv", type=float, required=True,
                   help="growth limit of the unfilled complement")
    p.add_argument("--lmin", type=float, required=True,
                   help="shortest filling slope length")
    p.add_argument("--output", default=None)

    return parser


_HANDLERS = {
    "sixj": _cmd_sixj,
    "bound-scan": _cmd_bound_scan,
    "tv-state-sum": _cmd_tv_state_sum,
    "fsl-tv": _cmd_fsl_tv,
    "growth": _cmd_growth,
    "tetvol": _cmd_tetvol,
    "appendix-check": _cmd_appendix_check,
    "fill-bounds": _cmd_fill_bounds,
}


def _config_from_args(args) -> RunConfig:
    if getattr(args, "r_range", None) is not None:
        r_values = _parse_r_range(args.r_range)
    elif getattr(args, "r", None) is not None:
        r_values = (args.r,)
    else:
        r_values = ()
    return RunConfig(
        subcommand=args.subcommand,
        r_values=r_values,
        input_path=getattr(args, "input", None),
        output_path=getattr(args, "output", None),
        fmt=getattr(args, "format", "csv"),
        cache_dir=getattr(args, "cache_dir", None),
        threads=getattr(args, "threads", 1),
        ceiling=getattr(args, "ceiling", 17),
        override=getattr(args, "override", False),
        precision=getattr(args, "precision", "standard"),
        digits=getattr(args, "digits", 50),
    )


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:  # --help exits argparse directly
            return int(exc.code or 0)
        cfg = _config_from_args(args)
        with warnings.catch_warnings():
            warnings.simplefilter("error", LossOfSignificanceWarning)
            return _HANDLERS[cfg.subcommand](cfg, args)
    except UsageError as exc:
        print(f"sixjvol: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"sixjvol: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NumericFailure, LossOfSignificanceWarning) as exc:
        print(f"sixjvol: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except InfeasibleError as exc:
        print(f"sixjvol: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
