"""Command-line interface.

Exit codes: 0 success, 1 usage error (nothing written), 2 numeric failure
(no bracket, divergence at a requested point, failed self-test).
"""
import argparse
import csv
import io
import json
import os
import sys
import tempfile
from math import isfinite

import numpy as np

from . import __version__
from .errors import MultipoleError, UsageError
from .hertz import HertzConfig, axis_scan
from .multipole import SphericalPoint
from .radial import RadialKind
from .selftest import run_checks
from .vacuum import (
    DEFAULT_J_MAX,
    TruncationSpec,
    calibrate,
    convergence_table,
    radial_scan,
    threshold_kr,
    vacuum_noise,
    wavelength_distance,
)

COMMANDS = ("scan", "map", "threshold", "converge", "hertz", "selftest")

# built-in defaults, applied after the config file
DEFAULTS = {
    "kind": "outgoing",
    "jmax": DEFAULT_J_MAX,
    "calibrate": None,
    "scale": 1.0,
    "scale_prime": 1.0,
    "format": "csv",
    "output": None,
    "xlo": 1.0,
    "xhi": 50.0,
    "n": 200,
    "theta": 0.0,
    "phi": 0.0,
    "ntheta": 9,
    "floor": 10.0,
    "bracket": [0.5, 50.0],
    "x": 5.0,
    "jmax_list": [5, 10, 15, 20],
    "d": 4 * np.pi,
    "alpha": "0.7071067811865476",
    "beta": "0.7071067811865476",
    "cross_terms": False,
    "margin": 0.5,
    "tolerance_scale": 1.0,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p):
    p.add_argument("--config", help="JSON file with option values; flags win")
    p.add_argument("--kind", choices=[k.value for k in RadialKind])
    p.add_argument("--jmax", type=int)
    p.add_argument("--calibrate", type=float, metavar="X_REF",
                   help="pin the noise ratio to 1 at kr = X_REF")
    p.add_argument("--scale", type=float, help="raw field scale (k*gamma)")
    p.add_argument("--scale-prime", type=float, dest="scale_prime")
    p.add_argument("--format", choices=["csv", "json"])
    p.add_argument("--output", metavar="PATH")
    p.add_argument("--seed", help=argparse.SUPPRESS)


def build_parser():
    parser = _Parser(prog="multipole-noise", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("scan", help="noise profile along a ray")
    _common(p)
    p.add_argument("--xlo", type=float)
    p.add_argument("--xhi", type=float)
    p.add_argument("--n", type=int)
    p.add_argument("--theta", type=float)
    p.add_argument("--phi", type=float)

    p = sub.add_parser("map", help="noise on a (kr, theta) grid")
    _common(p)
    p.add_argument("--xlo", type=float)
    p.add_argument("--xhi", type=float)
    p.add_argument("--n", type=int)
    p.add_argument("--ntheta", type=int)
    p.add_argument("--phi", type=float)

    p = sub.add_parser("threshold", help="kr where the ratio falls through a floor")
    _common(p)
    p.add_argument("--floor", type=float)
    p.add_argument("--bracket", type=float, nargs=2, metavar=("LO", "HI"))

    p = sub.add_parser("converge", help="noise versus multipole cutoff")
    _common(p)
    p.add_argument("--x", type=float)
    p.add_argument("--jmax-list", type=int, nargs="+", dest="jmax_list")

    p = sub.add_parser("hertz", help="two-atom noise along the axis")
    _common(p)
    p.add_argument("--d", type=float)
    p.add_argument("--alpha", help="complex, e.g. 0.6+0.1j")
    p.add_argument("--beta")
    p.add_argument("--cross-terms", action="store_const", const=True,
                   dest="cross_terms")
    p.add_argument("--n", type=int)
    p.add_argument("--margin", type=float)

    p = sub.add_parser("selftest", help="run the closed-form checks")
    p.add_argument("--tolerance-scale", type=float, dest="tolerance_scale",
                   help=argparse.SUPPRESS)
    return parser


def resolve(argv):
    """Parse argv into an effective config dict; raises UsageError."""
    ns = build_parser().parse_args(argv)
    if ns.command is None:
        raise UsageError(f"a command is required: {', '.join(COMMANDS)}")
    given = {k: v for k, v in vars(ns).items() if v is not None}
    if "seed" in given:
        raise UsageError("--seed is not accepted: the tool uses no randomness")

    file_cfg = {}
    if given.get("config"):
        try:
            with open(given["config"]) as fh:
                file_cfg = json.load(fh)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read config file: {exc}") from None
        if not isinstance(file_cfg, dict):
            raise UsageError("config file must hold a JSON object")
        file_cfg = {k.replace("-", "_"): v for k, v in file_cfg.items()}

    cfg = dict(DEFAULTS)
    cfg.update(file_cfg)
    cfg.update(given)
    cfg.pop("config", None)
    _validate(cfg)
    return cfg


def _require(cond, message):
    if not cond:
        raise UsageError(message)


def _validate(cfg):
    cmd = cfg["command"]
    if cmd == "selftest":
        return
    try:
        cfg["kind"] = RadialKind.parse(cfg["kind"]).value
        cfg["trunc"] = TruncationSpec(int(cfg["jmax"]))
    except (MultipoleError, TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    if cfg["calibrate"] is not None:
        _require(isfinite(cfg["calibrate"]) and cfg["calibrate"] > 0,
                 f"--calibrate must be > 0, got {cfg['calibrate']}")
    _require(isfinite(cfg["scale"]) and cfg["scale"] > 0, "--scale must be > 0")
    _require(isfinite(cfg["scale_prime"]) and cfg["scale_prime"] >= 0,
             "--scale-prime must be >= 0")
    _require(cfg["format"] in ("csv", "json"), "--format must be csv or json")
    if cfg["output"]:
        parent = os.path.dirname(os.path.abspath(cfg["output"]))
        _require(os.path.isdir(parent), f"output directory {parent} does not exist")

    if cmd in ("scan", "map"):
        _require(0 <= cfg["xlo"] < cfg["xhi"] and isfinite(cfg["xhi"]),
                 f"need 0 <= xlo < xhi, got xlo={cfg['xlo']}, xhi={cfg['xhi']}")
        _require(int(cfg["n"]) == cfg["n"] and cfg["n"] >= 2, "--n must be >= 2")
    if cmd == "map":
        _require(int(cfg["ntheta"]) == cfg["ntheta"] and cfg["ntheta"] >= 1,
                 "--ntheta must be >= 1")
    if cmd == "threshold":
        lo, hi = cfg["bracket"]
        _require(0 <= lo < hi, f"bracket needs 0 <= lo < hi, got {lo} {hi}")
        _require(cfg["floor"] > 0, "--floor must be > 0")
    if cmd == "converge":
        _require(cfg["x"] >= 0, "--x must be >= 0")
        _require(all(j >= 1 for j in cfg["jmax_list"]), "cutoffs must be >= 1")
    if cmd == "hertz":
        try:
            alpha, beta = complex(cfg["alpha"]), complex(cfg["beta"])
            cfg["hertz"] = HertzConfig(
                d=cfg["d"], alpha=alpha, beta=beta,
                cross_terms=bool(cfg["cross_terms"]), trunc=cfg["trunc"],
            )
        except (MultipoleError, TypeError, ValueError) as exc:
            raise UsageError(str(exc)) from None
        _require(int(cfg["n"]) == cfg["n"] and cfg["n"] >= 2, "--n must be >= 2")
        _require(0 < cfg["margin"] < cfg["d"] / 2, "margin must lie in (0, d/2)")


def _scales(cfg, kind):
    """(scale, scale_prime) honouring the calibration flag."""
    if cfg["calibrate"] is None:
        return cfg["scale"], cfg["scale_prime"]
    base = calibrate(kind, cfg["trunc"], cfg["calibrate"])
    return base * cfg["scale_prime"], cfg["scale_prime"]


def compute(cfg):
    """Run the command; returns (columns, rows, metadata)."""
    cmd, kind, trunc = cfg["command"], cfg.get("kind"), cfg.get("trunc")
    if cmd == "hertz":
        kind = RadialKind.OUTGOING.value
    scale, scale_prime = _scales(cfg, kind)

    if cmd == "scan":
        samples = radial_scan(cfg["xlo"], cfg["xhi"], int(cfg["n"]), kind, trunc,
                              scale, scale_prime, cfg["theta"], cfg["phi"])
        columns = ["kr", "c_e", "c_plane", "ratio"]
        rows = [(s.x, s.c_e, s.c_plane, s.ratio) for s in samples]
    elif cmd == "map":
        columns = ["kr", "theta", "c_e", "c_e_theta_avg"]
        rows = []
        thetas = np.linspace(0.0, np.pi, int(cfg["ntheta"]))
        for x in np.linspace(cfg["xlo"], cfg["xhi"], int(cfg["n"])):
            vals = [vacuum_noise(SphericalPoint(float(x), float(t), cfg["phi"]),
                                 kind, trunc, scale) for t in thetas]
            avg = float(np.mean(vals))
            rows.extend((float(x), float(t), v, avg) for t, v in zip(thetas, vals))
    elif cmd == "threshold":
        x = threshold_kr(cfg["floor"], kind, trunc, scale, scale_prime,
                         tuple(cfg["bracket"]))
        columns = ["floor", "kr", "r_over_lambda"]
        rows = [(cfg["floor"], x, wavelength_distance(x))]
    elif cmd == "converge":
        columns = ["j_max", "c_e"]
        rows = convergence_table(SphericalPoint(cfg["x"]), kind, cfg["jmax_list"], scale)
    elif cmd == "hertz":
        hc = cfg["hertz"]
        hc = HertzConfig(hc.d, hc.alpha, hc.beta, hc.cross_terms, hc.trunc, scale)
        columns = ["z", "noise"]
        rows = axis_scan(hc, int(cfg["n"]), cfg["margin"])
    else:  # pragma: no cover - guarded by the parser
        raise UsageError(f"unknown command {cmd}")

    effective = {k: v for k, v in cfg.items() if k not in ("trunc", "hertz")}
    metadata = {
        "command": cmd,
        "kind": kind,
        "j_max": trunc.j_max,
        "x_ref": cfg["calibrate"],
        "calibrated_scale": scale if cfg["calibrate"] is not None else None,
        "scale_prime": scale_prime,
        "version": __version__,
        "config": effective,
    }
    return columns, rows, metadata


def _fmt(v):
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return format(float(v), ".17g")


def render(columns, rows, metadata, fmt):
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
        return buf.getvalue()
    payload = {
        "metadata": metadata,
        "rows": [dict(zip(columns, (float(v) if not isinstance(v, int) else v
                                    for v in row))) for row in rows],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def write_atomic(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".multipole-noise-")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _selftest(cfg, out):
    results = run_checks(cfg["tolerance_scale"])
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        out.write(f"{status}  {r.name}: error {r.error:.3e} (tol {r.tol:.1e})\n")
    ok = all(r.passed for r in results)
    out.write(f"{sum(r.passed for r in results)}/{len(results)} checks passed\n")
    return 0 if ok else 2


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        cfg = resolve(argv)
    except UsageError as exc:
        stderr.write(f"multipole-noise: usage error: {exc}\n")
        return 1

    if cfg["command"] == "selftest":
        return _selftest(cfg, stdout)

    try:
        columns, rows, metadata = compute(cfg)
    except UsageError as exc:
        stderr.write(f"multipole-noise: usage error: {exc}\n")
        return 1
    except MultipoleError as exc:
        stderr.write(f"multipole-noise: {cfg['command']} failed: {exc}\n")
        return 2

    text = render(columns, rows, metadata, cfg["format"])
    if cfg["output"]:
        write_atomic(cfg["output"], text)
    else:
        stdout.write(text)
    return 0


def main():
    sys.exit(run())
