"""Command-line surface: surgery verdicts, slope scans, verification suites,
and orbit-trace export.

stdout carries exclusively the machine-readable payload (JSON for single
verdicts and suite summaries, CSV for tables); diagnostics go to stderr.
Exit codes: 0 success/expansive, 1 malformed input, 2 inadmissible surgery
class, 3 non-expansive (1-prong) verdict, 4 suite failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .plane import ModelParams, ProngPoint
from .suspension import TorusPoint, orbit_trace
from .surgery import HomologyClass, admissible, scan_classes, surgery_verdict
from .verify import DEFAULT_MODELS, SampleConfig, run_suite

EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_INADMISSIBLE = 2
EXIT_NON_EXPANSIVE = 3
EXIT_SUITE_FAILURE = 4

_CONFIG_KEYS = ("p", "k", "sigma", "box", "suite", "seed", "out", "horizon",
                "pairs", "r", "theta", "s", "step")


class _Parser(argparse.ArgumentParser):
    """argparse exits with code 2 on bad input; the contract wants 1."""

    def error(self, message):
        self.exit(EXIT_MALFORMED, f"{self.prog}: error: {message}\n")


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        return "%.17g" % float(x)
    return str(x)


def _write_csv(rows, header, out_path=None):
    lines = [",".join(header)]
    lines += [",".join(_fmt(c) for c in row) for row in rows]
    text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write_json(obj, out_path=None):
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out_path:
        with open(out_path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _merged(args) -> dict:
    """File config overridden by explicitly given CLI flags."""
    cfg = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            doc = json.load(fh)
        if not isinstance(doc, dict):
            raise ValueError("config file must hold a single JSON object")
        for key in doc:
            if key not in _CONFIG_KEYS:
                raise ValueError(f"unknown config key {key!r}")
        cfg.update(doc)
    for key in _CONFIG_KEYS:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    return cfg


def _model_of(cfg: dict) -> ModelParams:
    if "p" not in cfg:
        raise ValueError("missing required parameter p")
    return ModelParams(int(cfg["p"]), int(cfg.get("k", 0)))


def _sigma_of(cfg: dict) -> HomologyClass:
    raw = cfg.get("sigma")
    if raw is None:
        raise ValueError("missing required parameter sigma")
    if isinstance(raw, str):
        parts = raw.split(",")
    else:
        parts = list(raw)
    if len(parts) != 2:
        raise ValueError(f"sigma must be two integers a,b, got {raw!r}")
    return HomologyClass(int(parts[0]), int(parts[1]))


# ---------------------------------------------------------------------------
# subcommands


def cmd_surgery(args) -> int:
    cfg = _merged(args)
    params = _model_of(cfg)
    sigma = _sigma_of(cfg)
    if not admissible(sigma, params):
        from .surgery import sigma0
        print(f"inadmissible surgery class ({sigma.a},{sigma.b}) for "
              f"(p,k)=({params.p},{params.k}): sigma0=({sigma0(params).a},"
              f"{sigma0(params).b})", file=sys.stderr)
        return EXIT_INADMISSIBLE
    verdict = surgery_verdict(sigma, params)
    _write_json(verdict.to_record(sigma, params), cfg.get("out"))
    return EXIT_OK if verdict.expansive else EXIT_NON_EXPANSIVE


def cmd_scan(args) -> int:
    cfg = _merged(args)
    params = _model_of(cfg)
    if params.p < 2:
        print("scan requires a surgery base with p >= 2", file=sys.stderr)
        return EXIT_MALFORMED
    box = int(cfg.get("box", 5))
    if box < 1:
        print("scan bounds must be >= 1", file=sys.stderr)
        return EXIT_MALFORMED
    rows = [(s.a, s.b, v.K, v.p_new, v.expansive)
            for s, v in scan_classes(params, box)]
    rows.sort(key=lambda row: (row[0], row[1]))
    _write_csv(rows, ("a", "b", "K", "p_new", "expansive"), cfg.get("out"))
    return EXIT_OK


def _suite_models(cfg: dict):
    if "p" in cfg:
        return (ModelParams(int(cfg["p"]), int(cfg.get("k", 0))),)
    return DEFAULT_MODELS


def _detail_rows(node, path, rows):
    if isinstance(node, dict):
        if "results" in node:
            for child in node["results"]:
                _detail_rows(child, path + [str(node.get("suite", ""))], rows)
        else:
            name = node.get("statement") or node.get("label") or "?"
            rows.append(("/".join(p for p in path if p), name,
                         bool(node.get("passed", False))))


def cmd_verify(args) -> int:
    cfg = _merged(args)
    suite = cfg.get("suite", "all")
    sample = SampleConfig(seed=int(cfg.get("seed", 0)),
                          n_pairs=int(cfg.get("pairs", 200)),
                          time_horizon=float(cfg.get("horizon", 6.0)))
    try:
        report = run_suite(suite, sample, _suite_models(cfg))
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_MALFORMED
    _write_json(report, None)
    if cfg.get("out"):
        rows = []
        _detail_rows(report, [], rows)
        _write_csv(rows, ("suite", "statement", "passed"), cfg["out"])
    return EXIT_OK if report["passed"] else EXIT_SUITE_FAILURE


def cmd_orbit(args) -> int:
    cfg = _merged(args)
    params = _model_of(cfg)
    r = float(cfg.get("r", 1.0))
    theta = float(cfg.get("theta", 0.0))
    s = float(cfg.get("s", 0.0))
    horizon = float(cfg.get("horizon", 8.0))
    step = float(cfg.get("step", 1.0 / 16.0))
    if horizon < 0 or step <= 0:
        print("need horizon >= 0 and step > 0", file=sys.stderr)
        return EXIT_MALFORMED
    pt = TorusPoint(ProngPoint(r, theta, params.p), s)
    times = np.arange(0.0, horizon + step / 2.0, step) if horizon > 0 else [0.0]
    rows = orbit_trace(pt, params, times)
    _write_csv(rows, ("t", "r", "theta", "s", "u", "v", "quadrant"),
               cfg.get("out"))
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="prongflow",
                     description="pseudo-hyperbolic local models: surgery "
                                 "verdicts, scans, verification, orbit traces")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--p", type=int, help="prong count of the base model")
        sp.add_argument("--k", type=int, help="rotation parameter (default 0)")
        sp.add_argument("--config", type=str, help="JSON config file")
        sp.add_argument("--out", type=str, help="output file (default stdout)")

    sp = sub.add_parser("surgery", help="single surgery verdict (JSON)")
    common(sp)
    sp.add_argument("--sigma", type=str, help="surgery class as a,b")
    sp.set_defaults(func=cmd_surgery)

    sp = sub.add_parser("scan", help="verdicts for all classes in a box (CSV)")
    common(sp)
    sp.add_argument("--box", type=int, help="scan |a|,|b| <= box (default 5)")
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("verify", help="run a verification suite (JSON + CSV)")
    common(sp)
    sp.add_argument("--suite", type=str,
                    choices=("metrics", "models", "closeness", "expansivity", "all"),
                    help="suite name (default all)")
    sp.add_argument("--seed", type=int, help="RNG seed (default 0)")
    sp.add_argument("--pairs", type=int, help="sample pairs per estimate")
    sp.add_argument("--horizon", type=float, help="time horizon")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("orbit", help="orbit trace at grid times (CSV)")
    common(sp)
    sp.add_argument("--r", type=float, help="initial radius (default 1)")
    sp.add_argument("--theta", type=float, help="initial angle (default 0)")
    sp.add_argument("--s", type=float, help="initial fiber (default 0)")
    sp.add_argument("--horizon", type=float, help="trace length (default 8)")
    sp.add_argument("--step", type=float, help="time step (default 1/16)")
    sp.set_defaults(func=cmd_orbit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
