"""Command-line entry point: surfstat {verify,trace,moments,distribution,gn,gauss,jacobi}.

Exit codes: 0 success, 1 a check failed, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import arithstat as st
from . import char_sums as cs
from . import checks
from . import curves as cv
from . import gn_hyper as gh
from .ff_core import build_context, parse_primes

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

INT_KEYS = {"prime", "lambda", "max_m", "precision", "samples", "workers", "seed", "bins", "j", "j1", "j2"}
BOOL_KEYS = {"strict", "check", "no_figure"}
DEFAULTS = {
    "primes": "5..50",
    "prime": None,
    "lambda": None,
    "suite": "all",
    "max_m": 4,
    "precision": 3,
    "samples": 20,
    "workers": 1,
    "seed": 0,
    "out": None,
    "format": None,
    "bins": 60,
    "strict": False,
    "check": False,
    "no_figure": False,
    "j": None,
    "j1": None,
    "j2": None,
}
DEFAULT_FORMAT = {"trace": "csv", "distribution": "csv"}


class ConfigError(ValueError):
    pass


def diag(msg: str) -> None:
    print(msg, file=sys.stderr)


def load_config(path: str) -> dict:
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"config file {path} not found")
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        parser.read_string("[surfstat]\n" + p.read_text())
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc
    out = {}
    for key, val in parser["surfstat"].items():
        k = key.replace("-", "_")
        if k not in DEFAULTS:
            raise ConfigError(f"unknown config key {key!r} in {path}")
        out[k] = _coerce(k, val)
    return out


def _coerce(key: str, val):
    if val is None:
        return None
    if key in INT_KEYS:
        try:
            return int(val)
        except ValueError as exc:
            raise ConfigError(f"{key} must be an integer, got {val!r}") from exc
    if key in BOOL_KEYS:
        if isinstance(val, bool):
            return val
        low = str(val).strip().lower()
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"{key} must be a boolean, got {val!r}")
    return val


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    common.add_argument("--config", help="key = value file mirroring these flags")
    common.add_argument("--primes", default=S, help="primes, e.g. 5..50 or 5,7,11")
    common.add_argument("--prime", type=int, default=S)
    common.add_argument("--lambda", dest="lambda", type=int, default=S)
    common.add_argument("--suite", default=S, help=f"comma list of {', '.join(checks.SUITES)} or all")
    common.add_argument("--max-m", dest="max_m", type=int, default=S)
    common.add_argument("--precision", type=int, default=S, help="p-adic unit precision N")
    common.add_argument("--samples", type=int, default=S, help="sampled lambdas per prime above 47")
    common.add_argument("--workers", type=int, default=S)
    common.add_argument("--seed", type=int, default=S)
    common.add_argument("--out", default=S, help="output file (figures go next to it)")
    common.add_argument("--format", choices=["json", "csv"], default=S)
    common.add_argument("--bins", type=int, default=S)
    common.add_argument("--strict", action="store_true", default=S, help="count printed-form discrepancies as failures")
    common.add_argument("--check", action="store_true", default=S, help="cross-check fast A_p against the direct count")
    common.add_argument("--no-figure", dest="no_figure", action="store_true", default=S)
    common.add_argument("--j", type=int, default=S)
    common.add_argument("--j1", type=int, default=S)
    common.add_argument("--j2", type=int, default=S)

    ap = argparse.ArgumentParser(prog="surfstat", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    helps = {
        "verify": "run identity suites",
        "trace": "Legendre/Clausen traces and A_p",
        "moments": "moment sums of A_p against Catalan targets",
        "distribution": "histogram of A_p/p against the two candidate densities",
        "gn": "decoded 3G3 / 9G9 values and their A_p link",
        "gauss": "Gauss sums, numeric and Gross-Koblitz",
        "jacobi": "Jacobi sums",
    }
    for name, h in helps.items():
        sub.add_parser(name, parents=[common], help=h)
    return ap


def resolve(ns: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    given = vars(ns)
    if given.get("config"):
        cfg.update(load_config(given["config"]))
    for k, v in given.items():
        if k in DEFAULTS:
            cfg[k] = v
    cfg["command"] = ns.command
    if cfg["format"] is None:
        cfg["format"] = DEFAULT_FORMAT.get(ns.command, "json")
    if cfg["format"] not in ("json", "csv"):
        raise ConfigError(f"format must be json or csv, got {cfg['format']!r}")
    for k in ("precision", "samples", "workers", "bins", "max_m"):
        if cfg[k] is not None and cfg[k] < 1:
            raise ConfigError(f"{k} must be positive")
    if cfg["prime"] is not None:
        cfg["prime_list"] = parse_primes(str(cfg["prime"]))
    else:
        cfg["prime_list"] = parse_primes(cfg["primes"])
    return cfg


# output helpers


def emit(cfg: dict, text: str) -> None:
    if cfg["out"]:
        Path(cfg["out"]).write_text(text)
    else:
        sys.stdout.write(text)


def to_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def to_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(["" if x is None else x for x in r])
    return buf.getvalue()


def figure_path(cfg: dict) -> Path | None:
    if cfg["no_figure"] or not cfg["out"]:
        return None
    return Path(cfg["out"]).with_suffix(".png")


# commands


def cmd_verify(cfg: dict) -> int:
    suites = checks.parse_suites(cfg["suite"])
    opts = {"samples": cfg["samples"], "seed": cfg["seed"], "N": cfg["precision"], "strict": cfg["strict"]}
    jobs = [(s, p, opts) for p in cfg["prime_list"] for s in suites]
    if cfg["workers"] > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg["workers"]) as ex:
            results = list(ex.map(checks.run_suite, jobs))
    else:
        results = [checks.run_suite(j) for j in jobs]
    n_fail = sum(len(r["failures"]) for r in results)
    n_disc = sum(len(r["discrepancies"]) for r in results)
    for r in results:
        if r["failures"]:
            diag(f"FAIL {r['suite']} p={r['prime']}: {len(r['failures'])} failure(s)")
    report = {
        "command": "verify",
        "primes": cfg["prime_list"],
        "suites": suites,
        "seed": cfg["seed"],
        "samples": cfg["samples"],
        "precision": cfg["precision"],
        "strict": cfg["strict"],
        "results": results,
        "total_checks": sum(r["checks"] for r in results),
        "total_failures": n_fail,
        "total_discrepancies": n_disc,
    }
    if cfg["format"] == "json":
        emit(cfg, to_json(report))
    else:
        rows = [[r["suite"], r["prime"], r["checks"], len(r["failures"]), len(r["discrepancies"])] for r in results]
        emit(cfg, to_csv(["suite", "p", "checks", "failures", "discrepancies"], rows))
    diag(f"{report['total_checks']} checks, {n_fail} failures, {n_disc} known discrepancies")
    return EXIT_FAIL if n_fail else EXIT_OK


def cmd_trace(cfg: dict) -> int:
    records = []
    for p in cfg["prime_list"]:
        ctx = build_context(p)
        lams = [cfg["lambda"] % p] if cfg["lambda"] is not None else list(range(1, p))
        if 0 in lams:
            raise ConfigError("A_p is undefined at lambda = 0")
        for l in lams:
            try:
                records.append(cv.trace_record(ctx, l, check=cfg["check"]))
            except ArithmeticError as exc:
                diag(str(exc))
                return EXIT_FAIL
    if cfg["format"] == "csv":
        emit(cfg, to_csv(["p", "lambda", "a_leg", "a_cl", "A_p"], [r.as_row() for r in records]))
    else:
        emit(cfg, to_json({"command": "trace", "records": [r.__dict__ for r in records]}))
    return EXIT_OK


def cmd_moments(cfg: dict) -> int:
    reps = []
    for p in cfg["prime_list"]:
        diag(f"moments p={p}")
        rep = st.empirical_moments(build_context(p), cfg["max_m"], cfg["workers"])
        if rep.m_max >= 3:
            rep.extra["m3_sign"] = (rep.normalized[2] > 0) - (rep.normalized[2] < 0)
        reps.append(rep)
    if cfg["format"] == "json":
        emit(cfg, to_json({"command": "moments", "reports": [r.to_dict() for r in reps]}))
    else:
        rows = [[r.p, m, r.raw[m - 1], float(r.normalized[m - 1]), r.targets[m - 1], float(r.gaps[m - 1])] for r in reps for m in range(1, r.m_max + 1)]
        emit(cfg, to_csv(["p", "m", "raw", "normalized", "target", "gap"], rows))
    fig = figure_path(cfg)
    if fig:
        from .plotting import moments_figure

        moments_figure(reps, fig)
    return EXIT_OK


def cmd_distribution(cfg: dict) -> int:
    if len(cfg["prime_list"]) != 1:
        raise ConfigError("distribution takes a single prime")
    p = cfg["prime_list"][0]
    rep = st.distribution_report(build_context(p), cfg["bins"], cfg["workers"])
    diag(f"p={p}: KS model a {rep.ks_a:.4f}, model b {rep.ks_b:.4f}, winner {rep.winner}")
    if cfg["format"] == "csv":
        emit(cfg, to_csv(st.HIST_COLUMNS, rep.csv_rows()))
    else:
        emit(cfg, to_json({"command": "distribution", **rep.to_dict()}))
    fig = figure_path(cfg)
    if fig:
        from .plotting import histogram_figure

        histogram_figure(rep, fig)
    return EXIT_OK


def cmd_gn(cfg: dict) -> int:
    rows, reports, bad = [], [], 0
    N = cfg["precision"]
    for p in cfg["prime_list"]:
        ctx = build_context(p)
        fam = "3g3" if p % 3 == 1 else "9g9"
        lams = [cfg["lambda"] % p] if cfg["lambda"] is not None else [l for l in range(p) if l != 1]
        if 1 in lams:
            raise ConfigError("3G3 and 9G9 are undefined at lambda = 1")
        dec = gh.decoded_g3_scaled if fam == "3g3" else gh.decoded_g9
        for l in lams:
            val = dec(ctx, l, N)
            link = -cv.surface_A_fast(ctx, (1 - l) % p) if l else None
            ok = link is None or val == link
            bad += not ok
            rows.append([p, l, fam, val, link, ok])
        if cfg["lambda"] is None and cfg["format"] == "json":
            reports.append(st.gn_moment_check(ctx, fam, cfg["max_m"], "direct", N).to_dict())
    header = ["p", "lambda", "family", "value", "minus_A_p_1_minus_lambda", "match"]
    if cfg["format"] == "csv":
        emit(cfg, to_csv(header, rows))
    else:
        emit(cfg, to_json({"command": "gn", "values": [dict(zip(header, r)) for r in rows], "moments": reports}))
    return EXIT_FAIL if bad else EXIT_OK


def cmd_gauss(cfg: dict) -> int:
    rows = []
    N = cfg["precision"]
    for p in cfg["prime_list"]:
        ctx = build_context(p)
        js = [cfg["j"] % (p - 1)] if cfg["j"] is not None else list(range(p - 1))
        for j in js:
            g = cs.gauss_sum_numeric(ctx, j)
            # same character omega^j = conj(omega)^(-j) on the p-adic side
            gp = cs.gauss_sum_padic(ctx, -j, N)
            rows.append([p, j, g.re, g.im, g.err, abs(g) ** 2, gp.e, gp.unit.u])
    header = ["p", "j", "re", "im", "err", "abs2", "pi_exponent", "padic_unit"]
    if cfg["format"] == "csv":
        emit(cfg, to_csv(header, rows))
    else:
        emit(cfg, to_json({"command": "gauss", "precision": N, "sums": [dict(zip(header, r)) for r in rows]}))
    return EXIT_OK


def cmd_jacobi(cfg: dict) -> int:
    rows = []
    for p in cfg["prime_list"]:
        ctx = build_context(p)
        n = p - 1
        j1s = [cfg["j1"] % n] if cfg["j1"] is not None else list(range(n))
        j2s = [cfg["j2"] % n] if cfg["j2"] is not None else list(range(n))
        for a in j1s:
            for b in j2s:
                J = cs.jacobi_sum_numeric(ctx, a, b)
                rows.append([p, a, b, J.re, J.im, J.err])
    header = ["p", "j1", "j2", "re", "im", "err"]
    if cfg["format"] == "csv":
        emit(cfg, to_csv(header, rows))
    else:
        emit(cfg, to_json({"command": "jacobi", "sums": [dict(zip(header, r)) for r in rows]}))
    return EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "trace": cmd_trace,
    "moments": cmd_moments,
    "distribution": cmd_distribution,
    "gn": cmd_gn,
    "gauss": cmd_gauss,
    "jacobi": cmd_jacobi,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    try:
        cfg = resolve(ns)
        return COMMANDS[ns.command](cfg)
    except (ConfigError, ValueError) as exc:
        diag(f"error: {exc}")
        return EXIT_CONFIG
    except ArithmeticError as exc:
        diag(f"check failed: {exc}")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
