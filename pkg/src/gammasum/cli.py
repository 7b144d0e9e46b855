"""Command-line front end: parse, dispatch, emit machine-readable results.

Single commands (gamma-sum, qform, mvgamma, quantile) funnel into the
same job executor as the line-delimited batch mode, so an interactive
invocation and the equivalent batch record produce byte-identical
output. Results are JSON by default with a stable key set:

    {command, input_echo, cdf | quantile, err_estimate, converged,
     r_used, nodes_used, warnings}

Probabilities are printed with 15 significant digits. Fields that do
not apply to a route are null rather than omitted (a series result has
no contour radius; a Monte Carlo result reports samples as its node
count and the standard error as its error estimate).

Exit codes: 0 success, 2 input validation error, 3 numerical
non-convergence (the partial result is still printed with
"converged": false), 1 internal error. A batch run prints one record
per input line, never aborts on a bad record, and exits with the most
severe per-record code under the ordering 2 > 1 > 3 > 0.

Set GAMMASUM_LOG=DEBUG (or any logging level name) for diagnostics on
stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import re
import sys
from dataclasses import dataclass, field

import numpy as np

from .core import GammaSumParams, QuadratureConfig, cdf, quantile
from .errors import (
    ConfigError,
    ConvergenceError,
    DomainError,
    GammaSumError,
    NotPositiveDefiniteError,
)
from .genfun import g_closed, g_series
from .mvgamma import MvGammaParams, existence_caveat, mv_cdf
from .oracles import mc_cdf, mc_mvgamma, mc_qform, series_cdf
from .qform import SymMatrix, qform_cdf
from .special import reg_lower_gamma

_COMMANDS = ("gamma-sum", "qform", "mvgamma", "quantile", "selfcheck")
_FORMATS = ("json", "csv", "plain")
_QUAD_KEYS = ("r", "n_start", "n_max", "tol")

_log = logging.getLogger("gammasum.cli")


@dataclass
class JobSpec:
    """One unit of work: a command, its payload, quadrature overrides,
    and the output format. Batch lines parse into this shape; the
    interactive flags build the identical structure."""

    command: str
    params: dict = field(default_factory=dict)
    quadrature: dict = field(default_factory=dict)
    output_format: str = "json"

    def __post_init__(self):
        if self.command not in _COMMANDS:
            raise DomainError(
                f"unknown command {self.command!r}; expected one of {_COMMANDS}"
            )
        if not isinstance(self.params, dict):
            raise DomainError("params must be an object")
        if not isinstance(self.quadrature, dict):
            raise DomainError("quadrature must be an object")
        extra = set(self.quadrature) - set(_QUAD_KEYS)
        if extra:
            raise DomainError(f"unknown quadrature keys: {sorted(extra)}")
        if self.output_format not in _FORMATS:
            raise DomainError(
                f"unknown output_format {self.output_format!r}; "
                f"expected one of {_FORMATS}"
            )

    @classmethod
    def from_dict(cls, obj):
        if not isinstance(obj, dict):
            raise DomainError("batch record must be a JSON object")
        unknown = set(obj) - {"command", "params", "quadrature", "output_format"}
        if unknown:
            raise DomainError(f"unknown JobSpec keys: {sorted(unknown)}")
        if "command" not in obj:
            raise DomainError("batch record is missing 'command'")
        return cls(
            command=obj["command"],
            params=obj.get("params", {}),
            quadrature=obj.get("quadrature", {}),
            output_format=obj.get("output_format", "json"),
        )


def _fmt15(v):
    """Round a float to 15 significant digits for printing; None for
    missing or non-finite values, integers passed through."""
    if v is None:
        return None
    if isinstance(v, bool):
        return v
    if isinstance(v, int):
        return v
    v = float(v)
    if not math.isfinite(v):
        return None
    return float(f"{v:.15g}")


def _parse_float(value, name):
    try:
        v = float(value)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"{name} must be a number, got {value!r}") from exc
    if not math.isfinite(v):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return v


def _parse_int(value, name):
    if isinstance(value, bool):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    try:
        v = int(value)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"{name} must be an integer, got {value!r}") from exc
    return v


def _parse_floats(value, name):
    """Accept a list of numbers or a comma/space separated string."""
    if isinstance(value, str):
        parts = [p for p in re.split(r"[,\s]+", value.strip()) if p]
        return tuple(_parse_float(p, name) for p in parts)
    if isinstance(value, (list, tuple)):
        out = []
        for item in value:
            if isinstance(item, str):
                out.extend(_parse_floats(item, name))
            else:
                out.append(_parse_float(item, name))
        return tuple(out)
    return (_parse_float(value, name),)


def _parse_matrix(value, name):
    """Accept a dense row-major array, the shorthand I<k> for the k x k
    identity, or diag:a,b,... for a diagonal matrix."""
    if isinstance(value, str):
        text = value.strip()
        m = re.fullmatch(r"I(\d+)", text)
        if m:
            k = int(m.group(1))
            if k < 1:
                raise DomainError(f"{name}: identity order must be >= 1")
            return np.eye(k)
        if text.startswith("diag:"):
            diag = _parse_floats(text[5:], name)
            if not diag:
                raise DomainError(f"{name}: diag shorthand needs entries")
            return np.diag(diag)
        try:
            value = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DomainError(
                f"{name} must be I<k>, diag:a,b,..., or a JSON array: {exc}"
            ) from exc
    try:
        a = np.asarray(value, dtype=float)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"{name} is not a numeric array: {exc}") from exc
    if a.ndim != 2:
        raise DomainError(f"{name} must be two-dimensional, got shape {a.shape}")
    return a


def _quad_config(overrides):
    kwargs = {}
    if "r" in overrides and overrides["r"] is not None:
        r = overrides["r"]
        if isinstance(r, str):
            if r.strip().lower() == "auto":
                r = None
            else:
                r = _parse_float(r, "r")
        kwargs["r"] = r
    for key in ("n_start", "n_max"):
        if key in overrides and overrides[key] is not None:
            kwargs[key] = _parse_int(overrides[key], key)
    if "tol" in overrides and overrides["tol"] is not None:
        kwargs["tol"] = _parse_float(overrides["tol"], "tol")
    return QuadratureConfig(**kwargs)


def _matrix_echo(a):
    return [[_fmt15(x) for x in row] for row in np.asarray(a, dtype=float)]


def _result_record(command, echo, key, value, err, converged, r_used, nodes,
                   warnings):
    return {
        "command": command,
        "input_echo": echo,
        key: _fmt15(value),
        "err_estimate": _fmt15(err),
        "converged": bool(converged),
        "r_used": _fmt15(r_used),
        "nodes_used": nodes,
        "warnings": list(warnings),
    }


def _error_record(command, echo, kind, message):
    return {
        "command": command,
        "input_echo": echo,
        "error": str(message),
        "error_type": kind,
    }


def _run_gamma_sum(job):
    p = job.params
    allowed = {"alphas", "lambdas", "x", "method", "n_samples", "seed"}
    extra = set(p) - allowed
    if extra:
        raise DomainError(f"unknown gamma-sum params: {sorted(extra)}")
    for key in ("alphas", "lambdas", "x"):
        if key not in p:
            raise DomainError(f"gamma-sum requires {key!r}")
    alphas = _parse_floats(p["alphas"], "alphas")
    lambdas = _parse_floats(p["lambdas"], "lambdas")
    x = _parse_float(p["x"], "x")
    method = p.get("method", "integral")
    params = GammaSumParams(alphas, lambdas)
    echo = {
        "alphas": [_fmt15(a) for a in params.alphas],
        "lambdas": [_fmt15(l) for l in params.lambdas],
        "x": _fmt15(x),
        "method": method,
    }
    if method == "integral":
        cfg = _quad_config(job.quadrature)
        try:
            est = cdf(params, x, cfg)
        except ConvergenceError as exc:
            est = exc.estimate
            if est is None:
                raise
            rec = _result_record(job.command, echo, "cdf", est.value,
                                 est.err_estimate, False, est.r_used,
                                 est.nodes_used, [str(exc)])
            return rec, 3
        rec = _result_record(job.command, echo, "cdf", est.value,
                             est.err_estimate, True, est.r_used,
                             est.nodes_used, [])
        return rec, 0
    if method == "series":
        tol = _parse_float(job.quadrature.get("tol", 1e-10), "tol")
        res = series_cdf(params, x, tol)
        rec = _result_record(job.command, echo, "cdf", res.value,
                             res.tail_bound, True, None, res.terms_used, [])
        return rec, 0
    if method == "mc":
        n_samples = _parse_int(p.get("n_samples", 1000000), "n_samples")
        seed = _parse_int(p.get("seed", 0), "seed")
        echo["n_samples"] = n_samples
        echo["seed"] = seed
        res = mc_cdf(params, x, n_samples, seed)
        rec = _result_record(job.command, echo, "cdf", res.estimate,
                             res.std_error, True, None, res.n_samples, [])
        return rec, 0
    raise DomainError(f"unknown gamma-sum method {method!r}")


def _run_quantile(job):
    p = job.params
    allowed = {"alphas", "lambdas", "prob"}
    extra = set(p) - allowed
    if extra:
        raise DomainError(f"unknown quantile params: {sorted(extra)}")
    for key in allowed:
        if key not in p:
            raise DomainError(f"quantile requires {key!r}")
    alphas = _parse_floats(p["alphas"], "alphas")
    lambdas = _parse_floats(p["lambdas"], "lambdas")
    prob = _parse_float(p["prob"], "prob")
    params = GammaSumParams(alphas, lambdas)
    cfg = _quad_config(job.quadrature)
    echo = {
        "alphas": [_fmt15(a) for a in params.alphas],
        "lambdas": [_fmt15(l) for l in params.lambdas],
        "prob": _fmt15(prob),
    }
    xq = quantile(params, prob, cfg)
    check = cdf(params, xq, cfg)
    rec = _result_record(job.command, echo, "quantile", xq,
                         abs(check.value - prob), True, check.r_used,
                         check.nodes_used, [])
    return rec, 0


def _run_qform(job):
    p = job.params
    allowed = {"sigma", "c", "x", "method", "n_samples", "seed"}
    extra = set(p) - allowed
    if extra:
        raise DomainError(f"unknown qform params: {sorted(extra)}")
    for key in ("sigma", "c", "x"):
        if key not in p:
            raise DomainError(f"qform requires {key!r}")
    sigma = _parse_matrix(p["sigma"], "sigma")
    cmat = _parse_matrix(p["c"], "c")
    x = _parse_float(p["x"], "x")
    method = p.get("method", "integral")
    echo = {
        "sigma": _matrix_echo(sigma),
        "c": _matrix_echo(cmat),
        "x": _fmt15(x),
        "method": method,
    }
    if method == "integral":
        cfg = _quad_config(job.quadrature)
        try:
            est = qform_cdf(sigma, cmat, x, cfg)
        except ConvergenceError as exc:
            est = getattr(exc, "estimate", None)
            if est is None:
                raise
            rec = _result_record(job.command, echo, "cdf", est.value,
                                 est.err_estimate, False, est.r_used,
                                 est.nodes_used, [str(exc)])
            return rec, 3
        rec = _result_record(job.command, echo, "cdf", est.value,
                             est.err_estimate, True, est.r_used,
                             est.nodes_used, [])
        return rec, 0
    if method == "mc":
        n_samples = _parse_int(p.get("n_samples", 1000000), "n_samples")
        seed = _parse_int(p.get("seed", 0), "seed")
        echo["n_samples"] = n_samples
        echo["seed"] = seed
        res = mc_qform(sigma, cmat, x, n_samples, seed)
        rec = _result_record(job.command, echo, "cdf", res.estimate,
                             res.std_error, True, None, res.n_samples, [])
        return rec, 0
    raise DomainError(f"unknown qform method {method!r}")


def _run_mvgamma(job):
    p = job.params
    allowed = {"alpha", "sigma", "xs", "method", "n_samples", "seed", "max_dim"}
    extra = set(p) - allowed
    if extra:
        raise DomainError(f"unknown mvgamma params: {sorted(extra)}")
    for key in ("alpha", "sigma", "xs"):
        if key not in p:
            raise DomainError(f"mvgamma requires {key!r}")
    alpha = _parse_float(p["alpha"], "alpha")
    sigma = _parse_matrix(p["sigma"], "sigma")
    xs = _parse_floats(p["xs"], "xs")
    method = p.get("method", "integral")
    max_dim = _parse_int(p.get("max_dim", 3), "max_dim")
    params = MvGammaParams(alpha, SymMatrix(sigma), max_dim)
    echo = {
        "alpha": _fmt15(alpha),
        "sigma": _matrix_echo(sigma),
        "xs": [_fmt15(x) for x in xs],
        "method": method,
    }
    warnings = []
    caveat = existence_caveat(params)
    if caveat is not None:
        warnings.append(caveat)
    if method == "integral":
        cfg = _quad_config(job.quadrature)
        try:
            est = mv_cdf(params, xs, cfg)
        except ConvergenceError as exc:
            est = exc.estimate
            if est is None:
                raise
            rec = _result_record(job.command, echo, "cdf", est.value,
                                 est.err_estimate, False, est.r_used,
                                 est.nodes_used, warnings + [str(exc)])
            return rec, 3
        rec = _result_record(job.command, echo, "cdf", est.value,
                             est.err_estimate, True, est.r_used,
                             est.nodes_used, warnings)
        return rec, 0
    if method == "mc":
        n_samples = _parse_int(p.get("n_samples", 1000000), "n_samples")
        seed = _parse_int(p.get("seed", 0), "seed")
        echo["n_samples"] = n_samples
        echo["seed"] = seed
        res = mc_mvgamma(alpha, sigma, xs, n_samples, seed)
        rec = _result_record(job.command, echo, "cdf", res.estimate,
                             res.std_error, True, None, res.n_samples,
                             warnings)
        return rec, 0
    raise DomainError(f"unknown mvgamma method {method!r}")


def _selfcheck_cases():
    """Fast closed-form and cross-route checks run by `selfcheck`."""
    ln2 = math.log(2.0)

    def chk_exponential():
        est = cdf(GammaSumParams((1.0,), (1.0,)), ln2)
        return abs(est.value - 0.5), 1e-10

    def chk_equal_scale():
        est = cdf(GammaSumParams((1.2, 0.8), (2.0, 2.0)), 3.0)
        return abs(est.value - reg_lower_gamma(2.0, 1.5)), 1e-12

    def chk_gfun_routes():
        y = 0.4 * complex(math.cos(0.7), math.sin(0.7))
        a = g_series(1.7, 2.3, y).value
        b = g_closed(1.7, 2.3, y)
        return abs(a - b), 1e-9

    def chk_hypoexponential():
        est = cdf(GammaSumParams((1.0, 1.0), (1.0, 2.0)), 2.0)
        want = 1.0 + math.exp(-2.0) - 2.0 * math.exp(-1.0)
        return abs(est.value - want), 1e-9

    def chk_r_invariance():
        pset = GammaSumParams((1.0, 1.0), (1.0, 3.0))
        lo = cdf(pset, 2.0, QuadratureConfig(r=0.6)).value
        hi = cdf(pset, 2.0, QuadratureConfig(r=0.9)).value
        return abs(lo - hi), 1e-9

    def chk_chi_square():
        est = qform_cdf(np.eye(2), np.eye(2), 2.0 * ln2)
        return abs(est.value - 0.5), 1e-9

    def chk_series_route():
        pset = GammaSumParams((0.7, 1.3, 2.0), (0.5, 1.0, 4.0))
        a = cdf(pset, 6.0).value
        b = series_cdf(pset, 6.0).value
        return abs(a - b), 1e-8

    return [
        ("exponential-median", chk_exponential),
        ("equal-scale-reduction", chk_equal_scale),
        ("gfun-route-agreement", chk_gfun_routes),
        ("hypoexponential-closed-form", chk_hypoexponential),
        ("r-invariance", chk_r_invariance),
        ("chi-square-median", chk_chi_square),
        ("series-route-agreement", chk_series_route),
    ]


def _run_selfcheck(job):
    extra = set(job.params)
    if extra:
        raise DomainError(f"selfcheck takes no params, got {sorted(extra)}")
    checks = []
    ok = True
    for name, fn in _selfcheck_cases():
        try:
            diff, tol = fn()
            passed = diff <= tol
            detail = f"|diff| = {diff:.3e} (tol {tol:.1e})"
        except GammaSumError as exc:
            passed = False
            detail = f"raised {type(exc).__name__}: {exc}"
        ok = ok and passed
        checks.append({"name": name, "passed": passed, "detail": detail})
    rec = {"command": "selfcheck", "passed": ok, "checks": checks}
    return rec, 0 if ok else 1


_RUNNERS = {
    "gamma-sum": _run_gamma_sum,
    "quantile": _run_quantile,
    "qform": _run_qform,
    "mvgamma": _run_mvgamma,
    "selfcheck": _run_selfcheck,
}


def _execute_job(job):
    """Run one JobSpec; map exceptions to (error record, exit code)."""
    try:
        return _RUNNERS[job.command](job)
    except (DomainError, ConfigError, NotPositiveDefiniteError) as exc:
        return _error_record(job.command, job.params, "validation", exc), 2
    except ConvergenceError as exc:
        return _error_record(job.command, job.params, "non-convergence", exc), 3
    except Exception as exc:  # noqa: BLE001 - CLI boundary, report not crash
        _log.exception("internal error in %s", job.command)
        return _error_record(job.command, job.params, "internal", exc), 1


def _emit(record, fmt, out):
    if fmt == "json":
        out.write(json.dumps(record, ensure_ascii=True) + "\n")
        return
    if fmt == "csv":
        keys = list(record.keys())
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(keys)
        writer.writerow(
            [
                json.dumps(record[k]) if isinstance(record[k], (dict, list))
                else record[k]
                for k in keys
            ]
        )
        out.write(buf.getvalue())
        return
    for key, value in record.items():
        if isinstance(value, (dict, list)):
            out.write(f"{key} = {json.dumps(value)}\n")
        else:
            out.write(f"{key} = {value}\n")
    out.write("\n")


def _run_batch(path, out):
    """Execute a line-delimited JobSpec stream with per-line isolation."""
    if path == "-":
        lines = sys.stdin.read().splitlines()
    else:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                lines = fh.read().splitlines()
        except OSError as exc:
            _emit(_error_record("batch", {"input": path}, "validation", exc),
                  "json", out)
            return 2
    codes = [0]
    for line in lines:
        if not line.strip():
            continue
        try:
            job = JobSpec.from_dict(json.loads(line))
        except json.JSONDecodeError as exc:
            _emit(_error_record("batch", {"line": line[:200]}, "validation",
                                f"invalid JSON: {exc}"), "json", out)
            codes.append(2)
            continue
        except DomainError as exc:
            _emit(_error_record("batch", {"line": line[:200]}, "validation",
                                exc), "json", out)
            codes.append(2)
            continue
        record, code = _execute_job(job)
        _emit(record, job.output_format, out)
        codes.append(code)
    for severe in (2, 1, 3):
        if severe in codes:
            return severe
    return 0


def _add_quad_flags(sub):
    sub.add_argument("--r", default="auto",
                     help="contour radius in (c_max, 1), or 'auto'")
    sub.add_argument("--tol", type=float, default=None,
                     help="quadrature tolerance (default 1e-10)")
    sub.add_argument("--n-start", type=int, default=None,
                     help="initial node count (default 16)")
    sub.add_argument("--n-max", type=int, default=None,
                     help="node cap (default 65536)")


def _add_output_flag(sub):
    sub.add_argument("--format", choices=_FORMATS, default="json",
                     help="output format (default json)")


def _add_mc_flags(sub):
    sub.add_argument("--n-samples", type=int, default=None,
                     help="Monte Carlo sample count (default 1000000)")
    sub.add_argument("--seed", type=int, default=None,
                     help="Monte Carlo seed (default 0)")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="gammasum",
        description=(
            "CDFs of gamma-variable sums, Gaussian quadratic forms, and "
            "small-dimension multivariate gamma distributions."
        ),
    )
    subs = parser.add_subparsers(dest="command", required=True)

    gs = subs.add_parser("gamma-sum", help="CDF of sum_j lambda_j Gamma(alpha_j)")
    gs.add_argument("--alphas", nargs="+", required=True, help="shape values")
    gs.add_argument("--lambdas", nargs="+", required=True, help="scale values")
    gs.add_argument("--x", type=float, required=True, help="evaluation point")
    gs.add_argument("--method", choices=("integral", "series", "mc"),
                    default="integral")
    _add_mc_flags(gs)
    _add_quad_flags(gs)
    _add_output_flag(gs)

    qt = subs.add_parser("quantile", help="inverse CDF of the gamma sum")
    qt.add_argument("--alphas", nargs="+", required=True)
    qt.add_argument("--lambdas", nargs="+", required=True)
    qt.add_argument("--prob", type=float, required=True,
                    help="probability in (0, 1)")
    _add_quad_flags(qt)
    _add_output_flag(qt)

    qf = subs.add_parser("qform", help="CDF of z' C z for z ~ N(0, Sigma)")
    qf.add_argument("--sigma", required=True,
                    help="matrix: I<k>, diag:a,b,..., or JSON rows")
    qf.add_argument("--c", required=True, help="matrix, same syntax")
    qf.add_argument("--x", type=float, required=True)
    qf.add_argument("--method", choices=("integral", "mc"), default="integral")
    _add_mc_flags(qf)
    _add_quad_flags(qf)
    _add_output_flag(qf)

    mv = subs.add_parser("mvgamma", help="joint CDF of a multivariate gamma")
    mv.add_argument("--alpha", type=float, required=True)
    mv.add_argument("--sigma", required=True,
                    help="matrix: I<k>, diag:a,b,..., or JSON rows")
    mv.add_argument("--xs", nargs="+", required=True, help="thresholds")
    mv.add_argument("--method", choices=("integral", "mc"), default="integral")
    mv.add_argument("--max-dim", type=int, default=3,
                    help="dimension limit (hard cap 4)")
    _add_mc_flags(mv)
    _add_quad_flags(mv)
    _add_output_flag(mv)

    sc = subs.add_parser("selfcheck", help="run the built-in check suite")
    _add_output_flag(sc)

    bt = subs.add_parser("batch", help="run line-delimited JobSpec records")
    bt.add_argument("input", help="path to a JSONL file, or - for stdin")

    return parser


def _job_from_args(args):
    quad = {}
    if getattr(args, "r", None) is not None:
        quad["r"] = args.r
    for attr, key in (("tol", "tol"), ("n_start", "n_start"),
                      ("n_max", "n_max")):
        val = getattr(args, attr, None)
        if val is not None:
            quad[key] = val
    params = {}
    if args.command == "gamma-sum":
        params = {"alphas": args.alphas, "lambdas": args.lambdas, "x": args.x,
                  "method": args.method}
    elif args.command == "quantile":
        params = {"alphas": args.alphas, "lambdas": args.lambdas,
                  "prob": args.prob}
    elif args.command == "qform":
        params = {"sigma": args.sigma, "c": args.c, "x": args.x,
                  "method": args.method}
    elif args.command == "mvgamma":
        params = {"alpha": args.alpha, "sigma": args.sigma, "xs": args.xs,
                  "method": args.method, "max_dim": args.max_dim}
    if getattr(args, "n_samples", None) is not None:
        params["n_samples"] = args.n_samples
    if getattr(args, "seed", None) is not None:
        params["seed"] = args.seed
    return JobSpec(args.command, params, quad,
                   getattr(args, "format", "json"))


def run(argv=None, out=None):
    """Entry point returning the process exit code (see module docstring)."""
    level = os.environ.get("GAMMASUM_LOG")
    if level:
        logging.basicConfig(
            stream=sys.stderr,
            level=getattr(logging, level.upper(), logging.INFO),
            format="%(name)s %(levelname)s %(message)s",
        )
    out = sys.stdout if out is None else out
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if exc.code is not None else 0
        return 2 if code not in (0,) else 0
    if args.command == "batch":
        return _run_batch(args.input, out)
    try:
        job = _job_from_args(args)
    except DomainError as exc:
        _emit(_error_record(args.command, {}, "validation", exc), "json", out)
        return 2
    record, code = _execute_job(job)
    _emit(record, job.output_format, out)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
