"""Command-line interface: ``rqmathieu {zeros,eval,gram,wave,verify}``.

Exit codes: 0 success, 1 I/O or config parse error, 2 invalid parameters,
3 numerical-adequacy failure, 4 verification failure.
"""

import argparse
import contextlib
import json
import math
import os
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from importlib import resources

import numpy as np

from . import mathieu as _m
from .cache import ZeroCache
from .errors import (
    ConditioningError,
    DomainError,
    InvalidModeError,
    RangeError,
    SearchExhaustedError,
    ShapeError,
    SpecError,
)
from .geometry import EllipseSpec, make_grid, to_cartesian, xi_for_mu
from .rqm import (
    DiskLimitFunction,
    RqmFunction,
    ZeroBoundaryFunction,
    disk_gram,
    enumerate_modes,
    gram_matrix,
)

EXIT_OK, EXIT_IO, EXIT_PARAM, EXIT_NUMERIC, EXIT_VERIFY = 0, 1, 2, 3, 4
THREADS_ENV = "RQMATHIEU_THREADS"
MAX_GRID = 4096
GRAM_GATE = 1e-8


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def load_schema(name):
    text = resources.files("rqmathieu").joinpath("schemas", f"{name}.schema.json").read_text("utf-8")
    return json.loads(text)


def validate(instance, name):
    import jsonschema

    jsonschema.validate(instance, load_schema(name))


def threads():
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        raise CliError(EXIT_PARAM, f"{THREADS_ENV} must be an integer") from None


def _fmt(digits):
    spec = f".{digits}g"

    def fmt(v):
        v = float(v)
        if not math.isfinite(v):
            raise CliError(EXIT_NUMERIC, "non-finite value in output")
        return format(v, spec)

    return fmt


@contextlib.contextmanager
def _open_out(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        try:
            fh = open(path, "w", encoding="utf-8", newline="\n")
        except OSError as exc:
            raise CliError(EXIT_IO, f"cannot write {path}: {exc}") from None
        with fh:
            yield fh


def _write_csv(path, header, rows, fmt):
    with _open_out(path) as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(c if isinstance(c, str) else fmt(c) for c in row) + "\n")


def _write_json(path, obj):
    with _open_out(path) as fh:
        json.dump(obj, fh, indent=2, sort_keys=False, allow_nan=False)
        fh.write("\n")


def _family(value):
    try:
        return _m.normalize_family(value)
    except (ValueError, InvalidModeError) as exc:
        raise CliError(EXIT_PARAM, str(exc)) from None


def _check_grid(nxi, neta):
    if not (2 <= nxi <= MAX_GRID and 2 <= neta <= MAX_GRID):
        raise CliError(EXIT_PARAM, f"grid sizes must lie in [2, {MAX_GRID}]")


def _field_rows(f, xi0, scale, nxi, neta, t=None):
    xi = np.linspace(0.0, xi0, nxi)
    eta = np.linspace(0.0, 2.0 * math.pi, neta, endpoint=False)
    X, E = np.meshgrid(xi, eta, indexing="ij")
    vals = f(X, E) if t is None else f(X, E, t)
    x, y = to_cartesian(X, E, scale=scale)
    if not np.all(np.isfinite(vals)):
        raise CliError(EXIT_NUMERIC, "non-finite field value")
    cols = [X, E, x, y, vals[..., 0], vals[..., 1], vals[..., 2]]
    return np.stack([c.ravel() for c in cols], axis=-1)


FIELD_HEADER = ["xi", "eta", "x", "y", "sc", "i", "j"]


# -- zeros --------------------------------------------------------------------

def cmd_zeros(args):
    family = _family(args.family)
    if not 0 < args.mu < 1:
        raise CliError(EXIT_PARAM, "--mu must lie in (0, 1)")
    if args.m_max < 1:
        raise CliError(EXIT_PARAM, "--m-max must be at least 1")
    if args.k is not None and not args.k > 0:
        raise CliError(EXIT_PARAM, "--k must be positive")
    xi0 = xi_for_mu(args.mu)
    if args.by == "index":
        if family == "-" and args.n == 0:
            raise CliError(EXIT_PARAM, "family minus needs n >= 1 (se_0 vanishes identically)")
        keys = [(args.n, m) for m in range(1, args.m_max + 1)]
        label = "m"
    else:
        keys = [(n, args.m) for n in range(1, args.m_max + 1)]
        label = "n"

    def one(key):
        return _m.find_q_zero(family, key[0], key[1], xi0).q_root

    rows, failure = [], None
    with ThreadPoolExecutor(threads()) as pool:
        futures = [pool.submit(one, k) for k in keys]
        for key, fut in zip(keys, futures):
            try:
                q = fut.result()
            except SearchExhaustedError as exc:
                failure = exc
                break
            idx = key[1] if args.by == "index" else key[0]
            row = [str(idx), q]
            if args.k is not None:
                row.append(2.0 * math.sqrt(q) / args.k)
            rows.append(row)
    header = [label, "q"] + (["omega"] if args.k is not None else [])
    _write_csv(args.out, header, rows, _fmt(args.digits))
    if failure is not None:
        raise CliError(EXIT_NUMERIC, f"root search failed after {len(rows)} rows: {failure}")
    return EXIT_OK


# -- eval ---------------------------------------------------------------------

def cmd_eval(args):
    _check_grid(args.grid_xi, args.grid_eta)
    if args.config is not None:
        cfg = _load_config(args.config)
        sol = _solution_from_config(cfg)
        t = 0.0 if args.t is None else args.t
        if t < 0:
            raise CliError(EXIT_PARAM, "--t must be nonnegative")
        rows = _field_rows(sol, sol.xi0, sol.mu0, args.grid_xi, args.grid_eta, t)
        _write_csv(args.out, FIELD_HEADER, rows, _fmt(args.digits))
        return EXIT_OK
    if args.family is None or args.n is None:
        raise CliError(EXIT_PARAM, "--family and --n are required without --config")
    if (args.m is None) == (args.lam is None):
        raise CliError(EXIT_PARAM, "give exactly one of --m or --lambda")
    family = _family(args.family)
    if args.m is not None:
        if args.mu is None:
            raise CliError(EXIT_PARAM, "--m needs --mu")
        z = ZeroBoundaryFunction(family, args.n, args.m, args.mu)
        f, xi0, scale = z, z.xi0, args.mu
    else:
        f = RqmFunction(family, args.n, args.lam)
        xi0, scale = args.xi0, 1.0
        if not 0 < xi0 <= _m.MAX_XI:
            raise CliError(EXIT_PARAM, f"--xi0 must lie in (0, {_m.MAX_XI}]")
    rows = _field_rows(f, xi0, scale, args.grid_xi, args.grid_eta)
    _write_csv(args.out, FIELD_HEADER, rows, _fmt(args.digits))
    return EXIT_OK


# -- gram ---------------------------------------------------------------------

def cmd_gram(args):
    if args.n_max < 0 or args.m_max < 1:
        raise CliError(EXIT_PARAM, "empty mode set (need n-max >= 0 and m-max >= 1)")
    if not 0 < args.mu < 1:
        raise CliError(EXIT_PARAM, "--mu must lie in (0, 1)")
    if args.order_xi < 4 or args.order_eta < 4:
        raise CliError(EXIT_PARAM, "quadrature orders must be at least 4")
    spec = EllipseSpec.from_mu(args.mu)
    with ThreadPoolExecutor(threads()) as pool:
        # warm the zero scans concurrently, one (family, n) per task
        keys = [(f, n) for f in ("+", "-") for n in range(0 if f == "+" else 1, args.n_max + 1)]
        list(pool.map(lambda k: _m.find_q_zero(k[0], k[1], args.m_max, spec.xi0), keys))
    modes = enumerate_modes(args.mu, args.n_max, args.m_max)
    rep = gram_matrix(modes, make_grid(spec, args.order_xi, args.order_eta))
    fine = gram_matrix(modes, make_grid(spec, 2 * args.order_xi, 2 * args.order_eta))
    change = float(np.abs(fine.normalized - rep.normalized).max())
    out = {
        "report_version": 1,
        "mu": args.mu,
        "labels": [list(lab) for lab in rep.labels],
        "raw": rep.raw.tolist(),
        "normalized": rep.normalized.tolist(),
        "max_offdiag_normalized": rep.max_offdiag_normalized,
        "norm_formula": rep.formula.tolist(),
        "norm_formula_rel_err": rep.formula_rel_err.tolist(),
        "norm_formula_literal": rep.literal_norm.tolist(),
        "refinement_change": change,
        "orders": [list(rep.grid_shape), list(fine.grid_shape)],
    }
    if args.disk:
        fs = [DiskLimitFunction(z.family, z.n, m=z.m) for z in modes]
        d = disk_gram(fs)
        out["disk"] = {
            "labels": [list(lab) for lab in d.labels],
            "raw": d.raw.tolist(),
            "max_offdiag_normalized": d.max_offdiag_normalized,
            "candidate_literal": d.literal.tolist(),
            "candidate_squared": d.squared.tolist(),
            "literal_rel_err": d.literal_rel_err.tolist(),
            "squared_rel_err": d.squared_rel_err.tolist(),
            "supported": d.verdict,
        }
    validate(out, "gram_report")
    _write_json(args.out, out)
    if change > GRAM_GATE:
        raise CliError(EXIT_NUMERIC, f"quadrature not converged: refinement changed the Gram matrix by {change:.3g}")
    return EXIT_OK


# -- wave ---------------------------------------------------------------------

def _load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_IO, f"config {path} is not valid JSON: {exc}") from None
    import jsonschema

    try:
        validate(cfg, "wave_config")
    except jsonschema.ValidationError as exc:
        raise CliError(EXIT_IO, f"config {path} does not match the schema: {exc.message}") from None
    cfg["_base"] = os.path.dirname(os.path.abspath(path))
    return cfg


def _initial_from_csv(cfg):
    from numpy.polynomial.legendre import legfit, legval

    from .wave import BOUNDARY_TOL

    init = cfg["initial"]
    path = os.path.join(cfg["_base"], init["csv"])
    try:
        data = np.genfromtxt(path, delimiter=",", names=True)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read initial data {path}: {exc}") from None
    spec = EllipseSpec.from_mu(cfg["mu0"])
    grid = make_grid(spec, *init["orders"])
    try:
        xi = np.asarray(data["xi"], float).reshape(grid.shape)
        eta = np.asarray(data["eta"], float).reshape(grid.shape)
        v = np.asarray(data["value"], float).reshape(grid.shape)
    except (ValueError, KeyError) as exc:
        raise CliError(EXIT_PARAM, f"initial data must have columns xi,eta,value on the grid: {exc}") from None
    if np.abs(xi - grid.xi).max() > 1e-12 or np.abs(eta - grid.eta).max() > 1e-12:
        raise CliError(EXIT_PARAM, "initial data is not sampled on the Gauss-Legendre nodes of 'orders'")
    # interpolating polynomial through the xi nodes, evaluated at the boundary
    s = 2.0 * grid.nodes_xi / spec.xi0 - 1.0
    edge = legval(1.0, legfit(s, v, s.size - 1))
    if np.abs(edge).max() > BOUNDARY_TOL * max(1.0, np.abs(v).max()):
        raise CliError(EXIT_PARAM, f"initial data does not vanish on the boundary (max {np.abs(edge).max():.3g})")
    return v, grid, init["budget"]


def _solution_from_config(cfg):
    from .wave import WaveSolution, build_solution

    if "terms" in cfg:
        quads = [(t["family"], t["n"], t["m"], t["a"]) for t in cfg["terms"]]
        return WaveSolution.from_terms(cfg["mu0"], cfg["K"], quads)
    v, grid, budget = _initial_from_csv(cfg)
    return build_solution(v, tuple(budget), cfg["mu0"], cfg["K"], grid)


def cmd_wave(args):
    cfg = _load_config(args.config)
    grid = cfg.get("grid", {})
    nxi = args.grid_xi or grid.get("xi", 40)
    neta = args.grid_eta or grid.get("eta", 80)
    _check_grid(nxi, neta)
    times = args.times
    if any(t < 0 for t in times):
        raise CliError(EXIT_PARAM, "times must be nonnegative")
    sol = _solution_from_config(cfg)
    wmax = max((t.omega for t in sol.terms if t.a != 0.0), default=0.0)
    if wmax * max(times) > 50:
        warnings.warn(f"max omega*t = {wmax * max(times):.3g} > 50: the dominant term grows like e^(omega t)")
    fmt = _fmt(args.digits)
    for t in times:
        rows = _field_rows(sol, sol.xi0, sol.mu0, nxi, neta, t)
        _write_csv(f"{args.out_prefix}_t{t:g}.csv", FIELD_HEADER, rows, fmt)
    desc = sol.to_dict()
    desc["diagnostics"] = dict(desc["diagnostics"], times=list(times), max_omega_t=wmax * max(times))
    validate(desc, "solution")
    _write_json(f"{args.out_prefix}_solution.json", desc)
    return EXIT_OK


# -- verify -------------------------------------------------------------------

def cmd_verify(args):
    from .verify import SUITES, run

    for name in args.suite or ():
        if name not in SUITES:
            raise CliError(EXIT_PARAM, f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    report = run(args.level, suites=args.suite or None, fault=args.inject_fault)
    validate(report, "verify_report")
    _write_json(args.out, report)
    if not report["passed"]:
        for r in report["suites"]:
            if not r["passed"]:
                print(f"FAILED {r['name']}: {r.get('error') or r['measured']}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="rqmathieu", description=__doc__.splitlines()[0])
    p.add_argument("--no-cache", action="store_true", help="do not read or write the q-zero cache")
    sub = p.add_subparsers(dest="command", required=True)

    z = sub.add_parser("zeros", help="q-zeros of a radial Mathieu function on xi_mu")
    z.add_argument("--mu", type=float, required=True)
    z.add_argument("--family", required=True, help="plus/+ or minus/-")
    z.add_argument("--n", type=int, default=0, help="order (with --by index)")
    z.add_argument("--m-max", type=int, required=True, help="number of rows")
    z.add_argument("--by", choices=("index", "order"), default="index",
                   help="index: rows are zeros m=1..m-max of order n; "
                        "order: rows are orders n=1..m-max at zero --m")
    z.add_argument("--m", type=int, default=1, help="zero index (with --by order)")
    z.add_argument("--k", type=float, default=None, help="wave parameter; adds an omega column")
    z.add_argument("--digits", type=int, default=17)
    z.add_argument("--out", default="-")
    z.set_defaults(func=cmd_zeros)

    e = sub.add_parser("eval", help="sample an RQM or zero-boundary function (or a wave slice)")
    e.add_argument("--family")
    e.add_argument("--n", type=int)
    e.add_argument("--m", type=int, help="zero index (zero-boundary mode on mu*Omega)")
    e.add_argument("--lambda", dest="lam", type=float, help="free lambda (foci at +-1)")
    e.add_argument("--mu", type=float)
    e.add_argument("--xi0", type=float, default=0.8, help="rectangle extent with --lambda")
    e.add_argument("--grid-xi", type=int, default=60)
    e.add_argument("--grid-eta", type=int, default=120)
    e.add_argument("--config", help="wave configuration; evaluates the time slice --t")
    e.add_argument("--t", type=float)
    e.add_argument("--digits", type=int, default=17)
    e.add_argument("--out", default="-")
    e.set_defaults(func=cmd_eval)

    g = sub.add_parser("gram", help="Gram matrix of zero-boundary modes")
    g.add_argument("--mu", type=float, required=True)
    g.add_argument("--n-max", type=int, required=True)
    g.add_argument("--m-max", type=int, required=True)
    g.add_argument("--order-xi", type=int, default=48)
    g.add_argument("--order-eta", type=int, default=96)
    g.add_argument("--disk", action="store_true", help="add the disk-limit Gram report")
    g.add_argument("--out", default="-")
    g.set_defaults(func=cmd_gram)

    w = sub.add_parser("wave", help="imaginary-time wave evolution from a JSON configuration")
    w.add_argument("--config", required=True)
    w.add_argument("--times", type=float, nargs="+", default=[0.0])
    w.add_argument("--grid-xi", type=int)
    w.add_argument("--grid-eta", type=int)
    w.add_argument("--digits", type=int, default=17)
    w.add_argument("--out-prefix", required=True)
    w.set_defaults(func=cmd_wave)

    v = sub.add_parser("verify", help="run the invariant suites")
    v.add_argument("--level", choices=("fast", "full"), default="fast")
    v.add_argument("--suite", action="append", help="restrict to a suite (repeatable)")
    v.add_argument("--inject-fault", choices=("characteristic",), default=None)
    v.add_argument("--out", default="-")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if getattr(args, "digits", 17) < 1:
        print("error: --digits must be positive", file=sys.stderr)
        return EXIT_PARAM
    previous = None
    try:
        if not args.no_cache:
            try:
                previous = _m.set_zero_store(ZeroCache())
            except (OSError, ValueError) as exc:
                raise CliError(EXIT_IO, f"cannot open the q-zero cache: {exc}") from None
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (SearchExhaustedError, ConditioningError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (DomainError, RangeError, InvalidModeError, SpecError, ShapeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    finally:
        if not args.no_cache:
            _m.set_zero_store(previous)


if __name__ == "__main__":
    sys.exit(main())
