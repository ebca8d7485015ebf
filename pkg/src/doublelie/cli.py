"""Command-line front end.

    doublelie verify {so,iso,gcybe,double,manin,roundtrip} --metric "+---" ...
    doublelie decompose {iwasawa,kfn-euclid,kfn-poincare,xfn} --n 3 --random 42

Reports go to stdout as JSON.  Exit codes: 0 pass, 1 a check failed,
2 usage, 3 obstruction (g outside the product set), 4 input not in SO_0(1, n).
"""
from __future__ import annotations

import argparse
import json
import random
import re
import sys
from fractions import Fraction

import numpy as np

from . import bialg, exact, lorentz, manin
from . import sofamilies as sf
from .errors import (
    BadParams,
    ConstraintViolated,
    DimensionMismatch,
    EigenstructureViolated,
    NotInGroup,
    Obstructed,
    OnBoundary,
)
from .liecore import Metric, verify_jacobi
from .report import Check, Report

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_OBSTRUCTED, EXIT_NOT_IN_GROUP = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- parsing

_TERM = re.compile(r"\s*([+-]?)\s*([0-9/]*)\s*\*?\s*e(\d+)\s*")


def parse_vector(text: str, size: int) -> tuple:
    """``"e1"``, ``"e1+e4"``, ``"2e2-1/2e3"`` or a JSON list."""
    text = text.strip()
    if text.startswith("["):
        v = exact.vec(json.loads(text, parse_float=str))
        if len(v) != size:
            raise UsageError(f"vector needs {size} entries")
        return v
    out = [Fraction(0)] * size
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise UsageError(f"cannot parse vector {text!r}")
        sign, coef, idx = m.groups()
        k = int(idx) - 1
        if not 0 <= k < size:
            raise UsageError(f"e{idx} out of range for dimension {size}")
        c = Fraction(coef) if coef else Fraction(1)
        out[k] += -c if sign == "-" else c
        pos = m.end()
    return tuple(out)


def parse_metric(text: str) -> Metric:
    try:
        return Metric.parse(text.replace("−", "-"))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _json_arg(text):
    if text is None:
        return None
    if text.startswith("@"):
        with open(text[1:]) as fh:
            return json.load(fh, parse_float=str)
    return json.loads(text, parse_float=str)


def _so_element(metric: Metric, data) -> tuple:
    """so element from a coefficient list on the L basis or a raised-index matrix."""
    if data and isinstance(data[0], list):
        return sf.so_from_raised(metric, data)
    v = exact.vec(data)
    if len(v) != sf.so_dim(metric.size):
        raise UsageError("so element needs one coefficient per L_ij")
    return v


# ----------------------------------------------------------------- verify

def verify_so(args) -> Report:
    metric = parse_metric(args.metric)
    rep = Report("so")
    rep.add(verify_jacobi(sf.build_so(metric)))
    return rep


def verify_iso(args) -> Report:
    metric = parse_metric(args.metric)
    iso = sf.build_iso(metric)
    rep = Report("iso")
    rep.add(verify_jacobi(iso))
    w = bialg.invariance_witness(iso, sf.omega_element(metric))
    rep.add(Check("omega_invariant", w is None, witness=w))
    return rep


def verify_gcybe(args) -> Report:
    metric = parse_metric(args.metric)
    N = metric.size
    extra = _json_arg(args.params) or {}
    fam = int(str(args.family).lstrip("b"))
    x = parse_vector(args.x, N)
    params = sf.BSolutionParams(
        family=fam,
        x=x,
        X=_so_element(metric, extra["X"]) if "X" in extra else None,
        v_list=[parse_vector(v, N) if isinstance(v, str) else exact.vec(v) for v in extra.get("v_list", [])],
        X_list=[_so_element(metric, X) for X in extra.get("X_list", [])],
        alpha_list=[exact.frac(a) for a in extra.get("alpha_list", [])],
        v=(parse_vector(extra["v"], N) if isinstance(extra.get("v"), str) else extra.get("v")),
    )
    b = sf.b_solution(metric, params)
    iso = sf.build_iso(metric)
    g = bialg.gcybe_report(iso, b, sf.omega_element(metric))
    rep = Report("gcybe")
    rep.add(Check("invariant", g.invariant, witness=g.witness))
    rep.add(Check("proportional", g.proportional))
    if g.proportional:
        t = g.t
        nx = metric.form(x, x)
        rep.add(Check("t", True, value=t))
        if fam == 3 or nx == 0:
            rep.add(Check("t_zero", t == 0, value=t))
        else:
            rep.add(Check("t_over_minus_eta_xx", t / (-nx) == 1, value=t / (-nx)))
    return rep


def _spec(args, metric: Metric) -> sf.SubalgebraSpec:
    s = _json_arg(args.s)
    D = [tuple(int(i) - 1 for i in p) for p in (_json_arg(args.D) or [])]
    if s is not None and len(s) == metric.size - 2:
        # accept the middle block only and pad it
        N = metric.size
        full = [[0] * N for _ in range(N)]
        for i in range(N - 2):
            for j in range(N - 2):
                full[i + 1][j + 1] = s[i][j]
        s = full
    return sf.SubalgebraSpec(args.variant, s=s, D=D)


def verify_double(args) -> Report:
    metric = parse_metric(args.metric)
    spec = _spec(args, metric)
    run = manin.run_double(metric, args.side, spec)
    rep = Report(run.report.suite)
    for c in run.report.checks:
        if c.name == "extracted_equals_partial_claimed_b":
            continue
        name = "extracted_equals_partial_b" if c.name == "extracted_equals_partial_derived_b" else c.name
        rep.add(Check(name, c.passed, c.witness, c.value))
    claimed = run.report["extracted_equals_partial_claimed_b"]
    rep.add(Check("claimed_closed_form_matches", True, value=claimed.passed))
    return rep


def verify_manin_cmd(args) -> Report:
    metric = parse_metric(args.metric)
    spec = _spec(args, metric)
    T = manin.manin_for(metric, args.side, spec)
    rep = manin.verify_manin(T)
    ex = manin.extract_bialgebra(T)
    rep.extend(ex.report, "extract.")
    return rep


def verify_roundtrip(args) -> Report:
    metric = parse_metric(args.metric)
    rng = random.Random(args.seed)
    rep = Report("roundtrip")
    bad = None
    for trial in range(args.count):
        b = random_b(metric, rng)
        if sf.dual_structure_to_b(metric, sf.b_to_dual_structure(metric, b)) != b:
            bad = trial
            break
    rep.add(Check("roundtrip", bad is None, witness=bad, value=args.count))
    return rep


def random_b(metric: Metric, rng: random.Random, bound: int = 5):
    """Random rational element of h ^ V."""
    N = metric.size
    b = bialg.Bivector.zero(sf.so_dim(N) + N)
    for k in range(N):
        h = [Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(sf.so_dim(N))]
        b = b + bialg.Bivector.wedge(sf.translation(metric, k), sf.embed_so_in_iso(metric, h))
    return b


# -------------------------------------------------------------- decompose

def _load_matrix(args) -> np.ndarray:
    if args.input is not None and args.random is not None:
        raise UsageError("give either --input or --random")
    if args.input is not None:
        with open(args.input) as fh:
            return lorentz.matrix_from_json(json.load(fh))
    if args.random is not None:
        return lorentz.sample_so0(args.n, args.random)
    raise UsageError("need --input FILE or --random SEED")


def _load_s(args):
    if args.s is None and args.s_seed is None:
        return None
    if args.s is not None:
        return np.asarray(_json_arg(args.s), dtype=float)
    return lorentz.random_antisymmetric(args.n, args.s_seed)


def decompose(args) -> Report:
    n = args.n
    g = _load_matrix(args)
    s = _load_s(args)
    rep = Report(f"decompose_{args.kind}")
    tol = args.tol
    if args.kind == "iwasawa":
        f = lorentz.iwasawa_decompose(g, n, tol)
        res = float(np.max(np.abs(f.product() - g)))
        rep.add(Check("residual", res < tol, value=res))
        rep.add(Check("k_block", lorentz.block_residual_k(f.k) < 1e-10, value=lorentz.block_residual_k(f.k)))
        rep.add(Check("factors", True, value=f.to_json()))
        return rep
    fn = {"kfn-euclid": lorentz.kfn_euclid, "kfn-poincare": lorentz.kfn_poincare, "xfn": lorentz.xfn_extended}[args.kind]
    f = fn(g, n, s, tol)
    res = f.residual(g)
    rep.add(Check("residual", res < tol, value=res))
    rep.add(Check("branch", True, value=f.branch))
    rep.add(Check("factors", True, value=f.to_json(g)))
    return rep


# ------------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="doublelie", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run an algebraic verification suite")
    vs = v.add_subparsers(dest="suite", required=True)
    for name in ("so", "iso"):
        q = vs.add_parser(name)
        q.add_argument("--metric", required=True)
    q = vs.add_parser("gcybe")
    q.add_argument("--metric", required=True)
    q.add_argument("--family", required=True, help="1-4 or b1-b4")
    q.add_argument("--x", required=True, help='e.g. "e1" or "e1+e4"')
    q.add_argument("--params", help="JSON (or @file) with X, v, v_list, X_list, alpha_list")
    for name in ("double", "manin"):
        q = vs.add_parser(name)
        q.add_argument("--metric", required=True)
        q.add_argument("--variant", required=True, choices=["u", "utilde", "Utilde"])
        q.add_argument("--side", required=True, choices=["h1", "h2"])
        q.add_argument("--s", help="raised-index s as JSON, full (n+1)x(n+1) or the middle block")
        q.add_argument("--D", help="JSON list of 1-based pairs [m, n]")
    q = vs.add_parser("roundtrip")
    q.add_argument("--metric", required=True)
    q.add_argument("--count", type=int, default=100)
    q.add_argument("--seed", type=int, default=0)

    d = sub.add_parser("decompose", help="factor an SO_0(1, n) matrix")
    d.add_argument("kind", choices=["iwasawa", "kfn-euclid", "kfn-poincare", "xfn"])
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--input", help="row-major JSON matrix file")
    d.add_argument("--random", type=int, help="sample seed")
    d.add_argument("--s", help="antisymmetric (n-1)x(n-1) JSON matrix")
    d.add_argument("--s-seed", type=int, help="seed for a random antisymmetric s")
    d.add_argument("--tol", type=float, default=lorentz.TOL)
    return p


_VERIFY = {
    "so": verify_so,
    "iso": verify_iso,
    "gcybe": verify_gcybe,
    "double": verify_double,
    "manin": verify_manin_cmd,
    "roundtrip": verify_roundtrip,
}


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        rep = _VERIFY[args.suite](args) if args.command == "verify" else decompose(args)
    except NotInGroup as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_IN_GROUP
    except (UsageError, BadParams, DimensionMismatch, ConstraintViolated, EigenstructureViolated,
            json.JSONDecodeError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (Obstructed, OnBoundary) as exc:
        _emit({"suite": f"decompose_{args.kind}", "obstruction": type(exc).__name__,
               "k_value": exc.k_value, "message": str(exc), "exit_code": EXIT_OBSTRUCTED})
        return EXIT_OBSTRUCTED
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(rep.to_json())
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
