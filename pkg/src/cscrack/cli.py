"""Command-line driver: solve single cracks, sweep size ratios, evaluate
defect fields, and emit the classical baselines.

Outputs are flat CSV files (comma-separated, '#'-prefixed header lines
echoing the full configuration, 12 significant digits) plus a JSON or CSV
summary record.  All physical columns are emitted in raw and normalized
form.  Exit status: 0 success, 1 configuration error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .greens import DefectCharge, MaterialParams, full_field
from .post import (classical_baseline, crack_profiles, stress_ahead,
                   tip_quantities)
from .sie import CrackProblem, Discretization, SolverError, solve

__all__ = ["main"]


class ConfigError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse variant whose usage errors exit with status 1."""

    def error(self, message):
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _fmt(value) -> str:
    return format(float(value), ".12g")


def _write_csv(path: Path, config: dict, columns: dict):
    """One CSV file: '#' config echo, '#' column header, data rows."""
    names = list(columns)
    arrays = [np.atleast_1d(np.asarray(columns[c], dtype=float))
              for c in names]
    length = arrays[0].size
    lines = [f"# {key}={config[key]}" for key in sorted(config)]
    lines.append("# columns: " + ",".join(names))
    lines.append(",".join(names))
    for row in range(length):
        lines.append(",".join(_fmt(col[row]) for col in arrays))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _write_summary(path_base: Path, config: dict, record: dict, fmt: str):
    if fmt == "json":
        path = path_base.with_suffix(".json")
        payload = {"config": config, **record}
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                        encoding="utf-8")
    else:
        path = path_base.with_suffix(".csv")
        _write_csv(path, config,
                   {k: [v] for k, v in record.items()
                    if isinstance(v, (int, float, np.floating))})
    return path


def _material_problem(args) -> CrackProblem:
    if args.p <= 0.0:
        raise ConfigError("--p must be positive")
    mat = MaterialParams(mu=args.mu, nu=args.nu, ell=args.a / args.p)
    return CrackProblem(half_length=args.a, remote_tension=args.sigma0,
                        material=mat)


def _solve_one(nu, p, n, a=1.0, sigma0=1.0, mu=1.0):
    mat = MaterialParams(mu=mu, nu=nu, ell=a / p)
    prob = CrackProblem(half_length=a, remote_tension=sigma0, material=mat)
    sol = solve(prob, Discretization.build(n))
    tip = tip_quantities(sol)
    k_ratio = tip.k_i / (sigma0 * np.sqrt(np.pi * a))
    j_cl = np.pi * (1.0 - nu) * sigma0 ** 2 * a / (2.0 * mu)
    return sol, tip, k_ratio, tip.j / j_cl


def _cmd_solve(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    prob = _material_problem(args)
    sol, tip, k_ratio, j_ratio = _solve_one(
        args.nu, args.p, args.n, a=args.a, sigma0=args.sigma0, mu=args.mu)
    config = dict(command="solve", nu=args.nu, p=args.p, n=args.n,
                  sigma0=args.sigma0, a=args.a, mu=args.mu,
                  format=args.format)

    _write_csv(out / "densities.csv", config, {
        "s": sol.disc.nodes, "f": sol.f_vals, "g": sol.g_vals})

    prof = crack_profiles(sol, m_samples=args.profile_samples)
    scale_u = prob.material.mu / (args.sigma0 * args.a)
    _write_csv(out / "profiles.csv", config, {
        "x": prof.x_samples,
        "x_over_a": prof.x_samples / args.a,
        "delta_uy": prof.delta_uy,
        "delta_uy_norm": prof.delta_uy * scale_u,
        "delta_omega": prof.delta_omega,
        "delta_omega_norm": prof.delta_omega * prob.material.mu / args.sigma0,
    })

    ell = prob.material.ell
    xbar = ell * np.geomspace(1e-3, 20.0, args.neartip_samples)
    syy, myz = stress_ahead(sol, args.a + xbar)
    _write_csv(out / "neartip.csv", config, {
        "xbar": xbar,
        "xbar_over_ell": xbar / ell,
        "sigma_yy": syy,
        "sigma_yy_over_sigma0": syy / args.sigma0,
        "m_yz": myz,
        "m_yz_over_sigma0_ell": myz / (args.sigma0 * ell),
    })

    record = dict(f1=tip.f1, g1=tip.g1, K_I=tip.k_i, K_I_ratio=k_ratio,
                  J=tip.j, J_ratio=j_ratio, n=args.n,
                  condition=sol.condition,
                  classical_degenerate=sol.classical_degenerate)
    path = _write_summary(out / "summary", config, record, args.format)
    print(f"solve: K_I_ratio={_fmt(k_ratio)} J_ratio={_fmt(j_ratio)} "
          f"-> {path}")
    return 0


def _cmd_sweep(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.p_steps < 1:
        raise ConfigError("--p-steps must be at least 1")
    if not (args.p_min > 0.0 and args.p_max >= args.p_min):
        raise ConfigError("need 0 < --p-min <= --p-max")
    try:
        nus = [float(v) for v in args.nu_list.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad --nu-list: {exc}") from None
    if not nus:
        raise ConfigError("--nu-list is empty")
    if args.p_steps == 1:
        ps = np.array([args.p_min])
    elif args.log_spaced:
        ps = np.geomspace(args.p_min, args.p_max, args.p_steps)
    else:
        ps = np.linspace(args.p_min, args.p_max, args.p_steps)

    cases = [(nu, p) for nu in nus for p in ps]
    with ThreadPoolExecutor(max_workers=args.workers) as pool:
        results = list(pool.map(
            lambda c: _solve_one(c[0], c[1], args.n), cases))

    config = dict(command="sweep", n=args.n, p_min=args.p_min,
                  p_max=args.p_max, p_steps=args.p_steps,
                  log_spaced=args.log_spaced, nu_list=args.nu_list,
                  format=args.format)

    # one row per (ell/a, nu), sorted by ell/a then nu
    rows = sorted(
        ((1.0 / p, p, nu, kr, jr)
         for (nu, p), (_, _, kr, jr) in zip(cases, results)),
        key=lambda r: (r[0], r[2]))
    cols = {key: [r[i] for r in rows] for i, key in
            enumerate(("ell_over_a", "p", "nu", "K_I_ratio", "J_ratio"))}
    _write_csv(out / "sweep.csv", config, cols)

    flags = {}
    for nu in nus:
        kr = [r[3] for r in rows if r[2] == nu]
        jr = [r[4] for r in rows if r[2] == nu]
        flags[f"nu={nu:g}"] = {
            "K_ratio_strictly_decreasing_in_ell_over_a":
                bool(np.all(np.diff(kr) < 0.0)),
            "J_ratio_strictly_decreasing_in_ell_over_a":
                bool(np.all(np.diff(jr) < 0.0)),
            "J_below_classical": bool(np.all(np.array(jr) < 1.0)),
        }
    path = _write_summary(out / "sweep_summary", config,
                          {"monotonicity": flags}, "json")
    print(f"sweep: {len(rows)} rows -> {out / 'sweep.csv'}, flags -> {path}")
    return 0


def _cmd_field(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.x_num < 1 or args.y_num < 1:
        raise ConfigError("empty grid: --x-num and --y-num must be >= 1")
    mat = MaterialParams(mu=args.mu, nu=args.nu, ell=args.ell)
    charge = DefectCharge(b=args.b, omega=args.omega)
    xs = np.linspace(args.x_min, args.x_max, args.x_num)
    ys = np.linspace(args.y_min, args.y_max, args.y_num)
    if np.any(ys < 0.0):
        raise ConfigError("grid extends below the half-plane: y must be >= 0")
    for x in xs:
        for y in ys:
            if x == 0.0 and y == 0.0:
                raise ConfigError(
                    f"grid contains the defect core point ({x:g}, {y:g})")

    config = dict(command="field", b=args.b, omega=args.omega, mu=args.mu,
                  nu=args.nu, ell=args.ell, x_min=args.x_min,
                  x_max=args.x_max, x_num=args.x_num, y_min=args.y_min,
                  y_max=args.y_max, y_num=args.y_num)
    names = ("x", "y", "sxx", "syy", "sxy", "syx", "mxz", "myz",
             "ux", "uy", "omega")
    data = {name: [] for name in names}
    for y in ys:
        for x in xs:
            st = full_field(float(x), float(y), charge, mat)
            vals = (x, y, st.sxx, st.syy, st.sxy, st.syx, st.mxz, st.myz,
                    st.ux, st.uy, st.omega)
            for name, v in zip(names, vals):
                data[name].append(v)
    _write_csv(out / "field.csv", config, data)
    print(f"field: {len(xs) * len(ys)} points -> {out / 'field.csv'}")
    return 0


def _cmd_baseline(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    mat = MaterialParams(mu=args.mu, nu=args.nu, ell=0.0)
    prob = CrackProblem(half_length=args.a, remote_tension=args.sigma0,
                        material=mat)
    base = classical_baseline(prob, n=args.n,
                              m_samples=args.profile_samples)
    config = dict(command="baseline", nu=args.nu, n=args.n,
                  sigma0=args.sigma0, a=args.a, mu=args.mu,
                  format=args.format)
    _write_csv(out / "baseline_cod.csv", config, {
        "x": base.x_samples,
        "x_over_a": base.x_samples / args.a,
        "cod_closed": base.cod,
        "cod_discrete": base.cod_discrete,
    })
    record = dict(K_I=base.k_i, K_I_discrete=base.k_i_discrete,
                  K_I_discrete_rel_err=abs(base.k_i_discrete - base.k_i)
                  / base.k_i,
                  J=base.j, n=args.n)
    path = _write_summary(out / "baseline", config, record, args.format)
    print(f"baseline: K_I={_fmt(base.k_i)} J={_fmt(base.j)} -> {path}")
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="cscrack",
                     description="couple-stress mode-I crack solver")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, with_p=True):
        sp.add_argument("--nu", type=float, default=0.3,
                        help="Poisson ratio")
        if with_p:
            sp.add_argument("--p", type=float, default=10.0,
                            help="size ratio a/ell")
        sp.add_argument("--n", type=int, default=128,
                        help="integration nodes")
        sp.add_argument("--sigma0", type=float, default=1.0,
                        help="remote tension")
        sp.add_argument("--a", type=float, default=1.0,
                        help="crack half-length")
        sp.add_argument("--mu", type=float, default=1.0,
                        help="shear modulus")
        sp.add_argument("--out", type=str, default=".",
                        help="output directory")
        sp.add_argument("--format", choices=("csv", "json"),
                        default="json", help="summary format")

    sp = sub.add_parser("solve", help="solve one crack configuration")
    common(sp)
    sp.add_argument("--profile-samples", type=int, default=201)
    sp.add_argument("--neartip-samples", type=int, default=80)
    sp.set_defaults(func=_cmd_solve)

    sp = sub.add_parser("sweep", help="sweep the size ratio a/ell")
    common(sp, with_p=False)
    sp.add_argument("--p-min", type=float, required=True)
    sp.add_argument("--p-max", type=float, required=True)
    sp.add_argument("--p-steps", type=int, required=True)
    sp.add_argument("--log-spaced", action="store_true")
    sp.add_argument("--nu-list", type=str, default="0.3")
    sp.add_argument("--workers", type=int, default=4)
    sp.set_defaults(func=_cmd_sweep)

    sp = sub.add_parser("field", help="evaluate the defect field on a grid")
    sp.add_argument("--b", type=float, default=1.0,
                    help="climb Burgers component")
    sp.add_argument("--omega", type=float, default=0.0,
                    help="Frank rotation angle")
    sp.add_argument("--mu", type=float, default=1.0)
    sp.add_argument("--nu", type=float, default=0.3)
    sp.add_argument("--ell", type=float, default=1.0)
    sp.add_argument("--x-min", type=float, required=True)
    sp.add_argument("--x-max", type=float, required=True)
    sp.add_argument("--x-num", type=int, required=True)
    sp.add_argument("--y-min", type=float, required=True)
    sp.add_argument("--y-max", type=float, required=True)
    sp.add_argument("--y-num", type=int, required=True)
    sp.add_argument("--out", type=str, default=".")
    sp.set_defaults(func=_cmd_field)

    sp = sub.add_parser("baseline", help="classical-elasticity references")
    common(sp, with_p=False)
    sp.add_argument("--profile-samples", type=int, default=201)
    sp.set_defaults(func=_cmd_baseline)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SolverError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
