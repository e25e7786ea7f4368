"""Command-line front end: sweeps, circuit runs, witness training, tomography.

Sweeps write CSV (one row per grid point), single-point commands write
JSON. Every sampled quantity is seeded; sweep point ``k`` uses the sub-seed
``seed ^ k`` so results do not depend on how points are scheduled.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

import numpy as np

from . import circuit as circ
from .chsh import chsh_expectation
from .entanglement import classify_werner, concurrence, ppt_min_eigenvalue
from .errors import NwlError
from .nonlocal_meas import PARITY_SIGNS, expectation_from_probs, run_protocol_analytic
from .qmath import PAULIS, hermitian_eigh, kron_all, projector
from .states import StateParams, pure_system_state, werner_state
from .vew import FAMILIES, TrainConfig, default_separable_refs, train

DEFAULT_THETAS = [k * np.pi / 8 for k in range(9)]
DEFAULT_PHIS = [k * np.pi / 4 for k in range(4)]
DEFAULT_PS = sorted({*np.round(np.linspace(0, 1, 21), 12).tolist(), 1 / 3, 1 / np.sqrt(2)})

CHSH_COLUMNS = [
    "theta", "phi", "chsh_analytic", "chsh_sampled", "zz_sampled", "xx_sampled",
    "ppt", "concurrence", "square_error",
]
WERNER_COLUMNS = ["p", "chsh", "ppt", "concurrence", "region", "zz", "xx", "rho2_corner"]
TOMO_SETTINGS = [(a, b) for a in "XYZ" for b in "XYZ"]


class UsageError(Exception):
    pass


_PI_RE = re.compile(r"^\s*(-?\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(\d+\.?\d*))?\s*$")


def parse_value(text: str) -> float:
    """A float, or a multiple of pi such as ``pi/4``, ``3pi/4``, ``-2*pi``."""
    try:
        return float(text)
    except ValueError:
        pass
    m = _PI_RE.match(text)
    if not m:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    coef = m.group(1)
    coef = -1.0 if coef == "-" else (float(coef) if coef else 1.0)
    denom = float(m.group(2)) if m.group(2) else 1.0
    return coef * np.pi / denom


def parse_list(text: str) -> list[float]:
    vals = [parse_value(t) for t in text.split(",") if t.strip()]
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def n_threads() -> int:
    try:
        n = int(os.environ.get("NWL_THREADS", "1"))
    except ValueError:
        raise UsageError("NWL_THREADS must be an integer") from None
    return max(1, n)


def parallel_map(fn: Callable, items: Sequence) -> list:
    threads = min(n_threads(), max(1, len(items)))
    if threads == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def fmt(x) -> str:
    if isinstance(x, str):
        return x
    x = float(x)
    if x == 0:
        x = 0.0  # no "-0"
    return format(x, ".15g")


def meter_distribution(theta: float, phi: float, shots: int, seed: int, exact: bool):
    """Outcome distribution over ``c0c1c2c3`` plus the raw counts when sampled."""
    c = circ.build_protocol_circuit(StateParams(theta, phi))
    if exact:
        return circ.exact_distribution(c), None
    counts = circ.sample_counts(c, shots, seed)
    return counts.probabilities(), counts


def chsh_row(args, k: int, theta: float, phi: float) -> dict:
    rho = projector(pure_system_state((theta, phi)))
    analytic = chsh_expectation(rho)
    dist, _ = meter_distribution(theta, phi, args.shots, args.seed ^ k, args.exact)
    p1, p2 = circ.marginalize_probs(dist)
    zz = expectation_from_probs(p1, PARITY_SIGNS)
    xx = expectation_from_probs(p2, PARITY_SIGNS)
    sampled = -np.sqrt(2) * (zz + xx)
    return {
        "theta": theta,
        "phi": phi,
        "chsh_analytic": analytic,
        "chsh_sampled": sampled,
        "zz_sampled": zz,
        "xx_sampled": xx,
        "ppt": ppt_min_eigenvalue(rho),
        "concurrence": concurrence(rho),
        "square_error": (sampled - analytic) ** 2,
    }


def cmd_chsh_sweep(args) -> list[dict]:
    points = [(t, p) for t in args.thetas for p in args.phis]
    return parallel_map(lambda kp: chsh_row(args, kp[0], *kp[1]), list(enumerate(points)))


def werner_row(p: float) -> dict:
    rho = werner_state(p)
    res = run_protocol_analytic(rho)
    return {
        "p": p,
        "chsh": chsh_expectation(rho),
        "ppt": ppt_min_eigenvalue(rho),
        "concurrence": concurrence(rho),
        "region": classify_werner(p).region,
        "zz": res.zz,
        "xx": res.xx,
        "rho2_corner": float(res.rho2[0, 3].real),
    }


def cmd_werner_sweep(args) -> list[dict]:
    for p in args.ps:
        if not 0 <= p <= 1:
            raise UsageError(f"Werner parameter {p} outside [0, 1]")
    return parallel_map(werner_row, list(args.ps))


def cmd_circuit_run(args) -> dict:
    dist, counts = meter_distribution(args.theta, args.phi, args.shots, args.seed, args.exact)
    p1, p2 = circ.marginalize_probs(dist)
    return {
        "theta": args.theta,
        "phi": args.phi,
        "shots": None if args.exact else args.shots,
        "seed": args.seed,
        "exact": args.exact,
        "counts": None if counts is None else counts.counts,
        "probabilities": dist,
        "P_M1": p1.tolist(),
        "P_M2": p2.tolist(),
        "zz": expectation_from_probs(p1, PARITY_SIGNS),
        "xx": expectation_from_probs(p2, PARITY_SIGNS),
    }


def cmd_vew_train(args) -> dict:
    if args.werner is not None:
        if not 0 <= args.werner <= 1:
            raise UsageError("--werner must lie in [0, 1]")
        rho = werner_state(args.werner)
        refs = default_separable_refs(include_maximally_mixed=True)
        state = {"kind": "werner", "p": args.werner}
    else:
        rho = projector(pure_system_state((args.theta, args.phi)))
        refs = default_separable_refs()
        state = {"kind": "pure", "theta": args.theta, "phi": args.phi}
    cfg = TrainConfig(
        initial_alpha=args.alpha0,
        max_evals=args.max_evals,
        tol=args.tol,
        penalty_weight=args.penalty_weight,
        norm_cap=args.norm_cap,
        seed=args.seed,
    )
    result = train(rho, args.family, refs, cfg, mode=args.mode)
    return {"state": state, **result.to_dict()}


def _matrix_json(m: np.ndarray) -> dict:
    return {"real": np.real(m).tolist(), "imag": np.imag(m).tolist()}


def tomography(theta: float, phi: float, shots: int, seed: int, exact: bool, psd_project: bool = False) -> dict:
    """Nine-setting Pauli tomography of the system after both meters.

    Each setting rotates ``q0 q1`` into the requested local bases after the
    meters are read and measures them in Z. The state is rebuilt by linear
    inversion ``rho = 1/4 sum_ij <s_i s_j> s_i (x) s_j``; single-qubit
    averages are pooled over the three settings sharing that basis.
    """
    params = StateParams(theta, phi)
    records = []
    marg = {}
    for k, (a, b) in enumerate(TOMO_SETTINGS):
        c = circ.system_readout_circuit(params, (a, b))
        full = circ.exact_distribution(c)
        sys_p = np.zeros(4)
        for key, v in full.items():
            sys_p[int(key[4:], 2)] += v
        counts = None
        if not exact:
            draws = circ.sample_from_probabilities(sys_p, shots, seed ^ k)
            counts = dict(zip(circ.bitstrings(2), (int(d) for d in draws)))
            sys_p = draws / shots
        marg[(a, b)] = sys_p
        records.append({
            "setting": [a, b],
            "counts": counts,
            "probabilities": sys_p.tolist(),
            "estimated_expectation": float(np.dot(PARITY_SIGNS, sys_p)),
        })

    corr = {("I", "I"): 1.0}
    for (a, b), p in marg.items():
        corr[(a, b)] = float(np.dot(PARITY_SIGNS, p))
    for s in "XYZ":
        # <s (x) I> from the first bit, <I (x) s> from the second
        corr[(s, "I")] = float(np.mean([(p[0] + p[1]) - (p[2] + p[3]) for (a, _), p in marg.items() if a == s]))
        corr[("I", s)] = float(np.mean([(p[0] + p[2]) - (p[1] + p[3]) for (_, b), p in marg.items() if b == s]))
    est = sum(v * kron_all(PAULIS[i], PAULIS[j]) for (i, j), v in corr.items()) / 4
    if psd_project:
        w, v = hermitian_eigh(est)
        w = np.clip(w, 0.0, None)
        est = (v * (w / w.sum())) @ v.conj().T
    analytic = run_protocol_analytic(projector(pure_system_state(params))).rho2
    return {
        "theta": theta,
        "phi": phi,
        "shots": None if exact else shots,
        "seed": seed,
        "exact": exact,
        "settings": records,
        "rho_estimate": _matrix_json(est),
        "rho_analytic": _matrix_json(analytic),
        "max_abs_error": float(np.max(np.abs(est - analytic))),
    }


def cmd_tomography(args) -> dict:
    return tomography(args.theta, args.phi, args.shots, args.seed, args.exact, args.psd_project)


def write_rows(rows: list[dict], columns: list[str], fmt_: str, out) -> None:
    if fmt_ == "json":
        json.dump(rows, out, indent=2)
        out.write("\n")
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([fmt(r[c]) for c in columns])


def write_json(obj: dict, fmt_: str, out) -> None:
    if fmt_ != "json":
        raise UsageError("this command only writes JSON")
    json.dump(obj, out, indent=2)
    out.write("\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--shots", type=int, default=10000, help="shots per circuit (default 10000)")
    common.add_argument("--seed", type=int, default=0, help="base seed (default 0)")
    common.add_argument("--exact", action="store_true", help="use the exact distribution instead of sampling")
    common.add_argument("--out", default="-", help="output path (default stdout)")
    common.add_argument("--format", choices=["csv", "json"], default=None)

    parser = argparse.ArgumentParser(prog="nwl", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chsh-sweep", parents=[common], help="CHSH value, meter estimates and entanglement over a (theta, phi) grid")
    p.add_argument("--thetas", type=parse_list, default=DEFAULT_THETAS)
    p.add_argument("--phis", type=parse_list, default=DEFAULT_PHIS)

    p = sub.add_parser("circuit-run", parents=[common], help="run the six-qubit circuit at one point")
    p.add_argument("--theta", type=parse_value, required=True)
    p.add_argument("--phi", type=parse_value, required=True)

    p = sub.add_parser("vew-train", parents=[common], help="train a variational entanglement witness")
    p.add_argument("--theta", type=parse_value)
    p.add_argument("--phi", type=parse_value)
    p.add_argument("--werner", type=parse_value, help="train on the Werner state with this p")
    p.add_argument("--family", choices=FAMILIES, default="chsh")
    p.add_argument("--mode", choices=["constrained", "penalty"], default="constrained")
    p.add_argument("--alpha0", type=parse_list, default=None)
    p.add_argument("--max-evals", type=int, default=2000)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--penalty-weight", type=float, default=10.0)
    p.add_argument("--norm-cap", type=float, default=float(np.sqrt(2)))

    p = sub.add_parser("werner-sweep", parents=[common], help="Werner-state CHSH, PPT, concurrence and meter values over p")
    p.add_argument("--ps", type=parse_list, default=DEFAULT_PS)

    p = sub.add_parser("tomography", parents=[common], help="reconstruct the post-measurement system state")
    p.add_argument("--theta", type=parse_value, required=True)
    p.add_argument("--phi", type=parse_value, required=True)
    p.add_argument("--psd-project", action="store_true", help="clip negative eigenvalues of the estimate")
    return parser


_COMMANDS = {
    "chsh-sweep": (cmd_chsh_sweep, CHSH_COLUMNS),
    "werner-sweep": (cmd_werner_sweep, WERNER_COLUMNS),
    "circuit-run": (cmd_circuit_run, None),
    "vew-train": (cmd_vew_train, None),
    "tomography": (cmd_tomography, None),
}


def _validate(args) -> None:
    if args.shots < 1:
        raise UsageError("--shots must be at least 1")
    if args.command == "vew-train":
        pure = args.theta is not None or args.phi is not None
        if pure == (args.werner is not None):
            raise UsageError("give either --theta and --phi, or --werner")
        if pure and (args.theta is None or args.phi is None):
            raise UsageError("--theta and --phi must be given together")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    fn, columns = _COMMANDS[args.command]
    fmt_ = args.format or ("csv" if columns else "json")
    try:
        _validate(args)
        result = fn(args)
        buf = io.StringIO()
        if columns:
            write_rows(result, columns, fmt_, buf)
        else:
            write_json(result, fmt_, buf)
    except (UsageError, NwlError, ValueError) as exc:
        print(f"nwl {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if args.out == "-":
        sys.stdout.write(buf.getvalue())
    else:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(buf.getvalue())
        except OSError as exc:
            print(f"nwl {args.command}: error: {exc}", file=sys.stderr)
            return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
