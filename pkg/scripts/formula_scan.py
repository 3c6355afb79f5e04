#!/usr/bin/env python3
"""Scan the Mycielskian theta map m(t) over a range of t.

Emits CSV with the value, the cubic residual, both discarded branches, and
the lift parameters; checks monotonicity and the root-selection bound on the
way and reports any violations at the end.

    python scripts/formula_scan.py --start 2 --stop 50 --step 0.01 > scan.csv
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from myctheta import lift_parameters, mycielski_theta_formula, verify_root_selection


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--start", type=float, default=2.0)
    parser.add_argument("--stop", type=float, default=50.0)
    parser.add_argument("--step", type=float, default=0.01)
    args = parser.parse_args()

    print("t,m,residual,discarded_k1,discarded_k2,x,alpha,beta")
    previous = None
    violations = []
    steps = int(round((args.stop - args.start) / args.step))
    for i in range(steps + 1):
        t = args.start + i * args.step
        res = mycielski_theta_formula(t)
        params = lift_parameters(t, res.m)
        print(
            f"{t:.6f},{res.m:.12g},{res.cubic_residual:.3e},"
            f"{res.discarded[0]:.9g},{res.discarded[1]:.9g},"
            f"{params.x:.9g},{params.alpha:.9g},{params.beta:.9g}"
        )
        if abs(res.cubic_residual) > 1e-8:
            violations.append(f"residual at t={t}")
        if not verify_root_selection(t):
            violations.append(f"root selection at t={t}")
        if not (t < res.m < t + 1):
            violations.append(f"bounds at t={t}")
        if previous is not None and res.m <= previous:
            violations.append(f"monotonicity at t={t}")
        previous = res.m
    if violations:
        print(f"# {len(violations)} violations: {violations[:5]}", file=sys.stderr)
        return 1
    print(f"# scan clean over [{args.start}, {args.stop}]", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
