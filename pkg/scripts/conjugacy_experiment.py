#!/usr/bin/env python3
"""Sweep earthquake times on a genus-two surface and tabulate the
measured cuff shear against the predicted unipotent orbit.

Usage: conjugacy_experiment.py [--weight W] [--cuff K] [--steps N] [--tmax T]
"""

import argparse

from eqlab.conjugacy import PeriodVector, unipotent
from eqlab.surface import (
    FNSurface,
    WeightedMulticurve,
    earthquake_flow,
    shear_across_cuff,
)


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--weight", type=float, default=1.0)
    parser.add_argument("--cuff", type=int, default=0)
    parser.add_argument("--steps", type=int, default=10)
    parser.add_argument("--tmax", type=float, default=0.5)
    args = parser.parse_args()

    surface = FNSurface.genus2(lengths=(2.0, 2.5, 3.0), twists=(0.1, -0.2, 0.3))
    mc = WeightedMulticurve({args.cuff: args.weight})

    x0 = shear_across_cuff(surface, args.cuff).value
    p0 = PeriodVector(x0, args.weight)
    print(f"cuff {args.cuff}, weight {args.weight}: x0 = {x0:+.12f}")
    print(f"{'t':>8} {'measured x':>18} {'predicted x':>18} {'residual':>12}")
    worst = 0.0
    for k in range(args.steps + 1):
        t = args.tmax * k / args.steps
        moved = earthquake_flow(surface, mc, t)
        measured = shear_across_cuff(moved, args.cuff).value
        predicted = unipotent(p0, t).x
        residual = abs(measured - predicted)
        worst = max(worst, residual)
        print(f"{t:8.3f} {measured:+18.12f} {predicted:+18.12f} {residual:12.3e}")
    print(f"max residual: {worst:.3e}")


if __name__ == "__main__":
    main()
