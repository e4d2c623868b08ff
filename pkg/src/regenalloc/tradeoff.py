"""Cost/repair-bandwidth tradeoff sweeps and feasible-region boundary export."""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

from .core import Allocation, Ratio, SystemParams
from .constraints import HalfPlane, generate_constraints, min_beta
from .lp import Infeasible, solve, vertices


def _direction(plane: HalfPlane) -> tuple[int, int]:
    """Integer normal of a boundary line, reduced so parallels compare equal."""
    a = plane.coef1.numerator * plane.coef2.denominator
    b = plane.coef2.numerator * plane.coef1.denominator
    g = math.gcd(a, b)
    return (a // g, b // g)


@dataclass(frozen=True)
class TradeoffPoint:
    beta: Ratio
    repair_bandwidth: Ratio
    alpha1_star: Ratio
    alpha2_star: Ratio
    cost_star: Ratio


def sweep(
    params: SystemParams, beta_lo: Ratio, beta_hi: Ratio, steps: int
) -> list[TradeoffPoint]:
    """Solve the allocation problem at evenly spaced rational rates.

    Samples are beta_lo + i*(beta_hi - beta_lo)/(steps - 1), endpoints
    included, so no float drift accumulates along the sweep.  The ``beta``
    stored in ``params`` is ignored.
    """
    if steps < 2:
        raise ValueError(f"need at least 2 sweep steps, got {steps}")
    beta_lo, beta_hi = Fraction(beta_lo), Fraction(beta_hi)
    if beta_hi < beta_lo:
        raise ValueError(f"empty sweep range [{beta_lo}, {beta_hi}]")
    threshold = min_beta(params)
    if beta_lo < threshold:
        raise Infeasible(
            f"sweep start {beta_lo} is below the feasibility threshold {threshold}",
            threshold=threshold,
        )
    points = []
    span = beta_hi - beta_lo
    for i in range(steps):
        beta = beta_lo + span * i / (steps - 1)
        best = solve(replace(params, beta=beta))
        points.append(
            TradeoffPoint(
                beta=beta,
                repair_bandwidth=params.d * beta,
                alpha1_star=best.alpha1_star,
                alpha2_star=best.alpha2_star,
                cost_star=best.cost_star,
            )
        )
    return points


def region_boundary(params: SystemParams) -> list[Allocation]:
    """Lower-left boundary of the feasible region, ready for plotting.

    Returns the corner points in increasing alpha1 order, bracketed by the
    two unbounded tails truncated at 1.5x the largest corner coordinate.  A
    corner is a feasible candidate vertex where at least two distinct
    constraint directions bind (the quadrant edges alpha1=0 and alpha2=0
    count as directions).
    """
    threshold = min_beta(params)
    if params.beta < threshold:
        raise Infeasible(
            f"beta {params.beta} is below the feasibility threshold {threshold}",
            threshold=threshold,
        )
    planes = generate_constraints(params)
    lines = [p for p in planes if not p.is_degenerate]
    corners = []
    for point in vertices(planes):
        directions = set()
        for line in lines:
            if line.coef1 * point.alpha1 + line.coef2 * point.alpha2 == line.rhs:
                directions.add(_direction(line))
        if point.alpha1 == 0:
            directions.add((1, 0))
        if point.alpha2 == 0:
            directions.add((0, 1))
        if len(directions) >= 2:
            corners.append(point)
    corners.sort(key=lambda a: (a.alpha1, -a.alpha2))
    top = max(max(c.alpha1, c.alpha2) for c in corners) * Fraction(3, 2)
    first, last = corners[0], corners[-1]
    boundary = [Allocation(first.alpha1, top), *corners, Allocation(top, last.alpha2)]
    return boundary
