"""Exact two-variable minimization over the constraint system.

The objective has positive coefficients and the feasible region is an
intersection of upward-closed half-planes, so an optimum always sits at a
vertex: a pairwise intersection of constraint boundaries or an axis
intercept.  Enumerating those candidates with rational arithmetic gives the
exact minimizer, no pivoting or tolerances involved.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import Allocation, Ratio, SystemParams, format_ratio, storage_cost, validate
from .constraints import HalfPlane, bandwidth_tail, generate_constraints, is_feasible, min_beta


class Infeasible(Exception):
    """Raised when the per-helper rate is below the feasibility threshold."""

    def __init__(self, message: str, threshold: Ratio | None = None, violating_row: int | None = None):
        super().__init__(message)
        self.threshold = threshold
        self.violating_row = violating_row


class CaseMismatch(Exception):
    """Raised when a closed form is asked for outside its parameter regime."""


@dataclass(frozen=True)
class OptimalAllocation:
    alpha1_star: Ratio
    alpha2_star: Ratio
    cost_star: Ratio
    binding: tuple[int, ...]
    case_label: str

    @property
    def allocation(self) -> Allocation:
        return Allocation(self.alpha1_star, self.alpha2_star)


def classify_case(params: SystemParams) -> str:
    """A/B/C/D by whether each node class can cover a full collector on its own."""
    if params.n1 >= params.k:
        return "A" if params.n2 >= params.k else "B"
    return "C" if params.n2 >= params.k else "D"


def vertices(planes: list[HalfPlane]) -> list[Allocation]:
    """Feasible candidate vertices of the region cut out by ``planes``.

    Candidates are all pairwise intersections of non-parallel boundary lines
    plus each boundary's intercepts with the alpha1=0 and alpha2=0 rays,
    filtered to the non-negative quadrant and to feasibility against the full
    plane list (degenerate rows included).  Deduplicated, sorted
    lexicographically.
    """
    lines = [p for p in planes if not p.is_degenerate]
    points: set[tuple[Fraction, Fraction]] = set()

    def consider(x: Fraction, y: Fraction) -> None:
        if x >= 0 and y >= 0:
            alloc = Allocation(x, y)
            if is_feasible(alloc, planes):
                points.add((x, y))

    for i, a in enumerate(lines):
        for b in lines[i + 1 :]:
            det = a.coef1 * b.coef2 - a.coef2 * b.coef1
            if det == 0:
                continue
            x = (a.rhs * b.coef2 - b.rhs * a.coef2) / det
            y = (a.coef1 * b.rhs - b.coef1 * a.rhs) / det
            consider(x, y)
    for line in lines:
        if line.coef1 > 0:
            consider(line.rhs / line.coef1, Fraction(0))
        if line.coef2 > 0:
            consider(Fraction(0), line.rhs / line.coef2)
    return [Allocation(x, y) for x, y in sorted(points)]


def _binding_rows(planes: list[HalfPlane], alloc: Allocation) -> tuple[int, ...]:
    return tuple(
        i
        for i, p in enumerate(planes)
        if p.coef1 * alloc.alpha1 + p.coef2 * alloc.alpha2 == p.rhs
    )


def solve(params: SystemParams) -> OptimalAllocation:
    """Minimize total storage cost over the feasible region, exactly.

    Ties between equal-cost vertices break to the lexicographically smallest
    (alpha1, alpha2), so results are deterministic.
    """
    report = validate(params)
    if not report.ok:
        raise ValueError("invalid parameters: " + "; ".join(report.violations))
    threshold = min_beta(params)
    planes = generate_constraints(params)
    for idx, plane in enumerate(planes):
        if plane.is_degenerate and plane.rhs > 0:
            raise Infeasible(
                f"beta {format_ratio(params.beta)} is below the feasibility "
                f"threshold {format_ratio(threshold)} (row {idx} requires 0 >= "
                f"{format_ratio(plane.rhs)})",
                threshold=threshold,
                violating_row=idx,
            )
    candidates = vertices(planes)
    # Positive objective coefficients plus upward-closed rows guarantee a
    # vertex optimum; an empty candidate list would mean the premise broke.
    assert candidates, "feasible region has no candidate vertices"
    best = min(
        candidates,
        key=lambda a: (storage_cost(params, a), a.alpha1, a.alpha2),
    )
    return OptimalAllocation(
        alpha1_star=best.alpha1,
        alpha2_star=best.alpha2,
        cost_star=storage_cost(params, best),
        binding=_binding_rows(planes, best),
        case_label=classify_case(params),
    )


def case_a_closed_form(params: SystemParams) -> OptimalAllocation:
    """Closed-form optimum when both classes have at least k nodes.

    The region is a translated quadrant with corner on the 45-degree line, so
    alpha1* = alpha2* = max_{1<=m<=k} (M - tail(m))/m no matter what the two
    unit costs are.
    """
    if params.n1 < params.k or params.n2 < params.k:
        raise CaseMismatch(
            f"closed form needs n1 >= k and n2 >= k, got n1={params.n1}, "
            f"n2={params.n2}, k={params.k}"
        )
    threshold = min_beta(params)
    if params.beta < threshold:
        raise Infeasible(
            f"beta {format_ratio(params.beta)} is below the feasibility "
            f"threshold {format_ratio(threshold)}",
            threshold=threshold,
        )
    level = max(
        (params.file_size - bandwidth_tail(m, params)) / m
        for m in range(1, params.k + 1)
    )
    point = Allocation(level, level)
    return OptimalAllocation(
        alpha1_star=level,
        alpha2_star=level,
        cost_star=storage_cost(params, point),
        binding=_binding_rows(generate_constraints(params), point),
        case_label="A",
    )


def corner_point(m: int, params: SystemParams) -> Allocation:
    """Vertex of the m-th constraint pair, on the 45-degree line.

    Both rows of index m bind simultaneously at
    alpha1 = alpha2 = (M - tail(m))/m; clamped to the origin when the
    bandwidth tail already covers the file.
    """
    if not 1 <= m <= params.k:
        raise ValueError(f"m must lie in 1..k={params.k}, got {m}")
    level = (params.file_size - bandwidth_tail(m, params)) / m
    if level < 0:
        level = Fraction(0)
    return Allocation(level, level)


def grid_oracle(params: SystemParams, step: Ratio, bound: Ratio) -> Allocation | None:
    """Cheapest feasible lattice point of [0, bound]^2 with the given spacing.

    Test oracle for :func:`solve`.  Internally the scan walks alpha1 columns
    and, because every row has non-negative coefficients, drops straight to
    the lowest admissible alpha2 in each column; the winner is identical to a
    full two-dimensional sweep.  All arithmetic is integer after one common
    rescaling.  Returns None when no lattice point is feasible.
    """
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    planes = generate_constraints(params)
    step = Fraction(step)
    bound = Fraction(bound)
    scale = math.lcm(
        step.denominator,
        bound.denominator,
        *(p.rhs.denominator for p in planes),
        *(p.coef1.denominator for p in planes),
        *(p.coef2.denominator for p in planes),
    )
    # Work in coordinates multiplied by `scale`: lattice points are X = i*s,
    # Y = j*s, and each row becomes C1*X + C2*Y >= R with pure integers.
    s = int(step * scale)
    b = int(bound * scale)
    rows = [
        (int(p.coef1 * scale), int(p.coef2 * scale), int(p.rhs * scale) * scale)
        for p in planes
    ]
    if any(c1 == 0 and c2 == 0 and r > 0 for c1, c2, r in rows):
        return None
    active = [(c1, c2, r) for c1, c2, r in rows if (c1, c2) != (0, 0)]
    cost1 = params.c1 * params.n1
    cost2 = params.c2 * params.n2
    best: tuple[Ratio, Fraction, Fraction] | None = None
    for i in range(b // s + 1):
        x = i * s
        y_req = 0
        feasible_col = True
        for c1, c2, r in active:
            need = r - c1 * x
            if c2 == 0:
                if need > 0:
                    feasible_col = False
                    break
            elif need > y_req * c2:
                y_req = -(-need // c2)
        if not feasible_col:
            continue
        y = (-(-y_req // s)) * s if y_req > 0 else 0
        if y > b:
            continue
        ax = Fraction(x, scale)
        ay = Fraction(y, scale)
        key = (cost1 * ax + cost2 * ay, ax, ay)
        if best is None or key < best:
            best = key
    if best is None:
        return None
    return Allocation(best[1], best[2])
