"""Seeded instance generators shared across the test suite."""
from __future__ import annotations

import random
from fractions import Fraction

from regenalloc import SystemParams, min_beta, validate

SMALL_DENOMINATORS = (1, 2, 3, 4, 5, 8, 10)


def random_rational(rng: random.Random, lo, hi, denominators=SMALL_DENOMINATORS) -> Fraction:
    lo, hi = Fraction(lo), Fraction(hi)
    den = rng.choice(denominators)
    lo_n = -(-(lo.numerator * den) // lo.denominator)  # ceil(lo*den)
    hi_n = (hi.numerator * den) // hi.denominator
    if hi_n < lo_n:
        return lo
    return Fraction(rng.randint(lo_n, hi_n), den)


def random_params(
    rng: random.Random,
    *,
    max_k: int = 5,
    max_nodes: int = 8,
    max_d: int | None = None,
    max_file_size: int = 12,
    beta_slack=(Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(2)),
    allow_empty_class: bool = True,
) -> SystemParams:
    """A validated instance with beta on the feasible side of the threshold."""
    while True:
        n = rng.randint(2, max_nodes)
        lo = 0 if allow_empty_class else 1
        n1 = rng.randint(lo, n - lo)
        n2 = n - n1
        k_hi = min(max_k, n - 1)
        if k_hi < 1:
            continue
        k = rng.randint(1, k_hi)
        d_hi = n - 1 if max_d is None else min(max_d, n - 1)
        if d_hi < k:
            continue
        d = rng.randint(k, d_hi)
        file_size = random_rational(rng, 1, max_file_size, denominators=(1, 2, 4))
        draft = SystemParams(n1=n1, n2=n2, k=k, d=d, file_size=file_size, beta=0)
        beta = min_beta(draft) * (1 + rng.choice(beta_slack))
        params = SystemParams(
            n1=n1,
            n2=n2,
            k=k,
            d=d,
            file_size=file_size,
            beta=beta,
            c1=random_rational(rng, Fraction(1, 4), 3, denominators=(1, 2, 4)),
            c2=random_rational(rng, Fraction(1, 4), 3, denominators=(1, 2, 4)),
        )
        if validate(params).ok:
            return params
