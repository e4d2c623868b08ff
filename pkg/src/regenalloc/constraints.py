"""Linear feasibility constraints on the two storage levels.

A collector reading ``k`` nodes after a worst-case repair history sees, for
each reconstruction slot ``i``, at most ``min(alpha(i), (d-i+1)*beta)`` useful
units.  Grouping those bottleneck bounds yields a compact system of
``2(k+1)`` half-planes in the (alpha1, alpha2) plane; the much larger
slot-by-slot expansion is kept around as a test oracle.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .core import Allocation, Ratio, RatioLike, SystemParams, parse_ratio

TYPE1 = 1
TYPE2 = 2


@dataclass(frozen=True)
class HalfPlane:
    """One linear constraint ``coef1*alpha1 + coef2*alpha2 >= rhs``.

    A row with both coefficients zero is a pure feasibility test: it holds
    iff ``rhs <= 0``.
    """

    coef1: Ratio
    coef2: Ratio
    rhs: Ratio

    def __post_init__(self) -> None:
        for name in ("coef1", "coef2", "rhs"):
            object.__setattr__(self, name, parse_ratio(getattr(self, name)))

    @property
    def is_degenerate(self) -> bool:
        return self.coef1 == 0 and self.coef2 == 0

    def contains(self, alloc: Allocation) -> bool:
        return self.coef1 * alloc.alpha1 + self.coef2 * alloc.alpha2 >= self.rhs


@dataclass(frozen=True)
class TypeVector:
    """Node types, in reconstruction order, of the k nodes a collector reads."""

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        entries = tuple(self.entries)
        if any(tag not in (TYPE1, TYPE2) for tag in entries):
            raise ValueError(f"type tags must be {TYPE1} or {TYPE2}, got {entries!r}")
        object.__setattr__(self, "entries", entries)

    def __len__(self) -> int:
        return len(self.entries)

    def fits(self, params: SystemParams) -> bool:
        """True when the per-type multiplicities do not exceed n1 / n2."""
        return (
            len(self.entries) == params.k
            and self.entries.count(TYPE1) <= params.n1
            and self.entries.count(TYPE2) <= params.n2
        )


def type_vectors(params: SystemParams) -> list[TypeVector]:
    """All admissible length-k type vectors, in lexicographic order."""
    out = []
    for entries in itertools.product((TYPE1, TYPE2), repeat=params.k):
        vec = TypeVector(entries)
        if vec.fits(params):
            out.append(vec)
    return out


def bandwidth_tail(m: int, params: SystemParams) -> Ratio:
    """Repair traffic admitted past the first m slots: sum_{i=m+1..k} (d-i+1)*beta.

    Closed form (k-m)(2d-k-m+1)*beta/2.
    """
    if not 0 <= m <= params.k:
        raise ValueError(f"m must lie in 0..k={params.k}, got {m}")
    k, d = params.k, params.d
    return Fraction((k - m) * (2 * d - k - m + 1), 2) * params.beta


def min_beta(params: SystemParams) -> Ratio:
    """Smallest per-helper rate with a non-empty feasible region: 2M/(k(2d-k+1))."""
    return Fraction(2) * params.file_size / (params.k * (2 * params.d - params.k + 1))


def generate_constraints(params: SystemParams) -> list[HalfPlane]:
    """The compact 2(k+1)-row system.

    For each m = 0..k the storage side of the bottleneck covers m slots and
    the bandwidth side covers the rest; two rows pin the extremes, one
    packing as many type-1 nodes as possible into the storage slots (even
    indices), one packing type-2 (odd indices).  Duplicates are kept so the
    row count stays checkable; deduplication is the solver's business.
    """
    rows: list[HalfPlane] = []
    for m in range(params.k + 1):
        rhs = params.file_size - bandwidth_tail(m, params)
        p = min(m, params.n1)
        rows.append(HalfPlane(p, m - p, rhs))
        q = min(m, params.n2)
        rows.append(HalfPlane(m - q, q, rhs))
    return rows


def mincut_multipliers(params: SystemParams) -> tuple[int, ...]:
    """Per-slot bandwidth multipliers (d, d-1, ..., d-k+1): slot i admits (d-i+1)*beta."""
    return tuple(params.d - i + 1 for i in range(1, params.k + 1))


def mincut_bound(vec: TypeVector, alloc: Allocation, params: SystemParams) -> Ratio:
    """Information bottleneck for a collector whose slots have the given types.

    Returns sum_i min(alpha(i), (d-i+1)*beta) where alpha(i) is alloc.alpha1
    or alloc.alpha2 according to the slot's tag.
    """
    if len(vec) != params.k:
        raise ValueError(f"type vector has {len(vec)} slots, expected k={params.k}")
    total = Fraction(0)
    for tag, mult in zip(vec.entries, mincut_multipliers(params)):
        alpha = alloc.alpha1 if tag == TYPE1 else alloc.alpha2
        total += min(alpha, mult * params.beta)
    return total


def raw_constraint_set(
    params: SystemParams, *, ordered: bool = False, cap: int = 10**6
) -> list[HalfPlane]:
    """Slot-by-slot expansion of the bottleneck bounds, for use as a test oracle.

    With ``ordered=True`` this is the literal expansion: every admissible type
    vector crossed with every binary choice of which side of each min binds,
    |A| * 2^k half-planes in all.  The default enumerates type multisets after
    reducing each choice pattern to its tightest representative (storage slots
    first), which spans the same feasible region with far fewer rows.
    """
    k = params.k
    rows: list[HalfPlane] = []
    if ordered:
        vecs = type_vectors(params)
        count = len(vecs) * 2**k
        if count > cap:
            raise ValueError(f"raw expansion would emit {count} rows, above cap {cap}")
        mults = mincut_multipliers(params)
        for vec in vecs:
            for mask in itertools.product((0, 1), repeat=k):
                coef1 = coef2 = 0
                tail = Fraction(0)
                for tag, bit, mult in zip(vec.entries, mask, mults):
                    if bit:
                        tail += mult * params.beta
                    elif tag == TYPE1:
                        coef1 += 1
                    else:
                        coef2 += 1
                rows.append(HalfPlane(coef1, coef2, params.file_size - tail))
        return rows
    for m in range(k + 1):
        rhs = params.file_size - bandwidth_tail(m, params)
        for p in range(max(0, m - params.n2), min(m, params.n1) + 1):
            rows.append(HalfPlane(p, m - p, rhs))
            if len(rows) > cap:
                raise ValueError(f"raw expansion exceeds cap {cap}")
    return rows


def is_feasible(alloc: Allocation, planes: list[HalfPlane]) -> bool:
    """True iff the point satisfies every half-plane, with exact comparison."""
    return all(plane.contains(alloc) for plane in planes)
