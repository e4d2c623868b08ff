import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regenalloc import (
    Allocation,
    HalfPlane,
    SystemParams,
    TypeVector,
    bandwidth_tail,
    generate_constraints,
    is_feasible,
    min_beta,
    mincut_bound,
    mincut_multipliers,
    raw_constraint_set,
    type_vectors,
)
from helpers import random_params, random_rational

FIG_REGION = SystemParams(n1=8, n2=2, k=6, d=8, file_size="66", beta="3.3")
FIG_GRAPH = SystemParams(n1=2, n2=2, k=2, d=3, file_size="4", beta="1")


def tail_by_summation(m: int, params: SystemParams) -> Fraction:
    # independent oracle: the term-by-term sum the closed form compresses
    return sum(
        ((params.d - i + 1) * params.beta for i in range(m + 1, params.k + 1)),
        start=Fraction(0),
    )


def test_bandwidth_tail_examples():
    assert bandwidth_tail(FIG_REGION.k, FIG_REGION) == 0
    # oracle: sum over i=6..6 of (8-i+1)*3.3 = 9.9
    assert tail_by_summation(5, FIG_REGION) == Fraction("9.9")
    assert bandwidth_tail(5, FIG_REGION) == Fraction("9.9")
    # oracle: (8+7+6+5+4+3)*3.3 = 108.9
    assert tail_by_summation(0, FIG_REGION) == Fraction("108.9")
    assert bandwidth_tail(0, FIG_REGION) == Fraction("108.9")


def test_bandwidth_tail_rejects_m_out_of_range():
    with pytest.raises(ValueError):
        bandwidth_tail(-1, FIG_REGION)
    with pytest.raises(ValueError):
        bandwidth_tail(FIG_REGION.k + 1, FIG_REGION)


def test_bandwidth_tail_matches_summation_everywhere():
    rng = random.Random(1)
    for _ in range(50):
        params = random_params(rng)
        for m in range(params.k + 1):
            assert bandwidth_tail(m, params) == tail_by_summation(m, params)


def test_bandwidth_tail_strictly_decreasing():
    rng = random.Random(2)
    for _ in range(25):
        params = random_params(rng)
        if params.beta == 0:
            continue
        tails = [bandwidth_tail(m, params) for m in range(params.k + 1)]
        assert all(a > b for a, b in zip(tails, tails[1:]))
        assert tails[-1] == 0


def test_min_beta_examples():
    assert min_beta(FIG_REGION) == 2
    assert min_beta(FIG_REGION) * FIG_REGION.d == 16

    single = SystemParams(n1=1, n2=1, k=1, d=1, file_size="1", beta="0")
    assert min_beta(single) == 1

    small = SystemParams(n1=2, n2=2, k=2, d=3, file_size="4", beta="0")
    assert min_beta(small) == Fraction("0.8")
    # cross-check: at the threshold the m=0 row sits exactly at zero slack
    at_threshold = SystemParams(n1=2, n2=2, k=2, d=3, file_size="4", beta=min_beta(small))
    assert bandwidth_tail(0, at_threshold) == at_threshold.file_size


def test_generate_constraints_count_and_fig_graph_rows():
    params = SystemParams(n1=2, n2=2, k=2, d=3, file_size="4", beta="1")
    rows = generate_constraints(params)
    assert len(rows) == 2 * (params.k + 1)
    m, b = params.file_size, params.beta
    assert rows[0] == HalfPlane(0, 0, m - 5 * b)  # m=0, both families collapse
    assert rows[1] == HalfPlane(0, 0, m - 5 * b)
    assert rows[2] == HalfPlane(1, 0, m - 2 * b)  # m=1
    assert rows[3] == HalfPlane(0, 1, m - 2 * b)
    assert rows[4] == HalfPlane(2, 0, m)  # m=2
    assert rows[5] == HalfPlane(0, 2, m)


def test_generate_constraints_pure_alpha1_rows_when_type1_covers_k():
    rows = generate_constraints(FIG_REGION)
    for m in range(FIG_REGION.k + 1):
        plane = rows[2 * m]
        assert plane.coef1 == min(m, FIG_REGION.n1) == m
        assert plane.coef2 == 0


def test_generate_constraints_m0_rows_are_degenerate():
    rng = random.Random(3)
    for _ in range(20):
        params = random_params(rng)
        rows = generate_constraints(params)
        assert rows[0].is_degenerate and rows[1].is_degenerate
        assert all(not p.is_degenerate for p in rows[2:])


def test_mincut_bound_examples():
    params = SystemParams(n1=2, n2=2, k=2, d=3, file_size="3", beta="1")
    alloc = Allocation("1.5", "1.5")
    # frozen from the exhaustive cut enumeration oracle exercised in
    # test_flowgraph (same graph, same value): min(1.5,3) + min(1.5,2) = 3
    assert mincut_bound(TypeVector((1, 1)), alloc, params) == 3

    # storage cap of d*beta can never bind, so the bound collapses to the tail
    big = params.d * params.beta
    assert mincut_bound(TypeVector((1, 2)), Allocation(big, big), params) == bandwidth_tail(0, params)


def test_mincut_bound_matches_displayed_inequalities():
    params = SystemParams(n1=2, n2=2, k=2, d=3, file_size="3", beta="1")
    assert mincut_multipliers(params) == (3, 2)
    vecs = {v.entries for v in type_vectors(params)}
    assert vecs == {(1, 1), (2, 1), (1, 2), (2, 2)}
    a1, a2, b = Fraction(5, 4), Fraction(7, 4), params.beta
    alloc = Allocation(a1, a2)
    assert mincut_bound(TypeVector((1, 1)), alloc, params) == min(a1, 3 * b) + min(a1, 2 * b)
    assert mincut_bound(TypeVector((2, 1)), alloc, params) == min(a2, 3 * b) + min(a1, 2 * b)
    assert mincut_bound(TypeVector((1, 2)), alloc, params) == min(a1, 3 * b) + min(a2, 2 * b)
    assert mincut_bound(TypeVector((2, 2)), alloc, params) == min(a2, 3 * b) + min(a2, 2 * b)


def test_type_vector_validation():
    with pytest.raises(ValueError):
        TypeVector((1, 3))
    assert not TypeVector((2, 2, 2)).fits(SystemParams(n1=2, n2=2, k=3, d=3, file_size="1", beta="1"))


def test_raw_constraint_set_ordered_count():
    params = SystemParams(n1=2, n2=2, k=2, d=3, file_size="4", beta="1")
    rows = raw_constraint_set(params, ordered=True)
    assert len(rows) == 4 * 4  # |A| * 2^k


def test_raw_constraint_set_single_node_expansion():
    # expansion works straight off the counts, no survivor-margin needed
    params = SystemParams(n1=1, n2=0, k=1, d=1, file_size="2", beta="1")
    rows = raw_constraint_set(params, ordered=True)
    assert rows == [
        HalfPlane(1, 0, Fraction(2)),      # storage side binds: alpha1 >= M
        HalfPlane(0, 0, Fraction(2) - 1),  # bandwidth side binds: 0 >= M - d*beta
    ]


def test_raw_constraint_set_cap():
    with pytest.raises(ValueError):
        raw_constraint_set(FIG_REGION, ordered=True, cap=10)


def _boundary_intersections(planes):
    lines = [p for p in planes if not p.is_degenerate]
    points = []
    for i, a in enumerate(lines):
        for b in lines[i + 1:]:
            det = a.coef1 * b.coef2 - a.coef2 * b.coef1
            if det == 0:
                continue
            x = (a.rhs * b.coef2 - b.rhs * a.coef2) / det
            y = (a.coef1 * b.rhs - b.coef1 * a.rhs) / det
            if x >= 0 and y >= 0:
                points.append(Allocation(x, y))
    return points


def test_raw_and_compact_sets_agree_on_fig_graph_grid():
    params = SystemParams(n1=2, n2=2, k=2, d=3, file_size="4", beta="1")
    compact = generate_constraints(params)
    raw = raw_constraint_set(params, ordered=True)
    quarter = Fraction(1, 4)
    for i in range(0, 25):
        for j in range(0, 25):
            point = Allocation(i * quarter, j * quarter)
            assert is_feasible(point, compact) == is_feasible(point, raw)


def test_redundancy_soundness_randomized():
    rng = random.Random(4)
    for _ in range(15):
        params = random_params(rng, max_k=4, max_nodes=6)
        compact = generate_constraints(params)
        reduced = raw_constraint_set(params)
        ordered = raw_constraint_set(params, ordered=True, cap=10**4)
        points = [
            Allocation(random_rational(rng, 0, 12), random_rational(rng, 0, 12))
            for _ in range(40)
        ]
        points += _boundary_intersections(compact)
        for point in points:
            expected = is_feasible(point, compact)
            assert is_feasible(point, reduced) == expected
            assert is_feasible(point, ordered) == expected


def test_is_feasible_fig_region_examples():
    planes = generate_constraints(FIG_REGION)
    assert len(planes) == 14
    assert is_feasible(Allocation("11.22", "11.22"), planes)
    # drops below the m=5 storage row alpha1 >= 11.22
    assert not is_feasible(Allocation("11.21", "11.22"), planes)


def test_is_feasible_always_false_below_threshold():
    rng = random.Random(5)
    for _ in range(10):
        params = random_params(rng)
        lean = SystemParams(
            n1=params.n1, n2=params.n2, k=params.k, d=params.d,
            file_size=params.file_size, beta=min_beta(params) * Fraction(99, 100),
            c1=params.c1, c2=params.c2,
        )
        planes = generate_constraints(lean)
        big = lean.file_size * 100
        assert not is_feasible(Allocation(big, big), planes)


def test_enlarging_beta_never_shrinks_feasible_set():
    rng = random.Random(6)
    for _ in range(15):
        params = random_params(rng)
        wider = SystemParams(
            n1=params.n1, n2=params.n2, k=params.k, d=params.d,
            file_size=params.file_size, beta=params.beta * 2,
            c1=params.c1, c2=params.c2,
        )
        before = generate_constraints(params)
        after = generate_constraints(wider)
        for _ in range(30):
            point = Allocation(random_rational(rng, 0, 15), random_rational(rng, 0, 15))
            if is_feasible(point, before):
                assert is_feasible(point, after)


def test_enlarging_file_size_never_grows_feasible_set():
    rng = random.Random(7)
    for _ in range(15):
        params = random_params(rng)
        bigger = SystemParams(
            n1=params.n1, n2=params.n2, k=params.k, d=params.d,
            file_size=params.file_size * 2, beta=params.beta,
            c1=params.c1, c2=params.c2,
        )
        before = generate_constraints(params)
        after = generate_constraints(bigger)
        for _ in range(30):
            point = Allocation(random_rational(rng, 0, 15), random_rational(rng, 0, 15))
            if is_feasible(point, after):
                assert is_feasible(point, before)


def test_swapping_classes_mirrors_the_row_families():
    rng = random.Random(8)
    for _ in range(20):
        params = random_params(rng)
        swapped = SystemParams(
            n1=params.n2, n2=params.n1, k=params.k, d=params.d,
            file_size=params.file_size, beta=params.beta,
            c1=params.c2, c2=params.c1,
        )
        rows = generate_constraints(params)
        mirror = generate_constraints(swapped)
        for m in range(params.k + 1):
            family1, family2 = rows[2 * m], rows[2 * m + 1]
            sfamily1, sfamily2 = mirror[2 * m], mirror[2 * m + 1]
            # packing type-1 here is packing type-2 there, with roles swapped
            assert (family1.coef1, family1.coef2, family1.rhs) == (
                sfamily2.coef2, sfamily2.coef1, sfamily2.rhs)
            assert (family2.coef1, family2.coef2, family2.rhs) == (
                sfamily1.coef2, sfamily1.coef1, sfamily1.rhs)


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_mincut_bound_monotone_in_allocation(data):
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    params = random_params(rng, max_k=4, max_nodes=6)
    vecs = type_vectors(params)
    vec = vecs[rng.randrange(len(vecs))]
    a1 = random_rational(rng, 0, 10)
    a2 = random_rational(rng, 0, 10)
    bump = random_rational(rng, 0, 5)
    low = mincut_bound(vec, Allocation(a1, a2), params)
    high = mincut_bound(vec, Allocation(a1 + bump, a2 + bump), params)
    assert low <= high
