import random
from itertools import combinations, combinations_with_replacement, product

import pytest
from hypothesis import given, settings, strategies as st

from rvwarning.balls_bins import min_product
from rvwarning.instances import random_group, random_sequence, random_setsystem, random_weight_box
from rvwarning.multipoly import MultiPoly
from rvwarning.ring_core import PLocalRing
from rvwarning.warning_verify import Verdict
from rvwarning.zerosum_apps import (
    GroupSpec,
    GSequence,
    SetSystem,
    dags_bound,
    dags_report,
    davenport_constant,
    egz_classic_verify,
    egz_count,
    egz_report,
    extremal_setsystem,
    generalized_count,
    generalized_report,
    gsum_count,
    has_zero_sum_subsequence,
    indicator_crosscheck,
    indicator_poly,
    ng_bound_report,
    ng_minimum_report,
    prime_power,
    setsystem_count,
    setsystem_report,
    union_poly,
    weight_box,
)

# -- naive oracles -------------------------------------------------------------


def vec_sum(group, elems):
    coords = [0] * group.rank
    for e in elems:
        for k, c in enumerate(group.decode(e)):
            coords[k] += c
    return group.encode(coords)


def naive_subset_count(x, g):
    n = len(x)
    return sum(
        1 for J in product((0, 1), repeat=n)
        if vec_sum(x.group, [e for e, j in zip(x.entries, J) if j]) == x.group.element(g)
    )


def naive_zero_sum_free(group, seq):
    return not any(
        vec_sum(group, c) == 0 for r in range(1, len(seq) + 1) for c in combinations(seq, r)
    )


def naive_davenport(group):
    d = 1
    while any(naive_zero_sum_free(group, ms)
              for ms in combinations_with_replacement(range(group.order), d)):
        d += 1
    return d


def naive_weighted(x, box, g, k=None):
    group = x.group
    out = 0
    for a in product(*box.sets):
        coords = [0] * group.rank
        for w, e in zip(a, x.entries):
            for i, c in enumerate(group.decode(e)):
                coords[i] += w * c
        if group.encode(coords) != group.element(g):
            continue
        if k is not None and sum(1 for w in a if w) % group.p**k:
            continue
        out += 1
    return out


# -- groups --------------------------------------------------------------------


def test_group_parsing_and_encoding():
    G = GroupSpec.parse("2:1,2")
    assert G.moduli == (2, 4) and G.order == 8 and G.exponent == 4 and G.d_invariant == 5
    assert [G.decode(G.encode(c)) for c in [(1, 3), (0, 2)]] == [(1, 3), (0, 2)]
    assert G.element(0) == 0
    with pytest.raises(ValueError):
        G.element(1)
    assert GroupSpec.parse("3:2").element(10) == 1


@pytest.mark.parametrize("spec", ["2:1", "2:2", "2:1,1", "3:1", "2:3", "5:1", "2:1,2"])
def test_davenport_matches_naive(spec):
    G = GroupSpec.parse(spec)
    res = davenport_constant(G)
    assert res.D == naive_davenport(G) == G.d_invariant
    assert len(res.witness) == res.D - 1
    assert naive_zero_sum_free(G, res.witness)


def test_davenport_examples():
    assert davenport_constant(GroupSpec.parse("2:1")).to_json()["witness"] == [1]
    out = davenport_constant(GroupSpec.parse("2:1,1")).to_json()
    assert (out["D"], out["d"], out["witness"]) == (3, 3, [[1, 0], [0, 1]])
    assert davenport_constant(GroupSpec.parse("3:2")).D == 9


def test_davenport_guard():
    with pytest.raises(ValueError):
        davenport_constant(GroupSpec.parse("3:1,1,1,1,1,1,1"))


def test_has_zero_sum_subsequence():
    G = GroupSpec.parse("3:1")
    assert not has_zero_sum_subsequence(G, [1, 1])
    assert has_zero_sum_subsequence(G, [1, 1, 1])
    assert has_zero_sum_subsequence(G, [0])


# -- subset sums ---------------------------------------------------------------


def test_gsum_examples():
    Z2, Z3, Z4 = (GroupSpec.parse(s) for s in ("2:1", "3:1", "2:2"))
    assert gsum_count(GSequence(Z2, [1, 1, 1]), 0) == 4
    assert gsum_count(GSequence(Z3, [1, 1]), 2) == 1
    rep = ng_bound_report(GSequence(Z2, [1, 1, 1]), 1)
    assert (rep.count, rep.bound, rep.verdict) == (4, 4, Verdict.HOLDS)
    assert ng_bound_report(GSequence(Z4, [0, 0]), 1).verdict is Verdict.VACUOUS


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_gsum_matches_enumeration(seed):
    rng = random.Random(seed)
    G = random_group(rng)
    x = random_sequence(rng, G, rng.randint(0, 7))
    g = G.to_json_element(rng.randrange(G.order))
    assert gsum_count(x, g) == naive_subset_count(x, g)
    assert gsum_count(x, 0) >= 1
    assert ng_bound_report(x, g).verdict is not Verdict.VIOLATED


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32))
def test_gsum_permutation_invariant(seed):
    rng = random.Random(seed)
    G = random_group(rng)
    x = random_sequence(rng, G, rng.randint(1, 8))
    shuffled = list(x.to_json())
    rng.shuffle(shuffled)
    g = G.to_json_element(rng.randrange(G.order))
    assert gsum_count(GSequence(G, shuffled), g) == gsum_count(x, g)


def test_ng_minimum_small():
    rep = ng_minimum_report(GroupSpec.parse("2:1"), 3)
    assert rep.minimum == rep.predicted == 4 and rep.passed


# -- weighted counts -----------------------------------------------------------


def test_generalized_examples():
    Z2, Z3 = GroupSpec.parse("2:1"), GroupSpec.parse("3:1")
    rep = generalized_report(GSequence(Z2, [1, 1]), 0, weight_box(2, [[0, 1]] * 2))
    assert (rep.count, rep.bound, rep.verdict) == (2, 2, Verdict.HOLDS)
    assert rep.extras["nonzero_witness"] == [1, 1]
    x = GSequence(Z3, [1, 2])
    box = weight_box(3, [[0, 1, 2]] * 2)
    assert generalized_count(x, 0, box) == naive_weighted(x, box, 0) == 3
    rep = generalized_report(GSequence(Z3, [1, 2]), 0, weight_box(3, [[0], [0]]))
    assert rep.count == 1 and not rep.extras["not_one_hypothesis"]
    assert rep.verdict is Verdict.HOLDS


def test_weight_box_needs_zero():
    with pytest.raises(ValueError):
        weight_box(3, [[1, 2]])
    with pytest.raises(ValueError):
        generalized_count(GSequence(GroupSpec.parse("3:1"), [1]), 0, weight_box(2, [[0, 1]]))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_weighted_counts_match_enumeration(seed):
    rng = random.Random(seed)
    G = random_group(rng)
    n = rng.randint(1, 5)
    x = random_sequence(rng, G, n)
    box = random_weight_box(rng, G.p, n)
    g = G.to_json_element(rng.randrange(G.order)) if rng.random() < 0.5 else 0
    assert generalized_count(x, g, box) == naive_weighted(x, box, g)
    k = rng.randint(1, 2)
    assert egz_count(x, box, k, g) == naive_weighted(x, box, g, k)
    assert generalized_report(x, g, box).verdict is not Verdict.VIOLATED
    assert egz_report(x, box, k, g).verdict is not Verdict.VIOLATED


def test_egz_examples():
    Z2 = GroupSpec.parse("2:1")
    rep = egz_report(GSequence(Z2, [1, 1]), weight_box(2, [[0, 1]] * 2), 1)
    assert (rep.count, rep.bound, rep.verdict) == (2, 1, Verdict.HOLDS)
    x = GSequence(Z2, [1, 1, 1])
    box = weight_box(2, [[0, 1]] * 3)
    assert egz_count(x, box, 1) == 4
    rep = dags_report(x, box)
    assert (rep.count, rep.bound, rep.verdict) == (4, 2, Verdict.HOLDS)
    Z4 = GroupSpec.parse("2:2")
    assert egz_report(GSequence(Z4, [2, 2]), weight_box(2, [[0, 1]] * 2), 1, 1).verdict is Verdict.VACUOUS


def test_dags_hypothesis_and_z3():
    Z3 = GroupSpec.parse("3:1")
    short = dags_report(GSequence(Z3, [1] * 4), weight_box(3, [[0, 1]] * 4))
    assert short.verdict is Verdict.NOT_APPLICABLE
    x = GSequence(Z3, [1] * 5)
    box = weight_box(3, [[0, 1]] * 5)
    rep = dags_report(x, box)
    # the empty support plus the C(5,3) supports of size 3
    assert rep.count == naive_weighted(x, box, 0, 1) == 11
    assert rep.bound == min_product([2] * 5, 10 - 2 - 2) == 2
    assert rep.verdict is Verdict.HOLDS


@pytest.mark.parametrize("spec", ["2:1", "2:2", "3:1", "2:1,1", "3:2", "5:1"])
@pytest.mark.parametrize("a", [2, 3])
def test_dags_bound_is_balls_bins(spec, a):
    G = GroupSpec.parse(spec)
    for n in range(1, 12):
        b = dags_bound(G, a, n)
        if b is not None:
            N = n * a - (G.d_invariant - 1) - (a - 1) * (G.exponent - 1)
            assert b == min_product([a] * n, N)


def test_dags_requires_equal_sets():
    with pytest.raises(ValueError):
        dags_report(GSequence(GroupSpec.parse("3:1"), [1, 1]), weight_box(3, [[0, 1], [0, 2]]))


# -- the C_A indicator ---------------------------------------------------------


def test_indicator_examples():
    R5 = PLocalRing(5)
    C = indicator_poly([0, 1, 2], 5)
    expected = MultiPoly.constant(R5.one, 1) - MultiPoly.univariate([R5.one, R5(-1)]) * MultiPoly.univariate([R5.one, R5(-1, 2)])
    assert C == expected
    R7 = PLocalRing(7)
    assert indicator_poly([0, 1], 7) == MultiPoly.univariate([R7.zero, R7.one])
    assert not indicator_poly([0], 3)


@pytest.mark.parametrize("p,sets,k", [(2, [[0, 1]] * 5, 2), (3, [[0, 1, 2], [0, 4], [0, -1, 1]], 1), (5, [[0, 1, 2, 3]] * 3, 1)])
def test_indicator_crosscheck(p, sets, k):
    box = weight_box(p, sets)
    assert indicator_crosscheck(box, k) == box.size


# -- set systems ---------------------------------------------------------------


def test_union_poly_examples():
    assert union_poly(SetSystem([[1], [2]])) == MultiPoly(2, {(1, 0): 1, (0, 1): 1})
    assert union_poly(SetSystem([[1], [1]])) == MultiPoly(2, {(1, 0): 1, (0, 1): 1, (1, 1): -1})
    assert not union_poly(SetSystem([]))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_union_poly_pointwise(seed):
    rng = random.Random(seed)
    F, d = random_setsystem(rng, max_n=8)
    h = union_poly(F, verify=False)
    assert not h or h.total_degree() <= F.max_degree() <= d
    for x in product((0, 1), repeat=len(F)):
        assert h.evaluate(x) == F.union_size([j for j in range(len(F)) if x[j]])


def test_setsystem_examples():
    rep = setsystem_report(SetSystem([[1], [1]]), 2, 0)
    assert (rep.count, rep.bound, rep.verdict) == (1, 1, Verdict.HOLDS)
    rep = setsystem_report(SetSystem([[1], [2]]), 2, 0)
    assert (rep.count, rep.bound, rep.verdict) == (2, 2, Verdict.HOLDS)
    F = SetSystem([[1, 2], [3], []])
    assert setsystem_count(F, 1, 0) == 8
    assert setsystem_report(F, 6, 0).verdict is Verdict.NOT_APPLICABLE


def test_prime_power():
    assert [prime_power(m) for m in (1, 2, 4, 6, 9, 12, 25)] == [None, (2, 1), (2, 2), None, (3, 2), None, (5, 2)]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_setsystem_count_matches_enumeration(seed):
    rng = random.Random(seed)
    F, _ = random_setsystem(rng)
    m = rng.choice([2, 3, 4, 5])
    g = rng.randrange(m)
    n = len(F)
    naive = sum(1 for r in range(n + 1) for J in combinations(range(n), r) if (F.union_size(J) - g) % m == 0)
    assert setsystem_count(F, m, g) == naive
    assert setsystem_report(F, m, g).verdict is not Verdict.VIOLATED


def test_extremal_examples():
    F = extremal_setsystem(1, 2)
    assert len(F) == 1 and F.union_size([0]) == 3
    assert len(extremal_setsystem(2, 2)) == 2
    F = extremal_setsystem(1, 3)
    sizes = sorted(F.union_size(J) for J in ([0], [1], [0, 1]))
    assert sizes == [4, 4, 8]
    assert all(s % 3 for s in sizes)


@pytest.mark.parametrize("d,m", [(1, 2), (2, 3), (3, 3), (2, 4), (1, 5)])
def test_extremal_is_extremal(d, m):
    F = extremal_setsystem(d, m)
    assert len(F) == d * (m - 1) and F.max_degree() == d
    assert setsystem_count(F, m, 0) == 1


# -- classic EGZ ---------------------------------------------------------------


@pytest.mark.parametrize("m,expected", [(1, 1), (2, 4), (3, 21)])
def test_egz_classic_counts(m, expected):
    rep = egz_classic_verify(m)
    assert rep.passed and rep.multisets_checked == expected


def test_egz_classic_extremal_has_none():
    # (0, 1) with m=2: the pair sums to 1
    assert egz_classic_verify(2).extremal_clear
    with pytest.raises(ValueError):
        egz_classic_verify(6)
