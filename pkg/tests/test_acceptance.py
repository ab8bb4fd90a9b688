"""One test per acceptance criterion, all at exact equality.

The summary printed at the end of the run (see conftest.py) lists a
PASS/FAIL line for each criterion.
"""

import json
import random
import time
from itertools import combinations_with_replacement, product

from rvwarning import cli
from rvwarning.balls_bins import brute_force_min_product, equal_caps_closed_form, greedy_distribution, min_product
from rvwarning.instances import (
    congruence_system_instance,
    equiv_instance,
    fq_low_degree_systems,
    random_group,
    random_sequence,
    random_setsystem,
    random_weight_box,
)
from rvwarning.multipoly import MultiPoly
from rvwarning.ring_core import PLocalRing, fq_build, p_valuation
from rvwarning.schanuel_brink import RestrictedBox, build_context, congruence_equiv_check, delta, delta_tower
from rvwarning.warning_verify import (
    CongruenceSystem,
    Verdict,
    count_zeros_box,
    delta_reduce_system,
    rvw2_report,
    warning2_report,
)
from rvwarning.zerosum_apps import (
    GroupSpec,
    SetSystem,
    dags_report,
    davenport_constant,
    egz_classic_verify,
    egz_report,
    extremal_setsystem,
    generalized_report,
    indicator_crosscheck,
    ng_minimum_report,
    setsystem_count,
    setsystem_report,
)

SEED = 20240611
OK = (Verdict.HOLDS, Verdict.VACUOUS)


def criterion3_instances():
    rng = random.Random(SEED)
    return [equiv_instance(rng) for _ in range(200)]


def direct_count(system, box):
    return sum(
        1 for pt in product(*box.sets)
        if all(f.evaluate(pt) % m == 0 for f, m in zip(system.polys, system.moduli))
    )


def test_criterion_1_balls_bins_oracle():
    start = time.perf_counter()
    cases = 0
    for n in range(1, 6):
        # ordered profiles, so order invariance is exercised too
        for caps in product(range(1, 6), repeat=n):
            for N in range(n - 2, sum(caps) + 3):
                assert min_product(caps, N) == brute_force_min_product(caps, N), (caps, N)
                cases += 1
    assert cases > 10**4
    assert time.perf_counter() - start < 10


def test_criterion_2_closed_form_equals_greedy():
    start = time.perf_counter()
    for a in range(2, 7):
        for n in range(1, 9):
            for N in range(n, a * n + 1):
                greedy = greedy_distribution([a] * n, N)
                assert equal_caps_closed_form(a, n, N) == greedy.product, (a, n, N)
    assert time.perf_counter() - start < 1


def test_criterion_3_congruence_equivalence():
    start = time.perf_counter()
    seen = set()
    for f, box, v in criterion3_instances():
        rep = congruence_equiv_check(f, build_context(box), v)
        assert rep.passed, (f, box, v, rep.counterexample)
        seen.add((box.p, v))
    assert {p for p, _ in seen} == {2, 3, 5} and {v for _, v in seen} == {1, 2, 3}
    assert time.perf_counter() - start < 60


def test_criterion_4_delta_degree_and_integrality():
    for f, box, v in criterion3_instances():
        ctx = build_context(box)
        tower = delta_tower(f, ctx, v)
        for g, dg in zip(tower, tower[1:]):
            if dg:
                assert dg.total_degree() <= box.p * max(g.total_degree(), 0)
            assert all(c.den % box.p for c in dg.terms.values())
    for p in (2, 3, 5):
        ctx = build_context(RestrictedBox(p, [list(range(p))]))
        ring = PLocalRing(p)
        for c in (p, p**2, 2 * p**3):
            dc = delta(MultiPoly.constant(c, 1), ctx)
            (value,) = dc.terms.values()
            assert value == ring((c**p - c) // p)
            assert p_valuation(value, p) == p_valuation(c, p) - 1


def test_criterion_5_rvw2_never_violated():
    start = time.perf_counter()
    rng = random.Random(SEED)
    tally = {}
    for _ in range(500):
        system, box = congruence_system_instance(rng, primes=(2, 3), max_n=4, max_r=2, max_v=2, max_deg=2)
        rep = rvw2_report(system, box)
        assert rep.count == direct_count(system, box)
        assert rep.verdict in OK, rep.to_json()
        tally[rep.verdict] = tally.get(rep.verdict, 0) + 1
    assert tally.get(Verdict.HOLDS, 0) > 100
    for n in range(1, 7):
        parity = CongruenceSystem(2, [sum((MultiPoly.variable(i, n) for i in range(n)), MultiPoly.zero(n))])
        rep = rvw2_report(parity, RestrictedBox(2, [[0, 1]] * n))
        assert rep.count == rep.bound == 2 ** (n - 1)
    assert time.perf_counter() - start < 120


def test_criterion_6_chevalley_warning_low_degree():
    start = time.perf_counter()
    rng = random.Random(SEED)
    checked = 0
    for p, ell in [(2, 1), (3, 1), (2, 2)]:
        field = fq_build(p, ell)
        for n in range(1, 4):
            for profile, _, system in fq_low_degree_systems(field, n, rng):
                rep = warning2_report(system)
                assert rep.count % p == 0
                assert rep.count == 0 or rep.count >= field.q ** (n - system.degree())
                assert rep.verdict in OK
                checked += 1
    assert checked > 30000
    assert time.perf_counter() - start < 60


def test_criterion_7_delta_reduction_soundness():
    for f, box, v in criterion3_instances():
        system = CongruenceSystem(box.p, [f], [v])
        reduced = delta_reduce_system(system, build_context(box))
        assert count_zeros_box(reduced, box) == count_zeros_box(system, box)
    # genuine systems: two congruences with v up to 3
    rng = random.Random(SEED + 7)
    for _ in range(200):
        system, box = congruence_system_instance(rng, primes=(2, 3, 5), max_n=3, max_r=2, max_v=3, max_deg=3)
        reduced = delta_reduce_system(system, build_context(box))
        assert all(m == system.p for m in reduced.moduli)
        assert count_zeros_box(reduced, box) == count_zeros_box(system, box) == direct_count(system, box)


DAVENPORT_SUITE = ["2:1", "3:1", "2:2", "2:1,1", "5:1", "3:2", "2:1,2", "3:1,1", "2:3"]


def test_criterion_8_davenport_suite():
    start = time.perf_counter()
    for spec in DAVENPORT_SUITE:
        G = GroupSpec.parse(spec)
        res = davenport_constant(G)
        assert res.D == 1 + sum(G.p**v - 1 for v in G.exps), spec
        assert len(res.witness) == res.D - 1
    assert time.perf_counter() - start < 300


def test_criterion_9_minimum_subset_count():
    for spec in ("2:1", "3:1", "2:1,1"):
        G = GroupSpec.parse(spec)
        D = davenport_constant(G).D
        for n in range(1, 7):
            rep = ng_minimum_report(G, n)
            assert rep.minimum == max(1, 2 ** max(n + 1 - D, 0)), (spec, n)
            assert rep.minimum == rep.predicted


def _disjoint_system(sizes):
    sets, atom = [], 0
    for s in sizes:
        sets.append(range(atom, atom + s))
        atom += s
    return SetSystem(sets)


def test_criterion_10_set_systems():
    rng = random.Random(SEED)
    for _ in range(200):
        F, d = random_setsystem(rng, max_n=10, max_d=3)
        m = rng.choice([2, 3, 4])
        g = rng.randrange(m)
        rep = setsystem_report(F, m, g)
        assert rep.verdict in OK, rep.to_json()
        assert rep.bound == 2 ** max(len(F) - F.max_degree() * (m - 1), 0)
    # lower bound on f_d(m): a length d(m-1) system with no nonempty J, m | #union
    for m in range(2, 10):
        for d in range(1, 9):
            if d * (m - 1) > 8:
                break
            F = extremal_setsystem(d, m)
            assert len(F) == d * (m - 1) and F.max_degree() == d
            assert setsystem_count(F, m, 0) == 1
    # upper bound at prime powers: one more set always forces a nonempty J
    for m in (2, 3, 4, 5, 7):
        for sizes in combinations_with_replacement(range(m), m):
            assert setsystem_count(_disjoint_system(sizes), m, 0) >= 2
    for m in (2, 3, 4, 5):
        for d in (2, 3):
            n = d * (m - 1) + 1
            for _ in range(40):
                sets = [[] for _ in range(n)]
                for atom in range(rng.randint(1, 3 * n)):
                    for j in rng.sample(range(n), rng.randint(1, d)):
                        sets[j].append(atom)
                F = SetSystem(sets)
                assert F.max_degree() <= d
                assert setsystem_count(F, m, 0) >= 2


def test_criterion_11_egz_classic():
    start = time.perf_counter()
    for m in (2, 3, 4, 5):
        rep = egz_classic_verify(m)
        assert rep.passed, rep.to_json()
    assert egz_classic_verify(5).multisets_checked == 715
    assert time.perf_counter() - start < 60


def test_criterion_12_weighted_bounds():
    rng = random.Random(SEED)
    crosschecked = 0
    for _ in range(200):
        G = random_group(rng, max_order=27)
        n = rng.randint(1, 6)
        x = random_sequence(rng, G, n)
        box = random_weight_box(rng, G.p, n, max_size=3)
        g = 0 if rng.random() < 0.5 else G.to_json_element(rng.randrange(G.order))
        assert generalized_report(x, g, box).verdict in OK
        k = rng.randint(1, G.exps[-1])
        assert egz_report(x, box, k, g).verdict in OK
        equal = random_weight_box(rng, G.p, n, max_size=3, equal=True)
        assert dags_report(x, equal).verdict in OK + (Verdict.NOT_APPLICABLE,)
        crosschecked += indicator_crosscheck(box, k)
    assert crosschecked > 0


CLI_INVOCATIONS = [
    ["mbound", "--bins", "3,3,2", "--balls", "6"],
    ["delta", "--random", "6"],
    ["verify", "rvw2", "--random", "8"],
    ["verify", "warning2", "--random", "4"],
    ["verify", "chevalley", "--random", "4"],
    ["verify", "brink", "--random", "4"],
    ["verify", "schanuel", "--random", "4"],
    ["verify", "alonfuredi", "--random", "4"],
    ["verify", "rvw2", "--p", "3", "--box", "0,1,2", "--poly", "t1^2+t2^2+t3^2-1"],
    ["davenport", "--group", "2:1,2"],
    ["ngsum", "--random", "6"],
    ["gensub", "--random", "6"],
    ["egz", "--random", "6"],
    ["dags", "--random", "6"],
    ["setsystem", "--random", "6"],
]


def test_criterion_13_cli_determinism(capsys):
    for argv in CLI_INVOCATIONS:
        outs = []
        for workers in ("1", "2", "3"):
            code = cli.main(argv + ["--seed", "99", "--workers", workers])
            out, _ = capsys.readouterr()
            assert code == 0, argv
            outs.append(out)
        assert outs[0] == outs[1] == outs[2], argv
        json.loads(outs[0])
