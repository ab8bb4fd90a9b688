"""Seeded random instances for the verifiers.

Every generator takes a ``random.Random`` so a seed pins the whole stream.
"""

from __future__ import annotations

import random
from itertools import combinations_with_replacement, product
from math import comb
from typing import Iterator, Sequence

from .multipoly import MultiPoly
from .ring_core import FqField
from .schanuel_brink import RestrictedBox
from .warning_verify import CongruenceSystem, FqSystem
from .zerosum_apps import GroupSpec, GSequence, SetSystem

# the top delta iterate of a degree-d polynomial in n variables has degree
# p^(v-1) d; beyond this many possible monomials the exact arithmetic is slow
EQUIV_MONOMIAL_BUDGET = 5000

SMALL_GROUPS = [
    (2, (1,)), (2, (2,)), (2, (1, 1)), (2, (3,)), (2, (1, 2)), (2, (1, 1, 1)),
    (2, (4,)), (2, (2, 2)), (2, (1, 3)), (2, (1, 1, 2)),
    (3, (1,)), (3, (2,)), (3, (1, 1)), (3, (3,)), (3, (1, 2)), (3, (1, 1, 1)),
    (5, (1,)), (5, (2,)),
]


def monomials(nvars: int, max_deg: int, min_deg: int = 0) -> list[tuple[int, ...]]:
    out = [m for m in product(range(max_deg + 1), repeat=nvars) if min_deg <= sum(m) <= max_deg]
    return sorted(out, key=lambda m: (sum(m), m))


def random_poly(rng: random.Random, nvars: int, deg: int, coeff_bound: int = 5, density: float = 0.6) -> MultiPoly:
    """An integer polynomial of total degree exactly ``deg`` (deg 0: a nonzero constant)."""
    terms = {}
    for m in monomials(nvars, deg):
        if rng.random() < density:
            terms[m] = rng.randint(-coeff_bound, coeff_bound)
    top = [m for m in monomials(nvars, deg, deg)]
    lead = rng.choice(top)
    terms[lead] = rng.choice([c for c in range(-coeff_bound, coeff_bound + 1) if c])
    return MultiPoly(nvars, terms)


def random_box(rng: random.Random, p: int, n: int, max_size: int | None = None, spread: int = 2,
               with_zero: bool = False) -> RestrictedBox:
    """Each A_i picks distinct residues mod p and a random lift of each in [-spread p, spread p)."""
    max_size = min(max_size or p, p)
    sets = []
    for _ in range(n):
        size = rng.randint(1, max_size)
        if with_zero:
            residues = [0] + rng.sample(range(1, p), size - 1)
        else:
            residues = rng.sample(range(p), size)
        lifted = []
        for r in residues:
            if with_zero and r == 0:
                lifted.append(0)
            else:
                lifted.append(r + p * rng.randrange(-spread, spread))
        sets.append(sorted(lifted))
    return RestrictedBox(p, sets)


def equiv_monomial_count(p: int, v: int, d: int, n: int) -> int:
    return comb(p ** (v - 1) * d + n, n)


def equiv_instance(rng: random.Random, primes=(2, 3, 5), max_n=3, max_deg=3, max_v=3,
                   budget: int = EQUIV_MONOMIAL_BUDGET):
    """(f, box, v) with deg f <= 3, n <= 3, v <= 3, #A_i <= p, within the monomial budget."""
    while True:
        p = rng.choice(primes)
        n = rng.randint(1, max_n)
        d = rng.randint(0, max_deg)
        v = rng.randint(1, max_v)
        if equiv_monomial_count(p, v, d, n) <= budget:
            break
    return random_poly(rng, n, d), random_box(rng, p, n), v


def congruence_system_instance(rng: random.Random, primes=(2, 3), max_n=4, max_r=2, max_v=2, max_deg=2,
                               budget: int = EQUIV_MONOMIAL_BUDGET, anchor: float = 0.5):
    """(CongruenceSystem, box) within the given ranges.

    With probability ``anchor`` the constant terms are shifted so that a
    random box point is a solution, which keeps most instances non-vacuous.
    """
    while True:
        p = rng.choice(primes)
        n = rng.randint(1, max_n)
        r = rng.randint(1, max_r)
        degs = [rng.randint(0, max_deg) for _ in range(r)]
        exps = [rng.randint(1, max_v) for _ in range(r)]
        if all(equiv_monomial_count(p, v, d, n) <= budget for d, v in zip(degs, exps)):
            break
    polys = [random_poly(rng, n, d) for d in degs]
    box = random_box(rng, p, n)
    if rng.random() < anchor:
        pt = tuple(rng.choice(s) for s in box.sets)
        polys = [f - f.evaluate(pt) for f in polys]
    return CongruenceSystem(p, polys, exps), box


def _projective_vectors(q: int, length: int, must_touch: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Coefficient index vectors up to scalar: first nonzero entry is 1, some entry in must_touch nonzero."""
    touch = set(must_touch)
    for lead in range(length):
        for rest in product(range(q), repeat=length - lead - 1):
            vec = (0,) * lead + (1,) + rest
            if any(vec[i] for i in touch):
                yield vec


def fq_polys_of_degree(field: FqField, nvars: int, deg: int) -> list[MultiPoly]:
    """Every polynomial of total degree exactly ``deg``, up to a nonzero scalar."""
    monos = monomials(nvars, deg)
    top = [k for k, m in enumerate(monos) if sum(m) == deg]
    out = []
    for vec in _projective_vectors(field.q, len(monos), top):
        terms = {m: field.from_index(c) for m, c in zip(monos, vec) if c}
        out.append(MultiPoly(nvars, terms))
    return out


def degree_profiles(n: int) -> list[tuple[int, ...]]:
    """Nonincreasing tuples of positive degrees with sum below n."""
    out = []

    def rec(prefix, left, cap):
        if prefix:
            out.append(tuple(prefix))
        for d in range(min(left, cap), 0, -1):
            rec(prefix + [d], left - d, d)

    rec([], n - 1, n - 1)
    return out


def fq_low_degree_systems(field: FqField, n: int, rng: random.Random | None = None,
                          exhaustive_limit: int = 60000, sample: int = 2000) -> Iterator[tuple[tuple[int, ...], bool, FqSystem]]:
    """Systems over GF(q) in n variables with sum deg P_j < n.

    For each degree profile the systems are enumerated exhaustively (up to
    scalars and reordering of equal-degree members) when there are at most
    ``exhaustive_limit``; otherwise ``sample`` are drawn with ``rng``.
    Yields (profile, exhaustive, system).
    """
    for profile in degree_profiles(n):
        pools = {d: fq_polys_of_degree(field, n, d) for d in set(profile)}
        groups = [(d, profile.count(d)) for d in sorted(set(profile), reverse=True)]
        total = 1
        for d, k in groups:
            total *= comb(len(pools[d]) + k - 1, k)
        if total <= exhaustive_limit:
            choices = [list(combinations_with_replacement(range(len(pools[d])), k)) for d, k in groups]
            for pick in product(*choices):
                polys = [pools[d][i] for (d, _), idxs in zip(groups, pick) for i in idxs]
                yield profile, True, FqSystem(field, polys)
        else:
            if rng is None:
                raise ValueError(f"profile {profile} has {total} systems; pass an rng to sample")
            for _ in range(sample):
                polys = [rng.choice(pools[d]) for d, k in groups for _ in range(k)]
                yield profile, False, FqSystem(field, polys)


def random_group(rng: random.Random, max_order: int = 27) -> GroupSpec:
    choices = [(p, e) for p, e in SMALL_GROUPS if p ** sum(e) <= max_order]
    p, e = rng.choice(choices)
    return GroupSpec(p, e)


def random_sequence(rng: random.Random, group: GroupSpec, n: int) -> GSequence:
    return GSequence(group, [group.to_json_element(rng.randrange(group.order)) for _ in range(n)])


def random_element(rng: random.Random, group: GroupSpec, zero_bias: float = 0.5):
    if rng.random() < zero_bias:
        return group.to_json_element(0)
    return group.to_json_element(rng.randrange(group.order))


def random_weight_box(rng: random.Random, p: int, n: int, max_size: int = 3, equal: bool = False) -> RestrictedBox:
    """Weight sets containing 0, of size at most min(p, max_size)."""
    if equal:
        one = random_box(rng, p, 1, min(p, max_size), with_zero=True).sets[0]
        return RestrictedBox(p, [one] * n)
    return random_box(rng, p, n, min(p, max_size), with_zero=True)


def random_setsystem(rng: random.Random, max_n: int = 10, max_d: int = 3, max_atoms: int = 8):
    """(F, d): each atom joins at most d of the n sets, so F has maximal degree <= d."""
    n = rng.randint(1, max_n)
    d = rng.randint(1, max_d)
    sets = [[] for _ in range(n)]
    for atom in range(rng.randint(1, max_atoms)):
        for j in rng.sample(range(n), rng.randint(0, min(d, n))):
            sets[j].append(atom)
    return SetSystem(sets), d
