"""Zero-sum combinatorics in finite commutative p-groups, with executable bounds.

Groups are G = Z/p^v1 + ... + Z/p^vr.  An element is stored as a
mixed-radix integer sum c_i * (p^v1 ... p^v(i-1)), so e_1 = 1, e_2 = p^v1
and so on; on the way in and out it is a coordinate list (or a plain
integer when r = 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb, prod
from typing import Sequence

from . import grid
from .balls_bins import equal_caps_closed_form, min_product
from .multipoly import MultiPoly
from .ring_core import PLocalRing, is_prime
from .schanuel_brink import RestrictedBox
from .warning_verify import CountReport, Verdict, lower_bound_verdict

GROUP_ORDER_GUARD = 2**14
DAVENPORT_ORDER_GUARD = 256
DAVENPORT_LENGTH_GUARD = 13
DAVENPORT_NODE_GUARD = 5 * 10**6
SUBSET_GUARD = 24
WEIGHT_GRID_GUARD = 10**7
UNION_POLY_GUARD = 16
UNION_POLY_VERIFY_LIMIT = 12
EXTREMAL_GUARD = 16
EGZ_CLASSIC_GUARD = 5
CROSSCHECK_GUARD = 10**6


# ---------------------------------------------------------------------------
# groups and sequences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupSpec:
    p: int
    exps: tuple[int, ...]

    def __init__(self, p: int, exps: Sequence[int]):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        exps = tuple(sorted(int(v) for v in exps))
        if not exps:
            raise ValueError("a group needs at least one cyclic factor")
        if exps[0] < 1:
            raise ValueError("exponents must be positive")
        if p ** sum(exps) > GROUP_ORDER_GUARD:
            raise ValueError(f"group order {p ** sum(exps)} exceeds guard {GROUP_ORDER_GUARD}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "exps", exps)

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        """``"2:1,2"`` is Z/2 + Z/4."""
        try:
            p, exps = text.split(":")
            return cls(int(p), [int(v) for v in exps.split(",")])
        except ValueError as exc:
            raise ValueError(f"bad group {text!r} (expected p:v1,v2,...): {exc}") from None

    @property
    def moduli(self) -> tuple[int, ...]:
        return tuple(self.p**v for v in self.exps)

    @property
    def rank(self) -> int:
        return len(self.exps)

    @property
    def order(self) -> int:
        return prod(self.moduli)

    @property
    def exponent(self) -> int:
        return self.p ** self.exps[-1]

    @property
    def d_invariant(self) -> int:
        """d(G) = 1 + sum (p^vi - 1), the lower bound for the Davenport constant."""
        return 1 + sum(m - 1 for m in self.moduli)

    def encode(self, coords: Sequence[int]) -> int:
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {list(coords)}")
        idx, scale = 0, 1
        for c, m in zip(coords, self.moduli):
            idx += (int(c) % m) * scale
            scale *= m
        return idx

    def decode(self, idx: int) -> tuple[int, ...]:
        out = []
        for m in self.moduli:
            idx, c = divmod(idx, m)
            out.append(c)
        return tuple(out)

    def element(self, x) -> int:
        """Accept a coordinate list, or an integer for cyclic groups (0 works in any group)."""
        if isinstance(x, int):
            if self.rank != 1 and x != 0:
                raise ValueError(f"element {x} needs {self.rank} coordinates")
            return x % self.moduli[0] if self.rank == 1 else 0
        return self.encode(list(x))

    def to_json_element(self, idx: int):
        coords = self.decode(idx)
        return coords[0] if self.rank == 1 else list(coords)

    def add(self, a: int, b: int) -> int:
        return self.encode([x + y for x, y in zip(self.decode(a), self.decode(b))])

    def scale(self, k: int, a: int) -> int:
        return self.encode([k * x for x in self.decode(a)])

    def translation(self, x: int) -> list[int]:
        """perm[s] = s + x for every element s."""
        dx = self.decode(x)
        return [self.encode([a + b for a, b in zip(self.decode(s), dx)]) for s in range(self.order)]

    def to_json(self) -> dict:
        return {"p": self.p, "exps": list(self.exps)}


@dataclass(frozen=True)
class GSequence:
    group: GroupSpec
    entries: tuple[int, ...]

    def __init__(self, group: GroupSpec, entries: Sequence):
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "entries", tuple(group.element(x) for x in entries))

    def __len__(self):
        return len(self.entries)

    def to_json(self) -> list:
        return [self.group.to_json_element(x) for x in self.entries]


def _sequence_sum_table(group: GroupSpec, weights_by_entry):
    """Distribution of sum a_i x_i over a product of per-entry weight multisets.

    ``weights_by_entry`` is a list of (x_i, A_i); returns counts indexed by element.
    """
    counts = [0] * group.order
    counts[0] = 1
    for x, weights in weights_by_entry:
        shifts = [group.translation(group.scale(a, x)) for a in weights]
        new = [0] * group.order
        for s, c in enumerate(counts):
            if c:
                for perm in shifts:
                    new[perm[s]] += c
        counts = new
    return counts


# ---------------------------------------------------------------------------
# Davenport constant
# ---------------------------------------------------------------------------


@dataclass
class DavenportResult:
    group: GroupSpec
    D: int
    witness: tuple[int, ...]
    nodes: int

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json(),
            "D": self.D,
            "d": self.group.d_invariant,
            "witness": [self.group.to_json_element(x) for x in self.witness],
        }


def davenport_constant(group: GroupSpec, node_guard: int = DAVENPORT_NODE_GUARD) -> DavenportResult:
    """Least D such that every length-D sequence has a nonempty zero-sum subsequence.

    Zero-sum-freeness is inherited by sub-multisets, so a depth-first search
    over nondecreasing zero-sum-free multisets finds the longest one; the
    set of nonempty subset sums is carried along as a bitmask.  The witness
    is the lexicographically first longest such multiset.
    """
    if group.order > DAVENPORT_ORDER_GUARD:
        raise ValueError(f"#G = {group.order} exceeds guard {DAVENPORT_ORDER_GUARD}")
    if group.d_invariant > DAVENPORT_LENGTH_GUARD:
        raise ValueError(f"d(G) = {group.d_invariant} exceeds guard {DAVENPORT_LENGTH_GUARD}")
    order = group.order
    perms = [group.translation(x) for x in range(order)]
    negs = [group.scale(-1, x) for x in range(order)]
    best: list[int] = []
    path: list[int] = []
    nodes = 0

    def shifted(mask: int, x: int) -> int:
        perm = perms[x]
        out = 0
        while mask:
            low = mask & -mask
            out |= 1 << perm[low.bit_length() - 1]
            mask ^= low
        return out

    def rec(start: int, sums: int):
        nonlocal best, nodes
        nodes += 1
        if nodes > node_guard:
            raise ValueError(f"Davenport search exceeded {node_guard} nodes")
        if len(path) > len(best):
            best = list(path)
        if len(best) == order - 1:
            return
        for x in range(max(start, 1), order):
            if (sums >> negs[x]) & 1:
                continue
            path.append(x)
            rec(x, sums | shifted(sums, x) | (1 << x))
            path.pop()
            if len(best) == order - 1:
                return

    rec(1, 0)
    D = len(best) + 1
    assert group.d_invariant <= D <= order, (group, D)
    return DavenportResult(group, D, tuple(best), nodes)


def has_zero_sum_subsequence(group: GroupSpec, seq: Sequence[int]) -> bool:
    sums = 0
    for x in seq:
        if x == 0:
            return True
        perm = group.translation(x)
        new = sums | (1 << x)
        for s in range(group.order):
            if (sums >> s) & 1:
                new |= 1 << perm[s]
        if new & 1:
            return True
        sums = new
    return False


# ---------------------------------------------------------------------------
# g-sum subsequences
# ---------------------------------------------------------------------------


def _check_subset_guard(n: int):
    if n > SUBSET_GUARD:
        raise ValueError(f"length {n} exceeds subset guard {SUBSET_GUARD}")


def gsum_count(x: GSequence, g) -> int:
    """N_g(x): subsets J (including the empty one) with sum_{i in J} x_i = g."""
    _check_subset_guard(len(x))
    g = x.group.element(g)
    return _sequence_sum_table(x.group, [(e, (0, 1)) for e in x.entries])[g]


def ng_bound_report(x: GSequence, g) -> CountReport:
    """N_g(x) = 0 or N_g(x) >= 2^(n - sum (p^vi - 1))."""
    group = x.group
    n = len(x)
    count = gsum_count(x, g)
    budget = group.d_invariant - 1
    bound = 2 ** max(n - budget, 0)
    extras = {
        "group": group.to_json(),
        "sequence": x.to_json(),
        "target": group.to_json_element(group.element(g)),
        "davenport_form_bound": 2 ** max(n + 1 - group.d_invariant, 0),
    }
    return CountReport(count, bound, budget, lower_bound_verdict(count, bound), "ng_lower_bound", extras)


@dataclass
class MinimumReport:
    group: GroupSpec
    n: int
    minimum: int
    predicted: int
    minimiser: tuple[int, ...]
    multisets: int

    @property
    def passed(self) -> bool:
        return self.minimum == self.predicted

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json(),
            "n": self.n,
            "minimum": self.minimum,
            "predicted": self.predicted,
            "minimiser": [self.group.to_json_element(e) for e in self.minimiser],
            "multisets": self.multisets,
            "verdict": (Verdict.HOLDS if self.passed else Verdict.VIOLATED).value,
        }


def ng_minimum_report(group: GroupSpec, n: int, multiset_guard: int = 10**5) -> MinimumReport:
    """min over length-n multisets of N_0 against max(1, 2^(n + 1 - D(G))), D(G) found by search."""
    _check_subset_guard(n)
    total = comb(group.order + n - 1, n)
    if total > multiset_guard:
        raise ValueError(f"{total} multisets exceed guard {multiset_guard}")
    D = davenport_constant(group).D
    best, arg = None, None
    for ms in combinations_with_replacement(range(group.order), n):
        c = gsum_count(GSequence(group, [group.to_json_element(e) for e in ms]), 0)
        if best is None or c < best:
            best, arg = c, ms
    predicted = 2 ** (n + 1 - D) if n + 1 >= D else 1
    return MinimumReport(group, n, best, predicted, arg, total)


# ---------------------------------------------------------------------------
# generalized (weighted) subsequences
# ---------------------------------------------------------------------------


def _weight_box(x: GSequence, box: RestrictedBox, guard: int):
    if box.p != x.group.p:
        raise ValueError(f"box prime {box.p} differs from group prime {x.group.p}")
    if box.n != len(x):
        raise ValueError(f"box has {box.n} coordinates, sequence has length {len(x)}")
    grid.check_guard(box.sets, guard, "weight grid")


def weight_box(p: int, sets: Sequence[Sequence[int]]) -> RestrictedBox:
    """A restricted box in which every A_i contains 0."""
    box = RestrictedBox(p, sets)
    for i, s in enumerate(box.sets):
        if 0 not in s:
            raise ValueError(f"A_{i + 1} = {list(s)} does not contain 0")
    return box


def generalized_count(x: GSequence, g, box: RestrictedBox, guard: int = WEIGHT_GRID_GUARD) -> int:
    """N_{g,A}(x) = #{a in A : a_1 x_1 + ... + a_n x_n = g}."""
    _weight_box(x, box, guard)
    g = x.group.element(g)
    return _sequence_sum_table(x.group, list(zip(x.entries, box.sets)))[g]


class _WeightedSumPredicate:
    def __init__(self, group: GroupSpec, entries, target, nonzero: bool):
        self.group = group
        self.entries = [group.decode(e) for e in entries]
        self.target = group.decode(target)
        self.moduli = group.moduli
        self.nonzero = nonzero

    def __call__(self, a):
        if self.nonzero and not any(a):
            return False
        for k, m in enumerate(self.moduli):
            if sum(w * e[k] for w, e in zip(a, self.entries)) % m != self.target[k] % m:
                return False
        return True


def generalized_report(x: GSequence, g, box: RestrictedBox, workers: int = 1,
                       guard: int = WEIGHT_GRID_GUARD) -> CountReport:
    """N_{g,A}(x) = 0 or >= m(#A_1..#A_n; sum #A_i - sum (p^vi - 1)), plus the count != 1 check."""
    count = generalized_count(x, g, box, guard)
    group = x.group
    gi = group.element(g)
    budget = group.d_invariant - 1
    bound = min_product(box.sizes, sum(box.sizes) - budget)
    verdict = lower_bound_verdict(count, bound)
    slack = sum(s - 1 for s in box.sizes)
    hypothesis = slack > budget
    extras = {
        "group": group.to_json(),
        "sequence": x.to_json(),
        "target": group.to_json_element(gi),
        "box": [list(s) for s in box.sets],
        "not_one_hypothesis": hypothesis,
    }
    if hypothesis and count == 1:
        verdict = Verdict.VIOLATED
    if all(0 in s for s in box.sets) and gi == 0:
        witness = grid.find_first(_WeightedSumPredicate(group, x.entries, 0, True), box.sets, workers)
        extras["nonzero_witness"] = list(witness) if witness else None
        if hypothesis and witness is None:
            verdict = Verdict.VIOLATED
    return CountReport(count, bound, budget, verdict, "generalized_lower_bound", extras)


# ---------------------------------------------------------------------------
# set systems
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SetSystem:
    sets: tuple[frozenset, ...]

    def __init__(self, sets: Sequence[Sequence[int]]):
        clean = []
        for s in sets:
            s = frozenset(int(a) for a in s)
            if any(a < 0 for a in s):
                raise ValueError("atoms must be non-negative integers")
            clean.append(s)
        object.__setattr__(self, "sets", tuple(clean))

    def __len__(self):
        return len(self.sets)

    @property
    def atoms(self) -> list[int]:
        return sorted(set().union(*self.sets)) if self.sets else []

    def max_degree(self) -> int:
        if not self.sets:
            return 0
        return max((sum(a in s for s in self.sets) for a in self.atoms), default=0)

    def masks(self) -> list[int]:
        pos = {a: k for k, a in enumerate(self.atoms)}
        return [sum(1 << pos[a] for a in s) for s in self.sets]

    def union_size(self, J) -> int:
        return len(set().union(*(self.sets[j] for j in J))) if J else 0

    def to_json(self) -> list:
        return [sorted(s) for s in self.sets]


def union_poly(F: SetSystem, verify: bool = True) -> MultiPoly:
    """h(t) = sum_{J != 0} (-1)^(#J+1) #(cap_{j in J} F_j) prod_{j in J} t_j.

    Subsets whose intersection is already empty are pruned with all their
    supersets.  With ``verify`` the identity h(x) = #(union over x_j = 1)
    is checked on all of {0,1}^n for n up to 12.
    """
    n = len(F)
    if n > UNION_POLY_GUARD:
        raise ValueError(f"length {n} exceeds inclusion-exclusion guard {UNION_POLY_GUARD}")
    terms = {}
    masks = F.masks()

    def rec(start: int, chosen: list[int], inter: int):
        for j in range(start, n):
            cut = inter & masks[j] if chosen else masks[j]
            if not cut:
                continue
            chosen.append(j)
            mono = [0] * n
            for c in chosen:
                mono[c] = 1
            terms[tuple(mono)] = (-1) ** (len(chosen) + 1) * bin(cut).count("1")
            rec(j + 1, chosen, cut)
            chosen.pop()

    rec(0, [], 0)
    h = MultiPoly(n, terms)
    if h and h.total_degree() > F.max_degree():
        raise AssertionError("deg h exceeds the maximal degree")
    if verify and n <= UNION_POLY_VERIFY_LIMIT:
        for x in grid.iter_range([(0, 1)] * n, 0, 2**n):
            J = [j for j in range(n) if x[j]]
            if h.evaluate(x) != F.union_size(J):
                raise AssertionError(f"inclusion-exclusion identity fails at {x}")
    return h


def union_size_counts(F: SetSystem) -> dict[int, int]:
    """Histogram of #(union_{j in J} F_j) over all 2^n subsets J."""
    n = len(F)
    _check_subset_guard(n)
    masks = F.masks()
    hist: dict[int, int] = {}

    def rec(j: int, union: int):
        if j == n:
            size = bin(union).count("1")
            hist[size] = hist.get(size, 0) + 1
            return
        rec(j + 1, union)
        rec(j + 1, union | masks[j])

    rec(0, 0)
    return hist


def setsystem_count(F: SetSystem, m: int, g: int) -> int:
    """N_F(m, g) = #{J : #(union_{j in J} F_j) == g mod m}."""
    if m < 1:
        raise ValueError("m must be positive")
    return sum(c for size, c in union_size_counts(F).items() if (size - g) % m == 0)


def prime_power(m: int) -> tuple[int, int] | None:
    if m < 2:
        return None
    for p in range(2, m + 1):
        if m % p == 0:
            v = 0
            while m % p == 0:
                m //= p
                v += 1
            return (p, v) if m == 1 else None
    return None


def setsystem_report(F: SetSystem, m: int, g: int) -> CountReport:
    """For m = p^v: N_F(m, g) = 0 or N_F(m, g) >= 2^(n - d(m - 1))."""
    count = setsystem_count(F, m, g)
    n, d = len(F), F.max_degree()
    extras = {"sets": F.to_json(), "modulus": m, "target": g % m, "max_degree": d}
    if prime_power(m) is None:
        return CountReport(count, 0, 0, Verdict.NOT_APPLICABLE, "setsystem", extras)
    budget = d * (m - 1)
    bound = 2 ** max(n - budget, 0)
    return CountReport(count, bound, budget, lower_bound_verdict(count, bound), "setsystem_lower_bound", extras)


def extremal_setsystem(d: int, m: int) -> SetSystem:
    """Length d(m-1), maximal degree d, and no nonempty J with m | #union.

    Sets A_ij (1 <= i <= m-1, 1 <= j <= d) of m fresh atoms each, with a
    marker atom v_i shared by the d sets in row i; a union then has size
    == (number of rows touched) mod m, which lies in [1, m-1].
    """
    if d < 1 or m < 1:
        raise ValueError("d and m must be positive")
    if d * (m - 1) > EXTREMAL_GUARD:
        raise ValueError(f"length {d * (m - 1)} exceeds guard {EXTREMAL_GUARD}")
    sets = []
    marker_base = (m - 1) * d * m
    atom = 0
    for i in range(m - 1):
        for _ in range(d):
            sets.append(list(range(atom, atom + m)) + [marker_base + i])
            atom += m
    F = SetSystem(sets)
    if len(F) and F.max_degree() != d:
        raise AssertionError("extremal system has the wrong maximal degree")
    if setsystem_count(F, m, 0) != 1:
        raise AssertionError("extremal system has a nonempty union divisible by m")
    return F


# ---------------------------------------------------------------------------
# EGZ-type counts
# ---------------------------------------------------------------------------


def indicator_poly(A: Sequence[int], p: int) -> MultiPoly:
    """C_A(t) = 1 - prod_{a in A, a != 0} (a - t)/a over Z_(p): 0 at 0, 1 elsewhere on A."""
    A = tuple(int(a) for a in A)
    RestrictedBox(p, [A])
    if 0 not in A:
        raise ValueError("A must contain 0")
    ring = PLocalRing(p)
    prod_poly = MultiPoly.constant(ring.one, 1)
    for a in A:
        if a:
            prod_poly = prod_poly * MultiPoly.univariate([ring.one, ring(-1, a)])
    C = MultiPoly.constant(ring.one, 1) - prod_poly
    if C and C.total_degree() != len(A) - 1:
        raise AssertionError("deg C_A differs from #A - 1")
    for a in A:
        want = 0 if a == 0 else 1
        if C.evaluate((ring(a),)) != want:
            raise AssertionError(f"C_A({a}) != {want}")
    return C


def egz_count(x: GSequence, box: RestrictedBox, k: int, g=0, guard: int = WEIGHT_GRID_GUARD) -> int:
    """EGZ_{A,k}(x): a in A with sum a_i x_i = g and p^k | #{i : a_i != 0}."""
    _weight_box(x, box, guard)
    if k < 1:
        raise ValueError("k must be positive")
    group = x.group
    g = group.element(g)
    mod = group.p**k
    # state: (group element, support size mod p^k)
    counts = {(0, 0): 1}
    for e, weights in zip(x.entries, box.sets):
        moves = [(group.translation(group.scale(a, e)), 1 if a else 0) for a in weights]
        new: dict = {}
        for (s, c), num in counts.items():
            for perm, step in moves:
                key = (perm[s], (c + step) % mod)
                new[key] = new.get(key, 0) + num
        counts = new
    return counts.get((g, 0), 0)


def egz_bound(x: GSequence, box: RestrictedBox, k: int) -> tuple[int, int]:
    """(bound, budget) with budget = sum (p^vi - 1) + (a_M - 1)(p^k - 1)."""
    a_max = max(box.sizes)
    budget = (x.group.d_invariant - 1) + (a_max - 1) * (x.group.p**k - 1)
    return min_product(box.sizes, sum(box.sizes) - budget), budget


def egz_report(x: GSequence, box: RestrictedBox, k: int, g=0) -> CountReport:
    count = egz_count(x, box, k, g)
    bound, budget = egz_bound(x, box, k)
    group = x.group
    extras = {
        "group": group.to_json(),
        "sequence": x.to_json(),
        "target": group.to_json_element(group.element(g)),
        "box": [list(s) for s in box.sets],
        "k": k,
    }
    return CountReport(count, bound, budget, lower_bound_verdict(count, bound), "egz_lower_bound", extras)


def indicator_crosscheck(box: RestrictedBox, k: int, guard: int = CROSSCHECK_GUARD) -> int:
    """Check sum_i C_{A_i}(a_i) == 0 mod p^k  <=>  p^k | #support at every a in A.

    Returns the number of tuples checked.
    """
    grid.check_guard(box.sets, guard, "cross-check grid")
    p = box.p
    mod = p**k
    ring = PLocalRing(p)
    tables = []
    for s in box.sets:
        C = indicator_poly(s, p)
        tables.append({a: C.evaluate((ring(a),)) for a in s})
    checked = 0
    for a in box.points():
        total = ring.zero
        for t, ai in zip(tables, a):
            total = total + t[ai]
        support = sum(1 for ai in a if ai)
        if (total.reduce(mod) == 0) != (support % mod == 0):
            raise AssertionError(f"indicator cross-check fails at {a}")
        checked += 1
    return checked


def dags_bound(group: GroupSpec, a: int, n: int) -> int | None:
    """(R+1) a^(n + 1 - exp G + floor((1 - D)/(a - 1))) when the length hypothesis holds."""
    if a < 2:
        return None
    D, E = group.d_invariant, group.exponent
    if (n - E + 1) * (a - 1) < D:
        return None
    R = (-(D - 1)) % (a - 1)
    k = n + 1 - E + (1 - D) // (a - 1)
    value = (R + 1) * a**k
    # the same number through the balls-in-bins minimum
    N = n * a - (D - 1) - (a - 1) * (E - 1)
    assert value == equal_caps_closed_form(a, n, N) == min_product([a] * n, N)
    return value


def dags_report(x: GSequence, box: RestrictedBox) -> CountReport:
    """EGZ_{A, v_r}(0) against the equal-weight-set bound; a nonempty witness must exist."""
    if len(set(box.sets)) > 1:
        raise ValueError("all weight sets must be equal")
    if any(0 not in s for s in box.sets):
        raise ValueError("weight sets must contain 0")
    group = x.group
    n = len(x)
    a = box.sizes[0] if n else 1
    k = group.exps[-1]
    count = egz_count(x, box, k, 0)
    bound = dags_bound(group, a, n)
    extras = {
        "group": group.to_json(),
        "sequence": x.to_json(),
        "box": [list(s) for s in box.sets],
        "k": k,
        "exponent": group.exponent,
        "D": group.d_invariant,
        "hypothesis": bound is not None,
    }
    if bound is None:
        return CountReport(count, 0, 0, Verdict.NOT_APPLICABLE, "dags", extras)
    budget = (group.d_invariant - 1) + (a - 1) * (group.exponent - 1)
    verdict = Verdict.HOLDS if count >= bound and count >= 2 else Verdict.VIOLATED
    return CountReport(count, bound, budget, verdict, "dags", extras)


@dataclass
class EGZClassicReport:
    m: int
    multisets_checked: int
    failures: list
    extremal_clear: bool

    @property
    def passed(self) -> bool:
        return not self.failures and self.extremal_clear

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "multisets_checked": self.multisets_checked,
            "failures": [list(f) for f in self.failures],
            "extremal_sequence_has_none": self.extremal_clear,
            "verdict": (Verdict.HOLDS if self.passed else Verdict.VIOLATED).value,
        }


def _has_zero_sum_of_length(seq: Sequence[int], m: int, length: int) -> bool:
    # reach[c] = set of sums of c-element subsequences
    reach = [set() for _ in range(length + 1)]
    reach[0].add(0)
    for x in seq:
        for c in range(length, 0, -1):
            reach[c] |= {(s + x) % m for s in reach[c - 1]}
    return 0 in reach[length]


def egz_classic_verify(m: int) -> EGZClassicReport:
    """Every length 2m-1 sequence in Z/m has a zero-sum subsequence of length m."""
    if m < 1:
        raise ValueError("m must be positive")
    if m > EGZ_CLASSIC_GUARD:
        raise ValueError(f"m = {m} exceeds guard {EGZ_CLASSIC_GUARD}")
    failures = []
    checked = 0
    for ms in combinations_with_replacement(range(m), 2 * m - 1):
        checked += 1
        if not _has_zero_sum_of_length(ms, m, m):
            failures.append(ms)
    extremal = [0] * (m - 1) + [1] * (m - 1)
    clear = not _has_zero_sum_of_length(extremal, m, m)
    return EGZClassicReport(m, checked, failures, clear)
