"""The Schanuel-Brink operator over Z_(p).

Given a box A = A_1 x ... x A_n of integers, each A_i pairwise incongruent
mod p, we interpolate tau_i with tau_i(a) = (a - a^p)/p on A_i and put
sigma_i(x) = x^p + p*tau_i(x), so sigma_i fixes A_i pointwise and
sigma_i == x^p mod p.  The operator

    delta(f) = (f^p - f(sigma_1(t_1), ..., sigma_n(t_n))) / p

keeps p-integral polynomials p-integral, multiplies degree by at most p,
and on box points acts as c -> (c^p - c)/p.  Iterating it turns a single
congruence f == 0 mod p^v on A into v congruences mod p.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import grid
from .multipoly import (
    MultiPoly,
    compile_terms,
    embed_univariate,
    eval_compiled_mod,
    lagrange_interpolate,
)
from .ring_core import PLocalRing, PLocalRational, is_prime

MAX_DELTA_ITERATIONS = 4
MAX_EQUIV_V = 4
EQUIV_GRID_GUARD = 10**6


@dataclass(frozen=True)
class RestrictedBox:
    """A product of finite integer sets whose members are distinct mod p."""

    p: int
    sets: tuple[tuple[int, ...], ...]

    def __init__(self, p: int, sets: Sequence[Sequence[int]]):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        clean = []
        for i, s in enumerate(sets):
            s = tuple(int(a) for a in s)
            if not s:
                raise ValueError(f"A_{i + 1} is empty")
            residues = [a % p for a in s]
            if len(set(residues)) != len(residues):
                raise ValueError(f"A_{i + 1} = {list(s)} has elements congruent modulo {p}")
            clean.append(s)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "sets", tuple(clean))

    @classmethod
    def uniform(cls, p: int, values: Sequence[int], n: int) -> "RestrictedBox":
        return cls(p, [values] * n)

    @property
    def n(self) -> int:
        return len(self.sets)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.sets)

    @property
    def size(self) -> int:
        return grid.grid_size(self.sets)

    def points(self):
        return grid.iter_range(self.sets, 0, self.size)

    def is_boolean(self) -> bool:
        return all(sorted(s) == [0, 1] for s in self.sets)

    def to_json(self) -> dict:
        return {"p": self.p, "sets": [list(s) for s in self.sets]}


@dataclass(frozen=True)
class SBContext:
    box: RestrictedBox
    taus: tuple[MultiPoly, ...]
    sigmas: tuple[MultiPoly, ...]
    sigma_slots: tuple[MultiPoly, ...] = field(repr=False)

    @property
    def p(self) -> int:
        return self.box.p

    @property
    def ring(self) -> PLocalRing:
        return PLocalRing(self.box.p)


def _to_plocal(c, ring: PLocalRing) -> PLocalRational:
    if isinstance(c, PLocalRational):
        return ring.coerce(c)
    f = Fraction(c)
    if f.denominator % ring.p == 0:
        raise ValueError("incongruence certificate violated: tau coefficient is not p-integral")
    return PLocalRational(f.numerator, f.denominator, ring)


def as_plocal(f: MultiPoly, p: int) -> MultiPoly:
    """Coerce int/Fraction coefficients into Z_(p)."""
    ring = PLocalRing(p)
    return f.map_coefficients(ring.coerce)


def build_context(box: RestrictedBox) -> SBContext:
    p = box.p
    ring = PLocalRing(p)
    taus, sigmas, slots = [], [], []
    x_p = MultiPoly.univariate([0] * p + [ring.one])
    for i, A in enumerate(box.sets):
        values = [(a - a**p) // p for a in A]
        tau_q = lagrange_interpolate(A, values)
        tau = tau_q.map_coefficients(lambda c: _to_plocal(c, ring))
        sigma = x_p + tau * p
        _check_sigma(A, tau, sigma, x_p, p)
        taus.append(tau)
        sigmas.append(sigma)
        slots.append(embed_univariate(sigma, i, box.n))
    return SBContext(box, tuple(taus), tuple(sigmas), tuple(slots))


def _check_sigma(A, tau, sigma, x_p, p):
    if tau and tau.total_degree() >= p:
        raise AssertionError(f"deg tau = {tau.total_degree()} is not below p = {p}")
    if sigma.total_degree() != p:
        raise AssertionError("deg sigma differs from p")
    for a in A:
        if sigma.evaluate((a,)) != a:
            raise AssertionError(f"sigma does not fix {a}")
    if (sigma - x_p).map_coefficients(p):
        raise AssertionError("sigma is not congruent to x^p modulo p")


def delta(f: MultiPoly, ctx: SBContext) -> MultiPoly:
    """One application of the operator; the input is coerced into Z_(p)[t]."""
    if f.nvars != ctx.box.n:
        raise ValueError(f"polynomial has {f.nvars} variables, box has {ctx.box.n}")
    p = ctx.p
    f = as_plocal(f, p)
    if not f:
        return f
    numerator = f**p - f.compose(ctx.sigma_slots)
    terms = {}
    for m, c in numerator.terms.items():
        if c.num % p:
            raise ArithmeticError(
                f"Delta numerator coefficient {c} at {m} is not divisible by {p}"
            )
        terms[m] = c.div_p()
    out = MultiPoly(f.nvars, terms)
    if out.total_degree() > p * f.total_degree():
        raise ArithmeticError("Delta raised the degree beyond p * deg f")
    return out


def delta_power(f: MultiPoly, ctx: SBContext, i: int) -> MultiPoly:
    if i < 0:
        raise ValueError("iteration count must be non-negative")
    if i > MAX_DELTA_ITERATIONS:
        raise ValueError(f"iteration count {i} exceeds guard {MAX_DELTA_ITERATIONS}")
    f = as_plocal(f, ctx.p)
    for _ in range(i):
        f = delta(f, ctx)
    return f


def delta_tower(f: MultiPoly, ctx: SBContext, v: int) -> list[MultiPoly]:
    """[f, delta f, ..., delta^(v-1) f]."""
    if v > MAX_DELTA_ITERATIONS + 1:
        raise ValueError(f"v={v} needs more than {MAX_DELTA_ITERATIONS} iterations")
    out = [as_plocal(f, ctx.p)]
    for _ in range(v - 1):
        out.append(delta(out[-1], ctx))
    return out


class _EquivPredicate:
    """True at points where the two sides of the equivalence disagree."""

    def __init__(self, f_mod, tower_mod, p, v):
        self.f_mod = f_mod
        self.tower_mod = tower_mod
        self.p = p
        self.pv = p**v

    def __call__(self, pt):
        lhs = eval_compiled_mod(self.f_mod, pt, self.pv) == 0
        rhs = all(eval_compiled_mod(g, pt, self.p) == 0 for g in self.tower_mod)
        return lhs != rhs


@dataclass
class EquivReport:
    p: int
    v: int
    passed: bool
    points_checked: int
    counterexample: tuple | None
    degrees: list

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "v": self.v,
            "passed": self.passed,
            "points_checked": self.points_checked,
            "counterexample": list(self.counterexample) if self.counterexample else None,
            "degrees": self.degrees,
        }


def congruence_equiv_check(f: MultiPoly, ctx: SBContext, v: int, workers: int = 1) -> EquivReport:
    """Check f(a) == 0 mod p^v  <=>  (delta^i f)(a) == 0 mod p for all i < v, on all of A."""
    if v < 1:
        raise ValueError("v must be positive")
    if v > MAX_EQUIV_V:
        raise ValueError(f"v={v} exceeds guard {MAX_EQUIV_V}")
    grid.check_guard(ctx.box.sets, EQUIV_GRID_GUARD)
    p = ctx.p
    tower = delta_tower(f, ctx, v)
    f_mod = compile_terms(tower[0].map_coefficients(p**v))
    tower_mod = [compile_terms(g.map_coefficients(p)) for g in tower]
    bad, first = grid.sweep(_EquivPredicate(f_mod, tower_mod, p, v), ctx.box.sets, workers)
    degrees = [g.total_degree() if g else None for g in tower]
    return EquivReport(p, v, bad == 0, ctx.box.size, first, degrees)
