"""Solution counting on restricted boxes and executable lower-bound checks.

Two flavours of system are supported:

* ``CongruenceSystem``: integer polynomials P_j with congruences
  P_j == 0 mod p^(v_j), solved on a ``RestrictedBox`` of integers.
* ``FqSystem``: polynomials over GF(q) with P_j == 0, solved on a product
  of subsets of GF(q).

Every report compares the exact count z with the balls-in-bins bound
m(#A_1, ..., #A_n; sum #A_i - budget), where budget is
sum (p^(v_j) - 1) deg P_j (or sum (q - 1) deg P_j over GF(q)).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import comb, prod
from typing import Sequence

from . import grid
from .balls_bins import min_product
from .multipoly import MultiPoly, compile_terms, eval_compiled_mod
from .polyparse import parse_poly
from .ring_core import FqElem, FqField, fq_build
from .schanuel_brink import RestrictedBox, SBContext, delta_tower

GRID_GUARD = grid.DEFAULT_GRID_GUARD
MAX_REDUCTION_EXPONENT_SUM = 8
INDICATOR_DEGREE_GUARD = 64
SCHANUEL_CAP_GUARD = 20
SCHANUEL_CROSSCHECK_VARS = 16
SCHANUEL_SEARCH_GUARD = 10**6


class Verdict(str, enum.Enum):
    HOLDS = "HOLDS"
    VACUOUS = "VACUOUS"
    VIOLATED = "VIOLATED"
    NOT_APPLICABLE = "NOT_APPLICABLE"


def lower_bound_verdict(count: int, bound: int) -> Verdict:
    """The verdict for a claim of the form ``count == 0 or count >= bound``."""
    if count == 0:
        return Verdict.VACUOUS
    if count < bound:
        return Verdict.VIOLATED
    return Verdict.HOLDS


@dataclass
class CountReport:
    count: int
    bound: int
    degree_budget: int
    verdict: Verdict
    kind: str = ""
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict is Verdict.VIOLATED and self.kind.endswith("_lower_bound"):
            assert 0 < self.count < self.bound

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "count": self.count,
            "bound": self.bound,
            "degree_budget": self.degree_budget,
            "verdict": self.verdict.value,
        }
        out.update(self.extras)
        return out


# ---------------------------------------------------------------------------
# systems
# ---------------------------------------------------------------------------


def _degree(f: MultiPoly) -> int:
    # the zero polynomial imposes no condition and costs nothing
    d = f.total_degree()
    return 0 if d == float("-inf") else d


@dataclass(frozen=True)
class CongruenceSystem:
    p: int
    polys: tuple[MultiPoly, ...]
    exps: tuple[int, ...]

    def __init__(self, p: int, polys: Sequence[MultiPoly], exps: Sequence[int] | None = None):
        polys = tuple(polys)
        exps = tuple(int(v) for v in exps) if exps is not None else (1,) * len(polys)
        if not polys:
            raise ValueError("a system needs at least one polynomial")
        if len(exps) != len(polys):
            raise ValueError("one exponent per polynomial is required")
        if any(v < 1 for v in exps):
            raise ValueError("exponents must be positive")
        if len({f.nvars for f in polys}) != 1:
            raise ValueError("all polynomials must share the variable count")
        for f in polys:
            if any(not isinstance(c, int) for c in f.coefficients()):
                raise ValueError("congruence systems take integer coefficients")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "polys", polys)
        object.__setattr__(self, "exps", exps)

    @property
    def nvars(self) -> int:
        return self.polys[0].nvars

    @property
    def moduli(self) -> tuple[int, ...]:
        return tuple(self.p**v for v in self.exps)

    def degree_budget(self) -> int:
        return sum((self.p**v - 1) * _degree(f) for f, v in zip(self.polys, self.exps))

    def reduced_degree_budget(self) -> int:
        """sum (p^v - 1)/(p - 1) * deg P_j: the total degree after delta-reduction."""
        return sum((self.p**v - 1) // (self.p - 1) * _degree(f) for f, v in zip(self.polys, self.exps))

    def to_json(self) -> dict:
        return {"prime": self.p, "polys": [f.to_json() for f in self.polys], "exps": list(self.exps)}


@dataclass(frozen=True)
class FqSystem:
    field: FqField
    polys: tuple[MultiPoly, ...]

    def __init__(self, field: FqField, polys: Sequence[MultiPoly]):
        polys = tuple(f.map_coefficients(field) for f in polys)
        if not polys:
            raise ValueError("a system needs at least one polynomial")
        if len({f.nvars for f in polys}) != 1:
            raise ValueError("all polynomials must share the variable count")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "polys", polys)

    @property
    def nvars(self) -> int:
        return self.polys[0].nvars

    @property
    def q(self) -> int:
        return self.field.q

    def degree(self) -> int:
        return sum(_degree(f) for f in self.polys)

    def degree_budget(self) -> int:
        return (self.q - 1) * self.degree()

    def to_json(self) -> dict:
        return {
            "field": {"p": self.field.p, "ell": self.field.ell},
            "polys": [f.to_json(fq_coefficient_to_json) for f in self.polys],
        }


def fq_to_json(e: FqElem):
    return e.index if e.field.ell == 1 else list(e.coeffs)


def fq_coefficient_to_json(e: FqElem):
    """Prime-field coefficients as decimal strings, extension-field ones as basis coordinates."""
    return str(e.index) if e.field.ell == 1 else list(e.coeffs)


def fq_box(field: FqField, sets=None, n: int | None = None) -> tuple[tuple[FqElem, ...], ...]:
    """Normalise a box of GF(q) subsets; ``sets=None`` means the full grid F_q^n."""
    if sets is None:
        if n is None:
            raise ValueError("need n for the full grid")
        return (field.elements(),) * n
    out = []
    for i, s in enumerate(sets):
        elems = []
        for a in s:
            if isinstance(a, FqElem):
                elems.append(field(a))
            elif isinstance(a, int):
                elems.append(field.from_index(a))
            else:
                elems.append(field(a))
        if not elems:
            raise ValueError(f"A_{i + 1} is empty")
        if len(set(e.index for e in elems)) != len(elems):
            raise ValueError(f"A_{i + 1} repeats an element")
        out.append(tuple(elems))
    return tuple(out)


# ---------------------------------------------------------------------------
# counting
# ---------------------------------------------------------------------------


class _CongruencePredicate:
    def __init__(self, compiled, moduli):
        self.compiled = compiled
        self.moduli = moduli

    def __call__(self, pt):
        for f, m in zip(self.compiled, self.moduli):
            if eval_compiled_mod(f, pt, m):
                return False
        return True


def _box_sweep(sys: CongruenceSystem, box: RestrictedBox, workers=1, guard=GRID_GUARD):
    if box.p != sys.p:
        raise ValueError(f"box prime {box.p} differs from system prime {sys.p}")
    if box.n != sys.nvars:
        raise ValueError(f"box has {box.n} coordinates, system has {sys.nvars} variables")
    grid.check_guard(box.sets, guard)
    compiled = [compile_terms(f) for f in sys.polys]
    return grid.sweep(_CongruencePredicate(compiled, sys.moduli), box.sets, workers)


def count_zeros_box(sys: CongruenceSystem, box: RestrictedBox, workers: int = 1, guard: int = GRID_GUARD) -> int:
    """#{x in A : P_j(x) == 0 mod p^(v_j) for every j}."""
    return _box_sweep(sys, box, workers, guard)[0]


class FqEvaluator:
    """Evaluates GF(q) polynomials at points given as element indices."""

    def __init__(self, field: FqField, polys: Sequence[MultiPoly]):
        self.field = field
        self.q = field.q
        field._mul_index(0, 0)
        field._add_index(0, 0)
        self.mul = field._mul_table
        self.add = field._add_table
        self.compiled = [
            tuple((c.index, tuple((i, e) for i, e in enumerate(m) if e)) for m, c in f.terms.items())
            for f in polys
        ]
        self._pow = {}

    def __getstate__(self):
        return {"field": self.field, "polys": None, "compiled": self.compiled}

    def __setstate__(self, state):
        field = state["field"]
        field._mul_index(0, 0)
        field._add_index(0, 0)
        self.field = field
        self.q = field.q
        self.mul = field._mul_table
        self.add = field._add_table
        self.compiled = state["compiled"]
        self._pow = {}

    def power(self, x: int, e: int) -> int:
        key = (x, e)
        r = self._pow.get(key)
        if r is None:
            r = 1
            mul, q = self.mul, self.q
            for _ in range(e):
                r = mul[r * q + x]
            self._pow[key] = r
        return r

    def value(self, k: int, pt) -> int:
        mul, add, q = self.mul, self.add, self.q
        total = 0
        for c, factors in self.compiled[k]:
            v = c
            for i, e in factors:
                v = mul[v * q + self.power(pt[i], e)]
            total = add[total * q + v]
        return total


class _FqZeroPredicate:
    def __init__(self, evaluator: FqEvaluator, want_zero: bool = True):
        self.ev = evaluator
        self.want_zero = want_zero

    def __call__(self, pt):
        ev = self.ev
        allzero = all(ev.value(k, pt) == 0 for k in range(len(ev.compiled)))
        return allzero if self.want_zero else not allzero


def _fq_axes(box) -> list[tuple[int, ...]]:
    return [tuple(e.index for e in s) for s in box]


def _fq_sweep(sys: FqSystem, box, workers=1, guard=GRID_GUARD, want_zero=True):
    box = fq_box(sys.field, box, sys.nvars)
    if len(box) != sys.nvars:
        raise ValueError(f"box has {len(box)} coordinates, system has {sys.nvars} variables")
    axes = _fq_axes(box)
    grid.check_guard(axes, guard)
    pred = _FqZeroPredicate(FqEvaluator(sys.field, sys.polys), want_zero)
    count, witness = grid.sweep(pred, axes, workers)
    if witness is not None:
        witness = tuple(sys.field.from_index(i) for i in witness)
    return count, witness, box


def count_zeros_fq(sys: FqSystem, box=None, workers: int = 1, guard: int = GRID_GUARD) -> int:
    """Common zeros of the system in a product of GF(q) subsets (default: all of F_q^n)."""
    return _fq_sweep(sys, box, workers, guard)[0]


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


def _witness_json(w):
    if w is None:
        return None
    return [fq_to_json(x) if isinstance(x, FqElem) else x for x in w]


def rvw2_report(sys, box=None, workers: int = 1, guard: int = GRID_GUARD) -> CountReport:
    """z = 0 or z >= m(#A_1, ..., #A_n; sum #A_i - budget)."""
    if isinstance(sys, FqSystem):
        z, witness, box = _fq_sweep(sys, box, workers, guard)
        sizes = tuple(len(s) for s in box)
        full = all(len(s) == sys.q for s in box)
        boolean = all(sorted(e.index for e in s) == [0, 1] for s in box)
        flavour = {"field": {"p": sys.field.p, "ell": sys.field.ell}}
    else:
        if box is None:
            raise ValueError("a congruence system needs a box")
        z, witness = _box_sweep(sys, box, workers, guard)
        sizes = box.sizes
        full = False
        boolean = box.is_boolean()
        flavour = {"prime": sys.p, "exps": list(sys.exps)}
    n = sys.nvars
    budget = sys.degree_budget()
    bound = min_product(sizes, sum(sizes) - budget)
    extras = dict(flavour)
    extras["box_sizes"] = list(sizes)
    extras["witness"] = _witness_json(witness)
    if full and len(set(sizes)) == 1:
        d = sys.degree()
        extras["warning_bound"] = sys.q ** max(n - d, 0)
        if d <= n:
            assert extras["warning_bound"] == bound
    if boolean:
        extras["boolean_bound"] = min_product((2,) * n, 2 * n - budget)
        if budget <= n:
            assert extras["boolean_bound"] == 2 ** (n - budget) == bound
    slack = sum(s - 1 for s in sizes)
    extras["z_ne_1_hypothesis"] = budget < slack
    if budget < slack:
        assert bound >= 2
    return CountReport(z, bound, budget, lower_bound_verdict(z, bound), "rvw2_lower_bound", extras)


def _not_one_verdict(z: int, hypothesis: bool) -> Verdict:
    if not hypothesis:
        return Verdict.NOT_APPLICABLE
    if z == 1:
        return Verdict.VIOLATED
    return Verdict.VACUOUS if z == 0 else Verdict.HOLDS


def warning2_report(sys: FqSystem, workers: int = 1, guard: int = GRID_GUARD) -> CountReport:
    """Full grid F_q^n with sum deg P_j < n: p | z, z != 1, and z = 0 or z >= q^(n-d)."""
    z, witness, _ = _fq_sweep(sys, None, workers, guard)
    n, d, p = sys.nvars, sys.degree(), sys.field.p
    bound = sys.q ** max(n - d, 0)
    extras = {
        "field": {"p": p, "ell": sys.field.ell},
        "total_degree": d,
        "witness": _witness_json(witness),
        "divisible_by_p": z % p == 0,
    }
    if d >= n:
        verdict = Verdict.NOT_APPLICABLE
    elif z % p != 0:
        verdict = Verdict.VIOLATED
    else:
        verdict = lower_bound_verdict(z, bound)
    return CountReport(z, bound, sys.degree_budget(), verdict, "warning2", extras)


def chevalley_report(sys: FqSystem, box=None, workers: int = 1, guard: int = GRID_GUARD) -> CountReport:
    """Restricted Chevalley: (q-1) sum deg P_j < sum (#A_i - 1) forces z != 1."""
    z, witness, box = _fq_sweep(sys, box, workers, guard)
    budget = sys.degree_budget()
    slack = sum(len(s) - 1 for s in box)
    extras = {
        "field": {"p": sys.field.p, "ell": sys.field.ell},
        "slack": slack,
        "witness": _witness_json(witness),
    }
    return CountReport(z, 2, budget, _not_one_verdict(z, budget < slack), "chevalley", extras)


def brink_report(sys: CongruenceSystem, box: RestrictedBox, workers: int = 1, guard: int = GRID_GUARD) -> CountReport:
    """sum (p^(v_j) - 1) deg P_j < sum (#A_i - 1) forces z != 1 (the Boolean case is A = {0,1}^n)."""
    z, witness = _box_sweep(sys, box, workers, guard)
    budget = sys.degree_budget()
    slack = sum(s - 1 for s in box.sizes)
    extras = {"prime": sys.p, "exps": list(sys.exps), "slack": slack, "witness": _witness_json(witness)}
    return CountReport(z, 2, budget, _not_one_verdict(z, budget < slack), "brink", extras)


# ---------------------------------------------------------------------------
# delta reduction
# ---------------------------------------------------------------------------


def delta_reduce_system(sys: CongruenceSystem, ctx: SBContext) -> CongruenceSystem:
    """Replace each P_j == 0 mod p^(v_j) by delta^i P_j == 0 mod p for i < v_j."""
    if ctx.p != sys.p:
        raise ValueError("context prime differs from system prime")
    if sum(sys.exps) > MAX_REDUCTION_EXPONENT_SUM:
        raise ValueError(f"sum of exponents {sum(sys.exps)} exceeds guard {MAX_REDUCTION_EXPONENT_SUM}")
    if all(v == 1 for v in sys.exps):
        return sys
    p = sys.p
    polys = []
    for f, v in zip(sys.polys, sys.exps):
        for g in delta_tower(f, ctx, v):
            polys.append(g.map_coefficients(p))
    reduced = CongruenceSystem(p, polys, [1] * len(polys))
    if reduced.degree_budget() > sys.reduced_degree_budget() * (p - 1):
        raise ArithmeticError("reduced system exceeds the expected degree budget")
    return reduced


# ---------------------------------------------------------------------------
# Alon-Furedi and the indicator polynomial
# ---------------------------------------------------------------------------


def _as_field_problem(f: MultiPoly, box):
    if isinstance(box, RestrictedBox):
        field = fq_build(box.p, 1)
        g = f.map_coefficients(field)
        sets = tuple(tuple(field(a) for a in s) for s in box.sets)
        return field, g, sets
    coeffs = f.coefficients()
    if not coeffs or not isinstance(coeffs[0], FqElem):
        raise ValueError("pass a RestrictedBox for integer polynomials, or GF(q) coefficients")
    field = coeffs[0].field
    return field, f, fq_box(field, box, f.nvars)


def alon_furedi_report(f: MultiPoly, box, workers: int = 1, guard: int = GRID_GUARD) -> CountReport:
    """u = #{x in A : f(x) != 0} is 0 or at least m(a_1..a_n; sum a_i - deg f)."""
    if isinstance(box, RestrictedBox) or f.coefficients():
        field, g, sets = _as_field_problem(f, box)
    else:
        raise ValueError("cannot infer the field of the zero polynomial; pass a RestrictedBox")
    sys = FqSystem(field, [g])
    axes = _fq_axes(sets)
    grid.check_guard(axes, guard)
    u, witness = grid.sweep(_FqZeroPredicate(FqEvaluator(field, sys.polys), want_zero=False), axes, workers)
    sizes = [len(s) for s in sets]
    deg = _degree(g)
    bound = min_product(sizes, sum(sizes) - deg)
    extras = {
        "field": {"p": field.p, "ell": field.ell},
        "box_sizes": sizes,
        "witness": [fq_to_json(field.from_index(i)) for i in witness] if witness else None,
    }
    return CountReport(u, bound, deg, lower_bound_verdict(u, bound), "alon_furedi_lower_bound", extras)


def chevalley_indicator(sys: FqSystem) -> MultiPoly:
    """prod_j (1 - P_j^(q-1)): nonzero exactly on the common zeros."""
    if (sys.q - 1) * sys.degree() > INDICATOR_DEGREE_GUARD:
        raise ValueError(
            f"indicator degree {(sys.q - 1) * sys.degree()} exceeds guard {INDICATOR_DEGREE_GUARD}"
        )
    one = sys.field.one
    out = MultiPoly.constant(one, sys.nvars)
    for f in sys.polys:
        out = out * (MultiPoly.constant(one, sys.nvars) - f ** (sys.q - 1))
    return out


# ---------------------------------------------------------------------------
# Schanuel's substitution
# ---------------------------------------------------------------------------


@dataclass
class SchanuelResult:
    expanded: CongruenceSystem
    caps: tuple[int, ...]
    report: CountReport


def _nonzero_solutions(sys: CongruenceSystem, axes, workers):
    compiled = [compile_terms(f) for f in sys.polys]
    base = _CongruencePredicate(compiled, sys.moduli)
    count, first = grid.sweep(_NonzeroPredicate(base, None), axes, workers)
    return count, first


class _NonzeroPredicate:
    def __init__(self, base, p):
        self.base = base
        self.p = p  # when set, also require x outside (pZ)^n

    def __call__(self, pt):
        if self.p is None:
            if not any(pt):
                return False
        elif all(x % self.p == 0 for x in pt):
            return False
        return self.base(pt)


def schanuel_box_expand(
    sys: CongruenceSystem,
    caps: Sequence[int],
    workers: int = 1,
    crosscheck_vars: int = SCHANUEL_CROSSCHECK_VARS,
) -> SchanuelResult:
    """Substitute t_i -> t_{i,1}^(p-1) + ... + t_{i,b_i}^(p-1) and check the existence claims.

    Part c: budget < sum b_i gives a nonzero solution in prod [0, b_i].
    Part b: budget < n gives a nonzero solution in {0,1}^n.
    Part a: sum deg P_j (p^v_j - 1)/(p - 1) < n gives a solution outside (pZ)^n.
    """
    caps = tuple(int(b) for b in caps)
    p, n = sys.p, sys.nvars
    if len(caps) != n:
        raise ValueError(f"need {n} caps, got {len(caps)}")
    if any(b < 0 for b in caps):
        raise ValueError("caps must be non-negative")
    if sum(caps) > SCHANUEL_CAP_GUARD:
        raise ValueError(f"sum of caps {sum(caps)} exceeds guard {SCHANUEL_CAP_GUARD}")
    for f, m in zip(sys.polys, sys.moduli):
        if f.constant_term() % m:
            raise ValueError("polynomials must have no constant term")

    total = sum(caps)
    subs = []
    offset = 0
    for b in caps:
        s = MultiPoly.zero(total)
        for k in range(b):
            s = s + MultiPoly.variable(offset + k, total) ** (p - 1)
        subs.append(s)
        offset += b
    expanded = CongruenceSystem(p, [f.compose(subs) for f in sys.polys], sys.exps)

    budget = sys.degree_budget()
    extras: dict = {"prime": p, "exps": list(sys.exps), "caps": list(caps)}
    parts = {}

    axes_c = [tuple(range(b + 1)) for b in caps]
    count_c, witness_c = _nonzero_solutions(sys, axes_c, workers)
    compiled = [compile_terms(f) for f in sys.polys]
    base = _CongruencePredicate(compiled, sys.moduli)
    _, outside_pz = grid.sweep(_NonzeroPredicate(base, p), axes_c, workers)
    parts["c"] = {
        "hypothesis": budget < total,
        "nonzero_solutions": count_c,
        "witness": list(witness_c) if witness_c else None,
        "witness_outside_pZ": list(outside_pz) if outside_pz else None,
    }

    if all(b >= 1 for b in caps):
        count_b, witness_b = _nonzero_solutions(sys, [(0, 1)] * n, workers)
        parts["b"] = {
            "hypothesis": budget < n,
            "nonzero_solutions": count_b,
            "witness": list(witness_b) if witness_b else None,
        }

    hyp_a = sys.reduced_degree_budget() < n
    witness_a = grid.find_first(_NonzeroPredicate(base, p), [tuple(range(p))] * n, workers)
    searched = "coset representatives"
    if witness_a is None:
        period = p ** max(sys.exps)
        axes = [tuple(range(period))] * n
        if grid.grid_size(axes) <= SCHANUEL_SEARCH_GUARD:
            witness_a = grid.find_first(_NonzeroPredicate(base, p), axes, workers)
            searched = "full period"
        else:
            searched = "coset representatives (full period above guard)"
    parts["a"] = {
        "hypothesis": hyp_a,
        "witness": list(witness_a) if witness_a else None,
        "searched": searched,
    }

    if total <= crosscheck_vars:
        # on {0,1} the substituted variables sum to a point of prod [0, b_i],
        # hit by prod C(b_i, x_i) Boolean points
        boolean_count = count_zeros_box(expanded, RestrictedBox(p, [(0, 1)] * total), workers)
        weighted = _weighted_box_count(base, axes_c, caps)
        extras["boolean_crosscheck"] = {"expanded_count": boolean_count, "weighted_box_count": weighted,
                                        "agrees": boolean_count == weighted}
    else:
        extras["boolean_crosscheck"] = None

    extras["parts"] = parts
    failed = any(part["hypothesis"] and part["witness"] is None for part in parts.values())
    if extras["boolean_crosscheck"] and not extras["boolean_crosscheck"]["agrees"]:
        failed = True
    if failed:
        verdict = Verdict.VIOLATED
    elif any(part["hypothesis"] for part in parts.values()):
        verdict = Verdict.HOLDS
    else:
        verdict = Verdict.NOT_APPLICABLE
    report = CountReport(count_c, 1, budget, verdict, "schanuel", extras)
    return SchanuelResult(expanded, caps, report)


def _weighted_box_count(base, axes, caps):
    total = 0
    for pt in grid.iter_range(axes, 0, grid.grid_size(axes)):
        if base(pt):
            total += prod(comb(b, x) for b, x in zip(caps, pt))
    return total


# ---------------------------------------------------------------------------
# instance files
# ---------------------------------------------------------------------------


def _fq_coefficient_decoder(field: FqField):
    def dec(c):
        if isinstance(c, list):
            return field(c)
        return field(int(c))

    return dec


def instance_from_json(data: dict):
    """Decode ``{prime|field, polys, exps?, box?, caps?}`` into (system, box, caps).

    For GF(q) instances the box is a tuple of element tuples (None for the
    full grid); for congruence instances it is a RestrictedBox (or None).
    """
    if "field" in data:
        spec = data["field"]
        field = fq_build(int(spec["p"]), int(spec.get("ell", 1)))
        nvars = _instance_nvars(data)
        polys = [_decode_poly(f, nvars, _fq_coefficient_decoder(field)) for f in data["polys"]]
        system = FqSystem(field, polys)
        box = fq_box(field, data["box"]) if data.get("box") is not None else None
    elif "prime" in data:
        p = int(data["prime"])
        nvars = _instance_nvars(data)
        polys = [_decode_poly(f, nvars) for f in data["polys"]]
        system = CongruenceSystem(p, polys, data.get("exps"))
        box = RestrictedBox(p, data["box"]) if data.get("box") is not None else None
    else:
        raise ValueError("instance needs a 'prime' or a 'field' entry")
    caps = data.get("caps")
    return system, box, tuple(caps) if caps is not None else None


def _decode_poly(f, nvars, decoder=None) -> MultiPoly:
    """A polynomial given as an expression string or in the MultiPoly JSON form."""
    if isinstance(f, str):
        return parse_poly(f, nvars)
    if decoder is None:
        return MultiPoly.from_json(f, nvars)
    return MultiPoly.from_json(f, nvars, decoder)


def _instance_nvars(data: dict) -> int | None:
    if data.get("nvars") is not None:
        return int(data["nvars"])
    if data.get("box") is not None:
        return len(data["box"])
    if data.get("caps") is not None:
        return len(data["caps"])
    return None


def instance_to_json(system, box=None, caps=None) -> dict:
    out = system.to_json()
    out["nvars"] = system.nvars
    if box is not None:
        if isinstance(box, RestrictedBox):
            out["box"] = [list(s) for s in box.sets]
        else:
            out["box"] = [[fq_to_json(e) for e in s] for s in box]
    if caps is not None:
        out["caps"] = list(caps)
    return out
