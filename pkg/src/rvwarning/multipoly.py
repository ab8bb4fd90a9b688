"""Sparse multivariate polynomials over an exact coefficient domain.

A polynomial is a dict from exponent tuples to nonzero coefficients.  The
coefficients may be ints, ``fractions.Fraction``, ``PLocalRational`` or
``FqElem``: anything closed under ``+``, ``-``, ``*`` that mixes with int
scalars and is falsy exactly at zero.
"""

from __future__ import annotations

from fractions import Fraction
from operator import add
from typing import Callable, Iterable, Sequence

NEG_INFINITY = float("-inf")


def _grlex_key(mono):
    return (sum(mono), mono)


class MultiPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | Iterable | None = None):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        clean = {}
        items = terms.items() if isinstance(terms, dict) else (terms or ())
        for mono, c in items:
            mono = tuple(int(e) for e in mono)
            if len(mono) != nvars:
                raise ValueError(f"monomial {mono} does not have {nvars} exponents")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            if mono in clean:
                c = clean[mono] + c
            clean[mono] = c
        self.nvars = nvars
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def _make(cls, nvars, terms):
        self = object.__new__(cls)
        self.nvars = nvars
        self.terms = terms
        return self

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls._make(nvars, {})

    @classmethod
    def constant(cls, c, nvars: int) -> "MultiPoly":
        return cls._make(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, i: int, nvars: int, coeff=1) -> "MultiPoly":
        """The polynomial coeff * t_{i+1} (``i`` is 0-based)."""
        if not 0 <= i < nvars:
            raise ValueError(f"variable index {i} out of range for {nvars} variables")
        mono = tuple(1 if j == i else 0 for j in range(nvars))
        return cls._make(nvars, {mono: coeff})

    @classmethod
    def univariate(cls, coeffs: Sequence, i: int = 0, nvars: int = 1) -> "MultiPoly":
        """sum coeffs[k] * t_{i+1}^k as an ``nvars``-variable polynomial."""
        terms = {}
        for k, c in enumerate(coeffs):
            if c:
                terms[tuple(k if j == i else 0 for j in range(nvars))] = c
        return cls._make(nvars, terms)

    # -- basic queries -------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def total_degree(self):
        if not self.terms:
            return NEG_INFINITY
        return max(sum(m) for m in self.terms)

    def degree_in(self, i: int):
        if not self.terms:
            return NEG_INFINITY
        return max(m[i] for m in self.terms)

    def variables(self) -> set[int]:
        """0-based indices of the variables that actually occur."""
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return used

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    def coefficients(self):
        return list(self.terms.values())

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        """Terms in descending graded-lexicographic order."""
        return sorted(self.terms.items(), key=lambda mc: _grlex_key(mc[0]), reverse=True)

    def univariate_coeffs(self, i: int = 0) -> list:
        """Dense coefficient list when only variable ``i`` occurs."""
        if self.variables() - {i}:
            raise ValueError("polynomial is not univariate in the requested slot")
        if not self.terms:
            return []
        out = [0] * (self.degree_in(i) + 1)
        for m, c in self.terms.items():
            out[m[i]] = c
        return out

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"arity mismatch: {self.nvars} vs {other.nvars} variables")
            return other
        return MultiPoly.constant(other, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            if m in terms:
                s = terms[m] + c
                if s:
                    terms[m] = s
                else:
                    del terms[m]
            else:
                terms[m] = c
        return MultiPoly._make(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._make(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if not other:
                return MultiPoly.zero(self.nvars)
            terms = {}
            for m, c in self.terms.items():
                v = c * other
                if v:
                    terms[m] = v
            return MultiPoly._make(self.nvars, terms)
        other = self._coerce(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        res = {}
        get = res.get
        for m2, c2 in b.items():
            for m1, c1 in a.items():
                m = tuple(map(add, m1, m2))
                res[m] = get(m, 0) + c1 * c2
        return MultiPoly._make(self.nvars, {m: c for m, c in res.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        if k == 0:
            one = next(iter(self.terms.values())) * 0 + 1 if self.terms else 1
            return MultiPoly.constant(one, self.nvars)
        result = None
        base = self
        while True:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if not k:
                return result
            base = base * base

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        try:
            return self.terms == MultiPoly.constant(other, self.nvars).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- evaluation and substitution ----------------------------------------

    def evaluate(self, point: Sequence):
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.nvars}")
        total = 0
        powers: list[dict] = [{} for _ in range(self.nvars)]
        for m, c in self.terms.items():
            v = c
            for i, e in enumerate(m):
                if e:
                    cache = powers[i]
                    pe = cache.get(e)
                    if pe is None:
                        pe = cache[e] = point[i] ** e
                    v = v * pe
            total = total + v
        return total

    def __call__(self, *point):
        return self.evaluate(point)

    def compose(self, subs: Sequence["MultiPoly"]) -> "MultiPoly":
        if len(subs) != self.nvars:
            raise ValueError(f"need {self.nvars} substitutions, got {len(subs)}")
        if not subs:
            return MultiPoly._make(0, dict(self.terms))
        nv = subs[0].nvars
        if any(s.nvars != nv for s in subs):
            raise ValueError("substitutions must share a variable count")
        powers = [{0: None, 1: s} for s in subs]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = power(i, e // 2) * power(i, e - e // 2)
            return cache[e]

        result = MultiPoly.zero(nv)
        for m, c in self.terms.items():
            term = None
            for i, e in enumerate(m):
                if e:
                    pe = power(i, e)
                    term = pe if term is None else term * pe
            if term is None:
                term = MultiPoly.constant(c, nv)
            else:
                term = term * c
            result = result + term
        return result

    def map_coefficients(self, reduction) -> "MultiPoly":
        if isinstance(reduction, int):
            fn = _reducer(reduction)
        else:
            fn = reduction
        terms = {}
        for m, c in self.terms.items():
            v = fn(c)
            if v:
                terms[m] = v
        return MultiPoly._make(self.nvars, terms)

    # -- text and JSON -------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                f"t{i + 1}" if e == 1 else f"t{i + 1}^{e}" for i, e in enumerate(m) if e
            )
            cs = str(c)
            negative = cs.startswith("-")
            if negative:
                cs = cs[1:]
            if not mono:
                body = cs
            elif cs == "1":
                body = mono
            else:
                if not _plain_number(cs):
                    cs = f"({cs})"
                body = f"{cs}*{mono}"
            parts.append((negative, body))
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {str(self)!r})"

    def to_json(self, coeff_encoder: Callable | None = None) -> list:
        enc = coeff_encoder or str
        return [[enc(c), list(m)] for m, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: list, nvars: int | None = None, coeff_decoder: Callable | None = None):
        dec = coeff_decoder or parse_coefficient
        if nvars is None:
            if not data:
                raise ValueError("nvars is required for an empty polynomial")
            nvars = len(data[0][1])
        return cls(nvars, [(tuple(m), dec(c)) for c, m in data])


def _plain_number(s: str) -> bool:
    return s.isdigit() or (s.count("/") == 1 and all(part.isdigit() for part in s.split("/")))


def parse_coefficient(text):
    """Decode a JSON coefficient: int, "123" or "num/den"."""
    if isinstance(text, int):
        return text
    if not isinstance(text, str):
        raise ValueError(f"bad coefficient {text!r}")
    if "/" in text:
        f = Fraction(text)
        return f.numerator if f.denominator == 1 else f
    return int(text)


def _reducer(m: int):
    if m < 1:
        raise ValueError("modulus must be positive")

    def reduce(c):
        if isinstance(c, int):
            return c % m
        num = getattr(c, "numerator", None)
        den = getattr(c, "denominator", None)
        if num is None:
            num, den = getattr(c, "num", None), getattr(c, "den", None)
        if num is None:
            raise TypeError(f"cannot reduce {type(c).__name__} modulo {m}")
        try:
            inv = pow(den, -1, m)
        except ValueError:
            raise ValueError(f"denominator {den} is not invertible modulo {m}") from None
        return num * inv % m

    return reduce


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------


def total_degree(f: MultiPoly):
    """Total degree, or NEG_INFINITY for the zero polynomial."""
    return f.total_degree()


def evaluate(f: MultiPoly, point: Sequence):
    return f.evaluate(point)


def compose_per_variable(f: MultiPoly, subs: Sequence[MultiPoly]) -> MultiPoly:
    """Substitute subs[i] for t_{i+1} and expand."""
    return f.compose(subs)


def map_coefficients(f: MultiPoly, reduction) -> MultiPoly:
    """Reduce coefficients modulo an int, or apply an arbitrary coefficient map."""
    return f.map_coefficients(reduction)


def embed_univariate(g: MultiPoly, i: int, nvars: int) -> MultiPoly:
    """Move a one-variable polynomial into slot ``i`` of an ``nvars`` ring."""
    if g.nvars != 1:
        raise ValueError("expected a one-variable polynomial")
    return MultiPoly._make(
        nvars, {tuple(m[0] if j == i else 0 for j in range(nvars)): c for m, c in g.terms.items()}
    )


def lagrange_interpolate(points: Sequence, values: Sequence) -> MultiPoly:
    """The unique polynomial of degree < len(points) through the given data.

    Coefficients are exact ``Fraction`` values (ints where integral).
    """
    if len(points) != len(values):
        raise ValueError("points and values differ in length")
    pts = [Fraction(x) for x in points]
    if len(set(pts)) != len(pts):
        raise ValueError("interpolation points must be distinct")
    n = len(pts)
    total = [Fraction(0)] * n
    for k, (xk, yk) in enumerate(zip(pts, values)):
        if not yk:
            continue
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(pts):
            if j == k:
                continue
            # basis *= (x - xj)
            nxt = [Fraction(0)] * (len(basis) + 1)
            for d, c in enumerate(basis):
                nxt[d + 1] += c
                nxt[d] -= c * xj
            basis = nxt
            denom *= xk - xj
        scale = Fraction(yk) / denom
        for d, c in enumerate(basis):
            total[d] += c * scale
    coeffs = [c.numerator if c.denominator == 1 else c for c in total]
    return MultiPoly.univariate(coeffs)


def compile_terms(f: MultiPoly) -> tuple:
    """A flat, picklable form of ``f`` for repeated evaluation."""
    return tuple(
        (c, tuple((i, e) for i, e in enumerate(m) if e)) for m, c in f.terms.items()
    )


def eval_compiled_mod(compiled: tuple, point: Sequence[int], m: int) -> int:
    """Evaluate an integer-coefficient compiled polynomial at ``point`` modulo m."""
    total = 0
    for c, factors in compiled:
        v = c
        for i, e in factors:
            v *= point[i] ** e
        total += v
    return total % m
