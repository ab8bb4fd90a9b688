"""Exact coefficient domains: rationals localized at a prime, and GF(p^ell).

Integers are plain Python ints throughout.  A ``PLocalRing(p)`` is the
arithmetic context for fractions whose denominator is prime to ``p``; its
elements are ``PLocalRational`` values.  ``fq_build(p, ell)`` returns a
deterministic model of the field with ``p**ell`` elements.
"""

from __future__ import annotations

import functools
import itertools
from math import gcd


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def valuation_int(n: int, p: int) -> int:
    """Exponent of ``p`` in the nonzero integer ``n``."""
    if n == 0:
        raise ValueError("valuation of zero undefined")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


# ---------------------------------------------------------------------------
# Z_(p)
# ---------------------------------------------------------------------------


class PLocalRing:
    """The ring of rationals a/b with p not dividing b.

    Instances are interned per prime, so identity comparison is enough to
    detect mixed contexts.
    """

    __slots__ = ("p",)

    def __new__(cls, p: int):
        return _plocal_ring(p)

    def __repr__(self):
        return f"PLocalRing({self.p})"

    def __reduce__(self):
        return (PLocalRing, (self.p,))

    def __call__(self, num, den=1) -> "PLocalRational":
        return PLocalRational(num, den, self)

    @property
    def zero(self):
        return PLocalRational(0, 1, self)

    @property
    def one(self):
        return PLocalRational(1, 1, self)

    def coerce(self, x) -> "PLocalRational":
        if isinstance(x, PLocalRational):
            if x.ring is not self:
                raise ValueError(f"cannot mix {x.ring!r} with {self!r}")
            return x
        if isinstance(x, int):
            return PLocalRational._raw(x, 1, self)
        num = getattr(x, "numerator", None)
        den = getattr(x, "denominator", None)
        if isinstance(num, int) and isinstance(den, int):
            return PLocalRational(num, den, self)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self!r}")


@functools.lru_cache(maxsize=None)
def _plocal_ring(p: int) -> PLocalRing:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    ring = object.__new__(PLocalRing)
    ring.p = p
    return ring


class PLocalRational:
    """An element num/den of Z_(p), kept in lowest terms with den > 0."""

    __slots__ = ("num", "den", "ring")

    def __init__(self, num: int, den: int = 1, ring: PLocalRing | None = None):
        if ring is None:
            raise ValueError("a PLocalRing context is required")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        g = gcd(num, den)
        if g != 1:
            num //= g
            den //= g
        if den % ring.p == 0:
            raise ValueError(f"denominator {den} is divisible by p={ring.p}")
        self.num = num
        self.den = den
        self.ring = ring

    @classmethod
    def _raw(cls, num, den, ring):
        # caller guarantees lowest terms, den > 0, p-free den
        self = object.__new__(cls)
        self.num = num
        self.den = den
        self.ring = ring
        return self

    def _other(self, other):
        if isinstance(other, PLocalRational):
            if other.ring is not self.ring:
                raise ValueError(f"cannot mix {other.ring!r} with {self.ring!r}")
            return other
        if isinstance(other, int):
            return PLocalRational._raw(other, 1, self.ring)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if self.den == 1 and o.den == 1:
            return PLocalRational._raw(self.num + o.num, 1, self.ring)
        num = self.num * o.den + o.num * self.den
        den = self.den * o.den
        g = gcd(num, den)
        return PLocalRational._raw(num // g, den // g, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return PLocalRational._raw(-self.num, self.den, self.ring)

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if self.den == 1 and o.den == 1:
            return PLocalRational._raw(self.num * o.num, 1, self.ring)
        g1 = gcd(self.num, o.den)
        g2 = gcd(o.num, self.den)
        num = (self.num // g1) * (o.num // g2)
        den = (self.den // g2) * (o.den // g1)
        return PLocalRational._raw(num, den, self.ring)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return PLocalRational._raw(self.num**k, self.den**k, self.ring)

    def inverse(self) -> "PLocalRational":
        """Multiplicative inverse; only units of Z_(p) have one."""
        if self.num % self.ring.p == 0:
            raise ZeroDivisionError(f"{self} is not a unit in Z_({self.ring.p})")
        return PLocalRational(self.den, self.num, self.ring)

    def div_p(self) -> "PLocalRational":
        """Exact division by p; requires p-valuation >= 1."""
        p = self.ring.p
        if self.num % p:
            raise ValueError(f"{self} is not divisible by {p} in Z_({p})")
        return PLocalRational._raw(self.num // p, self.den, self.ring)

    def valuation(self) -> int:
        return valuation_int(self.num, self.ring.p)

    def reduce(self, m: int) -> int:
        """Image in Z/mZ.  m must be a power of p (or coprime to den)."""
        return self.num * pow(self.den, -1, m) % m

    def __bool__(self):
        return self.num != 0

    def __eq__(self, other):
        if isinstance(other, PLocalRational):
            return self.ring is other.ring and self.num == other.num and self.den == other.den
        if isinstance(other, int):
            return self.den == 1 and self.num == other
        num = getattr(other, "numerator", None)
        den = getattr(other, "denominator", None)
        if isinstance(num, int) and isinstance(den, int):
            return self.num == num and self.den == den
        return NotImplemented

    def __hash__(self):
        if self.den == 1:
            return hash(self.num)
        return hash((self.num, self.den))

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"{self.num}/{self.den}"

    def __repr__(self):
        return f"PLocalRational({self.num}, {self.den}, p={self.ring.p})"


def p_valuation(x, p: int) -> int:
    """The exponent of ``p`` in a nonzero integer, Fraction or PLocalRational.

    >>> p_valuation(8, 2)
    3
    """
    if isinstance(x, PLocalRational):
        if x.ring.p != p:
            raise ValueError(f"element of Z_({x.ring.p}) has no Z_({p}) valuation here")
        if not x:
            raise ValueError("valuation of zero undefined")
        return x.valuation()
    if isinstance(x, int):
        return valuation_int(x, p)
    x = PLocalRing(p).coerce(x)
    if not x:
        raise ValueError("valuation of zero undefined")
    return x.valuation()


# ---------------------------------------------------------------------------
# GF(p^ell)
# ---------------------------------------------------------------------------

MAX_ELL = 4


def _polymod_p(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of ``a`` by the monic ``m`` over Z/pZ (little-endian lists)."""
    a = [c % p for c in a]
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return a[:dm] if dm else []


def _is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..ell//2."""
    ell = len(modulus) - 1
    for d in range(1, ell // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            divisor = list(low) + [1]
            rem = _polymod_p(list(modulus), divisor, p)
            if not any(rem):
                return False
    return True


class FqField:
    """GF(p^ell) modelled as (Z/pZ)[x] / (modulus).

    Elements are stored as coefficient tuples in the basis 1, g, ..., g^(ell-1)
    where g is the class of x.  ``index`` is the integer sum c_i p^i, which
    gives each element a stable position in ``elements()``.
    """

    def __init__(self, p: int, ell: int, modulus: tuple[int, ...]):
        self.p = p
        self.ell = ell
        self.modulus = tuple(modulus)
        self.q = p**ell
        self._elements = tuple(FqElem(self, self._coeffs_of(i)) for i in range(self.q))
        self._mul_table = None
        self._add_table = None

    def __repr__(self):
        return f"GF({self.p}^{self.ell})"

    def __reduce__(self):
        return (fq_build, (self.p, self.ell))

    def _coeffs_of(self, index: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.ell):
            index, c = divmod(index, self.p)
            out.append(c)
        return tuple(out)

    def elements(self) -> tuple["FqElem", ...]:
        return self._elements

    def __call__(self, x) -> "FqElem":
        """Coerce an int (into the prime field), a coefficient list, or an FqElem."""
        if isinstance(x, FqElem):
            if x.field is not self:
                raise ValueError(f"element of {x.field!r} used in {self!r}")
            return x
        if isinstance(x, int):
            return self._elements[x % self.p]
        coeffs = tuple(int(c) for c in x)
        if len(coeffs) != self.ell or any(not 0 <= c < self.p for c in coeffs):
            raise ValueError(f"bad coefficient vector {list(coeffs)} for {self!r}")
        return self._elements[self._index(coeffs)]

    def from_index(self, index: int) -> "FqElem":
        if not 0 <= index < self.q:
            raise ValueError(f"index {index} out of range for {self!r}")
        return self._elements[index]

    def _index(self, coeffs) -> int:
        i = 0
        for c in reversed(coeffs):
            i = i * self.p + c
        return i

    @property
    def zero(self):
        return self._elements[0]

    @property
    def one(self):
        return self._elements[1]

    def generator_root(self) -> "FqElem":
        """The class g of x modulo the defining polynomial."""
        if self.ell == 1:
            return self._elements[0]
        return self._elements[self.p]

    def _mul_index(self, i: int, j: int) -> int:
        if self._mul_table is None:
            self._mul_table = self._build_mul_table()
        return self._mul_table[i * self.q + j]

    def _add_index(self, i: int, j: int) -> int:
        if self._add_table is None:
            p, q = self.p, self.q
            table = []
            for a in map(self._coeffs_of, range(q)):
                for b in map(self._coeffs_of, range(q)):
                    table.append(self._index([(x + y) % p for x, y in zip(a, b)]))
            self._add_table = table
        return self._add_table[i * self.q + j]

    def _build_mul_table(self):
        p, ell, q = self.p, self.ell, self.q
        if ell == 1:
            return [(i * j) % p for i in range(q) for j in range(q)]
        table = []
        m = list(self.modulus)
        for i in range(q):
            a = self._coeffs_of(i)
            for j in range(q):
                b = self._coeffs_of(j)
                prod = [0] * (2 * ell - 1)
                for s, x in enumerate(a):
                    if x:
                        for t, y in enumerate(b):
                            prod[s + t] += x * y
                table.append(self._index(_polymod_p(prod, m, p)))
        return table


class FqElem:
    """Immutable element of an ``FqField``."""

    __slots__ = ("field", "coeffs", "index")

    def __init__(self, field: FqField, coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs
        self.index = field._index(coeffs)

    def _other(self, other):
        if isinstance(other, FqElem):
            if other.field is not self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, int):
            return self.field._elements[other % self.field.p]
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self.field._elements[self.field._add_index(self.index, o.index)]

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return self.field(tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self.field._elements[self.field._mul_index(self.index, o.index)]

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return fq_pow(self, k)

    def inverse(self) -> "FqElem":
        if not self:
            raise ZeroDivisionError("zero has no inverse")
        return fq_pow(self, self.field.q - 2)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __bool__(self):
        return self.index != 0

    def __eq__(self, other):
        if isinstance(other, FqElem):
            return self.field is other.field and self.index == other.index
        if isinstance(other, int):
            return self.index == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash(self.index)

    def __str__(self):
        if self.field.ell == 1 or self.index < self.field.p:
            return str(self.index)
        return "[" + ",".join(map(str, self.coeffs)) + "]"

    def __repr__(self):
        return f"FqElem({list(self.coeffs)}, {self.field!r})"


def fq_pow(a: FqElem, k: int) -> FqElem:
    """a**k by square-and-multiply; a**0 is 1."""
    if k < 0:
        return fq_pow(a.inverse(), -k)
    result = a.field.one
    base = a
    while k:
        if k & 1:
            result = result * base
        base = base * base
        k >>= 1
    return result


@functools.lru_cache(maxsize=None)
def fq_build(p: int, ell: int) -> FqField:
    """The field of order p**ell with the smallest monic irreducible modulus.

    Candidates are ordered by coefficient tuple, constant term first.  For
    ell == 1 the modulus is x itself and elements are residues mod p.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not 1 <= ell <= MAX_ELL:
        raise ValueError(f"ell={ell} outside supported range 1..{MAX_ELL}")
    for low in itertools.product(range(p), repeat=ell):
        modulus = tuple(low) + (1,)
        if ell == 1 or _is_irreducible(modulus, p):
            return FqField(p, ell, modulus)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover
