"""Noncommutative polynomials and truncated series over F_p.

Monomials are tuples of generator indices (1-based), so ``(1, 2)`` is
``X1*X2`` and ``()`` is the unit.  The monomial order is degree first,
then lexicographic with ``X1 > X2 > ... > Xd``; every leading-term
computation in the package goes through :func:`monomial_key`.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

Monomial = tuple[int, ...]

DEFAULT_CUTOFF = 8


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


def monomial_key(m: Monomial) -> tuple:
    """Sort key: a larger key means a larger monomial."""
    return (len(m), tuple(-i for i in m))


def monomials(d: int, n: int) -> Iterator[Monomial]:
    """All degree-n words over d letters, in descending monomial order."""
    return itertools.product(range(1, d + 1), repeat=n)


def contains(word: Monomial, factor: Monomial) -> bool:
    """True if ``word = M * factor * N`` for some monomials M, N."""
    k = len(factor)
    return any(word[i:i + k] == factor for i in range(len(word) - k + 1))


def render_monomial(m: Monomial) -> str:
    return "*".join(f"X{i}" for i in m) if m else "1"


@dataclass(frozen=True)
class Context:
    """Number of generators and the prime modulus shared by a computation."""

    d: int
    p: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"need at least one generator, got d={self.d}")
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")


class ContextMismatch(ValueError):
    pass


def _check_same(a, b):
    if a.ctx != b.ctx:
        raise ContextMismatch(f"{a.ctx} vs {b.ctx}")


def _clean(terms: Mapping[Monomial, int], p: int) -> dict[Monomial, int]:
    out = {}
    for m, c in terms.items():
        c %= p
        if c:
            out[m] = c
    return out


def _mul_terms(a: Mapping, b: Mapping, p: int, cutoff: int | None = None) -> dict:
    out: dict[Monomial, int] = {}
    for x, c in a.items():
        for y, e in b.items():
            if cutoff is not None and len(x) + len(y) > cutoff:
                continue
            k = x + y
            out[k] = (out.get(k, 0) + c * e) % p
    return {k: v for k, v in out.items() if v}


class Polynomial:
    """Element of F_p<X1..Xd>, stored as a canonical map monomial -> residue."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: Context, terms: Mapping[Monomial, int] | None = None):
        self.ctx = ctx
        self.terms = _clean(terms or {}, ctx.p)
        for m in self.terms:
            if any(not 1 <= i <= ctx.d for i in m):
                raise ValueError(f"monomial {m} uses a generator outside 1..{ctx.d}")

    @classmethod
    def _raw(cls, ctx: Context, terms: dict) -> Polynomial:
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj.terms = terms
        return obj

    @classmethod
    def monomial(cls, ctx: Context, m: Monomial, coeff: int = 1) -> Polynomial:
        return cls(ctx, {tuple(m): coeff})

    @classmethod
    def generator(cls, ctx: Context, i: int) -> Polynomial:
        return cls.monomial(ctx, (i,))

    @classmethod
    def one(cls, ctx: Context) -> Polynomial:
        return cls(ctx, {(): 1})

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: Polynomial) -> Polynomial:
        _check_same(self, other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial._raw(self.ctx, _clean(out, self.ctx.p))

    def __neg__(self) -> Polynomial:
        return self.scale(-1)

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        _check_same(self, other)
        return Polynomial._raw(self.ctx, _mul_terms(self.terms, other.terms, self.ctx.p))

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: int) -> Polynomial:
        return Polynomial._raw(self.ctx, _clean({m: c * v for m, v in self.terms.items()}, self.ctx.p))

    def __pow__(self, n: int) -> Polynomial:
        out = Polynomial.one(self.ctx)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- grading ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return max(len(m) for m in self.terms)

    @property
    def valuation(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no valuation")
        return min(len(m) for m in self.terms)

    def component(self, n: int) -> Polynomial:
        return Polynomial._raw(self.ctx, {m: c for m, c in self.terms.items() if len(m) == n})

    def components(self) -> dict[int, Polynomial]:
        """Nonzero homogeneous components keyed by degree."""
        out: dict[int, dict] = {}
        for m, c in self.terms.items():
            out.setdefault(len(m), {})[m] = c
        return {n: Polynomial._raw(self.ctx, t) for n, t in sorted(out.items())}

    def is_homogeneous(self) -> bool:
        return len({len(m) for m in self.terms}) <= 1

    def leading_form(self) -> Polynomial:
        """Lowest-degree nonzero component."""
        return self.component(self.valuation)

    def leading_term(self) -> tuple[Monomial, int]:
        m = max(self.leading_form().terms, key=monomial_key)
        return m, self.terms[m]

    def monic(self) -> Polynomial:
        _, c = self.leading_term()
        return self.scale(pow(c, -1, self.ctx.p))

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda t: monomial_key(t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            if c == 1 and m:
                parts.append(render_monomial(m))
            elif m:
                parts.append(f"{c}*{render_monomial(m)}")
            else:
                parts.append(str(c))
        return " + ".join(parts)

    def __repr__(self):
        return f"Polynomial({self}, p={self.ctx.p})"


def commutator(a: Polynomial, b: Polynomial) -> Polynomial:
    """``a*b - b*a``."""
    return a * b - b * a


def leading_monomial(z) -> tuple[Monomial, int]:
    """Leading monomial and its coefficient.

    Series and inhomogeneous polynomials are read through their lowest-degree
    component first, then the greatest monomial of that component is taken.
    """
    if z.is_zero():
        raise ValueError("zero element has no leading monomial")
    return z.leading_term()


_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+)\s*\*?\s*)?((?:X\d+)(?:\s*\*\s*X\d+)*)?\s*")


def parse_polynomial(text: str, ctx: Context) -> Polynomial:
    """Parse ``"3*X1*X2 + 4*X2*X1 - X3"`` style input."""
    s = text.strip()
    if s == "0":
        return Polynomial(ctx)
    pos = 0
    terms: dict[Monomial, int] = {}
    first = True
    while pos < len(s):
        mt = _TERM.match(s, pos)
        sign, coeff, word = mt.group(1), mt.group(2), mt.group(3)
        if mt.end() == pos or (coeff is None and word is None) or (sign is None and not first):
            raise ValueError(f"cannot parse polynomial at column {pos + 1}: {text!r}")
        c = int(coeff) if coeff is not None else 1
        if sign == "-":
            c = -c
        m = tuple(int(x) for x in re.findall(r"X(\d+)", word)) if word else ()
        terms[m] = terms.get(m, 0) + c
        pos = mt.end()
        first = False
    return Polynomial(ctx, terms)


class TruncatedSeries:
    """Element of E / E_{N+1}: noncommutative series with degrees 0..N kept."""

    __slots__ = ("ctx", "cutoff", "terms")

    def __init__(self, ctx: Context, cutoff: int, terms: Mapping[Monomial, int] | None = None):
        if cutoff < 0:
            raise ValueError("cutoff must be >= 0")
        self.ctx = ctx
        self.cutoff = cutoff
        self.terms = {m: c for m, c in _clean(terms or {}, ctx.p).items() if len(m) <= cutoff}

    @classmethod
    def _raw(cls, ctx, cutoff, terms) -> TruncatedSeries:
        obj = cls.__new__(cls)
        obj.ctx, obj.cutoff, obj.terms = ctx, cutoff, terms
        return obj

    @classmethod
    def one(cls, ctx: Context, cutoff: int) -> TruncatedSeries:
        return cls(ctx, cutoff, {(): 1})

    @classmethod
    def generator(cls, ctx: Context, cutoff: int, i: int) -> TruncatedSeries:
        if not 1 <= i <= ctx.d:
            raise ValueError(f"generator X{i} outside 1..{ctx.d}")
        return cls(ctx, cutoff, {(i,): 1})

    @classmethod
    def from_polynomial(cls, f: Polynomial, cutoff: int) -> TruncatedSeries:
        return cls(f.ctx, cutoff, f.terms)

    def _check(self, other: TruncatedSeries):
        _check_same(self, other)
        if self.cutoff != other.cutoff:
            raise ContextMismatch(f"cutoff {self.cutoff} vs {other.cutoff}")

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return TruncatedSeries._raw(self.ctx, self.cutoff, _clean(out, self.ctx.p))

    def __neg__(self) -> TruncatedSeries:
        return self.scale(-1)

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        return self + (-other)

    def scale(self, c: int) -> TruncatedSeries:
        return TruncatedSeries._raw(
            self.ctx, self.cutoff, _clean({m: c * v for m, v in self.terms.items()}, self.ctx.p))

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        return mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.ctx, self.cutoff, self.terms) == (other.ctx, other.cutoff, other.terms)

    def __hash__(self):
        return hash((self.ctx, self.cutoff, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> int:
        return self.terms.get((), 0)

    @property
    def valuation(self) -> int | None:
        """Lowest nonzero degree, or None for the zero series (valuation > cutoff)."""
        return min((len(m) for m in self.terms), default=None)

    def component(self, n: int) -> Polynomial:
        return Polynomial._raw(self.ctx, {m: c for m, c in self.terms.items() if len(m) == n})

    def components(self) -> list[Polynomial]:
        """Homogeneous components for degrees 0..cutoff (zero ones included)."""
        return [self.component(n) for n in range(self.cutoff + 1)]

    def leading_form(self) -> Polynomial:
        v = self.valuation
        if v is None:
            raise ValueError("zero series has no leading form")
        return self.component(v)

    def leading_term(self) -> tuple[Monomial, int]:
        return self.leading_form().leading_term()

    def to_polynomial(self) -> Polynomial:
        return Polynomial._raw(self.ctx, dict(self.terms))

    def truncate(self, cutoff: int) -> TruncatedSeries:
        return TruncatedSeries(self.ctx, cutoff, self.terms)

    def __str__(self):
        return "\n".join(f"deg {n}: {c}" for n, c in enumerate(self.components()))

    def __repr__(self):
        return f"TruncatedSeries(N={self.cutoff}, {self.to_polynomial()})"


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Product in E / E_{N+1}."""
    a._check(b)
    return TruncatedSeries._raw(a.ctx, a.cutoff, _mul_terms(a.terms, b.terms, a.ctx.p, a.cutoff))


def invert_unit(a: TruncatedSeries) -> TruncatedSeries:
    """Inverse of a series with constant term 1, via (1+z)^-1 = sum (-z)^k."""
    if a.constant_term() != 1:
        raise ValueError(f"not a unit of the form 1+z: constant term {a.constant_term()}")
    p, N = a.ctx.p, a.cutoff
    minus_z = {m: (-c) % p for m, c in a.terms.items() if m}
    result = {(): 1}
    power = {(): 1}
    for _ in range(N):
        power = _mul_terms(power, minus_z, p, N)
        if not power:
            break
        for m, c in power.items():
            result[m] = result.get(m, 0) + c
    return TruncatedSeries._raw(a.ctx, N, _clean(result, p))


@dataclass(frozen=True)
class IntSeries:
    """Integer power series truncated after ``len(coeffs) - 1``."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int]):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in coeffs))

    @property
    def cutoff(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def __mul__(self, other: IntSeries) -> IntSeries:
        n = min(len(self), len(other))
        return IntSeries(
            sum(self.coeffs[k] * other.coeffs[i - k] for k in range(i + 1)) for i in range(n))

    def truncate(self, cutoff: int) -> IntSeries:
        return IntSeries(self.coeffs[:cutoff + 1])

    def padded(self, cutoff: int) -> IntSeries:
        c = self.coeffs[:cutoff + 1]
        return IntSeries(c + (0,) * (cutoff + 1 - len(c)))

    def first_difference(self, other: IntSeries) -> int | None:
        for n, (a, b) in enumerate(zip(self, other)):
            if a != b:
                return n
        return None

    def __str__(self):
        return " ".join(map(str, self.coeffs))


def invert_int_series(c, cutoff: int) -> IntSeries:
    """Exact reciprocal over Z to degree ``cutoff``; requires c_0 = 1."""
    c = tuple(c)
    if not c or c[0] != 1:
        raise ValueError("constant term must be 1")
    a = [1]
    for n in range(1, cutoff + 1):
        a.append(-sum(c[k] * a[n - k] for k in range(1, min(n, len(c) - 1) + 1)))
    return IntSeries(a)
