"""Exact coefficient fields, monomials, term orders and sparse polynomials.

Monomials are plain tuples of nonnegative ints.  Polynomials are immutable
maps monomial -> nonzero coefficient, tied to a :class:`PolyRing` that fixes
the field and the variable names.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Dict, Iterable, Iterator, Optional, Sequence, Tuple

try:  # gmpy2 is an order of magnitude faster than Fraction
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

Monomial = Tuple[int, ...]

__all__ = [
    "FieldSpec",
    "QQ",
    "GF",
    "Monomial",
    "TermOrder",
    "DEGREVLEX",
    "NEGDEGREVLEX",
    "compare_monomials",
    "PolyRing",
    "Polynomial",
    "is_prime",
    "mono_mul",
    "mono_divides",
    "mono_div",
    "mono_lcm",
    "monomials_of_degree",
]


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


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: the rationals, or GF(p) for a prime p."""

    kind: str = "rationals"
    characteristic: int = 0

    def __post_init__(self):
        if self.kind == "rationals":
            if self.characteristic != 0:
                raise ValueError("the rationals have characteristic 0")
        elif self.kind == "prime-field":
            if not is_prime(self.characteristic):
                raise ValueError(f"{self.characteristic} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @property
    def p(self) -> int:
        return self.characteristic

    def __call__(self, c):
        """Coerce an int / Fraction / string like '3/4' into the field."""
        if self.characteristic:
            if isinstance(c, str):
                c = Fraction(c)
            if isinstance(c, int):
                return c % self.characteristic
            c = Fraction(c)
            den = c.denominator % self.characteristic
            if den == 0:
                raise ZeroDivisionError(f"denominator vanishes mod {self.characteristic}")
            return c.numerator * pow(den, -1, self.characteristic) % self.characteristic
        if isinstance(c, str):
            c = Fraction(c)
        if isinstance(c, Fraction):
            return _Q(c.numerator, c.denominator)
        return _Q(c)

    def inv(self, c):
        if self.characteristic:
            return pow(c, -1, self.characteristic)
        return 1 / c

    def to_fraction(self, c) -> Fraction:
        if self.characteristic:
            return Fraction(int(c))
        return Fraction(int(c.numerator), int(c.denominator))

    def __str__(self):
        return f"GF({self.characteristic})" if self.characteristic else "QQ"


QQ = FieldSpec()


def GF(p: int) -> FieldSpec:
    return FieldSpec("prime-field", p)


# ---------------------------------------------------------------- monomials


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomials_of_degree(nvars: int, deg: int) -> Iterator[Monomial]:
    """All exponent vectors of total degree ``deg``, lex-descending."""
    if nvars == 0:
        if deg == 0:
            yield ()
        return
    if nvars == 1:
        yield (deg,)
        return
    for first in range(deg, -1, -1):
        for rest in monomials_of_degree(nvars - 1, deg - first):
            yield (first,) + rest


@dataclass(frozen=True)
class TermOrder:
    """Graded reverse-lexicographic order, or its local (negative degree) twin.

    ``degrevlex`` compares total degree first (higher wins), ties broken by
    the last variable (smaller exponent wins).  ``negdegrevlex`` reverses the
    degree comparison only: lower degree is *larger*, which makes it a local
    order whose leading term is an initial form term.
    """

    kind: str = "degrevlex"

    def __post_init__(self):
        if self.kind not in ("degrevlex", "negdegrevlex"):
            raise ValueError(f"unknown term order {self.kind!r}")

    def key(self, m: Monomial):
        tie = tuple(-e for e in reversed(m))
        d = sum(m)
        return (d, tie) if self.kind == "degrevlex" else (-d, tie)


DEGREVLEX = TermOrder("degrevlex")
NEGDEGREVLEX = TermOrder("negdegrevlex")


def compare_monomials(a: Sequence[int], b: Sequence[int], ord: TermOrder = DEGREVLEX) -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)} variables")
    ka, kb = ord.key(tuple(a)), ord.key(tuple(b))
    return (ka > kb) - (ka < kb)


# -------------------------------------------------------------- polynomials


class PolyRing:
    """k[x_1..x_n] with named variables."""

    def __init__(self, field: FieldSpec, names: Sequence[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"repeated variable names in {names}")
        self.field = field
        self.names = names
        self.nvars = len(names)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and (self.field, self.names) == (other.field, other.names)

    def __hash__(self):
        return hash((self.field, self.names))

    def __repr__(self):
        return f"{self.field}[{','.join(self.names)}]"

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.monomial((0,) * self.nvars)

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: self.field(c)})

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.nvars or min(exps, default=0) < 0:
            raise ValueError(f"bad exponent vector {exps} for {self}")
        return Polynomial(self, {exps: self.field(coeff)})

    def gens(self) -> Tuple["Polynomial", ...]:
        out = []
        for i in range(self.nvars):
            e = [0] * self.nvars
            e[i] = 1
            out.append(self.monomial(e))
        return tuple(out)

    def var(self, name: str) -> "Polynomial":
        try:
            i = self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None
        return self.gens()[i]

    def from_dict(self, terms: Dict[Monomial, object]) -> "Polynomial":
        f = self.field
        out = {}
        for m, c in terms.items():
            c = f(c)
            if c:
                out[tuple(m)] = c
        return Polynomial(self, out)

    def parse(self, text: str) -> "Polynomial":
        from .session import parse_poly

        return parse_poly(text, self)


class Polynomial:
    """Immutable sparse polynomial.  No zero coefficients are stored."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Dict[Monomial, object]):
        self.ring = ring
        self._terms = terms
        self._hash = None

    # construction helpers assume ``terms`` is already clean
    @property
    def terms(self) -> Dict[Monomial, object]:
        return dict(self._terms)

    def sorted_terms(self, order: TermOrder = DEGREVLEX):
        return sorted(self._terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def __iter__(self):
        return iter(self.sorted_terms())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    def degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def order(self) -> int:
        """Lowest total degree of a term (-1 for zero)."""
        return min((sum(m) for m in self._terms), default=-1)

    def lead(self, order: TermOrder = DEGREVLEX):
        m = max(self._terms, key=order.key)
        return m, self._terms[m]

    def coeff(self, m: Sequence[int]):
        return self._terms.get(tuple(m), self.ring.field(0))

    def _check(self, other: "Polynomial"):
        if not isinstance(other, Polynomial):
            raise TypeError(f"expected Polynomial, got {type(other).__name__}")
        if other.ring != self.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._lift(other)
        p = self.ring.field.characteristic
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if p:
                s %= p
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.characteristic
        if p:
            return Polynomial(self.ring, {m: (-c) % p for m, c in self._terms.items()})
        return Polynomial(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        p = self.ring.field.characteristic
        out: Dict[Monomial, object] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        if p:
            out = {m: c % p for m, c in out.items()}
        return Polynomial(self.ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        return self * self.ring.const(c)

    def mul_monomial(self, t: Monomial, c=1) -> "Polynomial":
        c = self.ring.field(c)
        p = self.ring.field.characteristic
        out = {}
        for m, a in self._terms.items():
            v = a * c
            if p:
                v %= p
            if v:
                out[tuple(x + y for x, y in zip(m, t))] = v
        return Polynomial(self.ring, out)

    def truncate(self, degree: int) -> "Polynomial":
        """Drop every term of total degree >= ``degree``."""
        return Polynomial(self.ring, {m: c for m, c in self._terms.items() if sum(m) < degree})

    def evaluate(self, point: Sequence):
        f = self.ring.field
        total = f(0)
        for m, c in self._terms.items():
            v = c
            for x, e in zip(point, m):
                v = v * f(x) ** e
            total = total + v
        if f.characteristic:
            total %= f.characteristic
        return total

    def map_field(self, field: FieldSpec) -> "Polynomial":
        """Reduce rational coefficients into another field (e.g. mod p)."""
        ring = PolyRing(field, self.ring.names)
        src = self.ring.field
        return ring.from_dict({m: src.to_fraction(c) for m, c in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r} in {self.ring})"


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def _format_coeff(field: FieldSpec, c) -> str:
    fr = field.to_fraction(c)
    return str(fr.numerator) if fr.denominator == 1 else f"{fr.numerator}/{fr.denominator}"


def format_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for n, e in zip(names, m):
        if e == 1:
            parts.append(n)
        elif e > 1:
            parts.append(f"{n}^{e}")
    return "*".join(parts)


def format_poly(f: Polynomial, order: TermOrder = DEGREVLEX) -> str:
    """Render in the session-file syntax, leading term first."""
    if not f:
        return "0"
    field, names = f.ring.field, f.ring.names
    out = []
    for m, c in f.sorted_terms(order):
        fr = field.to_fraction(c)
        neg = fr < 0
        mag = -fr if neg else fr
        mono = format_monomial(m, names)
        if not mono:
            body = _format_coeff(QQ, QQ(mag))
        elif mag == 1:
            body = mono
        else:
            body = f"{_format_coeff(QQ, QQ(mag))}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def sort_monomials(monos: Iterable[Monomial], order: TermOrder = DEGREVLEX):
    return sorted(monos, key=cmp_to_key(lambda a, b: compare_monomials(a, b, order)))
