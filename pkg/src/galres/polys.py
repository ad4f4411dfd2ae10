"""Exact dense univariate polynomial arithmetic over the rationals.

Coefficients are Python ints or ``fractions.Fraction`` values stored in
ascending-degree order with trailing zeros stripped, so equality is
structural.  The zero polynomial has an empty coefficient tuple and its
``degree`` is ``None`` rather than any integer.

Also provides residue-class arithmetic modulo a fixed monic polynomial
(:class:`QuotientRing` / :class:`FieldElement`), power sums of the roots
of a monic polynomial via Newton's identities, resultants and
discriminants.  Everything here is exact; no floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

from .errors import (
    BothZero,
    DivisionByZeroPolynomial,
    NonMonicInput,
    NotInvertible,
)

Rational = Fraction
Coeff = Union[int, Fraction]


def _norm_coeff(c: Coeff) -> Coeff:
    """Collapse integral Fractions to plain ints so equality is canonical."""
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return int(c)
        return c
    if isinstance(c, int):
        return c
    raise TypeError(f"coefficient must be int or Fraction, got {type(c).__name__}")


class Poly:
    """Dense univariate polynomial with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Coeff] = ()):
        cs = [_norm_coeff(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Coeff, ...] = tuple(cs)

    @classmethod
    def from_desc(cls, coeffs: Iterable[Coeff]) -> "Poly":
        """Build from coefficients listed highest degree first."""
        return cls(list(coeffs)[::-1])

    @classmethod
    def monomial(cls, degree: int, coeff: Coeff = 1) -> "Poly":
        return cls([0] * degree + [coeff])

    @classmethod
    def zero(cls) -> "Poly":
        return cls()

    @classmethod
    def one(cls) -> "Poly":
        return cls([1])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    # -- structure ---------------------------------------------------------

    @property
    def degree(self):
        """Degree as an int, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Coeff:
        if not self.coeffs:
            return 0
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def __getitem__(self, i: int) -> Coeff:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- ring operations ---------------------------------------------------

    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly([other])
        return NotImplemented

    def __add__(self, other) -> "Poly":
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other) -> "Poly":
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other) -> tuple["Poly", "Poly"]:
        other = Poly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise DivisionByZeroPolynomial("division by the zero polynomial")
        if self.is_zero or len(self.coeffs) < len(other.coeffs):
            return Poly(), self
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        blc = other.coeffs[-1]
        q = [0] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            factor = _norm_coeff(Fraction(c, 1) / blc if not isinstance(c, Fraction) else c / blc)
            q[i - db] = factor
            for j, cb in enumerate(other.coeffs):
                rem[i - db + j] -= factor * cb
        return Poly(q), Poly(rem)

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    # -- calculus / evaluation ---------------------------------------------

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Evaluate via Horner; exact for int/Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + Poly([c])
        return acc

    def monic(self) -> "Poly":
        if self.is_zero:
            raise DivisionByZeroPolynomial("cannot normalize the zero polynomial")
        if self.is_monic:
            return self
        lead = self.coeffs[-1]
        return Poly([_norm_coeff(Fraction(c) / lead) for c in self.coeffs])

    def height(self) -> int:
        """Max absolute value of the (integer) coefficients."""
        if not self.coeffs:
            return 0
        return max(abs(c) for c in self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r})"


# -- gcd machinery -----------------------------------------------------------


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor; gcd(a, 0) = monic(a)."""
    if a.is_zero and b.is_zero:
        raise BothZero("gcd(0, 0) is undefined")
    while not b.is_zero:
        a, b = b, a % b
        # keep coefficient growth in check
        if not b.is_zero:
            b = b.monic()
    return a.monic()


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic."""
    if a.is_zero and b.is_zero:
        raise BothZero("xgcd(0, 0) is undefined")
    r0, r1 = a, b
    s0, s1 = Poly.one(), Poly.zero()
    t0, t1 = Poly.zero(), Poly.one()
    while not r1.is_zero:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
        if not r1.is_zero:
            lead = r1.lc
            r1 = r1.monic()
            s1 = Poly([_norm_coeff(Fraction(c) / lead) for c in s1.coeffs])
            t1 = Poly([_norm_coeff(Fraction(c) / lead) for c in t1.coeffs])
    lead = r0.lc
    inv = Fraction(1, 1) / lead
    scale = lambda p: Poly([_norm_coeff(c * inv) for c in p.coeffs])
    return scale(r0), scale(s0), scale(t0)


def squarefree_part(f: Poly) -> Poly:
    """f divided by gcd(f, f'), made monic."""
    if f.is_zero:
        raise DivisionByZeroPolynomial("squarefree part of zero")
    if f.degree == 0:
        return Poly.one()
    g = poly_gcd(f, f.derivative())
    q, r = divmod(f.monic(), g)
    assert r.is_zero
    return q.monic()


def is_squarefree(f: Poly) -> bool:
    if f.is_zero or f.degree == 0:
        return False
    return poly_gcd(f, f.derivative()).degree == 0


# -- Newton's identities -----------------------------------------------------


def power_sums(g: Poly, count: int) -> list[Fraction]:
    """Power sums p_0..p_count of the roots of monic g, from its coefficients.

    Uses Newton's identities only; no root extraction.
    """
    if not g.is_monic:
        raise NonMonicInput("power sums require a monic polynomial")
    m = g.degree
    if m is None or m < 1:
        raise NonMonicInput("power sums require degree >= 1")
    # elementary symmetric functions: g = v^m - e1 v^{m-1} + e2 v^{m-2} - ...
    e = [Fraction(0)] * (m + 1)
    e[0] = Fraction(1)
    for i in range(1, m + 1):
        e[i] = Fraction((-1) ** i) * Fraction(g[m - i])
    p: list[Fraction] = [Fraction(m)]
    for k in range(1, count + 1):
        acc = Fraction(0)
        for i in range(1, min(k, m) + 1):
            acc += Fraction((-1) ** (i - 1)) * e[i] * p[k - i]
        if k <= m:
            acc += Fraction((-1) ** (k - 1)) * Fraction(k) * e[k]
        p.append(acc)
    return p


# -- resultants --------------------------------------------------------------


def resultant(a: Poly, b: Poly) -> Fraction:
    """Resultant via exact Gaussian elimination of the Sylvester matrix."""
    da, db = a.degree, b.degree
    if da is None or db is None:
        return Fraction(0)
    if da == 0:
        return Fraction(a.lc) ** db
    if db == 0:
        return Fraction(b.lc) ** da
    n = da + db
    rows: list[list[Fraction]] = []
    ac = [Fraction(c) for c in a.coeffs[::-1]]
    bc = [Fraction(c) for c in b.coeffs[::-1]]
    for i in range(db):
        rows.append([Fraction(0)] * i + ac + [Fraction(0)] * (n - i - len(ac)))
    for i in range(da):
        rows.append([Fraction(0)] * i + bc + [Fraction(0)] * (n - i - len(bc)))
    det = Fraction(1)
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        pv = rows[col][col]
        det *= pv
        for r in range(col + 1, n):
            if rows[r][col] == 0:
                continue
            factor = rows[r][col] / pv
            for c in range(col, n):
                rows[r][c] -= factor * rows[col][c]
    return det


def discriminant(f: Poly) -> Fraction:
    n = f.degree
    if n is None or n < 1:
        raise DivisionByZeroPolynomial("discriminant needs degree >= 1")
    sign = (-1) ** (n * (n - 1) // 2)
    return sign * resultant(f, f.derivative()) / Fraction(f.lc)


def is_perfect_square(q: Fraction) -> bool:
    q = Fraction(q)
    if q < 0:
        return False
    pn, pd = q.numerator, q.denominator
    rn, rd = math.isqrt(pn), math.isqrt(pd)
    return rn * rn == pn and rd * rd == pd


# -- residue classes modulo a fixed monic polynomial -------------------------


class QuotientRing:
    """Arithmetic in Q[v]/(G(v)) for a fixed monic modulus G of degree >= 1."""

    __slots__ = ("modulus",)

    def __init__(self, modulus: Poly):
        if not modulus.is_monic or modulus.degree < 1:
            raise NonMonicInput("modulus must be monic of degree >= 1")
        self.modulus = modulus

    def element(self, p: Poly) -> "FieldElement":
        return FieldElement(p % self.modulus, self)

    def constant(self, c: Coeff) -> "FieldElement":
        return self.element(Poly([c]))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(Poly(), self)

    @property
    def one(self) -> "FieldElement":
        return self.element(Poly.one())

    @property
    def gen(self) -> "FieldElement":
        """The residue of v itself."""
        return self.element(Poly.x())

    def __eq__(self, other) -> bool:
        return isinstance(other, QuotientRing) and self.modulus == other.modulus

    def __hash__(self) -> int:
        return hash(("QuotientRing", self.modulus))

    def __repr__(self) -> str:
        return f"QuotientRing(deg {self.modulus.degree})"


class FieldElement:
    """A residue class modulo the ring's G(v); degree strictly below deg G."""

    __slots__ = ("residue", "ring")

    def __init__(self, residue: Poly, ring: QuotientRing):
        if residue.degree is not None and residue.degree >= ring.modulus.degree:
            residue = residue % ring.modulus
        self.residue = residue
        self.ring = ring

    def _check(self, other: "FieldElement"):
        if self.ring != other.ring:
            raise ValueError("field elements live in different quotient rings")

    @staticmethod
    def _lift(x, ring: QuotientRing):
        if isinstance(x, FieldElement):
            return x
        if isinstance(x, (int, Fraction)):
            return ring.constant(x)
        return NotImplemented

    def __add__(self, other):
        other = FieldElement._lift(other, self.ring)
        if other is NotImplemented:
            return NotImplemented
        self._check(other)
        return FieldElement(self.residue + other.residue, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(-self.residue, self.ring)

    def __sub__(self, other):
        other = FieldElement._lift(other, self.ring)
        if other is NotImplemented:
            return NotImplemented
        self._check(other)
        return FieldElement(self.residue - other.residue, self.ring)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = FieldElement._lift(other, self.ring)
        if other is NotImplemented:
            return NotImplemented
        self._check(other)
        return FieldElement((self.residue * other.residue) % self.ring.modulus, self.ring)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        g, s, _ = poly_xgcd(self.residue, self.ring.modulus)
        if g.degree != 0:
            raise NotInvertible(
                "residue shares a nontrivial factor with the modulus"
            )
        return FieldElement(s % self.ring.modulus, self.ring)

    def __truediv__(self, other):
        other = FieldElement._lift(other, self.ring)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, n: int) -> "FieldElement":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.ring == other.ring and self.residue == other.residue
        if isinstance(other, (int, Fraction)):
            return self.residue == Poly([other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.residue, self.ring.modulus))

    @property
    def is_zero(self) -> bool:
        return self.residue.is_zero

    @property
    def is_constant(self) -> bool:
        return self.residue.degree is None or self.residue.degree == 0

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError("residue is not constant")
        return Fraction(self.residue[0])

    def __repr__(self) -> str:
        return f"FieldElement({list(self.residue.coeffs)!r})"


def poly_compose_mod(outer: Poly, inner: FieldElement) -> FieldElement:
    """outer(inner), reduced modulo the ring's modulus (Horner)."""
    ring = inner.ring
    acc = ring.zero
    for c in reversed(outer.coeffs):
        acc = acc * inner + c
    return acc
