"""Certified complex ball arithmetic on mpmath's raw mpf layer.

A :class:`Ball` is a complex midpoint (two raw mpf tuples) plus a
nonnegative error radius.  Every operation returns a ball that is
guaranteed to contain the exact result whenever the inputs contain
their exact values: midpoints are computed with correctly-rounded
mpf arithmetic at an explicit working precision and the rounding
error is folded into the radius, always rounding the radius up.

Radii are kept at a small fixed precision (RAD_PREC) with 'u'
(away-from-zero) rounding, which is upward for nonnegative values.
Exact integer/rational midpoints get radius zero.
"""

from __future__ import annotations

from fractions import Fraction

from mpmath import libmp
from mpmath.libmp import (
    from_int,
    from_rational,
    fzero,
    mpf_abs,
    mpf_add,
    mpf_cmp,
    mpf_mul,
    mpf_mul_int,
    mpf_neg,
    mpf_shift,
    mpf_sub,
    to_float,
)

RAD_PREC = 40
_UP = "u"
_HALF = libmp.fhalf


def _rup(x, y):
    """Radius addition, rounded up."""
    return mpf_add(x, y, RAD_PREC, _UP)


def _rmul(x, y):
    return mpf_mul(x, y, RAD_PREC, _UP)


class Ball:
    """Complex midpoint + radius; the certified value lies within radius."""

    __slots__ = ("re", "im", "rad")

    def __init__(self, re, im, rad):
        self.re = re
        self.im = im
        self.rad = rad

    def __repr__(self) -> str:
        return (
            f"Ball({to_float(self.re)}{'+' if to_float(self.im) >= 0 else ''}"
            f"{to_float(self.im)}j, rad~{to_float(self.rad, strict=False)})"
        )

    @property
    def is_exact(self) -> bool:
        return self.rad == fzero


def ball_from_int(n: int) -> Ball:
    return Ball(from_int(n), fzero, fzero)


def ball_from_fraction(q: Fraction, wp: int) -> Ball:
    q = Fraction(q)
    if q.denominator == 1:
        return ball_from_int(q.numerator)
    mid = from_rational(q.numerator, q.denominator, wp, "n")
    # correctly rounded: error <= ulp/2 <= |mid| * 2^-wp
    rad = mpf_shift(mpf_abs(mid), -wp + 1)
    return Ball(mid, fzero, rad)


def ball_from_mid(re, im, rad=fzero) -> Ball:
    return Ball(re, im, rad)


def mid_abs1(a: Ball):
    """Upper bound on |midpoint| via the 1-norm (exact add, then round up)."""
    return mpf_add(mpf_abs(a.re), mpf_abs(a.im), RAD_PREC, _UP)


def abs_upper(a: Ball):
    """Certified upper bound on |z| for every z in the ball."""
    return _rup(mid_abs1(a), a.rad)


def abs_lower(a: Ball):
    """Certified lower bound on |z| for every z in the ball (>= 0)."""
    m = mpf_abs(a.re) if mpf_cmp(mpf_abs(a.re), mpf_abs(a.im)) >= 0 else mpf_abs(a.im)
    lo = mpf_sub(m, a.rad, RAD_PREC, "d")
    if mpf_cmp(lo, fzero) < 0:
        return fzero
    return lo


def bneg(a: Ball) -> Ball:
    return Ball(mpf_neg(a.re), mpf_neg(a.im), a.rad)


def bconj(a: Ball) -> Ball:
    return Ball(a.re, mpf_neg(a.im), a.rad)


def badd(a: Ball, b: Ball, wp: int) -> Ball:
    re = mpf_add(a.re, b.re, wp, "n")
    im = mpf_add(a.im, b.im, wp, "n")
    round_err = mpf_shift(mpf_add(mpf_abs(re), mpf_abs(im), RAD_PREC, _UP), 1 - wp)
    rad = _rup(_rup(a.rad, b.rad), round_err)
    return Ball(re, im, rad)


def bsub(a: Ball, b: Ball, wp: int) -> Ball:
    return badd(a, bneg(b), wp)


def bmul(a: Ball, b: Ball, wp: int) -> Ball:
    p1 = mpf_mul(a.re, b.re, wp, "n")
    p2 = mpf_mul(a.im, b.im, wp, "n")
    p3 = mpf_mul(a.re, b.im, wp, "n")
    p4 = mpf_mul(a.im, b.re, wp, "n")
    re = mpf_sub(p1, p2, wp, "n")
    im = mpf_add(p3, p4, wp, "n")
    am = mid_abs1(a)
    bm = mid_abs1(b)
    ab = _rmul(am, bm)
    # each of the six correctly-rounded mpf ops contributes <= 2^-wp * A*B
    round_err = mpf_shift(ab, 3 - wp)
    rad = _rup(
        _rup(_rmul(am, b.rad), _rmul(bm, a.rad)),
        _rup(_rmul(a.rad, b.rad), round_err),
    )
    return Ball(re, im, rad)


def bmul_int(a: Ball, n: int, wp: int) -> Ball:
    if n == 0:
        return ball_from_int(0)
    re = mpf_mul_int(a.re, n, wp, "n")
    im = mpf_mul_int(a.im, n, wp, "n")
    absn = from_int(abs(n))
    round_err = mpf_shift(_rmul(absn, mid_abs1(a)), 1 - wp)
    rad = _rup(_rmul(absn, a.rad), round_err)
    return Ball(re, im, rad)


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = x
    if man == 0:
        # covers zero; specials (inf/nan) never arise here
        return Fraction(0)
    man = int(man)
    if sign:
        man = -man
    if exp >= 0:
        return Fraction(man * (1 << exp))
    return Fraction(man, 1 << -exp)


def mid_fractions(a: Ball) -> tuple[Fraction, Fraction]:
    return _mpf_to_fraction(a.re), _mpf_to_fraction(a.im)


def rad_fraction(a: Ball) -> Fraction:
    return _mpf_to_fraction(a.rad)


def nearest_int(a: Ball):
    """Classify the ball against the integers.

    Returns ('int', k) when radius < 1/2 and k is the unique integer the
    ball can contain; ('reject', None) when radius < 1/2 and the ball
    provably contains no integer; ('unknown', None) when radius >= 1/2.
    """
    if mpf_cmp(a.rad, _HALF) >= 0:
        return "unknown", None
    re, im = mid_fractions(a)
    rad = rad_fraction(a)
    k = _round_half_away(re)
    if abs(re - k) <= rad and abs(im) <= rad:
        return "int", k
    return "reject", None


def _round_half_away(q: Fraction) -> int:
    n, d = q.numerator, q.denominator
    if n >= 0:
        return (2 * n + d) // (2 * d)
    return -((-2 * n + d) // (2 * d))


def contains_exact(a: Ball, re: Fraction, im: Fraction = Fraction(0)) -> bool:
    """Exact check that the rational point re + im*i lies in the ball."""
    mre, mim = mid_fractions(a)
    rad = rad_fraction(a)
    return (mre - re) ** 2 + (mim - im) ** 2 <= rad * rad


def dist_lower(a: Ball, b: Ball):
    """Certified lower bound on |mid_a - mid_b| (exact diff, max component)."""
    dre = mpf_abs(mpf_sub(a.re, b.re, 0, "n"))
    dim = mpf_abs(mpf_sub(a.im, b.im, 0, "n"))
    return dre if mpf_cmp(dre, dim) >= 0 else dim


def disjoint(a: Ball, b: Ball) -> bool:
    """True only if the balls are certified disjoint."""
    rr = _rup(a.rad, b.rad)
    return mpf_cmp(dist_lower(a, b), rr) > 0


def certified_separation(balls) -> bool:
    """True only if all balls are pairwise certified disjoint."""
    n = len(balls)
    for i in range(n):
        for j in range(i + 1, n):
            if not disjoint(balls[i], balls[j]):
                return False
    return True


def to_complex(a: Ball) -> complex:
    return complex(to_float(a.re, strict=False), to_float(a.im, strict=False))


def rad_float_upper(a: Ball) -> float:
    """Float upper bound on the radius (with a generous safety factor)."""
    f = to_float(a.rad, strict=False)
    return f * 1.0000001 + 5e-324


# -- ball polynomials (lists of Ball, ascending degree) ----------------------


def bpoly_mul(p: list[Ball], q: list[Ball], wp: int) -> list[Ball]:
    out = [ball_from_int(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] = badd(out[i + j], bmul(a, b, wp), wp)
    return out


def bpoly_product_tree(factors: list[list[Ball]], wp: int) -> list[Ball]:
    """Balanced product of ball polynomials."""
    if not factors:
        return [ball_from_int(1)]
    level = factors
    while len(level) > 1:
        nxt = []
        for i in range(0, len(level) - 1, 2):
            nxt.append(bpoly_mul(level[i], level[i + 1], wp))
        if len(level) % 2:
            nxt.append(level[-1])
        level = nxt
    return level[0]


def bpoly_from_roots(roots: list[Ball], wp: int) -> list[Ball]:
    """Monic polynomial prod (v - r) as a ball polynomial."""
    factors = [[bneg(r), ball_from_int(1)] for r in roots]
    return bpoly_product_tree(factors, wp)


def beval_poly(coeffs, at: Ball, wp: int) -> Ball:
    """Evaluate an exact int/Fraction coefficient polynomial at a ball."""
    acc = ball_from_int(0)
    for c in reversed(list(coeffs)):
        acc = bmul(acc, at, wp)
        cb = ball_from_int(c) if isinstance(c, int) else ball_from_fraction(c, wp)
        acc = badd(acc, cb, wp)
    return acc


def beval_bpoly(coeffs: list[Ball], at: Ball, wp: int) -> Ball:
    acc = ball_from_int(0)
    for c in reversed(coeffs):
        acc = badd(bmul(acc, at, wp), c, wp)
    return acc


def synthetic_quotient(int_coeffs, root: Ball, wp: int) -> list[Ball]:
    """Ball coefficients of F(v)/(v - root) for exact F, by Horner descent."""
    n = len(int_coeffs) - 1
    out: list[Ball] = [None] * n
    acc = ball_from_int(int_coeffs[-1])
    out[n - 1] = acc
    for i in range(n - 1, 0, -1):
        acc = badd(bmul(acc, root, wp), ball_from_int(int_coeffs[i]), wp)
        out[i - 1] = acc
    return out
