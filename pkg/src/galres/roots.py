"""Certified isolation of the complex roots of an integer polynomial.

Approximations come from Aberth-Ehrlich simultaneous iteration; correctness
comes from the a-posteriori inclusion discs D(z_i, n*|W_i|) built from the
Weierstrass corrections W_i = f(z_i) / prod_{j != i} (z_i - z_j): when those
discs are pairwise disjoint, each contains exactly one root.  The iteration
is only a way to find good centers, so any convergence quirk is harmless;
only the certificate decides.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import libmp
from mpmath.libmp import (
    from_int,
    fzero,
    mpf_abs,
    mpf_add,
    mpf_cmp,
    mpf_div,
    mpf_mul,
    mpf_mul_int,
    mpf_sqrt,
)

from .balls import (
    RAD_PREC,
    Ball,
    ball_from_fraction,
    ball_from_int,
    beval_poly,
    bconj,
    certified_separation,
    disjoint,
)
from .errors import NotSquarefree, PrecisionExhausted
from .polys import Poly, poly_gcd

DEFAULT_MAX_PRECISION = 16384


@dataclass(frozen=True)
class RootSet:
    """Disjoint certified balls, one per root of a squarefree polynomial."""

    polynomial: Poly
    balls: tuple[Ball, ...]
    precision_bits: int

    def __len__(self) -> int:
        return len(self.balls)


def _sort_key(ball: Ball):
    return (mpmath.make_mpf(ball.re), mpmath.make_mpf(ball.im))


def _start_points(n: int, radius, retry: int):
    """Deterministic, deliberately asymmetric starting circle."""
    pts = []
    spin = 0.41 + 0.77 * retry
    for k in range(n):
        theta = 2 * mpmath.pi * k / n + spin + k * 1e-3
        r = radius * (1 + k * 7e-4 + 0.03 * retry)
        pts.append(mpmath.mpc(r * mpmath.cos(theta), r * mpmath.sin(theta)))
    return pts


def _aberth_sweeps(coeffs, zs, wp: int, max_sweeps: int):
    """Run Aberth-Ehrlich sweeps at precision wp; returns refined points."""
    n = len(zs)
    with mpmath.workprec(wp + 16):
        zs = [mpmath.mpc(z) for z in zs]
        dcoeffs = [i * c for i, c in enumerate(coeffs)][1:]
        tol = mpmath.mpf(2) ** (-(wp + 2))
        for _ in range(max_sweeps):
            moved = mpmath.mpf(0)
            for i in range(n):
                z = zs[i]
                p = _horner(coeffs, z)
                if p == 0:
                    continue
                dp = _horner(dcoeffs, z)
                if dp == 0:
                    zs[i] = z + tol * (1 + abs(z))
                    moved = max(moved, tol)
                    continue
                w = p / dp
                s = mpmath.mpc(0)
                ok = True
                for j in range(n):
                    if j == i:
                        continue
                    d = z - zs[j]
                    if d == 0:
                        ok = False
                        break
                    s += 1 / d
                if not ok:
                    zs[i] = z + tol * (1 + abs(z)) * (i + 1)
                    moved = max(moved, tol)
                    continue
                denom = 1 - w * s
                step = w if denom == 0 else w / denom
                zs[i] = z - step
                rel = abs(step) / (1 + abs(zs[i]))
                if rel > moved:
                    moved = rel
            if moved < tol:
                break
        return zs


def _horner(coeffs, z):
    acc = mpmath.mpc(0)
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _certify(f: Poly, zs, wp: int):
    """Inclusion balls from Weierstrass corrections, or None if not disjoint."""
    n = f.degree
    lc_abs = from_int(abs(int(f.lc))) if isinstance(f.lc, int) else None
    mids = [(z.real._mpf_, z.imag._mpf_) for z in zs]
    balls = []
    for i, (re, im) in enumerate(mids):
        pt = Ball(re, im, fzero)
        fz = beval_poly(f.coeffs, pt, wp + 16)
        num_up = mpf_add(
            mpf_add(mpf_abs(fz.re), mpf_abs(fz.im), RAD_PREC, "u"), fz.rad, RAD_PREC, "u"
        )
        if lc_abs is not None:
            num_up = mpf_div(num_up, lc_abs, RAD_PREC, "u")
        else:
            lcf = ball_from_fraction(f.lc, wp)
            num_up = mpf_div(num_up, mpf_abs(lcf.re), RAD_PREC, "u")
        den2 = from_int(1)
        for j, (re2, im2) in enumerate(mids):
            if j == i:
                continue
            dre = libmp.mpf_sub(re, re2, 0, "n")
            dim = libmp.mpf_sub(im, im2, 0, "n")
            d2 = mpf_add(mpf_mul(dre, dre, 0, "n"), mpf_mul(dim, dim, 0, "n"), 0, "n")
            if d2 == fzero:
                return None
            den2 = mpf_mul(den2, d2, RAD_PREC, "d")
        den = mpf_sqrt(den2, RAD_PREC, "d")
        if mpf_cmp(den, fzero) <= 0:
            return None
        w_up = mpf_div(num_up, den, RAD_PREC, "u")
        rad = mpf_mul_int(w_up, n, RAD_PREC, "u")
        balls.append(Ball(re, im, rad))
    if not certified_separation(balls):
        return None
    return balls


def _realify(balls):
    """Zero the imaginary midpoint of balls certified to hold a real root."""
    out = list(balls)
    for i, b in enumerate(out):
        if b.im == fzero:
            continue
        cb = bconj(b)
        hits = [j for j, o in enumerate(balls) if not disjoint(cb, o)]
        if hits == [i]:
            out[i] = Ball(b.re, fzero, b.rad)
    if not certified_separation(out):
        return list(balls)
    return out


def _cauchy_radius(f: Poly) -> float:
    lead = abs(f.lc) if isinstance(f.lc, int) else abs(float(f.lc))
    hi = max(abs(float(c)) for c in f.coeffs)
    return 1.0 + hi / float(lead)


def isolate_roots(
    f: Poly,
    precision_bits: int,
    max_precision_bits: int = DEFAULT_MAX_PRECISION,
) -> RootSet:
    """Isolate all roots of squarefree f into disjoint certified balls.

    Balls are sorted by (real, imaginary) midpoint at the final precision.
    """
    if f.degree is None or f.degree < 1:
        raise ValueError("root isolation needs degree >= 1")
    if f.degree >= 2 and poly_gcd(f, f.derivative()).degree != 0:
        raise NotSquarefree("polynomial has a repeated root")
    if f.degree == 1:
        from fractions import Fraction

        root = -Fraction(f[0]) / Fraction(f[1])
        ball = ball_from_fraction(root, max(precision_bits, 64))
        return RootSet(f, (ball,), precision_bits)

    n = f.degree
    coeffs = [int(c) if isinstance(c, int) else c for c in f.coeffs]
    wp = precision_bits
    zs = None
    retry = 0
    while True:
        if zs is None:
            zs = _start_points(n, mpmath.mpf(_cauchy_radius(f)), retry)
        zs = _aberth_sweeps(coeffs, zs, wp, max_sweeps=64 + 8 * n)
        balls = _certify(f, zs, wp)
        if balls is not None:
            balls = _realify(balls)
            balls.sort(key=_sort_key)
            return RootSet(f, tuple(balls), wp)
        retry += 1
        if retry % 2 == 0:
            zs = None  # fresh, rotated start circle
        if retry >= 2:
            wp *= 2
            if wp > max_precision_bits:
                raise PrecisionExhausted(
                    f"root isolation failed below {max_precision_bits} bits"
                )


def refine(
    rs: RootSet,
    precision_bits: int,
    max_precision_bits: int = DEFAULT_MAX_PRECISION,
) -> RootSet:
    """Shrink the balls of rs; same roots, same order, radii never grow."""
    if rs.polynomial.degree == 1:
        return RootSet(rs.polynomial, rs.balls, max(rs.precision_bits, precision_bits))
    wp = max(precision_bits, rs.precision_bits)
    zs = [
        mpmath.mpc(mpmath.make_mpf(b.re), mpmath.make_mpf(b.im)) for b in rs.balls
    ]
    coeffs = list(rs.polynomial.coeffs)
    while True:
        zs = _aberth_sweeps(coeffs, zs, wp, max_sweeps=48)
        balls = _certify(rs.polynomial, zs, wp)
        if balls is not None:
            balls = _realify(balls)
            ok = True
            out = []
            for i, nb in enumerate(balls):
                ob = rs.balls[i]
                if disjoint(nb, ob):
                    ok = False
                    break
                if any(not disjoint(nb, rs.balls[j]) for j in range(len(balls)) if j != i):
                    ok = False
                    break
                out.append(nb if mpf_cmp(nb.rad, ob.rad) <= 0 else ob)
            if ok:
                return RootSet(rs.polynomial, tuple(out), wp)
        wp *= 2
        if wp > max_precision_bits:
            raise PrecisionExhausted(
                f"root refinement failed below {max_precision_bits} bits"
            )


def certified_distinct(values) -> bool:
    """True only if all balls are pairwise certified disjoint.

    False means "not certified at this precision", never "equal".
    """
    return certified_separation(list(values))
