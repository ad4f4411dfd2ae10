"""Weighted-sum resolvent of a squarefree integer polynomial.

Pipeline: pick integer weights whose n! weighted root sums are pairwise
distinct, expand the monic resolvent F(v) = prod_sigma (v - V_sigma) in
certified ball arithmetic and round to exact integers, cut out the factor
G(v) of F vanishing at the distinguished sum V_1, and compute the
root-expression residues R_k with x_k = R_k(V_1) via Lagrange numerators
H_k(v) = sum_sigma x_{sigma(k)} prod_{tau != sigma} (v - V_tau), so that
R_k = H_k / F' mod G.

Every rounded object is re-certified exactly: gcd(F, F') = 1, G | F,
f(R_k) = 0 mod G, and sum_k n_k R_k = v mod G.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product

from . import factor as factor_mod
from .balls import (
    Ball,
    badd,
    ball_from_int,
    bmul,
    bmul_int,
    bpoly_from_roots,
    bsub,
    nearest_int,
    synthetic_quotient,
    to_complex,
)
from .errors import (
    CertificateFailed,
    InternalError,
    PrecisionExhausted,
    SearchExhausted,
)
from .factor import NeedMorePrecision, irreducible_factor_containing, subset_pruning_bounds
from .polys import (
    FieldElement,
    Poly,
    QuotientRing,
    poly_compose_mod,
    poly_gcd,
    squarefree_part,
)
from .roots import RootSet, certified_distinct, isolate_roots, refine
from .roots import _sort_key as _ball_sort_key


@dataclass
class ResolventData:
    """Everything the downstream group construction needs, fully certified."""

    f: Poly                      # monic integral squarefree working polynomial
    original: Poly               # polynomial as supplied (before normalization)
    scale: int                   # root scale factor: roots(f) = scale * roots(original)
    squarefree_collapsed: bool
    weights: tuple[int, ...]
    F: Poly
    roots_f: RootSet
    roots_V: RootSet             # balls of F's roots, sorted by (re, im)
    v_perms: tuple[tuple[int, ...], ...]  # permutation generating each V ball
    v1_index: int                # index of the identity-arrangement sum
    G: Poly
    subset: tuple[int, ...]      # indices into roots_V.balls of G's roots
    ring: QuotientRing
    R: tuple[FieldElement, ...]
    f_factors: tuple[Poly, ...]  # irreducible factors of f over Q
    _monomial_cache: dict = field(default_factory=dict, repr=False, compare=False)
    _power_sum_cache: list = field(default_factory=list, repr=False, compare=False)
    _embedding_cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def order(self) -> int:
        return self.G.degree


@dataclass
class BuildOptions:
    precision_bits: int = 128
    max_precision_bits: int = 16384
    max_weight: int = 64


def _factorize_int(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def normalize_monic_integral(f: Poly) -> tuple[Poly, int]:
    """Smallest positive c with c^n f(y/c)/lc(f) monic integral.

    The returned polynomial's roots are c times the roots of f.
    """
    n = f.degree
    if n is None or n < 1:
        raise ValueError("normalization needs degree >= 1")
    lead = Fraction(f.lc)
    ratios = [Fraction(f[i]) / lead for i in range(n)]
    prime_exp: dict[int, int] = {}
    for i, q in enumerate(ratios):
        den = q.denominator
        if den == 1:
            continue
        k = n - i
        for p, e in _factorize_int(den).items():
            need = -(-e // k)
            if prime_exp.get(p, 0) < need:
                prime_exp[p] = need
    c = 1
    for p, e in prime_exp.items():
        c *= p**e
    coeffs = []
    for i in range(n):
        val = ratios[i] * Fraction(c) ** (n - i)
        if val.denominator != 1:
            raise InternalError("normalization scale did not clear denominators")
        coeffs.append(int(val))
    coeffs.append(1)
    return Poly(coeffs), c


def _weight_candidates(n: int, cap: int):
    first = tuple(range(1, n + 1))
    yield first
    for m in range(1, cap + 1):
        for tup in product(range(1, m + 1), repeat=n):
            if max(tup) != m or tup == first:
                continue
            if len(set(tup)) != n:
                # a repeated weight collapses the two sums that swap its roots
                continue
            yield tup


def all_permutations(n: int) -> list[tuple[int, ...]]:
    return list(permutations(range(n)))


def weighted_sum_balls(rs: RootSet, weights, perms) -> list[Ball]:
    """One certified ball per permutation: V_sigma = sum_k w_k x_{sigma(k)}."""
    wp = rs.precision_bits
    scaled = [[bmul_int(b, w, wp) for b in rs.balls] for w in weights]
    out = []
    for sigma in perms:
        acc = scaled[0][sigma[0]]
        for k in range(1, len(weights)):
            acc = badd(acc, scaled[k][sigma[k]], wp)
        out.append(acc)
    return out


def _diff_product_square_class(vb, wp: int):
    """Classify prod_{i<j} (V_i - V_j)^2, an exact integer, against zero.

    Returns 'zero', 'nonzero', or 'unknown'.
    """
    acc = ball_from_int(1)
    for i in range(len(vb)):
        for j in range(i + 1, len(vb)):
            d = bsub(vb[i], vb[j], wp)
            acc = bmul(acc, bmul(d, d, wp), wp)
    status, k = nearest_int(acc)
    if status == "int" and k == 0:
        return "zero"
    if status == "reject" or (status == "int" and k != 0):
        return "nonzero"
    return "unknown"


def choose_weights(
    roots: RootSet,
    max_weight: int = 64,
    max_precision_bits: int = 16384,
) -> tuple[tuple[int, ...], RootSet]:
    """First weight tuple (search order: (1..n), then by max entry, lex)
    whose n! weighted sums are certified pairwise distinct.

    Degenerate tuples are rejected exactly: the squared product of all
    pairwise sum differences is an integer, and a ball around it that
    rounds to 0 proves a collision.
    """
    n = roots.polynomial.degree
    rs = roots
    perms = all_permutations(n)
    for tup in _weight_candidates(n, max_weight):
        while True:
            vb = weighted_sum_balls(rs, tup, perms)
            if certified_distinct(vb):
                return tup, rs
            cls = _diff_product_square_class(vb, rs.precision_bits)
            if cls == "zero":
                break
            if rs.precision_bits * 2 > max_precision_bits:
                raise PrecisionExhausted(
                    "could not separate weighted sums at the precision cap"
                )
            rs = refine(rs, rs.precision_bits * 2, max_precision_bits)
    raise SearchExhausted(f"no valid weights with entries below {max_weight}")


def _round_ball_poly(coeff_balls) -> list[int] | None:
    """Round ball coefficients to certified integers; None means escalate."""
    out = []
    for cb in coeff_balls:
        status, k = nearest_int(cb)
        if status == "unknown":
            return None
        if status == "reject":
            raise InternalError(
                "certified non-integer coefficient where an integer was proven"
            )
        out.append(k)
    return out


def _estimate_bits(vb, r: int) -> int:
    mx = 1.0
    for b in vb:
        z = to_complex(b)
        m = abs(z.real) + abs(z.imag)
        if m > mx and m == m:  # skip NaN
            mx = m
    try:
        per_root = max(1.0, math.log2(1.0 + mx))
    except (ValueError, OverflowError):
        per_root = 64.0
    return int(r * per_root) + r + 96


def build_resolvent_F(
    roots: RootSet,
    weights,
    max_precision_bits: int = 16384,
) -> tuple[Poly, RootSet]:
    """Exact monic resolvent, certified squarefree."""
    perms = all_permutations(len(weights))
    F, rs, _ = _resolvent_with_sums(roots, weights, perms, max_precision_bits)
    return F, rs


def _resolvent_with_sums(rs, weights, perms, max_precision_bits):
    r = len(perms)
    while True:
        vb = weighted_sum_balls(rs, weights, perms)
        if certified_distinct(vb):
            need = _estimate_bits(vb, r)
            if rs.precision_bits >= need:
                coeff_balls = bpoly_from_roots(vb, rs.precision_bits + 16)
                ints = _round_ball_poly(coeff_balls)
                if ints is not None:
                    F = Poly(ints)
                    if not F.is_monic or F.degree != r:
                        raise InternalError("resolvent rounding lost monicity")
                    if poly_gcd(F, F.derivative()).degree != 0:
                        raise CertificateFailed(
                            "resolvent not squarefree despite certified distinct sums"
                        )
                    return F, rs, vb
                need = rs.precision_bits * 2
        else:
            need = rs.precision_bits * 2
        if need > max_precision_bits:
            raise PrecisionExhausted("resolvent rounding failed at the precision cap")
        rs = refine(rs, need, max_precision_bits)


def build_lagrange_numerators(
    roots: RootSet,
    weights,
    F: Poly,
    max_precision_bits: int = 16384,
) -> tuple[list[Poly], RootSet]:
    """Exact integer numerators H_k with H_k(V_sigma) = x_{sigma(k)} F'(V_sigma)."""
    perms = all_permutations(len(weights))
    rs = roots
    while True:
        vb = weighted_sum_balls(rs, weights, perms)
        result = _try_numerators(rs, vb, perms, F, len(weights))
        if result is not None:
            return result, rs
        need = rs.precision_bits * 2
        if need > max_precision_bits:
            raise PrecisionExhausted("numerator rounding failed at the precision cap")
        rs = refine(rs, need, max_precision_bits)


def _try_numerators(rs, vb, perms, F, n):
    wp = rs.precision_bits + 16
    r = F.degree
    quotients = [synthetic_quotient(F.coeffs, v, wp) for v in vb]
    out = []
    for k in range(n):
        acc = [ball_from_int(0)] * r
        for s, sigma in enumerate(perms):
            xb = rs.balls[sigma[k]]
            qs = quotients[s]
            for j in range(r):
                acc[j] = badd(acc[j], bmul(xb, qs[j], wp), wp)
        ints = _round_ball_poly(acc)
        if ints is None:
            return None
        out.append(Poly(ints))
    return out


def root_expressions(f: Poly, F: Poly, G: Poly, H: list[Poly], weights) -> tuple[QuotientRing, tuple[FieldElement, ...]]:
    """R_k = H_k / F' as residues mod G, with exact certificates."""
    ring = QuotientRing(G)
    inv = ring.element(F.derivative()).inverse()
    R = tuple(ring.element(h) * inv for h in H)
    for rk in R:
        if not poly_compose_mod(f, rk).is_zero:
            raise CertificateFailed("f(R_k) != 0 mod G")
    acc = ring.zero
    for w, rk in zip(weights, R):
        acc = acc + rk * w
    if acc != ring.gen:
        raise CertificateFailed("sum of weighted root expressions != v mod G")
    for i in range(len(R)):
        for j in range(i + 1, len(R)):
            if R[i] == R[j]:
                raise CertificateFailed("root expressions not pairwise distinct mod G")
    return ring, R


def factor_into_irreducibles(g: Poly, rs: RootSet, max_precision_bits: int = 16384):
    """Irreducible factorization of monic squarefree g over Q, by subset
    recombination on its own certified roots."""
    remaining = list(range(len(rs.balls)))
    current = g
    out = []
    local = rs
    while remaining:
        while True:
            try:
                fac, subset = irreducible_factor_containing(
                    current,
                    local,
                    remaining[0],
                    sizes=range(1, len(remaining) + 1),
                    candidate_indices=remaining,
                )
                break
            except NeedMorePrecision:
                need = local.precision_bits * 2
                if need > max_precision_bits:
                    raise PrecisionExhausted(
                        "factorization of f failed at the precision cap"
                    )
                local = refine(local, need, max_precision_bits)
        out.append(fac)
        remaining = [i for i in remaining if i not in set(subset)]
        q, rem = divmod(current, fac)
        if not rem.is_zero:
            raise InternalError("irreducible factor does not divide")
        current = q
    return tuple(out)


def build_resolvent_data(original: Poly, options: BuildOptions | None = None) -> ResolventData:
    """Run the whole exact construction for a rational input polynomial."""
    if options is None:
        options = BuildOptions()
    if original.degree is None or original.degree < 1:
        raise ValueError("input must have degree >= 1")

    sf = squarefree_part(original)
    collapsed = sf.degree != original.degree
    f, scale = normalize_monic_integral(sf)
    n = f.degree
    perms = all_permutations(n)

    rs = isolate_roots(f, options.precision_bits, options.max_precision_bits)
    f_factors = factor_into_irreducibles(f, rs, options.max_precision_bits)
    irreducible = len(f_factors) == 1
    weights, rs = choose_weights(rs, options.max_weight, options.max_precision_bits)

    while True:
        F, rs, vb = _resolvent_with_sums(rs, weights, perms, options.max_precision_bits)
        order = sorted(range(len(vb)), key=lambda i: _ball_sort_key(vb[i]))
        sorted_balls = tuple(vb[i] for i in order)
        v_perms = tuple(perms[i] for i in order)
        v1_index = v_perms.index(tuple(range(n)))
        roots_V = RootSet(F, sorted_balls, rs.precision_bits)
        sizes = [s for s in subset_pruning_bounds(n, irreducible) if s <= F.degree]
        try:
            G, subset = irreducible_factor_containing(F, roots_V, v1_index, sizes=sizes)
        except NeedMorePrecision:
            need = rs.precision_bits * 2
            if need > options.max_precision_bits:
                raise PrecisionExhausted("factor search failed at the precision cap")
            rs = refine(rs, need, options.max_precision_bits)
            continue
        if G is None:
            # pruning assumptions failed (should not happen): all cardinalities
            try:
                G, subset = irreducible_factor_containing(F, roots_V, v1_index)
            except NeedMorePrecision:
                need = rs.precision_bits * 2
                if need > options.max_precision_bits:
                    raise PrecisionExhausted("factor search failed at the precision cap")
                rs = refine(rs, need, options.max_precision_bits)
                continue
        if G is None:
            raise InternalError("no divisor of F found; resolvent is inconsistent")
        try:
            H, rs = build_lagrange_numerators(rs, weights, F, options.max_precision_bits)
        except NeedMorePrecision:
            need = rs.precision_bits * 2
            if need > options.max_precision_bits:
                raise PrecisionExhausted("numerators failed at the precision cap")
            rs = refine(rs, need, options.max_precision_bits)
            continue
        break

    ring, R = root_expressions(f, F, G, H, weights)
    q, rem = divmod(F, G)
    if not rem.is_zero:
        raise CertificateFailed("G does not divide F")

    return ResolventData(
        f=f,
        original=original,
        scale=scale,
        squarefree_collapsed=collapsed,
        weights=weights,
        F=F,
        roots_f=rs,
        roots_V=roots_V,
        v_perms=v_perms,
        v1_index=v1_index,
        G=G,
        subset=subset,
        ring=ring,
        R=R,
        f_factors=f_factors,
    )
