"""Exact factor extraction by subset recombination over certified roots.

To find the irreducible factor of a monic squarefree integer polynomial F
that vanishes at a distinguished root, enumerate index subsets containing
that root by increasing cardinality (lexicographic within a cardinality).
A fast trace filter drops subsets whose root sum is certifiably not an
integer; survivors are expanded in ball arithmetic, rounded to certified
integer candidates, and verified by exact trial division into F.  The
first exact divisor is minimal, hence irreducible.
"""

from __future__ import annotations

import math
from itertools import combinations

from . import kernels
from .balls import bpoly_from_roots, nearest_int, rad_float_upper, to_complex
from .errors import InternalError
from .polys import Poly
from .roots import RootSet


class NeedMorePrecision(Exception):
    """Internal signal: the caller should refine the roots and retry."""


def subset_pruning_bounds(n: int, irreducible: bool) -> list[int]:
    """Subset sizes worth testing for a factor of the degree-n! resolvent.

    Group orders divide n!, and transitive groups (irreducible f) have
    order divisible by n.
    """
    r = math.factorial(n)
    sizes = [d for d in range(1, r + 1) if r % d == 0]
    if irreducible:
        sizes = [d for d in sizes if d % n == 0]
    return sizes


def _certified_int_product(subset_balls, wp: int):
    """('ok', ints) | ('reject', None) | ('unknown', None) for prod (v - b)."""
    coeff_balls = bpoly_from_roots(list(subset_balls), wp)
    ints = []
    for cb in coeff_balls:
        status, k = nearest_int(cb)
        if status == "unknown":
            return "unknown", None
        if status == "reject":
            return "reject", None
        ints.append(k)
    return "ok", ints


def _unfiltered_candidates(allowed_positions, fixed_pos, size):
    others = [p for p in allowed_positions if p != fixed_pos]
    for combo in combinations(others, size - 1):
        yield tuple(sorted((fixed_pos,) + combo))


def irreducible_factor_containing(
    F: Poly,
    roots_V: RootSet,
    v1_index: int,
    sizes=None,
    candidate_indices=None,
):
    """Minimal exact monic divisor of F whose root subset contains v1_index.

    Returns (G, subset) with subset the sorted tuple of ball indices, or
    None when every requested size was scanned without finding a divisor.
    Raises NeedMorePrecision when certification needs tighter balls.
    """
    r = F.degree
    balls = roots_V.balls
    if candidate_indices is None:
        candidate_indices = list(range(len(balls)))
    candidate_indices = sorted(candidate_indices)
    if v1_index not in candidate_indices:
        raise InternalError("distinguished root not among candidate indices")
    total = len(candidate_indices)
    if sizes is None:
        sizes = range(1, total + 1)
    sizes = sorted(s for s in set(sizes) if 1 <= s <= total)

    mids = [to_complex(balls[i]) for i in candidate_indices]
    res = [z.real for z in mids]
    ims = [z.imag for z in mids]
    rads = sorted((rad_float_upper(balls[i]) for i in candidate_indices), reverse=True)
    maxabs = max([1.0] + [abs(z.real) + abs(z.imag) for z in mids])
    fixed_pos = candidate_indices.index(v1_index)
    wp = roots_V.precision_bits + 16

    for d in sizes:
        if d == total and total == r:
            return F, tuple(candidate_indices)
        tol = sum(rads[:d]) + 1e-12 * d * (d + 2) * maxabs
        use_filter = math.isfinite(tol) and tol < 0.25
        if use_filter:
            cands = kernels.filter_integer_trace(res, ims, fixed_pos, d, tol)
        else:
            if sum(rads[:d]) > 0.25:
                raise NeedMorePrecision()
            cands = _unfiltered_candidates(range(total), fixed_pos, d)
        for positions in cands:
            idxs = tuple(candidate_indices[p] for p in positions)
            status, ints = _certified_int_product([balls[i] for i in idxs], wp)
            if status == "unknown":
                raise NeedMorePrecision()
            if status == "reject":
                continue
            cand = Poly(ints)
            q, rem = divmod(F, cand)
            if rem.is_zero:
                return cand, idxs
    return None
