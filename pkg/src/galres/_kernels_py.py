"""Pure-Python fallback for the subset trace filter.

Same contract as the compiled kernel in ``_subsetscan.pyx``: enumerate all
index subsets of the given size that contain ``fixed``, in lexicographic
order, and keep those whose value sum is within ``tol`` of a real integer.
The filter must never reject a subset whose true sum is an integer, so
``tol`` has to cover ball radii plus double rounding slack; false accepts
are harmless (exact verification follows downstream).
"""

from itertools import combinations


def filter_integer_trace(re, im, fixed, size, tol):
    n = len(re)
    out = []
    if size < 1 or size > n:
        return out
    fr = re[fixed]
    fi = im[fixed]
    if size == 1:
        if abs(fi) <= tol and abs(fr - round(fr)) <= tol:
            out.append((fixed,))
        return out
    others = [i for i in range(n) if i != fixed]
    for combo in combinations(others, size - 1):
        sr = fr
        si = fi
        for idx in combo:
            sr += re[idx]
            si += im[idx]
        if -tol <= si <= tol:
            d = sr - round(sr)
            if -tol <= d <= tol:
                out.append(tuple(sorted((fixed,) + combo)))
    return out
