"""Substitutions of the roots extracted from the factor G, plus
closure certification and identification of the abstract group.

Each root W of G yields one row: evaluating the root expressions R_k at W
lands in exactly one certified root ball of f, which names the image of
root k.  The candidate row is then verified exactly: the embedded sum
P = sum_k w_k R_{sigma(k)} must satisfy G(P) = 0 mod G and must evaluate
back into W's ball.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .balls import beval_poly, disjoint
from .errors import (
    CertificateFailed,
    ClosureFailed,
    InternalError,
    PrecisionExhausted,
    UnrecognizedOrder,
)
from .polys import (
    FieldElement,
    Poly,
    discriminant,
    is_perfect_square,
    poly_compose_mod,
)
from .resolvent import ResolventData, weighted_sum_balls
from .roots import refine

Perm = tuple[int, ...]


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose_perms(p: Perm, q: Perm) -> Perm:
    """p after q: (p . q)(i) = p(q(i))."""
    return tuple(p[q[i]] for i in range(len(p)))


def inverse_perm(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, img in enumerate(p):
        out[img] = i
    return tuple(out)


def perm_order(p: Perm) -> int:
    order = 1
    q = p
    ident = identity_perm(len(p))
    while q != ident:
        q = compose_perms(q, p)
        order += 1
    return order


def perm_is_even(p: Perm) -> bool:
    seen = [False] * len(p)
    parity = 0
    for i in range(len(p)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity == 0


def perm_to_cycles(p: Perm) -> str:
    """One-based cycle notation; identity prints as '()'."""
    seen = [False] * len(p)
    parts = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j + 1)
            j = p[j]
        parts.append("(" + " ".join(str(c) for c in cyc) + ")")
    return "".join(parts) if parts else "()"


def cycles_to_perm(text: str, n: int) -> Perm:
    """Parse one-based cycle notation like '(1 2)(3 4)' or '()'."""
    mapping = list(range(n))
    i = 0
    text = text.strip()
    if not text:
        raise ValueError("empty permutation")
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch != "(":
            raise ValueError(f"expected '(' in cycle notation at position {i}")
        j = text.index(")", i)
        body = text[i + 1 : j].replace(",", " ").split()
        cyc = [int(tok) for tok in body]
        for v in cyc:
            if not 1 <= v <= n:
                raise ValueError(f"point {v} outside 1..{n}")
        if len(set(cyc)) != len(cyc):
            raise ValueError("repeated point in cycle")
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            mapping[a - 1] = b - 1
        i = j + 1
    return tuple(mapping)


@dataclass(frozen=True)
class Substitution:
    mapping: Perm
    source_row: int

    def __str__(self) -> str:
        return perm_to_cycles(self.mapping)


@dataclass
class SubstitutionGroup:
    n: int
    elements: list[Substitution]
    root_embeddings: list[FieldElement]
    cayley: list[list[int]] | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def mappings(self) -> list[Perm]:
        return [s.mapping for s in self.elements]


def extract_substitutions(rd: ResolventData, max_precision_bits: int = 16384) -> SubstitutionGroup:
    """One substitution per root of G, numerically matched then exactly verified."""
    n = rd.f.degree
    weights = rd.weights
    row_order = [rd.v1_index] + [i for i in rd.subset if i != rd.v1_index]

    rs = rd.roots_f
    v_balls = list(rd.roots_V.balls)

    while True:
        wp = rs.precision_bits + 16
        rows = _match_rows(rd, rs, v_balls, row_order, wp)
        if rows is None:
            need = rs.precision_bits * 2
            if need > max_precision_bits:
                raise PrecisionExhausted("substitution matching failed at the precision cap")
            rs = refine(rs, need, max_precision_bits)
            perms = rd.v_perms
            vb = weighted_sum_balls(rs, weights, perms)
            v_balls = list(vb)
            continue

        if rows[0] != identity_perm(n):
            raise CertificateFailed("row for the distinguished root is not the identity")
        if len(set(rows)) != len(rows):
            raise CertificateFailed("extracted rows are not pairwise distinct")

        embeddings = []
        for sigma in rows:
            p = rd.ring.zero
            for k, w in enumerate(weights):
                p = p + rd.R[sigma[k]] * w
            embeddings.append(p)
        for p in embeddings:
            if not poly_compose_mod(rd.G, p).is_zero:
                raise CertificateFailed("embedded sum is not a root of G mod G")

        ok = _check_embeddings_numeric(embeddings, v_balls, row_order, rd, rs)
        if ok is None:
            need = rs.precision_bits * 2
            if need > max_precision_bits:
                raise PrecisionExhausted("embedding check failed at the precision cap")
            rs = refine(rs, need, max_precision_bits)
            v_balls = list(weighted_sum_balls(rs, weights, rd.v_perms))
            continue
        if not ok:
            raise CertificateFailed("embedded sum does not evaluate back to its root")

        elements = [Substitution(sigma, row_order[i]) for i, sigma in enumerate(rows)]
        return SubstitutionGroup(n=n, elements=elements, root_embeddings=embeddings)


def _match_rows(rd, rs, v_balls, row_order, wp):
    rows = []
    for vi in row_order:
        w_ball = v_balls[vi]
        images = []
        for k in range(rd.f.degree):
            val = beval_poly(rd.R[k].residue.coeffs, w_ball, wp)
            hits = [j for j, rb in enumerate(rs.balls) if not disjoint(val, rb)]
            if len(hits) != 1:
                return None
            images.append(hits[0])
        if sorted(images) != list(range(rd.f.degree)):
            return None
        rows.append(tuple(images))
    return rows


def _check_embeddings_numeric(embeddings, v_balls, row_order, rd, rs):
    """Certify P_i(V_1) = V_i: the evaluation ball must meet only ball i."""
    wp = rs.precision_bits + 16
    v1_ball = v_balls[rd.v1_index]
    g_balls = [v_balls[i] for i in row_order]
    for i, p in enumerate(embeddings):
        val = beval_poly(p.residue.coeffs, v1_ball, wp)
        hits = [j for j, gb in enumerate(g_balls) if not disjoint(val, gb)]
        if len(hits) != 1:
            return None
        if hits[0] != i:
            return False
    return True


def certify_closure(group: SubstitutionGroup) -> list[list[int]]:
    """Cayley table; raises ClosureFailed if composition leaves the system."""
    maps = group.mappings()
    index = {m: i for i, m in enumerate(maps)}
    m = len(maps)
    table = []
    for k in range(m):
        row = []
        for i in range(m):
            c = compose_perms(maps[k], maps[i])
            j = index.get(c)
            if j is None:
                raise ClosureFailed(
                    f"composition of rows {k} and {i} is not an extracted row"
                )
            row.append(j)
        table.append(row)
    ident = identity_perm(group.n)
    if maps[0] != ident:
        raise ClosureFailed("first element is not the identity")
    for i, mp in enumerate(maps):
        if inverse_perm(mp) not in index:
            raise ClosureFailed(f"element {i} has no inverse in the system")
    group.cayley = table
    return table


@dataclass(frozen=True)
class GroupName:
    name: str
    order: int
    transitive: bool
    orbits: tuple[tuple[int, ...], ...]
    even: bool


def orbits_of(maps: list[Perm], n: int) -> tuple[tuple[int, ...], ...]:
    seen = [False] * n
    out = []
    for i in range(n):
        if seen[i]:
            continue
        orbit = {i}
        frontier = [i]
        while frontier:
            j = frontier.pop()
            for mp in maps:
                if mp[j] not in orbit:
                    orbit.add(mp[j])
                    frontier.append(mp[j])
        for j in orbit:
            seen[j] = True
        out.append(tuple(sorted(orbit)))
    return tuple(out)


_TRANSITIVE_NAMES = {
    (1, 1): "trivial",
    (2, 2): "C2",
    (3, 3): "C3",
    (3, 6): "S3",
    (4, 8): "D4",
    (4, 12): "A4",
    (4, 24): "S4",
    (5, 5): "C5",
    (5, 10): "D5",
    (5, 20): "F20",
    (5, 60): "A5",
    (5, 120): "S5",
}


def _transitive_name(n: int, maps: list[Perm]) -> str:
    m = len(maps)
    if n == 4 and m == 4:
        return "C4" if any(perm_order(p) == 4 for p in maps) else "V4"
    name = _TRANSITIVE_NAMES.get((n, m))
    if name is None:
        raise UnrecognizedOrder(f"no transitive group of order {m} on {n} points in the table")
    return name


def identify_group(group: SubstitutionGroup, disc_square: bool) -> GroupName:
    maps = group.mappings()
    n = group.n
    even = all(perm_is_even(p) for p in maps)
    if even != disc_square:
        raise InternalError("parity of the group contradicts the discriminant test")
    orbs = orbits_of(maps, n)
    transitive = len(orbs) == 1
    if group.order == 1:
        return GroupName("trivial", 1, n == 1, orbs, True)
    if transitive:
        return GroupName(_transitive_name(n, maps), group.order, True, orbs, even)
    parts = []
    for orbit in orbs:
        pos = {v: idx for idx, v in enumerate(orbit)}
        restricted = sorted({tuple(pos[p[v]] for v in orbit) for p in maps})
        if len(restricted) == 1:
            parts.append("C1")
        else:
            parts.append(_transitive_name(len(orbit), restricted))
    return GroupName(" x ".join(parts), group.order, False, orbs, even)


def discriminant_is_square(f: Poly) -> bool:
    """Exact discriminant via the resultant, then an exact square test."""
    return is_perfect_square(discriminant(f))
