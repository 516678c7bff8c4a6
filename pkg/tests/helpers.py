"""Independent oracles and corpus builders shared by the test modules.

Everything here is deliberately written from scratch against the definitions,
not by calling the package's own code paths: exhaustive enumeration for
convex-position and feasibility questions, plain rank arithmetic for homology
cross-checks.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import quadbook as qb

F0 = Fraction(0)
F1 = Fraction(1)


def gaussian_solve(rows, rhs):
    """Solve A x = b exactly.  Returns (consistent, unique, solution or None)."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        aug[r] = [x / aug[r][c] for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                factor = aug[i][c]
                aug[i] = [x - factor * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][n] != 0:
            return False, False, None
    unique = len(pivots) == n
    if not unique:
        return True, False, None
    solution = [F0] * n
    for row_idx, c in enumerate(pivots):
        solution[c] = aug[row_idx][n]
    return True, True, solution


def brute_origin_in_hull(vectors) -> bool:
    """Exhaustive convex-combination solver over affinely independent supports."""
    vecs = [tuple(Fraction(x) for x in v) for v in vectors]
    if not vecs:
        return False
    k = len(vecs[0])
    for size in range(1, k + 2):
        for support in itertools.combinations(range(len(vecs)), size):
            rows = [[vecs[j][r] for j in support] for r in range(k)]
            rows.append([F1] * size)
            consistent, unique, sol = gaussian_solve(rows, [F0] * k + [F1])
            if consistent and unique and all(t >= 0 for t in sol):
                return True
    return False


def matrix_rank(rows) -> int:
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        pivot = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        m[rank] = [x / m[rank][c] for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [x - factor * y for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def brute_standard_feasible(rows, rhs) -> bool:
    """Basic-solution enumeration for {Ax = b, x >= 0}; exact for <= 6 variables."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    if all(b == 0 for b in rhs):
        return True
    rank = matrix_rank(rows)
    if rank < matrix_rank([list(row) + [b] for row, b in zip(rows, rhs)]):
        return False
    for basis in itertools.combinations(range(n), rank):
        sub = [[rows[i][j] for j in basis] for i in range(m)]
        consistent, unique, sol = gaussian_solve(sub, rhs)
        if consistent and unique and all(x >= 0 for x in sol):
            return True
    return False


def betti(group: qb.GradedGroup, top: int) -> tuple[int, ...]:
    return tuple(group.rank(d) for d in range(top + 1))


def kunneth_sphere_ranks(dims) -> dict[int, int]:
    """Rank table of a product of spheres, computed by plain convolution."""
    acc = {0: 1}
    for d in dims:
        layer = {0: 2} if d == 0 else {0: 1, d: 1}
        nxt: dict[int, int] = {}
        for a, ra in acc.items():
            for b, rb in layer.items():
                nxt[a + b] = nxt.get(a + b, 0) + ra * rb
        acc = nxt
    return acc


def connected_sum_ranks(summand_dims, dim) -> dict[int, int]:
    """Rank table of a connected sum of sphere products of the same dimension."""
    ranks = {0: 1, dim: 1}
    for dims in summand_dims:
        table = kunneth_sphere_ranks(dims)
        for d, r in table.items():
            if 0 < d < dim:
                ranks[d] = ranks.get(d, 0) + r
    return {d: r for d, r in ranks.items() if r}


def odd_compositions(total: int) -> list[tuple[int, ...]]:
    """All tuples of positive integers with odd length >= 3 summing to total."""
    out = []
    for count in range(3, total + 1, 2):
        out.extend(_compositions(total, count))
    return out


def _compositions(total, count):
    if count == 1:
        return [(total,)] if total >= 1 else []
    result = []
    for first in range(1, total - count + 2):
        result.extend((first,) + rest for rest in _compositions(total - first, count - 1))
    return result


def partitions_up_to(limit: int) -> list[tuple[int, ...]]:
    out = []
    for total in range(3, limit + 1):
        out.extend(odd_compositions(total))
    return out


def random_vectors(rng, k, n):
    out = []
    while len(out) < n:
        vec = tuple(Fraction(rng.randint(-9, 9)) for _ in range(k))
        if any(vec):
            out.append(vec)
    return out


def random_configuration(rng, k, n) -> qb.Configuration:
    """A raw random configuration; may or may not be weakly hyperbolic."""
    return qb.make_configuration(random_vectors(rng, k, n), k=k)


def random_valid_configuration(rng, k, n, require_nonempty=True) -> qb.Configuration:
    """Rejection-sample a weakly hyperbolic configuration, nonempty by default."""
    while True:
        vecs = random_vectors(rng, k, n)
        cfg = qb.make_configuration(vecs, k=k)
        if not qb.validate(cfg).ok:
            continue
        if require_nonempty and not qb.origin_in_convex_hull(vecs):
            continue
        return cfg
