"""Abstract simplicial complexes, Smith normal form, and integral homology.

Complexes are stored by maximal faces on a ground set of 1-based labels; the
homology engine works on bitmask face lists internally.  Boundary matrices use
lexicographic vertex orientation.  Reduced homology is indexed from degree -1
with two fixed conventions: the void complex (no faces at all) and the complex
whose only face is the empty one both have a single Z in degree -1.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping, Sequence

from .configuration import (
    Configuration,
    ConfigurationError,
    coordinate_classes,
    require_valid,
)
from .feasibility import _present_spanning


# ---------------------------------------------------------------------------
# finitely generated abelian groups, graded by degree


def invariant_chain(values: Iterable[int]) -> tuple[int, ...]:
    """Normalise torsion coefficients to a divisibility chain d1 | d2 | ...

    Repeatedly replaces incomparable pairs (a, b) by (gcd, lcm); the fixpoint
    is the invariant factor multiset, returned in ascending order without 1s.
    """
    vals = [abs(int(v)) for v in values if abs(int(v)) > 1]
    changed = True
    while changed:
        changed = False
        for a_pos in range(len(vals)):
            for b_pos in range(a_pos + 1, len(vals)):
                a, b = vals[a_pos], vals[b_pos]
                if a % b and b % a:
                    g = gcd(a, b)
                    vals[a_pos], vals[b_pos] = g, a // g * b
                    changed = True
        vals = [v for v in vals if v > 1]
    vals.sort()
    return tuple(vals)


@dataclass(frozen=True)
class GradedGroup:
    """Integral homology bookkeeping: free rank and torsion chain per degree."""

    groups: tuple[tuple[int, int, tuple[int, ...]], ...]

    @staticmethod
    def from_parts(ranks: Mapping[int, int], torsion: Mapping[int, Iterable[int]] | None = None) -> "GradedGroup":
        torsion = torsion or {}
        degrees = set(ranks) | set(torsion)
        rows = []
        for d in sorted(degrees):
            r = int(ranks.get(d, 0))
            if r < 0:
                raise ConfigurationError(f"negative rank {r} in degree {d}")
            chain = invariant_chain(torsion.get(d, ()))
            if r or chain:
                rows.append((d, r, chain))
        return GradedGroup(tuple(rows))

    @staticmethod
    def zero() -> "GradedGroup":
        return GradedGroup(())

    @staticmethod
    def single(degree: int, rank: int = 1) -> "GradedGroup":
        return GradedGroup.from_parts({degree: rank})

    @staticmethod
    def sum(groups: Iterable["GradedGroup"]) -> "GradedGroup":
        ranks: dict[int, int] = {}
        torsion: dict[int, list[int]] = {}
        for g in groups:
            for d, r, chain in g.groups:
                ranks[d] = ranks.get(d, 0) + r
                if chain:
                    torsion.setdefault(d, []).extend(chain)
        return GradedGroup.from_parts(ranks, torsion)

    def __add__(self, other: "GradedGroup") -> "GradedGroup":
        return GradedGroup.sum((self, other))

    def rank(self, degree: int) -> int:
        for d, r, _ in self.groups:
            if d == degree:
                return r
        return 0

    def torsion(self, degree: int) -> tuple[int, ...]:
        for d, _, chain in self.groups:
            if d == degree:
                return chain
        return ()

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(d for d, _, _ in self.groups)

    @property
    def is_zero(self) -> bool:
        return not self.groups

    @property
    def max_degree(self) -> int | None:
        return self.groups[-1][0] if self.groups else None

    def shift(self, offset: int) -> "GradedGroup":
        return GradedGroup(tuple((d + offset, r, chain) for d, r, chain in self.groups))

    def truncate_below(self, floor: int) -> "GradedGroup":
        return GradedGroup(tuple(row for row in self.groups if row[0] >= floor))

    def betti(self, top: int | None = None) -> tuple[int, ...]:
        """Free ranks in degrees 0..top (top defaults to the largest degree)."""
        hi = self.max_degree if top is None else top
        if hi is None:
            hi = -1
        return tuple(self.rank(d) for d in range(0, hi + 1))

    def euler(self) -> int:
        return sum((-1) ** d * r for d, r, _ in self.groups if d >= 0)

    @property
    def torsion_free(self) -> bool:
        return all(not chain for _, _, chain in self.groups)

    def describe(self, degree: int) -> str:
        r = self.rank(degree)
        chain = self.torsion(degree)
        parts = []
        if r == 1:
            parts.append("Z")
        elif r > 1:
            parts.append(f"Z^{r}")
        parts.extend(f"Z/{t}" for t in chain)
        return " + ".join(parts) if parts else "0"

    def __str__(self):
        if not self.groups:
            return "0"
        return ", ".join(f"H_{d} = {self.describe(d)}" for d, _, _ in self.groups)


# ---------------------------------------------------------------------------
# Smith normal form

def _dense_snf_diagonal(matrix: list[list[int]]) -> list[int]:
    """Diagonal entries (positive, unordered) of a small dense integer matrix."""
    m = [row[:] for row in matrix]
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    t = 0
    diag: list[int] = []
    while t < n_rows and t < n_cols:
        best = None
        for i in range(t, n_rows):
            for j in range(t, n_cols):
                v = m[i][j]
                if v and (best is None or abs(v) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        m[t], m[bi] = m[bi], m[t]
        for row in m:
            row[t], row[bj] = row[bj], row[t]
        while True:
            moved = False
            for i in range(t + 1, n_rows):
                if m[i][t]:
                    q = m[i][t] // m[t][t]
                    m[i] = [a - q * b for a, b in zip(m[i], m[t])]
                    if m[i][t]:
                        m[t], m[i] = m[i], m[t]
                        moved = True
            for j in range(t + 1, n_cols):
                if m[t][j]:
                    q = m[t][j] // m[t][t]
                    for row in m:
                        row[j] -= q * row[t]
                    if m[t][j]:
                        for row in m:
                            row[t], row[j] = row[j], row[t]
                        moved = True
            if not moved:
                break
        diag.append(abs(m[t][t]))
        t += 1
    return diag


def _rank_and_torsion(cols: dict[int, dict[int, int]]) -> tuple[int, tuple[int, ...]]:
    """Rank and torsion of a sparse integer matrix by unimodular elimination.

    Unit pivots are eliminated first with a Markowitz fill heuristic; whatever
    is left (rare, and only for torsion-carrying complexes) goes to the dense
    routine.  The diagonal multiset is then normalised to a divisor chain.
    """
    rows: dict[int, set[int]] = {}
    for j, col in cols.items():
        for i in col:
            rows.setdefault(i, set()).add(j)
    heap: list[tuple[int, int, int]] = []

    def consider(j: int, i: int, v: int) -> None:
        if v == 1 or v == -1:
            cost = (len(rows[i]) - 1) * (len(cols[j]) - 1)
            heapq.heappush(heap, (cost, j, i))

    for j, col in cols.items():
        for i, v in col.items():
            consider(j, i, v)
    rank = 0
    while heap:
        _, j, i = heapq.heappop(heap)
        col = cols.get(j)
        if col is None:
            continue
        v = col.get(i)
        if v is None or (v != 1 and v != -1):
            continue
        rank += 1
        pivot = cols.pop(j)
        for r in pivot:
            rows[r].discard(j)
        touched = rows.pop(i, set())
        for jj in touched:
            target = cols[jj]
            factor = target[i] * v
            del target[i]
            for r, pv in pivot.items():
                if r == i:
                    continue
                nv = target.get(r, 0) - factor * pv
                if nv:
                    if r not in target:
                        rows[r].add(jj)
                    target[r] = nv
                    consider(jj, r, nv)
                elif r in target:
                    del target[r]
                    rows[r].discard(jj)
            if not target:
                del cols[jj]
    torsion: list[int] = []
    if cols:
        row_ids = sorted({i for col in cols.values() for i in col})
        col_ids = sorted(cols)
        rindex = {r: t for t, r in enumerate(row_ids)}
        dense = [[0] * len(col_ids) for _ in row_ids]
        for t, j in enumerate(col_ids):
            for i, v in cols[j].items():
                dense[rindex[i]][t] = v
        for d in _dense_snf_diagonal(dense):
            if d:
                rank += 1
                if d > 1:
                    torsion.append(d)
    return rank, invariant_chain(torsion)


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], int]:
    """Canonical Smith normal form diagonal (d1 | d2 | ... , all positive) and rank."""
    rows = [list(map(int, row)) for row in matrix]
    widths = {len(row) for row in rows}
    if len(widths) > 1:
        raise ConfigurationError("ragged matrix")
    cols: dict[int, dict[int, int]] = {}
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v:
                cols.setdefault(j, {})[i] = v
    rank, chain = _rank_and_torsion(cols)
    diagonal = (1,) * (rank - len(chain)) + chain
    return diagonal, rank


# ---------------------------------------------------------------------------
# simplicial complexes


def _downward_closure(masks: Iterable[int]) -> list[int]:
    seen: set[int] = set()
    stack = list(masks)
    while stack:
        f = stack.pop()
        if f in seen:
            continue
        seen.add(f)
        bits = f
        while bits:
            low = bits & -bits
            stack.append(f ^ low)
            bits ^= low
    return sorted(seen)


@dataclass(frozen=True)
class SimplicialComplex:
    """Abstract complex on a ground set of 1-based labels, stored by maximal faces.

    The void complex has no faces at all; the complex {0} consisting of the
    empty face alone is distinct from it, and both are legal values here.
    """

    ground: tuple[int, ...]
    maximal_faces: tuple[frozenset[int], ...]

    @staticmethod
    def from_faces(ground: Iterable[int], faces: Iterable[Iterable[int]]) -> "SimplicialComplex":
        ground_t = tuple(sorted(set(ground)))
        sets = {frozenset(f) for f in faces}
        for f in sets:
            if not f <= set(ground_t):
                raise ConfigurationError(f"face {sorted(f)} leaves the ground set")
        maximal = [f for f in sets if not any(f < g for g in sets)]
        maximal.sort(key=lambda f: (len(f), tuple(sorted(f))))
        return SimplicialComplex(ground_t, tuple(maximal))

    @staticmethod
    def void(ground: Iterable[int] = ()) -> "SimplicialComplex":
        return SimplicialComplex(tuple(sorted(set(ground))), ())

    @property
    def is_void(self) -> bool:
        return not self.maximal_faces

    @property
    def dim(self) -> int:
        """Dimension; -1 for the empty-face complex and for the void complex."""
        if self.is_void:
            return -1
        return max(len(f) for f in self.maximal_faces) - 1

    def faces(self) -> list[frozenset[int]]:
        """Every face, the empty one included, sorted by (size, labels)."""
        if self.is_void:
            return []
        order = {v: i for i, v in enumerate(self.ground)}
        masks = [sum(1 << order[v] for v in f) for f in self.maximal_faces]
        out = []
        for mask in _downward_closure(masks):
            out.append(frozenset(self.ground[i] for i in range(len(self.ground)) if mask >> i & 1))
        out.sort(key=lambda f: (len(f), tuple(sorted(f))))
        return out

    def has_face(self, face: Iterable[int]) -> bool:
        f = frozenset(face)
        return any(f <= m for m in self.maximal_faces)

    def relabel(self, mapping: Mapping[int, int]) -> "SimplicialComplex":
        ground = tuple(sorted(mapping[v] for v in self.ground))
        maximal = tuple(frozenset(mapping[v] for v in f) for f in self.maximal_faces)
        return SimplicialComplex.from_faces(ground, maximal) if maximal else SimplicialComplex.void(ground)


def full_subcomplex(K: SimplicialComplex, J: Iterable[int]) -> SimplicialComplex:
    """The faces of K contained in J, on ground set J."""
    Jset = set(J)
    if not Jset <= set(K.ground):
        raise ConfigurationError("J leaves the ground set")
    if K.is_void:
        return SimplicialComplex.void(Jset)
    restricted = {f & frozenset(Jset) for f in K.maximal_faces}
    return SimplicialComplex.from_faces(Jset, restricted)


# ---------------------------------------------------------------------------
# homology of bitmask face lists


def _morse_reduce(faces: Sequence[int]) -> list[int]:
    """Cancel cells in fill-free pairs; the survivors carry the same homology.

    A cell whose boundary meets the surviving set in exactly one cell, or that
    lies in exactly one surviving coface, forms a unit pivot whose elimination
    only deletes entries of the restricted boundary matrix (the pivot row or
    column is a singleton, so the Schur update is empty).  Incidences of the
    surviving cells keep their original coefficients, so the remaining matrix
    is the plain restriction.  The wave started by the empty cell under each
    vertex typically eats all of a sphere-like complex except its homology
    generators.
    """
    universe = 0
    for f in faces:
        universe |= f
    table_size = (universe << 1) | 1 if universe else 1
    present = bytearray(table_size + 1)
    for f in faces:
        present[f] = 1
    bnd = bytearray(table_size + 1)
    cof = bytearray(table_size + 1)
    for f in faces:
        count = 0
        bits = f
        while bits:
            low = bits & -bits
            bits ^= low
            if present[f ^ low]:
                count += 1
        bnd[f] = count
        count = 0
        rest = universe & ~f
        while rest:
            low = rest & -rest
            rest ^= low
            if present[f | low]:
                count += 1
        cof[f] = count
    # the cancellation wave must run breadth first; depth first starves it on
    # sphere-like complexes and leaves a huge core
    queue = deque(f for f in faces if bnd[f] == 1 or cof[f] == 1)
    while queue:
        c = queue.popleft()
        if not present[c]:
            continue
        partner = -1
        if bnd[c] == 1:
            bits = c
            while bits:
                low = bits & -bits
                bits ^= low
                if present[c ^ low]:
                    partner = c ^ low
                    break
        elif cof[c] == 1:
            rest = universe & ~c
            while rest:
                low = rest & -rest
                rest ^= low
                if present[c | low]:
                    partner = c | low
                    break
        else:
            continue
        if partner < 0:
            continue
        present[c] = 0
        present[partner] = 0
        for cell in (c, partner):
            bits = cell
            while bits:
                low = bits & -bits
                bits ^= low
                h = cell ^ low
                if present[h]:
                    cof[h] -= 1
                    if cof[h] == 1 or bnd[h] == 1:
                        queue.append(h)
            rest = universe & ~cell
            while rest:
                low = rest & -rest
                rest ^= low
                x = cell | low
                if present[x]:
                    bnd[x] -= 1
                    if bnd[x] == 1 or cof[x] == 1:
                        queue.append(x)
    return [f for f in faces if present[f]]


def _homology_from_masks(faces: Sequence[int]) -> GradedGroup:
    """Reduced integral homology of a downward-closed bitmask face list.

    The empty list is the void complex and yields Z in degree -1, matching the
    stated convention.
    """
    if not faces:
        return GradedGroup.single(-1, 1)
    # The Morse core is chain homotopy equivalent, with boundary the plain
    # restriction of the original incidences, so counts and ranks of the core
    # alone give the homology.
    core = _morse_reduce(faces)
    core_set = set(core)
    by_size: dict[int, list[int]] = {}
    for f in core:
        by_size.setdefault(f.bit_count(), []).append(f)
    max_size = max(by_size) if by_size else 0
    ranks: dict[int, int] = {}
    torsion: dict[int, tuple[int, ...]] = {}
    for s in range(1, max_size + 1):
        sources = by_size.get(s, [])
        targets = by_size.get(s - 1, [])
        if not sources or not targets:
            ranks[s] = 0
            torsion[s] = ()
            continue
        index = {mask: pos for pos, mask in enumerate(targets)}
        cols: dict[int, dict[int, int]] = {}
        for pos, f in enumerate(sources):
            col: dict[int, int] = {}
            sign = 1
            bits = f
            while bits:
                low = bits & -bits
                sub = f ^ low
                if sub in core_set:
                    col[index[sub]] = sign
                sign = -sign
                bits ^= low
            if col:
                cols[pos] = col
        ranks[s], torsion[s] = _rank_and_torsion(cols)
    rank_by_degree: dict[int, int] = {}
    torsion_by_degree: dict[int, tuple[int, ...]] = {}
    for d in range(-1, max_size):
        cells = len(by_size.get(d + 1, ()))
        r = cells - ranks.get(d + 1, 0) - ranks.get(d + 2, 0)
        if r:
            rank_by_degree[d] = r
        chain = torsion.get(d + 2, ())
        if chain:
            torsion_by_degree[d] = chain
    return GradedGroup.from_parts(rank_by_degree, torsion_by_degree)


def reduced_homology(K: SimplicialComplex) -> GradedGroup:
    """Reduced integral homology of K, indexed from degree -1."""
    if K.is_void:
        return GradedGroup.single(-1, 1)
    order = {v: i for i, v in enumerate(K.ground)}
    masks = [sum(1 << order[v] for v in f) for f in K.maximal_faces]
    return _homology_from_masks(_downward_closure(masks))


# ---------------------------------------------------------------------------
# the dual complex of a configuration


@lru_cache(maxsize=None)
def dual_face_masks(cfg: Configuration) -> tuple[int, ...]:
    """All index sets with a nonempty face, as bitmasks (bit i-1 for coordinate i).

    Enumerated by monotone search: children of a face extend it past its top
    bit, and the emptiness test is memoised on surviving vector classes.
    """
    require_valid(cfg)
    classes = coordinate_classes(cfg)
    m = len(classes)
    class_masks = [sum(1 << (i - 1) for i in members) for members in classes]
    class_of = {}
    for c, members in enumerate(classes):
        for i in members:
            class_of[i - 1] = c
    all_present = frozenset(range(m))
    if not _present_spanning(cfg, all_present):
        return ()
    out = [0]
    queue: list[tuple[int, int, int]] = [(0, 0, -1)]  # (mask, swallowed classes, top bit)
    n = cfg.n
    while queue:
        mask, swallowed, top = queue.pop()
        for bit in range(top + 1, n):
            child = mask | (1 << bit)
            c = class_of[bit]
            new_swallowed = swallowed
            if class_masks[c] & ~child == 0:
                new_swallowed |= 1 << c
            present = frozenset(cc for cc in range(m) if not new_swallowed >> cc & 1)
            if _present_spanning(cfg, present):
                out.append(child)
                queue.append((child, new_swallowed, bit))
    return tuple(sorted(out))


def dual_complex(cfg: Configuration) -> SimplicialComplex:
    """The complex of index sets whose facet intersection is nonempty."""
    masks = dual_face_masks(cfg)
    ground = range(1, cfg.n + 1)
    if not masks:
        return SimplicialComplex.void(ground)
    face_set = set(masks)
    maximal = []
    for f in masks:
        if not any(f | (1 << b) in face_set for b in range(cfg.n) if not f >> b & 1):
            maximal.append(frozenset(i + 1 for i in range(cfg.n) if f >> i & 1))
    return SimplicialComplex.from_faces(ground, maximal)
