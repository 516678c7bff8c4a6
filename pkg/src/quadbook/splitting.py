"""Homology of the varieties via the subset splitting over the quotient polytope.

H(Z) splits as a direct sum over index subsets J of the pair homologies
H(P, P_J); the half manifold drops the summands whose J contains the
distinguished coordinate, and the complex variety shifts each summand by |J|.
Pair homology is computed through the nerve model: P_J is homotopy equivalent
to the full subcomplex of the dual complex on J.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .complexes import GradedGroup, _homology_from_masks, dual_face_masks
from .configuration import (
    Configuration,
    ConfigurationError,
    SizeCapError,
    coordinate_classes,
    require_valid,
)

DEFAULT_SUBSET_CAP = 20


def _guard(cfg: Configuration, cap: int) -> None:
    require_valid(cfg)
    if cfg.n > cap:
        raise SizeCapError(
            f"n = {cfg.n} exceeds the subset cap {cap}; raise the cap explicitly to proceed"
        )


def _mask_to_subset(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


@lru_cache(maxsize=None)
def _pair_table(cfg: Configuration) -> tuple[tuple[int, GradedGroup], ...]:
    """Nonzero pair homologies H(P, P_J), already indexed in final Z-degrees.

    Only subsets that are unions of equal-vector classes can contribute: if J
    splits a class, the restricted dual complex is a cone on any included copy
    whose twin was left out, hence acyclic.  The table is therefore indexed by
    class subsets; everything else contributes zero.
    """
    faces = dual_face_masks(cfg)
    if not faces:
        return ()  # empty polytope: empty variety, no cells
    classes = coordinate_classes(cfg)
    m = len(classes)
    class_masks = [sum(1 << (i - 1) for i in members) for members in classes]
    buckets: dict[int, list[int]] = {}
    for f in faces:
        smask = 0
        for c in range(m):
            if f & class_masks[c]:
                smask |= 1 << c
        buckets.setdefault(smask, []).append(f)
    bucket_keys = sorted(buckets)
    entries = []
    for t in range(1 << m):
        j_mask = 0
        for c in range(m):
            if t >> c & 1:
                j_mask |= class_masks[c]
        sub: list[int] = []
        for s in bucket_keys:
            if s & ~t == 0:
                sub.extend(buckets[s])
        sub.sort()
        group = _homology_from_masks(sub).shift(1)
        if not group.is_zero:
            entries.append((j_mask, group))
    entries.sort(key=lambda e: (e[0].bit_count(), e[0]))
    return tuple(entries)


def pair_homology(cfg: Configuration, J: Iterable[int]) -> GradedGroup:
    """H(P, P_J): the reduced homology of the dual complex on J, shifted up by one.

    An empty restriction gives Z in degree 0, matching the homology of the
    contractible polytope itself.
    """
    require_valid(cfg)
    Jset = frozenset(J)
    for j in Jset:
        if not 1 <= j <= cfg.n:
            raise ConfigurationError(f"index {j} out of range 1..{cfg.n}")
    j_mask = sum(1 << (j - 1) for j in Jset)
    faces = [f for f in dual_face_masks(cfg) if f & ~j_mask == 0]
    return _homology_from_masks(faces).shift(1)


def homology_Z(cfg: Configuration, *, cap: int = DEFAULT_SUBSET_CAP) -> GradedGroup:
    """Integral homology of the real variety: the sum of all pair homologies."""
    _guard(cfg, cap)
    return GradedGroup.sum(group for _, group in _pair_table(cfg))


def homology_Zplus(cfg: Configuration, *, distinguished: int | None = None,
                   cap: int = DEFAULT_SUBSET_CAP) -> GradedGroup:
    """Integral homology of the half manifold: only subsets avoiding the marked coordinate."""
    _guard(cfg, cap)
    dist = cfg.distinguished if distinguished is None else distinguished
    if not 1 <= dist <= cfg.n:
        raise ConfigurationError(f"distinguished coordinate {dist} out of range")
    bit = 1 << (dist - 1)
    return GradedGroup.sum(group for mask, group in _pair_table(cfg) if not mask & bit)


def homology_ZC(cfg: Configuration, *, cap: int = DEFAULT_SUBSET_CAP) -> GradedGroup:
    """Integral homology of the complex variety: pair homologies shifted by |J|."""
    _guard(cfg, cap)
    return GradedGroup.sum(group.shift(mask.bit_count()) for mask, group in _pair_table(cfg))


def euler_cellcount(cfg: Configuration) -> int:
    """Euler characteristic of the real variety from its reflected cell decomposition.

    Each nonempty face with |L| pinned facets has dimension n-k-1-|L| and
    2^(n-|L|) reflected copies.
    """
    require_valid(cfg)
    n, k = cfg.n, cfg.k
    total = 0
    for f in dual_face_masks(cfg):
        size = f.bit_count()
        total += (-1) ** (n - k - 1 - size) * (1 << (n - size))
    return total


@dataclass(frozen=True)
class SplittingLedger:
    """Per-subset contributions backing a homology computation.

    `entries` lists every subset with a nonzero contribution, in final degrees
    (already shifted for the complex variety), sorted by size then content.
    """

    space: str
    entries: tuple[tuple[tuple[int, ...], GradedGroup], ...]
    total: GradedGroup

    def contributions(self, degree: int) -> tuple[tuple[int, ...], ...]:
        return tuple(J for J, g in self.entries if g.rank(degree) or g.torsion(degree))


def splitting_ledger(cfg: Configuration, space: str = "Z", *,
                     distinguished: int | None = None,
                     cap: int = DEFAULT_SUBSET_CAP) -> SplittingLedger:
    """The full contributing-subsets ledger for one of the three spaces."""
    _guard(cfg, cap)
    if space not in ("Z", "Zplus", "ZC"):
        raise ConfigurationError(f"unknown space {space!r}; expected Z, Zplus or ZC")
    dist = cfg.distinguished if distinguished is None else distinguished
    bit = 1 << (dist - 1)
    rows = []
    for mask, group in _pair_table(cfg):
        if space == "Zplus" and mask & bit:
            continue
        if space == "ZC":
            group = group.shift(mask.bit_count())
        rows.append((_mask_to_subset(mask), group))
    rows.sort(key=lambda row: (len(row[0]), row[0]))
    return SplittingLedger(space, tuple(rows), GradedGroup.sum(g for _, g in rows))
