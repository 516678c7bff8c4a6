"""Odd cyclic normal forms for k = 2 and the closed-form diffeomorphism types.

For k = 2 every weakly hyperbolic configuration with nonempty polytope is, up
to the relevant combinatorics, the vertex set of a regular odd polygon with
multiplicities.  The class multiplicities in cyclic order classify the real
and complex varieties as a triple sphere product or a connected sum of sphere
products, with hypothesis flags where the real statement needs them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from math import gcd
from typing import Sequence

from .complexes import GradedGroup, dual_face_masks
from .configuration import (
    Configuration,
    ConfigurationError,
    NormalFormError,
    OracleMismatchError,
    require_valid,
)


@dataclass(frozen=True)
class CyclicPartition:
    """An odd tuple of positive multiplicities, canonical up to rotation and reflection."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if len(parts) < 3 or len(parts) % 2 == 0:
            raise ConfigurationError(f"need an odd number (>= 3) of classes, got {parts}")
        if any(p < 1 for p in parts):
            raise ConfigurationError(f"all multiplicities must be positive, got {parts}")
        object.__setattr__(self, "parts", canonical_cycle(parts))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def ell(self) -> int:
        return (len(self.parts) - 1) // 2

    @property
    def num_classes(self) -> int:
        return len(self.parts)

    def __str__(self):
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def canonical_cycle(parts: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least representative over rotations and the reflection."""
    parts = tuple(parts)
    m = len(parts)
    candidates = []
    for seq in (parts, parts[::-1]):
        for r in range(m):
            candidates.append(seq[r:] + seq[:r])
    return min(candidates)


def rotate_parts(parts: Sequence[int], class_index: int) -> tuple[int, ...]:
    """Rotate so the given class (1-based) comes first; cyclic order is kept."""
    parts = tuple(parts)
    if not 1 <= class_index <= len(parts):
        raise ConfigurationError(f"class index {class_index} out of range 1..{len(parts)}")
    r = class_index - 1
    return parts[r:] + parts[:r]


def double_partition(parts: Sequence[int]) -> tuple[int, ...]:
    """The partition of 2n-1 whose half manifold models the complex page."""
    parts = tuple(parts)
    return (2 * parts[0] - 1,) + tuple(2 * p for p in parts[1:])


def d_values(partition: CyclicPartition | Sequence[int]) -> tuple[int, ...]:
    """Sums of ell cyclically consecutive multiplicities, one per starting class."""
    parts = partition.parts if isinstance(partition, CyclicPartition) else tuple(partition)
    m = len(parts)
    ell = (m - 1) // 2
    return tuple(sum(parts[(i + t) % m] for t in range(ell)) for i in range(m))


# ---------------------------------------------------------------------------
# angular combinatorics


def _primitive(vec: tuple[Fraction, Fraction]) -> tuple[int, int]:
    x, y = vec
    scale = x.denominator * y.denominator // gcd(x.denominator, y.denominator)
    a, b = int(x * scale), int(y * scale)
    g = gcd(abs(a), abs(b))
    return (a // g, b // g)


def _half(d: tuple[int, int]) -> int:
    x, y = d
    return 0 if y > 0 or (y == 0 and x > 0) else 1


def _cross(u: tuple[int, int], v: tuple[int, int]) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _ray_cmp(u: tuple[int, int], v: tuple[int, int]) -> int:
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    c = _cross(u, v)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


def normal_form_labelled(cfg: Configuration) -> tuple[CyclicPartition, tuple[tuple[int, ...], ...]]:
    """Normal form plus the coordinate classes aligned with the canonical parts.

    Classes are split wherever the counterclockwise walk between consecutive
    directions crosses an antipodal direction of some configuration vector.
    The result is cross-checked against the dual complex of its own polygon
    realisation; a mismatch raises rather than silently misclassifying.
    """
    if cfg.k != 2:
        raise NormalFormError(f"cyclic normal forms require k = 2, got k = {cfg.k}")
    require_valid(cfg)
    dirs: dict[tuple[int, int], list[int]] = {}
    for i in range(1, cfg.n + 1):
        dirs.setdefault(_primitive(cfg.vector(i)), []).append(i)
    rays = sorted(dirs, key=cmp_to_key(_ray_cmp))
    antipodes = {(-x, -y) for (x, y) in dirs}
    if antipodes & set(rays):
        raise OracleMismatchError("antipodal pair survived validation")
    events = sorted(
        [(r, True) for r in rays] + [(a, False) for a in antipodes],
        key=cmp_to_key(lambda a, b: _ray_cmp(a[0], b[0])),
    )
    first_anti = next(pos for pos, ev in enumerate(events) if not ev[1])
    ordered = events[first_anti:] + events[:first_anti]
    groups: list[list[int]] = []
    fresh = True
    for ray, is_lambda in ordered:
        if is_lambda:
            if fresh:
                groups.append([])
                fresh = False
            groups[-1].extend(dirs[ray])
        else:
            fresh = True
    if len(groups) < 3:
        raise NormalFormError(
            "fewer than three direction classes: the variety is empty and has no "
            "odd cyclic normal form"
        )
    if len(groups) % 2 == 0:
        raise OracleMismatchError("even class count contradicts weak hyperbolicity")
    found_parts = tuple(len(g) for g in groups)
    _self_check(cfg, found_parts, groups)
    # canonicalise, keeping the classes aligned with the chosen representative
    m = len(found_parts)
    best = None
    for reflect in (False, True):
        seq = found_parts[::-1] if reflect else found_parts
        idx = list(range(m))[::-1] if reflect else list(range(m))
        for r in range(m):
            cand = seq[r:] + seq[:r]
            order = idx[r:] + idx[:r]
            if best is None or cand < best[0]:
                best = (cand, order)
    parts, order = best
    classes = tuple(tuple(sorted(groups[src])) for src in order)
    return CyclicPartition(parts), classes


def _self_check(cfg: Configuration, parts: tuple[int, ...], groups: list[list[int]]) -> None:
    realization = partition_configuration(parts)
    position = {}
    offset = 0
    for group in groups:
        for step, coord in enumerate(sorted(group)):
            position[coord] = offset + step + 1
        offset += len(group)
    relabeled = set()
    for mask in dual_face_masks(cfg):
        new = 0
        for bit in range(cfg.n):
            if mask >> bit & 1:
                new |= 1 << (position[bit + 1] - 1)
        relabeled.add(new)
    if relabeled != set(dual_face_masks(realization)):
        raise OracleMismatchError(
            f"normal form self-check failed: dual complex of {parts} realisation "
            "does not match the configuration"
        )


def normal_form(cfg: Configuration) -> CyclicPartition:
    """The odd cyclic normal form of a k = 2 configuration."""
    return normal_form_labelled(cfg)[0]


@lru_cache(maxsize=None)
def _polygon_vertices(m: int) -> tuple[tuple[int, int], ...]:
    """Integer direction approximants of a regular odd m-gon, exactly verified.

    The float seed only picks candidate integer vectors; the cyclic order and
    the interleaving of antipodes (one antipode strictly between each pair of
    consecutive vertices) are then established in exact arithmetic, which pins
    the whole face combinatorics to that of the exact polygon.
    """
    if m < 3 or m % 2 == 0:
        raise ConfigurationError(f"need an odd m >= 3, got {m}")
    scale = 10 ** 6
    verts = []
    for j in range(m):
        angle = 2 * math.pi * j / m
        verts.append((round(scale * math.cos(angle)), round(scale * math.sin(angle))))
    ell = (m - 1) // 2
    for j in range(m):
        u, v = verts[j], verts[(j + 1) % m]
        if _cross(u, v) <= 0:
            raise OracleMismatchError(f"polygon approximant for m={m} lost cyclic order")
        # -v_j must land strictly between v_{j+ell} and v_{j+ell+1}
        anti = (-verts[j][0], -verts[j][1])
        a, b = verts[(j + ell) % m], verts[(j + ell + 1) % m]
        if not (_cross(a, anti) > 0 and _cross(anti, b) > 0 and _cross(a, b) > 0):
            raise OracleMismatchError(f"polygon approximant for m={m} lost antipode interleaving")
    return tuple(verts)


def partition_configuration(partition: CyclicPartition | Sequence[int], *,
                            distinguished: int = 1) -> Configuration:
    """The polygon configuration realising a partition: class i with multiplicity n_i.

    Coordinates are grouped class by class in cyclic order, so coordinate 1
    lies in class 1.
    """
    parts = partition.parts if isinstance(partition, CyclicPartition) else tuple(int(p) for p in partition)
    if len(parts) < 3 or len(parts) % 2 == 0 or any(p < 1 for p in parts):
        raise ConfigurationError(f"not an odd cyclic partition: {parts}")
    verts = _polygon_vertices(len(parts))
    vectors = []
    for mult, vert in zip(parts, verts):
        vectors.extend([vert] * mult)
    return Configuration(2, tuple(tuple(Fraction(c) for c in v) for v in vectors),
                         (), distinguished)


# ---------------------------------------------------------------------------
# symbolic manifold descriptions


@dataclass(frozen=True)
class SphereProduct:
    """A product of spheres S^{d_1} x ... x S^{d_r}."""

    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if any(d < 0 for d in dims):
            raise ConfigurationError(f"negative sphere dimension in {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def ranks(self) -> dict[int, int]:
        acc = {0: 1}
        for d in self.dims:
            # S^0 is two points: rank two in degree zero
            sphere = {0: 2} if d == 0 else {0: 1, d: 1}
            nxt: dict[int, int] = {}
            for deg, r in acc.items():
                for sd, sr in sphere.items():
                    nxt[deg + sd] = nxt.get(deg + sd, 0) + r * sr
            acc = nxt
        return acc

    def render(self) -> str:
        return " x ".join(f"S^{d}" for d in self.dims)


@dataclass(frozen=True)
class Hypotheses:
    """Hypothesis bookkeeping attached to a classification."""

    complex_case: bool = False
    h1_zero: bool | None = None
    dim_required: int | None = None
    dim_actual: int | None = None
    pi1_unverified: bool = False

    def flags(self) -> tuple[str, ...]:
        out = []
        if self.complex_case:
            out.append("complex-case: unconditional")
        if self.h1_zero is not None:
            out.append("h1=0" if self.h1_zero else "h1!=0")
        if self.dim_required is not None:
            ok = self.dim_actual >= self.dim_required
            out.append(f"dim {self.dim_actual} {'>=' if ok else '<'} {self.dim_required}")
            if not ok:
                out.append("outside-stated-hypotheses")
        if self.pi1_unverified:
            out.append("pi1-unverified: diffeomorphism type assumes simple connectivity")
        return tuple(out)


KIND_SPHERE_PRODUCT = "sphere-product"
KIND_CONNECTED_SUM = "connected-sum"


@dataclass(frozen=True)
class ManifoldDescription:
    """Symbolic closed-manifold type: one sphere product or a connected sum of them."""

    kind: str
    summands: tuple[SphereProduct, ...]
    hypotheses: Hypotheses = Hypotheses()

    def __post_init__(self):
        if self.kind not in (KIND_SPHERE_PRODUCT, KIND_CONNECTED_SUM):
            raise ConfigurationError(f"unknown kind {self.kind!r}")
        if not self.summands:
            raise ConfigurationError("empty description")
        dims = {s.dim for s in self.summands}
        if len(dims) > 1:
            raise ConfigurationError(f"summands of mixed dimension: {sorted(dims)}")
        if self.kind == KIND_SPHERE_PRODUCT and len(self.summands) != 1:
            raise ConfigurationError("a sphere product has a single summand")

    @property
    def dim(self) -> int:
        return self.summands[0].dim

    def render(self) -> str:
        if self.kind == KIND_SPHERE_PRODUCT:
            return self.summands[0].render()
        if len(set(self.summands)) == 1:
            return f"#_{len(self.summands)}({self.summands[0].render()})"
        return " # ".join(f"({s.render()})" for s in self.summands)

    def annotation(self) -> str | None:
        # a connected sum of g tori is the orientable genus-g surface
        if (self.kind == KIND_CONNECTED_SUM and self.dim == 2
                and all(s.dims == (1, 1) for s in self.summands)):
            return f"genus {len(self.summands)} surface"
        if self.kind == KIND_SPHERE_PRODUCT and all(d == 0 for d in self.summands[0].dims):
            return f"{2 ** len(self.summands[0].dims)} points"
        return None


def classify_real(partition: CyclicPartition) -> ManifoldDescription:
    """Diffeomorphism type of the real variety.

    For one window the product formula is unconditional.  For more windows the
    connected-sum formula carries the stated hypotheses; the flags record what
    was checked (homological proxies) and what is assumed (simple connectivity).
    """
    parts = partition.parts
    n = partition.n
    if partition.ell == 1:
        dims = (parts[0] - 1, parts[1] - 1, parts[2] - 1)
        return ManifoldDescription(KIND_SPHERE_PRODUCT, (SphereProduct(dims),))
    ds = d_values(partition)
    summands = tuple(SphereProduct((d - 1, n - d - 2)) for d in ds)
    factor_dims = [dim for s in summands for dim in s.dims]
    h1_zero = 1 not in factor_dims
    pi1_unverified = not (h1_zero and min(factor_dims) >= 2)
    hyp = Hypotheses(
        complex_case=False,
        h1_zero=h1_zero,
        dim_required=5,
        dim_actual=n - 3,
        pi1_unverified=pi1_unverified,
    )
    return ManifoldDescription(KIND_CONNECTED_SUM, summands, hyp)


def classify_complex(partition: CyclicPartition) -> ManifoldDescription:
    """Diffeomorphism type of the complex variety; unconditional in every case."""
    parts = partition.parts
    n = partition.n
    hyp = Hypotheses(complex_case=True)
    if partition.ell == 1:
        dims = (2 * parts[0] - 1, 2 * parts[1] - 1, 2 * parts[2] - 1)
        return ManifoldDescription(KIND_SPHERE_PRODUCT, (SphereProduct(dims),), hyp)
    ds = d_values(partition)
    summands = tuple(SphereProduct((2 * d - 1, 2 * n - 2 * d - 2)) for d in ds)
    return ManifoldDescription(KIND_CONNECTED_SUM, summands, hyp)


def expected_homology(description: ManifoldDescription) -> GradedGroup:
    """Integral homology of a symbolic closed type.

    Sphere products by rank convolution; connected sums by summing reduced
    homology strictly between the bottom and top degrees.  Pieces with
    boundary are not accepted here; those belong to the page calculus.
    """
    if not isinstance(description, ManifoldDescription):
        raise ConfigurationError(
            "expected_homology takes a closed ManifoldDescription; page pieces "
            "with boundary have their own homology rules"
        )
    if description.kind == KIND_SPHERE_PRODUCT:
        return GradedGroup.from_parts(description.summands[0].ranks())
    dim = description.dim
    ranks = {0: 1, dim: 1}
    for summand in description.summands:
        full = summand.ranks()
        if full.get(0) != 1:
            raise ConfigurationError(
                f"connected-sum summand {summand.render()} is not connected"
            )
        for deg, r in full.items():
            if 0 < deg < dim:
                ranks[deg] = ranks.get(deg, 0) + r
    return GradedGroup.from_parts(ranks)
