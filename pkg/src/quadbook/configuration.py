"""Exact configurations of quadric coefficient vectors and coordinate surgery on them.

A configuration holds the n rational vectors in Q^k that cut out a generic
intersection of quadrics, plus one distinguished coordinate used by the half
manifold and the open book constructions.  All arithmetic is exact rational;
floating point never enters any predicate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence


class QuadbookError(Exception):
    """Base error for this package."""


class ConfigurationError(QuadbookError):
    """Structurally malformed input: wrong shapes, bad indices, parse failures."""


class InvalidConfigurationError(QuadbookError):
    """An operation required weak hyperbolicity and the configuration lacks it."""

    def __init__(self, message: str, witness: tuple[int, ...] | None = None):
        super().__init__(message)
        self.witness = witness


class SizeCapError(QuadbookError):
    """Subset enumeration refused because the configuration exceeds the cap."""


class NormalFormError(QuadbookError):
    """No odd cyclic normal form exists for the given configuration."""


class OpenBookError(QuadbookError):
    """Open book construction rejected: bad coordinate or non-smooth binding."""


class OracleMismatchError(QuadbookError):
    """An internal cross-check failed.  This signals a bug, not bad input."""


class ParseError(QuadbookError):
    """An external input document could not be parsed."""


def as_rational(value) -> Fraction:
    """Parse an exact rational from an int, a Fraction, or a string like '3/5'.

    Floats are rejected on purpose: every predicate in this package is a strict
    convex-position test and must stay exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ConfigurationError(f"not an exact rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigurationError(f"not an exact rational: {value!r}") from exc
    raise ConfigurationError(f"not an exact rational: {value!r}")


@dataclass(frozen=True, eq=False)
class Configuration:
    """n rational vectors in Q^k with one distinguished coordinate (1-based).

    The distinguished coordinate is the one the half manifold is cut along.
    It defaults to coordinate 1.
    """

    k: int
    lambdas: tuple[tuple[Fraction, ...], ...]
    labels: tuple[str, ...] = ()
    distinguished: int = 1

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise ConfigurationError(f"k must be a positive integer, got {self.k!r}")
        vectors = tuple(tuple(as_rational(x) for x in vec) for vec in self.lambdas)
        for pos, vec in enumerate(vectors, start=1):
            if len(vec) != self.k:
                raise ConfigurationError(
                    f"vector {pos} has length {len(vec)}, expected k = {self.k}"
                )
        n = len(vectors)
        if n < self.k + 1:
            raise ConfigurationError(
                f"need n >= k + 1 (got n = {n}, k = {self.k}); "
                "otherwise the variety has negative dimension"
            )
        labels = tuple(self.labels) if self.labels else tuple(f"x{i}" for i in range(1, n + 1))
        if len(labels) != n:
            raise ConfigurationError(f"{len(labels)} labels for {n} coordinates")
        if not 1 <= self.distinguished <= n:
            raise ConfigurationError(f"distinguished coordinate {self.distinguished} out of range")
        object.__setattr__(self, "lambdas", vectors)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_hash", hash((self.k, vectors, labels, self.distinguished)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if not isinstance(other, Configuration):
            return NotImplemented
        return (
            self.k == other.k
            and self.lambdas == other.lambdas
            and self.labels == other.labels
            and self.distinguished == other.distinguished
        )

    @property
    def n(self) -> int:
        return len(self.lambdas)

    @property
    def dim_Z(self) -> int:
        """Dimension of the real variety."""
        return self.n - self.k - 1

    @property
    def dim_ZC(self) -> int:
        """Dimension of the complex (moment-angle) variety."""
        return 2 * self.n - self.k - 1

    def vector(self, i: int) -> tuple[Fraction, ...]:
        """The i-th coefficient vector, 1-based."""
        if not 1 <= i <= self.n:
            raise ConfigurationError(f"coordinate {i} out of range 1..{self.n}")
        return self.lambdas[i - 1]

    def with_distinguished(self, i: int) -> "Configuration":
        if i == self.distinguished:
            return self
        return Configuration(self.k, self.lambdas, self.labels, i)

    def __repr__(self):
        vecs = ", ".join("(" + ",".join(str(x) for x in v) + ")" for v in self.lambdas)
        return f"Configuration(k={self.k}, n={self.n}, [{vecs}], distinguished={self.distinguished})"


def make_configuration(vectors: Iterable[Sequence], *, k: int | None = None,
                       labels: Sequence[str] | None = None,
                       distinguished: int = 1) -> Configuration:
    """Build a configuration from any iterable of rational vectors."""
    vecs = tuple(tuple(as_rational(x) for x in v) for v in vectors)
    if not vecs:
        raise ConfigurationError("empty configuration")
    kk = k if k is not None else len(vecs[0])
    return Configuration(kk, vecs, tuple(labels) if labels else (), distinguished)


@lru_cache(maxsize=None)
def coordinate_classes(cfg: Configuration) -> tuple[tuple[int, ...], ...]:
    """Coordinates grouped by exact vector equality, in first-occurrence order."""
    groups: dict[tuple, list[int]] = {}
    for i in range(1, cfg.n + 1):
        groups.setdefault(cfg.lambdas[i - 1], []).append(i)
    return tuple(tuple(members) for members in groups.values())


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the weak hyperbolicity check.

    ``witness`` is the lexicographically smallest subset J with |J| <= k whose
    convex hull contains the origin, or None when the configuration is valid.
    """

    ok: bool
    witness: tuple[int, ...] | None = None

    def __bool__(self):
        return self.ok


@lru_cache(maxsize=None)
def validate(cfg: Configuration) -> ValidationReport:
    """Check weak hyperbolicity: no J with |J| <= k has the origin in conv(lambda_J)."""
    from .feasibility import origin_in_convex_hull

    indices = range(1, cfg.n + 1)
    subsets = sorted(
        itertools.chain.from_iterable(
            itertools.combinations(indices, size) for size in range(1, cfg.k + 1)
        )
    )
    for subset in subsets:
        if origin_in_convex_hull([cfg.vector(i) for i in subset]):
            return ValidationReport(False, subset)
    return ValidationReport(True)


def require_valid(cfg: Configuration) -> None:
    report = validate(cfg)
    if not report.ok:
        raise InvalidConfigurationError(
            f"configuration is not weakly hyperbolic, witness J = {report.witness}",
            report.witness,
        )


def delete_coordinate(cfg: Configuration, i: int) -> Configuration:
    """Drop coordinate i.  Models the boundary slice when i is distinguished."""
    if not 1 <= i <= cfg.n:
        raise ConfigurationError(f"coordinate {i} out of range 1..{cfg.n}")
    if cfg.n - 1 < cfg.k + 1:
        raise ConfigurationError(
            f"deleting coordinate {i} leaves n = {cfg.n - 1} < k + 1 = {cfg.k + 1}"
        )
    vectors = cfg.lambdas[: i - 1] + cfg.lambdas[i:]
    labels = cfg.labels[: i - 1] + cfg.labels[i:]
    d = cfg.distinguished
    if d == i:
        d = 1
    elif d > i:
        d -= 1
    return Configuration(cfg.k, vectors, labels, d)


def duplicate_coordinate(cfg: Configuration, i: int) -> Configuration:
    """Insert a second copy of lambda_i right after position i.

    The new copy becomes the distinguished coordinate; the pair is labelled
    with 'a'/'b' suffixes derived from the parent label.
    """
    if not 1 <= i <= cfg.n:
        raise ConfigurationError(f"coordinate {i} out of range 1..{cfg.n}")
    vec = cfg.lambdas[i - 1]
    vectors = cfg.lambdas[:i] + (vec,) + cfg.lambdas[i:]
    parent = cfg.labels[i - 1]
    labels = cfg.labels[: i - 1] + (parent + "a", parent + "b") + cfg.labels[i:]
    return Configuration(cfg.k, vectors, labels, i + 1)


def complexify(cfg: Configuration) -> Configuration:
    """The 2n-vector configuration with every lambda_i doubled.

    The real variety of the result is diffeomorphic to the complex variety of
    the input, so this is the coordinate model of the moment-angle manifold.
    """
    vectors = []
    labels = []
    for vec, label in zip(cfg.lambdas, cfg.labels):
        vectors.extend((vec, vec))
        labels.extend((label + "a", label + "b"))
    return Configuration(cfg.k, tuple(vectors), tuple(labels), 2 * cfg.distinguished - 1)
