"""Open book structures and the symbolic topology of their pages.

The real variety of a configuration with a duplicated coordinate fibers as an
open book with trivial monodromy: the binding is the variety with the
duplicated vector removed twice, the page is the half manifold of the variety
with it removed once.  The complex variety does the same at any coordinate.
For k = 2 the page is described case by case (a-d, selected by the window
count and the multiplicity of the distinguished class), with exact summand
dimensions, and the exterior of a standard sphere-product embedding appears
as a symbolic summand with known free homology.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .classify import (
    CyclicPartition,
    KIND_CONNECTED_SUM,
    KIND_SPHERE_PRODUCT,
    ManifoldDescription,
    SphereProduct,
    d_values,
    double_partition,
    expected_homology,
    normal_form_labelled,
    partition_configuration,
    rotate_parts,
)
from .complexes import GradedGroup
from .configuration import (
    Configuration,
    ConfigurationError,
    NormalFormError,
    OpenBookError,
    delete_coordinate,
    complexify,
    require_valid,
    validate,
)
from .feasibility import origin_in_convex_hull
from .splitting import euler_cellcount, homology_Z, homology_Zplus


# ---------------------------------------------------------------------------
# page pieces


@dataclass(frozen=True)
class SphereTimesDisk:
    """S^p x D^q."""

    sphere: int
    disk: int

    @property
    def dim(self) -> int:
        return self.sphere + self.disk

    def reduced_ranks(self) -> dict[int, int]:
        return {self.sphere: 1}

    def boundary(self) -> SphereProduct | None:
        if self.disk < 1:
            return None
        return SphereProduct((self.sphere, self.disk - 1))

    def render(self) -> str:
        return f"S({self.sphere}) x D({self.disk})"


@dataclass(frozen=True)
class DiskTimesSphere:
    """D^p x S^q."""

    disk: int
    sphere: int

    @property
    def dim(self) -> int:
        return self.disk + self.sphere

    def reduced_ranks(self) -> dict[int, int]:
        return {self.sphere: 1}

    def boundary(self) -> SphereProduct | None:
        if self.disk < 1:
            return None
        return SphereProduct((self.disk - 1, self.sphere))

    def render(self) -> str:
        return f"D({self.disk}) x S({self.sphere})"


@dataclass(frozen=True)
class SphereSphereDisk:
    """S^p x S^q x D^r, the single-piece page of the product case."""

    first: int
    second: int
    disk: int

    @property
    def dim(self) -> int:
        return self.first + self.second + self.disk

    def reduced_ranks(self) -> dict[int, int]:
        full = SphereProduct((self.first, self.second)).ranks()
        full[0] -= 1
        return {d: r for d, r in full.items() if r}

    def boundary(self) -> SphereProduct | None:
        if self.disk < 1:
            return None  # closed page, empty boundary
        return SphereProduct((self.first, self.second, self.disk - 1))

    def render(self) -> str:
        return f"S({self.first}) x S({self.second}) x D({self.disk})"


@dataclass(frozen=True)
class PuncturedProduct:
    """S^p x S^q with an open top disk removed (m = p + q)."""

    p: int
    q: int
    m: int

    def __post_init__(self):
        if self.m != self.p + self.q:
            raise ConfigurationError(
                f"punctured product S^{self.p} x S^{self.q} must lose a {self.p + self.q}-disk"
            )
        if self.p < 1 or self.q < 1:
            raise ConfigurationError("punctured product needs positive sphere dimensions")

    @property
    def dim(self) -> int:
        return self.m

    def reduced_ranks(self) -> dict[int, int]:
        ranks = {self.p: 1}
        ranks[self.q] = ranks.get(self.q, 0) + 1
        return ranks

    def boundary(self) -> SphereProduct:
        return SphereProduct((self.m - 1,))

    def render(self) -> str:
        return f"PP({self.p},{self.q};{self.m})"


@dataclass(frozen=True)
class ExteriorSpace:
    """The exterior of the standard S^p x S^q inside S^m, m > p + q.

    Its boundary is S^p x S^q x S^(m-p-q-1) and its homology is free, generated
    in degrees 0, m-p-q-1, m-q-1 and m-p-1 by the classes the boundary loses in
    the tubular neighbourhood.
    """

    p: int
    q: int
    m: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise ConfigurationError("negative sphere dimension")
        if self.m <= self.p + self.q:
            raise ConfigurationError(
                f"exterior needs m > p + q, got m = {self.m}, p + q = {self.p + self.q}"
            )

    @property
    def dim(self) -> int:
        return self.m

    @property
    def lemma_applies(self) -> bool:
        """Whether the simple-connectivity regime of the recognition lemma holds."""
        return self.p >= 2 and self.q >= 2 and self.m - self.p - self.q - 1 >= 2

    def reduced_ranks(self) -> dict[int, int]:
        ranks: dict[int, int] = {}
        for d in (self.m - self.p - self.q - 1, self.m - self.q - 1, self.m - self.p - 1):
            ranks[d] = ranks.get(d, 0) + 1
        return ranks

    def boundary(self) -> SphereProduct:
        return SphereProduct((self.p, self.q, self.m - self.p - self.q - 1))

    def render(self) -> str:
        return f"E({self.p},{self.q};{self.m})"


PagePiece = SphereTimesDisk | DiskTimesSphere | SphereSphereDisk | PuncturedProduct | ExteriorSpace


def exterior_homology(p: int, q: int, m: int) -> GradedGroup:
    """Free homology of the exterior E^m_{p,q}: degrees 0, m-p-q-1, m-q-1, m-p-1."""
    space = ExteriorSpace(p, q, m)
    ranks = {0: 1}
    for d, r in space.reduced_ranks().items():
        ranks[d] = ranks.get(d, 0) + r
    return GradedGroup.from_parts(ranks)


# ---------------------------------------------------------------------------
# page descriptions (cases a-d)


@dataclass(frozen=True)
class PageDescription:
    """Symbolic page: a product (case a) or a boundary connected sum (cases b-d)."""

    case: str
    pieces: tuple[PagePiece, ...]
    dim: int
    complex_case: bool
    partition: tuple[int, ...]
    flags: tuple[str, ...] = ()

    def __post_init__(self):
        for piece in self.pieces:
            if piece.dim != self.dim:
                raise ConfigurationError(
                    f"piece {piece.render()} has dimension {piece.dim}, page has {self.dim}"
                )

    def render(self) -> str:
        sep = " x " if self.case == "a" else " #b "
        if self.case == "a":
            return self.pieces[0].render()
        return sep.join(piece.render() for piece in self.pieces)


def _cyclic_indices(start: int, stop: int, m: int) -> list[int]:
    """1-based indices start, start+1, ..., stop, wrapping cyclically."""
    out = [((start - 1) % m) + 1]
    while out[-1] != ((stop - 1) % m) + 1:
        out.append((out[-1] % m) + 1)
    return out


def page_topology(partition: CyclicPartition | Iterable[int], class_index: int = 1, *,
                  complex_case: bool = False) -> PageDescription:
    """The page over the given distinguished class, with exact summand dimensions.

    Case selection: (a) one window; (b) more windows, distinguished multiplicity
    above one; (c) multiplicity one with at least three windows; (d)
    multiplicity one with exactly two windows.
    """
    base = partition.parts if isinstance(partition, CyclicPartition) else tuple(partition)
    parts = rotate_parts(base, class_index)
    m = len(parts)
    if m < 3 or m % 2 == 0 or any(p < 1 for p in parts):
        raise ConfigurationError(f"not an odd cyclic partition: {parts}")
    ell = (m - 1) // 2
    n = sum(parts)
    ds = d_values(parts)

    def nn(i: int) -> int:
        return parts[(i - 1) % m]

    def dd(i: int) -> int:
        return ds[(i - 1) % m]

    page_dim = (2 * n - 4) if complex_case else (n - 3)
    pieces: list[PagePiece] = []
    if ell == 1:
        case = "a"
        if complex_case:
            pieces.append(SphereSphereDisk(2 * nn(2) - 1, 2 * nn(3) - 1, 2 * nn(1) - 2))
        else:
            pieces.append(SphereSphereDisk(nn(2) - 1, nn(3) - 1, nn(1) - 1))
    elif parts[0] > 1:
        case = "b"
        for i in range(2, ell + 3):
            if complex_case:
                pieces.append(SphereTimesDisk(2 * dd(i) - 1, 2 * n - 2 * dd(i) - 3))
            else:
                pieces.append(SphereTimesDisk(dd(i) - 1, n - dd(i) - 2))
        for i in _cyclic_indices(ell + 3, 1, m):
            if complex_case:
                pieces.append(DiskTimesSphere(2 * dd(i) - 2, 2 * n - 2 * dd(i) - 2))
            else:
                pieces.append(DiskTimesSphere(dd(i) - 1, n - dd(i) - 2))
    elif ell > 2:
        case = "c"
        for i in range(3, ell + 2):
            if complex_case:
                pieces.append(SphereTimesDisk(2 * dd(i) - 1, 2 * n - 2 * dd(i) - 3))
            else:
                pieces.append(SphereTimesDisk(dd(i) - 1, n - dd(i) - 2))
        for i in _cyclic_indices(ell + 3, 1, m):
            if complex_case:
                pieces.append(DiskTimesSphere(2 * dd(i) - 2, 2 * n - 2 * dd(i) - 2))
            else:
                pieces.append(DiskTimesSphere(dd(i) - 1, n - dd(i) - 2))
        if complex_case:
            pieces.append(PuncturedProduct(2 * dd(2) - 1, 2 * dd(ell + 2) - 1, 2 * n - 4))
        else:
            pieces.append(PuncturedProduct(dd(2) - 1, dd(ell + 2) - 1, n - 3))
    else:
        case = "d"
        if complex_case:
            pieces.append(PuncturedProduct(2 * dd(2) - 1, 2 * dd(4) - 1, 2 * n - 4))
            pieces.append(ExteriorSpace(2 * nn(2) - 1, 2 * nn(5) - 1, 2 * n - 4))
        else:
            pieces.append(PuncturedProduct(dd(2) - 1, dd(4) - 1, n - 3))
            pieces.append(ExteriorSpace(nn(2) - 1, nn(5) - 1, n - 3))

    flags: list[str] = []
    if not complex_case and ell > 1:
        flags.append("pi1: assumes the variety and its boundary slice simply connected")
        if n - 3 >= 6:
            flags.append(f"dim {n - 3} >= 6")
        else:
            flags.append(f"dim {n - 3} < 6")
            flags.append("outside-stated-hypotheses")
    for piece in pieces:
        if isinstance(piece, ExteriorSpace) and not piece.lemma_applies:
            flags.append(
                f"exterior {piece.render()} outside the recognition lemma regime "
                "(needs p, q, m-p-q-1 >= 2)"
            )
    return PageDescription(case, tuple(pieces), page_dim, complex_case, parts, tuple(flags))


def page_homology(page: PageDescription) -> GradedGroup:
    """Homology of the page: Z in degree 0 plus each piece's reduced homology.

    A boundary connected sum is a wedge up to homotopy, so the reduced groups
    simply add; the single product piece of case a gives the same rule.
    """
    ranks = {0: 1}
    for piece in page.pieces:
        for d, r in piece.reduced_ranks().items():
            ranks[d] = ranks.get(d, 0) + r
    return GradedGroup.from_parts(ranks)


# ---------------------------------------------------------------------------
# open book structures


@dataclass(frozen=True)
class OpenBookStructure:
    """Binding, page and (trivial) monodromy of an open book on the total variety.

    `page_model` is the configuration whose half manifold is the page: for a
    real book the variety with the duplicated coordinate removed once, for a
    complex book the polygon realisation of the doubled partition.  A binding
    of None means the binding is empty.
    """

    total: Configuration
    binding: Configuration | None
    page: PageDescription | None
    page_model: Configuration | None
    complex_case: bool
    page_label: str
    monodromy: str = "trivial"

    @property
    def total_dim(self) -> int:
        # the complex book stores the doubled coordinate model as its total
        return self.total.dim_Z

    @property
    def binding_dim(self) -> int:
        return self.total_dim - 2

    @property
    def page_dim(self) -> int:
        return self.total_dim - 1


def _deleted_or_empty(cfg: Configuration, i: int) -> Configuration | None:
    """Delete coordinate i; None when the result is provably an empty variety."""
    if cfg.n - 1 >= cfg.k + 1:
        return delete_coordinate(cfg, i)
    rest = [cfg.vector(j) for j in range(1, cfg.n + 1) if j != i]
    if origin_in_convex_hull(rest):
        raise OpenBookError(
            f"deleting coordinate {i} leaves n = {cfg.n - 1} <= k = {cfg.k} with a "
            "nonempty zero set; such degenerate bindings are not representable"
        )
    return None


def _partition_page(cfg: Configuration, coordinate: int, complex_case: bool):
    """Page description and model configuration through the cyclic normal form.

    The model is the configuration whose half manifold is the page.  For real
    books it exists regardless of k; the symbolic description and the complex
    model need the k = 2 normal form.
    """
    real_model = cfg.with_distinguished(coordinate)
    if cfg.k != 2:
        return None, (None if complex_case else real_model)
    try:
        partition, classes = normal_form_labelled(cfg)
    except NormalFormError:
        return None, (None if complex_case else real_model)
    class_index = next(c + 1 for c, members in enumerate(classes) if coordinate in members)
    page = page_topology(partition, class_index, complex_case=complex_case)
    if complex_case:
        model = partition_configuration(double_partition(rotate_parts(partition.parts, class_index)))
    else:
        model = real_model
    return page, model


def open_book_real(cfg: Configuration, i: int, *, strict: bool = True) -> OpenBookStructure:
    """Open book on the real variety of a configuration with coordinate i duplicated.

    The binding removes the duplicated vector twice, the page is the half
    manifold of the variety with it removed once, and the monodromy is trivial.
    """
    require_valid(cfg)
    if not 1 <= i <= cfg.n:
        raise ConfigurationError(f"coordinate {i} out of range 1..{cfg.n}")
    vec = cfg.vector(i)
    twins = [j for j in range(1, cfg.n + 1) if j != i and cfg.vector(j) == vec]
    if not twins:
        if strict:
            raise OpenBookError(
                f"coordinate {i} is not part of a duplicated pair; duplicate it first"
            )
        partner = None
    else:
        partner = next((j for j in (i - 1, i + 1) if j in twins), twins[0])
    if partner is None:
        raise OpenBookError(f"no twin coordinate for {i}")
    underlying = delete_coordinate(cfg, i)
    partner_pos = partner if partner < i else partner - 1
    underlying = underlying.with_distinguished(partner_pos)
    binding = _deleted_or_empty(underlying, partner_pos)
    page, model = _partition_page(underlying, partner_pos, complex_case=False)
    label = f"interior of the half manifold at {underlying.labels[partner_pos - 1]} >= 0"
    return OpenBookStructure(cfg, binding, page, model, False, label)


def open_book_complex(cfg: Configuration, i: int) -> OpenBookStructure:
    """Open book on the complex variety with binding at coordinate i.

    The binding is the complex variety of the configuration without lambda_i;
    it must itself be weakly hyperbolic, otherwise the book is rejected.
    """
    require_valid(cfg)
    if not 1 <= i <= cfg.n:
        raise ConfigurationError(f"coordinate {i} out of range 1..{cfg.n}")
    deleted = _deleted_or_empty(cfg, i)
    if deleted is not None and not validate(deleted).ok:
        raise OpenBookError(
            f"binding not smooth; open book invalid for facet {i} "
            f"(witness {validate(deleted).witness})"
        )
    total = complexify(cfg)
    binding = complexify(deleted) if deleted is not None else None
    page, model = _partition_page(cfg, i, complex_case=True)
    label = f"interior of the complex half manifold at {cfg.labels[i - 1]}"
    return OpenBookStructure(total, binding, page, model, True, label)


# ---------------------------------------------------------------------------
# consistency checks


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # "pass" | "fail" | "skip"
    detail: str


def _page_boundary(page: PageDescription) -> ManifoldDescription | str | None:
    """The boundary of a described page as a closed type.

    Returns "empty" for a closed page, None when the boundary has a
    disconnected piece (an S^0 factor) and the connected-sum rule does not
    apply.
    """
    boundaries = []
    for piece in page.pieces:
        b = piece.boundary()
        if b is None:
            return "empty" if len(page.pieces) == 1 else None
        boundaries.append(b)
    if any(0 in b.dims for b in boundaries):
        return None
    if len(boundaries) == 1:
        return ManifoldDescription(KIND_SPHERE_PRODUCT, (boundaries[0],))
    return ManifoldDescription(KIND_CONNECTED_SUM, tuple(boundaries))


def boundary_consistency(structure: OpenBookStructure) -> tuple[CheckResult, ...]:
    """Cross-checks between binding, page and their Euler characteristics.

    Mismatches are reported as findings, never raised.
    """
    results: list[CheckResult] = []
    binding = structure.binding
    binding_group = homology_Z(binding) if binding is not None else GradedGroup.zero()
    binding_euler = euler_cellcount(binding) if binding is not None else 0

    if structure.binding_dim % 2 == 1:
        ok = binding_euler == 0
        results.append(CheckResult(
            "binding-euler-zero",
            "pass" if ok else "fail",
            f"odd-dimensional binding has chi = {binding_euler}",
        ))
    else:
        results.append(CheckResult(
            "binding-euler-zero", "skip", "binding dimension is even"))

    if structure.page is None and structure.page_model is None:
        results.append(CheckResult("page-double-euler", "skip", "no page model"))
        results.append(CheckResult("page-boundary-betti", "skip", "no symbolic page"))
        return tuple(results)

    if structure.page is not None:
        page_euler = page_homology(structure.page).euler()
    else:
        # no symbolic description, but the half manifold of the model IS the page
        page_euler = homology_Zplus(structure.page_model).euler()
    if structure.page_dim % 2 == 0 and structure.page_model is not None:
        double_euler = euler_cellcount(structure.page_model)
        ok = double_euler == 2 * page_euler
        results.append(CheckResult(
            "page-double-euler",
            "pass" if ok else "fail",
            f"chi(double) = {double_euler}, 2 chi(page) = {2 * page_euler}",
        ))
    else:
        results.append(CheckResult(
            "page-double-euler", "skip",
            "page dimension is odd" if structure.page_dim % 2 else "no page model"))

    if structure.page is None:
        results.append(CheckResult("page-boundary-betti", "skip", "no symbolic page"))
        return tuple(results)
    boundary = _page_boundary(structure.page)
    if boundary == "empty":
        ok = binding_group.is_zero
        results.append(CheckResult(
            "page-boundary-betti",
            "pass" if ok else "fail",
            "closed page requires an empty binding",
        ))
    elif boundary is None:
        results.append(CheckResult(
            "page-boundary-betti", "skip",
            "boundary has a disconnected factor; connected-sum rule not applicable",
        ))
    else:
        expected = expected_homology(boundary)
        ok = expected == binding_group
        results.append(CheckResult(
            "page-boundary-betti",
            "pass" if ok else "fail",
            f"boundary {boundary.render()} vs binding homology",
        ))
    return tuple(results)
