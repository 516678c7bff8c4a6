import pytest

import quadbook as qb
from quadbook import CyclicPartition, GradedGroup

import helpers


PENTAGON = qb.partition_configuration((1, 1, 1, 1, 1))
TRIANGLE = qb.partition_configuration((1, 1, 1))


# ---------------------------------------------------------------------------
# exterior spaces


def test_exterior_homology_golden():
    assert helpers.betti(qb.exterior_homology(1, 1, 6), 6) == (1, 0, 0, 1, 2, 0, 0)
    assert qb.exterior_homology(1, 1, 6).torsion_free


def test_exterior_degenerate_regime():
    group = qb.exterior_homology(0, 0, 5)
    assert helpers.betti(group, 5) == (1, 0, 0, 0, 3, 0)
    assert not qb.ExteriorSpace(0, 0, 5).lemma_applies
    assert qb.ExteriorSpace(2, 2, 9).lemma_applies


def test_exterior_requires_codimension():
    with pytest.raises(qb.ConfigurationError):
        qb.exterior_homology(2, 3, 5)


def test_exterior_boundary_euler():
    # boundary is a sphere product; chi vanishes whenever a factor is odd
    space = qb.ExteriorSpace(1, 1, 6)
    boundary = space.boundary()
    assert boundary.dims == (1, 1, 3)
    table = helpers.kunneth_sphere_ranks(boundary.dims)
    assert sum((-1) ** d * r for d, r in table.items()) == 0


# ---------------------------------------------------------------------------
# page topology


def test_page_case_selection_is_total_and_exclusive():
    for parts in helpers.partitions_up_to(8):
        for class_index in range(1, len(parts) + 1):
            rotated = qb.rotate_parts(parts, class_index)
            ell = (len(parts) - 1) // 2
            page = qb.page_topology(parts, class_index)
            if ell == 1:
                assert page.case == "a"
                assert len(page.pieces) == 1
            elif rotated[0] > 1:
                assert page.case == "b"
                assert len(page.pieces) == 2 * ell + 1
            elif ell > 2:
                assert page.case == "c"
                assert len(page.pieces) == 2 * ell
            else:
                assert page.case == "d"
                assert len(page.pieces) == 2


def test_page_pentagon_real_case_d():
    page = qb.page_topology((1, 1, 1, 1, 1), 1)
    assert page.case == "d"
    assert page.render() == "PP(1,1;2) #b E(0,0;2)"
    assert any("outside-stated-hypotheses" in f for f in page.flags)
    # the golden value: a torus minus four disks
    assert helpers.betti(qb.page_homology(page), 2) == (1, 5, 0)


def test_page_pentagon_complex_case_d():
    page = qb.page_topology((1, 1, 1, 1, 1), 1, complex_case=True)
    assert page.case == "d"
    assert page.render() == "PP(3,3;6) #b E(1,1;6)"
    # complex pages carry no simple-connectivity hypotheses, only the
    # informational note that this exterior sits outside the lemma regime
    assert not any("pi1" in f or "dim" in f for f in page.flags)
    assert any("lemma" in f for f in page.flags)
    assert helpers.betti(qb.page_homology(page), 6) == (1, 0, 0, 3, 2, 0, 0)


def test_page_222_complex_case_a():
    page = qb.page_topology((2, 2, 2), 1, complex_case=True)
    assert page.case == "a"
    assert page.render() == "S(3) x S(3) x D(2)"
    assert helpers.betti(qb.page_homology(page), 6) == (1, 0, 0, 2, 0, 0, 1)


def test_page_21111_real_case_b():
    page = qb.page_topology((2, 1, 1, 1, 1), 1)
    assert page.case == "b"
    assert helpers.betti(qb.page_homology(page), 3) == (1, 5, 0, 0)
    engine = qb.homology_Zplus(qb.partition_configuration((2, 1, 1, 1, 1)))
    assert qb.page_homology(page) == engine


def test_page_12222_real_case_d():
    page = qb.page_topology((1, 2, 2, 2, 2), 1)
    assert page.case == "d"
    assert page.render() == "PP(3,3;6) #b E(1,1;6)"
    got = qb.page_homology(page)
    assert helpers.betti(got, 6) == (1, 0, 0, 3, 2, 0, 0)
    assert got == qb.homology_Zplus(qb.partition_configuration((1, 2, 2, 2, 2)))


def test_complex_page_equals_real_page_of_doubled_partition():
    for parts in helpers.partitions_up_to(6):
        for class_index in range(1, len(parts) + 1):
            rotated = qb.rotate_parts(parts, class_index)
            complex_page = qb.page_topology(parts, class_index, complex_case=True)
            doubled_page = qb.page_topology(qb.double_partition(rotated), 1)
            assert complex_page.case == doubled_page.case
            assert complex_page.pieces == doubled_page.pieces


def test_page_oracle_small():
    for parts in helpers.partitions_up_to(6):
        cfg = qb.partition_configuration(parts)
        for class_index in range(1, len(parts) + 1):
            rotated = qb.rotate_parts(parts, class_index)
            marker = sum(parts[:class_index - 1]) + 1
            real = qb.page_homology(qb.page_topology(rotated, 1))
            assert real == qb.homology_Zplus(cfg, distinguished=marker), (parts, class_index)


# ---------------------------------------------------------------------------
# open book structures


def test_open_book_real_pentagon():
    doubled = qb.duplicate_coordinate(PENTAGON, 1)
    book = qb.open_book_real(doubled, doubled.distinguished)
    assert book.monodromy == "trivial"
    assert book.total_dim == 3
    assert book.binding is not None
    assert book.binding.n == 4
    assert qb.normal_form(book.binding) == CyclicPartition((1, 2, 1))
    assert helpers.betti(qb.homology_Z(book.binding), 1) == (4, 4)
    assert book.page.case == "d"
    assert helpers.betti(qb.page_homology(book.page), 2) == (1, 5, 0)
    assert book.binding_dim == book.total_dim - 2
    assert book.page_dim == book.total_dim - 1


def test_open_book_real_triangle():
    doubled = qb.duplicate_coordinate(TRIANGLE, 1)
    book = qb.open_book_real(doubled, doubled.distinguished)
    assert book.binding is None  # boundary slice is empty
    assert qb.page_homology(book.page) == GradedGroup.from_parts({0: 4})


def test_open_book_real_strict_mode():
    with pytest.raises(qb.OpenBookError):
        qb.open_book_real(PENTAGON, 1)


def test_open_book_complex_triangle():
    book = qb.open_book_complex(TRIANGLE, 1)
    assert book.binding is None
    assert book.page.case == "a"
    assert book.page.render() == "S(1) x S(1) x D(0)"
    assert helpers.betti(qb.page_homology(book.page), 2) == (1, 2, 1)
    checks = {c.name: c.status for c in qb.boundary_consistency(book)}
    assert checks["page-boundary-betti"] == "pass"


def test_open_book_complex_pentagon():
    book = qb.open_book_complex(PENTAGON, 1)
    assert book.total_dim == 7
    assert book.binding is not None
    assert book.binding.n == 8  # complexified four-vector configuration
    assert book.page.case == "d"
    results = qb.boundary_consistency(book)
    assert all(c.status == "pass" for c in results), results


def test_open_book_complex_222():
    cfg = qb.partition_configuration((2, 2, 2))
    book = qb.open_book_complex(cfg, 1)
    assert book.page.case == "a"
    assert book.page.render() == "S(3) x S(3) x D(2)"
    results = qb.boundary_consistency(book)
    assert all(c.status == "pass" for c in results), results


def test_boundary_consistency_pentagon_real():
    doubled = qb.duplicate_coordinate(PENTAGON, 1)
    book = qb.open_book_real(doubled, doubled.distinguished)
    by_name = {c.name: c for c in qb.boundary_consistency(book)}
    assert by_name["binding-euler-zero"].status == "pass"
    # chi of the double equals twice the page's chi: -8 = 2 * (-4)
    assert by_name["page-double-euler"].status == "pass"
    assert "2 chi(page) = -8" in by_name["page-double-euler"].detail
    # the degenerate exterior boundary is disconnected, so the Betti
    # comparison is reported as skipped rather than guessed
    assert by_name["page-boundary-betti"].status == "skip"


def test_open_book_page_model_matches_page():
    # the model configuration's half manifold is the page, complex case
    book = qb.open_book_complex(PENTAGON, 1)
    assert book.page_model is not None
    assert qb.normal_form(book.page_model) == CyclicPartition((1, 2, 2, 2, 2))
    assert qb.homology_Zplus(book.page_model) == qb.page_homology(book.page)


def test_open_book_dimension_invariants():
    for parts in ((1, 1, 1), (2, 2, 2), (1, 1, 1, 1, 1), (2, 1, 1, 1, 1)):
        cfg = qb.partition_configuration(parts)
        book = qb.open_book_complex(cfg, 1)
        assert book.total_dim == cfg.dim_ZC
        assert book.page.dim == book.page_dim
        if book.binding is not None:
            assert book.binding.dim_Z == book.binding_dim
